//! Generalized type II moments eta^(row)_{m,a} = int B^(row) x^(floor(row/2)+m) w_a dmu,
//! their finite theta-sum evaluations in the Karp-Prilepkina style, and the
//! truncated second-kind series of the Hermite-Pade remainder.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gaussborel::{b_poly_direct, h_closed, weight_moment};
use crate::poly::Poly;
use crate::rational::{factorial, fmt_rat, pochhammer, pochhammer_int, rat_int, Rat};
use crate::tuple::Tuple;
use num::traits::{One, Zero};

/// Moment expansion of the defining integral: the x^power shift pushed into
/// the tuple's moment sequence.
pub fn eta_direct(t: &Tuple, row: usize, m: usize, weight: u8) -> Rat {
    weight_moment(t, &b_poly_direct(t, row), row / 2 + m, weight)
}

/// The terminating 5F4 form of the same integral, prefactor included. This
/// anchors the theta sums to an independently summed series.
pub fn eta_hypergeometric(t: &Tuple, row: usize, k: usize, weight: u8) -> Result<Rat> {
    let n = row / 2;
    let (a, b, c, d) = (&t.a, &t.b, &t.c, &t.d);
    let ki = k as i64;
    let ni = n as i64;
    let shift = |x: &Rat, s: i64| x + rat_int(s);
    let (top, bottom, prefactor) = if row % 2 == 0 {
        let dd = shift(d, ni - 1);
        if weight == 1 {
            (
                [rat_int(-(row as i64)), shift(a, ki), shift(b, ki), shift(c, ni), dd.clone()],
                [a.clone(), b.clone(), shift(c, ki), shift(d, ki)],
                pochhammer(a, row) * pochhammer(b, row) * pochhammer(a, k) * pochhammer(b, k)
                    / (pochhammer(&shift(c, ni), row)
                        * pochhammer(&dd, row)
                        * pochhammer(c, k)
                        * pochhammer(d, k)),
            )
        } else {
            (
                [rat_int(-(row as i64)), shift(a, ki), shift(b, ki + 1), shift(c, ni), dd.clone()],
                [a.clone(), b.clone(), shift(c, ki + 1), shift(d, ki)],
                pochhammer(a, row) * pochhammer(b, row) * pochhammer(a, k)
                    * pochhammer(&shift(b, 1), k)
                    / (pochhammer(&shift(c, ni), row)
                        * pochhammer(&dd, row)
                        * pochhammer(&shift(c, 1), k)
                        * pochhammer(d, k)),
            )
        }
    } else {
        let dd = shift(d, ni);
        if weight == 1 {
            (
                [rat_int(-(row as i64)), shift(a, ki), shift(b, ki), shift(c, ni), dd.clone()],
                [a.clone(), b.clone(), shift(c, ki), shift(d, ki)],
                -(pochhammer(a, row) * pochhammer(b, row) * pochhammer(a, k) * pochhammer(b, k))
                    / (pochhammer(&shift(c, ni), row)
                        * pochhammer(&dd, row)
                        * pochhammer(c, k)
                        * pochhammer(d, k)),
            )
        } else {
            (
                [rat_int(-(row as i64)), shift(a, ki), shift(b, ki + 1), shift(c, ni), dd.clone()],
                [a.clone(), b.clone(), shift(c, ki + 1), shift(d, ki)],
                -(pochhammer(a, row) * pochhammer(b, row) * pochhammer(a, k)
                    * pochhammer(&shift(b, 1), k))
                    / (pochhammer(&shift(c, ni), row)
                        * pochhammer(&dd, row)
                        * pochhammer(&shift(c, 1), k)
                        * pochhammer(d, k)),
            )
        }
    };
    Ok(crate::hyper::pfq_terminating(&top, &bottom)?.eval(&Rat::one()) * prefactor)
}

fn theta_vector(c: &Rat, d: &Rat, c_from: i64, c_to: i64, d_from: i64, d_to: i64) -> Vec<Rat> {
    let mut v = Vec::new();
    for s in c_from..c_to {
        v.push(c + rat_int(s));
    }
    for s in d_from..d_to {
        v.push(d + rat_int(s));
    }
    v
}

/// sum_l poch(theta_l + off_a, len_a) poch(theta_l + off_b, len_b)
///       / (prod_{i != l}(theta_i - theta_l) (theta_l + n) poch(theta_l + n + 1, row)).
fn theta_sum(
    thetas: &[Rat],
    n: usize,
    row: usize,
    off_a: &Rat,
    len_a: usize,
    off_b: &Rat,
    len_b: usize,
) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (l, th) in thetas.iter().enumerate() {
        let mut den = th + rat_int(n as i64);
        den *= pochhammer(&(th + rat_int(n as i64 + 1)), row);
        for (i, other) in thetas.iter().enumerate() {
            if i != l {
                den *= other - th;
            }
        }
        if den.is_zero() {
            return Err(Error::Hypothesis(format!(
                "theta shift {} makes the summation denominator vanish",
                fmt_rat(th)
            )));
        }
        acc += pochhammer(&(th + off_a), len_a) * pochhammer(&(th + off_b), len_b) / den;
    }
    Ok(acc)
}

/// The finite theta-sum evaluation of eta^(row)_{m,weight}. The even
/// weight-1 case at m = 0 and the odd weight-2 case at m = 0 reduce to the
/// Karlsson-Minton products (the normalization constants H), and the odd
/// weight-1 moment at m = 0 vanishes by orthogonality.
pub fn eta_karp_prilepkina(t: &Tuple, row: usize, m: usize, weight: u8) -> Result<Rat> {
    if (&t.c - &t.d).is_integer() {
        return Err(Error::Hypothesis(format!(
            "c - d = {} is an integer; the theta shifts collide",
            fmt_rat(&(&t.c - &t.d))
        )));
    }
    if weight != 1 && weight != 2 {
        return Err(Error::Domain(format!("weight index {weight} is not 1 or 2")));
    }
    let n = row / 2;
    let ni = n as i64;
    let mi = m as i64;
    let (a, b, c, d) = (&t.a, &t.b, &t.c, &t.d);
    let even = row % 2 == 0;
    if m == 0 && weight == 1 {
        return Ok(if even { h_closed(t, row) } else { Rat::zero() });
    }
    if m == 0 && weight == 2 && !even {
        return Ok(h_closed(t, row));
    }
    let off1 = -(a + rat_int(mi - 1));
    let (off2, len2) = if weight == 1 {
        (-(b + rat_int(mi - 1)), n + m)
    } else {
        (-(b + rat_int(mi)), n + m + 1)
    };
    let (thetas, prefactor) = match (even, weight) {
        (true, 1) => (
            theta_vector(c, d, 0, mi, -1, mi),
            factorial(row) * pochhammer(a, row) * pochhammer(b, row)
                / (pochhammer(c, 3 * n) * pochhammer_int(d, 3 * ni - 1)?),
        ),
        (false, 1) => (
            theta_vector(c, d, 0, mi, 0, mi),
            -(factorial(row) * pochhammer(a, row) * pochhammer(b, row))
                / (pochhammer(c, 3 * n + 1) * pochhammer(d, 3 * n + 1)),
        ),
        (true, 2) => (
            theta_vector(c, d, 0, mi + 1, -1, mi),
            -(c / b)
                * (factorial(row) * pochhammer(a, row) * pochhammer(b, row))
                / (pochhammer(c, 3 * n) * pochhammer_int(d, 3 * ni - 1)?),
        ),
        _ => (
            theta_vector(c, d, 0, mi + 1, 0, mi),
            (c / b) * (factorial(row) * pochhammer(a, row) * pochhammer(b, row))
                / (pochhammer(c, 3 * n + 1) * pochhammer(d, 3 * n + 1)),
        ),
    };
    Ok(prefactor * theta_sum(&thetas, n, row, &off1, n + m, &off2, len2)?)
}

/// A grid of generalized moments indexed by (row, m, weight).
#[derive(Debug, Clone)]
pub struct GeneralizedMoments {
    pub tuple: Tuple,
    pub eta: BTreeMap<(usize, usize, u8), Rat>,
}

pub fn generalized_moments(t: &Tuple, max_row: usize, max_m: usize) -> GeneralizedMoments {
    let mut eta = BTreeMap::new();
    for row in 0..=max_row {
        for m in 0..=max_m {
            for weight in [1u8, 2] {
                eta.insert((row, m, weight), eta_direct(t, row, m, weight));
            }
        }
    }
    GeneralizedMoments {
        tuple: t.clone(),
        eta,
    }
}

/// Truncated expansion of the second-kind function f^(row)_weight at
/// infinity, together with the associated polynomial.
#[derive(Debug, Clone)]
pub struct SecondKindSeries {
    pub tuple: Tuple,
    pub row: usize,
    pub weight: u8,
    /// laurent[j] is the coefficient of z^-(j+1); the first few vanish by
    /// the interpolation conditions.
    pub laurent: Vec<Rat>,
    /// P^(row), the polynomial part of B^(row) S_w; degree < row.
    pub associated: Poly,
}

impl SecondKindSeries {
    /// Index of the first possibly nonzero Laurent coefficient.
    pub fn lead(&self) -> usize {
        if self.row % 2 == 1 && self.weight == 1 {
            self.row / 2 + 1
        } else {
            self.row / 2
        }
    }
}

/// Assembles the series two ways and cross-checks them: once through the
/// generalized moments, once by multiplying B^(row) against the truncated
/// Stieltjes series and splitting off the polynomial part.
pub fn second_kind_series(t: &Tuple, row: usize, weight: u8, terms: usize) -> Result<SecondKindSeries> {
    if weight != 1 && weight != 2 {
        return Err(Error::Domain(format!("weight index {weight} is not 1 or 2")));
    }
    let b = b_poly_direct(t, row);
    let half = row / 2;
    let laurent: Vec<Rat> = (0..terms)
        .map(|j| {
            if j >= half {
                eta_direct(t, row, j - half, weight)
            } else {
                weight_moment(t, &b, j, weight)
            }
        })
        .collect();
    let mut poly_part = vec![Rat::zero(); row.max(1)];
    let mut tail = vec![Rat::zero(); terms];
    for i in 0..=row {
        let coef = b.coeff(i);
        if coef.is_zero() {
            continue;
        }
        for j in 0..i + terms {
            let prod = &coef * t.rho(weight, j);
            if j < i {
                poly_part[i - j - 1] += prod;
            } else if j - i < terms {
                tail[j - i] += prod;
            }
        }
    }
    if tail != laurent {
        return Err(Error::Verify(format!(
            "series expansion of f^({row})_{weight} disagrees with the moment route"
        )));
    }
    let associated = Poly::from_coeffs(poly_part);
    if let Some(deg) = associated.degree() {
        if deg + 1 > row {
            return Err(Error::Verify(format!(
                "associated polynomial for row {row} has degree {deg}"
            )));
        }
    }
    let lead = if row % 2 == 1 && weight == 1 { half + 1 } else { half };
    for (j, v) in laurent.iter().enumerate().take(lead.min(terms)) {
        if !v.is_zero() {
            return Err(Error::Verify(format!(
                "interpolation zero missing at z^-({}) for f^({row})_{weight}",
                j + 1
            )));
        }
    }
    Ok(SecondKindSeries {
        tuple: t.clone(),
        row,
        weight,
        laurent,
        associated,
    })
}
