//! Stochastic LU factorizations of the Markov matrices. The type II matrix
//! splits into two lower and one upper stochastic bidiagonal factor,
//! P_II = P^L_{II,1} P^L_{II,2} P^U_{II}; the type I matrix into one lower
//! and two upper, P_I = P^L_I P^U_{I,2} P^U_{I,1}. Entries come from the
//! d-sequences built out of the lambda decomposition and the values at unity.

use crate::error::{Error, Result};
use crate::jacobi::lambda;
use crate::matrix::Matrix;
use crate::rational::{rat, Rat};
use crate::stochastic::{stochastic_normalize, unity_values, Kind, SigmaKind, StochasticSystem};
use crate::tuple::Tuple;
use num::traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct StochasticLu {
    pub kind: Kind,
    /// Factors in multiplication order: [L1, L2, U] for type II,
    /// [L, U2, U1] for type I.
    pub factors: [Matrix; 3],
}

/// d^{(n)}_{II,1} = lambda_{3n+2} B^{(n)}(1) + B^{(n+1)}(1) and
/// d^{(n)}_{II,2} = lambda_{3n+1} d^{(n-1)}_{II,1} + d^{(n)}_{II,1}.
fn d_type_ii(t: &Tuple, b: &[Rat], count: usize) -> (Vec<Rat>, Vec<Rat>) {
    let d1: Vec<Rat> = (0..count)
        .map(|n| lambda(t, 3 * n + 2) * &b[n] + &b[n + 1])
        .collect();
    let mut d2 = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            d2.push(d1[0].clone());
        } else {
            d2.push(lambda(t, 3 * n + 1) * &d1[n - 1] + &d1[n]);
        }
    }
    (d1, d2)
}

/// d^{(n)}_{I,1} = q^{(n)}(1) + lambda_{3n+3} q^{(n+1)}(1) and
/// d^{(n)}_{I,2} = d^{(n)}_{I,1} + lambda_{3n+4} d^{(n+1)}_{I,1}.
fn d_type_i(t: &Tuple, q: &[Rat], count: usize) -> (Vec<Rat>, Vec<Rat>) {
    let d1: Vec<Rat> = (0..=count)
        .map(|n| &q[n] + lambda(t, 3 * n + 3) * &q[n + 1])
        .collect();
    let d2: Vec<Rat> = (0..count)
        .map(|n| &d1[n] + lambda(t, 3 * n + 4) * &d1[n + 1])
        .collect();
    (d1, d2)
}

/// Stochastic LU factorization of a unity-normalized system. Each factor is
/// bidiagonal with exact row sums one on every complete row; breakdown (a
/// vanishing d-value) is reported with its index.
pub fn stochastic_lu(sys: &StochasticSystem) -> Result<StochasticLu> {
    if sys.sigma_kind != SigmaKind::Unity {
        return Err(Error::Domain(
            "stochastic LU applies to the unity normalization".into(),
        ));
    }
    let t = &sys.tuple;
    let n = sys.p.n;
    let u = unity_values(t, n + 2);
    match sys.kind {
        Kind::TypeII => {
            let (d1, d2) = d_type_ii(t, &u.b, n);
            check_breakdown(&d1, &d2)?;
            let mut l1 = Matrix::zero(n);
            let mut l2 = Matrix::zero(n);
            let mut up = Matrix::zero(n);
            for m in 0..n {
                if m > 0 {
                    l1.set(m, m - 1, lambda(t, 3 * m) * &d2[m - 1] / &u.b[m]);
                    l2.set(m, m - 1, lambda(t, 3 * m + 1) * &d1[m - 1] / &d2[m]);
                }
                l1.set(m, m, &d2[m] / &u.b[m]);
                l2.set(m, m, &d1[m] / &d2[m]);
                up.set(m, m, lambda(t, 3 * m + 2) * &u.b[m] / &d1[m]);
                if m + 1 < n {
                    up.set(m, m + 1, &u.b[m + 1] / &d1[m]);
                }
            }
            Ok(StochasticLu {
                kind: Kind::TypeII,
                factors: [l1, l2, up],
            })
        }
        Kind::TypeI => {
            let (d1, d2) = d_type_i(t, &u.q, n);
            check_breakdown(&d1, &d2)?;
            let mut lo = Matrix::zero(n);
            let mut u2 = Matrix::zero(n);
            let mut u1 = Matrix::zero(n);
            for m in 0..n {
                if m > 0 {
                    lo.set(m, m - 1, &d2[m - 1] / &u.q[m]);
                }
                lo.set(m, m, lambda(t, 3 * m + 2) * &d2[m] / &u.q[m]);
                u2.set(m, m, &d1[m] / &d2[m]);
                u1.set(m, m, &u.q[m] / &d1[m]);
                if m + 1 < n {
                    u2.set(m, m + 1, lambda(t, 3 * m + 4) * &d1[m + 1] / &d2[m]);
                    u1.set(m, m + 1, lambda(t, 3 * m + 3) * &u.q[m + 1] / &d1[m]);
                }
            }
            Ok(StochasticLu {
                kind: Kind::TypeI,
                factors: [lo, u2, u1],
            })
        }
    }
}

fn check_breakdown(d1: &[Rat], d2: &[Rat]) -> Result<()> {
    for (index, v) in d1.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroPivot { index });
        }
    }
    for (index, v) in d2.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroPivot { index });
        }
    }
    Ok(())
}

/// Rows of the truncated factor product that carry no truncation artifact:
/// every row for the type II product, all but the last for type I.
pub fn complete_rows(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::TypeII => n,
        Kind::TypeI => n.saturating_sub(1),
    }
}

/// Exact equality of the factor product with P on every complete row.
pub fn reconstruction_check(sys: &StochasticSystem, lu: &StochasticLu) -> Result<()> {
    let product = lu.factors[0].mul(&lu.factors[1]).mul(&lu.factors[2]);
    let n = sys.p.n;
    for i in 0..complete_rows(lu.kind, n) {
        for j in 0..n {
            if product.get(i, j) != sys.p.get(i, j) {
                return Err(Error::Verify(format!(
                    "factor product deviates from P at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

/// Exact row sums of a factor on complete rows: lower bidiagonal factors have
/// every row complete, upper ones lose the superdiagonal of the last row.
pub fn factor_rows_stochastic(m: &Matrix, lower: bool) -> bool {
    let rows = if lower { m.n } else { m.n.saturating_sub(1) };
    (0..rows).all(|i| m.row_sum(i) == Rat::one())
}

fn factor_is_lower(kind: Kind, idx: usize) -> bool {
    match kind {
        Kind::TypeII => idx < 2,
        Kind::TypeI => idx == 0,
    }
}

/// Row-sum check for all three factors of a factorization.
pub fn factors_row_stochastic(lu: &StochasticLu) -> bool {
    lu.factors
        .iter()
        .enumerate()
        .all(|(i, f)| factor_rows_stochastic(f, factor_is_lower(lu.kind, i)))
}

/// All stored entries nonnegative (meaningful inside the nonnegativity
/// region; outside it factors may pick up negative entries while keeping
/// their row sums).
pub fn factors_nonnegative(lu: &StochasticLu) -> bool {
    lu.factors.iter().all(|f| {
        (0..f.n).all(|i| (0..f.n).all(|j| *f.get(i, j) >= Rat::zero()))
    })
}

/// Closed-form type I factors:
/// (P^L_I)_{2n,2n-1} = 2n/(3n-1+d),        (P^L_I)_{2n,2n} = (n-1+d)/(3n-1+d),
/// (P^L_I)_{2n+1,2n} = (2n+1)/(3n+1+c),    (P^L_I)_{2n+1,2n+1} = (n+c)/(3n+1+c),
/// (P^U_{I,2})_{2n,2n} = (2n+b)/(3n+d),     (P^U_{I,2})_{2n,2n+1} = (n+d-b)/(3n+d),
/// (P^U_{I,2})_{2n+1,2n+1} = (2n+1+b)/(3n+2+c), (P^U_{I,2})_{2n+1,2n+2} = (n+1+c-b)/(3n+2+c),
/// (P^U_{I,1})_{2n,2n} = (2n+a)/(3n+c),     (P^U_{I,1})_{2n,2n+1} = (n+c-a)/(3n+c),
/// (P^U_{I,1})_{2n+1,2n+1} = (2n+1+a)/(3n+1+d), (P^U_{I,1})_{2n+1,2n+2} = (n+d-a)/(3n+1+d).
/// The first row of P^L_I is (1, 0, ...).
pub fn explicit_type_i_factors(t: &Tuple, n: usize) -> StochasticLu {
    let mut lo = Matrix::zero(n);
    let mut u2 = Matrix::zero(n);
    let mut u1 = Matrix::zero(n);
    let int = |k: i64| rat(k, 1);
    for m in 0..n {
        let k = int((m / 2) as i64);
        if m == 0 {
            lo.set(0, 0, Rat::one());
        } else if m % 2 == 0 {
            let den = int(3) * &k - Rat::one() + &t.d;
            lo.set(m, m - 1, int(2) * &k / &den);
            lo.set(m, m, (&k - Rat::one() + &t.d) / &den);
        } else {
            let den = int(3) * &k + Rat::one() + &t.c;
            lo.set(m, m - 1, (int(2) * &k + Rat::one()) / &den);
            lo.set(m, m, (&k + &t.c) / &den);
        }
        if m % 2 == 0 {
            let den2 = int(3) * &k + &t.d;
            u2.set(m, m, (int(2) * &k + &t.b) / &den2);
            let den1 = int(3) * &k + &t.c;
            u1.set(m, m, (int(2) * &k + &t.a) / &den1);
            if m + 1 < n {
                u2.set(m, m + 1, (&k + &t.d - &t.b) / &den2);
                u1.set(m, m + 1, (&k + &t.c - &t.a) / &den1);
            }
        } else {
            let den2 = int(3) * &k + int(2) + &t.c;
            u2.set(m, m, (int(2) * &k + Rat::one() + &t.b) / &den2);
            let den1 = int(3) * &k + Rat::one() + &t.d;
            u1.set(m, m, (int(2) * &k + Rat::one() + &t.a) / &den1);
            if m + 1 < n {
                u2.set(m, m + 1, (&k + Rat::one() + &t.c - &t.b) / &den2);
                u1.set(m, m + 1, (&k + &t.d - &t.a) / &den1);
            }
        }
    }
    StochasticLu {
        kind: Kind::TypeI,
        factors: [lo, u2, u1],
    }
}

/// Bidiagonal factor with constant entries (diag, off) and an optional plain
/// unit first row, truncated to size n.
pub fn uniform_bidiagonal(n: usize, diag: &Rat, off: &Rat, lower: bool, unit_first_row: bool) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 0..n {
        if i == 0 && unit_first_row {
            m.set(0, 0, Rat::one());
            continue;
        }
        m.set(i, i, diag.clone());
        if lower {
            if i > 0 {
                m.set(i, i - 1, off.clone());
            }
        } else if i + 1 < n {
            m.set(i, i + 1, off.clone());
        }
    }
    m
}

/// Whether the unity-normalized type I matrix of the tuple coincides, on all
/// complete rows, with the product of the uniform bidiagonal factors
/// L(2/3,1/3) U(2/3,1/3) U(2/3,1/3). Gauge partners share P_I, so the
/// predicate is a property of the matrix rather than of the lambda sequence.
pub fn has_uniform_type_i_factorization(t: &Tuple, n: usize) -> Result<bool> {
    let sys = stochastic_normalize(t, n, Kind::TypeI)?;
    let lo = uniform_bidiagonal(n, &rat(1, 3), &rat(2, 3), true, true);
    let up = uniform_bidiagonal(n, &rat(2, 3), &rat(1, 3), false, false);
    let product = lo.mul(&up).mul(&up);
    for i in 0..complete_rows(Kind::TypeI, n) {
        for j in 0..n {
            if product.get(i, j) != sys.p.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
