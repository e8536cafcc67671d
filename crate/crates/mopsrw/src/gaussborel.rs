//! Gauss-Borel (LDU) factorization of the interlaced moment matrix
//! g = S^{-1} H Stilde^{-T}, extraction of the type II polynomials B and the
//! type I pairs (A1, A2), and the exact orthogonality checks built on moment
//! expansion. No quadrature appears anywhere in this module.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binomial, factorial, pochhammer, rat_int, Rat};
use crate::tuple::Tuple;
use num::traits::{One, Zero};

/// Unit-triangular LDU data for a leading principal block of a moment
/// matrix. `l` and `u` are the Doolittle factors (g = L D U), `s = L^{-1}`
/// and `stilde = (U^T)^{-1}`, so that g = s^{-1} D stilde^{-T}.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub n: usize,
    g: Vec<Vec<Rat>>,
    l: Vec<Vec<Rat>>,
    u: Vec<Vec<Rat>>,
    d: Vec<Rat>,
    s: Vec<Vec<Rat>>,
    stilde: Vec<Vec<Rat>>,
}

impl Factorization {
    pub fn from_entries(n: usize, entry: &mut impl FnMut(usize, usize) -> Rat) -> Result<Self> {
        let mut f = Factorization {
            n: 0,
            g: Vec::new(),
            l: Vec::new(),
            u: Vec::new(),
            d: Vec::new(),
            s: Vec::new(),
            stilde: Vec::new(),
        };
        f.extend_with(n, entry)?;
        Ok(f)
    }

    /// Grows the factorization to size n2 reusing all previously eliminated
    /// rows and columns.
    pub fn extend_with(
        &mut self,
        n2: usize,
        entry: &mut impl FnMut(usize, usize) -> Rat,
    ) -> Result<()> {
        let n1 = self.n;
        if n2 <= n1 {
            return Ok(());
        }
        for (i, row) in self.g.iter_mut().enumerate() {
            for j in n1..n2 {
                row.push(entry(i, j));
            }
        }
        for i in n1..n2 {
            self.g.push((0..n2).map(|j| entry(i, j)).collect());
        }

        // widen existing factor rows with zeros
        for m in 0..n1 {
            self.l[m].resize(n2, Rat::zero());
            self.u[m].resize(n2, Rat::zero());
            self.s[m].resize(n2, Rat::zero());
            self.stilde[m].resize(n2, Rat::zero());
        }
        for _ in n1..n2 {
            self.l.push(vec![Rat::zero(); n2]);
            self.u.push(vec![Rat::zero(); n2]);
            self.s.push(vec![Rat::zero(); n2]);
            self.stilde.push(vec![Rat::zero(); n2]);
        }

        // new columns of old U rows, in increasing row order
        for m in 0..n1 {
            for j in n1..n2 {
                let mut v = self.g[m][j].clone();
                for mm in 0..m {
                    if !self.l[m][mm].is_zero() {
                        v -= &self.l[m][mm] * &self.d[mm] * &self.u[mm][j];
                    }
                }
                self.u[m][j] = v / &self.d[m];
            }
        }
        // old columns of new L rows
        for i in n1..n2 {
            for k in 0..n1 {
                let mut v = self.g[i][k].clone();
                for m in 0..k {
                    if !self.l[i][m].is_zero() {
                        v -= &self.l[i][m] * &self.d[m] * &self.u[m][k];
                    }
                }
                self.l[i][k] = v / &self.d[k];
            }
        }
        // new pivots
        for k in n1..n2 {
            let mut piv = self.g[k][k].clone();
            for m in 0..k {
                if !self.l[k][m].is_zero() {
                    piv -= &self.l[k][m] * &self.d[m] * &self.u[m][k];
                }
            }
            if piv.is_zero() {
                return Err(Error::ZeroPivot { index: k });
            }
            self.l[k][k] = Rat::one();
            self.u[k][k] = Rat::one();
            for j in k + 1..n2 {
                let mut v = self.g[k][j].clone();
                for m in 0..k {
                    if !self.l[k][m].is_zero() {
                        v -= &self.l[k][m] * &self.d[m] * &self.u[m][j];
                    }
                }
                self.u[k][j] = v / &piv;
            }
            for i in k + 1..n2 {
                let mut v = self.g[i][k].clone();
                for m in 0..k {
                    if !self.l[i][m].is_zero() {
                        v -= &self.l[i][m] * &self.d[m] * &self.u[m][k];
                    }
                }
                self.l[i][k] = v / &piv;
            }
            self.d.push(piv);
        }

        // s = L^{-1}: new rows only, forward substitution
        for i in n1..n2 {
            for j in (0..=i).rev() {
                if j == i {
                    self.s[i][j] = Rat::one();
                    continue;
                }
                let mut v = Rat::zero();
                for m in j..i {
                    if !self.l[i][m].is_zero() && !self.s[m][j].is_zero() {
                        v -= &self.l[i][m] * &self.s[m][j];
                    }
                }
                self.s[i][j] = v;
            }
        }
        // stilde = (U^T)^{-1}: same pattern against columns of U
        for i in n1..n2 {
            for j in (0..=i).rev() {
                if j == i {
                    self.stilde[i][j] = Rat::one();
                    continue;
                }
                let mut v = Rat::zero();
                for m in j..i {
                    if !self.u[m][i].is_zero() && !self.stilde[m][j].is_zero() {
                        v -= &self.u[m][i] * &self.stilde[m][j];
                    }
                }
                self.stilde[i][j] = v;
            }
        }
        self.n = n2;
        Ok(())
    }

    pub fn h(&self, k: usize) -> &Rat {
        &self.d[k]
    }

    pub fn h_all(&self) -> &[Rat] {
        &self.d
    }

    pub fn s_row(&self, i: usize) -> &[Rat] {
        &self.s[i]
    }

    pub fn stilde_row(&self, i: usize) -> &[Rat] {
        &self.stilde[i]
    }

    pub fn moment(&self, i: usize, j: usize) -> &Rat {
        &self.g[i][j]
    }

    /// Monic type II polynomial: row n of S.
    pub fn b_poly(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.s[n][..=n].to_vec())
    }

    /// Even interlaced columns of H^{-1} Stilde.
    pub fn a1_poly(&self, m: usize) -> Poly {
        let coeffs = (0..=m / 2)
            .map(|k| &self.stilde[m][2 * k] / &self.d[m])
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Odd interlaced columns of H^{-1} Stilde.
    pub fn a2_poly(&self, m: usize) -> Poly {
        if m == 0 {
            return Poly::zero();
        }
        let coeffs = (0..=(m - 1) / 2)
            .map(|k| &self.stilde[m][2 * k + 1] / &self.d[m])
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// L D U multiplied back equals the stored moment block.
    pub fn reconstruction_ok(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let mut v = Rat::zero();
                for m in 0..=i.min(j) {
                    if !self.l[i][m].is_zero() && !self.u[m][j].is_zero() {
                        v += &self.l[i][m] * &self.d[m] * &self.u[m][j];
                    }
                }
                if v != self.g[i][j] {
                    return false;
                }
            }
        }
        true
    }
}

/// Gauss-Borel data attached to a hypergeometric tuple.
#[derive(Debug, Clone)]
pub struct GaussBorel {
    pub tuple: Tuple,
    pub fac: Factorization,
}

impl GaussBorel {
    pub fn new(tuple: &Tuple, n: usize) -> Result<Self> {
        tuple.require_perfect()?;
        let t = tuple.clone();
        let fac = Factorization::from_entries(n, &mut |i, j| {
            let k = j / 2;
            if j % 2 == 0 {
                t.rho1(i + k)
            } else {
                t.rho2(i + k)
            }
        })?;
        Ok(GaussBorel { tuple: t, fac })
    }

    pub fn extend_to(&mut self, n2: usize) -> Result<()> {
        let t = self.tuple.clone();
        self.fac.extend_with(n2, &mut |i, j| {
            let k = j / 2;
            if j % 2 == 0 {
                t.rho1(i + k)
            } else {
                t.rho2(i + k)
            }
        })
    }

    pub fn n(&self) -> usize {
        self.fac.n
    }

    pub fn b_poly(&self, n: usize) -> Poly {
        self.fac.b_poly(n)
    }

    pub fn a1_poly(&self, m: usize) -> Poly {
        self.fac.a1_poly(m)
    }

    pub fn a2_poly(&self, m: usize) -> Poly {
        self.fac.a2_poly(m)
    }

    /// q^(m)(1) = A1^(m)(1) + (c/b) A2^(m)(1).
    pub fn q_at_unity(&self, m: usize) -> Rat {
        let one = rat_int(1);
        self.a1_poly(m).eval(&one) + self.tuple.w2_at_unity() * self.a2_poly(m).eval(&one)
    }

    /// Integral of B^(n) x^k w_weight dmu via moment expansion.
    pub fn b_weight_moment(&self, n: usize, k: usize, weight: u8) -> Rat {
        weight_moment(&self.tuple, &self.b_poly(n), k, weight)
    }

    /// Exact integral of B^(n) q^(m) dmu.
    pub fn pairing(&self, n: usize, m: usize) -> Rat {
        let a1 = self.a1_poly(m);
        let a2 = self.a2_poly(m);
        let mut acc = Rat::zero();
        for (k, coef) in a1.0.iter().enumerate() {
            if !coef.is_zero() {
                acc += coef * self.b_weight_moment(n, k, 1);
            }
        }
        for (k, coef) in a2.0.iter().enumerate() {
            if !coef.is_zero() {
                acc += coef * self.b_weight_moment(n, k, 2);
            }
        }
        acc
    }

    /// First (m, k) with pairing(m, k) != delta_{mk}, scanning m-major.
    pub fn biorthogonality_check(&self, max: usize) -> Option<(usize, usize)> {
        for m in 0..=max {
            for k in 0..=max {
                let expect = if m == k { Rat::one() } else { Rat::zero() };
                if self.pairing(m, k) != expect {
                    return Some((m, k));
                }
            }
        }
        None
    }

    /// Type II orthogonality: B^(n) kills x^k w1 for k <= floor((n-1)/2) and
    /// x^k w2 for k <= floor(n/2) - 1, and produces H_n at the H-moment.
    pub fn type_ii_orthogonality_check(&self, max: usize) -> Result<()> {
        for n in 0..=max {
            if n >= 1 {
                for k in 0..=(n - 1) / 2 {
                    if !self.b_weight_moment(n, k, 1).is_zero() {
                        return Err(Error::Verify(format!(
                            "B^({n}) not orthogonal to x^{k} w1"
                        )));
                    }
                }
            }
            for k in 0..(n / 2) {
                if !self.b_weight_moment(n, k, 2).is_zero() {
                    return Err(Error::Verify(format!(
                        "B^({n}) not orthogonal to x^{k} w2"
                    )));
                }
            }
            let h = if n % 2 == 0 {
                self.b_weight_moment(n, n / 2, 1)
            } else {
                self.b_weight_moment(n, n / 2, 2)
            };
            if &h != self.fac.h(n) {
                return Err(Error::Verify(format!("H_{n} mismatch from moments")));
            }
        }
        Ok(())
    }

    /// Type I orthogonality: q^(n) kills x^k for k < n and pairs to 1 at x^n.
    pub fn type_i_orthogonality_check(&self, max: usize) -> Result<()> {
        for n in 0..=max {
            let a1 = self.a1_poly(n);
            let a2 = self.a2_poly(n);
            for k in 0..=n {
                let mut acc = Rat::zero();
                for (j, coef) in a1.0.iter().enumerate() {
                    acc += coef * self.tuple.rho1(j + k);
                }
                for (j, coef) in a2.0.iter().enumerate() {
                    acc += coef * self.tuple.rho2(j + k);
                }
                let expect = if k == n { Rat::one() } else { Rat::zero() };
                if acc != expect {
                    return Err(Error::Verify(format!(
                        "q^({n}) moment against x^{k} is not {expect}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Integral of poly(x) x^k w_weight dmu by expanding in the moments.
pub fn weight_moment(t: &Tuple, poly: &Poly, k: usize, weight: u8) -> Rat {
    let mut acc = Rat::zero();
    for (i, coef) in poly.0.iter().enumerate() {
        if !coef.is_zero() {
            acc += coef * t.rho(weight, i + k);
        }
    }
    acc
}

/// Closed form H_{2n}.
pub fn h_even_closed(t: &Tuple, n: usize) -> Rat {
    let num = factorial(2 * n)
        * pochhammer(&t.a, 2 * n)
        * pochhammer(&t.b, 2 * n)
        * pochhammer(&(&t.d - &t.a), n)
        * pochhammer(&(&t.d - &t.b), n);
    let den = pochhammer(&t.c, 3 * n)
        * pochhammer(&t.d, 3 * n)
        * pochhammer(&(&t.d + rat_int(n as i64 - 1)), 2 * n);
    num / den
}

/// Closed form H_{2n+1}.
pub fn h_odd_closed(t: &Tuple, n: usize) -> Rat {
    let num = factorial(2 * n + 1)
        * pochhammer(&t.a, 2 * n + 1)
        * pochhammer(&(&t.b + rat_int(1)), 2 * n)
        * pochhammer(&(&t.c - &t.a + rat_int(1)), n)
        * pochhammer(&(&t.c - &t.b), n + 1);
    let den = pochhammer(&(&t.c + rat_int(1)), 3 * n + 1)
        * pochhammer(&(&t.c + rat_int(n as i64)), 2 * n + 1)
        * pochhammer(&t.d, 3 * n + 1);
    num / den
}

pub fn h_closed(t: &Tuple, n: usize) -> Rat {
    if n % 2 == 0 {
        h_even_closed(t, n / 2)
    } else {
        h_odd_closed(t, n / 2)
    }
}

/// Explicit coefficient formula for the monic type II polynomial, written
/// without any factorization.
pub fn b_poly_direct(t: &Tuple, n: usize) -> Poly {
    let half = (n / 2) as i64;
    let half_m1 = (n as i64 - 1).div_euclid(2);
    let mut coeffs = vec![Rat::zero(); n + 1];
    for j in 0..=n {
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        let num = pochhammer(&(&t.a + rat_int((n - j) as i64)), j)
            * pochhammer(&(&t.b + rat_int((n - j) as i64)), j);
        let den = pochhammer(&(&t.c + rat_int(n as i64 + half - j as i64)), j)
            * pochhammer(&(&t.d + rat_int(n as i64 + half_m1 - j as i64)), j);
        coeffs[n - j] = sign * binomial(n, j).unwrap() * num / den;
    }
    Poly::from_coeffs(coeffs)
}

/// The same polynomial through its parity 3F2 representation.
pub fn b_poly_3f2(t: &Tuple, n: usize) -> Result<Poly> {
    use crate::hyper::pfq_terminating;
    let m = (n / 2) as i64;
    let (pref, top) = if n % 2 == 0 {
        let pref = pochhammer(&t.a, n) * pochhammer(&t.b, n)
            / (pochhammer(&(&t.c + rat_int(m)), n) * pochhammer(&(&t.d + rat_int(m - 1)), n));
        (
            pref,
            vec![rat_int(-(n as i64)), &t.c + rat_int(m), &t.d + rat_int(m - 1)],
        )
    } else {
        let pref = -pochhammer(&t.a, n) * pochhammer(&t.b, n)
            / (pochhammer(&(&t.c + rat_int(m)), n) * pochhammer(&(&t.d + rat_int(m)), n));
        (
            pref,
            vec![rat_int(-(n as i64)), &t.c + rat_int(m), &t.d + rat_int(m)],
        )
    };
    let f = pfq_terminating(&top, &[t.a.clone(), t.b.clone()])?;
    Ok(f.scale(&pref))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tuples() -> Vec<Tuple> {
        vec![
            Tuple::parse("1/3,2/3,1/2,1").unwrap(),
            Tuple::parse("1,2,3,7/2").unwrap(),
            Tuple::parse("4/3,5/3,2,5/2").unwrap(),
            Tuple::parse("1/2,1,1/2,2").unwrap(),
        ]
    }

    #[test]
    fn pivots_match_closed_form_h() {
        for t in tuples() {
            let gb = GaussBorel::new(&t, 13).unwrap();
            for n in 0..13 {
                assert_eq!(gb.fac.h(n), &h_closed(&t, n), "tuple {t} H_{n}");
            }
        }
    }

    #[test]
    fn stochastic_uniform_h_sign_pattern() {
        use num::traits::Signed;
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        let gb = GaussBorel::new(&t, 10).unwrap();
        for n in 0..10 {
            let h = gb.fac.h(n);
            if n % 2 == 0 {
                assert!(h.is_positive());
            } else {
                assert!(h.is_negative());
            }
        }
    }

    #[test]
    fn reconstruction_and_growth() {
        let t = Tuple::parse("1,2,3,7/2").unwrap();
        let mut gb = GaussBorel::new(&t, 5).unwrap();
        gb.extend_to(11).unwrap();
        assert!(gb.fac.reconstruction_ok());
        let fresh = GaussBorel::new(&t, 11).unwrap();
        for n in 0..11 {
            assert_eq!(gb.fac.h(n), fresh.fac.h(n));
            assert_eq!(gb.b_poly(n), fresh.b_poly(n));
            assert_eq!(gb.a1_poly(n), fresh.a1_poly(n));
            assert_eq!(gb.a2_poly(n), fresh.a2_poly(n));
        }
    }

    #[test]
    fn zero_pivot_reports_index() {
        let rows = [
            [rat_int(1), rat_int(1)],
            [rat_int(1), rat_int(1)],
        ];
        let err = Factorization::from_entries(2, &mut |i, j| rows[i][j].clone()).unwrap_err();
        assert_eq!(err, Error::ZeroPivot { index: 1 });
    }

    #[test]
    fn b_routes_agree() {
        for t in tuples() {
            let gb = GaussBorel::new(&t, 9).unwrap();
            for n in 0..9 {
                let from_fac = gb.b_poly(n);
                assert_eq!(from_fac, b_poly_direct(&t, n), "tuple {t} direct B^({n})");
                assert_eq!(from_fac, b_poly_3f2(&t, n).unwrap(), "tuple {t} 3F2 B^({n})");
            }
        }
    }

    #[test]
    fn biorthogonality_small_grid() {
        for t in tuples() {
            let gb = GaussBorel::new(&t, 8).unwrap();
            assert_eq!(gb.biorthogonality_check(7), None, "tuple {t}");
            gb.type_ii_orthogonality_check(7).unwrap();
            gb.type_i_orthogonality_check(7).unwrap();
        }
    }

    #[test]
    fn type_i_degrees_and_leading_terms() {
        let t = Tuple::parse("1,2,3,7/2").unwrap();
        let gb = GaussBorel::new(&t, 9).unwrap();
        assert!(gb.a2_poly(0).is_zero());
        assert_eq!(gb.a2_poly(1), Poly::constant(gb.fac.h(1).recip()));
        for m in 1..9usize {
            assert_eq!(gb.a1_poly(m).degree(), Some(m / 2));
            assert_eq!(gb.a2_poly(m).degree(), Some((m - 1) / 2));
            let lead = gb
                .a1_poly(m)
                .coeff(m / 2);
            if m % 2 == 0 {
                assert_eq!(lead, gb.fac.h(m).recip());
            }
        }
    }

    #[test]
    fn monic_b_starts_with_mean_shift() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        let gb = GaussBorel::new(&t, 3).unwrap();
        // B^(1)(x) = x - ab/(cd)
        assert_eq!(gb.b_poly(1).coeff(0), -rat(4, 9));
    }
}
