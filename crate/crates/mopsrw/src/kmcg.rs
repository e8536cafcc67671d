//! Karlin-McGregor representation of the transition probabilities: r-step
//! entries as exact integrals of x^r against the biorthogonal pair, the
//! banded matrix-power oracle, and the transition/first-return generating
//! series over the rationals.

use crate::error::{Error, Result};
use crate::gaussborel::GaussBorel;
use crate::rational::Rat;
use crate::stochastic::{Kind, StochasticSystem};
use num::traits::{One, Zero};

/// Exact integral of x^r B^{(n)} q^{(m)} dmu by moment expansion.
fn pairing_with_power(gb: &GaussBorel, n: usize, m: usize, r: usize) -> Rat {
    let a1 = gb.a1_poly(m);
    let a2 = gb.a2_poly(m);
    let mut acc = Rat::zero();
    for (k, coef) in a1.0.iter().enumerate() {
        if !coef.is_zero() {
            acc += coef * gb.b_weight_moment(n, k + r, 1);
        }
    }
    for (k, coef) in a2.0.iter().enumerate() {
        if !coef.is_zero() {
            acc += coef * gb.b_weight_moment(n, k + r, 2);
        }
    }
    acc
}

/// r-step transition probability by the integral representation:
/// P^r_{II,nm} = (B^{(m)}(1)/B^{(n)}(1)) int x^r B^{(n)} q^{(m)} dmu,
/// P^r_{I,nm}  = (q^{(m)}(1)/q^{(n)}(1)) int x^r B^{(m)} q^{(n)} dmu.
pub fn kmcg_transition(
    gb: &GaussBorel,
    kind: Kind,
    n: usize,
    m: usize,
    r: usize,
) -> Result<Rat> {
    let u = crate::stochastic::unity_values(&gb.tuple, n.max(m) + 1);
    let (integral, scale) = match kind {
        Kind::TypeII => (pairing_with_power(gb, n, m, r), &u.b[m] / &u.b[n]),
        Kind::TypeI => (pairing_with_power(gb, m, n, r), &u.q[m] / &u.q[n]),
    };
    Ok(scale * integral)
}

/// (P^r)_{nm} on the truncated system. Upward moves go one state at a time,
/// so the entry is exact once the window holds max(n,m)+r+1 states.
pub fn matrix_power_transition(
    sys: &StochasticSystem,
    n: usize,
    m: usize,
    r: usize,
) -> Result<Rat> {
    let need = n.max(m) + r + 1;
    if sys.p.n < need {
        return Err(Error::Window(format!(
            "truncation holds {} states, entry needs {need}",
            sys.p.n
        )));
    }
    let mut v = vec![Rat::zero(); sys.p.n];
    v[n] = Rat::one();
    for _ in 0..r {
        v = sys.p.apply_left(&v);
    }
    Ok(v[m].clone())
}

/// Transition generating function P_{nm}(s) and first-return series F_{nm}(s),
/// both truncated at order R inclusive.
#[derive(Debug, Clone)]
pub struct TransitionSeries {
    pub n: usize,
    pub m: usize,
    pub p: Vec<Rat>,
    pub f: Vec<Rat>,
}

fn series_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len();
    let mut out = vec![Rat::zero(); len];
    for i in 0..len {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn series_inverse(a: &[Rat]) -> Result<Vec<Rat>> {
    if a[0].is_zero() {
        return Err(Error::Domain("series has no inverse: zero constant term".into()));
    }
    let mut inv = vec![Rat::zero(); a.len()];
    inv[0] = Rat::one() / &a[0];
    for k in 1..a.len() {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                acc += &a[j] * &inv[k - j];
            }
        }
        inv[k] = -acc / &a[0];
    }
    Ok(inv)
}

/// Builds the pair of series from matrix powers of the truncated system.
/// F_{nm}(s) = P_{nm}(s)/P_{mm}(s) off the diagonal, 1 - 1/P_{nn}(s) on it.
pub fn generating_series(
    sys: &StochasticSystem,
    n: usize,
    m: usize,
    order: usize,
) -> Result<TransitionSeries> {
    let need = n.max(m) + order + 1;
    if sys.p.n < need {
        return Err(Error::Window(format!(
            "truncation holds {} states, entry needs {need}",
            sys.p.n
        )));
    }
    let walk = |from: usize, to: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); sys.p.n];
        v[from] = Rat::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(v[to].clone());
        for _ in 0..order {
            v = sys.p.apply_left(&v);
            coeffs.push(v[to].clone());
        }
        coeffs
    };
    let p = walk(n, m);
    let f = if n == m {
        let inv = series_inverse(&p)?;
        let mut f = vec![Rat::zero(); order + 1];
        f[0] = Rat::one() - &inv[0];
        for k in 1..=order {
            f[k] = -inv[k].clone();
        }
        f
    } else {
        series_mul(&p, &series_inverse(&walk(m, m))?)
    };
    Ok(TransitionSeries { n, m, p, f })
}

/// P_{nn}(s)(1 - F_{nn}(s)) = 1 through the truncation order.
pub fn first_return_identity_ok(series: &TransitionSeries) -> bool {
    if series.n != series.m {
        return false;
    }
    let mut one_minus_f: Vec<Rat> = series.f.iter().map(|v| -v).collect();
    one_minus_f[0] += Rat::one();
    let prod = series_mul(&series.p, &one_minus_f);
    prod[0] == Rat::one() && prod[1..].iter().all(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::stochastic::stochastic_normalize;
    use crate::tuple::Tuple;

    fn t(s: &str) -> Tuple {
        Tuple::parse(s).unwrap()
    }

    #[test]
    fn zero_steps_is_kronecker() {
        let tu = t("4/3,5/3,3/2,2");
        let gb = GaussBorel::new(&tu, 12).unwrap();
        for kind in [Kind::TypeII, Kind::TypeI] {
            for n in 0..4 {
                for m in 0..4 {
                    let v = kmcg_transition(&gb, kind, n, m, 0).unwrap();
                    let expect = if n == m { Rat::one() } else { Rat::zero() };
                    assert_eq!(v, expect, "{kind:?} ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn one_step_is_the_matrix() {
        let tu = t("1,2,3,7/2");
        let gb = GaussBorel::new(&tu, 12).unwrap();
        for kind in [Kind::TypeII, Kind::TypeI] {
            let sys = stochastic_normalize(&tu, 8, kind).unwrap();
            for n in 0..4 {
                for m in 0..4 {
                    let v = kmcg_transition(&gb, kind, n, m, 1).unwrap();
                    assert_eq!(v, *sys.p.get(n, m), "{kind:?} ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn integral_route_equals_power_route() {
        for s in ["1/3,2/3,1/2,1", "4/3,5/3,3/2,2", "1,2,3,7/2"] {
            let tu = t(s);
            let gb = GaussBorel::new(&tu, 18).unwrap();
            for kind in [Kind::TypeII, Kind::TypeI] {
                let sys = stochastic_normalize(&tu, 15, kind).unwrap();
                for n in (0..=6).step_by(3) {
                    for m in (0..=6).step_by(2) {
                        for r in [0, 1, 3, 8] {
                            let via_integral = kmcg_transition(&gb, kind, n, m, r).unwrap();
                            let via_power = matrix_power_transition(&sys, n, m, r).unwrap();
                            assert_eq!(
                                via_integral, via_power,
                                "tuple {s}, {kind:?}, (n,m,r)=({n},{m},{r})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn five_step_example() {
        let tu = t("4/3,5/3,2,5/2");
        let gb = GaussBorel::new(&tu, 16).unwrap();
        for kind in [Kind::TypeII, Kind::TypeI] {
            let sys = stochastic_normalize(&tu, 9, kind).unwrap();
            assert_eq!(
                kmcg_transition(&gb, kind, 2, 3, 5).unwrap(),
                matrix_power_transition(&sys, 2, 3, 5).unwrap(),
                "{kind:?}"
            );
        }
    }

    #[test]
    fn two_step_return_of_the_uniform_chain() {
        let tu = t("1/3,2/3,1/2,1");
        let sys = stochastic_normalize(&tu, 4, Kind::TypeI).unwrap();
        // row 0 = (12/27, 12/27, 3/27), row 1 starts (8/27, ...); row 2 has
        // no entry in column 0, so two paths return in two steps
        let expect = rat(12, 27) * rat(12, 27) + rat(12, 27) * rat(8, 27);
        assert_eq!(matrix_power_transition(&sys, 0, 0, 2).unwrap(), expect);
    }

    #[test]
    fn window_is_enforced() {
        let tu = t("1/3,2/3,1/2,1");
        let sys = stochastic_normalize(&tu, 6, Kind::TypeII).unwrap();
        assert!(matrix_power_transition(&sys, 2, 1, 3).is_ok());
        let err = matrix_power_transition(&sys, 2, 1, 4).unwrap_err();
        assert!(matches!(err, Error::Window(_)), "{err:?}");
        assert!(generating_series(&sys, 0, 0, 6).is_err());
    }

    #[test]
    fn generating_series_identities() {
        let tu = t("4/3,5/3,3/2,2");
        for kind in [Kind::TypeII, Kind::TypeI] {
            let sys = stochastic_normalize(&tu, 14, kind).unwrap();
            for nn in 0..3 {
                let series = generating_series(&sys, nn, nn, 10).unwrap();
                assert_eq!(series.p[0], Rat::one());
                assert_eq!(series.f[1], *sys.p.get(nn, nn), "{kind:?} n={nn}");
                assert!(first_return_identity_ok(&series), "{kind:?} n={nn}");
            }
            let off = generating_series(&sys, 2, 0, 10).unwrap();
            assert_eq!(off.p[0], Rat::zero());
            // F coefficients start with the first-passage step count
            assert_eq!(off.f[0], Rat::zero());
        }
    }
}
