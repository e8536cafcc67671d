//! The twelve uniform tuples: a registry of their closed forms (cube-root
//! weights, hypergeometric type II representations, values at unity, type I
//! polynomials through the e_n sequence) and the summation and contiguous
//! identities the families satisfy.

use crate::error::{Error, Result};
use crate::hyper::{pfq_terminating, ThetaForm};
use crate::poly::Poly;
use crate::rational::{fmt_rat, kappa, rat, rat_int, trinomial, Rat};
use crate::tuple::Tuple;
use num::traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformClass {
    /// delta = 1/2: recurrent walk, weights carry 1/sqrt(1-x).
    Stochastic,
    /// delta = 3/2: transient walk with a mass defect.
    SemiStochastic,
}

impl std::fmt::Display for UniformClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UniformClass::Stochastic => write!(f, "stochastic"),
            UniformClass::SemiStochastic => write!(f, "semistochastic"),
        }
    }
}

/// Everything the registry knows about one uniform tuple: its gauge partner,
/// the closed-form weights, the first type I pair, and the recombination row
/// expressing A^(n+2) through (e_n, e_{n+1}, e_{n+2}).
#[derive(Debug, Clone)]
pub struct UniformInfo {
    pub tuple: Tuple,
    pub partner: Tuple,
    pub class: UniformClass,
    /// 1..=6, shared by the two members of a gauge pair.
    pub family: usize,
    pub w1_form: ThetaForm,
    pub w2_form: ThetaForm,
    /// A_1^(1) and A_2^(1); A_1^(0) = 1 and A_2^(0) = 0 always.
    pub a1_first: Rat,
    pub a2_first: Rat,
    /// A_1^(n+2) = row.0(x) e_n + row.1 e_{n+1} + e_{n+2}.
    pub a1_row: (Poly, Rat),
    /// A_2^(n+2) = row.0 e_n + row.1 e_{n+1}.
    pub a2_row: (Rat, Rat),
}

fn form(coef: Rat, x_pow_thirds: i32, theta_pow: u32, plus: bool, sqrt: bool) -> ThetaForm {
    ThetaForm {
        coef,
        x_pow_thirds,
        theta_pow,
        theta_sign: if plus { 1 } else { -1 },
        inv_sqrt_one_minus_x: sqrt,
    }
}

pub fn registry() -> Vec<UniformInfo> {
    let lin = |c0: Rat, c1: Rat| Poly::from_coeffs(vec![c0, c1]);
    let con = |c0: Rat| Poly::constant(c0);
    let x_coef = rat(-6561, 32);
    vec![
        UniformInfo {
            tuple: Tuple::from_i64((1, 3), (2, 3), (1, 2), (1, 1)),
            partner: Tuple::from_i64((2, 3), (1, 3), (1, 2), (1, 1)),
            class: UniformClass::Stochastic,
            family: 1,
            w1_form: form(rat(1, 4), -2, 1, true, true),
            w2_form: form(rat(3, 16), -2, 4, true, true),
            a1_first: rat(27, 2),
            a2_first: rat(-27, 2),
            a1_row: (lin(rat(729, 4), x_coef.clone()), rat(135, 4)),
            a2_row: (rat(-729, 8), rat(-27, 2)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((2, 3), (1, 3), (1, 2), (1, 1)),
            partner: Tuple::from_i64((1, 3), (2, 3), (1, 2), (1, 1)),
            class: UniformClass::Stochastic,
            family: 1,
            w1_form: form(rat(1, 4), -2, 1, true, true),
            w2_form: form(rat(3, 8), -1, 2, true, true),
            a1_first: rat(-27, 4),
            a2_first: rat(27, 4),
            a1_row: (lin(rat(729, 16), x_coef), rat(27, 2)),
            a2_row: (rat(729, 16), rat(27, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((2, 3), (4, 3), (1, 1), (3, 2)),
            partner: Tuple::from_i64((4, 3), (2, 3), (1, 1), (3, 2)),
            class: UniformClass::Stochastic,
            family: 2,
            w1_form: form(rat(3, 8), -1, 2, true, true),
            w2_form: form(rat(9, 32), -1, 5, true, true),
            a1_first: rat(27, 2),
            a2_first: rat(-27, 2),
            a1_row: (con(rat(-3645, 16)), rat(135, 4)),
            a2_row: (rat(729, 4), rat(-27, 2)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((4, 3), (2, 3), (1, 1), (3, 2)),
            partner: Tuple::from_i64((2, 3), (4, 3), (1, 1), (3, 2)),
            class: UniformClass::Stochastic,
            family: 2,
            w1_form: form(rat(3, 8), -1, 2, true, true),
            w2_form: form(rat(9, 16), 1, 1, true, true),
            a1_first: rat(-27, 4),
            a2_first: rat(27, 4),
            a1_row: (con(rat(729, 16)), rat(27, 2)),
            a2_row: (rat(-729, 8), rat(27, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((4, 3), (5, 3), (3, 2), (2, 1)),
            partner: Tuple::from_i64((5, 3), (4, 3), (3, 2), (2, 1)),
            class: UniformClass::Stochastic,
            family: 3,
            w1_form: form(rat(9, 16), 1, 1, true, true),
            w2_form: form(rat(81, 160), 1, 4, true, true),
            a1_first: rat(135, 4),
            a2_first: rat(-135, 4),
            a1_row: (con(rat(-729, 8)), rat_int(54)),
            a2_row: (Rat::zero(), rat(-135, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((5, 3), (4, 3), (3, 2), (2, 1)),
            partner: Tuple::from_i64((4, 3), (5, 3), (3, 2), (2, 1)),
            class: UniformClass::Stochastic,
            family: 3,
            w1_form: form(rat(9, 16), 1, 1, true, true),
            w2_form: form(rat(81, 128), 2, 2, true, true),
            a1_first: rat_int(-27),
            a2_first: rat_int(27),
            a1_row: (con(rat(-729, 8)), rat(-27, 4)),
            a2_row: (Rat::zero(), rat_int(27)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((1, 3), (2, 3), (1, 1), (3, 2)),
            partner: Tuple::from_i64((2, 3), (1, 3), (1, 1), (3, 2)),
            class: UniformClass::SemiStochastic,
            family: 4,
            w1_form: form(rat(3, 4), -2, 1, false, false),
            w2_form: form(rat(9, 32), -2, 4, false, false),
            a1_first: rat_int(-27),
            a2_first: rat_int(27),
            a1_row: (con(rat(-729, 8)), rat(-27, 4)),
            a2_row: (rat(729, 4), rat_int(27)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((2, 3), (1, 3), (1, 1), (3, 2)),
            partner: Tuple::from_i64((1, 3), (2, 3), (1, 1), (3, 2)),
            class: UniformClass::SemiStochastic,
            family: 4,
            w1_form: form(rat(3, 4), -2, 1, false, false),
            w2_form: form(rat(9, 8), -1, 2, false, false),
            a1_first: rat(-27, 4),
            a2_first: rat(27, 4),
            a1_row: (con(rat(729, 16)), rat(27, 2)),
            a2_row: (rat(729, 16), rat(27, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((2, 3), (4, 3), (3, 2), (2, 1)),
            partner: Tuple::from_i64((4, 3), (2, 3), (3, 2), (2, 1)),
            class: UniformClass::SemiStochastic,
            family: 5,
            w1_form: form(rat(9, 8), -1, 2, false, false),
            w2_form: form(rat(81, 160), -1, 5, false, false),
            a1_first: rat(-135, 2),
            a2_first: rat(135, 2),
            a1_row: (con(rat(729, 16)), rat(-189, 4)),
            a2_row: (Rat::zero(), rat(135, 2)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((4, 3), (2, 3), (3, 2), (2, 1)),
            partner: Tuple::from_i64((2, 3), (4, 3), (3, 2), (2, 1)),
            class: UniformClass::SemiStochastic,
            family: 5,
            w1_form: form(rat(9, 8), -1, 2, false, false),
            w2_form: form(rat(81, 16), 1, 1, false, false),
            a1_first: rat(-27, 4),
            a2_first: rat(27, 4),
            a1_row: (con(rat(729, 16)), rat(27, 2)),
            a2_row: (Rat::zero(), rat(27, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((4, 3), (5, 3), (2, 1), (5, 2)),
            partner: Tuple::from_i64((5, 3), (4, 3), (2, 1), (5, 2)),
            class: UniformClass::SemiStochastic,
            family: 6,
            w1_form: form(rat(81, 16), 1, 1, false, false),
            w2_form: form(rat(243, 160), 1, 4, false, false),
            a1_first: rat(-135, 4),
            a2_first: rat(135, 4),
            a1_row: (Poly::zero(), rat(-27, 2)),
            a2_row: (Rat::zero(), rat(135, 4)),
        },
        UniformInfo {
            tuple: Tuple::from_i64((5, 3), (4, 3), (2, 1), (5, 2)),
            partner: Tuple::from_i64((4, 3), (5, 3), (2, 1), (5, 2)),
            class: UniformClass::SemiStochastic,
            family: 6,
            w1_form: form(rat(81, 16), 1, 1, false, false),
            w2_form: form(rat(243, 64), 2, 2, false, false),
            a1_first: rat(-27, 2),
            a2_first: rat(27, 2),
            a1_row: (Poly::zero(), rat(27, 4)),
            a2_row: (Rat::zero(), rat(27, 2)),
        },
    ]
}

pub fn lookup(t: &Tuple) -> Option<UniformInfo> {
    registry().into_iter().find(|info| &info.tuple == t)
}

pub fn require(t: &Tuple) -> Result<UniformInfo> {
    lookup(t).ok_or_else(|| Error::Domain(format!("{t} is not one of the twelve uniform tuples")))
}

/// e_0, ..., e_{count-1} from the three-term window of the generating
/// identity ((1 + t/kappa)^3 - x t^2 / kappa^3) sum e_n t^n = 1.
pub fn en_sequence(count: usize) -> Vec<Poly> {
    let ks = kappa().recip();
    let c1 = rat_int(3) * &ks;
    let c2 = Poly::from_coeffs(vec![rat_int(3) * &ks * &ks, -(&ks * &ks * &ks)]);
    let c3 = &ks * &ks * &ks;
    let mut e: Vec<Poly> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            e.push(Poly::one());
            continue;
        }
        let mut acc = e[n - 1].scale(&c1);
        if n >= 2 {
            acc = &acc + &(&c2 * &e[n - 2]);
        }
        if n >= 3 {
            acc = &acc + &e[n - 3].scale(&c3);
        }
        e.push(-&acc);
    }
    e
}

/// Same polynomial from the solutions of m1 + 2 m2 + 3 m3 = n:
/// e_n = (-kappa)^{-n} sum (-1)^{m2} (m1+m2+m3; m1, m2, m3) 3^{m1+m2}
///       (1 - x/(3 kappa))^{m2}.
pub fn en_triple_sum(n: usize) -> Result<Poly> {
    let k = kappa();
    let base = Poly::from_coeffs(vec![Rat::one(), -(rat_int(3) * &k).recip()]);
    let mut base_pows = vec![Poly::one()];
    let mut acc = Poly::zero();
    for m3 in 0..=n / 3 {
        for m2 in 0..=(n - 3 * m3) / 2 {
            let m1 = n - 2 * m2 - 3 * m3;
            while base_pows.len() <= m2 {
                let next = &base_pows[base_pows.len() - 1].clone() * &base;
                base_pows.push(next);
            }
            let mut coef = trinomial(m1 + m2 + m3, m1, m2, m3)?
                * rat_int(3).pow((m1 + m2) as i32);
            if m2 % 2 == 1 {
                coef = -coef;
            }
            acc = &acc + &base_pows[m2].scale(&coef);
        }
    }
    Ok(acc.scale(&(-k).pow(-(n as i32))))
}

/// Type I pairs (A_1^(m), A_2^(m)) for m <= max from the registry rows and
/// the e_n sequence alone, no factorization involved.
pub fn uniform_type_i(t: &Tuple, max: usize) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let info = require(t)?;
    let e = en_sequence(max + 1);
    let mut a1 = vec![Poly::one()];
    let mut a2 = vec![Poly::zero()];
    if max >= 1 {
        a1.push(Poly::constant(info.a1_first.clone()));
        a2.push(Poly::constant(info.a2_first.clone()));
    }
    for m in 2..=max {
        let low = m - 2;
        let p1 = &(&(&info.a1_row.0 * &e[low]) + &e[m - 1].scale(&info.a1_row.1)) + &e[m];
        a1.push(p1);
        let p2 = &e[low].scale(&info.a2_row.0) + &e[m - 1].scale(&info.a2_row.1);
        a2.push(p2);
    }
    Ok((a1, a2))
}

/// B^(n)(1) for n < count in the closed form of the tuple's family.
pub fn b_at_unity_closed(t: &Tuple, count: usize) -> Result<Vec<Rat>> {
    let info = require(t)?;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            out.push(Rat::one());
            continue;
        }
        let p8 = rat_int(8).pow(n as i32);
        let p27 = rat_int(27).pow(n as i32);
        let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
        let m = n as i64;
        let v = match info.family {
            1 => (rat_int(2) * &p8 + &sign) / &p27,
            2 => (rat_int(4) * &p8 - &sign) / (rat_int(3) * &p27),
            3 => (rat_int(8) * &p8 + &sign) / (rat_int(9) * &p27),
            4 => (rat_int(2) * rat_int(9 * m + 4) * &p8 + &sign) / (rat_int(9) * &p27),
            5 => (rat_int(4) * rat_int(9 * m + 7) * &p8 - &sign) / (rat_int(27) * &p27),
            6 => (rat_int(8) * rat_int(9 * m + 10) * &p8 + &sign) / (rat_int(81) * &p27),
            f => return Err(Error::Domain(format!("no family {f}"))),
        };
        out.push(v);
    }
    Ok(out)
}

fn half(p: i64) -> Rat {
    rat(p, 2)
}

fn third(p: i64) -> Rat {
    rat(p, 3)
}

fn family_tops(family: usize, m: i64) -> ([Rat; 3], [Rat; 2]) {
    match family {
        1 => (
            [rat_int(-m), half(m + 1), half(m)],
            [third(1), third(2)],
        ),
        2 => (
            [rat_int(-m), half(m + 1), half(m + 2)],
            [third(2), third(4)],
        ),
        3 => (
            [rat_int(-m), half(m + 3), half(m + 2)],
            [third(4), third(5)],
        ),
        4 => (
            [rat_int(-m), half(m + 1), half(m + 2)],
            [third(1), third(2)],
        ),
        5 => (
            [rat_int(-m), half(m + 3), half(m + 2)],
            [third(2), third(4)],
        ),
        _ => (
            [rat_int(-m), half(m + 4), half(m + 3)],
            [third(4), third(5)],
        ),
    }
}

/// The hypergeometric representation of the monic type II polynomial: a
/// prefactor times a terminating 3F2 whose top row moves with n.
pub fn b_hyper_poly(t: &Tuple, n: usize) -> Result<Poly> {
    let info = require(t)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let m = n as i64;
    let prefactor = match info.family {
        1 => rat_int(3),
        2 => rat_int(3 * m + 1),
        3 => rat_int(m + 1) * rat_int(3 * m + 2) / rat_int(2),
        4 => Rat::one(),
        5 => rat_int(m + 1),
        6 => rat_int(m + 2) * rat_int(m + 1) / rat_int(2),
        f => return Err(Error::Domain(format!("no family {f}"))),
    };
    let (top, bottom) = family_tops(info.family, m);
    let scale = prefactor * (-kappa()).pow(n as i32);
    Ok(pfq_terminating(&top, &bottom)?.scale(&scale))
}

/// The six terminating 3F2 values at unity, checked against their closed
/// forms for every n <= max.
pub fn summation_identities_check(max: usize) -> Result<()> {
    let one = Rat::one();
    for n in 0..=max {
        let m = n as i64;
        let p4 = rat_int(4).pow(n as i32);
        let p8 = rat_int(-8).pow(n as i32);
        for family in 1..=6usize {
            let (top, bottom) = family_tops(family, m);
            let value = pfq_terminating(&top, &bottom)?.eval(&one);
            let closed = match family {
                1 => (&one + rat_int(2) * &p8) / (rat_int(3) * &p4),
                2 => (rat_int(4) * &p8 - &one) / (rat_int(3 * (3 * m + 1)) * &p4),
                3 => {
                    rat_int(2) * (&one + rat_int(8) * &p8)
                        / (rat_int(9 * (m + 1) * (3 * m + 2)) * &p4)
                }
                4 => (&one + rat_int(2 * (9 * m + 4)) * &p8) / (rat_int(9) * &p4),
                5 => (rat_int(4 * (9 * m + 7)) * &p8 - &one) / (rat_int(27 * (m + 1)) * &p4),
                _ => {
                    rat_int(2) * (&one + rat_int(8 * (9 * m + 10)) * &p8)
                        / (rat_int(81 * (m + 1) * (m + 2)) * &p4)
                }
            };
            if value != closed {
                return Err(Error::Verify(format!(
                    "summation {family} fails at n = {n}: got {}, closed form {}",
                    fmt_rat(&value),
                    fmt_rat(&closed)
                )));
            }
        }
    }
    Ok(())
}

/// The six contiguous relations between neighbouring family members, each an
/// identically zero polynomial for every n in 1..=max.
pub fn contiguous_identities_check(max: usize) -> Result<()> {
    let k = kappa();
    let b13 = [third(1), third(2)];
    let b24 = [third(2), third(4)];
    let hyp = |a1: Rat, a2: Rat, a3: Rat, b: &[Rat; 2]| pfq_terminating(&[a1, a2, a3], b);
    for n in 1..=max {
        let m = n as i64;
        let lead = |family: usize, coef: Rat| -> Result<Poly> {
            let (top, bottom) = family_tops(family, m);
            Ok(pfq_terminating(&top, &bottom)?.scale(&coef).shift_up())
        };
        let relations: [(&str, Poly); 6] = [
            ("3F2 ladder 1", {
                let lead = lead(3, rat_int((m + 1) * (3 * m + 2)) / (rat_int(6) * &k))?;
                let tail = &hyp(rat_int(-m - 1), half(m + 2), half(m + 1), &b13)?
                    - &hyp(rat_int(-m), half(m + 1), half(m), &b13)?;
                &lead + &tail
            }),
            ("3F2 ladder 2", {
                let lead = lead(6, rat_int((m + 1) * (m + 2)) / (rat_int(2) * &k))?;
                let tail = &hyp(rat_int(-m - 1), half(m + 2), half(m + 3), &b13)?
                    - &hyp(rat_int(-m), half(m + 1), half(m + 2), &b13)?;
                &lead + &tail
            }),
            ("4F3 ladder 1", {
                let lead = lead(2, rat_int(3 * m + 1) / &k)?;
                let tail = &(&hyp(rat_int(-m - 1), half(m + 2), half(m + 1), &b13)?.scale(&rat_int(3))
                    - &hyp(rat_int(-m), half(m + 1), half(m), &b13)?.scale(&rat_int(6)))
                    + &hyp(rat_int(-m + 1), half(m), half(m - 1), &b13)?.scale(&rat_int(3));
                &lead + &tail
            }),
            ("4F3 ladder 2", {
                let lead = lead(3, rat_int((m + 1) * (3 * m + 2)) / (rat_int(2) * &k))?;
                let tail = &(&hyp(rat_int(-m - 1), half(m + 2), half(m + 3), &b24)?
                    .scale(&rat_int(3 * m + 4))
                    - &hyp(rat_int(-m), half(m + 1), half(m + 2), &b24)?
                        .scale(&rat_int(2 * (3 * m + 1))))
                    + &hyp(rat_int(-m + 1), half(m), half(m + 1), &b24)?.scale(&rat_int(3 * m - 2));
                &lead + &tail
            }),
            ("4F3 ladder 3", {
                let lead = lead(5, rat_int(m + 1) / &k)?;
                let tail = &(&hyp(rat_int(-m - 1), half(m + 2), half(m + 3), &b13)?
                    - &hyp(rat_int(-m), half(m + 1), half(m + 2), &b13)?.scale(&rat_int(2)))
                    + &hyp(rat_int(-m + 1), half(m), half(m + 1), &b13)?;
                &lead + &tail
            }),
            ("4F3 ladder 4", {
                let lead = lead(6, rat_int((m + 1) * (m + 2)) / (rat_int(2) * &k))?;
                let tail = &(&hyp(rat_int(-m - 1), half(m + 4), half(m + 3), &b24)?
                    .scale(&rat_int(m + 2))
                    - &hyp(rat_int(-m), half(m + 3), half(m + 2), &b24)?
                        .scale(&rat_int(2 * (m + 1))))
                    + &hyp(rat_int(-m + 1), half(m + 2), half(m + 1), &b24)?.scale(&rat_int(m));
                &lead + &tail
            }),
        ];
        for (label, residual) in relations {
            if !residual.is_zero() {
                return Err(Error::Verify(format!("{label} fails at n = {n}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::christoffel::gauge_solve;
    use crate::gaussborel::{b_poly_direct, GaussBorel};
    use crate::hyper::{weight_eval, WeightKind};
    use crate::jacobi::band_coefficients;
    use crate::rational::rat_to_f64;
    use crate::stochastic::b_at_unity;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert_eq!(reg.len(), 12);
        for info in &reg {
            assert!(info.tuple.perfectness_ok());
            assert_eq!(info.partner, info.tuple.gauge_partner());
            let back = lookup(&info.partner).unwrap();
            assert_eq!(back.family, info.family);
            assert_eq!(back.partner, info.tuple);
            let delta = info.tuple.delta();
            match info.class {
                UniformClass::Stochastic => assert_eq!(delta, rat(1, 2)),
                UniformClass::SemiStochastic => assert_eq!(delta, rat(3, 2)),
            }
        }
        assert!(lookup(&Tuple::parse("1,2,3,7/2").unwrap()).is_none());
        assert!(matches!(
            require(&Tuple::parse("1,2,3,7/2").unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn en_two_routes_agree() {
        let e = en_sequence(13);
        for (n, en) in e.iter().enumerate() {
            assert_eq!(en, &en_triple_sum(n).unwrap(), "e_{n}");
        }
    }

    #[test]
    fn en_low_orders() {
        let k = kappa();
        let e = en_sequence(12);
        assert_eq!(e[0], Poly::one());
        assert_eq!(e[1], Poly::constant(rat_int(-3) / &k));
        assert_eq!(
            e[2],
            Poly::from_coeffs(vec![rat_int(6) / (&k * &k), (&k * &k * &k).recip()])
        );
        assert_eq!(
            e[4],
            Poly::from_coeffs(vec![
                rat_int(15) / &k.pow(4),
                rat_int(21) / &k.pow(5),
                k.pow(6).recip()
            ])
        );
        assert_eq!(
            e[9],
            Poly::from_coeffs(vec![
                rat_int(-55) / &k.pow(9),
                rat_int(-792) / &k.pow(10),
                rat_int(-1287) / &k.pow(11),
                rat_int(-364) / &k.pow(12),
                rat_int(-15) / &k.pow(13)
            ])
        );
        assert_eq!(
            e[11],
            Poly::from_coeffs(vec![
                rat_int(-78) / &k.pow(11),
                rat_int(-2002) / &k.pow(12),
                rat_int(-6435) / &k.pow(13),
                rat_int(-4368) / &k.pow(14),
                rat_int(-680) / &k.pow(15),
                rat_int(-18) / &k.pow(16)
            ])
        );
    }

    #[test]
    fn type_i_rows_match_factorization() {
        for info in registry() {
            let max = 10usize;
            let gb = GaussBorel::new(&info.tuple, max + 1).unwrap();
            let (a1, a2) = uniform_type_i(&info.tuple, max).unwrap();
            for m in 0..=max {
                assert_eq!(a1[m], gb.a1_poly(m), "{} A1 at {m}", info.tuple);
                assert_eq!(a2[m], gb.a2_poly(m), "{} A2 at {m}", info.tuple);
            }
        }
    }

    #[test]
    fn second_row_reductions() {
        // spot values of A^(2) in the x-variable
        let (a1, a2) = uniform_type_i(&Tuple::parse("1/3,2/3,1/2,1").unwrap(), 2).unwrap();
        assert_eq!(
            a1[2],
            Poly::from_coeffs(vec![rat(-3645, 16), rat(6561, 64)])
        );
        assert_eq!(a2[2], Poly::constant(rat(729, 4)));
        let (a1, a2) = uniform_type_i(&Tuple::parse("2/3,4/3,1,3/2").unwrap(), 2).unwrap();
        assert_eq!(
            a1[2],
            Poly::from_coeffs(vec![rat(-5103, 8), rat(19683, 64)])
        );
        assert_eq!(a2[2], Poly::constant(rat(3645, 8)));
        let (a1, a2) = uniform_type_i(&Tuple::parse("4/3,5/3,2,5/2").unwrap(), 2).unwrap();
        assert_eq!(
            a1[2],
            Poly::from_coeffs(vec![rat(2187, 4), rat(19683, 64)])
        );
        assert_eq!(a2[2], Poly::constant(rat(-10935, 16)));
    }

    #[test]
    fn unity_values_follow_family_forms() {
        for info in registry() {
            let closed = b_at_unity_closed(&info.tuple, 21).unwrap();
            let direct = b_at_unity(&info.tuple, 21);
            assert_eq!(closed, direct, "{}", info.tuple);
        }
        // frozen sample: family 1 at n = 2 is (2*64 + 1)/729
        let v = b_at_unity_closed(&Tuple::parse("1/3,2/3,1/2,1").unwrap(), 3).unwrap();
        assert_eq!(v[2], rat(129, 729));
    }

    #[test]
    fn hypergeometric_b_representation() {
        for info in registry() {
            for n in 0..=10usize {
                assert_eq!(
                    b_hyper_poly(&info.tuple, n).unwrap(),
                    b_poly_direct(&info.tuple, n),
                    "{} at n = {n}",
                    info.tuple
                );
            }
        }
    }

    #[test]
    fn summations_hold() {
        summation_identities_check(20).unwrap();
        // frozen sample: family 1 at n = 2 evaluates to 43/16
        let (top, bottom) = family_tops(1, 2);
        assert_eq!(
            pfq_terminating(&top, &bottom).unwrap().eval(&Rat::one()),
            rat(43, 16)
        );
    }

    #[test]
    fn contiguous_relations_hold() {
        contiguous_identities_check(15).unwrap();
    }

    #[test]
    fn theta_forms_match_the_hypergeometric_weights() {
        for info in registry() {
            for x in [0.1f64, 0.4, 0.7, 0.95] {
                let w1 = weight_eval(&info.tuple, WeightKind::W1, x).unwrap();
                let w2 = weight_eval(&info.tuple, WeightKind::W2, x).unwrap();
                let t1 = info.w1_form.eval(x).unwrap();
                let t2 = info.w2_form.eval(x).unwrap();
                assert!(
                    (w1 - t1).abs() < 1e-10,
                    "{} W1 at {x}: {w1} vs {t1}",
                    info.tuple
                );
                assert!(
                    (w2 - t2).abs() < 1e-10,
                    "{} W2 at {x}: {w2} vs {t2}",
                    info.tuple
                );
            }
        }
    }

    #[test]
    fn gauge_combination_reproduces_partner_weight() {
        // What_2 = -(alpha/beta) W_1 + (1/beta) W_2 pointwise, and the same
        // combination exactly at the moment level.
        for info in registry() {
            let g = gauge_solve(&info.tuple, 20).unwrap();
            let u = -(&g.alpha / &g.beta);
            let v = g.beta.recip();
            for n in 0..=20usize {
                let combo = &u * info.tuple.rho1(n) + &v * info.tuple.rho2(n);
                assert_eq!(combo, info.partner.rho2(n), "{} at {n}", info.tuple);
            }
            let partner = lookup(&info.partner).unwrap();
            for x in [0.2f64, 0.55, 0.9] {
                let combo = rat_to_f64(&u) * info.w1_form.eval(x).unwrap()
                    + rat_to_f64(&v) * info.w2_form.eval(x).unwrap();
                let hat = partner.w2_form.eval(x).unwrap();
                assert!(
                    (combo - hat).abs() < 1e-12,
                    "{} at {x}: {combo} vs {hat}",
                    info.tuple
                );
            }
        }
    }

    #[test]
    fn gauge_pairs_share_recurrence_data() {
        let mut seen = std::collections::HashSet::new();
        for info in registry() {
            if !seen.insert(info.family) {
                continue;
            }
            let gb = GaussBorel::new(&info.tuple, 13).unwrap();
            let gp = GaussBorel::new(&info.partner, 13).unwrap();
            for n in 0..=12usize {
                assert_eq!(gb.b_poly(n), gp.b_poly(n), "{} B at {n}", info.tuple);
            }
            assert_eq!(
                band_coefficients(&info.tuple, 12),
                band_coefficients(&info.partner, 12),
                "{} bands",
                info.tuple
            );
        }
    }
}
