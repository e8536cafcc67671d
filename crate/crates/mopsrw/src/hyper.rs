//! Generalized hypergeometric machinery: terminating pFq series over the
//! rationals, the Gauss 2F1 in floating point, the weight system of the
//! tuple, cube-root variables, and the algebraic limit function F.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{
    fmt_rat, nonpositive_integer_value, pochhammer, rat_to_f64, Rat,
};
use crate::tuple::Tuple;
use num::complex::Complex64;
use num::traits::{One, ToPrimitive, Zero};

/// Terminating pFq as an exact polynomial in its argument. Termination index
/// is the least N among nonpositive-integer upper parameters; a lower
/// parameter whose Pochhammer vanishes before termination is a pole.
pub fn pfq_terminating(top: &[Rat], bottom: &[Rat]) -> Result<Poly> {
    let n = top
        .iter()
        .filter_map(nonpositive_integer_value)
        .min()
        .ok_or_else(|| {
            Error::Domain("pFq needs a nonpositive integer upper parameter".into())
        })?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = Rat::one();
    for k in 0..=n {
        coeffs.push(term.clone());
        if k == n {
            break;
        }
        let kq = Rat::from_integer(k.into());
        let mut num = Rat::one();
        for t in top {
            num *= t + &kq;
        }
        if num.is_zero() {
            break; // an upper parameter terminated the series early
        }
        let mut den = Rat::from_integer((k + 1).into());
        for b in bottom {
            let f = b + &kq;
            if f.is_zero() {
                return Err(Error::Pole(format!(
                    "lower parameter {} hits a pole at term {}",
                    fmt_rat(b),
                    k + 1
                )));
            }
            den *= f;
        }
        term = term * num / den;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Gauss 2F1 for z < 1 by direct summation. Negative arguments are routed
/// through the Pfaff transformation, which maps z < 0 into (0,1). Stops once
/// the term drops below 1e-17 of the partial sum; errors after 10^6 terms.
pub fn gauss2f1_float(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<f64> {
    if z < 0.0 {
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-alpha) * gauss2f1_float(alpha, gamma - beta, gamma, w)?);
    }
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!("2F1 series needs z < 1, got z = {z}")));
    }
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..1_000_000u64 {
        let kf = k as f64;
        let denom_factor = gamma + kf;
        let num = (alpha + kf) * (beta + kf);
        if num == 0.0 {
            return Ok(sum); // terminating numerator
        }
        if denom_factor == 0.0 {
            return Err(Error::Pole(format!(
                "2F1 lower parameter {gamma} hits a pole at term {}",
                k + 1
            )));
        }
        term *= num * z / (denom_factor * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "2F1({alpha},{beta};{gamma};{z}) did not converge in 1e6 terms"
    )))
}

/// Exact partial sum of 2F1 with rational parameters and argument: the first
/// `terms` terms of the Gauss series. Terminates early when a numerator
/// parameter hits a nonpositive integer; errors if the lower parameter does.
pub fn gauss2f1_exact(alpha: &Rat, beta: &Rat, gamma: &Rat, z: &Rat, terms: usize) -> Result<Rat> {
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for k in 0..terms {
        let kr = usize_to_rat(k);
        let num = (alpha + &kr) * (beta + &kr);
        if num.is_zero() {
            return Ok(sum);
        }
        let den_factor = gamma + &kr;
        if den_factor.is_zero() {
            return Err(Error::Pole(format!(
                "2F1 lower parameter {gamma} hits a pole at term {}",
                k + 1
            )));
        }
        term = term * num * z / (den_factor * usize_to_rat(k + 1));
        sum += &term;
    }
    Ok(sum)
}

/// Residuals of the two ratio limits against the characteristic cubics of the
/// four-term recurrence at x > 1: r_+(x) against (1 + kappa t)^3 = x t (linear
/// forms) and -kappa/F(x) against (s + kappa)^3 = x s^2 (polynomials). The two
/// cubics are reciprocal to one another, pairing each forward limit with a
/// backward one.
pub fn characteristic_residuals(x: f64) -> Result<(f64, f64)> {
    let kappa = 4.0 / 27.0;
    let t = r_plus(x)?;
    let s = -kappa / f_ratio(x)?;
    let q_side = ((1.0 + kappa * t).powi(3) - x * t).abs();
    let b_side = ((s + kappa).powi(3) - x * s * s).abs();
    Ok((q_side, b_side))
}

/// Natural log of the gamma function for positive arguments (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let z = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// First weight against Lebesgue measure.
    W1,
    /// Second weight against Lebesgue measure.
    W2,
    /// First weight against the measure mu.
    SmallW1,
    /// Second weight against the measure mu.
    SmallW2,
    /// Density of mu with respect to Lebesgue measure.
    MuDensity,
}

impl WeightKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "W1" => Ok(WeightKind::W1),
            "W2" => Ok(WeightKind::W2),
            "w1" => Ok(WeightKind::SmallW1),
            "w2" => Ok(WeightKind::SmallW2),
            "mu" => Ok(WeightKind::MuDensity),
            _ => Err(Error::Parse(format!("unknown weight kind {s:?}"))),
        }
    }
}

/// Evaluates a member of the weight system. The full weights and the density
/// of mu live on (0,1]; the small weights are hypergeometric functions of
/// 1 - x and extend to every x > 0. At x = 1 the small weights take the
/// exact values w1 = 1 and w2 = c/b.
pub fn weight_eval(t: &Tuple, kind: WeightKind, x: f64) -> Result<f64> {
    let small = matches!(kind, WeightKind::SmallW1 | WeightKind::SmallW2);
    if !(x > 0.0 && (small || x <= 1.0)) {
        return Err(Error::Domain(format!("weight domain violated at x = {x}")));
    }
    let a = rat_to_f64(&t.a);
    let b = rat_to_f64(&t.b);
    let c = rat_to_f64(&t.c);
    let d = rat_to_f64(&t.d);
    let delta = rat_to_f64(&t.delta());
    let small_w1 = |x: f64| -> Result<f64> {
        if x == 1.0 {
            Ok(1.0)
        } else {
            gauss2f1_float(c - b, d - b, delta, 1.0 - x)
        }
    };
    let small_w2 = |x: f64| -> Result<f64> {
        if x == 1.0 {
            Ok(c / b)
        } else {
            Ok(c / b * gauss2f1_float(c - b, d - b - 1.0, delta, 1.0 - x)?)
        }
    };
    let mu = |x: f64| -> Result<f64> {
        let lg = ln_gamma(c)? + ln_gamma(d)? - ln_gamma(a)? - ln_gamma(b)? - ln_gamma(delta)?;
        Ok(lg.exp() * x.powf(a - 1.0) * (1.0 - x).powf(delta - 1.0))
    };
    match kind {
        WeightKind::SmallW1 => small_w1(x),
        WeightKind::SmallW2 => small_w2(x),
        WeightKind::MuDensity => mu(x),
        WeightKind::W1 => Ok(mu(x)? * small_w1(x)?),
        WeightKind::W2 => Ok(mu(x)? * small_w2(x)?),
    }
}

/// theta_pm(x) = cbrt(1 +- sqrt(1-x)) for x in [0,1].
pub fn theta_pm(x: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("theta_pm needs x in [0,1], got {x}")));
    }
    let s = (1.0 - x).sqrt();
    Ok(((1.0 + s).cbrt(), (1.0 - s).cbrt()))
}

/// One closed-form weight written in the cube-root variables:
/// coef * sqrt(3)/pi * x^(x_pow_thirds/3) * (theta_+^p + sign * theta_-^p)
/// optionally divided by sqrt(1-x).
#[derive(Debug, Clone)]
pub struct ThetaForm {
    pub coef: Rat,
    pub x_pow_thirds: i32,
    pub theta_pow: u32,
    pub theta_sign: i64,
    pub inv_sqrt_one_minus_x: bool,
}

impl ThetaForm {
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (tp, tm) = theta_pm(x)?;
        let p = self.theta_pow as i32;
        let combo = tp.powi(p) + self.theta_sign as f64 * tm.powi(p);
        let mut v = rat_to_f64(&self.coef) * 3.0f64.sqrt() / std::f64::consts::PI
            * x.powf(self.x_pow_thirds as f64 / 3.0)
            * combo;
        if self.inv_sqrt_one_minus_x {
            v /= (1.0 - x).sqrt();
        }
        Ok(v)
    }
}

/// The algebraic function F with xF = kappa (F-1)^3, real-valued for x > 1.
pub fn f_ratio(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("F(x) is evaluated for x > 1, got {x}")));
    }
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let s = (x - 1.0).sqrt();
    // principal square root of 1-x for x > 1 is i sqrt(x-1)
    let z1 = Complex64::new(-1.0, s); // sqrt(1-x) - 1
    let z2 = Complex64::new(-1.0, -s); // -sqrt(1-x) - 1
    let third = Complex64::new(1.0 / 3.0, 0.0);
    let sum = omega * omega * z1.powc(third) + omega * z2.powc(third);
    debug_assert!(sum.im.abs() < 1e-9);
    Ok(1.0 - 1.5 * x.cbrt() * sum.re)
}

/// Limit of q^(n+1)(x)/q^(n)(x) for x > 1:
/// r_+(x) = (F - 3 + sqrt((F-3)^2 - 4/F)) / (2 kappa).
pub fn r_plus(x: f64) -> Result<f64> {
    let f = f_ratio(x)?;
    let radicand = (f - 3.0) * (f - 3.0) - 4.0 / f;
    if radicand < 0.0 {
        return Err(Error::Branch(format!(
            "negative radicand {radicand} in r_plus({x})"
        )));
    }
    let kappa = 4.0 / 27.0;
    Ok((f - 3.0 + radicand.sqrt()) / (2.0 * kappa))
}

/// Linear form q^(n)(x) from the derivative expansion of the Rodrigues
/// representation; used as an independent floating-point route.
pub fn rodrigues_q_float(t: &Tuple, n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "rodrigues route needs x in (0,1), got {x}"
        )));
    }
    let delta = t.delta();
    let half = n / 2;
    let (pref, cb_shift, db_shift, gamma_base): (Rat, Rat, Rat, Rat) = if n % 2 == 0 {
        let m = half;
        let pref = pochhammer(&t.c, 3 * m) * pochhammer(&t.d, 3 * m)
            / (crate::rational::factorial(2 * m)
                * pochhammer(&t.a, 2 * m)
                * pochhammer(&t.b, 2 * m)
                * pochhammer(&delta, 2 * m));
        (
            pref,
            &t.c - &t.b + Rat::from_integer(m.into()),
            &t.d - &t.b + Rat::from_integer(m.into()),
            &delta + Rat::from_integer((2 * m).into()),
        )
    } else {
        let m = half;
        let pref = pochhammer(&t.c, 3 * m + 2) * pochhammer(&t.d, 3 * m + 1)
            / (crate::rational::factorial(2 * m + 1)
                * pochhammer(&t.a, 2 * m + 1)
                * pochhammer(&t.b, 2 * m + 1)
                * pochhammer(&delta, 2 * m + 1));
        (
            pref,
            &t.c - &t.b + Rat::from_integer((m + 1).into()),
            &t.d - &t.b + Rat::from_integer(m.into()),
            &delta + Rat::from_integer(n.into()),
        )
    };
    let mut total = 0.0f64;
    for k in 0..=n {
        // m-th derivative of the 2F1 factor, m = n - k
        let m = n - k;
        let poch_ratio = pochhammer(&cb_shift, m) * pochhammer(&db_shift, m)
            / pochhammer(&gamma_base, m);
        let alpha = rat_to_f64(&cb_shift) + m as f64;
        let beta = rat_to_f64(&db_shift) + m as f64;
        let gamma = rat_to_f64(&gamma_base) + m as f64;
        let f21 = gauss2f1_float(alpha, beta, gamma, 1.0 - x)?;
        for l in 0..=k {
            let sign = if (l + k) % 2 == 0 { 1.0 } else { -1.0 };
            let comb = crate::rational::binomial(n, k)? * crate::rational::binomial(k, l)?;
            let an = pochhammer(
                &(&t.a + Rat::from_integer(((n - k + l) as i64).into())),
                k - l,
            );
            let dn = pochhammer(
                &(&delta + Rat::from_integer(((n - l) as i64).into())),
                l,
            );
            let rational_part = rat_to_f64(&(comb * an * dn * &poch_ratio));
            total += sign
                * rational_part
                * x.powi((n - k + l) as i32)
                * (1.0 - x).powi((n - l) as i32)
                * f21;
        }
    }
    Ok(rat_to_f64(&pref) * total)
}

/// Exact evaluation of a terminating pFq polynomial at a rational point.
pub fn pfq_at(top: &[Rat], bottom: &[Rat], x: &Rat) -> Result<Rat> {
    Ok(pfq_terminating(top, bottom)?.eval(x))
}

pub fn usize_to_rat(n: usize) -> Rat {
    Rat::from_integer(n.to_i64().expect("index fits in i64").into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn terminating_pfq_basics() {
        // 1F0[-3;;x] = (1-x)^3
        let p = pfq_terminating(&[rat_int(-3)], &[]).unwrap();
        assert_eq!(p.coeff(0), rat_int(1));
        assert_eq!(p.coeff(1), rat_int(-3));
        assert_eq!(p.coeff(2), rat_int(3));
        assert_eq!(p.coeff(3), rat_int(-1));
        // no terminating parameter
        assert!(pfq_terminating(&[rat(1, 2)], &[rat_int(1)]).is_err());
        // bottom pole before termination: (-1) in the denominator at k=2
        assert!(pfq_terminating(&[rat_int(-4), rat(1, 2)], &[rat_int(-1)]).is_err());
        // zero upper parameter: series is identically 1
        let one = pfq_terminating(&[rat_int(0), rat(1, 2), rat_int(0)], &[rat(1, 3)]).unwrap();
        assert_eq!(one, Poly::one());
    }

    #[test]
    fn terminating_pfq_matches_binomial_identity() {
        // 2F1[-n, b; b; x] = (1-x)^n for any b not hit by the pole
        let p = pfq_terminating(&[rat_int(-5), rat(7, 3)], &[rat(7, 3)]).unwrap();
        for k in 0..=5usize {
            let expect = crate::rational::binomial(5, k).unwrap()
                * if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            assert_eq!(p.coeff(k), expect);
        }
    }

    #[test]
    fn gauss_series_known_value() {
        // 2F1[1,1;2;z] = -ln(1-z)/z
        let z = 0.4;
        let v = gauss2f1_float(1.0, 1.0, 2.0, z).unwrap();
        assert!((v - (-(1.0f64 - z).ln() / z)).abs() < 1e-14);
        assert!(gauss2f1_float(0.5, 0.5, 1.0, 1.2).is_err());
        // terminating numerator ends the series: 1 - 1.08 + 0.324
        let t = gauss2f1_float(-2.0, 3.0, 5.0, 0.9).unwrap();
        assert!((t - 0.244).abs() < 1e-12);
    }

    #[test]
    fn lanczos_gamma_values() {
        assert!((ln_gamma(0.5).unwrap() - std::f64::consts::PI.sqrt().ln()).abs() < 1e-12);
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-13);
        assert!((ln_gamma(5.0).unwrap() - 24.0f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(7.5).unwrap() - 1871.254_305_797_788f64.ln()).abs() < 1e-11);
        assert!(ln_gamma(0.0).is_err());
    }

    #[test]
    fn weight_values_at_unity() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        assert_eq!(weight_eval(&t, WeightKind::SmallW1, 1.0).unwrap(), 1.0);
        assert!((weight_eval(&t, WeightKind::SmallW2, 1.0).unwrap() - 0.75).abs() < 1e-15);
        assert!(weight_eval(&t, WeightKind::W1, 0.0).is_err());
        assert!(weight_eval(&t, WeightKind::W1, 1.5).is_err());
    }

    #[test]
    fn theta_identities() {
        for &x in &[0.05, 0.3, 0.7, 1.0] {
            let (tp, tm) = theta_pm(x).unwrap();
            // theta_+^3 + theta_-^3 = 2 and theta_+ theta_- = x^{1/3}
            assert!((tp.powi(3) + tm.powi(3) - 2.0).abs() < 1e-12);
            assert!((tp * tm - x.cbrt()).abs() < 1e-12);
        }
        assert!(theta_pm(-0.1).is_err());
    }

    #[test]
    fn f_ratio_satisfies_cubic() {
        for i in 1..=40 {
            let x = 1.0 + 0.1 * i as f64;
            let f = f_ratio(x).unwrap();
            let residual = x * f - 4.0 / 27.0 * (f - 1.0).powi(3);
            assert!(residual.abs() < 1e-10, "x={x} residual={residual}");
        }
        // limit value at 1+ is -1/2
        let f = f_ratio(1.0 + 1e-9).unwrap();
        assert!((f + 0.5).abs() < 1e-3);
        assert!(f_ratio(0.9).is_err());
    }

    #[test]
    fn ratio_limits_are_characteristic_roots() {
        for i in 1..=40 {
            let x = 1.0 + 0.1 * i as f64;
            let (q_side, b_side) = characteristic_residuals(x).unwrap();
            assert!(q_side < 1e-10, "x={x} q-side residual={q_side}");
            assert!(b_side < 1e-10, "x={x} b-side residual={b_side}");
        }
    }

    #[test]
    fn exact_gauss_series_matches_float() {
        let al = rat(1, 3);
        let be = rat(5, 2);
        let ga = rat(7, 4);
        let z = rat(1, 2);
        let exact = gauss2f1_exact(&al, &be, &ga, &z, 200).unwrap();
        let float = gauss2f1_float(1.0 / 3.0, 2.5, 1.75, 0.5).unwrap();
        assert!((rat_to_f64(&exact) - float).abs() < 1e-12);
        // terminating numerator parameter short-circuits the sum
        let term = gauss2f1_exact(&rat(-2, 1), &be, &ga, &z, 500).unwrap();
        let poly = pfq_terminating(&[rat(-2, 1), be.clone()], &[ga.clone()]).unwrap();
        assert_eq!(term, poly.eval(&z));
    }

    #[test]
    fn r_plus_limit_at_unity() {
        let r = r_plus(1.0 + 1e-9).unwrap();
        assert!((r - 27.0 / 8.0).abs() < 1e-3);
    }
}
