//! Exact rational scalars and the handful of combinatorial primitives the
//! rest of the crate is built on. `Rat` is always kept in lowest terms.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// `p/q` as an exact rational. Panics on `q == 0`; use only with literal input.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// kappa = 4/27, the step-line recurrence constant.
pub fn kappa() -> Rat {
    rat(4, 27)
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let q: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Canonical form: `p/q` with positive `q`, or just `p` when `q == 1`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of roundings for operands outside f64 range.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY * x.numer().signum().to_f64().unwrap());
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// Rising factorial with integer index of either sign:
/// (x)_{-n} = 1 / ((x-n)_n). Errors when the inverse hits a zero factor.
pub fn pochhammer_int(x: &Rat, n: i64) -> Result<Rat> {
    if n >= 0 {
        return Ok(pochhammer(x, n as usize));
    }
    let m = (-n) as usize;
    let shifted = x - rat_int(m as i64);
    let denom = pochhammer(&shifted, m);
    if denom.is_zero() {
        return Err(Error::Pole(format!(
            "pochhammer ({})_{} has a zero factor",
            fmt_rat(x),
            n
        )));
    }
    Ok(denom.recip())
}

pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient with the convention that k must not exceed n.
pub fn binomial(n: usize, k: usize) -> Result<Rat> {
    if k > n {
        return Err(Error::Domain(format!("binomial({n},{k}) requires k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(Rat::from_integer(acc))
}

/// Trinomial coefficient n! / (k1! k2! k3!). The parts must sum to n.
pub fn trinomial(n: usize, k1: usize, k2: usize, k3: usize) -> Result<Rat> {
    if k1 + k2 + k3 != n {
        return Err(Error::Domain(format!(
            "trinomial({n};{k1},{k2},{k3}) requires the parts to sum to n"
        )));
    }
    Ok(binomial(n, k1)? * binomial(n - k1, k2)?)
}

/// True when x is an integer <= 0 (the Pochhammer termination set).
pub fn is_nonpositive_integer(x: &Rat) -> bool {
    x.denom().is_one() && !x.numer().is_positive()
}

/// For x = -N with N a nonnegative integer, returns N.
pub fn nonpositive_integer_value(x: &Rat) -> Option<usize> {
    if is_nonpositive_integer(x) {
        (-x.numer()).to_usize()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_small_values() {
        assert_eq!(pochhammer(&rat(1, 3), 2), rat(4, 9));
        assert_eq!(pochhammer(&rat_int(-2), 4), Rat::zero());
        assert_eq!(pochhammer(&rat_int(1), 5), rat_int(120));
        assert_eq!(pochhammer(&rat(1, 2), 0), Rat::one());
    }

    #[test]
    fn pochhammer_negative_index_inverts() {
        // (x)_{-1} = 1/(x-1)
        let x = rat(7, 2);
        assert_eq!(pochhammer_int(&x, -1).unwrap(), rat(2, 5));
        // (x)_{-2} (x-2)_2 = 1
        let v = pochhammer_int(&x, -2).unwrap();
        assert_eq!(v * pochhammer(&rat(3, 2), 2), Rat::one());
        assert!(pochhammer_int(&rat_int(1), -1).is_err());
    }

    #[test]
    fn binomial_and_trinomial() {
        assert_eq!(binomial(5, 2).unwrap(), rat_int(10));
        assert_eq!(binomial(0, 0).unwrap(), Rat::one());
        assert!(binomial(3, 4).is_err());
        assert_eq!(trinomial(5, 2, 2, 1).unwrap(), rat_int(30));
        assert!(trinomial(5, 2, 2, 2).is_err());
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    proptest! {
        #[test]
        fn pochhammer_splits_additively(p in -20i64..20, q in 1i64..8, n in 0usize..8, m in 0usize..8) {
            let x = rat(p, q);
            let lhs = pochhammer(&x, n + m);
            let rhs = pochhammer(&x, n) * pochhammer(&(x.clone() + rat_int(n as i64)), m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn binomial_pascal(n in 1usize..30, k in 1usize..30) {
            prop_assume!(k < n);
            let lhs = binomial(n, k).unwrap();
            let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
