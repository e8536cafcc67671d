//! Hypergeometric parameter tuples (a,b,c,d), the validity regions, and the
//! two moment sequences of the weight pair.

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, is_nonpositive_integer, parse_rat, pochhammer, rat_int, Rat};
use num::traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Tuple {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Tuple { a, b, c, d }
    }

    pub fn from_i64(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Self {
        Tuple {
            a: Rat::new(a.0.into(), a.1.into()),
            b: Rat::new(b.0.into(), b.1.into()),
            c: Rat::new(c.0.into(), c.1.into()),
            d: Rat::new(d.0.into(), d.1.into()),
        }
    }

    /// Parses "a,b,c,d" with each entry `p/q` or integer.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "tuple {s:?} must have exactly four comma-separated entries"
            )));
        }
        Ok(Tuple {
            a: parse_rat(parts[0])?,
            b: parse_rat(parts[1])?,
            c: parse_rat(parts[2])?,
            d: parse_rat(parts[3])?,
        })
    }

    /// delta = c + d - a - b.
    pub fn delta(&self) -> Rat {
        &self.c + &self.d - &self.a - &self.b
    }

    /// The companion tuple with the roles of a and b exchanged.
    pub fn gauge_partner(&self) -> Tuple {
        Tuple {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Region where every H_n is nonzero, so the moment matrix factorizes:
    /// a, b, delta > 0 and d-a, d-b, c+1-a, c-b not nonpositive integers.
    pub fn perfectness_ok(&self) -> bool {
        self.a.is_positive()
            && self.b.is_positive()
            && self.delta().is_positive()
            && !is_nonpositive_integer(&(&self.d - &self.a))
            && !is_nonpositive_integer(&(&self.d - &self.b))
            && !is_nonpositive_integer(&(&self.c + rat_int(1) - &self.a))
            && !is_nonpositive_integer(&(&self.c - &self.b))
    }

    pub fn require_perfect(&self) -> Result<()> {
        if self.perfectness_ok() {
            Ok(())
        } else {
            Err(Error::Region(format!(
                "{self} violates a,b,delta>0 and d-a,d-b,c+1-a,c-b not in -N0"
            )))
        }
    }

    /// Region where the Jacobi matrix entries are nonnegative:
    /// a, b > 0, d > max(a,b), c >= a and c+1 >= b.
    pub fn nonnegativity_ok(&self) -> bool {
        self.a.is_positive()
            && self.b.is_positive()
            && self.d > self.a
            && self.d > self.b
            && self.c >= self.a
            && &self.c + rat_int(1) >= self.b
    }

    /// Moments of the first weight: rho_{1,n} = (a)_n (b)_n / ((c)_n (d)_n).
    pub fn rho1(&self, n: usize) -> Rat {
        pochhammer(&self.a, n) * pochhammer(&self.b, n)
            / (pochhammer(&self.c, n) * pochhammer(&self.d, n))
    }

    /// Moments of the second weight: rho_{2,n} = (a)_n (b+1)_n / ((c+1)_n (d)_n).
    pub fn rho2(&self, n: usize) -> Rat {
        pochhammer(&self.a, n) * pochhammer(&(&self.b + rat_int(1)), n)
            / (pochhammer(&(&self.c + rat_int(1)), n) * pochhammer(&self.d, n))
    }

    /// Interlaced moment matrix: g[i][2k] = rho1(i+k), g[i][2k+1] = rho2(i+k).
    pub fn moment_matrix(&self, n: usize) -> Result<Vec<Vec<Rat>>> {
        self.require_perfect()?;
        let mut g = vec![vec![Rat::zero(); n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            for (col, slot) in row.iter_mut().enumerate() {
                let k = col / 2;
                *slot = if col % 2 == 0 {
                    self.rho1(i + k)
                } else {
                    self.rho2(i + k)
                };
            }
        }
        Ok(g)
    }

    /// Moment against weight index 1 or 2.
    pub fn rho(&self, weight: u8, n: usize) -> Rat {
        match weight {
            1 => self.rho1(n),
            2 => self.rho2(n),
            _ => panic!("weight index must be 1 or 2"),
        }
    }

    /// Value of w2 at x = 1 (w1(1) = 1).
    pub fn w2_at_unity(&self) -> Rat {
        &self.c / &self.b
    }

    pub fn is_recurrent(&self) -> Result<bool> {
        let delta = self.delta();
        if !delta.is_positive() {
            return Err(Error::Hypothesis(format!(
                "classification needs delta > 0, got delta = {}",
                fmt_rat(&delta)
            )));
        }
        Ok(delta <= Rat::one())
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            fmt_rat(&self.a),
            fmt_rat(&self.b),
            fmt_rat(&self.c),
            fmt_rat(&self.d)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parse_and_display() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        assert_eq!(t.a, rat(1, 3));
        assert_eq!(t.d, rat_int(1));
        assert_eq!(t.to_string(), "(1/3,2/3,1/2,1)");
        assert!(Tuple::parse("1,2,3").is_err());
        assert!(Tuple::parse("1,2,3,x").is_err());
    }

    #[test]
    fn regions() {
        let stochastic = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        assert!(stochastic.perfectness_ok());
        assert!(stochastic.nonnegativity_ok());
        assert_eq!(stochastic.delta(), rat(1, 2));

        // c - b = -1 is a nonpositive integer: not perfect.
        let bad = Tuple::parse("1,2,1,5/2").unwrap();
        assert!(!bad.perfectness_ok());
        assert!(bad.moment_matrix(3).is_err());

        let pineiro = Tuple::parse("1/2,1,1/2,2").unwrap();
        assert!(pineiro.perfectness_ok());
    }

    #[test]
    fn moment_values() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        assert_eq!(t.rho1(0), rat_int(1));
        assert_eq!(t.rho1(1), rat(4, 9)); // (1/3)(2/3)/((1/2)(1))
        assert_eq!(t.rho2(0), rat_int(1));
        let g = t.moment_matrix(4).unwrap();
        assert_eq!(g[2][2], t.rho1(3));
        assert_eq!(g[1][3], t.rho2(2));
    }

    #[test]
    fn recurrence_classification() {
        assert!(Tuple::parse("1/3,2/3,1/2,1").unwrap().is_recurrent().unwrap());
        assert!(!Tuple::parse("1/3,2/3,1,3/2").unwrap().is_recurrent().unwrap());
        // delta = 1 boundary counts as recurrent
        assert!(Tuple::parse("1,1,3/2,3/2").unwrap().is_recurrent().unwrap());
        assert!(Tuple::parse("2,2,1,1").unwrap().is_recurrent().is_err());
    }
}
