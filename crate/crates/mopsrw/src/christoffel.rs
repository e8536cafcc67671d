//! Christoffel transformations of the weight pair, acting on moment tables,
//! together with the gauge relation tying a tuple to its a<->b partner and
//! the exact transformation chains connecting the uniform tuples.

use crate::error::{Error, Result};
use crate::gaussborel::{Factorization, GaussBorel};
use crate::jacobi;
use crate::poly::Poly;
use crate::rational::{fmt_rat, kappa, rat, Rat};
use crate::tuple::Tuple;
use num::traits::{One, Zero};

/// Moment pair (rho_{1,n}, rho_{2,n}) of a weight system, detached from any
/// parameter tuple so that transformed systems can be refactorized directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub rho1: Vec<Rat>,
    pub rho2: Vec<Rat>,
}

impl MomentTable {
    pub fn from_tuple(t: &Tuple, len: usize) -> Self {
        MomentTable {
            rho1: (0..len).map(|n| t.rho1(n)).collect(),
            rho2: (0..len).map(|n| t.rho2(n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rho1.len().min(self.rho2.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rescales both sequences to rho_{.,0} = 1.
    pub fn normalized(&self) -> Result<MomentTable> {
        let (c1, c2) = match (self.rho1.first(), self.rho2.first()) {
            (Some(c1), Some(c2)) if !c1.is_zero() && !c2.is_zero() => (c1.clone(), c2.clone()),
            _ => {
                return Err(Error::Domain(
                    "cannot normalize a moment sequence with zero mass".into(),
                ))
            }
        };
        Ok(MomentTable {
            rho1: self.rho1.iter().map(|v| v / &c1).collect(),
            rho2: self.rho2.iter().map(|v| v / &c2).collect(),
        })
    }

    /// Weight map (w1, w2) -> (w2, alpha x w1): the new moments are
    /// rho'_{1,n} = rho_{2,n} and rho'_{2,n} = alpha rho_{1,n+1}. The table
    /// shortens by one order.
    pub fn permuting(&self, alpha: &Rat) -> MomentTable {
        let len = self.len().saturating_sub(1);
        MomentTable {
            rho1: self.rho2[..len].to_vec(),
            rho2: self.rho1[1..len + 1].iter().map(|v| v * alpha).collect(),
        }
    }

    /// Weight map (w1, w2) -> (alpha1 x w1, alpha2 x w2):
    /// rho'_{a,n} = alpha_a rho_{a,n+1}.
    pub fn basic(&self, alpha1: &Rat, alpha2: &Rat) -> MomentTable {
        let len = self.len().saturating_sub(1);
        MomentTable {
            rho1: self.rho1[1..len + 1].iter().map(|v| v * alpha1).collect(),
            rho2: self.rho2[1..len + 1].iter().map(|v| v * alpha2).collect(),
        }
    }

    /// Gauss-Borel factorization of the interlaced moment matrix built from
    /// the table. An order n block reads moments up to index n-1+(n-1)/2.
    pub fn factorization(&self, n: usize) -> Result<Factorization> {
        if n > 0 {
            let need = (n - 1) + (n - 1) / 2;
            if need >= self.len() {
                return Err(Error::Window(format!(
                    "table holds {} moments, an order {n} factorization needs {}",
                    self.len(),
                    need + 1
                )));
            }
        }
        Factorization::from_entries(n, &mut |i, j| {
            let k = j / 2;
            if j % 2 == 0 {
                self.rho1[i + k].clone()
            } else {
                self.rho2[i + k].clone()
            }
        })
    }

    /// Monic type II polynomials of the system. These are invariant under
    /// separate rescalings of the two weights, so they compare transformed
    /// systems without fixing a normalization.
    pub fn monic_b(&self, count: usize) -> Result<Vec<Poly>> {
        let fac = self.factorization(count)?;
        Ok((0..count).map(|m| fac.b_poly(m)).collect())
    }

    /// Both sequences agree with `other` through order upto-1.
    pub fn agrees_with(&self, other: &MomentTable, upto: usize) -> bool {
        if self.len() < upto || other.len() < upto {
            return false;
        }
        (0..upto).all(|n| self.rho1[n] == other.rho1[n] && self.rho2[n] == other.rho2[n])
    }
}

/// Coefficients of rho_{2,n} = alpha rho_{1,n} + beta rhohat_{2,n}, where the
/// hat sequence belongs to the a<->b partner tuple. Always comes with
/// alpha + beta = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeRelation {
    pub alpha: Rat,
    pub beta: Rat,
}

/// Solves the 2x2 system cut from orders 0 and 1 and verifies the relation
/// exactly through order max. Singular exactly when a = c, where the second
/// weight pair collapses onto a single ratio.
pub fn gauge_solve(t: &Tuple, max: usize) -> Result<GaugeRelation> {
    let partner = t.gauge_partner();
    let r1 = [t.rho1(0), t.rho1(1)];
    let r2 = [t.rho2(0), t.rho2(1)];
    let rh = [partner.rho2(0), partner.rho2(1)];
    let det = &r1[0] * &rh[1] - &r1[1] * &rh[0];
    if det.is_zero() {
        return Err(Error::DegenerateGauge(format!(
            "moment system of {t} and its partner is singular"
        )));
    }
    let alpha = (&r2[0] * &rh[1] - &r2[1] * &rh[0]) / &det;
    let beta = (&r1[0] * &r2[1] - &r1[1] * &r2[0]) / &det;
    for n in 0..=max {
        if &alpha * t.rho1(n) + &beta * partner.rho2(n) != t.rho2(n) {
            return Err(Error::Verify(format!(
                "gauge relation for {t} breaks at order {n}"
            )));
        }
    }
    Ok(GaugeRelation { alpha, beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Stochastic,
    SemiStochastic,
}

impl ChainKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "stochastic" => Ok(ChainKind::Stochastic),
            "semistochastic" => Ok(ChainKind::SemiStochastic),
            _ => Err(Error::Parse(format!("unknown chain kind {s:?}"))),
        }
    }
}

/// One permuting step: the moments of `from`, pushed through the weight map
/// (w1, w2) -> (w2, alpha x w1), land exactly on the moments of `to`.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub from: Tuple,
    pub alpha: Rat,
    pub to: Tuple,
}

/// The two-step permuting chains inside each uniform class. The scale of
/// every step is 1/rho_{1,1} of its source.
pub fn permuting_chain(kind: ChainKind) -> Vec<ChainStep> {
    let (tuples, alphas) = match kind {
        ChainKind::Stochastic => (
            [
                Tuple::from_i64((2, 3), (1, 3), (1, 2), (1, 1)),
                Tuple::from_i64((4, 3), (2, 3), (1, 1), (3, 2)),
                Tuple::from_i64((5, 3), (4, 3), (3, 2), (2, 1)),
            ],
            [rat(9, 4), rat(27, 16)],
        ),
        ChainKind::SemiStochastic => (
            [
                Tuple::from_i64((2, 3), (1, 3), (1, 1), (3, 2)),
                Tuple::from_i64((4, 3), (2, 3), (3, 2), (2, 1)),
                Tuple::from_i64((5, 3), (4, 3), (2, 1), (5, 2)),
            ],
            [rat(27, 4), rat(27, 8)],
        ),
    };
    vec![
        ChainStep {
            from: tuples[0].clone(),
            alpha: alphas[0].clone(),
            to: tuples[1].clone(),
        },
        ChainStep {
            from: tuples[1].clone(),
            alpha: alphas[1].clone(),
            to: tuples[2].clone(),
        },
    ]
}

/// One basic step: the moments of `from` under (w1, w2) -> (a1 x w1, a2 x w2)
/// land exactly on the moments of `to`. The scales are the reciprocal first
/// moments of the source.
#[derive(Debug, Clone)]
pub struct BasicStep {
    pub from: Tuple,
    pub alpha1: Rat,
    pub alpha2: Rat,
    pub to: Tuple,
}

/// The four basic transformations between uniform tuples. The first and third
/// are the squares of the two permuting chains; the other two reach the
/// remaining gauge-class members directly from the partner source whose
/// second moments they actually consume.
pub fn basic_steps() -> Vec<BasicStep> {
    vec![
        BasicStep {
            from: Tuple::from_i64((2, 3), (1, 3), (1, 2), (1, 1)),
            alpha1: rat(9, 4),
            alpha2: rat(27, 16),
            to: Tuple::from_i64((5, 3), (4, 3), (3, 2), (2, 1)),
        },
        BasicStep {
            from: Tuple::from_i64((1, 3), (2, 3), (1, 2), (1, 1)),
            alpha1: rat(9, 4),
            alpha2: rat(27, 10),
            to: Tuple::from_i64((4, 3), (5, 3), (3, 2), (2, 1)),
        },
        BasicStep {
            from: Tuple::from_i64((2, 3), (1, 3), (1, 1), (3, 2)),
            alpha1: rat(27, 4),
            alpha2: rat(27, 8),
            to: Tuple::from_i64((5, 3), (4, 3), (2, 1), (5, 2)),
        },
        BasicStep {
            from: Tuple::from_i64((1, 3), (2, 3), (1, 1), (3, 2)),
            alpha1: rat(27, 4),
            alpha2: rat(27, 5),
            to: Tuple::from_i64((4, 3), (5, 3), (2, 1), (5, 2)),
        },
    ]
}

/// Transformed moments coincide with the target tuple's moments for the
/// first `terms` orders.
pub fn chain_step_check(step: &ChainStep, terms: usize) -> Result<()> {
    let source = MomentTable::from_tuple(&step.from, terms + 1);
    let moved = source.permuting(&step.alpha).normalized()?;
    let target = MomentTable::from_tuple(&step.to, terms);
    if !moved.agrees_with(&target, terms) {
        return Err(Error::Verify(format!(
            "permuting step {} -> {} misses the target moments",
            step.from, step.to
        )));
    }
    Ok(())
}

/// Same landing check for a basic step, plus equality of the monic type II
/// sequences computed on each side.
pub fn basic_step_check(step: &BasicStep, terms: usize) -> Result<()> {
    let source = MomentTable::from_tuple(&step.from, terms + 1);
    let moved = source.basic(&step.alpha1, &step.alpha2).normalized()?;
    let target = MomentTable::from_tuple(&step.to, terms);
    if !moved.agrees_with(&target, terms) {
        return Err(Error::Verify(format!(
            "basic step {} -> {} misses the target moments",
            step.from, step.to
        )));
    }
    let count = (2 * terms + 2) / 3;
    let b_moved = moved.monic_b(count)?;
    let b_target = target.monic_b(count)?;
    if b_moved != b_target {
        return Err(Error::Verify(format!(
            "basic step {} -> {} changes the type II sequence",
            step.from, step.to
        )));
    }
    Ok(())
}

/// Tuples whose dual constants follow A_1^{(n)}(0) = (-kappa)^{-n}.
pub fn a1_origin_geometric(t: &Tuple) -> bool {
    [
        Tuple::from_i64((2, 3), (1, 3), (1, 2), (1, 1)),
        Tuple::from_i64((4, 3), (2, 3), (1, 1), (3, 2)),
        Tuple::from_i64((2, 3), (1, 3), (1, 1), (3, 2)),
        Tuple::from_i64((4, 3), (2, 3), (3, 2), (2, 1)),
    ]
    .contains(t)
}

/// Sequence-level laws of the permuting transformation (w1, w2) -> (w2, x w1),
/// verified exactly against a fresh factorization of the transformed moments:
///
///   x Bbar^{(n)} = B^{(n+1)} + (A1^{(n-1)}(0)/A1^{(n)}(0) + beta_n) B^{(n)}
///                  - (A1^{(n+1)}(0)/A1^{(n)}(0)) gamma_n B^{(n-1)},
///   Hbar_n = -(A1^{(n+1)}(0)/A1^{(n)}(0)) H_{n+1},
///
/// and, when A_1^{(n)}(0) = (-kappa)^{-n} and the bands at index n take the
/// uniform values beta_n = 3 kappa, gamma_n = kappa^3, the reduced form
/// x Bbar^{(n)} = B^{(n+1)} + 2 kappa B^{(n)} + kappa^2 B^{(n-1)}.
/// (gamma_1 sits in the deviating zeroth column for the pair sharing the
/// (1/3,2/3,1/2,1) matrix, so its reduced form starts at n = 2.)
pub fn permuting_formula_check(t: &Tuple, max: usize) -> Result<()> {
    let gb = GaussBorel::new(t, max + 2)?;
    let a10: Vec<Rat> = (0..=max + 1).map(|m| gb.a1_poly(m).coeff(0)).collect();
    if let Some(m) = a10.iter().position(|v| v.is_zero()) {
        return Err(Error::Hypothesis(format!(
            "A1^({m})(0) vanishes for {t}; the permuting formulas divide by it"
        )));
    }
    let table = MomentTable::from_tuple(t, 2 * max + 6).permuting(&Rat::one());
    let fac = table.factorization(max + 1)?;
    let geometric = a1_origin_geometric(t);
    let k = kappa();
    for n in 1..=max {
        let mid = &a10[n - 1] / &a10[n] + jacobi::beta(t, n);
        let low = &a10[n + 1] / &a10[n] * jacobi::gamma(t, n);
        let rhs = &(&gb.b_poly(n + 1) + &gb.b_poly(n).scale(&mid)) - &gb.b_poly(n - 1).scale(&low);
        let quotient = rhs.div_x().ok_or_else(|| {
            Error::Verify(format!(
                "permuting right side for {t} keeps a constant term at n = {n}"
            ))
        })?;
        if quotient != fac.b_poly(n) {
            return Err(Error::Verify(format!(
                "permuting type II formula fails for {t} at n = {n}"
            )));
        }
        let uniform_here = mid == rat(2, 1) * &k && low == -(&k * &k);
        if geometric && uniform_here {
            let reduced = &(&gb.b_poly(n + 1) + &gb.b_poly(n).scale(&(rat(2, 1) * &k)))
                + &gb.b_poly(n - 1).scale(&(&k * &k));
            if reduced != fac.b_poly(n).shift_up() {
                return Err(Error::Verify(format!(
                    "reduced permuting formula fails for {t} at n = {n}"
                )));
            }
        } else if geometric && n >= 2 {
            return Err(Error::Verify(format!(
                "bands of {t} leave the uniform values at n = {n}"
            )));
        }
    }
    for n in 0..=max {
        let expect = -(&a10[n + 1] / &a10[n]) * gb.fac.h(n + 1);
        if fac.h(n) != &expect {
            return Err(Error::Verify(format!(
                "normalization transfer H_{n} fails for {t}"
            )));
        }
    }
    if geometric {
        let mut pw = Rat::one();
        for (m, v) in a10.iter().enumerate() {
            if *v != pw {
                return Err(Error::Verify(format!(
                    "A1^({m})(0) is {} instead of (-kappa)^(-{m}) for {t}",
                    fmt_rat(v)
                )));
            }
            pw /= -&k;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn t(s: &str) -> Tuple {
        Tuple::parse(s).unwrap()
    }

    #[test]
    fn gauge_relations_of_the_six_pairs() {
        let cases = [
            ("1/3,2/3,1/2,1", rat(3, 2), rat(-1, 2)),
            ("2/3,4/3,1,3/2", rat(3, 2), rat(-1, 2)),
            ("4/3,5/3,3/2,2", rat(9, 5), rat(-4, 5)),
            ("1/3,2/3,1,3/2", rat(3, 4), rat(1, 4)),
            ("2/3,4/3,3/2,2", rat(9, 10), rat(1, 10)),
            ("4/3,5/3,2,5/2", rat(3, 5), rat(2, 5)),
        ];
        for (s, alpha, beta) in cases {
            let g = gauge_solve(&t(s), 20).unwrap();
            assert_eq!(g.alpha, alpha, "tuple {s}");
            assert_eq!(g.beta, beta, "tuple {s}");
            assert_eq!(&g.alpha + &g.beta, Rat::one(), "tuple {s}");
        }
        // generic tuples satisfy the same two-weight relation
        let g = gauge_solve(&t("1,2,3,7/2"), 12).unwrap();
        assert_eq!(&g.alpha + &g.beta, Rat::one());
        // a = c degenerates the system
        assert!(matches!(
            gauge_solve(&t("1/2,1,1/2,2"), 4),
            Err(Error::DegenerateGauge(_))
        ));
    }

    #[test]
    fn permuting_chains_land_exactly() {
        for kind in [ChainKind::Stochastic, ChainKind::SemiStochastic] {
            for step in permuting_chain(kind) {
                chain_step_check(&step, 20).unwrap();
            }
        }
    }

    #[test]
    fn basic_steps_land_exactly() {
        for step in basic_steps() {
            basic_step_check(&step, 20).unwrap();
        }
    }

    #[test]
    fn composed_permuting_steps_give_the_basic_step() {
        for (kind, which) in [(ChainKind::Stochastic, 0), (ChainKind::SemiStochastic, 2)] {
            let chain = permuting_chain(kind);
            let basic = &basic_steps()[which];
            assert_eq!(chain[0].from, basic.from);
            assert_eq!(chain[1].to, basic.to);
            let table = MomentTable::from_tuple(&chain[0].from, 20);
            let twice = table.permuting(&chain[0].alpha).permuting(&chain[1].alpha);
            let once = table.basic(&basic.alpha1, &basic.alpha2);
            assert!(twice.agrees_with(&once, 18));
        }
    }

    #[test]
    fn permuting_formulas_hold() {
        permuting_formula_check(&t("2/3,1/3,1/2,1"), 8).unwrap();
        permuting_formula_check(&t("4/3,2/3,3/2,2"), 8).unwrap();
        permuting_formula_check(&t("1,2,3,7/2"), 6).unwrap();
        permuting_formula_check(&t("1/3,2/3,1/2,1"), 6).unwrap();
    }

    #[test]
    fn transformed_type_i_pairs_follow_the_theorem() {
        // A1bar^(n) = A2^(n) - r A2^(n+1), A2bar^(n) = (A1^(n) - r A1^(n+1))/x
        // with r = A1^(n)(0)/A1^(n+1)(0), checked against the transformed
        // factorization itself.
        for s in ["2/3,1/3,1/2,1", "1,2,3,7/2"] {
            let tu = t(s);
            let max = 6usize;
            let gb = GaussBorel::new(&tu, max + 2).unwrap();
            let table = MomentTable::from_tuple(&tu, 2 * max + 6).permuting(&Rat::one());
            let fac = table.factorization(max + 1).unwrap();
            for n in 0..max {
                let r = gb.a1_poly(n).coeff(0) / gb.a1_poly(n + 1).coeff(0);
                let a1bar = &gb.a2_poly(n) - &gb.a2_poly(n + 1).scale(&r);
                let a2bar = (&gb.a1_poly(n) - &gb.a1_poly(n + 1).scale(&r))
                    .div_x()
                    .unwrap();
                assert_eq!(fac.a1_poly(n), a1bar, "tuple {s}, A1bar at n = {n}");
                assert_eq!(fac.a2_poly(n), a2bar, "tuple {s}, A2bar at n = {n}");
            }
        }
    }

    #[test]
    fn moment_table_windows() {
        let table = MomentTable::from_tuple(&t("1/3,2/3,1/2,1"), 7);
        // order 6 needs moment index 5 + 2 = 7: one short
        assert!(matches!(table.factorization(6), Err(Error::Window(_))));
        assert!(table.factorization(5).is_ok());
        let shorter = table.permuting(&rat_int(1));
        assert_eq!(shorter.len(), 6);
        // scaling either weight leaves the monic polynomials alone
        let scaled = table.basic(&rat(7, 3), &rat(2, 11));
        let plain = table.basic(&Rat::one(), &Rat::one());
        assert_eq!(
            scaled.monic_b(4).unwrap(),
            plain.monic_b(4).unwrap()
        );
    }
}
