//! Markov matrices obtained from the Jacobi matrix by diagonal conjugation.
//! Type II normalizes J by the polynomial values at unity, type I normalizes
//! the transpose by the linear-form values at unity; a geometric sigma gives
//! the semi-stochastic normalization used for the uniform tuples.

use crate::error::{Error, Result};
use crate::gaussborel::GaussBorel;
use crate::hyper::{f_ratio, gauss2f1_exact, r_plus};
use crate::jacobi::{alpha, beta, gamma, jacobi_matrix};
use crate::matrix::Matrix;
use crate::rational::{fmt_rat, kappa, pochhammer, rat_int, rat_to_f64, Rat};
use crate::tuple::Tuple;
use num::traits::{One, Zero};
use num::Signed;

/// q^{(n)}(1) by the closed form: even index (c)_{3m}(d)_{3m}/((2m)!(a)_{2m}(b)_{2m}),
/// odd index (c)_{3m+2}(d)_{3m+1}/((2m+1)!(a)_{2m+1}(b)_{2m+1}).
pub fn q_at_unity_closed(t: &Tuple, n: usize) -> Rat {
    let m = n / 2;
    if n % 2 == 0 {
        let num = pochhammer(&t.c, 3 * m) * pochhammer(&t.d, 3 * m);
        let den = crate::rational::factorial(2 * m)
            * pochhammer(&t.a, 2 * m)
            * pochhammer(&t.b, 2 * m);
        num / den
    } else {
        let num = pochhammer(&t.c, 3 * m + 2) * pochhammer(&t.d, 3 * m + 1);
        let den = crate::rational::factorial(2 * m + 1)
            * pochhammer(&t.a, 2 * m + 1)
            * pochhammer(&t.b, 2 * m + 1);
        num / den
    }
}

/// Exact ratio q^{(n+1)}(1)/q^{(n)}(1) without forming the large Pochhammer products.
pub fn q_unity_ratio(t: &Tuple, n: usize) -> Rat {
    let m = rat_int((n / 2) as i64);
    let three_m = rat_int(3) * &m;
    let two_m = rat_int(2) * &m;
    if n % 2 == 0 {
        let num = (&t.c + &three_m) * (&t.c + &three_m + rat_int(1)) * (&t.d + &three_m);
        let den = (&two_m + rat_int(1)) * (&t.a + &two_m) * (&t.b + &two_m);
        num / den
    } else {
        let num = (&t.c + &three_m + rat_int(2))
            * (&t.d + &three_m + rat_int(1))
            * (&t.d + &three_m + rat_int(2));
        let den = (&two_m + rat_int(2)) * (&t.a + &two_m + rat_int(1)) * (&t.b + &two_m + rat_int(1));
        num / den
    }
}

/// q^{(0)}(1)..q^{(count-1)}(1) via the ratio chain.
pub fn q_at_unity(t: &Tuple, count: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(count);
    let mut cur = Rat::one();
    for n in 0..count {
        out.push(cur.clone());
        if n + 1 < count {
            cur *= q_unity_ratio(t, n);
        }
    }
    out
}

/// B^{(0)}(1)..B^{(count-1)}(1) through the four-term recurrence at x = 1:
/// B^{(n+1)}(1) = (1-beta_n)B^{(n)}(1) - alpha_n B^{(n-1)}(1) - gamma_{n-1} B^{(n-2)}(1).
pub fn b_at_unity(t: &Tuple, count: usize) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            out.push(Rat::one());
            continue;
        }
        let m = n - 1;
        let mut v = (Rat::one() - beta(t, m)) * &out[m];
        if m >= 1 {
            v -= alpha(t, m) * &out[m - 1];
        }
        if m >= 2 {
            v -= gamma(t, m - 1) * &out[m - 2];
        }
        out.push(v);
    }
    out
}

#[derive(Debug, Clone)]
pub struct UnityValues {
    pub q: Vec<Rat>,
    pub b: Vec<Rat>,
}

pub fn unity_values(t: &Tuple, count: usize) -> UnityValues {
    UnityValues {
        q: q_at_unity(t, count),
        b: b_at_unity(t, count),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    TypeII,
    TypeI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaKind {
    /// sigma_n = 1/B^{(n)}(1) (type II) or 1/q^{(n)}(1) (type I).
    Unity,
    /// sigma_n = (2 kappa)^{-n} (type II) or (2 kappa)^{n} (type I).
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowBalance {
    Stochastic,
    /// Row sum below one by the stored deficit.
    Sink(Rat),
    /// Row sum above one by the stored excess.
    Source(Rat),
}

impl std::fmt::Display for RowBalance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowBalance::Stochastic => write!(f, "stochastic"),
            RowBalance::Sink(d) => write!(f, "sink({})", fmt_rat(d)),
            RowBalance::Source(e) => write!(f, "source({})", fmt_rat(e)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StochasticSystem {
    pub tuple: Tuple,
    pub kind: Kind,
    pub sigma_kind: SigmaKind,
    pub sigma: Vec<Rat>,
    pub p: Matrix,
    pub row_balance: Vec<RowBalance>,
}

fn balance_of(sum: &Rat) -> RowBalance {
    let one = Rat::one();
    if *sum == one {
        RowBalance::Stochastic
    } else if *sum < one {
        RowBalance::Sink(&one - sum)
    } else {
        RowBalance::Source(sum - &one)
    }
}

/// P = D(v)^{-1} M D(v) with M = J (type II) or J^T (type I); the emitted
/// sigma is the inverse of the conjugating diagonal v.
pub fn normalized_system(
    t: &Tuple,
    n: usize,
    kind: Kind,
    sigma_kind: SigmaKind,
) -> Result<StochasticSystem> {
    let v: Vec<Rat> = match (kind, sigma_kind) {
        (Kind::TypeII, SigmaKind::Unity) => b_at_unity(t, n),
        (Kind::TypeI, SigmaKind::Unity) => q_at_unity(t, n),
        (Kind::TypeII, SigmaKind::Geometric) => {
            let two_k = rat_int(2) * kappa();
            (0..n).scan(Rat::one(), |s, _| {
                let cur = s.clone();
                *s *= &two_k;
                Some(cur)
            })
            .collect()
        }
        (Kind::TypeI, SigmaKind::Geometric) => {
            let two_k = rat_int(2) * kappa();
            (0..n).scan(Rat::one(), |s, _| {
                let cur = s.clone();
                *s /= &two_k;
                Some(cur)
            })
            .collect()
        }
    };
    if sigma_kind == SigmaKind::Unity {
        if let Some(i) = v.iter().position(|x| !x.is_positive()) {
            return Err(Error::Hypothesis(format!(
                "normalizer at index {i} is not positive for {t}"
            )));
        }
    }
    let j = jacobi_matrix(t, n);
    let mut p = Matrix::zero(n);
    for i in 0..n {
        for jj in 0..n {
            let m_ij = match kind {
                Kind::TypeII => j.get(i, jj),
                Kind::TypeI => j.get(jj, i),
            };
            if m_ij.is_zero() {
                continue;
            }
            p.set(i, jj, m_ij * &v[jj] / &v[i]);
        }
    }
    let row_balance = (0..n).map(|i| balance_of(&p.row_sum(i))).collect();
    let sigma = v.iter().map(|x| Rat::one() / x).collect();
    Ok(StochasticSystem {
        tuple: t.clone(),
        kind,
        sigma_kind,
        sigma,
        p,
        row_balance,
    })
}

pub fn stochastic_normalize(t: &Tuple, n: usize, kind: Kind) -> Result<StochasticSystem> {
    normalized_system(t, n, kind, SigmaKind::Unity)
}

/// The semi-stochastic pair (type II, type I) under the geometric sigma.
pub fn geometric_pair(t: &Tuple, n: usize) -> (StochasticSystem, StochasticSystem) {
    let ii = normalized_system(t, n, Kind::TypeII, SigmaKind::Geometric).expect("geometric");
    let i = normalized_system(t, n, Kind::TypeI, SigmaKind::Geometric).expect("geometric");
    (ii, i)
}

/// Closed-form entry of the type I stochastic matrix. The two subdiagonal
/// families are forced by P_{I,n+1,n} = q^{(n)}(1)/q^{(n+1)}(1); the printed
/// source misstates them, so the versions here restore exact row sums.
pub fn type_i_entry_closed(t: &Tuple, i: usize, j: usize) -> Rat {
    let a = &t.a;
    let b = &t.b;
    let c = &t.c;
    let d = &t.d;
    let diff = j as i64 - i as i64;
    if !(-1..=2).contains(&diff) {
        return Rat::zero();
    }
    if i % 2 == 0 {
        let n = rat_int((i / 2) as i64);
        let n3 = rat_int(3) * &n;
        let n2 = rat_int(2) * &n;
        match diff {
            -1 => {
                // q^{(2n-1)}(1)/q^{(2n)}(1)
                (&n2 * (a + &n2 - rat_int(1)) * (b + &n2 - rat_int(1)))
                    / ((c + &n3 - rat_int(1)) * (d + &n3 - rat_int(2)) * (d + &n3 - rat_int(1)))
            }
            0 => {
                let mut v = ((&n2 + rat_int(1)) * (a + &n2) * (b + &n2))
                    / ((c + &n3) * (d + &n3));
                if i > 0 {
                    v -= (&n2 * (a + &n2 - rat_int(1)) * (b + &n2 - rat_int(1)))
                        / ((c + &n3 - rat_int(1)) * (d + &n3 - rat_int(2)));
                }
                v
            }
            1 => {
                let mut v = -((&n2 + rat_int(1)) * (a + &n2) * (b + &n2) * (c + &n3 + rat_int(1)))
                    / ((c + &n3) * (d + &n3))
                    + ((&n + rat_int(1)) * (a + &n2 + rat_int(1)) * (b + &n2 + rat_int(1)))
                        / (d + &n3 + rat_int(1));
                if i > 0 {
                    v += (&n * (a + &n2 - rat_int(1)) * (b + &n2 - rat_int(1))
                        * (c + &n3 + rat_int(1)))
                        / ((c + &n3 - rat_int(1)) * (d + &n3 - rat_int(1)));
                }
                v
            }
            _ => {
                // (d+n-1) cancels one factor of (d+3n-1)_3 at n = 0
                if i == 0 {
                    ((d - a) * (d - b)) / (d * (d + rat_int(1)))
                } else {
                    ((d + &n - rat_int(1)) * (d - a + &n) * (d - b + &n))
                        / ((d + &n3 - rat_int(1)) * (d + &n3) * (d + &n3 + rat_int(1)))
                }
            }
        }
    } else {
        let n = rat_int(((i - 1) / 2) as i64);
        let n3 = rat_int(3) * &n;
        let n2 = rat_int(2) * &n;
        match diff {
            -1 => {
                // q^{(2n)}(1)/q^{(2n+1)}(1)
                ((&n2 + rat_int(1)) * (a + &n2) * (b + &n2))
                    / ((c + &n3) * (c + &n3 + rat_int(1)) * (d + &n3))
            }
            0 => {
                (rat_int(2) * (&n + rat_int(1)) * (a + &n2 + rat_int(1)) * (b + &n2 + rat_int(1)))
                    / ((c + &n3 + rat_int(2)) * (d + &n3 + rat_int(1)))
                    - ((&n2 + rat_int(1)) * (a + &n2) * (b + &n2)) / ((c + &n3) * (d + &n3))
            }
            1 => {
                (d + &n3 + rat_int(2))
                    * (-(rat_int(2)
                        * (&n + rat_int(1))
                        * (a + &n2 + rat_int(1))
                        * (b + &n2 + rat_int(1)))
                        / ((c + &n3 + rat_int(2)) * (d + &n3 + rat_int(1)))
                        + ((&n2 + rat_int(3)) * (a + &n2 + rat_int(2)) * (b + &n2 + rat_int(2)))
                            / (rat_int(2) * (c + &n3 + rat_int(3)) * (d + &n3 + rat_int(2)))
                        + ((&n2 + rat_int(1)) * (a + &n2) * (b + &n2))
                            / (rat_int(2) * (c + &n3 + rat_int(1)) * (d + &n3)))
            }
            _ => {
                ((c + &n) * (c - a + &n + rat_int(1)) * (c - b + &n + rat_int(1)))
                    / ((c + &n3 + rat_int(1)) * (c + &n3 + rat_int(2)) * (c + &n3 + rat_int(3)))
            }
        }
    }
}

pub fn type_i_closed_matrix(t: &Tuple, n: usize) -> Matrix {
    let mut p = Matrix::zero(n);
    for i in 0..n {
        for j in i.saturating_sub(1)..n.min(i + 3) {
            p.set(i, j, type_i_entry_closed(t, i, j));
        }
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Recurrent,
    Transient,
}

/// Recurrent iff 0 < delta <= 1; delta <= 0 is outside the hypothesis.
pub fn classify(t: &Tuple) -> Result<Classification> {
    let recurrent = t.is_recurrent()?;
    Ok(if recurrent {
        Classification::Recurrent
    } else {
        Classification::Transient
    })
}

pub fn classification_string(t: &Tuple) -> Result<String> {
    let class = classify(t)?;
    let word = match class {
        Classification::Recurrent => "recurrent",
        Classification::Transient => "transient",
    };
    Ok(format!("{} (delta={})", word, fmt_rat(&t.delta())))
}

/// pi_n = B^{(n)}(1) q^{(n)}(1).
pub fn steady_vector(t: &Tuple, count: usize) -> Vec<Rat> {
    let u = unity_values(t, count);
    (0..count).map(|n| &u.b[n] * &u.q[n]).collect()
}

pub fn steady_partial_sums(pi: &[Rat]) -> Vec<Rat> {
    pi.iter()
        .scan(Rat::zero(), |acc, x| {
            *acc += x;
            Some(acc.clone())
        })
        .collect()
}

/// pi P = pi on every column whose band support lies inside the truncation.
pub fn steady_vector_check(sys: &StochasticSystem, pi: &[Rat]) -> Result<()> {
    let n = sys.p.n;
    assert!(pi.len() >= n);
    let supported = match sys.kind {
        Kind::TypeII => n.saturating_sub(2),
        Kind::TypeI => n.saturating_sub(1),
    };
    for m in 0..supported {
        let mut acc = Rat::zero();
        for i in 0..n {
            let e = sys.p.get(i, m);
            if !e.is_zero() {
                acc += e * &pi[i];
            }
        }
        if acc != pi[m] {
            return Err(Error::Verify(format!(
                "steady state fails at coordinate {m}"
            )));
        }
    }
    Ok(())
}

/// q^{(n+1)}(1)B^{(n+2)}(1) - q^{(n+2)}(1)(gamma_{n+1}B^{(n)}(1) + alpha_{n+2}B^{(n+1)}(1))
/// - q^{(n+3)}(1) gamma_{n+2} B^{(n+1)}(1) = 0.
pub fn cd_unity_check(t: &Tuple, max: usize) -> Result<()> {
    let u = unity_values(t, max + 4);
    for n in 0..=max {
        let lhs = &u.q[n + 1] * &u.b[n + 2]
            - &u.q[n + 2] * (gamma(t, n + 1) * &u.b[n] + alpha(t, n + 2) * &u.b[n + 1])
            - &u.q[n + 3] * gamma(t, n + 2) * &u.b[n + 1];
        if !lhs.is_zero() {
            return Err(Error::Verify(format!("unity CD identity fails at n = {n}")));
        }
    }
    Ok(())
}

/// The same identity at the polynomial level, componentwise in A1 and A2.
pub fn cd_poly_check(gb: &GaussBorel, max: usize) -> Result<()> {
    let t = &gb.tuple;
    for n in 0..=max {
        for which in [1u8, 2u8] {
            let pick = |m: usize| {
                if which == 1 {
                    gb.a1_poly(m)
                } else {
                    gb.a2_poly(m)
                }
            };
            let lhs = &(&pick(n + 1) * &gb.b_poly(n + 2))
                - &(&pick(n + 2)
                    * &(&gb.b_poly(n).scale(&gamma(t, n + 1))
                        + &gb.b_poly(n + 1).scale(&alpha(t, n + 2))));
            let lhs = &lhs - &(&pick(n + 3) * &gb.b_poly(n + 1).scale(&gamma(t, n + 2)));
            if !lhs.is_zero() {
                return Err(Error::Verify(format!(
                    "polynomial CD identity fails at n = {n} component A{which}"
                )));
            }
        }
    }
    Ok(())
}

/// B^{(n)}(x) at a fixed rational point, by the recurrence.
pub fn b_at_point(t: &Tuple, x: &Rat, count: usize) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            out.push(Rat::one());
            continue;
        }
        let m = n - 1;
        let mut v = (x - beta(t, m)) * &out[m];
        if m >= 1 {
            v -= alpha(t, m) * &out[m - 1];
        }
        if m >= 2 {
            v -= gamma(t, m - 1) * &out[m - 2];
        }
        out.push(v);
    }
    out
}

#[derive(Debug, Clone)]
pub struct RatioReport {
    pub n: usize,
    pub q_unity_gap: f64,
    pub b_unity_gap: f64,
    pub x: Option<f64>,
    pub b_x_gap: Option<f64>,
    pub q_x_gap: Option<f64>,
}

/// Float distances of the unity ratios from 27/8 and 8/27 at index n, and,
/// for rational x > 1, of the B-ratio from -kappa/F(x) and the q-ratio from
/// r_+(x).
pub fn ratio_report(t: &Tuple, n: usize, x: Option<&Rat>) -> Result<RatioReport> {
    let q_ratio = rat_to_f64(&q_unity_ratio(t, n));
    let b = b_at_unity(t, n + 2);
    let b_ratio = rat_to_f64(&(&b[n + 1] / &b[n]));
    let q_unity_gap = (q_ratio - 27.0 / 8.0).abs();
    let b_unity_gap = (b_ratio - 8.0 / 27.0).abs();
    let (mut xf, mut b_x_gap, mut q_x_gap) = (None, None, None);
    if let Some(xr) = x {
        let xv = rat_to_f64(xr);
        let fx = f_ratio(xv)?;
        let bx = b_at_point(t, xr, n + 2);
        let ratio = rat_to_f64(&(&bx[n + 1] / &bx[n]));
        xf = Some(xv);
        b_x_gap = Some((ratio - (-rat_to_f64(&kappa()) / fx)).abs());
        q_x_gap = Some((q_ratio_at_x(t, xr, n)? - r_plus(xv)?).abs());
    }
    Ok(RatioReport {
        n,
        q_unity_gap,
        b_unity_gap,
        x: xf,
        b_x_gap,
        q_x_gap,
    })
}

/// Values A_1^{(m)}(x), A_2^{(m)}(x) for m < count by the exact dual
/// recurrence, seeded with the Gauss-Borel forms of low order.
pub fn a_scalars_at(t: &Tuple, x: &Rat, count: usize) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let gb = GaussBorel::new(t, 6)?;
    let seeds = count.min(3);
    let mut a1: Vec<Rat> = Vec::with_capacity(count);
    let mut a2: Vec<Rat> = Vec::with_capacity(count);
    for m in 0..seeds {
        a1.push(gb.a1_poly(m).eval(x));
        a2.push(gb.a2_poly(m).eval(x));
    }
    for m in 1..count.saturating_sub(2) {
        // solve x A^{(m)} = A^{(m-1)} + beta_m A^{(m)} + alpha_{m+1} A^{(m+1)} + gamma_{m+1} A^{(m+2)}
        let g = gamma(t, m + 1);
        let head = x - beta(t, m);
        let al = alpha(t, m + 1);
        a1.push((&head * &a1[m] - &a1[m - 1] - &al * &a1[m + 1]) / &g);
        a2.push((&head * &a2[m] - &a2[m - 1] - &al * &a2[m + 1]) / &g);
    }
    Ok((a1, a2))
}

/// q^{(n+1)}(x)/q^{(n)}(x) at rational x > 1, in exact arithmetic. Pfaff's
/// transformation moves the hypergeometric argument 1 - x to (x-1)/x inside
/// (0,1); the transformation prefactor is common to both weights and cancels
/// in the ratio, leaving rational series truncations whose error stays far
/// below the subdominant mode the ratio converges along.
pub fn q_ratio_at_x(t: &Tuple, x: &Rat, n: usize) -> Result<f64> {
    if x <= &Rat::one() {
        return Err(Error::Domain(format!(
            "q-ratio asymptotics need x > 1, got {}",
            fmt_rat(x)
        )));
    }
    let delta = t.delta();
    let arg = (x - Rat::one()) / x;
    // Truncation error (x-1)/x)^terms, amplified by at most the dominant to
    // subdominant mode ratio to the n-th power; 5n + 240 terms keeps the
    // spurious component negligible for x <= 2.
    let terms = 5 * n + 240;
    let g1 = gauss2f1_exact(&(&t.c - &t.b), &(&delta - &t.d + &t.b), &delta, &arg, terms)?;
    let g2 = (&t.c / &t.b)
        * gauss2f1_exact(
            &(&t.c - &t.b),
            &(&delta - &t.d + &t.b + Rat::one()),
            &delta,
            &arg,
            terms,
        )?;
    let (a1, a2) = a_scalars_at(t, x, n + 2)?;
    let hi = &a1[n + 1] * &g1 + &a2[n + 1] * &g2;
    let lo = &a1[n] * &g1 + &a2[n] * &g2;
    if lo.is_zero() {
        return Err(Error::Domain(format!("q^{{({n})}} vanishes at {}", fmt_rat(x))));
    }
    Ok(rat_to_f64(&(hi / lo)))
}

/// Max float gap |P_{I,n,n+k} - P_{II,n+k,n}| over k in {-2,...,2} at index n.
pub fn dual_limit_max_gap(t: &Tuple, n: usize) -> f64 {
    let u = unity_values(t, n + 3);
    let mut worst = 0f64;
    for k in -2i64..=2 {
        let m = (n as i64 + k) as usize;
        // J^T entry (n, m) feeds P_I; the same J entry (m, n) feeds P_II.
        let j_entry = match k {
            -1 => Rat::one(),
            0 => beta(t, n),
            1 => alpha(t, n + 1),
            2 => gamma(t, n + 1),
            _ => Rat::zero(),
        };
        if j_entry.is_zero() {
            continue;
        }
        let p_i = rat_to_f64(&(&j_entry * &u.q[m] / &u.q[n]));
        let p_ii = rat_to_f64(&(&j_entry * &u.b[n] / &u.b[m]));
        worst = worst.max((p_i - p_ii).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{weight_eval, WeightKind};
    use crate::rational::rat;

    fn t(s: &str) -> Tuple {
        Tuple::parse(s).unwrap()
    }

    #[test]
    fn unity_closed_form_matches_gauss_borel() {
        for s in ["4/3,5/3,2,5/2", "1/3,2/3,1/2,1", "1,2,3,7/2", "1/2,1,1/2,2"] {
            let tu = t(s);
            let gb = GaussBorel::new(&tu, 14).unwrap();
            for n in 0..13 {
                assert_eq!(
                    q_at_unity_closed(&tu, n),
                    gb.q_at_unity(n),
                    "q at unity, tuple {s}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn unity_ratio_chain_consistent() {
        let tu = t("1,2,3,7/2");
        let qs = q_at_unity(&tu, 9);
        for (n, q) in qs.iter().enumerate() {
            assert_eq!(*q, q_at_unity_closed(&tu, n));
        }
    }

    #[test]
    fn stochastic_uniform_unity_powers() {
        let tu = t("4/3,5/3,3/2,2");
        let mut expect = Rat::one();
        for n in 0..9 {
            assert_eq!(q_at_unity_closed(&tu, n), expect, "n = {n}");
            expect *= rat(27, 8);
        }
    }

    #[test]
    fn b_at_unity_two_routes() {
        for s in ["1/3,2/3,1/2,1", "1,2,3,7/2"] {
            let tu = t(s);
            let gb = GaussBorel::new(&tu, 12).unwrap();
            let rec = b_at_unity(&tu, 12);
            for (n, v) in rec.iter().enumerate() {
                assert_eq!(*v, gb.b_poly(n).eval(&Rat::one()), "tuple {s}, n = {n}");
            }
        }
    }

    #[test]
    fn b_at_unity_known_values() {
        let tu = t("1/3,2/3,1/2,1");
        let b = b_at_unity(&tu, 21);
        assert_eq!(b[1], rat(5, 9));
        assert_eq!(b[2], rat(43, 243));
        assert_eq!(b[3], rat(341, 6561));
        // (2*8^n + (-1)^n)/27^n for n >= 1; the closed form does not cover n = 0
        for (n, v) in b.iter().enumerate().skip(1) {
            let num = rat_int(2) * rat_int(8).pow(n as i32)
                + rat_int(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(*v, num / rat_int(27).pow(n as i32), "n = {n}");
        }
    }

    #[test]
    fn interior_rows_are_stochastic() {
        for s in ["1/3,2/3,1/2,1", "1,2,3,7/2", "4/3,5/3,2,5/2"] {
            let tu = t(s);
            for kind in [Kind::TypeII, Kind::TypeI] {
                let sys = stochastic_normalize(&tu, 10, kind).unwrap();
                let interior = match kind {
                    Kind::TypeII => 9,
                    Kind::TypeI => 8,
                };
                for i in 0..interior {
                    assert_eq!(
                        sys.row_balance[i],
                        RowBalance::Stochastic,
                        "tuple {s}, {kind:?}, row {i}"
                    );
                }
                for i in 0..10 {
                    for j in 0..10 {
                        assert!(!sys.p.get(i, j).is_negative(), "negative entry {s} {kind:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_type_i_rows_verbatim() {
        let sys = stochastic_normalize(&t("1/3,2/3,1/2,1"), 8, Kind::TypeI).unwrap();
        assert_eq!(*sys.p.get(0, 0), rat(12, 27));
        assert_eq!(*sys.p.get(0, 1), rat(12, 27));
        assert_eq!(*sys.p.get(0, 2), rat(3, 27));
        for n in 1..6 {
            assert_eq!(*sys.p.get(n, n - 1), rat(8, 27), "row {n}");
            assert_eq!(*sys.p.get(n, n), rat(12, 27), "row {n}");
            assert_eq!(*sys.p.get(n, n + 1), rat(6, 27), "row {n}");
            assert_eq!(*sys.p.get(n, n + 2), rat(1, 27), "row {n}");
        }
    }

    #[test]
    fn geometric_pair_row_balance() {
        let (ii, i) = geometric_pair(&t("1/3,2/3,1/2,1"), 8);
        assert_eq!(ii.row_balance[0], RowBalance::Sink(rat(7, 27)));
        assert_eq!(ii.row_balance[1], RowBalance::Source(rat(5, 27)));
        assert_eq!(ii.row_balance[2], RowBalance::Source(rat(2, 27)));
        for n in 3..6 {
            assert_eq!(ii.row_balance[n], RowBalance::Stochastic, "row {n}");
            assert_eq!(*ii.p.get(n, n - 2), rat(1, 27));
            assert_eq!(*ii.p.get(n, n - 1), rat(6, 27));
            assert_eq!(*ii.p.get(n, n), rat(12, 27));
            assert_eq!(*ii.p.get(n, n + 1), rat(8, 27));
        }
        for n in 1..6 {
            assert_eq!(*i.p.get(n, n - 1), rat(8, 27));
            assert_eq!(*i.p.get(n, n), rat(12, 27));
            assert_eq!(*i.p.get(n, n + 1), rat(6, 27));
            assert_eq!(*i.p.get(n, n + 2), rat(1, 27));
        }

        let (_, i3) = geometric_pair(&t("4/3,5/3,2,5/2"), 8);
        assert_eq!(*i3.p.get(0, 0), rat(12, 27));
        assert_eq!(*i3.p.get(0, 1), rat(6, 27));
        assert_eq!(*i3.p.get(0, 2), rat(1, 27));
        assert_eq!(i3.row_balance[0], RowBalance::Sink(rat(8, 27)));
    }

    #[test]
    fn closed_form_type_i_agrees_with_normalization() {
        for s in ["1,2,3,7/2", "1/3,2/3,1/2,1", "4/3,5/3,2,5/2", "1/2,1,1/2,2"] {
            let tu = t(s);
            let sys = stochastic_normalize(&tu, 12, Kind::TypeI).unwrap();
            let closed = type_i_closed_matrix(&tu, 12);
            for i in 0..10 {
                for j in 0..12 {
                    assert_eq!(
                        closed.get(i, j),
                        sys.p.get(i, j),
                        "tuple {s}, entry ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn classification_by_delta() {
        assert_eq!(classify(&t("1/3,2/3,1/2,1")).unwrap(), Classification::Recurrent);
        assert_eq!(classify(&t("4/3,5/3,2,5/2")).unwrap(), Classification::Transient);
        assert_eq!(
            classification_string(&t("1/3,2/3,1/2,1")).unwrap(),
            "recurrent (delta=1/2)"
        );
        assert_eq!(
            classification_string(&t("4/3,5/3,2,5/2")).unwrap(),
            "transient (delta=3/2)"
        );
        // delta = 1 boundary is recurrent
        assert_eq!(classify(&t("1/2,1,1/2,2")).unwrap(), Classification::Recurrent);
        assert!(classify(&t("3,3,1,2")).is_err());
    }

    #[test]
    fn steady_vector_fixed_point() {
        for s in ["4/3,5/3,3/2,2", "1,2,3,7/2"] {
            let tu = t(s);
            let pi = steady_vector(&tu, 20);
            assert_eq!(pi[0], Rat::one());
            for kind in [Kind::TypeII, Kind::TypeI] {
                let sys = stochastic_normalize(&tu, 20, kind).unwrap();
                steady_vector_check(&sys, &pi).unwrap();
            }
        }
    }

    #[test]
    fn cd_identities() {
        cd_unity_check(&t("4/3,5/3,2,5/2"), 10).unwrap();
        cd_unity_check(&t("1,2,3,7/2"), 10).unwrap();
        let gb = GaussBorel::new(&t("1,2,3,7/2"), 12).unwrap();
        cd_poly_check(&gb, 7).unwrap();
        let gb = GaussBorel::new(&t("1/3,2/3,1/2,1"), 12).unwrap();
        cd_poly_check(&gb, 7).unwrap();
    }

    #[test]
    fn ratio_asymptotics_at_unity() {
        // generic tuple whose second-order term vanishes: c = (a+b)/2, d = c + 1/2
        let rep = ratio_report(&t("1/2,2,5/4,7/4"), 300, None).unwrap();
        assert!(rep.q_unity_gap < 1e-3, "q gap {}", rep.q_unity_gap);
        assert!(rep.b_unity_gap < 1e-3, "b gap {}", rep.b_unity_gap);
        // O(1/n) drift otherwise: the gap halves between n = 150 and n = 300
        let wide = ratio_report(&t("1,2,3,7/2"), 300, None).unwrap();
        let half = ratio_report(&t("1,2,3,7/2"), 150, None).unwrap();
        assert!(wide.q_unity_gap < 5e-2, "q gap {}", wide.q_unity_gap);
        let shrink = half.q_unity_gap / wide.q_unity_gap;
        assert!((1.8..2.2).contains(&shrink), "shrink factor {shrink}");
        // geometric convergence for a uniform tuple
        let rep = ratio_report(&t("1/3,2/3,1/2,1"), 50, None).unwrap();
        assert!(rep.b_unity_gap < 1e-10, "b gap {}", rep.b_unity_gap);
        assert!(rep.q_unity_gap < 1e-10, "q gap {}", rep.q_unity_gap);
    }

    #[test]
    fn ratio_asymptotics_at_two() {
        let two = rat(2, 1);
        let rep = ratio_report(&t("1,2,3,7/2"), 120, Some(&two)).unwrap();
        assert!(rep.b_x_gap.unwrap() < 1e-4, "b gap {:?}", rep.b_x_gap);
        assert!(rep.q_x_gap.unwrap() < 5e-3, "q gap {:?}", rep.q_x_gap);
        // Toeplitz tail makes both ratios settle to machine precision
        let rep = ratio_report(&t("1/3,2/3,1/2,1"), 40, Some(&two)).unwrap();
        assert!(rep.b_x_gap.unwrap() < 1e-10, "b gap {:?}", rep.b_x_gap);
        assert!(rep.q_x_gap.unwrap() < 1e-10, "q gap {:?}", rep.q_x_gap);
    }

    #[test]
    fn dual_limit_transposition() {
        let gap = dual_limit_max_gap(&t("1/2,2,5/4,7/4"), 200);
        assert!(gap < 1e-3, "gap {gap}");
        // O(1/n) for a tuple without the vanishing second-order term
        let wide = dual_limit_max_gap(&t("1,2,3,7/2"), 200);
        assert!(wide < 1e-2, "gap {wide}");
        let shrink = dual_limit_max_gap(&t("1,2,3,7/2"), 100) / wide;
        assert!((1.8..2.2).contains(&shrink), "shrink factor {shrink}");
    }

    #[test]
    fn rodrigues_linear_form_cross_check() {
        for s in ["1/3,2/3,1/2,1", "1,2,3,7/2"] {
            let tu = t(s);
            let gb = GaussBorel::new(&tu, 8).unwrap();
            for n in 0..=4 {
                for x in [0.2, 0.5, 0.8] {
                    let direct = crate::hyper::rodrigues_q_float(&tu, n, x).unwrap();
                    let w1 = weight_eval(&tu, WeightKind::SmallW1, x).unwrap();
                    let w2 = weight_eval(&tu, WeightKind::SmallW2, x).unwrap();
                    let via_forms =
                        gb.a1_poly(n).eval_f64(x) * w1 + gb.a2_poly(n).eval_f64(x) * w2;
                    assert!(
                        (direct - via_forms).abs() < 1e-8,
                        "tuple {s}, n = {n}, x = {x}: {direct} vs {via_forms}"
                    );
                }
            }
        }
    }
}
