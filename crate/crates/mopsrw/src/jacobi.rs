//! The banded Jacobi matrix of the step-line recurrence. Everything is
//! driven by the lambda sequence, whose consecutive triples assemble into
//! the four bands (gamma, alpha, beta, 1).

use crate::error::{Error, Result};
use crate::gaussborel::GaussBorel;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::rational::{kappa, rat_int, Rat};
use crate::tuple::Tuple;
use num::traits::Zero;

/// Interlaced parameter sequence: c_{2k-1} = c + k, c_{2k} = d + k,
/// so c_{-1} = c and c_0 = d. Defined for any integer index.
pub fn c_seq(t: &Tuple, m: i64) -> Rat {
    if m.rem_euclid(2) == 1 {
        let k = (m + 1) / 2;
        &t.c + rat_int(k)
    } else {
        let k = m / 2;
        &t.d + rat_int(k)
    }
}

/// lambda_n for n >= 0; lambda_0 = lambda_1 = 0.
pub fn lambda(t: &Tuple, n: usize) -> Rat {
    if n < 2 {
        return Rat::zero();
    }
    let q = (n / 3) as i64;
    let nq = rat_int(q);
    match n % 3 {
        0 => {
            let cn = c_seq(t, q);
            let cn1 = c_seq(t, q - 1);
            let num = &nq * (&t.b + &nq - rat_int(1)) * (&cn - &t.a - rat_int(1));
            let den = (&cn + &nq - rat_int(2)) * (&cn + &nq - rat_int(1)) * (&cn1 + &nq - rat_int(1));
            num / den
        }
        1 => {
            let cn = c_seq(t, q);
            let cn1 = c_seq(t, q - 1);
            let num = &nq * (&t.a + &nq) * (&cn1 - &t.b);
            let den = (&cn + &nq - rat_int(1)) * (&cn1 + &nq - rat_int(1)) * (&cn1 + &nq);
            num / den
        }
        _ => {
            if n == 2 {
                // the generic expression degenerates to 0/0 when d = 1
                return &t.a * &t.b / (&t.c * &t.d);
            }
            let cn = c_seq(t, q);
            let cn1 = c_seq(t, q - 1);
            let num = (&t.a + &nq) * (&t.b + &nq) * (&cn - rat_int(1));
            let den = (&cn + &nq - rat_int(1)) * (&cn + &nq) * (&cn1 + &nq);
            num / den
        }
    }
}

/// Diagonal band beta_n = lambda_{3n} + lambda_{3n+1} + lambda_{3n+2}.
pub fn beta(t: &Tuple, n: usize) -> Rat {
    lambda(t, 3 * n) + lambda(t, 3 * n + 1) + lambda(t, 3 * n + 2)
}

/// First subdiagonal alpha_{n+1}; alpha_0 is not part of the matrix.
pub fn alpha(t: &Tuple, n: usize) -> Rat {
    assert!(n >= 1, "alpha starts at index 1");
    let m = n - 1;
    (lambda(t, 3 * m + 1) + lambda(t, 3 * m + 2)) * lambda(t, 3 * m + 3)
        + lambda(t, 3 * m + 2) * lambda(t, 3 * m + 4)
}

/// Second subdiagonal gamma_{n+1}.
pub fn gamma(t: &Tuple, n: usize) -> Rat {
    assert!(n >= 1, "gamma starts at index 1");
    let m = n - 1;
    lambda(t, 3 * m + 2) * lambda(t, 3 * m + 4) * lambda(t, 3 * m + 6)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bands {
    pub beta: Vec<Rat>,
    pub alpha: Vec<Rat>,
    pub gamma: Vec<Rat>,
}

/// The three nontrivial bands for rows 0..n-1: beta_0..beta_{n-1},
/// alpha_1..alpha_{n-1}, gamma_1..gamma_{n-2}.
pub fn band_coefficients(t: &Tuple, n: usize) -> Bands {
    Bands {
        beta: (0..n).map(|k| beta(t, k)).collect(),
        alpha: (1..n).map(|k| alpha(t, k)).collect(),
        gamma: (1..n.saturating_sub(1)).map(|k| gamma(t, k)).collect(),
    }
}

/// Dense truncation of the Jacobi matrix: gamma on the second subdiagonal,
/// alpha on the first, beta on the diagonal, ones above.
pub fn jacobi_matrix(t: &Tuple, n: usize) -> Matrix {
    let mut j = Matrix::zero(n);
    for i in 0..n {
        j.set(i, i, beta(t, i));
        if i + 1 < n {
            j.set(i, i + 1, rat_int(1));
        }
        if i >= 1 {
            j.set(i, i - 1, alpha(t, i));
        }
        if i >= 2 {
            j.set(i, i - 2, gamma(t, i - 1));
        }
    }
    j
}

/// x B^(n) = gamma_{n-1} B^(n-2) + alpha_n B^(n-1) + beta_n B^(n) + B^(n+1),
/// checked as an exact identity on the factorization polynomials.
pub fn type_ii_recurrence_check(gb: &GaussBorel, max: usize) -> Result<()> {
    let t = &gb.tuple;
    for n in 0..=max {
        let lhs = gb.b_poly(n).shift_up();
        let mut rhs = gb.b_poly(n + 1);
        rhs = &rhs + &gb.b_poly(n).scale(&beta(t, n));
        if n >= 1 {
            rhs = &rhs + &gb.b_poly(n - 1).scale(&alpha(t, n));
        }
        if n >= 2 {
            rhs = &rhs + &gb.b_poly(n - 2).scale(&gamma(t, n - 1));
        }
        if lhs != rhs {
            return Err(Error::Verify(format!("type II recurrence fails at n = {n}")));
        }
    }
    Ok(())
}

/// Dual recurrence on the type I pairs, componentwise:
/// x A^(n) = A^(n-1) + beta_n A^(n) + alpha_{n+1} A^(n+1) + gamma_{n+1} A^(n+2).
pub fn type_i_recurrence_check(gb: &GaussBorel, max: usize) -> Result<()> {
    let t = &gb.tuple;
    for n in 0..=max {
        for which in [1u8, 2u8] {
            let pick = |m: usize| -> Poly {
                if which == 1 {
                    gb.a1_poly(m)
                } else {
                    gb.a2_poly(m)
                }
            };
            let lhs = pick(n).shift_up();
            let mut rhs = pick(n + 1).scale(&alpha(t, n + 1));
            rhs = &rhs + &pick(n).scale(&beta(t, n));
            rhs = &rhs + &pick(n + 2).scale(&gamma(t, n + 1));
            if n >= 1 {
                rhs = &rhs + &pick(n - 1);
            }
            if lhs != rhs {
                return Err(Error::Verify(format!(
                    "type I recurrence fails at n = {n} component A{which}"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Lu3 {
    pub l1: Matrix,
    pub l2: Matrix,
    pub u: Matrix,
}

/// J = L1 L2 U with L1, L2 unit lower bidiagonal carrying lambda_{3n} and
/// lambda_{3n+1}, and U upper bidiagonal with lambda_{3n+2} on the diagonal.
pub fn lu3_factorize(t: &Tuple, n: usize) -> Lu3 {
    let mut l1 = Matrix::identity(n);
    let mut l2 = Matrix::identity(n);
    let mut u = Matrix::zero(n);
    for i in 0..n {
        u.set(i, i, lambda(t, 3 * i + 2));
        if i + 1 < n {
            u.set(i, i + 1, rat_int(1));
        }
        if i >= 1 {
            l1.set(i, i - 1, lambda(t, 3 * i));
            l2.set(i, i - 1, lambda(t, 3 * i + 1));
        }
    }
    Lu3 { l1, l2, u }
}

/// Product of the three factors agrees with J on rows and columns < n-2.
pub fn lu3_reconstruction_check(t: &Tuple, n: usize) -> Result<()> {
    let f = lu3_factorize(t, n);
    let j = jacobi_matrix(t, n);
    let prod = f.l1.mul(&f.l2).mul(&f.u);
    for i in 0..n.saturating_sub(2) {
        for jj in 0..n.saturating_sub(2) {
            if prod.get(i, jj) != j.get(i, jj) {
                return Err(Error::Verify(format!(
                    "L1 L2 U disagrees with J at ({i},{jj})"
                )));
            }
        }
    }
    Ok(())
}

/// Entries of the truncated J that differ from the limiting Toeplitz pattern
/// (gamma = kappa^3, alpha = 3 kappa^2, beta = 3 kappa, super = 1), reported
/// as (row, col, actual). Column 0 and the last two truncated rows are not
/// part of the comparison.
pub fn toeplitz_deviation(t: &Tuple, n: usize) -> Vec<(usize, usize, Rat)> {
    let k = kappa();
    let beta_lim = rat_int(3) * &k;
    let alpha_lim = rat_int(3) * &k * &k;
    let gamma_lim = &k * &k * &k;
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(2) {
        let b = beta(t, i);
        if i >= 1 && b != beta_lim {
            out.push((i, i, b));
        }
        if i >= 2 {
            let a = alpha(t, i);
            if a != alpha_lim {
                out.push((i, i - 1, a));
            }
        }
        if i >= 3 {
            let g = gamma(t, i - 1);
            if g != gamma_lim {
                out.push((i, i - 2, g));
            }
        }
    }
    out
}

/// Column-0 entries (beta_0, alpha_1, gamma_1) against the Toeplitz values.
pub fn column_zero_deviation(t: &Tuple) -> Vec<(usize, Rat)> {
    let k = kappa();
    let mut out = Vec::new();
    if beta(t, 0) != rat_int(3) * &k {
        out.push((0, beta(t, 0)));
    }
    if alpha(t, 1) != rat_int(3) * &k * &k {
        out.push((1, alpha(t, 1)));
    }
    if gamma(t, 1) != &k * &k * &k {
        out.push((2, gamma(t, 1)));
    }
    out
}
