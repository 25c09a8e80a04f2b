//! Filtered Hilbert functions and Hilbert polynomials of quotients
//! `S / I`, `S = F[t_1..t_m]`, computed from the leading monomial ideal.
//!
//! The convention is the filtered one: `h_I(i) = dim F_i(S / I)`, the number
//! of standard monomials of total degree at most `i`. The Hilbert polynomial
//! is reported in the binomial basis, `p_I(i) = Σ_j a_j C(i, j)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::CoeffRing;
use crate::cpoly::{ideal_gb, krull_dim, Poly};
use crate::error::{Error, Result};
use crate::gb::Limits;
use crate::monomial::Monomial;

/// Hilbert polynomial data of a quotient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertData {
    /// `a_0..a_e` with `p(i) = Σ a_j C(i, j)`; empty for the zero quotient.
    /// Only `a_e` is guaranteed positive: `(X^4)` in two variables has `a_0 = -2`.
    pub binomial_coeffs: Vec<i64>,
    /// `e = deg p`; `None` (that is, `-∞`) for the zero quotient.
    pub degree: Option<usize>,
    /// `a_e`, or 0 for the zero quotient.
    pub multiplicity: u64,
    /// Least `i` from which `h(i) = p(i)`.
    pub stability_index: u64,
}

impl HilbertData {
    /// Evaluates the Hilbert polynomial.
    pub fn evaluate(&self, i: i64) -> i128 {
        self.binomial_coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| a as i128 * binom_poly(i as i128, j as u32))
            .sum()
    }
}

/// A monomial ideal with a minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.retain(|h| !g.divides(h));
            out.push(g);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Numerator `N(t)` of the graded Hilbert series `N(t) / (1 - t)^m`.
    pub fn series_numerator(&self) -> Vec<i128> {
        numerator(self.nvars, &self.gens)
    }

    /// `h(i)`: standard monomials of degree at most `i`.
    pub fn hilbert_function(&self, i: u64) -> u64 {
        let n = self.series_numerator();
        filtered_value(&n, self.nvars, i as i128) as u64
    }

    pub fn hilbert_polynomial(&self) -> Result<HilbertData> {
        hilbert_from_numerator(&self.series_numerator(), self.nvars)
    }

    /// Krull dimension of `S / I`; `None` for the unit ideal.
    pub fn krull_dim(&self) -> Option<usize> {
        krull_dim(&self.gens, self.nvars)
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

// Recursion N(I) = N(I + (t_v)) + t·N(I : t_v) on a pivot variable.
fn numerator(nvars: usize, gens: &[Monomial]) -> Vec<i128> {
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let pivot = gens.iter().find(|g| g.support().len() > 1);
    let g = match pivot {
        None => {
            // pure powers: Π (1 - t^{a})
            let mut out = vec![1i128];
            for g in gens {
                let a = g.degree() as usize;
                let mut f = vec![0i128; a + 1];
                f[0] = 1;
                f[a] = -1;
                out = poly_mul(&out, &f);
            }
            return out;
        }
        Some(g) => g,
    };
    let v = g.support()[0];
    let xv = Monomial::var(nvars, v);
    let mut plus: Vec<Monomial> = gens.iter().filter(|h| h.exp(v) == 0).cloned().collect();
    plus.push(xv.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|h| {
            if h.exp(v) > 0 {
                h.div(&xv)
            } else {
                h.clone()
            }
        })
        .collect();
    let a = numerator(nvars, &minimalize(plus));
    let b = numerator(nvars, &minimalize(colon));
    let mut tb = vec![0i128];
    tb.extend(b);
    poly_add(&a, &tb)
}

/// `C(x, e)` as a polynomial in `x`, valid for negative `x`.
fn binom_poly(x: i128, e: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for k in 0..e as i128 {
        num *= x - k;
        den *= k + 1;
    }
    num / den
}

fn binom(n: i128, k: u32) -> i128 {
    if n < 0 {
        0
    } else {
        binom_poly(n, k)
    }
}

/// `h(i)` for the series `N(t) / (1 - t)^{m+1}`.
fn filtered_value(num: &[i128], m: usize, i: i128) -> i128 {
    num.iter()
        .enumerate()
        .filter(|(j, _)| (*j as i128) <= i)
        .map(|(j, &c)| c * binom(i - j as i128 + m as i128, m as u32))
        .sum()
}

fn hilbert_from_numerator(num: &[i128], m: usize) -> Result<HilbertData> {
    if num.iter().all(|&c| c == 0) {
        return Ok(HilbertData {
            binomial_coeffs: Vec::new(),
            degree: None,
            multiplicity: 0,
            stability_index: 0,
        });
    }
    // cancel factors (1 - t)
    let mut q = num.to_vec();
    let mut k = 0usize;
    while q.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - t): q = (1 - t) r  =>  r_j = Σ_{i ≤ j} q_i
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0i128;
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = r;
        k += 1;
    }
    let e = m - k;
    let poly_at = |i: i128| -> i128 {
        q.iter()
            .enumerate()
            .map(|(j, &c)| c * binom_poly(i - j as i128 + e as i128, e as u32))
            .sum()
    };
    let mut values: Vec<i128> = (0..=e as i128).map(poly_at).collect();
    let mut coeffs = Vec::with_capacity(e + 1);
    for _ in 0..=e {
        coeffs.push(values[0]);
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let coeffs: Vec<i64> = coeffs
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::InvalidInput(alloc::format!("Hilbert coefficient {c} out of range"))))
        .collect::<Result<_>>()?;
    let multiplicity = u64::try_from(coeffs[e])
        .map_err(|_| Error::InvalidInput(alloc::format!("non-positive leading Hilbert coefficient {}", coeffs[e])))?;
    let bound = (q.len() as i128 - 1 - e as i128).max(0);
    let mut stab = bound;
    while stab > 0 && filtered_value(num, m, stab - 1) == poly_at(stab - 1) {
        stab -= 1;
    }
    Ok(HilbertData {
        multiplicity,
        binomial_coeffs: coeffs,
        degree: Some(e),
        stability_index: stab as u64,
    })
}

/// Leading monomial ideal of `I` for degrevlex.
pub fn leading_ideal<R: CoeffRing>(ring: &R, nvars: usize, gens: &[Poly<R>], limits: &Limits) -> Result<MonomialIdeal> {
    let gb = ideal_gb(ring, nvars, gens, limits)?;
    Ok(MonomialIdeal::new(nvars, gb.leading_monomials()))
}

/// `h_I(i)` for an ideal given by generators.
pub fn hilbert_function<R: CoeffRing>(ring: &R, nvars: usize, gens: &[Poly<R>], i: u64, limits: &Limits) -> Result<u64> {
    Ok(leading_ideal(ring, nvars, gens, limits)?.hilbert_function(i))
}

/// Hilbert polynomial data of `S / I`.
pub fn hilbert_polynomial<R: CoeffRing>(ring: &R, nvars: usize, gens: &[Poly<R>], limits: &Limits) -> Result<HilbertData> {
    leading_ideal(ring, nvars, gens, limits)?.hilbert_polynomial()
}

/// `(dimension, multiplicity)`, with the dimension cross-checked against the
/// independent-set computation of the Krull dimension.
pub fn dim_and_mult<R: CoeffRing>(
    ring: &R,
    nvars: usize,
    gens: &[Poly<R>],
    limits: &Limits,
) -> Result<(Option<usize>, u64)> {
    let lead = leading_ideal(ring, nvars, gens, limits)?;
    let h = lead.hilbert_polynomial()?;
    let k = lead.krull_dim();
    if h.degree != k {
        return Err(Error::DimensionMismatch {
            hilbert: h.degree,
            krull: k,
        });
    }
    Ok((h.degree, h.multiplicity))
}
