#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weylstab_core::coeff::{CoeffRing, LocalRational, PrimeField, RationalField};
use weylstab_core::cpoly::Poly;
use weylstab_core::monomial::Monomial;
use weylstab_core::weyl::{WeylAlgebra, WeylElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn monomial(r: &mut ChaCha8Rng, nvars: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..nvars).map(|_| r.gen_range(0..=max_exp)).collect())
}

/// A small rational whose valuation is anywhere in `-2..=2`.
pub fn rational(r: &mut ChaCha8Rng, p: u64) -> LocalRational {
    let num: i64 = r.gen_range(-9..=9);
    let mut den: i64 = r.gen_range(1..=7);
    while den % p as i64 == 0 {
        den += 1;
    }
    let k = r.gen_range(-2..=2);
    LocalRational::with_p_power(k, num, den, p).unwrap()
}

pub fn integral(r: &mut ChaCha8Rng, p: u64) -> LocalRational {
    let c = rational(r, p);
    if c.is_integral() {
        c
    } else {
        c.shift(2)
    }
}

pub fn weyl_element(
    r: &mut ChaCha8Rng,
    alg: &WeylAlgebra<RationalField>,
    terms: usize,
    max_exp: u32,
) -> WeylElement<RationalField> {
    let p = alg.ring().prime();
    alg.from_terms((0..terms).map(|_| (monomial(r, alg.nvars(), max_exp), rational(r, p))))
}

pub fn residue_element(
    r: &mut ChaCha8Rng,
    alg: &WeylAlgebra<PrimeField>,
    terms: usize,
    max_exp: u32,
) -> WeylElement<PrimeField> {
    let ring = *alg.ring();
    alg.from_terms((0..terms).map(|_| (monomial(r, alg.nvars(), max_exp), ring.elem(r.gen_range(0..ring.prime() as i64)))))
}

pub fn fp_poly(r: &mut ChaCha8Rng, ring: PrimeField, nvars: usize, terms: usize, max_exp: u32) -> Poly<PrimeField> {
    Poly::from_terms(
        ring,
        nvars,
        (0..terms).map(|_| (monomial(r, nvars, max_exp), ring.elem(r.gen_range(1..ring.prime() as i64)))),
    )
}

/// All exponent vectors in `nvars` variables of total degree at most `deg`.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, deg, &mut out);
    out
}

/// Row echelon form over `Z_(p)`: pivots are chosen with least valuation,
/// so every elimination multiplier is integral.
pub struct DvrEchelon {
    rows: Vec<(usize, Vec<LocalRational>)>,
}

impl DvrEchelon {
    pub fn new(mut rows: Vec<Vec<LocalRational>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::new();
        for c in 0..ncols {
            let pick = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .min_by_key(|(_, r)| r[c].valuation())
                .map(|(i, _)| i);
            let Some(i) = pick else { continue };
            let pivot = rows.swap_remove(i);
            for r in rows.iter_mut() {
                if !r[c].is_zero() {
                    let f = r[c].div(&pivot[c]).unwrap();
                    for k in c..ncols {
                        r[k] = r[k].sub(&f.mul(&pivot[k]).unwrap()).unwrap();
                    }
                }
            }
            out.push((c, pivot));
        }
        DvrEchelon { rows: out }
    }

    /// Whether `v` is a `Z_(p)`-combination of the rows.
    pub fn contains(&self, v: &[LocalRational]) -> bool {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            for k in 0..*c {
                if !v[k].is_zero() {
                    return false;
                }
            }
            if v[*c].is_zero() {
                continue;
            }
            if v[*c].valuation() < row[*c].valuation() {
                return false;
            }
            let f = v[*c].div(&row[*c]).unwrap();
            for k in *c..v.len() {
                v[k] = v[k].sub(&f.mul(&row[k]).unwrap()).unwrap();
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Row space over `F_p` with `u64` arithmetic; rank and membership.
pub struct FpSpan {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            out = out * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    out
}

impl FpSpan {
    pub fn new(p: u64) -> Self {
        FpSpan { p, rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (c, row) in &self.rows {
            let f = v[*c];
            if f != 0 {
                for k in 0..v.len() {
                    v[k] = (v[k] + self.p - f * row[k] % self.p) % self.p;
                }
            }
        }
        v
    }

    /// Adds a row; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = pow_mod(v[c], self.p - 2, self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for k in 0..row.len() {
                    row[k] = (row[k] + self.p - f * v[k] % self.p) % self.p;
                }
            }
        }
        self.rows.push((c, v));
        true
    }

    pub fn contains(&self, v: Vec<u64>) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each row of the reduced echelon form.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }
}
