//! A Buchberger engine for left submodules of free modules over commutative
//! polynomial rings and Weyl-type algebras, with field or `Z_(p)`
//! coefficients.
//!
//! Vectors are lists of `(Term, coefficient)` sorted by decreasing term.
//! Variables are laid out as `[x_1..x_d, η_1..η_d, extra..]`; under the Weyl
//! rule `η_i x_i = x_i η_i + q` and the extra variables are central.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, Term, TermOrder};

pub type Vector<E> = Vec<(Term, E)>;

/// Multiplication rule for monomials.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule<E> {
    Commutative,
    /// `d` pairs of Weyl variables with `[η_i, x_i] = q`.
    Weyl { d: usize, q: E },
}

/// Caps on a Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Limits {
    /// Maximum number of S-pair reductions.
    pub max_gb_steps: u64,
    /// Maximum total degree of a basis element.
    pub max_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gb_steps: 200_000,
            max_degree: 96,
        }
    }
}

/// Context for arithmetic and Gröbner computations in one algebra.
#[derive(Debug, Clone)]
pub struct Engine<R: CoeffRing> {
    pub ring: R,
    pub order: TermOrder,
    pub rule: Rule<R::Elem>,
    pub nvars: usize,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `x^α η^β · x^γ η^δ` in standard form, using
/// `η^b x^a = Σ_k C(b,k) C(a,k) k! q^k x^{a-k} η^{b-k}` per variable pair.
/// Variables past the first `2d` are central.
pub fn weyl_monomial_product<R: CoeffRing>(
    ring: &R,
    d: usize,
    q: &R::Elem,
    a: &Monomial,
    b: &Monomial,
) -> Vec<(Monomial, R::Elem)> {
    let mut acc: Vec<(Vec<u32>, R::Elem)> = alloc::vec![(a.mul(b).exps().to_vec(), ring.one())];
    for i in 0..d {
        let eta = a.exp(d + i);
        let x = b.exp(i);
        let kmax = eta.min(x);
        if kmax == 0 {
            continue;
        }
        let mut coeffs = Vec::with_capacity(kmax as usize + 1);
        let mut qk = ring.one();
        for k in 0..=kmax {
            let c = binomial(eta, k) * binomial(x, k) * factorial(k);
            coeffs.push(ring.mul(&ring.from_int(&c), &qk));
            qk = ring.mul(&qk, q);
        }
        let mut next = Vec::with_capacity(acc.len() * coeffs.len());
        for (exps, c) in &acc {
            for (k, ck) in coeffs.iter().enumerate() {
                if ring.is_zero(ck) {
                    continue;
                }
                let mut e = exps.clone();
                e[i] -= k as u32;
                e[d + i] -= k as u32;
                next.push((e, ring.mul(c, ck)));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(e, c)| (Monomial::new(e), c)).collect()
}

impl<R: CoeffRing> Engine<R> {
    pub fn new(ring: R, order: TermOrder, rule: Rule<R::Elem>, nvars: usize) -> Self {
        Engine {
            ring,
            order,
            rule,
            nvars,
        }
    }

    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Sorts by decreasing term, merges equal terms and drops zeros.
    pub fn normalize(&self, mut terms: Vec<(Term, R::Elem)>) -> Vector<R::Elem> {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vector<R::Elem> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => {
                    *lc = self.ring.add(lc, &c);
                }
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !self.ring.is_zero(c));
        out
    }

    /// Product of two monomials under the multiplication rule.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, R::Elem)> {
        match &self.rule {
            Rule::Commutative => alloc::vec![(a.mul(b), self.ring.one())],
            Rule::Weyl { d, q } => weyl_monomial_product(&self.ring, *d, q, a, b),
        }
    }

    /// `c * m * v` (left multiplication).
    pub fn mul_term(&self, c: &R::Elem, m: &Monomial, v: &[(Term, R::Elem)]) -> Vector<R::Elem> {
        match self.rule {
            Rule::Commutative => v
                .iter()
                .map(|(t, k)| (Term::new(t.pos, m.mul(&t.mono)), self.ring.mul(c, k)))
                .filter(|(_, k)| !self.ring.is_zero(k))
                .collect(),
            Rule::Weyl { .. } => {
                let mut out = Vec::new();
                for (t, k) in v {
                    let ck = self.ring.mul(c, k);
                    if self.ring.is_zero(&ck) {
                        continue;
                    }
                    for (mono, e) in self.monomial_product(m, &t.mono) {
                        out.push((Term::new(t.pos, mono), self.ring.mul(&ck, &e)));
                    }
                }
                self.normalize(out)
            }
        }
    }

    pub fn scale(&self, c: &R::Elem, v: &[(Term, R::Elem)]) -> Vector<R::Elem> {
        v.iter()
            .map(|(t, k)| (t.clone(), self.ring.mul(c, k)))
            .filter(|(_, k)| !self.ring.is_zero(k))
            .collect()
    }

    /// `a + b` by merging.
    pub fn add(&self, a: &[(Term, R::Elem)], b: &[(Term, R::Elem)]) -> Vector<R::Elem> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.ring.add(&a[i].1, &b[j].1);
                    if !self.ring.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    pub fn sub(&self, a: &[(Term, R::Elem)], b: &[(Term, R::Elem)]) -> Vector<R::Elem> {
        let nb: Vector<R::Elem> = b.iter().map(|(t, c)| (t.clone(), self.ring.neg(c))).collect();
        self.add(a, &nb)
    }

    /// Left product of a polynomial (rank-one vector) with a vector.
    pub fn mul_poly(&self, f: &[(Term, R::Elem)], v: &[(Term, R::Elem)]) -> Vector<R::Elem> {
        let mut out = Vec::new();
        for (t, c) in f {
            out = self.add(&out, &self.mul_term(c, &t.mono, v));
        }
        out
    }

    /// A basis element able to cancel the term `(t, c)`, with the quotient.
    fn find_reducer(
        &self,
        t: &Term,
        c: &R::Elem,
        basis: &[Vector<R::Elem>],
        skip: Option<usize>,
    ) -> Option<(usize, R::Elem)> {
        for (idx, g) in basis.iter().enumerate() {
            if Some(idx) == skip {
                continue;
            }
            let (gt, gc) = match g.first() {
                Some(x) => x,
                None => continue,
            };
            if gt.pos != t.pos || !gt.mono.divides(&t.mono) {
                continue;
            }
            if let Some(q) = self.ring.checked_div(c, gc) {
                return Some((idx, q));
            }
        }
        None
    }

    /// Reduces leading terms until the lead is irreducible.
    pub fn reduce_top(&self, mut v: Vector<R::Elem>, basis: &[Vector<R::Elem>]) -> Vector<R::Elem> {
        while let Some((t, c)) = v.first() {
            match self.find_reducer(t, c, basis, None) {
                Some((idx, q)) => {
                    let g = &basis[idx];
                    let m = t.mono.div(&g[0].0.mono);
                    v = self.sub(&v, &self.mul_term(&q, &m, g));
                }
                None => break,
            }
        }
        v
    }

    /// Full reduction. Irreducible terms are kept, and over `Z_(p)` each
    /// coefficient is replaced by its canonical remainder.
    pub fn reduce_full(
        &self,
        v: Vector<R::Elem>,
        basis: &[Vector<R::Elem>],
        skip: Option<usize>,
    ) -> Vector<R::Elem> {
        let mut rest = v;
        let mut done: Vector<R::Elem> = Vec::new();
        while let Some((t, c)) = rest.first().cloned() {
            if let Some((idx, q)) = self.find_reducer(&t, &c, basis, skip) {
                let g = &basis[idx];
                let m = t.mono.div(&g[0].0.mono);
                rest = self.sub(&rest, &self.mul_term(&q, &m, g));
                continue;
            }
            // partial reduction towards the canonical remainder
            let mut reduced = false;
            for (idx, g) in basis.iter().enumerate() {
                if Some(idx) == skip {
                    continue;
                }
                let (gt, gc) = &g[0];
                if gt.pos != t.pos || !gt.mono.divides(&t.mono) {
                    continue;
                }
                let (q, _) = self.ring.div_rem(&c, gc);
                if !self.ring.is_zero(&q) {
                    let m = t.mono.div(&gt.mono);
                    rest = self.sub(&rest, &self.mul_term(&q, &m, g));
                    reduced = true;
                    break;
                }
            }
            if reduced {
                continue;
            }
            done.push(rest.remove(0));
        }
        done
    }

    /// True when `v` lies in the module generated by the (strong) Gröbner basis.
    pub fn is_member(&self, v: Vector<R::Elem>, basis: &[Vector<R::Elem>]) -> bool {
        self.reduce_top(v, basis).is_empty()
    }

    fn lcm_coeff(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        let (s, _) = self.ring.lcm_cofactors(a, b);
        self.ring.mul(&s, a)
    }

    fn spoly(&self, f: &Vector<R::Elem>, g: &Vector<R::Elem>) -> Vector<R::Elem> {
        let (ft, fc) = &f[0];
        let (gt, gc) = &g[0];
        let l = ft.mono.lcm(&gt.mono);
        let (s, t) = self.ring.lcm_cofactors(fc, gc);
        let a = self.mul_term(&s, &l.div(&ft.mono), f);
        let b = self.mul_term(&t, &l.div(&gt.mono), g);
        self.sub(&a, &b)
    }

    /// Computes a reduced (strong, over `Z_(p)`) Gröbner basis of the
    /// submodule generated by `gens`, sorted by decreasing leading term.
    pub fn groebner(&self, gens: Vec<Vector<R::Elem>>, limits: &Limits) -> Result<Vec<Vector<R::Elem>>> {
        let commutative = matches!(self.rule, Rule::Commutative);
        let rank_one = gens.iter().flatten().all(|(t, _)| t.pos == 0);
        let product_criterion = commutative && rank_one && self.ring.is_field();

        let mut basis: Vec<Vector<R::Elem>> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut steps: u64 = 0;

        let push = |h: Vector<R::Elem>, basis: &mut Vec<Vector<R::Elem>>, pairs: &mut Vec<(usize, usize)>| -> Result<()> {
            let lead = &h[0].0;
            if lead.mono.degree() > limits.max_degree {
                return Err(Error::ResourceExceeded {
                    resource: "degree",
                    limit: limits.max_degree,
                });
            }
            let idx = basis.len();
            for (j, g) in basis.iter().enumerate() {
                if g[0].0.pos == lead.pos {
                    pairs.push((j, idx));
                }
            }
            basis.push(h);
            Ok(())
        };

        for g in gens {
            let g = self.normalize(g);
            let h = self.reduce_top(g, &basis);
            if !h.is_empty() {
                push(h, &mut basis, &mut pairs)?;
            }
        }

        while !pairs.is_empty() {
            // normal selection strategy: smallest lcm first, ties by index
            let mut best = 0;
            let mut best_term = self.pair_lcm(&basis, pairs[0]);
            for (k, &pr) in pairs.iter().enumerate().skip(1) {
                let t = self.pair_lcm(&basis, pr);
                let ord = self.order.cmp(&t, &best_term).then_with(|| pairs[best].cmp(&pr));
                if ord == Ordering::Less {
                    best = k;
                    best_term = t;
                }
            }
            let (i, j) = pairs.swap_remove(best);
            let (fi, fj) = (&basis[i], &basis[j]);

            if product_criterion
                && fi[0].0.mono.is_coprime(&fj[0].0.mono)
            {
                continue;
            }
            if self.chain_criterion(&basis, &pairs, i, j, &best_term) {
                continue;
            }

            steps += 1;
            if steps > limits.max_gb_steps {
                return Err(Error::ResourceExceeded {
                    resource: "gb_steps",
                    limit: limits.max_gb_steps,
                });
            }
            let s = self.spoly(fi, fj);
            let h = self.reduce_top(s, &basis);
            if !h.is_empty() {
                push(h, &mut basis, &mut pairs)?;
            }
        }
        Ok(self.interreduce(basis))
    }

    fn pair_lcm(&self, basis: &[Vector<R::Elem>], (i, j): (usize, usize)) -> Term {
        let a = &basis[i][0].0;
        let b = &basis[j][0].0;
        Term::new(a.pos, a.mono.lcm(&b.mono))
    }

    fn chain_criterion(
        &self,
        basis: &[Vector<R::Elem>],
        pending: &[(usize, usize)],
        i: usize,
        j: usize,
        l: &Term,
    ) -> bool {
        let lc = self.lcm_coeff(&basis[i][0].1, &basis[j][0].1);
        let has = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            pending.iter().any(|&p| p == key)
        };
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (gt, gc) = &g[0];
            if gt.pos != l.pos || !gt.mono.divides(&l.mono) {
                continue;
            }
            if self.ring.checked_div(&lc, gc).is_none() {
                continue;
            }
            if !has(i, k) && !has(j, k) {
                return true;
            }
        }
        false
    }

    /// Minimalises, tail-reduces and normalises a Gröbner basis.
    pub fn interreduce(&self, basis: Vec<Vector<R::Elem>>) -> Vec<Vector<R::Elem>> {
        let basis: Vec<Vector<R::Elem>> = basis.into_iter().filter(|g| !g.is_empty()).collect();
        let mut keep: Vec<Vector<R::Elem>> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            let (t, c) = &g[0];
            let redundant = basis.iter().enumerate().any(|(jdx, h)| {
                if jdx == idx {
                    return false;
                }
                let (ht, hc) = &h[0];
                if ht.pos != t.pos || !ht.mono.divides(&t.mono) || self.ring.checked_div(c, hc).is_none() {
                    return false;
                }
                // equal leads up to a unit: keep the earliest
                let mutual = ht.mono == t.mono && self.ring.checked_div(hc, c).is_some();
                !mutual || jdx < idx
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for idx in 0..keep.len() {
            let g = self.reduce_full(keep[idx].clone(), &keep, Some(idx));
            let u = self.ring.normalizing_unit(&g[0].1);
            out.push(self.scale(&u, &g));
        }
        out.sort_by(|a, b| self.order.cmp(&b[0].0, &a[0].0));
        out
    }

    /// Generators of the saturation `(M ⊗ Q) ∩ free` of the submodule `M`
    /// generated by `gens` in a free module of rank `rank`, computed as the
    /// `T`-free part of a Gröbner basis of `M + (pT - 1)·free` for an order
    /// eliminating the new central variable `T`.
    pub fn saturate_p(
        &self,
        gens: &[Vector<R::Elem>],
        rank: usize,
        limits: &Limits,
    ) -> Result<Vec<Vector<R::Elem>>> {
        let t = self.nvars;
        let wide = Engine::new(
            self.ring.clone(),
            TermOrder::new(
                MonomialOrder::Elimination {
                    vars: alloc::vec![t],
                    then: alloc::boxed::Box::new(self.order.monomial.widen(1)),
                },
                self.order.rule,
            ),
            self.rule.clone(),
            self.nvars + 1,
        );
        let mut all: Vec<Vector<R::Elem>> = gens
            .iter()
            .map(|g| g.iter().map(|(tm, c)| (Term::new(tm.pos, tm.mono.extend(1)), c.clone())).collect())
            .collect();
        let p = self.ring.from_i64(self.ring.prime() as i64);
        for j in 0..rank {
            all.push(wide.normalize(alloc::vec![
                (Term::new(j, Monomial::var(t + 1, t)), p.clone()),
                (Term::new(j, Monomial::one(t + 1)), self.ring.neg(&self.ring.one())),
            ]));
        }
        let gb = wide.groebner(all, limits)?;
        Ok(gb
            .into_iter()
            .filter(|g| g.iter().all(|(tm, _)| tm.mono.exp(t) == 0))
            .map(|g| self.normalize(g.into_iter().map(|(tm, c)| (Term::new(tm.pos, tm.mono.truncate(t)), c)).collect()))
            .collect())
    }

    /// Normal form of `v` modulo a Gröbner basis.
    pub fn normal_form(&self, v: Vector<R::Elem>, basis: &[Vector<R::Elem>]) -> Vector<R::Elem> {
        self.reduce_full(self.normalize(v), basis, None)
    }
}
