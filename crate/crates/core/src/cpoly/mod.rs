//! Commutative polynomials over `F_p` and `Z_(p)`: Gröbner bases,
//! submodule operations, annihilators, radicals, Krull dimension and
//! `p`-torsion exponents.

mod radical;
mod torsion;

pub use radical::{divide_exact, poly_gcd, principal_radical, radical};
pub use torsion::torsion_exponent;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{CoeffRing, LocalIntegers, PrimeField};
use crate::error::{Error, Result};
use crate::gb::{Engine, Limits, Rule, Vector};
use crate::monomial::{Monomial, MonomialOrder, Term, TermOrder};

/// A commutative polynomial, stored as a map from monomials to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoeffRing> Poly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        Poly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Poly::zero(ring, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Poly::constant(ring, nvars, c)
    }

    pub fn var(ring: R, nvars: usize, i: usize) -> Self {
        let c = ring.one();
        Poly::monomial(ring, c, Monomial::var(nvars, i))
    }

    pub fn monomial(ring: R, c: R::Elem, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(ring, nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Poly::zero(ring, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing degrevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> Option<u64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    /// The leading term for a monomial order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &R::Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// True when every term has the same weighted degree.
    pub fn is_homogeneous(&self, w: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        match degs.next() {
            Some(d0) => degs.all(|d| d == d0),
            None => true,
        }
    }

    /// The top weighted-degree part.
    pub fn initial_form(&self, w: &[u32]) -> Self {
        let top = match self.weighted_degree(w) {
            Some(t) => t,
            None => return self.clone(),
        };
        Poly::from_terms(
            self.ring.clone(),
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == top)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly::from_terms(
            self.ring.clone(),
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Poly::from_terms(
            self.ring.clone(),
            self.nvars,
            self.terms.iter().map(|(m, k)| (m.clone(), self.ring.mul(c, k))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            for (n, k) in &other.terms {
                out.add_term(m.mul(n), self.ring.mul(c, k));
            }
        }
        out
    }

    pub fn mul_monomial(&self, c: &R::Elem, m: &Monomial) -> Self {
        Poly::from_terms(
            self.ring.clone(),
            self.nvars,
            self.terms.iter().map(|(n, k)| (m.mul(n), self.ring.mul(c, k))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::one(self.ring.clone(), self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), self.ring.mul(&self.ring.from_i64(e as i64), c));
        }
        out
    }

    /// Appends `k` unused variables.
    pub fn extend(&self, k: usize) -> Self {
        Poly::from_terms(
            self.ring.clone(),
            self.nvars + k,
            self.terms.iter().map(|(m, c)| (m.extend(k), c.clone())),
        )
    }

    /// Drops trailing variables (which must not occur).
    pub fn truncate(&self, k: usize) -> Self {
        Poly::from_terms(
            self.ring.clone(),
            k,
            self.terms.iter().map(|(m, c)| (m.truncate(k), c.clone())),
        )
    }

    /// Image under a coefficient map.
    pub fn map_coeffs<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let mut out = Poly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The terms as a vector component at position `pos`.
    pub fn to_terms(&self, pos: usize) -> Vector<R::Elem> {
        self.terms
            .iter()
            .map(|(m, c)| (Term::new(pos, m.clone()), c.clone()))
            .collect()
    }

    /// Scales so that the leading coefficient (degrevlex) is canonical.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&self.ring.normalizing_unit(c)),
            None => self.clone(),
        }
    }
}

/// Writes `c1*m1 + c2*m2 - ...` with unit coefficients suppressed.
pub(crate) fn write_terms<'a, E: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Monomial, &'a E)>,
    names: &[String],
) -> fmt::Result {
    let mut empty = true;
    for (idx, (m, c)) in terms.enumerate() {
        empty = false;
        let text = alloc::format!("{c}");
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.as_str()),
        };
        if idx == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let mono = format_monomial(m, names);
        match (body == "1", mono.is_empty()) {
            (true, true) => f.write_str("1")?,
            (true, false) => f.write_str(&mono)?,
            (false, true) => f.write_str(body)?,
            (false, false) => write!(f, "{body}*{mono}")?,
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

/// `X1*Y1^2` style text for a monomial.
pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(alloc::format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Default variable names: `X1..Xd, Y1..Yd` for an even count, else `t1..tm`.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars % 2 == 0 && nvars > 0 {
        let d = nvars / 2;
        (1..=d)
            .map(|i| alloc::format!("X{i}"))
            .chain((1..=d).map(|i| alloc::format!("Y{i}")))
            .collect()
    } else {
        (1..=nvars).map(|i| alloc::format!("t{i}")).collect()
    }
}

impl<R: CoeffRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), &default_names(self.nvars))
    }
}

impl<R: CoeffRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A submodule of a free module of rank `rank`, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodulePresentation<R: CoeffRing> {
    pub ring: R,
    pub nvars: usize,
    pub rank: usize,
    pub gens: Vec<Vec<Poly<R>>>,
}

impl<R: CoeffRing> SubmodulePresentation<R> {
    pub fn new(ring: R, nvars: usize, rank: usize, gens: Vec<Vec<Poly<R>>>) -> Result<Self> {
        for g in &gens {
            if g.len() != rank || g.iter().any(|p| p.nvars() != nvars) {
                return Err(Error::InvalidInput(String::from("generator of wrong shape")));
            }
        }
        Ok(SubmodulePresentation { ring, nvars, rank, gens })
    }

    /// The ideal generated by `gens` as a rank-one submodule.
    pub fn ideal(ring: R, nvars: usize, gens: Vec<Poly<R>>) -> Self {
        SubmodulePresentation {
            ring,
            nvars,
            rank: 1,
            gens: gens.into_iter().map(|g| vec![g]).collect(),
        }
    }

    fn vectors(&self) -> Vec<Vector<R::Elem>> {
        self.gens
            .iter()
            .map(|g| g.iter().enumerate().flat_map(|(i, p)| p.to_terms(i)).collect())
            .collect()
    }
}

/// A reduced Gröbner basis of a submodule.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<R: CoeffRing> {
    pub engine: Engine<R>,
    pub rank: usize,
    pub elements: Vec<Vector<R::Elem>>,
}

impl<R: CoeffRing> PartialEq for GroebnerBasis<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.engine.order == other.engine.order && self.elements == other.elements
    }
}

impl<R: CoeffRing> GroebnerBasis<R> {
    pub fn contains(&self, v: &[Poly<R>]) -> bool {
        let vec = self
            .engine
            .normalize(v.iter().enumerate().flat_map(|(i, p)| p.to_terms(i)).collect());
        self.engine.is_member(vec, &self.elements)
    }

    pub fn contains_poly(&self, f: &Poly<R>) -> bool {
        self.contains(core::slice::from_ref(f))
    }

    /// Remainder of `v` on division by the basis.
    pub fn normal_form(&self, v: &[Poly<R>]) -> Vec<Poly<R>> {
        let vec = v.iter().enumerate().flat_map(|(i, p)| p.to_terms(i)).collect();
        let r = self.engine.normal_form(vec, &self.elements);
        vector_to_polys(&self.engine.ring, self.engine.nvars, self.rank, &r)
    }

    /// Leading terms `(position, monomial)`.
    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements.iter().map(|g| g[0].0.clone()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g[0].0.mono.clone()).collect()
    }

    /// Basis elements as vectors of polynomials.
    pub fn vectors(&self) -> Vec<Vec<Poly<R>>> {
        self.elements
            .iter()
            .map(|g| vector_to_polys(&self.engine.ring, self.engine.nvars, self.rank, g))
            .collect()
    }

    /// Basis elements of a rank-one basis.
    pub fn polys(&self) -> Vec<Poly<R>> {
        self.vectors().into_iter().map(|mut v| v.remove(0)).collect()
    }

    /// True when the basis generates the whole free module.
    pub fn is_whole(&self) -> bool {
        (0..self.rank).all(|i| {
            self.elements.iter().any(|g| {
                let (t, c) = &g[0];
                t.pos == i && t.mono.is_one() && self.engine.ring.checked_div(&self.engine.ring.one(), c).is_some()
            })
        })
    }
}

/// Splits a sorted vector into per-position polynomials.
pub fn vector_to_polys<R: CoeffRing>(ring: &R, nvars: usize, rank: usize, v: &[(Term, R::Elem)]) -> Vec<Poly<R>> {
    let mut out: Vec<Poly<R>> = (0..rank).map(|_| Poly::zero(ring.clone(), nvars)).collect();
    for (t, c) in v {
        out[t.pos].add_term(t.mono.clone(), c.clone());
    }
    out
}

/// Gröbner basis of a submodule for any term order.
pub fn groebner<R: CoeffRing>(
    pres: &SubmodulePresentation<R>,
    order: TermOrder,
    limits: &Limits,
) -> Result<GroebnerBasis<R>> {
    let engine = Engine::new(pres.ring.clone(), order, Rule::Commutative, pres.nvars);
    let gens = pres.vectors().into_iter().map(|v| engine.normalize(v)).collect();
    let elements = engine.groebner(gens, limits)?;
    Ok(GroebnerBasis {
        engine,
        rank: pres.rank,
        elements,
    })
}

/// Reduced Gröbner basis over `F_p` (term over position).
pub fn gb_field(
    pres: &SubmodulePresentation<PrimeField>,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis<PrimeField>> {
    groebner(pres, TermOrder::top(order.clone()), limits)
}

/// Strong Gröbner basis over `Z_(p)` (term over position).
pub fn strong_gb_local(
    pres: &SubmodulePresentation<LocalIntegers>,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis<LocalIntegers>> {
    for g in &pres.gens {
        for p in g {
            if p.terms().any(|(_, c)| !c.is_integral()) {
                return Err(Error::NegativeValuation);
            }
        }
    }
    groebner(pres, TermOrder::top(order.clone()), limits)
}

/// Reduced Gröbner basis of an ideal for degrevlex.
pub fn ideal_gb<R: CoeffRing>(ring: &R, nvars: usize, gens: &[Poly<R>], limits: &Limits) -> Result<GroebnerBasis<R>> {
    groebner(
        &SubmodulePresentation::ideal(ring.clone(), nvars, gens.to_vec()),
        TermOrder::top(MonomialOrder::Degrevlex),
        limits,
    )
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn intersection<R: CoeffRing>(
    ring: &R,
    nvars: usize,
    i: &[Poly<R>],
    j: &[Poly<R>],
    limits: &Limits,
) -> Result<Vec<Poly<R>>> {
    let t = Poly::var(ring.clone(), nvars + 1, nvars);
    let one_minus_t = Poly::one(ring.clone(), nvars + 1).sub(&t);
    let mut gens: Vec<Poly<R>> = i.iter().map(|f| f.extend(1).mul(&t)).collect();
    gens.extend(j.iter().map(|g| g.extend(1).mul(&one_minus_t)));
    let order = MonomialOrder::Elimination {
        vars: vec![nvars],
        then: alloc::boxed::Box::new(MonomialOrder::Degrevlex),
    };
    let gb = groebner(
        &SubmodulePresentation::ideal(ring.clone(), nvars + 1, gens),
        TermOrder::top(order),
        limits,
    )?;
    let kept: Vec<Poly<R>> = gb
        .polys()
        .into_iter()
        .filter(|f| f.terms().all(|(m, _)| m.exp(nvars) == 0))
        .map(|f| f.truncate(nvars))
        .collect();
    Ok(ideal_gb(ring, nvars, &kept, limits)?.polys())
}

/// The ideal `{f : f·v ∈ N}`.
pub fn colon_vector<R: CoeffRing>(
    pres: &SubmodulePresentation<R>,
    v: &[Poly<R>],
    limits: &Limits,
) -> Result<Vec<Poly<R>>> {
    let r = pres.rank;
    let zero = Poly::zero(pres.ring.clone(), pres.nvars);
    let mut gens: Vec<Vec<Poly<R>>> = pres
        .gens
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.push(zero.clone());
            g
        })
        .collect();
    let mut last = v.to_vec();
    last.push(Poly::one(pres.ring.clone(), pres.nvars));
    gens.push(last);
    let ext = SubmodulePresentation::new(pres.ring.clone(), pres.nvars, r + 1, gens)?;
    let gb = groebner(&ext, TermOrder::pot(MonomialOrder::Degrevlex), limits)?;
    let kept: Vec<Poly<R>> = gb
        .vectors()
        .into_iter()
        .filter(|g| g[..r].iter().all(|p| p.is_zero()))
        .map(|mut g| g.remove(r))
        .collect();
    Ok(ideal_gb(&pres.ring, pres.nvars, &kept, limits)?.polys())
}

/// `Ann(F^r / N) = ∩_i (N : e_i)`, as a reduced degrevlex basis.
pub fn annihilator<R: CoeffRing>(pres: &SubmodulePresentation<R>, limits: &Limits) -> Result<Vec<Poly<R>>> {
    let nv = pres.nvars;
    if pres.rank == 1 {
        let gens: Vec<Poly<R>> = pres.gens.iter().map(|g| g[0].clone()).collect();
        return Ok(ideal_gb(&pres.ring, nv, &gens, limits)?.polys());
    }
    let mut acc: Option<Vec<Poly<R>>> = None;
    for i in 0..pres.rank {
        let e: Vec<Poly<R>> = (0..pres.rank)
            .map(|j| {
                if j == i {
                    Poly::one(pres.ring.clone(), nv)
                } else {
                    Poly::zero(pres.ring.clone(), nv)
                }
            })
            .collect();
        let c = colon_vector(pres, &e, limits)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => intersection(&pres.ring, nv, &prev, &c, limits)?,
        });
    }
    Ok(acc.unwrap_or_default())
}

/// Dimension of `V(I)` from the leading monomials of a Gröbner basis for a
/// degree-compatible order: the largest set of variables containing no
/// leading-monomial support. `None` for the unit ideal.
pub fn krull_dim(leading: &[Monomial], nvars: usize) -> Option<usize> {
    if leading.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for subset in 0u64..(1u64 << nvars) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Krull dimension of an ideal given by generators.
pub fn ideal_krull_dim<R: CoeffRing>(ring: &R, nvars: usize, gens: &[Poly<R>], limits: &Limits) -> Result<Option<usize>> {
    let gb = ideal_gb(ring, nvars, gens, limits)?;
    Ok(krull_dim(&gb.leading_monomials(), nvars))
}
