//! Normal-form arithmetic in the deformed Weyl algebras `A_{d,n}`.
//!
//! Elements are stored in standard form `Σ c x^α η^β` with every `x` to the
//! left of every `η`, where `η_i = p^n ∂_i` and `[η_i, x_j] = p^n δ_ij`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{CoeffRing, CoefficientMode, LocalIntegers, PrimeField, RationalField, Valuation};
use crate::cpoly::{write_terms, Poly};
use crate::error::{Error, Result};
use crate::gb::{weyl_monomial_product, Engine, Rule, Vector};
use crate::monomial::{Monomial, MonomialOrder, Term, TermOrder};

/// Exponents beyond this raise [`Error::ResourceExceeded`].
pub const MAX_EXPONENT: u64 = 1 << 31;
/// Products with more terms than this raise [`Error::ResourceExceeded`].
pub const MAX_TERMS: u64 = 1 << 20;

/// Which algebra an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraDescriptor {
    pub d: usize,
    pub n: u32,
    pub prime: u64,
    pub coefficients: CoefficientMode,
}

impl AlgebraDescriptor {
    pub fn new(d: usize, n: u32, prime: u64, coefficients: CoefficientMode) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput(String::from("d must be at least 1")));
        }
        if !crate::coeff::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(AlgebraDescriptor {
            d,
            n,
            prime,
            coefficients,
        })
    }
}

/// Grading used for degrees and symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grading {
    /// Total degree `|α| + |β|`.
    Bernstein,
    /// Degree `|β|` in the derivations.
    Order,
}

impl Grading {
    pub fn weights(self, d: usize) -> Vec<u32> {
        match self {
            Grading::Bernstein => alloc::vec![1; 2 * d],
            Grading::Order => {
                let mut w = alloc::vec![0; d];
                w.extend(core::iter::repeat(1).take(d));
                w
            }
        }
    }

    /// The weighted order refined by degrevlex.
    pub fn order(self, d: usize) -> MonomialOrder {
        MonomialOrder::Weighted(self.weights(d))
    }
}

/// A deformed Weyl algebra over a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylAlgebra<R: CoeffRing> {
    desc: AlgebraDescriptor,
    ring: R,
    q: R::Elem,
}

impl WeylAlgebra<RationalField> {
    /// `A_{d,n}` over `Q` with the `p`-adic valuation.
    pub fn local(d: usize, n: u32, p: u64) -> Result<Self> {
        let desc = AlgebraDescriptor::new(d, n, p, CoefficientMode::LocalField)?;
        let ring = RationalField::new(p)?;
        let q = ring.p_power(n as i64);
        Ok(WeylAlgebra { desc, ring, q })
    }
}

impl WeylAlgebra<LocalIntegers> {
    /// The integral form `A_{d,n}(Z_(p))`.
    pub fn integral(d: usize, n: u32, p: u64) -> Result<Self> {
        let desc = AlgebraDescriptor::new(d, n, p, CoefficientMode::LocalField)?;
        let ring = LocalIntegers::new(p)?;
        let q = ring.p_power(n as i64);
        Ok(WeylAlgebra { desc, ring, q })
    }
}

impl WeylAlgebra<PrimeField> {
    /// The slice `A_{d,n} / p`: the Weyl algebra over `F_p` for `n = 0`,
    /// a commutative polynomial ring for `n > 0`.
    pub fn residue(d: usize, n: u32, p: u64) -> Result<Self> {
        let desc = AlgebraDescriptor::new(d, n, p, CoefficientMode::ResidueField)?;
        let ring = PrimeField::new(p)?;
        let q = if n == 0 { ring.elem(1) } else { ring.elem(0) };
        Ok(WeylAlgebra { desc, ring, q })
    }
}

impl<R: CoeffRing> WeylAlgebra<R> {
    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.desc
    }

    pub fn d(&self) -> usize {
        self.desc.d
    }

    pub fn level(&self) -> u32 {
        self.desc.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// The commutator `[η_i, x_i]`.
    pub fn q(&self) -> &R::Elem {
        &self.q
    }

    pub fn nvars(&self) -> usize {
        2 * self.desc.d
    }

    pub fn is_commutative(&self) -> bool {
        self.ring.is_zero(&self.q)
    }

    pub fn rule(&self) -> Rule<R::Elem> {
        if self.is_commutative() {
            Rule::Commutative
        } else {
            Rule::Weyl {
                d: self.desc.d,
                q: self.q.clone(),
            }
        }
    }

    pub fn engine(&self, order: TermOrder) -> Engine<R> {
        Engine::new(self.ring.clone(), order, self.rule(), self.nvars())
    }

    pub fn zero(&self) -> WeylElement<R> {
        WeylElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: R::Elem) -> WeylElement<R> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn one(&self) -> WeylElement<R> {
        self.constant(self.ring.one())
    }

    pub fn from_i64(&self, n: i64) -> WeylElement<R> {
        self.constant(self.ring.from_i64(n))
    }

    /// `x_i` (0-based).
    pub fn x(&self, i: usize) -> Result<WeylElement<R>> {
        self.generator(i)
    }

    /// `η_i` (0-based).
    pub fn eta(&self, i: usize) -> Result<WeylElement<R>> {
        if i >= self.desc.d {
            return Err(Error::InvalidInput(format!("variable index {} exceeds d = {}", i + 1, self.desc.d)));
        }
        self.generator(self.desc.d + i)
    }

    fn generator(&self, v: usize) -> Result<WeylElement<R>> {
        if v >= self.nvars() {
            return Err(Error::InvalidInput(format!("variable index {} exceeds d = {}", v + 1, self.desc.d)));
        }
        Ok(self.term(self.ring.one(), Monomial::var(self.nvars(), v)))
    }

    /// `c x^α η^β` for the exponent vector `[α, β]`.
    pub fn term(&self, c: R::Elem, m: Monomial) -> WeylElement<R> {
        let mut out = self.zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> WeylElement<R> {
        let mut out = self.zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// The same algebra at another level.
    pub fn at_level(&self, n: u32) -> Self
    where
        Self: Clone,
    {
        let mut alg = self.clone();
        alg.desc.n = n;
        let p = self.ring.from_i64(self.desc.prime as i64);
        alg.q = if self.desc.coefficients == CoefficientMode::ResidueField {
            if n == 0 {
                self.ring.one()
            } else {
                self.ring.zero()
            }
        } else {
            self.ring.pow(&p, n)
        };
        alg
    }
}

/// An element of `A_{d,n}` in standard form.
#[derive(Clone, PartialEq)]
pub struct WeylElement<R: CoeffRing> {
    alg: WeylAlgebra<R>,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoeffRing> Eq for WeylElement<R> {}

impl<R: CoeffRing> Eq for WeylAlgebra<R> {}

/// A homogeneous commutative polynomial in `X_1..X_d, Y_1..Y_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSymbol<R: CoeffRing> {
    pub grading: Grading,
    pub poly: Poly<R>,
}

impl<R: CoeffRing> fmt::Display for GradedSymbol<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

impl<R: CoeffRing> WeylElement<R> {
    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        let ring = &self.alg.ring;
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = ring.add(old, &c);
                if ring.is_zero(&s) {
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

    pub fn algebra(&self) -> &WeylAlgebra<R> {
        &self.alg
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.alg.desc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(exponents [α, β], coefficient)` in decreasing degrevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.alg.ring.zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alg.desc == other.alg.desc && self.alg.q == other.alg.q {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let ring = &self.alg.ring;
        WeylElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = &self.alg.ring;
        let mut out = self.alg.zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), ring.mul(c, k));
        }
        out
    }

    /// The product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = &self.alg.ring;
        let d = self.alg.desc.d;
        let mut out = self.alg.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.exps().iter().zip(b.exps()).any(|(x, y)| *x as u64 + *y as u64 > MAX_EXPONENT) {
                    return Err(Error::ResourceExceeded {
                        resource: "exponent",
                        limit: MAX_EXPONENT,
                    });
                }
                let c = ring.mul(ca, cb);
                for (m, k) in weyl_monomial_product(ring, d, &self.alg.q, a, b) {
                    out.add_term(m, ring.mul(&c, &k));
                }
                if out.terms.len() as u64 > MAX_TERMS {
                    return Err(Error::ResourceExceeded {
                        resource: "terms",
                        limit: MAX_TERMS,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = self.alg.one();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Largest `|α| + |β|`; `None` for zero.
    pub fn bernstein_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest `|β|`; `None` for zero.
    pub fn order_degree(&self) -> Option<u64> {
        let d = self.alg.desc.d;
        self.terms.keys().map(|m| m.partial_degree(d..2 * d)).max()
    }

    pub fn degree(&self, grading: Grading) -> Option<u64> {
        match grading {
            Grading::Bernstein => self.bernstein_degree(),
            Grading::Order => self.order_degree(),
        }
    }

    /// Top-degree part with `x^α η^β ↦ X^α Y^β`.
    pub fn symbol(&self, grading: Grading) -> Result<GradedSymbol<R>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let w = grading.weights(self.alg.desc.d);
        let poly = Poly::from_terms(
            self.alg.ring.clone(),
            self.alg.nvars(),
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        );
        Ok(GradedSymbol {
            grading,
            poly: poly.initial_form(&w),
        })
    }

    /// Same element in another algebra over a ring with the same elements.
    pub fn change_algebra<S: CoeffRing<Elem = R::Elem>>(&self, alg: &WeylAlgebra<S>) -> WeylElement<S> {
        alg.from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Entries as a vector component at position `pos`.
    pub fn to_terms(&self, pos: usize) -> Vector<R::Elem> {
        self.terms
            .iter()
            .map(|(m, c)| (Term::new(pos, m.clone()), c.clone()))
            .collect()
    }

    /// Variable names `x1..xd, d1..dd`.
    pub fn names(d: usize) -> Vec<String> {
        (1..=d)
            .map(|i| format!("x{i}"))
            .chain((1..=d).map(|i| format!("d{i}")))
            .collect()
    }
}

impl WeylElement<RationalField> {
    /// True when every coefficient lies in `Z_(p)`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }

    /// Least coefficient valuation; `Infinite` for zero.
    pub fn content_valuation(&self) -> Valuation {
        self.terms.values().map(|c| c.valuation()).min().unwrap_or(Valuation::Infinite)
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        WeylElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(k))).collect(),
        }
    }

    /// Substitutes `∂ = p^{-(n - n0)} η` to move from level `n0` to level
    /// `n ≥ n0`, without clearing denominators.
    pub fn substitute_level(&self, n: u32) -> Result<Self> {
        let n0 = self.alg.desc.n;
        if n < n0 {
            return Err(Error::InvalidInput(format!("cannot rebase from level {n0} down to {n}")));
        }
        let shift = (n - n0) as i64;
        let d = self.alg.desc.d;
        let alg = self.alg.at_level(n);
        Ok(alg.from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.shift(-shift * m.partial_degree(d..2 * d) as i64))),
        ))
    }

    /// Rebases to level `n` and scales by the unique power `p^k` making the
    /// element integral and primitive; returns the element and `k`.
    pub fn rebase(&self, n: u32) -> Result<(Self, i64)> {
        let sub = self.substitute_level(n)?;
        match sub.content_valuation() {
            Valuation::Infinite => Ok((sub, 0)),
            Valuation::Finite(v) => Ok((sub.shift(-v), -v)),
        }
    }

    /// Image in the slice `A_{d,n} / p`.
    pub fn reduce_mod_p(&self) -> Result<WeylElement<PrimeField>> {
        let desc = self.alg.desc;
        let alg = WeylAlgebra::residue(desc.d, desc.n, desc.prime)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.residue()?));
        }
        Ok(alg.from_terms(terms))
    }
}

impl<R: CoeffRing> fmt::Display for WeylElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), &Self::names(self.alg.desc.d))
    }
}

impl<R: CoeffRing> fmt::Debug for WeylElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in A_{{{},{}}} (p={})", self, self.alg.desc.d, self.alg.desc.n, self.alg.desc.prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn weyl(n: u32, p: u64) -> WeylAlgebra<RationalField> {
        WeylAlgebra::local(1, n, p).unwrap()
    }

    #[test]
    fn commutation_level_zero() {
        let a = weyl(0, 7);
        let dx = a.eta(0).unwrap().mul(&a.x(0).unwrap()).unwrap();
        assert_eq!(dx.to_string(), "x1*d1 + 1");
    }

    #[test]
    fn commutation_level_one() {
        let a = weyl(1, 2);
        let dx = a.eta(0).unwrap().mul(&a.x(0).unwrap()).unwrap();
        assert_eq!(dx.to_string(), "x1*d1 + 2");
    }

    #[test]
    fn second_powers() {
        let a = weyl(0, 5);
        let d2 = a.eta(0).unwrap().pow(2).unwrap();
        let x2 = a.x(0).unwrap().pow(2).unwrap();
        assert_eq!(d2.mul(&x2).unwrap().to_string(), "x1^2*d1^2 + 4*x1*d1 + 2");
    }

    #[test]
    fn degrees() {
        let a = weyl(0, 5);
        let x = a.x(0).unwrap();
        let d = a.eta(0).unwrap();
        let f = x.mul(&d).unwrap().sub(&a.from_i64(5)).unwrap();
        assert_eq!(f.bernstein_degree(), Some(2));
        assert_eq!(f.order_degree(), Some(1));
        let x3 = x.pow(3).unwrap();
        assert_eq!((x3.bernstein_degree(), x3.order_degree()), (Some(3), Some(0)));
        assert_eq!(a.zero().bernstein_degree(), None);
        assert_eq!(f.symbol(Grading::Bernstein).unwrap().to_string(), "X1*Y1");
        assert_eq!(f.symbol(Grading::Order).unwrap().to_string(), "X1*Y1");
        let g = x.pow(2).unwrap().add(&d.pow(2).unwrap()).unwrap();
        assert_eq!(g.symbol(Grading::Bernstein).unwrap().to_string(), "X1^2 + Y1^2");
        assert_eq!(a.zero().symbol(Grading::Bernstein), Err(Error::ZeroElement));
    }

    #[test]
    fn rebase_examples() {
        let a = weyl(0, 3);
        let x = a.x(0).unwrap();
        let d = a.eta(0).unwrap();
        let f = d.scale(&a.ring().elem(3)).sub(&a.one()).unwrap();
        let (g, k) = f.rebase(1).unwrap();
        assert_eq!((g.to_string(), k), ("d1 - 1".to_string(), 0));
        let h = x.mul(&d).unwrap().sub(&a.one()).unwrap();
        let (g, k) = h.rebase(2).unwrap();
        assert_eq!((g.to_string(), k), ("x1*d1 - 9".to_string(), 2));
        let (g, k) = x.pow(3).unwrap().rebase(4).unwrap();
        assert_eq!((g.to_string(), k), ("x1^3".to_string(), 0));
    }

    #[test]
    fn mismatch() {
        let a = weyl(0, 3);
        let b = weyl(1, 3);
        assert_eq!(a.one().mul(&b.one()), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn slices() {
        let a = weyl(1, 3);
        let f = a.eta(0).unwrap().mul(&a.x(0).unwrap()).unwrap();
        let r = f.reduce_mod_p().unwrap();
        assert_eq!(r.to_string(), "x1*d1");
        assert!(r.algebra().is_commutative());
    }
}
