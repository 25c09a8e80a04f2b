//! Exponent vectors, monomial orders and module term orders.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// An exponent vector. The derived `Ord` is *not* used for term orders;
/// [`Monomial`] implements degrevlex as its natural order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The monomial `v_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(w)
            .map(|(&e, &wi)| e as u64 * wi as u64)
            .sum()
    }

    /// Sum of exponents over the index range.
    pub fn partial_degree(&self, range: core::ops::Range<usize>) -> u64 {
        self.exps[range].iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// Indices with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// The product of the variables in the support.
    pub fn squarefree(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends `k` zero exponents.
    pub fn extend(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(core::iter::repeat(0).take(k));
        Monomial { exps }
    }

    /// Keeps the first `k` exponents.
    pub fn truncate(&self, k: usize) -> Monomial {
        Monomial {
            exps: self.exps[..k].to_vec(),
        }
    }
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| revlex_tail(&a.exps, &b.exps))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A term order on monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Degrevlex,
    Deglex,
    /// Weighted degree, ties broken by degrevlex.
    Weighted(Vec<u32>),
    /// Total degree in `vars` first, then `then`; an elimination order for `vars`.
    Elimination { vars: Vec<usize>, then: Box<MonomialOrder> },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Degrevlex => degrevlex(a, b),
            MonomialOrder::Deglex => a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| degrevlex(a, b)),
            MonomialOrder::Elimination { vars, then } => {
                let da: u64 = vars.iter().map(|&i| a.exps[i] as u64).sum();
                let db: u64 = vars.iter().map(|&i| b.exps[i] as u64).sum();
                da.cmp(&db).then_with(|| then.cmp(a, b))
            }
        }
    }

    /// Bernstein weights `(1, ..., 1)` on `2d` variables.
    pub fn bernstein(d: usize) -> Self {
        MonomialOrder::Weighted(vec![1; 2 * d])
    }

    /// Order-filtration weights: 0 on the `X`s, 1 on the `Y`s.
    pub fn order_filtration(d: usize) -> Self {
        let mut w = vec![0; d];
        w.extend(core::iter::repeat(1).take(d));
        MonomialOrder::Weighted(w)
    }

    /// Same order with `k` extra trailing variables of weight zero; they are
    /// compared only through the degrevlex refinement.
    pub fn widen(&self, k: usize) -> Self {
        match self {
            MonomialOrder::Weighted(w) => {
                let mut w = w.clone();
                w.extend(core::iter::repeat(0).take(k));
                MonomialOrder::Weighted(w)
            }
            MonomialOrder::Elimination { vars, then } => MonomialOrder::Elimination {
                vars: vars.clone(),
                then: Box::new(then.widen(k)),
            },
            other => other.clone(),
        }
    }

    /// The grading weight, if the order is a weighted one.
    pub fn weights(&self) -> Option<&[u32]> {
        match self {
            MonomialOrder::Weighted(w) => Some(w),
            _ => None,
        }
    }
}

/// How positions of a free module are compared with monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionRule {
    /// Term over position: monomials first.
    TermOverPosition,
    /// Position over term: positions first.
    PositionOverTerm,
}

/// A position in a free module together with a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
}

impl Term {
    pub fn new(pos: usize, mono: Monomial) -> Self {
        Term { pos, mono }
    }
}

/// A module term order. Lower position indices are larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub monomial: MonomialOrder,
    pub rule: PositionRule,
}

impl TermOrder {
    pub fn new(monomial: MonomialOrder, rule: PositionRule) -> Self {
        TermOrder { monomial, rule }
    }

    pub fn top(monomial: MonomialOrder) -> Self {
        TermOrder::new(monomial, PositionRule::TermOverPosition)
    }

    pub fn pot(monomial: MonomialOrder) -> Self {
        TermOrder::new(monomial, PositionRule::PositionOverTerm)
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let pos = b.pos.cmp(&a.pos);
        match self.rule {
            PositionRule::TermOverPosition => self.monomial.cmp(&a.mono, &b.mono).then(pos),
            PositionRule::PositionOverTerm => pos.then_with(|| self.monomial.cmp(&a.mono, &b.mono)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        // x^2 > xy > y^2 > x > y > 1 in degrevlex with x > y
        let seq = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{:?} {:?}", w[0], w[1]);
        }
        // x1 x3 < x2^2 in degrevlex (3 vars)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert_eq!(
            MonomialOrder::Deglex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn weighted_and_elimination() {
        let o = MonomialOrder::order_filtration(1);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
        let e = MonomialOrder::Elimination {
            vars: vec![2],
            then: Box::new(MonomialOrder::Degrevlex),
        };
        assert_eq!(e.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
    }

    #[test]
    fn positions() {
        let t = TermOrder::pot(MonomialOrder::Degrevlex);
        assert_eq!(
            t.cmp(&Term::new(0, m(&[0])), &Term::new(1, m(&[4]))),
            Ordering::Greater
        );
        let t = TermOrder::top(MonomialOrder::Degrevlex);
        assert_eq!(
            t.cmp(&Term::new(0, m(&[0])), &Term::new(1, m(&[4]))),
            Ordering::Less
        );
    }
}
