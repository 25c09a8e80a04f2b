//! Lattices, slices and characteristic ideals of modules over `A_{d,n}`.
//!
//! A module is `M = A^r / N` with `N` generated by integral relation
//! vectors. At level `n` the relations are rebased, the lattice `A_{d,n}(Z_(p))^r / N`
//! is made `p`-torsionfree by saturating `N`, and reduced modulo `p` to give
//! the slice. The characteristic ideal is the radical of the annihilator of
//! the Bernstein-graded module of the slice.

use alloc::string::String;
use alloc::vec::Vec;

use crate::coeff::{CoeffRing, LocalIntegers, PrimeField, RationalField, Valuation};
use crate::cpoly::{annihilator, ideal_gb, krull_dim, radical, vector_to_polys, Poly, SubmodulePresentation};
use crate::error::{Error, Result};
use crate::gb::{Limits, Vector};
use crate::hilbert::{HilbertData, MonomialIdeal};
use crate::monomial::{Term, TermOrder};
use crate::weyl::{AlgebraDescriptor, Grading, WeylAlgebra, WeylElement};

/// Relations of a finitely presented left module over `A_{d,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    algebra: WeylAlgebra<RationalField>,
    rank: usize,
    relations: Vec<Vec<WeylElement<RationalField>>>,
}

fn vector_key(v: &[WeylElement<RationalField>]) -> String {
    let parts: Vec<String> = v.iter().map(|e| alloc::format!("{e}")).collect();
    parts.join(" ; ")
}

impl ModulePresentation {
    /// Builds a presentation; relations are stored in a canonical order with
    /// zero and duplicate vectors removed.
    pub fn new(
        algebra: WeylAlgebra<RationalField>,
        rank: usize,
        relations: Vec<Vec<WeylElement<RationalField>>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput(String::from("a module needs at least one generator")));
        }
        for rel in &relations {
            if rel.len() != rank {
                return Err(Error::InvalidInput(alloc::format!(
                    "relation has {} entries, expected {rank}",
                    rel.len()
                )));
            }
            for e in rel {
                if e.descriptor() != algebra.descriptor() {
                    return Err(Error::AlgebraMismatch);
                }
                if !e.is_integral() {
                    return Err(Error::NegativeValuation);
                }
            }
        }
        let mut keyed: Vec<(String, Vec<WeylElement<RationalField>>)> = relations
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .map(|r| (vector_key(&r), r))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Ok(ModulePresentation {
            algebra,
            rank,
            relations: keyed.into_iter().map(|(_, r)| r).collect(),
        })
    }

    /// A cyclic module `A / (f_1, ..., f_k)`.
    pub fn cyclic(algebra: WeylAlgebra<RationalField>, relations: Vec<WeylElement<RationalField>>) -> Result<Self> {
        ModulePresentation::new(algebra, 1, relations.into_iter().map(|f| alloc::vec![f]).collect())
    }

    pub fn algebra(&self) -> &WeylAlgebra<RationalField> {
        &self.algebra
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.algebra.descriptor()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn d(&self) -> usize {
        self.algebra.d()
    }

    pub fn prime(&self) -> u64 {
        self.algebra.descriptor().prime
    }

    pub fn level(&self) -> u32 {
        self.algebra.level()
    }

    pub fn relations(&self) -> &[Vec<WeylElement<RationalField>>] {
        &self.relations
    }

    /// Canonical text used for hashing and caching.
    pub fn canonical_text(&self) -> String {
        let desc = self.descriptor();
        let mut out = alloc::format!("p={};d={};n={};rank={}", desc.prime, desc.d, desc.n, self.rank);
        for r in &self.relations {
            out.push_str(";[");
            out.push_str(&vector_key(r));
            out.push(']');
        }
        out
    }

    /// Relations rebased to level `n`, each vector scaled to be integral and
    /// primitive.
    pub fn rebased(&self, n: u32) -> Result<ModulePresentation> {
        let alg = self.algebra.at_level(n);
        let mut rels = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let subs: Vec<WeylElement<RationalField>> =
                rel.iter().map(|e| e.substitute_level(n)).collect::<Result<_>>()?;
            let v = subs
                .iter()
                .map(|e| e.content_valuation())
                .min()
                .unwrap_or(Valuation::Infinite);
            let k = match v {
                Valuation::Finite(v) => -v,
                Valuation::Infinite => 0,
            };
            rels.push(subs.iter().map(|e| e.shift(k)).collect());
        }
        ModulePresentation::new(alg, self.rank, rels)
    }
}

fn to_vector<R: CoeffRing>(rel: &[WeylElement<R>]) -> Vector<R::Elem> {
    rel.iter().enumerate().flat_map(|(i, e)| e.to_terms(i)).collect()
}

fn from_vector<R: CoeffRing>(alg: &WeylAlgebra<R>, rank: usize, v: &[(Term, R::Elem)]) -> Vec<WeylElement<R>> {
    let mut out: Vec<Vec<(crate::monomial::Monomial, R::Elem)>> = (0..rank).map(|_| Vec::new()).collect();
    for (t, c) in v {
        out[t.pos].push((t.mono.clone(), c.clone()));
    }
    out.into_iter().map(|terms| alg.from_terms(terms)).collect()
}

/// Saturates the relation module at the presentation's own level:
/// `N_sat = (N ⊗ Q) ∩ A_{d,n}(Z_(p))^r`.
pub fn saturate_lattice(pres: &ModulePresentation, limits: &Limits) -> Result<ModulePresentation> {
    let desc = pres.descriptor();
    let zalg = WeylAlgebra::integral(desc.d, desc.n, desc.prime)?;
    let engine = zalg.engine(TermOrder::top(Grading::Bernstein.order(desc.d)));
    let gens: Vec<Vector<_>> = pres
        .relations
        .iter()
        .map(|r| engine.normalize(to_vector(&r.iter().map(|e| e.change_algebra(&zalg)).collect::<Vec<_>>())))
        .collect();
    let sat = engine.saturate_p(&gens, pres.rank, limits)?;
    let rels = sat
        .iter()
        .map(|v| {
            from_vector(&zalg, pres.rank, v)
                .into_iter()
                .map(|e| e.change_algebra(&pres.algebra))
                .collect()
        })
        .collect();
    ModulePresentation::new(pres.algebra.clone(), pres.rank, rels)
}

/// The slice `M_n / p M_n` of the saturated lattice at level `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceModule {
    pub level: u32,
    pub algebra: WeylAlgebra<PrimeField>,
    pub rank: usize,
    /// Reduced Gröbner basis of the slice relations for the Bernstein order.
    pub relations: Vec<Vec<WeylElement<PrimeField>>>,
}

/// Rebases to level `n`, saturates and reduces modulo `p`.
pub fn slice(pres: &ModulePresentation, n: u32, limits: &Limits) -> Result<SliceModule> {
    if n < pres.level() {
        return Err(Error::InvalidInput(alloc::format!(
            "level {n} is below the presentation level {}",
            pres.level()
        )));
    }
    let rebased = pres.rebased(n)?;
    let sat = saturate_lattice(&rebased, limits)?;
    let desc = sat.descriptor();
    let alg = WeylAlgebra::residue(desc.d, n, desc.prime)?;
    let mut rels = Vec::with_capacity(sat.relations.len());
    for r in &sat.relations {
        let v: Vec<WeylElement<PrimeField>> = r
            .iter()
            .map(|e| e.reduce_mod_p().map(|x| x.change_algebra(&alg)))
            .collect::<Result<_>>()?;
        rels.push(v);
    }
    let gb = weyl_gb(&alg, pres.rank, &rels, Grading::Bernstein, limits)?;
    let whole = (0..pres.rank).all(|i| {
        gb.elements
            .iter()
            .any(|g| g[0].0.pos == i && g[0].0.mono.is_one())
    });
    if whole {
        return Err(Error::DegenerateLattice { level: n });
    }
    let relations = gb.elements.iter().map(|v| from_vector(&alg, pres.rank, v)).collect();
    Ok(SliceModule {
        level: n,
        algebra: alg,
        rank: pres.rank,
        relations,
    })
}

/// A Gröbner basis for a grading-compatible order with its initial module.
#[derive(Debug, Clone)]
pub struct WeylGb<R: CoeffRing> {
    pub grading: Grading,
    pub rank: usize,
    pub elements: Vec<Vector<R::Elem>>,
    /// Top-degree symbols of the basis elements, generating the graded
    /// module of the relations.
    pub initial: Vec<Vec<Poly<R>>>,
}

/// Gröbner basis of a left submodule of `A^r` for the order refining
/// `grading`, together with its initial module.
pub fn weyl_gb<R: CoeffRing>(
    alg: &WeylAlgebra<R>,
    rank: usize,
    relations: &[Vec<WeylElement<R>>],
    grading: Grading,
    limits: &Limits,
) -> Result<WeylGb<R>> {
    let d = alg.d();
    let engine = alg.engine(TermOrder::top(grading.order(d)));
    let gens = relations.iter().map(|r| engine.normalize(to_vector(r))).collect();
    let elements = engine.groebner(gens, limits)?;
    let w = grading.weights(d);
    let initial = elements
        .iter()
        .map(|g| {
            let top = g.iter().map(|(t, _)| t.mono.weighted_degree(&w)).max().unwrap_or(0);
            let terms: Vec<(Term, R::Elem)> = g
                .iter()
                .filter(|(t, _)| t.mono.weighted_degree(&w) == top)
                .cloned()
                .collect();
            vector_to_polys(alg.ring(), 2 * d, rank, &terms)
        })
        .collect();
    Ok(WeylGb {
        grading,
        rank,
        elements,
        initial,
    })
}

/// Characteristic data of one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharData {
    pub level: u32,
    pub d: usize,
    /// Reduced degrevlex basis of the characteristic ideal, monic.
    pub ideal: Vec<Poly<PrimeField>>,
    pub hilbert: HilbertData,
    pub dimension: Option<usize>,
    pub multiplicity: u64,
    pub holonomic: bool,
    /// False when the radical was outside the supported classes and the
    /// data describe the annihilator instead.
    pub radical_verified: bool,
}

impl CharData {
    /// Canonical text of the ideal, e.g. `(X1*Y1)`.
    pub fn ideal_text(&self) -> String {
        let parts: Vec<String> = self.ideal.iter().map(|f| alloc::format!("{f}")).collect();
        alloc::format!("({})", parts.join(", "))
    }
}

/// Annihilator of the graded module `F^r / in(N)`.
pub fn graded_annihilator(slice: &SliceModule, grading: Grading, limits: &Limits) -> Result<Vec<Poly<PrimeField>>> {
    let gb = weyl_gb(&slice.algebra, slice.rank, &slice.relations, grading, limits)?;
    let ring = *slice.algebra.ring();
    let pres = SubmodulePresentation::new(ring, 2 * slice.algebra.d(), slice.rank, gb.initial)?;
    annihilator(&pres, limits)
}

/// Radical of the annihilator of the Bernstein-graded slice, with a flag
/// telling whether the radical step succeeded.
pub fn characteristic_ideal(slice: &SliceModule, limits: &Limits) -> Result<(Vec<Poly<PrimeField>>, bool)> {
    let ann = graded_annihilator(slice, Grading::Bernstein, limits)?;
    let ring = *slice.algebra.ring();
    let nv = 2 * slice.algebra.d();
    match radical(&ring, nv, &ann, limits) {
        Ok(r) => Ok((r, true)),
        Err(Error::UnsupportedRadical) => Ok((ideal_gb(&ring, nv, &ann, limits)?.polys(), false)),
        Err(e) => Err(e),
    }
}

/// Full pipeline at level `n`.
pub fn char_data(pres: &ModulePresentation, n: u32, limits: &Limits) -> Result<CharData> {
    let s = slice(pres, n, limits)?;
    char_data_of_slice(&s, limits)
}

pub fn char_data_of_slice(s: &SliceModule, limits: &Limits) -> Result<CharData> {
    let (ideal, verified) = characteristic_ideal(s, limits)?;
    let d = s.algebra.d();
    let nv = 2 * d;
    let ring = *s.algebra.ring();
    let ideal: Vec<Poly<PrimeField>> = ideal_gb(&ring, nv, &ideal, limits)?
        .polys()
        .into_iter()
        .map(|f| f.normalized())
        .collect();
    let lead = MonomialIdeal::new(
        nv,
        ideal
            .iter()
            .filter_map(|f| f.leading(&crate::monomial::MonomialOrder::Degrevlex).map(|(m, _)| m.clone()))
            .collect(),
    );
    let hilbert = lead.hilbert_polynomial()?;
    let k = lead.krull_dim();
    if hilbert.degree != k {
        return Err(Error::DimensionMismatch {
            hilbert: hilbert.degree,
            krull: k,
        });
    }
    let dimension = hilbert.degree;
    let holonomic = dimension.map_or(true, |e| e == d);
    Ok(CharData {
        level: s.level,
        d,
        multiplicity: hilbert.multiplicity,
        ideal,
        hilbert,
        dimension,
        holonomic,
        radical_verified: verified,
    })
}

/// Bernstein inequality: a nonzero module has dimension at least `d`.
pub fn bernstein_check(c: &CharData) -> bool {
    c.dimension.map_or(true, |e| e >= c.d)
}

/// Compares the dimensions of the Bernstein-graded and order-graded
/// modules of the slice at level `n`.
pub fn dims_agree(pres: &ModulePresentation, n: u32, limits: &Limits) -> Result<bool> {
    let s = slice(pres, n, limits)?;
    let nv = 2 * s.algebra.d();
    let ring = *s.algebra.ring();
    let mut dims = [None, None];
    for (k, grading) in [Grading::Bernstein, Grading::Order].into_iter().enumerate() {
        let ann = graded_annihilator(&s, grading, limits)?;
        let gb = ideal_gb(&ring, nv, &ann, limits)?;
        dims[k] = krull_dim(&gb.leading_monomials(), nv);
    }
    Ok(dims[0] == dims[1])
}

/// Saturated relations at the presentation level over `Z_(p)`, their
/// strong Gröbner basis for `grading`, and the initial module over
/// `Z_(p)[X, Y]`.
pub fn integral_initial_module(
    pres: &ModulePresentation,
    grading: Grading,
    limits: &Limits,
) -> Result<SubmodulePresentation<LocalIntegers>> {
    let sat = saturate_lattice(pres, limits)?;
    let desc = sat.descriptor();
    let zalg = WeylAlgebra::integral(desc.d, desc.n, desc.prime)?;
    let rels: Vec<Vec<WeylElement<LocalIntegers>>> = sat
        .relations
        .iter()
        .map(|r| r.iter().map(|e| e.change_algebra(&zalg)).collect())
        .collect();
    let gb = weyl_gb(&zalg, sat.rank, &rels, grading, limits)?;
    SubmodulePresentation::new(*zalg.ring(), 2 * desc.d, sat.rank, gb.initial)
}
