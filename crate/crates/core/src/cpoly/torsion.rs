//! `p`-torsion exponents of finitely presented modules over `Z_(p)[t]`.

use alloc::vec::Vec;

use super::SubmodulePresentation;
use crate::coeff::LocalIntegers;
use crate::error::{Error, Result};
use crate::gb::{Engine, Limits, Rule, Vector};
use crate::monomial::{MonomialOrder, TermOrder};

const MAX_EXPONENT: u32 = 64;

/// Least `e` with `p^e · T = 0` for the `p`-torsion `T` of `free / N`.
///
/// The torsion is `sat(N) / N` where `sat(N) = (N ⊗ Q) ∩ free`; each
/// saturation generator is multiplied by `p` until it lies in `N`.
pub fn torsion_exponent(pres: &SubmodulePresentation<LocalIntegers>, limits: &Limits) -> Result<u32> {
    let engine = Engine::new(
        pres.ring,
        TermOrder::top(MonomialOrder::Degrevlex),
        Rule::Commutative,
        pres.nvars,
    );
    let gens: Vec<Vector<_>> = pres
        .gens
        .iter()
        .map(|g| engine.normalize(g.iter().enumerate().flat_map(|(i, p)| p.to_terms(i)).collect()))
        .collect();
    let gb = engine.groebner(gens, limits)?;
    let sat = engine.saturate_p(&gb, pres.rank, limits)?;
    let p = pres.ring.p_power(1);
    let mut worst = 0;
    for s in sat {
        let mut e = 0;
        let mut v = s;
        while !engine.is_member(v.clone(), &gb) {
            e += 1;
            if e > MAX_EXPONENT {
                return Err(Error::ResourceExceeded {
                    resource: "torsion_exponent",
                    limit: MAX_EXPONENT as u64,
                });
            }
            v = engine.scale(&p, &v);
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LocalRational;
    use crate::cpoly::Poly;
    use crate::monomial::Monomial;
    use alloc::vec;

    fn lpoly(p: u64, terms: &[(&[u32], i64)]) -> Poly<LocalIntegers> {
        let r = LocalIntegers::new(p).unwrap();
        Poly::from_terms(
            r,
            terms[0].0.len(),
            terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.to_vec()), LocalRational::from_integer(*c, p).unwrap())),
        )
    }

    #[test]
    fn examples() {
        let r = LocalIntegers::new(3).unwrap();
        let l = Limits::default();
        let xy = SubmodulePresentation::ideal(r, 2, vec![lpoly(3, &[(&[1, 1], 1)])]);
        assert_eq!(torsion_exponent(&xy, &l).unwrap(), 0);
        let py = SubmodulePresentation::ideal(r, 2, vec![lpoly(3, &[(&[0, 1], 3)]), lpoly(3, &[(&[0, 2], 1)])]);
        assert_eq!(torsion_exponent(&py, &l).unwrap(), 1);
        let p2x = SubmodulePresentation::ideal(r, 1, vec![lpoly(3, &[(&[1], 9)])]);
        assert_eq!(torsion_exponent(&p2x, &l).unwrap(), 2);
    }
}
