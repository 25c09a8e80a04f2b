//! Radicals of ideals over `F_p` for the supported classes: zero and unit
//! ideals, monomial ideals, principal ideals, ideals with a squarefree
//! leading ideal, zero-dimensional ideals, and products `g·J` built from
//! these. Anything else is reported as unsupported rather than guessed.

use alloc::vec;
use alloc::vec::Vec;

use super::{ideal_gb, intersection, krull_dim, Poly};
use crate::coeff::{CoeffRing, PrimeField};
use crate::error::{Error, Result};
use crate::gb::Limits;
use crate::monomial::{Monomial, MonomialOrder, TermOrder};

/// `f / g` when `g` divides `f` exactly.
pub fn divide_exact<R: CoeffRing>(f: &Poly<R>, g: &Poly<R>) -> Option<Poly<R>> {
    let order = MonomialOrder::Degrevlex;
    let (gm, gc) = g.leading(&order)?;
    let (gm, gc) = (gm.clone(), gc.clone());
    let ring = f.ring().clone();
    let mut rest = f.clone();
    let mut quot = Poly::zero(ring.clone(), f.nvars());
    while let Some((m, c)) = rest.leading(&order) {
        if !gm.divides(m) {
            return None;
        }
        let q = ring.checked_div(c, &gc)?;
        let mono = m.div(&gm);
        rest = rest.sub(&g.mul_monomial(&q, &mono));
        quot.add_term(mono, q);
    }
    Some(quot)
}

/// Greatest common divisor, normalised, via `(f) ∩ (g) = (lcm(f, g))`.
pub fn poly_gcd(f: &Poly<PrimeField>, g: &Poly<PrimeField>, limits: &Limits) -> Result<Poly<PrimeField>> {
    if f.is_zero() {
        return Ok(g.normalized());
    }
    if g.is_zero() {
        return Ok(f.normalized());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Poly::one(*f.ring(), f.nvars()));
    }
    let l = intersection(f.ring(), f.nvars(), &[f.clone()], &[g.clone()], limits)?;
    let l = l.into_iter().next().ok_or(Error::ZeroElement)?;
    let prod = f.mul(g);
    divide_exact(&prod, &l)
        .map(|q| q.normalized())
        .ok_or(Error::InvalidInput("lcm does not divide product".into()))
}

fn pth_root(f: &Poly<PrimeField>, p: u64) -> Option<Poly<PrimeField>> {
    let mut out = Poly::zero(*f.ring(), f.nvars());
    for (m, c) in f.terms() {
        if m.exps().iter().any(|&e| e as u64 % p != 0) {
            return None;
        }
        // c^p = c in F_p
        out.add_term(Monomial::new(m.exps().iter().map(|&e| e / p as u32).collect()), *c);
    }
    Some(out)
}

/// Generator of `√(f)`: the product of the distinct irreducible factors
/// of `f`, computed without factoring.
pub fn principal_radical(f: &Poly<PrimeField>, limits: &Limits) -> Result<Poly<PrimeField>> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    if f.is_constant() {
        return Ok(Poly::one(*f.ring(), f.nvars()));
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let df = f.derivative(i);
        if !df.is_zero() {
            g = poly_gcd(&g, &df, limits)?;
        }
    }
    if g.is_constant() {
        return Ok(f.normalized());
    }
    // factors of multiplicity prime to p
    let h = divide_exact(f, &g).ok_or(Error::UnsupportedRadical)?;
    let mut rest = g;
    loop {
        let c = poly_gcd(&rest, &h, limits)?;
        if c.is_constant() {
            break;
        }
        rest = divide_exact(&rest, &c).ok_or(Error::UnsupportedRadical)?;
    }
    if rest.is_constant() {
        return Ok(h.normalized());
    }
    let p = f.ring().prime();
    let root = pth_root(&rest, p).ok_or(Error::UnsupportedRadical)?;
    let r = principal_radical(&root, limits)?;
    Ok(h.mul(&r).normalized())
}

fn is_monomial(f: &Poly<PrimeField>) -> bool {
    f.len() == 1
}

fn univariate_eliminant(
    ring: &PrimeField,
    nvars: usize,
    gens: &[Poly<PrimeField>],
    var: usize,
    limits: &Limits,
) -> Result<Option<Poly<PrimeField>>> {
    let others: Vec<usize> = (0..nvars).filter(|&v| v != var).collect();
    let order = MonomialOrder::Elimination {
        vars: others,
        then: alloc::boxed::Box::new(MonomialOrder::Degrevlex),
    };
    let gb = super::groebner(
        &super::SubmodulePresentation::ideal(*ring, nvars, gens.to_vec()),
        TermOrder::top(order),
        limits,
    )?;
    Ok(gb
        .polys()
        .into_iter()
        .filter(|f| f.terms().all(|(m, _)| (0..nvars).all(|v| v == var || m.exp(v) == 0)))
        .min_by_key(|f| f.degree()))
}

/// `√I` for an ideal of `F_p[t_1..t_m]`, as a reduced degrevlex basis.
/// Returns [`Error::UnsupportedRadical`] outside the supported classes.
pub fn radical(
    ring: &PrimeField,
    nvars: usize,
    gens: &[Poly<PrimeField>],
    limits: &Limits,
) -> Result<Vec<Poly<PrimeField>>> {
    let gb = ideal_gb(ring, nvars, gens, limits)?;
    let polys = gb.polys();
    if polys.is_empty() {
        return Ok(polys);
    }
    let leading = gb.leading_monomials();
    if leading.iter().any(|m| m.is_one()) {
        return Ok(vec![Poly::one(*ring, nvars)]);
    }
    if polys.iter().all(is_monomial) {
        let sq: Vec<Poly<PrimeField>> = leading
            .iter()
            .map(|m| Poly::monomial(*ring, ring.one(), m.squarefree()))
            .collect();
        return Ok(ideal_gb(ring, nvars, &sq, limits)?.polys());
    }
    // √(I·A[T]) = √I·A[T], so unused variables can be dropped
    let used: Vec<usize> = (0..nvars)
        .filter(|&v| polys.iter().any(|f| f.terms().any(|(m, _)| m.exp(v) > 0)))
        .collect();
    if used.len() < nvars {
        let squeeze = |f: &Poly<PrimeField>| {
            Poly::from_terms(
                *ring,
                used.len(),
                f.terms().map(|(m, c)| (Monomial::new(used.iter().map(|&v| m.exp(v)).collect()), *c)),
            )
        };
        let small: Vec<Poly<PrimeField>> = polys.iter().map(squeeze).collect();
        let rad = radical(ring, used.len(), &small, limits)?;
        let spread: Vec<Poly<PrimeField>> = rad
            .iter()
            .map(|f| {
                Poly::from_terms(
                    *ring,
                    nvars,
                    f.terms().map(|(m, c)| {
                        let mut e = vec![0u32; nvars];
                        for (k, &v) in used.iter().enumerate() {
                            e[v] = m.exp(k);
                        }
                        (Monomial::new(e), *c)
                    }),
                )
            })
            .collect();
        return Ok(ideal_gb(ring, nvars, &spread, limits)?.polys());
    }
    if polys.len() == 1 {
        let r = principal_radical(&polys[0], limits)?;
        return Ok(vec![r]);
    }
    if leading.iter().all(|m| m.squarefree() == *m) {
        return Ok(polys);
    }
    if krull_dim(&leading, nvars) == Some(0) {
        let mut extended = polys.clone();
        for v in 0..nvars {
            if let Some(u) = univariate_eliminant(ring, nvars, &polys, v, limits)? {
                extended.push(principal_radical(&u, limits)?);
            } else {
                return Err(Error::UnsupportedRadical);
            }
        }
        return Ok(ideal_gb(ring, nvars, &extended, limits)?.polys());
    }
    let mut g = Poly::zero(*ring, nvars);
    for f in &polys {
        g = poly_gcd(&g, f, limits)?;
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        let rest: Vec<Poly<PrimeField>> = polys
            .iter()
            .map(|f| divide_exact(f, &g).ok_or(Error::UnsupportedRadical))
            .collect::<Result<_>>()?;
        let rad_g = principal_radical(&g, limits)?;
        let rad_rest = radical(ring, nvars, &rest, limits)?;
        let both = intersection(ring, nvars, &[rad_g], &rad_rest, limits)?;
        return Ok(ideal_gb(ring, nvars, &both, limits)?.polys());
    }
    Err(Error::UnsupportedRadical)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, terms: &[(&[u32], i64)]) -> Poly<PrimeField> {
        let r = PrimeField::new(p).unwrap();
        Poly::from_terms(r, terms[0].0.len(), terms.iter().map(|(m, c)| (Monomial::new(m.to_vec()), r.elem(*c))))
    }

    #[test]
    fn monomial_radical() {
        let r = PrimeField::new(7).unwrap();
        let rad = radical(&r, 2, &[poly(7, &[(&[2, 1], 1)])], &Limits::default()).unwrap();
        assert_eq!(rad, vec![poly(7, &[(&[1, 1], 1)])]);
    }

    #[test]
    fn square_of_linear_form() {
        // ((X+Y)^2) -> (X+Y)
        let r = PrimeField::new(7).unwrap();
        let f = poly(7, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let rad = radical(&r, 2, &[f.pow(2)], &Limits::default()).unwrap();
        assert_eq!(rad, vec![f]);
    }

    #[test]
    fn frobenius_powers() {
        // (X^3 + Y^3) = (X + Y)^3 over F_3
        let r = PrimeField::new(3).unwrap();
        let f = poly(3, &[(&[3, 0], 1), (&[0, 3], 1)]);
        let rad = radical(&r, 2, &[f], &Limits::default()).unwrap();
        assert_eq!(rad, vec![poly(3, &[(&[1, 0], 1), (&[0, 1], 1)])]);
        // X^3 Y^2 (X + 1)^4 over F_3 -> X Y (X + 1)
        let g = poly(3, &[(&[3, 2], 1)]).mul(&poly(3, &[(&[1, 0], 1), (&[0, 0], 1)]).pow(4));
        let rad = principal_radical(&g, &Limits::default()).unwrap();
        assert_eq!(rad, poly(3, &[(&[2, 1], 1), (&[1, 1], 1)]));
    }

    #[test]
    fn zero_dimensional() {
        // (X^2, Y^2 - X) has radical (X, Y)
        let r = PrimeField::new(5).unwrap();
        let rad = radical(
            &r,
            2,
            &[poly(5, &[(&[2, 0], 1)]), poly(5, &[(&[0, 2], 1), (&[1, 0], -1)])],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(rad, vec![poly(5, &[(&[1, 0], 1)]), poly(5, &[(&[0, 1], 1)])]);
    }

    #[test]
    fn unused_variables_are_free() {
        // (Y^3, X^2 + Y^2, X Y) in F_3[X, Y, Z, W] -> (X, Y)
        let r = PrimeField::new(3).unwrap();
        let gens = [
            poly(3, &[(&[0, 3, 0, 0], 1)]),
            poly(3, &[(&[2, 0, 0, 0], 1), (&[0, 2, 0, 0], 1)]),
            poly(3, &[(&[1, 1, 0, 0], 1)]),
        ];
        let rad = radical(&r, 4, &gens, &Limits::default()).unwrap();
        assert_eq!(rad, vec![poly(3, &[(&[1, 0, 0, 0], 1)]), poly(3, &[(&[0, 1, 0, 0], 1)])]);
    }

    #[test]
    fn common_factor_times_primary() {
        // X·(X, Y)^2 = (X^3, X^2 Y, X Y^2) -> (X)
        let r = PrimeField::new(5).unwrap();
        let gens = [
            poly(5, &[(&[3, 0], 1)]),
            poly(5, &[(&[2, 1], 1), (&[1, 2], 1)]),
            poly(5, &[(&[1, 2], 1)]),
        ];
        let rad = radical(&r, 2, &gens, &Limits::default()).unwrap();
        assert_eq!(rad, vec![poly(5, &[(&[1, 0], 1)])]);
    }
}
