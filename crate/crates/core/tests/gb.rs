mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weylstab_core::coeff::{CoeffRing, LocalIntegers, LocalRational, PrimeField, Valuation};
use weylstab_core::cpoly::{ideal_gb, torsion_exponent, strong_gb_local, Poly, SubmodulePresentation};
use weylstab_core::gb::Limits;
use weylstab_core::monomial::{Monomial, MonomialOrder};

const NV: usize = 3;

fn homogeneous_fp(r: &mut ChaCha8Rng, ring: PrimeField, deg: u32, terms: usize) -> Poly<PrimeField> {
    let monos: Vec<Monomial> = monomials_up_to(NV, deg).into_iter().filter(|m| m.degree() == deg as u64).collect();
    Poly::from_terms(
        ring,
        NV,
        (0..terms).map(|_| (monos.choose(r).unwrap().clone(), ring.elem(r.gen_range(1..ring.prime() as i64)))),
    )
}

fn degree_basis(deg: u32) -> Vec<Monomial> {
    monomials_up_to(NV, deg).into_iter().filter(|m| m.degree() == deg as u64).collect()
}

fn fp_coords(f: &Poly<PrimeField>, basis: &[Monomial]) -> Vec<u64> {
    basis.iter().map(|m| f.coeff(m).value()).collect()
}

/// Degree-`deg` part of a homogeneous ideal, spanned by monomial multiples.
fn fp_span(gens: &[Poly<PrimeField>], deg: u32, p: u64) -> FpSpan {
    let ring = PrimeField::new(p).unwrap();
    let basis = degree_basis(deg);
    let mut span = FpSpan::new(p);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let gd = g.degree().unwrap() as u32;
        if gd > deg {
            continue;
        }
        for m in degree_basis(deg - gd) {
            span.insert(fp_coords(&g.mul_monomial(&ring.one(), &m), &basis));
        }
    }
    span
}

#[test]
fn field_membership_matches_linear_algebra() {
    let mut r = rng(21);
    let mut seen = [0; 2];
    for case in 0..200 {
        let p = [2u64, 3, 5][case % 3];
        let ring = PrimeField::new(p).unwrap();
        let gens: Vec<_> = (0..r.gen_range(1..=3)).map(|_| {
            let deg = r.gen_range(1..=2);
            homogeneous_fp(&mut r, ring, deg, 2)
        }).collect();
        let gb = ideal_gb(&ring, NV, &gens, &Limits::default()).unwrap();
        let deg = r.gen_range(2..=4);
        let span = fp_span(&gens, deg, p);
        let basis = degree_basis(deg);
        // a member half of the time
        let f = if r.gen_bool(0.5) {
            gens.iter().fold(Poly::zero(ring, NV), |acc, g| {
                let gd = g.degree().unwrap_or(0) as u32;
                if g.is_zero() || gd > deg {
                    return acc;
                }
                acc.add(&g.mul(&homogeneous_fp(&mut r, ring, deg - gd, 2)))
            })
        } else {
            homogeneous_fp(&mut r, ring, deg, 3)
        };
        let member = span.contains(fp_coords(&f, &basis));
        assert_eq!(gb.contains_poly(&f), member, "case {case}");
        seen[member as usize] += 1;
    }
    assert!(seen.iter().all(|&k| k > 20), "{seen:?}");
}

#[test]
fn division_leaves_a_standard_remainder_in_the_same_class() {
    let mut r = rng(22);
    for case in 0..200 {
        let p = [2u64, 3, 7][case % 3];
        let ring = PrimeField::new(p).unwrap();
        let gens: Vec<_> = (0..r.gen_range(1..=3)).map(|_| {
            let deg = r.gen_range(1..=2);
            homogeneous_fp(&mut r, ring, deg, 2)
        }).collect();
        let gb = ideal_gb(&ring, NV, &gens, &Limits::default()).unwrap();
        let deg = r.gen_range(1..=4);
        let f = homogeneous_fp(&mut r, ring, deg, 4);
        let rem = gb.normal_form(core::slice::from_ref(&f)).remove(0);
        let leads = gb.leading_monomials();
        assert!(rem.terms().all(|(m, _)| !leads.iter().any(|l| l.divides(m))), "case {case}");
        let diff = f.sub(&rem);
        assert!(fp_span(&gens, deg, p).contains(fp_coords(&diff, &degree_basis(deg))), "case {case}");
    }
}

#[test]
fn reduced_basis_ignores_generator_order() {
    let mut r = rng(23);
    for case in 0..100 {
        let ring = PrimeField::new([3u64, 5][case % 2]).unwrap();
        let mut gens: Vec<_> = (0..r.gen_range(2..=4)).map(|_| fp_poly(&mut r, ring, NV, 3, 2)).collect();
        let a = ideal_gb(&ring, NV, &gens, &Limits::default()).unwrap();
        gens.shuffle(&mut r);
        gens.iter_mut().for_each(|g| *g = g.scale(&ring.elem(2)));
        let b = ideal_gb(&ring, NV, &gens, &Limits::default()).unwrap();
        assert_eq!(a.polys(), b.polys(), "case {case}");
    }
}

fn homogeneous_local(r: &mut ChaCha8Rng, p: u64, deg: u32) -> Poly<LocalIntegers> {
    let ring = LocalIntegers::new(p).unwrap();
    let monos = degree_basis(deg);
    Poly::from_terms(ring, NV, (0..2).map(|_| (monos.choose(r).unwrap().clone(), integral(r, p))))
}

#[test]
fn strong_membership_matches_lattice_linear_algebra() {
    let mut r = rng(24);
    let mut seen = [0; 2];
    for case in 0..50 {
        let p = [2u64, 3][case % 2];
        let ring = LocalIntegers::new(p).unwrap();
        let gens: Vec<_> = (0..r.gen_range(1..=3)).map(|_| {
            let deg = r.gen_range(1..=2);
            homogeneous_local(&mut r, p, deg)
        }).collect();
        let pres = SubmodulePresentation::ideal(ring, NV, gens.clone());
        let gb = strong_gb_local(&pres, &MonomialOrder::Degrevlex, &Limits::default()).unwrap();
        let deg = r.gen_range(2..=3);
        let basis = degree_basis(deg);
        let coords = |f: &Poly<LocalIntegers>| basis.iter().map(|m| f.coeff(m)).collect::<Vec<LocalRational>>();
        let mut rows = Vec::new();
        for g in &gens {
            let gd = g.degree().unwrap_or(0) as u32;
            if g.is_zero() || gd > deg {
                continue;
            }
            for m in degree_basis(deg - gd) {
                rows.push(coords(&g.mul_monomial(&ring.one(), &m)));
            }
        }
        let lattice = DvrEchelon::new(rows);
        for _ in 0..4 {
            // an integral combination, sometimes divided by p
            let mut f = Poly::zero(ring, NV);
            for g in &gens {
                let gd = g.degree().unwrap_or(0) as u32;
                if !g.is_zero() && gd <= deg {
                    f = f.add(&g.mul(&homogeneous_local(&mut r, p, deg - gd)));
                }
            }
            if r.gen_bool(0.5) {
                f = f.scale(&ring.p_power(-1));
                f = f.add(&homogeneous_local(&mut r, p, deg).scale(&ring.p_power(1)));
                if f.terms().any(|(_, c)| !c.is_integral()) {
                    assert!(!lattice.contains(&coords(&f)));
                    continue;
                }
            }
            let member = lattice.contains(&coords(&f));
            assert_eq!(gb.contains_poly(&f), member, "case {case}: {f}");
            seen[member as usize] += 1;
        }
    }
    assert!(seen.iter().all(|&k| k > 5), "{seen:?}");
}

#[test]
fn torsion_of_py_and_y_squared_is_one() {
    for p in [2u64, 3, 5] {
        let ring = LocalIntegers::new(p).unwrap();
        let y = Poly::var(ring, 2, 1);
        let gens = vec![y.scale(&ring.p_power(1)), y.mul(&y)];
        let pres = SubmodulePresentation::ideal(ring, 2, gens);
        assert_eq!(torsion_exponent(&pres, &Limits::default()), Ok(1));
        let clean = SubmodulePresentation::ideal(ring, 2, vec![y.clone()]);
        assert_eq!(torsion_exponent(&clean, &Limits::default()), Ok(0));
        let deep = SubmodulePresentation::ideal(ring, 2, vec![y.scale(&ring.p_power(3)), y.mul(&y)]);
        assert_eq!(torsion_exponent(&deep, &Limits::default()), Ok(3));
    }
}

#[test]
fn step_limit_is_enforced() {
    let ring = PrimeField::new(5).unwrap();
    let mut r = rng(25);
    let gens: Vec<_> = (0..4).map(|_| fp_poly(&mut r, ring, NV, 4, 3)).collect();
    let tiny = Limits {
        max_gb_steps: 1,
        ..Limits::default()
    };
    let out = ideal_gb(&ring, NV, &gens, &tiny);
    assert!(matches!(out, Err(weylstab_core::Error::ResourceExceeded { .. })));
}

#[test]
fn strong_basis_of_two_x_plus_two_y_and_x_minus_y() {
    // over Z_(2) the ideal is (X - Y, 4Y): neither 2Y nor 2X is a member
    let ring = LocalIntegers::new(2).unwrap();
    let x = Poly::var(ring, 2, 0);
    let y = Poly::var(ring, 2, 1);
    let two = ring.from_i64(2);
    let gens = vec![x.add(&y).scale(&two), x.sub(&y)];
    let order = MonomialOrder::Degrevlex;
    let gb = strong_gb_local(&SubmodulePresentation::ideal(ring, 2, gens), &order, &Limits::default()).unwrap();
    let mut leads: Vec<(Monomial, Valuation)> = gb
        .polys()
        .iter()
        .map(|f| {
            let (m, c) = f.leading(&order).unwrap();
            (m.clone(), c.valuation())
        })
        .collect();
    leads.sort();
    assert_eq!(leads, vec![(Monomial::new(vec![0, 1]), Valuation::Finite(2)), (Monomial::new(vec![1, 0]), Valuation::Finite(0))]);
    assert!(!gb.contains_poly(&y.scale(&two)));
    assert!(!gb.contains_poly(&x.scale(&two)));
    assert!(gb.contains_poly(&x.scale(&ring.from_i64(4))));
}
