mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use weylstab_core::coeff::{CoeffRing, PrimeField};
use weylstab_core::cpoly::{annihilator, ideal_gb, radical, Poly, SubmodulePresentation};
use weylstab_core::gb::Limits;
use weylstab_core::hilbert::{dim_and_mult, hilbert_function, hilbert_polynomial, MonomialIdeal};
use weylstab_core::monomial::Monomial;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn count_standard(nv: usize, gens: &[Monomial], i: u32) -> u64 {
    monomials_up_to(nv, i).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as u64
}

#[test]
fn free_quotient_counts_all_monomials() {
    for m in 1..=6usize {
        let ideal = MonomialIdeal::new(m, vec![]);
        for i in 0..=12u64 {
            assert_eq!(ideal.hilbert_function(i), binom(m as u64 + i, i), "m={m} i={i}");
        }
        let h = ideal.hilbert_polynomial().unwrap();
        assert_eq!((h.degree, h.multiplicity, h.stability_index), (Some(m), 1, 0));
    }
}

#[test]
fn lower_coefficients_can_be_negative() {
    // F_p[X, Y] / (X^4) has h(i) = 4i - 2 from i = 2 on
    let ideal = MonomialIdeal::new(2, vec![Monomial::new(vec![4, 0])]);
    let h = ideal.hilbert_polynomial().unwrap();
    assert_eq!(h.binomial_coeffs, vec![-2, 4]);
    assert_eq!((h.multiplicity, h.stability_index), (4, 2));
    assert_eq!(ideal.hilbert_function(1), 3);
}

#[test]
fn monomial_ideals_match_enumeration() {
    let mut r = rng(31);
    for case in 0..100 {
        let nv = r.gen_range(1..=3);
        let gens: Vec<Monomial> = (0..r.gen_range(0..=4))
            .map(|_| loop {
                let m = monomial(&mut r, nv, 4);
                if m.degree() <= 4 {
                    break m;
                }
            })
            .collect();
        let ideal = MonomialIdeal::new(nv, gens.clone());
        let h = ideal.hilbert_polynomial().unwrap();
        let values: Vec<u64> = (0..=12).map(|i| count_standard(nv, &gens, i)).collect();
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(ideal.hilbert_function(i as u64), v, "case {case} i={i}");
            if i as u64 >= h.stability_index {
                assert_eq!(h.evaluate(i as i64), v as i128, "case {case} i={i}");
            }
        }
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "monotone, case {case}");
        if h.stability_index > 0 {
            let s = h.stability_index - 1;
            assert_ne!(h.evaluate(s as i64), ideal.hilbert_function(s) as i128, "case {case}: index not least");
        }
        assert_eq!(h.degree, ideal.krull_dim(), "case {case}");
    }
}

/// `dim (S/I)_{≤i}` by linear algebra on each homogeneous piece.
fn graded_oracle(ring: PrimeField, nv: usize, gens: &[Poly<PrimeField>], i: u32) -> u64 {
    let mut total = 0;
    for deg in 0..=i {
        let basis: Vec<Monomial> = monomials_up_to(nv, deg).into_iter().filter(|m| m.degree() == deg as u64).collect();
        let mut span = FpSpan::new(ring.prime());
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let gd = g.degree().unwrap() as u32;
            if gd > deg {
                continue;
            }
            for m in monomials_up_to(nv, deg - gd).into_iter().filter(|m| m.degree() == (deg - gd) as u64) {
                let prod = g.mul_monomial(&ring.one(), &m);
                span.insert(basis.iter().map(|b| prod.coeff(b).value()).collect());
            }
        }
        total += (basis.len() - span.rank()) as u64;
    }
    total
}

#[test]
fn binomial_ideals_match_linear_algebra() {
    let mut r = rng(32);
    for case in 0..20 {
        let p = [2u64, 3, 5, 7][case % 4];
        let ring = PrimeField::new(p).unwrap();
        let nv = 2 + case % 2;
        let gens: Vec<Poly<PrimeField>> = (0..r.gen_range(1..=3))
            .map(|_| {
                let deg = r.gen_range(1..=4);
                let monos: Vec<Monomial> = monomials_up_to(nv, deg).into_iter().filter(|m| m.degree() == deg as u64).collect();
                let a = monos.choose(&mut r).unwrap().clone();
                let b = monos.choose(&mut r).unwrap().clone();
                Poly::from_terms(ring, nv, [(a, ring.one()), (b, ring.elem(r.gen_range(1..p as i64)))])
            })
            .collect();
        let h = hilbert_polynomial(&ring, nv, &gens, &Limits::default()).unwrap();
        for i in 0..=12u32 {
            let want = graded_oracle(ring, nv, &gens, i);
            assert_eq!(hilbert_function(&ring, nv, &gens, i as u64, &Limits::default()).unwrap(), want, "case {case} i={i}");
            if i as u64 >= h.stability_index {
                assert_eq!(h.evaluate(i as i64), want as i128, "case {case} i={i}");
            }
        }
    }
}

#[test]
fn multiplicity_adds_over_components() {
    let ring = PrimeField::new(5).unwrap();
    let x = Poly::var(ring, 2, 0);
    let y = Poly::var(ring, 2, 1);
    let limits = Limits::default();
    assert_eq!(dim_and_mult(&ring, 2, &[x.clone()], &limits), Ok((Some(1), 1)));
    assert_eq!(dim_and_mult(&ring, 2, &[y.clone()], &limits), Ok((Some(1), 1)));
    assert_eq!(dim_and_mult(&ring, 2, &[x.mul(&y)], &limits), Ok((Some(1), 2)));
    // a point has dimension 0 and the unit ideal is empty
    assert_eq!(dim_and_mult(&ring, 2, &[x.clone(), y.clone()], &limits), Ok((Some(0), 1)));
    assert_eq!(dim_and_mult(&ring, 2, &[Poly::one(ring, 2)], &limits), Ok((None, 0)));
}

fn in_ideal(ring: PrimeField, nv: usize, gens: &[Poly<PrimeField>], f: &Poly<PrimeField>) -> bool {
    ideal_gb(&ring, nv, gens, &Limits::default()).unwrap().contains_poly(f)
}

#[test]
fn radicals_are_idempotent_and_nilpotent_modulo_the_ideal() {
    let mut r = rng(33);
    let limits = Limits::default();
    let mut checked = 0;
    for case in 0..120 {
        let p = [2u64, 3, 5][case % 3];
        let ring = PrimeField::new(p).unwrap();
        let nv = 2;
        let gens: Vec<Poly<PrimeField>> = match case % 3 {
            // principal, with repeated factors
            0 => {
                let f = fp_poly(&mut r, ring, nv, 2, 2);
                let g = fp_poly(&mut r, ring, nv, 2, 1);
                vec![f.mul(&g).mul(&g)]
            }
            // monomial
            1 => (0..2).map(|_| Poly::monomial(ring, ring.one(), monomial(&mut r, nv, 3))).collect(),
            // homogeneous in two variables
            _ => (0..2)
                .map(|_| {
                    let deg = r.gen_range(1..=3);
                    let monos: Vec<Monomial> = monomials_up_to(nv, deg).into_iter().filter(|m| m.degree() == deg as u64).collect();
                    Poly::from_terms(ring, nv, (0..2).map(|_| (monos.choose(&mut r).unwrap().clone(), ring.elem(r.gen_range(1..p as i64)))))
                })
                .collect(),
        };
        let Ok(rad) = radical(&ring, nv, &gens, &limits) else { continue };
        checked += 1;
        assert_eq!(radical(&ring, nv, &rad, &limits).unwrap(), rad, "idempotent, case {case}");
        for g in &gens {
            assert!(in_ideal(ring, nv, &rad, g), "I ⊆ √I, case {case}");
        }
        for f in &rad {
            let mut k = 1u32;
            let mut power = f.clone();
            while !in_ideal(ring, nv, &gens, &power) {
                k *= p as u32;
                assert!(k <= 81, "generator {f} of √I not nilpotent mod I, case {case}");
                power = f.pow(k);
            }
        }
    }
    assert!(checked >= 110, "only {checked} radicals supported");
}

#[test]
fn annihilator_matches_linear_algebra() {
    let mut r = rng(34);
    let limits = Limits::default();
    for case in 0..40 {
        let p = [3u64, 5][case % 2];
        let ring = PrimeField::new(p).unwrap();
        let nv = 2;
        let rank = 2;
        let piece = |deg: u32| -> Vec<Monomial> { monomials_up_to(nv, deg).into_iter().filter(|m| m.degree() == deg as u64).collect() };
        // homogeneous generators, every component of the same degree
        let gens: Vec<Vec<Poly<PrimeField>>> = (0..r.gen_range(2..=3))
            .map(|_| {
                let deg = r.gen_range(1..=2);
                let monos = piece(deg);
                (0..rank)
                    .map(|_| Poly::from_terms(ring, nv, (0..2).map(|_| (monos.choose(&mut r).unwrap().clone(), ring.elem(r.gen_range(0..p as i64))))))
                    .collect()
            })
            .collect();
        let pres = SubmodulePresentation::new(ring, nv, rank, gens.clone()).unwrap();
        let ann = annihilator(&pres, &limits).unwrap();
        let lead = MonomialIdeal::new(nv, ideal_gb(&ring, nv, &ann, &limits).unwrap().leading_monomials());
        for deg in 0..=4u32 {
            let basis = piece(deg);
            let block = rank * basis.len();
            let coords = |v: &[Poly<PrimeField>]| -> Vec<u64> { v.iter().flat_map(|f| basis.iter().map(|m| f.coeff(m).value())).collect() };
            // N_deg embedded in each of the `rank` copies of F^rank
            let mut span = FpSpan::new(p);
            for g in &gens {
                let gd = g.iter().filter(|f| !f.is_zero()).map(|f| f.degree().unwrap() as u32).max();
                let Some(gd) = gd else { continue };
                if gd > deg {
                    continue;
                }
                for m in piece(deg - gd) {
                    let v: Vec<Poly<PrimeField>> = g.iter().map(|f| f.mul_monomial(&ring.one(), &m)).collect();
                    let c = coords(&v);
                    for copy in 0..rank {
                        let mut row = vec![0u64; rank * block];
                        row[copy * block..(copy + 1) * block].copy_from_slice(&c);
                        span.insert(row);
                    }
                }
            }
            let base = span.rank();
            for m in &basis {
                let mut row = vec![0u64; rank * block];
                for i in 0..rank {
                    let mut e: Vec<Poly<PrimeField>> = (0..rank).map(|_| Poly::zero(ring, nv)).collect();
                    e[i] = Poly::monomial(ring, ring.one(), m.clone());
                    row[i * block..(i + 1) * block].copy_from_slice(&coords(&e));
                }
                span.insert(row);
            }
            let ann_dim = basis.len() - (span.rank() - base);
            let standard = lead.hilbert_function(deg as u64) - if deg == 0 { 0 } else { lead.hilbert_function(deg as u64 - 1) };
            assert_eq!(basis.len() as u64 - standard, ann_dim as u64, "case {case} degree {deg}");
        }
    }
}
