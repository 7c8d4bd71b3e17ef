//! Randomized invariants: exactness and algebraic laws of the tensor core,
//! dimension identities of the weight engine, confluence of normal ordering.

use joseph_core::poly::Poly;
use joseph_core::rational::{frac, int, Rational};
use joseph_core::rep::roots::{DominantWeight, RootSystem, RootType};
use joseph_core::tensor::{variances, DenseTensor, Variance};
use joseph_core::weyl::{monomials, WeylElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| frac(p, q))
}

fn arb_tensor(dim: usize, rank: usize) -> impl Strategy<Value = DenseTensor> {
    let len = dim.pow(rank as u32);
    proptest::collection::vec(arb_rational(), len).prop_map(move |data| {
        let var = vec![Variance::Upper; rank];
        let mut idx = 0usize;
        DenseTensor::from_fn(dim, &var, |_| {
            let v = data[idx].clone();
            idx += 1;
            v
        })
        .unwrap()
    })
}

fn arb_mixed_tensor(dim: usize, pattern: &'static str) -> impl Strategy<Value = DenseTensor> {
    let var = variances(pattern);
    let len = dim.pow(var.len() as u32);
    proptest::collection::vec(arb_rational(), len).prop_map(move |data| {
        let mut idx = 0usize;
        DenseTensor::from_fn(dim, &var, |_| {
            let v = data[idx].clone();
            idx += 1;
            v
        })
        .unwrap()
    })
}

fn canonical(r: &Rational) -> bool {
    r.denom() > &BigInt::zero() && r.numer().gcd(r.denom()).is_one()
        || (r.numer().is_zero() && r.denom().is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contract_is_bilinear(
        a in arb_mixed_tensor(3, "ulu"),
        b in arb_mixed_tensor(3, "ulu"),
        s in arb_rational(),
    ) {
        let left = a.add(&b.scale(&s)).unwrap().contract(0, 1).unwrap();
        let right = a
            .contract(0, 1)
            .unwrap()
            .add(&b.contract(0, 1).unwrap().scale(&s))
            .unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn symmetrize_is_projector(t in arb_tensor(3, 4)) {
        for anti in [false, true] {
            let s1 = t.symmetrize(&[0, 2, 3], anti).unwrap();
            let s2 = s1.symmetrize(&[0, 2, 3], anti).unwrap();
            prop_assert_eq!(&s1, &s2);
        }
    }

    #[test]
    fn disjoint_contractions_commute(t in arb_mixed_tensor(3, "ullu")) {
        let ab_first = t.contract(0, 1).unwrap().contract(0, 1).unwrap();
        let cd_first = t.contract(2, 3).unwrap().contract(0, 1).unwrap();
        prop_assert_eq!(ab_first, cd_first);
    }

    #[test]
    fn op_chains_with_large_denominators_stay_canonical(
        nums in proptest::collection::vec(-1_000_000i64..=1_000_000, 9),
        dens in proptest::collection::vec(1i64..=1_000_000, 9),
    ) {
        let mut k = 0usize;
        let t = DenseTensor::from_fn(3, &variances("ul"), |_| {
            let v = frac(nums[k], dens[k]);
            k += 1;
            v
        })
        .unwrap();
        let p = t.tensor_product(&t).unwrap();                 // 1
        let q = p.permuted(&[2, 3, 0, 1]).unwrap();            // 2
        let r = q.contract(0, 1).unwrap();                     // 3
        let s = r.scale(&frac(999_983, 999_979));              // 4
        let u = s.add(&r).unwrap();                            // 5
        let v = u.sub(&r).unwrap();                            // 6
        let w = v.tensor_product(&r).unwrap();                 // 7
        let x = w.symmetrize(&[0, 2], false).unwrap();         // 8
        let y = x.contract(0, 1).unwrap();                     // 9
        let z = y.scale(&frac(-1, 999_983));                   // 10
        for entry in z.data() {
            prop_assert!(canonical(entry));
        }
    }

    #[test]
    fn op_chains_stay_canonical(t in arb_mixed_tensor(3, "ul"), u in arb_mixed_tensor(3, "ul")) {
        // A ten-op chain mixing products, contractions, permutations,
        // symmetrizations and scalings; every entry must stay a canonical
        // reduced fraction.
        let p = t.tensor_product(&u).unwrap();              // 1
        let q = p.permuted(&[2, 1, 0, 3]).unwrap();         // 2
        let r = q.symmetrize(&[0, 2], false).unwrap();      // 3
        let s = r.scale(&frac(3, 7));                       // 4
        let c = s.contract(0, 1).unwrap();                  // 5
        let d = c.tensor_product(&c).unwrap();              // 6
        let e = d.contract(1, 2).unwrap();                  // 7
        let f = e.add(&e).unwrap();                         // 8
        let g = f.sub(&e).unwrap();                         // 9
        let h = g.scale(&frac(-7, 3));                      // 10
        for v in h.data() {
            prop_assert!(canonical(v));
        }
        prop_assert_eq!(h, e.scale(&frac(-7, 3)));
    }

    #[test]
    fn weyl_composition_is_associative(
        za in proptest::collection::vec(0u32..3, 2),
        zb in proptest::collection::vec(0u32..3, 2),
        zc in proptest::collection::vec(0u32..3, 2),
        da in proptest::collection::vec(0u32..3, 2),
        db in proptest::collection::vec(0u32..3, 2),
        dc in proptest::collection::vec(0u32..3, 2),
        ca in arb_rational(),
        cb in arb_rational(),
        cc in arb_rational(),
    ) {
        let term = |z: &[u32], d: &[u32], c: &Rational| {
            let mut w = WeylElement::zero(2);
            let mut zc1 = WeylElement::identity(2);
            for (i, &e) in z.iter().enumerate() {
                for _ in 0..e {
                    zc1 = zc1.compose(&WeylElement::coordinate(2, i)).unwrap();
                }
            }
            for (i, &e) in d.iter().enumerate() {
                for _ in 0..e {
                    zc1 = zc1.compose(&WeylElement::derivative(2, i)).unwrap();
                }
            }
            w = w.add(&zc1.scale(c)).unwrap();
            w
        };
        let a = term(&za, &da, &ca);
        let b = term(&zb, &db, &cb);
        let c = term(&zc, &dc, &cc);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // Confluence coda: the composed operator acts exactly as acting in
        // sequence, on every monomial of degree <= 4.
        for d in 0..=4u32 {
            for m in monomials(2, d) {
                let composed = left.apply_monomial(&m).unwrap();
                // c, then b, then a, collecting term by term.
                let mut acc: std::collections::BTreeMap<Vec<u32>, Rational> =
                    std::collections::BTreeMap::new();
                for (e1, c1) in c.apply_monomial(&m).unwrap() {
                    for (e2, c2) in b.apply_monomial(&e1).unwrap() {
                        for (e3, c3) in a.apply_monomial(&e2).unwrap() {
                            *acc.entry(e3).or_insert_with(Rational::zero) += &c1 * &c2 * &c3;
                        }
                    }
                }
                let sequential: Vec<(Vec<u32>, Rational)> =
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                prop_assert_eq!(composed, sequential);
            }
        }
    }

    #[test]
    fn klimyk_dimension_identity_random_pairs(
        type_idx in 0usize..4,
        rank in 2usize..=4,
        c1 in proptest::collection::vec(0i64..3, 4),
        c2 in proptest::collection::vec(0i64..3, 4),
    ) {
        let rtype = [RootType::A, RootType::B, RootType::C, RootType::D][type_idx];
        let rank = if rtype == RootType::D { rank.max(3) } else { rank };
        let rs = RootSystem::new(rtype, rank).unwrap();
        let hw1 = DominantWeight::new(c1[..rank].to_vec()).unwrap();
        let hw2 = DominantWeight::new(c2[..rank].to_vec()).unwrap();
        let dec = rs.klimyk_decompose(&hw1, &hw2).unwrap();
        let total = rs.total_dim(&dec).unwrap();
        prop_assert_eq!(total, rs.weyl_dim(&hw1).unwrap() * rs.weyl_dim(&hw2).unwrap());
        // The Cartan component is always present exactly once.
        prop_assert_eq!(dec.get(&hw1.plus(&hw2)).copied(), Some(1));
    }
}

#[test]
fn interpolation_rejects_inconsistent_grids() {
    let samples = vec![
        (int(1), int(1)),
        (int(2), int(4)),
        (int(3), int(9)),
        (int(4), int(17)),
    ];
    assert!(joseph_core::poly::interpolate(&samples, 2).is_none());
    let ok = vec![(int(1), int(1)), (int(2), int(4)), (int(3), int(9))];
    assert_eq!(
        joseph_core::poly::interpolate(&ok, 2).unwrap(),
        Poly::from_ints(&[0, 0, 1])
    );
}

#[test]
fn dx_terms_are_degree_balanced() {
    use joseph_core::ideal::SeedTensor;
    use joseph_core::lie::{AlgebraKind, LieContext};
    use joseph_core::weyl::{cartan_power_basis, dx};
    use rand_core::SeedableRng;
    let ctx = LieContext::build(AlgebraKind::SL(3)).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let x = SeedTensor::random(&ctx, &mut rng);
        let op = dx(&joseph_core::weyl::CartanPowerElement::from_algebra_element(
            &ctx,
            x.tensor(),
        )
        .unwrap());
        assert!(op.is_degree_preserving());
    }
    for x in cartan_power_basis(&ctx, 2).unwrap() {
        assert!(dx(&x).is_degree_preserving());
    }
}
