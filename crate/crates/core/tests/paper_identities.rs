//! The display-level identities: every closed-form expansion the reductions
//! rely on is checked entrywise against the generic machinery.

mod common;

use common::{ctx, random_seed};
use joseph_core::ideal::{
    self, cartan_vanishes, pair_bracket, pair_trace, reduce, sp_restrict, sp_zero_pad,
    special_tensor, young_z, ReductionOrder, SeedTensor,
};
use joseph_core::lie::AlgebraKind;
use joseph_core::rational::{frac, int};

#[test]
fn so_z_matches_closed_form_and_is_pure_trace() {
    for n in 5..=8usize {
        let c = ctx(AlgebraKind::SO(n));
        for stream in 0..3u64 {
            let seed = random_seed(&c, 100 + stream);
            let s = special_tensor(&c, &seed).unwrap();
            let z = young_z(&c, &s).unwrap();
            let closed = ideal::so_z_closed_form(&c, &seed).unwrap();
            assert_eq!(z, closed, "so({n}) Z display mismatch");
            // The trace-free part of Z in the last four slots vanishes.
            let tf = c.cartan_project_slots(&z, 2).unwrap();
            assert!(tf.is_zero(), "so({n}) Z trace-free part nonzero");
        }
    }
}

#[test]
fn sp_z_vanishes() {
    for n in 2..=4usize {
        let c = ctx(AlgebraKind::SP(n));
        for stream in 0..3u64 {
            let seed = random_seed(&c, 200 + stream);
            let s = special_tensor(&c, &seed).unwrap();
            let z = young_z(&c, &s).unwrap();
            assert!(z.is_zero(), "sp({}) Z nonzero", 2 * n);
        }
    }
}

#[test]
fn sl_z_matches_closed_form_and_is_pure_trace() {
    for n in 3..=6usize {
        let c = ctx(AlgebraKind::SL(n));
        for stream in 0..3u64 {
            let seed = random_seed(&c, 300 + stream);
            let s = special_tensor(&c, &seed).unwrap();
            let z = young_z(&c, &s).unwrap();
            let closed = ideal::sl_z_closed_form(&c, &seed).unwrap();
            assert_eq!(z, closed, "sl({n}) Z display mismatch");
            let tf = c.cartan_project_slots(&z, 2).unwrap();
            assert!(tf.is_zero(), "sl({n}) Z trace-free part nonzero");
        }
    }
}

#[test]
fn sp_young_step_is_the_six_coset_average() {
    // The symplectic Young step is implemented as the average over all 24
    // arrangements of the last four slots. On pair-symmetric input the 24
    // permuted tensors collapse into exactly 6 distinct values (the cosets
    // of the within-pair swaps), each occurring 4 times, so the full
    // average equals the six-representative average.
    let c = ctx(AlgebraKind::SP(2));
    let seed = random_seed(&c, 900);
    let s = special_tensor(&c, &seed).unwrap();
    let mut distinct: Vec<(joseph_core::tensor::DenseTensor, usize)> = Vec::new();
    for perm in joseph_core::tensor::permutations(4) {
        let mut full: Vec<usize> = vec![0, 1, 0, 0, 0, 0];
        for (k, &p) in perm.iter().enumerate() {
            full[2 + k] = 2 + p;
        }
        let image = s.tensor().permuted(&full).unwrap();
        match distinct.iter_mut().find(|(t, _)| *t == image) {
            Some((_, count)) => *count += 1,
            None => distinct.push((image, 1)),
        }
    }
    assert_eq!(distinct.len(), 6);
    assert!(distinct.iter().all(|(_, count)| *count == 4));
    let mut avg = joseph_core::tensor::DenseTensor::zeros(
        s.tensor().dim(),
        s.tensor().variance(),
    )
    .unwrap();
    for (t, _) in &distinct {
        avg.add_assign(t).unwrap();
    }
    let avg = avg.scale(&frac(1, 6));
    assert_eq!(avg, young_z(&c, &s).unwrap());
}

#[test]
fn so_intermediate_traces() {
    for n in 5..=8usize {
        let c = ctx(AlgebraKind::SO(n));
        let seed = random_seed(&c, 400 + n as u64);
        let s = special_tensor(&c, &seed).unwrap();
        // S^a_b^{bdef} closed form.
        let single = c.trace_pair(s.tensor(), 1, 2).unwrap();
        let display = ideal::so_first_trace_closed_form(&c, &seed).unwrap();
        assert_eq!(single, display, "so({n}) first single trace");
        // Skewness in (a, d) makes the half-difference equal the display.
        let b = pair_bracket(&c, s.tensor(), 0).unwrap().scale(&frac(1, 2));
        assert_eq!(b, display, "so({n}) first bracket residue");
        // S^{abc}_d^{df} closed form.
        let single2 = c.trace_pair(s.tensor(), 3, 4).unwrap();
        let display2 = ideal::so_second_trace_closed_form(&c, &seed).unwrap();
        assert_eq!(single2, display2, "so({n}) second single trace");
        // S^{ab}_{ab}^{cd} = 0 and S^{abcd}_{cd} = 2(n-1)(n-2) T^{ab}.
        assert!(pair_trace(&c, s.tensor(), 0).unwrap().is_zero());
        let full2 = pair_trace(&c, s.tensor(), 2).unwrap();
        let expect = seed
            .tensor()
            .scale(&int(2 * (n as i64 - 1) * (n as i64 - 2)));
        assert_eq!(full2, expect, "so({n}) second full trace");
    }
}

#[test]
fn sp_intermediate_residues() {
    for n in 2..=4usize {
        let c = ctx(AlgebraKind::SP(n));
        let seed = random_seed(&c, 500 + n as u64);
        let s = special_tensor(&c, &seed).unwrap();
        let b1 = pair_bracket(&c, s.tensor(), 0).unwrap().scale(&frac(1, 2));
        assert_eq!(
            b1,
            ideal::sp_first_residue_closed_form(&c, &seed).unwrap(),
            "sp({}) first residue",
            2 * n
        );
        let b2 = pair_bracket(&c, s.tensor(), 2).unwrap().scale(&frac(1, 2));
        assert_eq!(
            b2,
            ideal::sp_second_residue_closed_form(&c, &seed).unwrap(),
            "sp({}) second residue",
            2 * n
        );
        // First-pair full trace vanishes; second-pair full trace carries the
        // lambda term: S^{abcd}_{cd} = -16(n-1)(n+1) T^{ab}.
        assert!(pair_trace(&c, s.tensor(), 0).unwrap().is_zero());
        let full2 = pair_trace(&c, s.tensor(), 2).unwrap();
        let expect = seed
            .tensor()
            .scale(&int(-16 * (n as i64 - 1) * (n as i64 + 1)));
        assert_eq!(full2, expect, "sp({}) second full trace", 2 * n);
    }
}

#[test]
fn sl_intermediate_residues() {
    for n in 3..=6usize {
        let c = ctx(AlgebraKind::SL(n));
        let seed = random_seed(&c, 600 + n as u64);
        let s = special_tensor(&c, &seed).unwrap();
        let b1 = pair_bracket(&c, s.tensor(), 0).unwrap().scale(&frac(1, 2));
        assert_eq!(
            b1,
            ideal::sl_first_residue_closed_form(&c, &seed).unwrap(),
            "sl({n}) first residue"
        );
        let b2 = pair_bracket(&c, s.tensor(), 2).unwrap();
        assert_eq!(
            b2,
            ideal::sl_second_residue_closed_form(&c, &seed).unwrap(),
            "sl({n}) second residue (pre-half)"
        );
    }
}

#[test]
fn reduction_coefficients_on_random_seeds() {
    // The reduction coefficients are seed-independent; spot-check on a
    // couple of random seeds per kind.
    let cases: [(AlgebraKind, (i64, i64), (i64, i64), i64); 3] = [
        // (kind, (c1 num, den), (c2 const num, den), c2 slope)
        (AlgebraKind::SO(6), (8, 1), (4, 1), -160),
        (AlgebraKind::SP(3), (-32, 1), (-16, 1), 1024),
        (AlgebraKind::SL(4), (-4, 1), (-2, 1), 80),
    ];
    for (kind, c1, c2c, c2s) in cases {
        let c = ctx(kind);
        for stream in 0..2u64 {
            let seed = random_seed(&c, 700 + stream);
            let s = special_tensor(&c, &seed).unwrap();
            let r1 = reduce(&c, &s, ReductionOrder::FirstPair).unwrap();
            let r2 = reduce(&c, &s, ReductionOrder::SecondPair).unwrap();
            assert_eq!(r1.coefficient.constant, frac(c1.0, c1.1), "{kind:?}");
            assert!(r1.coefficient.slope.is_integer() && r1.coefficient.slope == int(0));
            assert_eq!(r2.coefficient.constant, frac(c2c.0, c2c.1), "{kind:?}");
            assert_eq!(r2.coefficient.slope, int(c2s), "{kind:?}");
        }
    }
}

#[test]
fn generator_matches_index_form_displays() {
    // Expanding the abstract generator on basis pairs must reproduce the
    // kind's index-form display: the degree-1 part is the half pair-bracket
    // contraction and the degree-0 part carries the derived Killing
    // multiple of the invariant trace.
    for kind in [AlgebraKind::SO(5), AlgebraKind::SP(2), AlgebraKind::SL(3)] {
        let c = ctx(kind);
        let lam = frac(2, 7);
        for (i, j) in [(0usize, 1usize), (2, 5), (1, 4)] {
            let x = &c.basis()[i];
            let y = &c.basis()[j % c.algebra_dim()];
            let g = joseph_core::ideal::generator(&c, &lam, x, y).unwrap();
            let v = x.tensor_product(y).unwrap();
            let half_bracket = pair_bracket(&c, &v, 0).unwrap().scale(&frac(-1, 2));
            assert_eq!(g.degree1, half_bracket, "{kind:?} degree-1 display");
            let trace = pair_trace(&c, &v, 0).unwrap();
            let expected0 = -(lam.clone() * c.pairing_multiple() * &trace.data()[0]);
            assert_eq!(g.degree0, expected0, "{kind:?} degree-0 display");
        }
    }
}

#[test]
fn sp_zero_padding_preserves_the_intersection() {
    let small = ctx(AlgebraKind::SP(2));
    let large = ctx(AlgebraKind::SP(3));
    let seed = random_seed(&small, 800);
    let s = special_tensor(&small, &seed).unwrap();
    let padded = sp_zero_pad(&small, &large, &s).unwrap();
    assert!(cartan_vanishes(&large, &padded, ReductionOrder::FirstPair).unwrap());
    assert!(cartan_vanishes(&large, &padded, ReductionOrder::SecondPair).unwrap());
    // Restriction undoes the padding on surviving entries.
    let back = sp_restrict(&small, &padded).unwrap();
    assert_eq!(back.tensor(), s.tensor());
    assert_eq!(back.seed(), s.seed());
    // Zero pads to zero.
    let zero = SeedTensor::new(
        &small,
        joseph_core::tensor::DenseTensor::zeros(4, &joseph_core::tensor::variances("uu")).unwrap(),
    )
    .unwrap();
    let zs = special_tensor(&small, &zero).unwrap();
    let zp = sp_zero_pad(&small, &large, &zs).unwrap();
    assert!(zp.tensor().is_zero());
}

#[test]
fn boundary_so4_first_coefficient_would_vanish() {
    // (n-2)(n-4) vanishes at n=4; the context itself is rejected, so the
    // boundary statement is checked on the interpolated closed form.
    let samples: Vec<_> = (5..=9)
        .map(|n| {
            let c = ctx(AlgebraKind::SO(n));
            let (c1, _) = joseph_core::ideal::reduction_pair(&c).unwrap();
            (int(n as i64), c1.constant)
        })
        .collect();
    let p = joseph_core::poly::interpolate(&samples, 3).unwrap();
    assert_eq!(p.eval(&int(4)), int(0));
    assert_eq!(p, joseph_core::poly::Poly::from_ints(&[8, -6, 1]));
}
