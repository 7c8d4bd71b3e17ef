//! Hom-space dimensions and explicit equivariant-map spaces.
//!
//! Two independent routes into the same numbers. `hom_dims` works purely
//! with characters: it decomposes the antisymmetric square of the adjoint
//! module and counts adjoint multiplicities through Klimyk's formula.
//! `dim_hom_ker_phi` builds the equivariant maps `g -> Lambda^2 g (x) g`
//! explicitly as exact tensors, intersects with the kernels of the
//! projection `Phi` (Cartan product on the last two factors) and the
//! contraction `Psi` (Killing pairing on the last two factors), and returns
//! dimensions with a concrete basis.
//!
//! The explicit solver works on the span of invariant contraction
//! monomials (metric placements for `so`/`sp`, delta chains for `sl`).
//! Completeness of that span is certified, not assumed: the solved
//! dimension must equal the character-theoretic count, otherwise the
//! computation aborts.

use alloc::vec::Vec;

use core::fmt;

use num_traits::Zero;

use crate::lie::{AlgebraKind, LieContext, LieError};
use crate::linalg::{self, RowReducer};
use crate::rational::Rational;
use crate::rep::roots::{self, RootError};
use crate::tensor::{DenseTensor, TensorError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomError {
    Lie(LieError),
    Root(RootError),
    Tensor(TensorError),
    /// The explicit solver only runs on the smallest context per kind.
    ContextTooLarge(AlgebraKind),
    /// The monomial span missed equivariant maps the character count sees
    /// (or found spurious ones); either way the computation is unsound.
    CompletenessMismatch { solved: usize, expected: u64 },
    /// A solved basis map failed the exact equivariance re-check.
    NotEquivariant,
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::Lie(e) => write!(f, "{e}"),
            HomError::Root(e) => write!(f, "{e}"),
            HomError::Tensor(e) => write!(f, "{e}"),
            HomError::ContextTooLarge(k) => {
                write!(f, "explicit Hom solver limited to the smallest contexts; got {}", k.label())
            }
            HomError::CompletenessMismatch { solved, expected } => write!(
                f,
                "solved map space has dimension {solved}, character count says {expected}"
            ),
            HomError::NotEquivariant => write!(f, "solved map failed the equivariance re-check"),
        }
    }
}

impl From<LieError> for HomError {
    fn from(e: LieError) -> Self {
        HomError::Lie(e)
    }
}

impl From<RootError> for HomError {
    fn from(e: RootError) -> Self {
        HomError::Root(e)
    }
}

impl From<TensorError> for HomError {
    fn from(e: TensorError) -> Self {
        HomError::Tensor(e)
    }
}

pub type Result<T> = core::result::Result<T, HomError>;

/// Character route: `(dim Hom(g, Lambda^2 g (x) g), dim Hom(g, g (x) Cartan^2 g))`.
pub fn hom_dims(kind: AlgebraKind) -> Result<(u64, u64)> {
    let (rs, adj) = roots::for_kind(kind)?;
    let g_weights = rs.weight_multiplicities(&adj)?;
    let wedge = crate::rep::roots::RootSystem::wedge_square(&g_weights);
    let comps = rs.decompose_character(&wedge)?;
    let mut h1 = 0u64;
    for (hw, mult) in &comps {
        let dec = rs.klimyk_decompose(hw, &adj)?;
        h1 += mult * dec.get(&adj).copied().unwrap_or(0);
    }
    let dec2 = rs.klimyk_decompose(&adj.plus(&adj), &adj)?;
    let h2 = dec2.get(&adj).copied().unwrap_or(0);
    Ok((h1, h2))
}

type Pair = (usize, usize);

/// One invariant contraction monomial for maps `g -> g (x) g (x) g` in the
/// six-slot index picture: the seed occupies one slot pair, the bilinear
/// structure (or delta chains) the other four.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    seed_slots: Pair,
    link1: Pair,
    link2: Pair,
}

fn candidate_monomials(kind: AlgebraKind) -> Vec<Monomial> {
    let mut out = Vec::new();
    match kind {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            for i in 0..6usize {
                for j in (i + 1)..6 {
                    let rest: Vec<usize> = (0..6).filter(|&s| s != i && s != j).collect();
                    let (q0, q1, q2, q3) = (rest[0], rest[1], rest[2], rest[3]);
                    for (l1, l2) in [
                        ((q0, q1), (q2, q3)),
                        ((q0, q2), (q1, q3)),
                        ((q0, q3), (q1, q2)),
                    ] {
                        out.push(Monomial {
                            seed_slots: (i, j),
                            link1: l1,
                            link2: l2,
                        });
                    }
                }
            }
        }
        AlgebraKind::SL(_) => {
            let uppers = [0usize, 2, 4];
            let lowers = [1usize, 3, 5];
            for &u in &uppers {
                for &l in &lowers {
                    let ru: Vec<usize> = uppers.iter().copied().filter(|&s| s != u).collect();
                    let rl: Vec<usize> = lowers.iter().copied().filter(|&s| s != l).collect();
                    for (d1, d2) in [
                        ((ru[0], rl[0]), (ru[1], rl[1])),
                        ((ru[0], rl[1]), (ru[1], rl[0])),
                    ] {
                        out.push(Monomial {
                            seed_slots: (u, l),
                            link1: d1,
                            link2: d2,
                        });
                    }
                }
            }
        }
    }
    out
}

fn eval_monomial(ctx: &LieContext, m: &Monomial, seed: &DenseTensor) -> Result<DenseTensor> {
    let n = ctx.v_dim();
    let var = match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => crate::tensor::variances("uuuuuu"),
        AlgebraKind::SL(_) => crate::tensor::variances("ululul"),
    };
    let t = match ctx.bilinear() {
        Some(b) => {
            let form = &b.form_upper;
            DenseTensor::from_fn(n, &var, |idx| {
                let s = seed.get(&[idx[m.seed_slots.0], idx[m.seed_slots.1]]);
                if s.is_zero() {
                    return Rational::zero();
                }
                let f1 = form.get(&[idx[m.link1.0], idx[m.link1.1]]);
                if f1.is_zero() {
                    return Rational::zero();
                }
                let f2 = form.get(&[idx[m.link2.0], idx[m.link2.1]]);
                if f2.is_zero() {
                    return Rational::zero();
                }
                s * f1 * f2
            })?
        }
        None => DenseTensor::from_fn(n, &var, |idx| {
            if idx[m.link1.0] != idx[m.link1.1] || idx[m.link2.0] != idx[m.link2.1] {
                return Rational::zero();
            }
            seed.get(&[idx[m.seed_slots.0], idx[m.seed_slots.1]]).clone()
        })?,
    };
    Ok(t)
}

/// Linear conditions cutting `g^(x)3`-valued maps down to
/// `Lambda^2 g (x) g`-valued ones: per-pair symmetry violations plus the
/// swap-symmetric part across the first two factors.
fn membership_images(ctx: &LieContext, v: &DenseTensor) -> Result<Vec<DenseTensor>> {
    let mut out = Vec::new();
    let swap = v.permuted(&[2, 3, 0, 1, 4, 5])?;
    out.push(v.add(&swap)?);
    match ctx.kind() {
        AlgebraKind::SO(_) => {
            for pair in [[0usize, 1], [2, 3], [4, 5]] {
                out.push(v.symmetrize(&pair, false)?);
            }
        }
        AlgebraKind::SP(_) => {
            for pair in [[0usize, 1], [2, 3], [4, 5]] {
                out.push(v.symmetrize(&pair, true)?);
            }
        }
        AlgebraKind::SL(_) => {
            for (i, j) in [(0usize, 1usize), (2, 3), (4, 5)] {
                out.push(v.contract(i, j)?);
            }
        }
    }
    Ok(out)
}

/// `Psi`: contraction of the last two factors through the invariant
/// pairing (scale-irrelevant for kernel purposes).
fn psi_image(ctx: &LieContext, v: &DenseTensor) -> Result<DenseTensor> {
    match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            let c1 = ctx.trace_pair(v, 2, 4)?;
            Ok(ctx.trace_pair(&c1, 2, 3)?)
        }
        AlgebraKind::SL(_) => {
            let c1 = v.contract(3, 4)?;
            Ok(c1.contract(2, 3)?)
        }
    }
}

/// An exactly solved space of equivariant maps `g -> Lambda^2 g (x) g`,
/// with the kernels of `Phi` and (optionally) `Psi` inside it. Maps are
/// stored as coefficient vectors over the contraction monomials.
pub struct EquivariantMapSpace {
    monomials: Vec<Monomial>,
    hom_basis: Vec<Vec<Rational>>,
    ker_phi: Vec<Vec<Rational>>,
    ker_phi_psi: Option<Vec<Vec<Rational>>>,
}

impl EquivariantMapSpace {
    pub fn hom_dim(&self) -> usize {
        self.hom_basis.len()
    }

    pub fn ker_phi_dim(&self) -> usize {
        self.ker_phi.len()
    }

    pub fn ker_phi_psi_dim(&self) -> Option<usize> {
        self.ker_phi_psi.as_ref().map(|b| b.len())
    }

    pub fn ker_phi_basis(&self) -> &[Vec<Rational>] {
        &self.ker_phi
    }

    /// Applies the map with the given monomial coefficients to a seed.
    pub fn evaluate(
        &self,
        ctx: &LieContext,
        coeffs: &[Rational],
        seed: &DenseTensor,
    ) -> Result<DenseTensor> {
        let mut acc: Option<DenseTensor> = None;
        for (c, m) in coeffs.iter().zip(&self.monomials) {
            if c.is_zero() {
                continue;
            }
            let v = eval_monomial(ctx, m, seed)?;
            match &mut acc {
                None => acc = Some(v.scale(c)),
                Some(a) => a.add_scaled_assign(c, &v)?,
            }
        }
        match acc {
            Some(a) => Ok(a),
            None => {
                let probe = eval_monomial(ctx, &self.monomials[0], seed)?;
                Ok(DenseTensor::zeros(probe.dim(), probe.variance())?)
            }
        }
    }

    /// Does the externally supplied map (given by its values on the basis
    /// seeds) lie in the span of the solved `ker Phi` basis?
    pub fn contains_in_ker_phi(
        &self,
        ctx: &LieContext,
        values_on_basis: &[DenseTensor],
    ) -> Result<bool> {
        let mut target: Vec<Rational> = Vec::new();
        for v in values_on_basis {
            target.extend_from_slice(v.data());
        }
        let mut basis_vecs: Vec<Vec<Rational>> = Vec::new();
        for combo in &self.ker_phi {
            let mut row = Vec::new();
            for seed in ctx.basis() {
                let v = self.evaluate(ctx, combo, seed)?;
                row.extend_from_slice(v.data());
            }
            basis_vecs.push(row);
        }
        Ok(linalg::membership(&target, &basis_vecs).is_some())
    }
}

/// Explicitly solves the equivariant-map space into `Lambda^2 g (x) g`,
/// certifies completeness against the character count, and intersects with
/// `ker Phi` (and `ker Psi` when requested). Resource-guarded to the
/// smallest context of each kind.
pub fn dim_hom_ker_phi(ctx: &LieContext, with_psi: bool) -> Result<EquivariantMapSpace> {
    match ctx.kind() {
        AlgebraKind::SO(5) | AlgebraKind::SP(2) | AlgebraKind::SL(3) => {}
        k => return Err(HomError::ContextTooLarge(k)),
    }
    let monomials = candidate_monomials(ctx.kind());
    let seeds: Vec<DenseTensor> = ctx.basis().to_vec();

    // Constraints: image lies in Lambda^2 g (x) g for every basis seed.
    let mut constraints = RowReducer::new(monomials.len());
    let mut per_seed_values: Vec<Vec<DenseTensor>> = Vec::with_capacity(seeds.len());
    for seed in &seeds {
        let vals: Vec<DenseTensor> = monomials
            .iter()
            .map(|m| eval_monomial(ctx, m, seed))
            .collect::<Result<_>>()?;
        for_each_image_row(ctx, &vals, &mut constraints)?;
        per_seed_values.push(vals);
    }
    let kernel = constraints.kernel();

    // Drop coefficient combos that evaluate to the zero map; what is left
    // is an honest basis of Hom(g, Lambda^2 g (x) g) within the span.
    let entry_len: usize = per_seed_values
        .iter()
        .map(|vals| vals[0].data().len())
        .sum();
    let mut eval_reducer = RowReducer::new(entry_len);
    let mut hom_basis: Vec<Vec<Rational>> = Vec::new();
    for combo in kernel {
        let mut row: Vec<Rational> = Vec::with_capacity(entry_len);
        for vals in &per_seed_values {
            let mut acc = vals[0].scale(&combo[0]);
            for (c, v) in combo.iter().zip(vals.iter()).skip(1) {
                if !c.is_zero() {
                    acc.add_scaled_assign(c, v)?;
                }
            }
            row.extend_from_slice(acc.data());
        }
        if eval_reducer.offer(row).is_some() {
            hom_basis.push(combo);
        }
    }

    // Completeness certificate: the span must account for the full
    // character-theoretic dimension.
    let (h1, _) = hom_dims(ctx.kind())?;
    if hom_basis.len() as u64 != h1 {
        return Err(HomError::CompletenessMismatch {
            solved: hom_basis.len(),
            expected: h1,
        });
    }

    // Exact equivariance re-check of every basis map on every generator.
    verify_equivariance(ctx, &hom_basis, &per_seed_values)?;

    // Values of the basis maps on every seed.
    let map_values =
        |combo: &[Rational]| -> Result<Vec<DenseTensor>> {
            let mut out = Vec::with_capacity(seeds.len());
            for vals in &per_seed_values {
                let mut acc = vals[0].scale(&combo[0]);
                for (c, v) in combo.iter().zip(vals.iter()).skip(1) {
                    if !c.is_zero() {
                        acc.add_scaled_assign(c, v)?;
                    }
                }
                out.push(acc);
            }
            Ok(out)
        };

    // ker Phi: the Cartan projection of the last two factors vanishes.
    let mut phi_rows = RowReducer::new(hom_basis.len());
    let mut phi_images: Vec<Vec<DenseTensor>> = Vec::new();
    for combo in &hom_basis {
        let mut imgs = Vec::with_capacity(seeds.len());
        for v in map_values(combo)? {
            imgs.push(ctx.cartan_project_slots(&v, 2)?);
        }
        phi_images.push(imgs);
    }
    offer_columnwise(&phi_images, &mut phi_rows);
    let ker_phi: Vec<Vec<Rational>> = phi_rows
        .kernel()
        .into_iter()
        .map(|combo| combine(&hom_basis, &combo))
        .collect();

    let ker_phi_psi = if with_psi {
        let mut rows = RowReducer::new(ker_phi.len());
        let mut images: Vec<Vec<DenseTensor>> = Vec::new();
        for combo in &ker_phi {
            let mut imgs = Vec::with_capacity(seeds.len());
            for v in map_values(combo)? {
                imgs.push(psi_image(ctx, &v)?);
            }
            images.push(imgs);
        }
        offer_columnwise(&images, &mut rows);
        Some(
            rows.kernel()
                .into_iter()
                .map(|combo| combine(&ker_phi, &combo))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    Ok(EquivariantMapSpace {
        monomials,
        hom_basis,
        ker_phi,
        ker_phi_psi,
    })
}

/// Linear combination of coefficient vectors.
fn combine(basis: &[Vec<Rational>], combo: &[Rational]) -> Vec<Rational> {
    let len = basis[0].len();
    let mut out = alloc::vec![Rational::zero(); len];
    for (c, b) in combo.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in out.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }
    out
}

/// Offers one row per tensor entry position, with one column per candidate.
/// Rows that are entirely zero are skipped cheaply.
fn offer_columnwise(images: &[Vec<DenseTensor>], reducer: &mut RowReducer) {
    if images.is_empty() {
        return;
    }
    let per_seed = images[0].len();
    for s in 0..per_seed {
        let len = images[0][s].data().len();
        for e in 0..len {
            if images.iter().all(|img| img[s].data()[e].is_zero()) {
                continue;
            }
            let row: Vec<Rational> = images.iter().map(|img| img[s].data()[e].clone()).collect();
            reducer.offer(row);
        }
    }
}

fn for_each_image_row(
    ctx: &LieContext,
    vals: &[DenseTensor],
    reducer: &mut RowReducer,
) -> Result<()> {
    let mut images: Vec<Vec<DenseTensor>> = Vec::with_capacity(vals.len());
    for v in vals {
        images.push(membership_images(ctx, v)?);
    }
    let ops = images[0].len();
    for op in 0..ops {
        let len = images[0][op].data().len();
        for e in 0..len {
            if images.iter().all(|img| img[op].data()[e].is_zero()) {
                continue;
            }
            let row: Vec<Rational> = images.iter().map(|img| img[op].data()[e].clone()).collect();
            reducer.offer(row);
        }
    }
    Ok(())
}

/// Full equivariance check of the solved maps: `F([Z, s]) = Z . F(s)` for
/// every generator `Z` and every basis seed `s`.
fn verify_equivariance(
    ctx: &LieContext,
    hom_basis: &[Vec<Rational>],
    per_seed_values: &[Vec<DenseTensor>],
) -> Result<()> {
    let d = ctx.algebra_dim();
    // Precompute the basis-map values per seed.
    let mut values: Vec<Vec<DenseTensor>> = Vec::with_capacity(hom_basis.len());
    for combo in hom_basis {
        let mut per_seed = Vec::with_capacity(d);
        for vals in per_seed_values {
            let mut acc = vals[0].scale(&combo[0]);
            for (c, v) in combo.iter().zip(vals.iter()).skip(1) {
                if !c.is_zero() {
                    acc.add_scaled_assign(c, v)?;
                }
            }
            per_seed.push(acc);
        }
        values.push(per_seed);
    }
    for per_seed in values.iter() {
        for zi in 0..d {
            let z = &ctx.basis()[zi];
            for si in 0..d {
                let s = &ctx.basis()[si];
                let zs = ctx.bracket(z, s)?;
                let coords = ctx.expand(&zs)?;
                // F([Z, s]) by linearity over the seed basis.
                let mut lhs = DenseTensor::zeros(per_seed[0].dim(), per_seed[0].variance())?;
                for (c, v) in coords.iter().zip(per_seed.iter()) {
                    if !c.is_zero() {
                        lhs.add_scaled_assign(c, v)?;
                    }
                }
                let rhs = ctx.adjoint_action(z, &per_seed[si])?;
                if lhs != rhs {
                    return Err(HomError::NotEquivariant);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_dims_match_the_stated_table() {
        assert_eq!(hom_dims(AlgebraKind::SO(7)).unwrap(), (2, 1));
        assert_eq!(hom_dims(AlgebraKind::SP(2)).unwrap(), (2, 1));
        assert_eq!(hom_dims(AlgebraKind::SL(3)).unwrap(), (4, 1));
        assert_eq!(hom_dims(AlgebraKind::SL(2)).unwrap(), (1, 1));
    }

    #[test]
    fn resource_guard_rejects_large_contexts() {
        let ctx = crate::lie::LieContext::build(AlgebraKind::SO(6)).unwrap();
        assert!(matches!(
            dim_hom_ker_phi(&ctx, false),
            Err(HomError::ContextTooLarge(_))
        ));
    }

    #[test]
    fn sp2_ker_phi_is_a_line() {
        let ctx = crate::lie::LieContext::build(AlgebraKind::SP(2)).unwrap();
        let space = dim_hom_ker_phi(&ctx, false).unwrap();
        assert_eq!(space.hom_dim(), 2);
        assert_eq!(space.ker_phi_dim(), 1);
    }
}
