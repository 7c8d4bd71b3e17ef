//! Dense exact-rational tensors with per-slot variance.
//!
//! Every indexed object in the crate (metrics, algebra elements, the rank-6
//! special tensors) is a `DenseTensor`: a uniform-dimension multi-index array
//! of `Rational` entries with an upper/lower flag per slot. Contraction
//! demands opposite variance; raising and lowering go through an explicit
//! bilinear form, so index-convention mistakes surface as errors instead of
//! silently wrong signs.
//!
//! Storage is row-major and dense. The accepted ceiling is slot dimension 12
//! and rank 6 (about three million entries); everything the verification
//! suites touch fits comfortably below it.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use num_traits::{One, Zero};

use crate::linalg;
use crate::rational::Rational;

/// Hard resource ceiling on slot dimension.
pub const MAX_DIM: usize = 12;
/// Hard resource ceiling on rank.
pub const MAX_RANK: usize = 6;

/// Index position type: `Upper` contracts only against `Lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// Shorthand for variance strings: `uu("ul")` is `[Upper, Lower]`.
pub fn variances(pattern: &str) -> Vec<Variance> {
    pattern
        .chars()
        .map(|c| match c {
            'u' => Variance::Upper,
            'l' => Variance::Lower,
            _ => panic!("variance pattern must be 'u'/'l'"),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorError {
    DimMismatch { left: usize, right: usize },
    RankMismatch { left: usize, right: usize },
    SlotOutOfRange { slot: usize, rank: usize },
    SameVariance { i: usize, j: usize },
    VarianceMismatch,
    NotAPermutation,
    LimitExceeded { dim: usize, rank: usize },
    FormRank { rank: usize },
    ShapeMismatch,
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::DimMismatch { left, right } => {
                write!(f, "slot dimensions differ: {left} vs {right}")
            }
            TensorError::RankMismatch { left, right } => {
                write!(f, "ranks differ: {left} vs {right}")
            }
            TensorError::SlotOutOfRange { slot, rank } => {
                write!(f, "slot {slot} out of range for rank {rank}")
            }
            TensorError::SameVariance { i, j } => {
                write!(f, "slots {i} and {j} have equal variance; raise or lower first")
            }
            TensorError::VarianceMismatch => write!(f, "slot variances incompatible"),
            TensorError::NotAPermutation => write!(f, "slot list is not a permutation"),
            TensorError::LimitExceeded { dim, rank } => {
                write!(f, "tensor {dim}^{rank} exceeds the dim<={MAX_DIM}, rank<={MAX_RANK} ceiling")
            }
            TensorError::FormRank { rank } => {
                write!(f, "bilinear form must have rank 2, got {rank}")
            }
            TensorError::ShapeMismatch => write!(f, "tensor shapes differ"),
        }
    }
}

pub type Result<T> = core::result::Result<T, TensorError>;

/// A permutation of slot positions with an optional sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPermutation {
    perm: Vec<usize>,
    sign: i8,
}

impl SlotPermutation {
    /// `perm[j]` is the output index position read by input slot `j`:
    /// applying to `t` yields `u` with `u[x_0,..] = t[x_{perm[0]}, ..]`.
    pub fn new(perm: &[usize], sign: i8) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(TensorError::NotAPermutation);
            }
            seen[p] = true;
        }
        assert!(sign == 1 || sign == -1);
        Ok(SlotPermutation {
            perm: perm.to_owned(),
            sign,
        })
    }

    pub fn identity(rank: usize) -> Self {
        SlotPermutation {
            perm: (0..rank).collect(),
            sign: 1,
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Parity of the permutation itself (inversion count), independent of
    /// the attached sign.
    pub fn parity(&self) -> i8 {
        let mut inv = 0usize;
        for i in 0..self.perm.len() {
            for j in (i + 1)..self.perm.len() {
                if self.perm[i] > self.perm[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Exact dense tensor: `dim^rank` rationals, row-major by slot order.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseTensor {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<Rational>,
}

impl fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.data.iter().filter(|x| !x.is_zero()).count();
        write!(
            f,
            "DenseTensor(dim={}, variance={:?}, nonzero={}/{})",
            self.dim,
            self.variance,
            nz,
            self.data.len()
        )?;
        if self.data.len() <= 32 {
            write!(f, " {:?}", self.data)?;
        }
        Ok(())
    }
}

fn checked_len(dim: usize, rank: usize) -> Result<usize> {
    if dim == 0 || dim > MAX_DIM || rank > MAX_RANK {
        return Err(TensorError::LimitExceeded { dim, rank });
    }
    Ok(dim.pow(rank as u32))
}

impl DenseTensor {
    pub fn zeros(dim: usize, variance: &[Variance]) -> Result<Self> {
        let len = checked_len(dim, variance.len())?;
        Ok(DenseTensor {
            dim,
            variance: variance.to_owned(),
            data: vec![Rational::zero(); len],
        })
    }

    /// Rank-0 tensor holding one scalar.
    pub fn scalar(dim: usize, value: Rational) -> Result<Self> {
        checked_len(dim, 0)?;
        Ok(DenseTensor {
            dim,
            variance: Vec::new(),
            data: vec![value],
        })
    }

    /// Kronecker delta `d^a_b`.
    pub fn delta(dim: usize) -> Result<Self> {
        let mut t = DenseTensor::zeros(dim, &[Variance::Upper, Variance::Lower])?;
        for i in 0..dim {
            t.data[i * dim + i] = Rational::one();
        }
        Ok(t)
    }

    pub fn from_fn(
        dim: usize,
        variance: &[Variance],
        mut f: impl FnMut(&[usize]) -> Rational,
    ) -> Result<Self> {
        let mut t = DenseTensor::zeros(dim, variance)?;
        let rank = variance.len();
        let mut idx = vec![0usize; rank];
        for entry in t.data.iter_mut() {
            *entry = f(&idx);
            Self::advance(&mut idx, dim);
        }
        Ok(t)
    }

    fn advance(idx: &mut [usize], dim: usize) {
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < dim {
                return;
            }
            idx[k] = 0;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    #[inline]
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        let mut lin = 0usize;
        for &i in idx {
            debug_assert!(i < self.dim);
            lin = lin * self.dim + i;
        }
        lin
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.linear_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let lin = self.linear_index(idx);
        self.data[lin] = value;
    }

    pub fn add_at(&mut self, idx: &[usize], value: &Rational) {
        let lin = self.linear_index(idx);
        self.data[lin] += value;
    }

    /// Calls `f` on every (multi-index, entry) pair.
    pub fn for_each(&self, mut f: impl FnMut(&[usize], &Rational)) {
        let mut idx = vec![0usize; self.rank()];
        for lin in 0..self.data.len() {
            f(&idx, &self.data[lin]);
            Self::advance(&mut idx, self.dim);
        }
    }

    fn same_shape(&self, other: &DenseTensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(TensorError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.variance != other.variance {
            if self.rank() != other.rank() {
                return Err(TensorError::RankMismatch {
                    left: self.rank(),
                    right: other.rank(),
                });
            }
            return Err(TensorError::VarianceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DenseTensor) -> Result<DenseTensor> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += y;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseTensor) -> Result<DenseTensor> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x -= y;
            }
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &DenseTensor) -> Result<()> {
        self.same_shape(other)?;
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += y;
            }
        }
        Ok(())
    }

    pub fn add_scaled_assign(&mut self, scale: &Rational, other: &DenseTensor) -> Result<()> {
        self.same_shape(other)?;
        if scale.is_zero() {
            return Ok(());
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += scale * y;
            }
        }
        Ok(())
    }

    pub fn neg(&self) -> DenseTensor {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            if !x.is_zero() {
                *x = -x.clone();
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> DenseTensor {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            if !x.is_zero() {
                *x *= factor;
            }
        }
        out
    }

    /// Contraction of slots `i < j` with opposite variance: the repeated
    /// index is summed, surviving slots keep their order.
    pub fn contract(&self, i: usize, j: usize) -> Result<DenseTensor> {
        let rank = self.rank();
        if i >= rank || j >= rank {
            return Err(TensorError::SlotOutOfRange {
                slot: i.max(j),
                rank,
            });
        }
        if i == j {
            return Err(TensorError::SameVariance { i, j });
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if self.variance[i] == self.variance[j] {
            return Err(TensorError::SameVariance { i, j });
        }
        let mut out_var = Vec::with_capacity(rank - 2);
        for (k, &v) in self.variance.iter().enumerate() {
            if k != i && k != j {
                out_var.push(v);
            }
        }
        let mut out = DenseTensor::zeros(self.dim, &out_var)?;
        let dim = self.dim;
        let mut out_idx = vec![0usize; rank - 2];
        let mut src_idx = vec![0usize; rank];
        for out_lin in 0..out.data.len() {
            // Scatter surviving indices into the source index pattern.
            let mut k = 0;
            for (slot, s) in src_idx.iter_mut().enumerate() {
                if slot != i && slot != j {
                    *s = out_idx[k];
                    k += 1;
                }
            }
            let mut acc = Rational::zero();
            for rep in 0..dim {
                src_idx[i] = rep;
                src_idx[j] = rep;
                let v = &self.data[self.linear_index(&src_idx)];
                if !v.is_zero() {
                    acc += v;
                }
            }
            out.data[out_lin] = acc;
            Self::advance(&mut out_idx, dim);
        }
        Ok(out)
    }

    /// Tensor product; the right factor's slots follow the left's.
    pub fn tensor_product(&self, other: &DenseTensor) -> Result<DenseTensor> {
        if self.dim != other.dim {
            return Err(TensorError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        let mut out = DenseTensor::zeros(self.dim, &variance)?;
        let rlen = other.data.len();
        for (a, x) in self.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.data.iter().enumerate() {
                if !y.is_zero() {
                    out.data[a * rlen + b] = x * y;
                }
            }
        }
        Ok(out)
    }

    /// Applies a slot permutation: `out[x_0,..] = sign * self[x_{perm[0]}, ..]`.
    pub fn permute(&self, p: &SlotPermutation) -> Result<DenseTensor> {
        let rank = self.rank();
        if p.perm.len() != rank {
            return Err(TensorError::RankMismatch {
                left: p.perm.len(),
                right: rank,
            });
        }
        let mut variance = vec![Variance::Upper; rank];
        for (j, &target) in p.perm.iter().enumerate() {
            variance[target] = self.variance[j];
        }
        let mut out = DenseTensor::zeros(self.dim, &variance)?;
        let dim = self.dim;
        let mut out_idx = vec![0usize; rank];
        let mut src_idx = vec![0usize; rank];
        let negate = p.sign < 0;
        for out_lin in 0..out.data.len() {
            for (j, &target) in p.perm.iter().enumerate() {
                src_idx[j] = out_idx[target];
            }
            let v = &self.data[self.linear_index(&src_idx)];
            if !v.is_zero() {
                out.data[out_lin] = if negate { -v.clone() } else { v.clone() };
            }
            Self::advance(&mut out_idx, dim);
        }
        Ok(out)
    }

    /// Convenience permutation from a slot-reading list; see
    /// [`SlotPermutation::new`] for the convention.
    pub fn permuted(&self, perm: &[usize]) -> Result<DenseTensor> {
        self.permute(&SlotPermutation::new(perm, 1)?)
    }

    /// Projects onto the (anti)symmetric part over the given slots: the
    /// average over all arrangements, signed for the antisymmetric mode.
    /// The chosen slots must share one variance.
    pub fn symmetrize(&self, slots: &[usize], antisymmetric: bool) -> Result<DenseTensor> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        for &s in slots {
            if s >= rank {
                return Err(TensorError::SlotOutOfRange { slot: s, rank });
            }
            if seen[s] {
                return Err(TensorError::NotAPermutation);
            }
            seen[s] = true;
        }
        if slots.len() > 1 {
            let v0 = self.variance[slots[0]];
            if slots.iter().any(|&s| self.variance[s] != v0) {
                return Err(TensorError::VarianceMismatch);
            }
        }
        let arrangements = permutations(slots.len());
        let count = Rational::from_integer((arrangements.len() as i64).into());
        let mut acc = DenseTensor::zeros(self.dim, &self.variance)?;
        for arr in &arrangements {
            let mut perm: Vec<usize> = (0..rank).collect();
            for (k, &s) in slots.iter().enumerate() {
                perm[s] = slots[arr[k]];
            }
            let sign = if antisymmetric {
                SlotPermutation::new(arr, 1)?.parity()
            } else {
                1
            };
            let term = self.permute(&SlotPermutation::new(&perm, sign)?)?;
            acc.add_assign(&term)?;
        }
        Ok(acc.scale(&(Rational::one() / count)))
    }

    /// Raises or lowers one slot through a rank-2 form, dispatching on the
    /// form's variance. Conventions (fixed once, crate-wide):
    ///
    /// * lowering with `F_{ab}`:  `X_b = X^a F_{ab}`  (slot pairs with the
    ///   form's first index),
    /// * raising with `F^{ab}`:   `X^a = X_b F^{ab}`  (slot pairs with the
    ///   form's second index).
    ///
    /// For a symmetric form the side is immaterial; for the skew form the
    /// pairing makes raise/lower exact mutual inverses.
    pub fn raise_lower(&self, slot: usize, form: &DenseTensor) -> Result<DenseTensor> {
        if form.rank() != 2 {
            return Err(TensorError::FormRank { rank: form.rank() });
        }
        if form.dim != self.dim {
            return Err(TensorError::DimMismatch {
                left: self.dim,
                right: form.dim,
            });
        }
        if slot >= self.rank() {
            return Err(TensorError::SlotOutOfRange {
                slot,
                rank: self.rank(),
            });
        }
        let slot_var = self.variance[slot];
        // `form_slot` pairs with the tensor slot; the other form index
        // becomes the new slot value.
        let form_slot = match (slot_var, form.variance[0], form.variance[1]) {
            // X_b = X^a F_{ab}
            (Variance::Upper, Variance::Lower, Variance::Lower) => 0usize,
            // X^a = X_b F^{ab}
            (Variance::Lower, Variance::Upper, Variance::Upper) => 1usize,
            _ => return Err(TensorError::VarianceMismatch),
        };
        let mut variance = self.variance.clone();
        variance[slot] = slot_var.flip();
        let mut out = DenseTensor::zeros(self.dim, &variance)?;
        let dim = self.dim;
        let rank = self.rank();
        let mut out_idx = vec![0usize; rank];
        let mut src_idx = vec![0usize; rank];
        for out_lin in 0..out.data.len() {
            src_idx.copy_from_slice(&out_idx);
            let new_index = out_idx[slot];
            let mut acc = Rational::zero();
            for rep in 0..dim {
                src_idx[slot] = rep;
                let t = &self.data[self.linear_index(&src_idx)];
                if t.is_zero() {
                    continue;
                }
                let f = if form_slot == 0 {
                    form.get(&[rep, new_index])
                } else {
                    form.get(&[new_index, rep])
                };
                if !f.is_zero() {
                    acc += t * f;
                }
            }
            out.data[out_lin] = acc;
            Self::advance(&mut out_idx, dim);
        }
        Ok(out)
    }

    /// Flattens to a plain coefficient vector (row-major entry order).
    pub fn to_vec(&self) -> Vec<Rational> {
        self.data.clone()
    }

    /// Exact membership test: coordinates of `self` in the span of `basis`,
    /// or `None` when `self` lies outside it. All tensors must share shape.
    pub fn solve_membership(&self, basis: &[DenseTensor]) -> Result<Option<Vec<Rational>>> {
        for b in basis {
            self.same_shape(b)?;
        }
        let rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.data.clone()).collect();
        Ok(linalg::membership(&self.data, &rows))
    }
}

/// All permutations of `0..k` (lexicographic-ish order, deterministic).
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = used.len();
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Standalone helper mirroring [`DenseTensor::solve_membership`].
pub fn linear_solve_membership(
    target: &DenseTensor,
    basis: &[DenseTensor],
) -> Result<Option<Vec<Rational>>> {
    target.solve_membership(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn delta(n: usize) -> DenseTensor {
        DenseTensor::delta(n).unwrap()
    }

    #[test]
    fn trace_of_identity_is_dim() {
        let t = delta(5).contract(0, 1).unwrap();
        assert_eq!(t.rank(), 0);
        assert_eq!(t.data()[0], int(5));
    }

    #[test]
    fn contraction_requires_opposite_variance() {
        let g = DenseTensor::from_fn(4, &variances("uu"), |i| {
            if i[0] == i[1] {
                int(1)
            } else {
                int(0)
            }
        })
        .unwrap();
        assert_eq!(
            g.contract(0, 1).unwrap_err(),
            TensorError::SameVariance { i: 0, j: 1 }
        );
    }

    #[test]
    fn product_then_full_contraction_gives_n_squared() {
        let d = delta(3);
        let p = d.tensor_product(&d).unwrap();
        let t = p.contract(0, 1).unwrap().contract(0, 1).unwrap();
        assert_eq!(t.data()[0], int(9));
    }

    #[test]
    fn permute_reads_slots_correctly() {
        // u[a,b] = t[b,a]
        let t = DenseTensor::from_fn(3, &variances("uu"), |i| int((3 * i[0] + i[1]) as i64))
            .unwrap();
        let u = t.permuted(&[1, 0]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(u.get(&[a, b]), t.get(&[b, a]));
            }
        }
    }

    #[test]
    fn antisymmetrize_symmetric_is_zero() {
        let s = DenseTensor::from_fn(4, &variances("uu"), |i| int((i[0] + i[1]) as i64)).unwrap();
        let a = s.symmetrize(&[0, 1], true).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn symmetrize_is_idempotent() {
        let t = DenseTensor::from_fn(3, &variances("uuu"), |i| {
            frac((i[0] * 7 + i[1] * 3 + i[2]) as i64 + 1, (i[2] + 2) as i64)
        })
        .unwrap();
        let s1 = t.symmetrize(&[0, 2], false).unwrap();
        let s2 = s1.symmetrize(&[0, 2], false).unwrap();
        assert_eq!(s1, s2);
        let a1 = t.symmetrize(&[0, 1, 2], true).unwrap();
        let a2 = a1.symmetrize(&[0, 1, 2], true).unwrap();
        assert_eq!(a1, a2);
    }

    #[test]
    fn raise_lower_round_trip_symmetric_form() {
        let n = 4;
        let g_up = delta_like_form(n, Variance::Upper);
        let g_dn = delta_like_form(n, Variance::Lower);
        let x = DenseTensor::from_fn(n, &variances("u"), |i| frac(i[0] as i64 + 1, 3)).unwrap();
        let lowered = x.raise_lower(0, &g_dn).unwrap();
        assert_eq!(lowered.variance(), &variances("l")[..]);
        let back = lowered.raise_lower(0, &g_up).unwrap();
        assert_eq!(back, x);
    }

    fn delta_like_form(n: usize, v: Variance) -> DenseTensor {
        DenseTensor::from_fn(n, &[v, v], |i| if i[0] == i[1] { int(1) } else { int(0) })
            .unwrap()
    }

    #[test]
    fn membership_solves_multiples() {
        let b1 = DenseTensor::from_fn(3, &variances("uu"), |i| int((i[0] * 3 + i[1]) as i64))
            .unwrap();
        let target = b1.scale(&int(3));
        let coeffs = target.solve_membership(&[b1.clone()]).unwrap().unwrap();
        assert_eq!(coeffs, vec![int(3)]);
        let orth = DenseTensor::from_fn(3, &variances("uu"), |i| {
            if i == [0, 0] {
                int(1)
            } else {
                int(0)
            }
        })
        .unwrap();
        // b1[0,0] = 0, so orth is outside span(b1).
        assert!(orth.solve_membership(&[b1]).unwrap().is_none());
    }

    #[test]
    fn ceiling_enforced() {
        assert!(DenseTensor::zeros(13, &variances("uu")).is_err());
        assert!(DenseTensor::zeros(3, &vec![Variance::Upper; 7]).is_err());
    }

    #[test]
    fn trace_of_lowered_antisymmetric_vanishes() {
        let n = 4;
        let a = DenseTensor::from_fn(n, &variances("uu"), |i| {
            int(i[0] as i64 - i[1] as i64)
        })
        .unwrap();
        let lowered = a.raise_lower(1, &delta_like_form(n, Variance::Lower)).unwrap();
        let tr = lowered.contract(0, 1).unwrap();
        assert!(tr.is_zero());
    }

    #[test]
    fn zero_tensor_product_is_zero() {
        let z = DenseTensor::zeros(3, &variances("uu")).unwrap();
        let t = DenseTensor::from_fn(3, &variances("ul"), |i| int((i[0] + 1) as i64)).unwrap();
        assert!(z.tensor_product(&t).unwrap().is_zero());
    }

    #[test]
    fn raising_lowered_form_recovers_the_form() {
        // delta_{ab} raised on both slots through g = delta gives g^{ab}.
        let n = 3;
        let dn = delta_like_form(n, Variance::Lower);
        let up = delta_like_form(n, Variance::Upper);
        let raised = dn
            .raise_lower(0, &up)
            .unwrap()
            .raise_lower(1, &up)
            .unwrap();
        assert_eq!(raised, up);
    }
}
