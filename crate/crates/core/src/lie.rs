//! Concrete index realizations of the classical complex Lie algebras.
//!
//! A [`LieContext`] packages one algebra instance: the bilinear structure
//! (symmetric `g` for `so(n)`, skew `omega` for `sp(2n)`, plain deltas for
//! `sl(n)`), an elementary tensor basis, structure constants of the matrix
//! realization, the Killing form computed as the ad-trace, and the Cartan
//! projector on the quadratic space `g (x) g`.
//!
//! Conventions are pinned by computation, not assumption: the bracket and
//! Killing form are *defined* through the matrix realization, and the index
//! formulas used by the reduction engine are verified against them in tests.
//! For `sp(2n)` the skew form satisfies `omega^{ac} omega_{bc} = delta^a_b`
//! and `omega^{ab} omega_{ab} = 2n`, both asserted at build time.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use num_traits::{One, Zero};

use crate::linalg::{self, PrefactoredSolver};
use crate::rational::{self, Rational};
use crate::tensor::{variances, DenseTensor, TensorError, Variance};

/// One classical algebra family member. `SO(n)` is `so(n, C)`, `SP(n)` is
/// `sp(2n, C)` (defining dimension `2n`), `SL(n)` is `sl(n, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    SO(usize),
    SP(usize),
    SL(usize),
}

impl AlgebraKind {
    /// Dimension of the defining representation.
    pub fn v_dim(self) -> usize {
        match self {
            AlgebraKind::SO(n) => n,
            AlgebraKind::SP(n) => 2 * n,
            AlgebraKind::SL(n) => n,
        }
    }

    /// Dimension of the algebra itself.
    pub fn algebra_dim(self) -> usize {
        match self {
            AlgebraKind::SO(n) => n * (n - 1) / 2,
            AlgebraKind::SP(n) => n * (2 * n + 1),
            AlgebraKind::SL(n) => n * n - 1,
        }
    }

    /// Parameter bounds of the uniqueness theorems: `so(n)` needs `n >= 5`,
    /// `sp(2n)` needs `n >= 2`, `sl(n)` needs `n >= 3`.
    pub fn in_theorem_range(self) -> bool {
        match self {
            AlgebraKind::SO(n) => n >= 5,
            AlgebraKind::SP(n) => n >= 2,
            AlgebraKind::SL(n) => n >= 3,
        }
    }

    pub fn param(self) -> usize {
        match self {
            AlgebraKind::SO(n) | AlgebraKind::SP(n) | AlgebraKind::SL(n) => n,
        }
    }

    pub fn label(self) -> String {
        match self {
            AlgebraKind::SO(n) => format!("so({n})"),
            AlgebraKind::SP(n) => format!("sp({})", 2 * n),
            AlgebraKind::SL(n) => format!("sl({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieError {
    OutOfRange(AlgebraKind),
    NotInAlgebra,
    SymmetryViolation,
    TraceSolveFailed,
    NotProportional,
    Tensor(TensorError),
    Internal(&'static str),
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::OutOfRange(k) => write!(f, "{} outside the supported parameter range", k.label()),
            LieError::NotInAlgebra => write!(f, "tensor is not an element of the algebra subspace"),
            LieError::SymmetryViolation => write!(f, "input violates the required slot symmetries"),
            LieError::TraceSolveFailed => write!(f, "trace-removal system inconsistent"),
            LieError::NotProportional => write!(f, "expected a scalar multiple and found none"),
            LieError::Tensor(e) => write!(f, "tensor error: {e}"),
            LieError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<TensorError> for LieError {
    fn from(e: TensorError) -> Self {
        LieError::Tensor(e)
    }
}

pub type Result<T> = core::result::Result<T, LieError>;

/// The invariant rank-2 structure of a context: `g^{ab}`/`g_{ab}` for `so`,
/// `omega^{ab}`/`omega_{ab}` for `sp`, absent for `sl`.
#[derive(Clone, Debug)]
pub struct BilinearStructure {
    pub form_upper: DenseTensor,
    pub form_lower: DenseTensor,
}

/// A quadratic element: rank-4 tensor in the kind's index pattern, i.e. an
/// element of `g (x) g` presented with defining-representation slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticElement(pub DenseTensor);

/// Result of splitting `W` in `g (x) g` into its Cartan component, the
/// distinguished bracket copy of `g`, the Killing line, and the rest.
#[derive(Clone, Debug)]
pub struct G2Decomposition {
    pub cartan: QuadraticElement,
    pub bracket_part: DenseTensor,
    pub killing_part: Rational,
    pub remainder: DenseTensor,
    /// Embeddings actually subtracted, kept so callers can re-assemble
    /// without re-deriving normalizations.
    pub bracket_embedded: DenseTensor,
    pub killing_embedded: DenseTensor,
}

/// Young-symmetrization + trace-removal data for the Cartan projector.
#[derive(Clone, Debug)]
struct TraceRemover {
    /// Slot pair whose trace parametrizes the solve.
    probe_pair: (usize, usize),
    /// All trace pairs that must vanish on the output.
    verify_pairs: Vec<(usize, usize)>,
    /// Generators: Young(form@probe-complement placement with elementary A).
    generators: Vec<DenseTensor>,
    solver: PrefactoredSolver,
}

/// A concrete classical algebra: basis, structure constants, Killing form,
/// bilinear structure and the Cartan projector on `g (x) g`.
pub struct LieContext {
    kind: AlgebraKind,
    v_dim: usize,
    algebra_dim: usize,
    bilinear: Option<BilinearStructure>,
    basis: Vec<DenseTensor>,
    basis_matrices: Vec<DenseTensor>,
    gram_inv: Vec<Vec<Rational>>,
    /// Structure constants `c[k][(i,j)]` with `[X_i, X_j] = sum_k c^k_{ij} X_k`,
    /// stored flat as `c[(i*d + j)*d + k]`.
    structure: Vec<Rational>,
    killing: Vec<Vec<Rational>>,
    killing_inv: Vec<Vec<Rational>>,
    /// `<X,Y> = pairing_multiple * index_pairing(X, Y)`; derived, then used
    /// by the fast contraction paths.
    pairing_multiple: Rational,
    remover: Option<TraceRemover>,
}

impl fmt::Debug for LieContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieContext({}, v_dim={}, algebra_dim={})",
            self.kind.label(),
            self.v_dim,
            self.algebra_dim
        )
    }
}

impl LieContext {
    /// Builds a context inside the theorem ranges.
    pub fn build(kind: AlgebraKind) -> Result<LieContext> {
        if !kind.in_theorem_range() {
            return Err(LieError::OutOfRange(kind));
        }
        Self::construct(kind)
    }

    /// Builds a context admitting `sl(2)` as well; everything else keeps the
    /// theorem bounds. `sl(2)` is needed by the differential-operator checks
    /// but sits outside the uniqueness theorems.
    pub fn build_relaxed(kind: AlgebraKind) -> Result<LieContext> {
        match kind {
            AlgebraKind::SL(2) => Self::construct(kind),
            _ => Self::build(kind),
        }
    }

    fn construct(kind: AlgebraKind) -> Result<LieContext> {
        let v = kind.v_dim();
        if v > crate::tensor::MAX_DIM {
            return Err(LieError::OutOfRange(kind));
        }
        let bilinear = match kind {
            AlgebraKind::SO(_) => Some(Self::orthogonal_form(v)?),
            AlgebraKind::SP(_) => Some(Self::symplectic_form(v)?),
            AlgebraKind::SL(_) => None,
        };
        if let (AlgebraKind::SP(n), Some(b)) = (kind, &bilinear) {
            // omega^{ac} omega_{bc} = delta^a_b
            let prod = b.form_upper.tensor_product(&b.form_lower)?;
            let id = prod.contract(1, 3)?;
            if id != DenseTensor::delta(v)? {
                return Err(LieError::Internal("symplectic convention broken"));
            }
            // omega^{ab} omega_{ab} = 2n
            let full = prod.contract(0, 2)?.contract(0, 1)?;
            if full.data()[0] != rational::int(2 * n as i64) {
                return Err(LieError::Internal("omega full contraction is not 2n"));
            }
        }
        let basis = Self::make_basis(kind, v)?;
        let algebra_dim = basis.len();
        debug_assert_eq!(algebra_dim, kind.algebra_dim());

        // Euclidean Gram of the basis (used only for coordinate expansion).
        let gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| dot(a.data(), b.data())).collect())
            .collect();
        let gram_inv = linalg::invert(&gram).ok_or(LieError::Internal("basis Gram singular"))?;

        let mut ctx = LieContext {
            kind,
            v_dim: v,
            algebra_dim,
            bilinear,
            basis,
            basis_matrices: Vec::new(),
            gram_inv,
            structure: Vec::new(),
            killing: Vec::new(),
            killing_inv: Vec::new(),
            pairing_multiple: Rational::zero(),
            remover: None,
        };
        ctx.basis_matrices = ctx
            .basis
            .iter()
            .map(|b| ctx.to_matrix(b))
            .collect::<Result<Vec<_>>>()?;

        // Structure constants from the matrix realization.
        let d = algebra_dim;
        let mut structure = vec![Rational::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let br = ctx.bracket_raw(&ctx.basis_matrices[i], &ctx.basis_matrices[j])?;
                let coords = ctx.expand(&br)?;
                for (k, c) in coords.into_iter().enumerate() {
                    structure[(i * d + j) * d + k] = c;
                }
            }
        }
        ctx.structure = structure;

        // Killing = ad-trace form, exact.
        let mut killing = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in i..d {
                let mut acc = Rational::zero();
                for l in 0..d {
                    for k in 0..d {
                        let a = &ctx.structure[(i * d + l) * d + k];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &ctx.structure[(j * d + k) * d + l];
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                killing[i][j] = acc.clone();
                killing[j][i] = acc;
            }
        }
        ctx.killing_inv =
            linalg::invert(&killing).ok_or(LieError::Internal("Killing form degenerate"))?;
        ctx.killing = killing;

        // Derive the multiple tying the Killing form to the plain index
        // pairing; every basis pair must agree.
        let mut multiple: Option<Rational> = None;
        for i in 0..d {
            for j in 0..d {
                let p = ctx.index_pairing(&ctx.basis[i], &ctx.basis[j])?;
                let k = &ctx.killing[i][j];
                if p.is_zero() {
                    if !k.is_zero() {
                        return Err(LieError::Internal("Killing not a multiple of the pairing"));
                    }
                    continue;
                }
                let ratio = k / &p;
                match &multiple {
                    None => multiple = Some(ratio),
                    Some(m) => {
                        if *m != ratio {
                            return Err(LieError::Internal(
                                "Killing/pairing ratio inconsistent across basis",
                            ));
                        }
                    }
                }
            }
        }
        ctx.pairing_multiple =
            multiple.ok_or(LieError::Internal("index pairing vanished identically"))?;

        ctx.remover = ctx.build_remover()?;
        Ok(ctx)
    }

    fn orthogonal_form(n: usize) -> Result<BilinearStructure> {
        // Complex orthogonal: take the identity matrix (signature is
        // irrelevant over C).
        let up = DenseTensor::from_fn(n, &variances("uu"), |i| {
            if i[0] == i[1] {
                Rational::one()
            } else {
                Rational::zero()
            }
        })?;
        let dn = DenseTensor::from_fn(n, &variances("ll"), |i| {
            if i[0] == i[1] {
                Rational::one()
            } else {
                Rational::zero()
            }
        })?;
        Ok(BilinearStructure {
            form_upper: up,
            form_lower: dn,
        })
    }

    fn symplectic_form(v: usize) -> Result<BilinearStructure> {
        // Pairwise blocks [[0,1],[-1,0]] so that restriction to a leading
        // block of coordinates is again the standard form (zero padding of
        // elements stays symplectic).
        let entry = |i: usize, j: usize| -> Rational {
            if j == i + 1 && i % 2 == 0 {
                Rational::one()
            } else if i == j + 1 && j % 2 == 0 {
                -Rational::one()
            } else {
                Rational::zero()
            }
        };
        let up = DenseTensor::from_fn(v, &variances("uu"), |i| entry(i[0], i[1]))?;
        let dn = DenseTensor::from_fn(v, &variances("ll"), |i| entry(i[0], i[1]))?;
        Ok(BilinearStructure {
            form_upper: up,
            form_lower: dn,
        })
    }

    fn make_basis(kind: AlgebraKind, v: usize) -> Result<Vec<DenseTensor>> {
        let mut out = Vec::new();
        match kind {
            AlgebraKind::SO(_) => {
                for i in 0..v {
                    for j in (i + 1)..v {
                        let mut t = DenseTensor::zeros(v, &variances("uu"))?;
                        t.set(&[i, j], Rational::one());
                        t.set(&[j, i], -Rational::one());
                        out.push(t);
                    }
                }
            }
            AlgebraKind::SP(_) => {
                for i in 0..v {
                    for j in i..v {
                        let mut t = DenseTensor::zeros(v, &variances("uu"))?;
                        if i == j {
                            t.set(&[i, i], Rational::one());
                        } else {
                            t.set(&[i, j], Rational::one());
                            t.set(&[j, i], Rational::one());
                        }
                        out.push(t);
                    }
                }
            }
            AlgebraKind::SL(_) => {
                for i in 0..v {
                    for j in 0..v {
                        if i != j {
                            let mut t = DenseTensor::zeros(v, &variances("ul"))?;
                            t.set(&[i, j], Rational::one());
                            out.push(t);
                        }
                    }
                }
                for k in 0..(v - 1) {
                    let mut t = DenseTensor::zeros(v, &variances("ul"))?;
                    t.set(&[k, k], Rational::one());
                    t.set(&[k + 1, k + 1], -Rational::one());
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn basis(&self) -> &[DenseTensor] {
        &self.basis
    }

    pub fn bilinear(&self) -> Option<&BilinearStructure> {
        self.bilinear.as_ref()
    }

    pub fn killing_matrix(&self) -> &[Vec<Rational>] {
        &self.killing
    }

    /// The derived constant `kappa` with `<X,Y> = kappa * index_pairing(X,Y)`.
    pub fn pairing_multiple(&self) -> &Rational {
        &self.pairing_multiple
    }

    /// Structure constant `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[(i * self.algebra_dim + j) * self.algebra_dim + k]
    }

    /// Expected variance pattern of algebra elements.
    pub fn element_variance(&self) -> Vec<Variance> {
        match self.kind {
            AlgebraKind::SO(_) | AlgebraKind::SP(_) => variances("uu"),
            AlgebraKind::SL(_) => variances("ul"),
        }
    }

    /// Membership in the algebra subspace: shape, symmetry and (for `sl`)
    /// the trace condition, all exact.
    pub fn is_algebra_element(&self, x: &DenseTensor) -> bool {
        if x.dim() != self.v_dim || x.variance() != self.element_variance().as_slice() {
            return false;
        }
        match self.kind {
            AlgebraKind::SO(_) => {
                let sym = x.symmetrize(&[0, 1], false).expect("rank 2");
                sym.is_zero()
            }
            AlgebraKind::SP(_) => {
                let skew = x.symmetrize(&[0, 1], true).expect("rank 2");
                skew.is_zero()
            }
            AlgebraKind::SL(_) => {
                let tr = x.contract(0, 1).expect("mixed rank 2");
                tr.is_zero()
            }
        }
    }

    fn check_element(&self, x: &DenseTensor) -> Result<()> {
        if self.is_algebra_element(x) {
            Ok(())
        } else {
            Err(LieError::NotInAlgebra)
        }
    }

    /// Index form -> matrix form `X^a{}_b` (lowering the second slot for
    /// `so`/`sp`; the identity for `sl`).
    pub fn to_matrix(&self, x: &DenseTensor) -> Result<DenseTensor> {
        match &self.bilinear {
            Some(b) => Ok(x.raise_lower(1, &b.form_lower)?),
            None => Ok(x.clone()),
        }
    }

    /// Matrix form -> index form (raising the second slot back).
    pub fn from_matrix(&self, m: &DenseTensor) -> Result<DenseTensor> {
        match &self.bilinear {
            Some(b) => Ok(m.raise_lower(1, &b.form_upper)?),
            None => Ok(m.clone()),
        }
    }

    /// Matrix commutator on `X^a{}_b` tensors, returned in index form.
    fn bracket_raw(&self, xm: &DenseTensor, ym: &DenseTensor) -> Result<DenseTensor> {
        let xy = xm.tensor_product(ym)?.contract(1, 2)?;
        let yx = ym.tensor_product(xm)?.contract(1, 2)?;
        self.from_matrix(&xy.sub(&yx)?)
    }

    /// Lie bracket, defined through the matrix realization. Inputs must be
    /// algebra elements.
    pub fn bracket(&self, x: &DenseTensor, y: &DenseTensor) -> Result<DenseTensor> {
        self.check_element(x)?;
        self.check_element(y)?;
        self.bracket_raw(&self.to_matrix(x)?, &self.to_matrix(y)?)
    }

    /// Coordinates over the basis; errors if `x` lies outside the span.
    pub fn expand(&self, x: &DenseTensor) -> Result<Vec<Rational>> {
        let pairings: Vec<Rational> = self.basis.iter().map(|b| dot(b.data(), x.data())).collect();
        let coords: Vec<Rational> = self
            .gram_inv
            .iter()
            .map(|row| dot(row, &pairings))
            .collect();
        // Verify exact reconstruction (catches off-subspace inputs).
        let mut recon = DenseTensor::zeros(self.v_dim, x.variance())?;
        for (c, b) in coords.iter().zip(&self.basis) {
            recon.add_scaled_assign(c, b)?;
        }
        if &recon != x {
            return Err(LieError::NotInAlgebra);
        }
        Ok(coords)
    }

    /// Rebuilds an element from basis coordinates.
    pub fn from_coords(&self, coords: &[Rational]) -> Result<DenseTensor> {
        let mut out = DenseTensor::zeros(self.v_dim, &self.element_variance())?;
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled_assign(c, b)?;
        }
        Ok(out)
    }

    /// Killing form `<X, Y> = tr(ad X . ad Y)`, via the ad-trace matrix.
    pub fn killing(&self, x: &DenseTensor, y: &DenseTensor) -> Result<Rational> {
        let cx = self.expand(x)?;
        let cy = self.expand(y)?;
        let mut acc = Rational::zero();
        for (i, a) in cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in cy.iter().enumerate() {
                if !b.is_zero() && !self.killing[i][j].is_zero() {
                    acc += a * b * &self.killing[i][j];
                }
            }
        }
        Ok(acc)
    }

    /// The plain index pairing: `X^{ab} Y_{ab}` for `so`/`sp` (lowering with
    /// the context form), `X^a{}_b Y^b{}_a` for `sl`.
    pub fn index_pairing(&self, x: &DenseTensor, y: &DenseTensor) -> Result<Rational> {
        match &self.bilinear {
            Some(b) => {
                let yl = y
                    .raise_lower(0, &b.form_lower)?
                    .raise_lower(1, &b.form_lower)?;
                Ok(dot(x.data(), yl.data()))
            }
            None => {
                let mut acc = Rational::zero();
                let n = self.v_dim;
                for a in 0..n {
                    for b2 in 0..n {
                        let xa = x.get(&[a, b2]);
                        if xa.is_zero() {
                            continue;
                        }
                        let yb = y.get(&[b2, a]);
                        if !yb.is_zero() {
                            acc += xa * yb;
                        }
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Contracts slot `i` (upper) against slot `j` (upper) of an all-upper
    /// pair through the lowering form, or directly for mixed `sl` slots.
    pub fn trace_pair(&self, t: &DenseTensor, i: usize, j: usize) -> Result<DenseTensor> {
        match &self.bilinear {
            Some(b) => {
                let lowered = t.raise_lower(j, &b.form_lower)?;
                Ok(lowered.contract(i, j)?)
            }
            None => Ok(t.contract(i, j)?),
        }
    }

    /// Adjoint action of `z` (an algebra element) on an arbitrary tensor in
    /// defining-representation slots: the derivation sum of the one-slot
    /// matrix actions, `+m(z)` on upper slots and `-m(z)^T` on lower slots.
    pub fn adjoint_action(&self, z: &DenseTensor, t: &DenseTensor) -> Result<DenseTensor> {
        self.check_element(z)?;
        let m = self.to_matrix(z)?;
        let n = self.v_dim;
        let rank = t.rank();
        let mut out = DenseTensor::zeros(n, t.variance())?;
        let mut idx = vec![0usize; rank];
        let mut src = vec![0usize; rank];
        let total = t.data().len();
        for lin in 0..total {
            let v = &t.data()[lin];
            if !v.is_zero() {
                // Scatter the action of this source entry into the output.
                for slot in 0..rank {
                    src.copy_from_slice(&idx);
                    let b = idx[slot];
                    for a in 0..n {
                        let coeff = match t.variance()[slot] {
                            Variance::Upper => m.get(&[a, b]).clone(),
                            Variance::Lower => -m.get(&[b, a]).clone(),
                        };
                        if coeff.is_zero() {
                            continue;
                        }
                        src[slot] = a;
                        out.add_at(&src, &(coeff * v));
                    }
                }
            }
            advance(&mut idx, n);
        }
        Ok(out)
    }

    // ----- Cartan projector -------------------------------------------------

    /// Kind-specific Young symmetrization of four consecutive slots starting
    /// at `offset`; other slots ride along.
    pub fn young_slots(&self, t: &DenseTensor, offset: usize) -> Result<DenseTensor> {
        let rank = t.rank();
        if offset + 4 > rank {
            return Err(LieError::Tensor(TensorError::SlotOutOfRange {
                slot: offset + 3,
                rank,
            }));
        }
        let ext = |local: &[usize]| -> Vec<usize> {
            let mut p: Vec<usize> = (0..rank).collect();
            for (k, &l) in local.iter().enumerate() {
                p[offset + k] = offset + l;
            }
            p
        };
        match self.kind {
            AlgebraKind::SO(_) => {
                // (1/3)(id + pair swap) + (1/6)(four mixed terms): the exact
                // projector onto the window-shaped component of the
                // skew-pair subspace. Antisymmetrizing the pairs first (a
                // no-op on valid input) extends it to a projector on the
                // whole rank-4 space.
                let t = t
                    .symmetrize(&[offset, offset + 1], true)?
                    .symmetrize(&[offset + 2, offset + 3], true)?;
                let third = rational::frac(1, 3);
                let sixth = rational::frac(1, 6);
                let mut acc = t.scale(&third);
                acc.add_scaled_assign(&third, &t.permuted(&ext(&[2, 3, 0, 1]))?)?;
                acc.add_scaled_assign(&sixth, &t.permuted(&ext(&[0, 2, 1, 3]))?)?;
                acc.add_scaled_assign(&-sixth.clone(), &t.permuted(&ext(&[1, 2, 0, 3]))?)?;
                acc.add_scaled_assign(&-sixth.clone(), &t.permuted(&ext(&[0, 3, 1, 2]))?)?;
                acc.add_scaled_assign(&sixth, &t.permuted(&ext(&[1, 3, 0, 2]))?)?;
                Ok(acc)
            }
            AlgebraKind::SP(_) => {
                // Full symmetrization; on pair-symmetric input this is the
                // average over the six coset representatives.
                let perms = crate::tensor::permutations(4);
                let w = rational::frac(1, perms.len() as i64);
                let mut acc = DenseTensor::zeros(t.dim(), t.variance())?;
                for p in &perms {
                    acc.add_assign(&t.permuted(&ext(p))?)?;
                }
                Ok(acc.scale(&w))
            }
            AlgebraKind::SL(_) => {
                // Symmetrize the upper pair and the lower pair.
                let quarter = rational::frac(1, 4);
                let mut acc = t.clone();
                acc.add_assign(&t.permuted(&ext(&[2, 1, 0, 3]))?)?;
                acc.add_assign(&t.permuted(&ext(&[0, 3, 2, 1]))?)?;
                acc.add_assign(&t.permuted(&ext(&[2, 3, 0, 1]))?)?;
                Ok(acc.scale(&quarter))
            }
        }
    }

    fn quadratic_variance(&self) -> Vec<Variance> {
        match self.kind {
            AlgebraKind::SO(_) | AlgebraKind::SP(_) => variances("uuuu"),
            AlgebraKind::SL(_) => variances("ulul"),
        }
    }

    fn build_remover(&self) -> Result<Option<TraceRemover>> {
        let n = self.v_dim;
        let (probe_pair, verify_pairs, placements) = match self.kind {
            AlgebraKind::SP(_) => return Ok(None),
            AlgebraKind::SO(_) => (
                (0usize, 2usize),
                vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                // form at slots (0,2), elementary A at slots (1,3)
                ((0usize, 2usize), (1usize, 3usize)),
            ),
            AlgebraKind::SL(_) => (
                (0usize, 1usize),
                vec![(0, 1), (0, 3), (2, 1), (2, 3)],
                // delta at (0,1), A at (2,3)
                ((0usize, 1usize), (2usize, 3usize)),
            ),
        };
        let var = self.quadratic_variance();
        let mut generators = Vec::with_capacity(n * n);
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                let mut e = DenseTensor::zeros(n, &var)?;
                let (fp, ap) = placements;
                match &self.bilinear {
                    Some(b) => {
                        // form_upper at the form pair, unit at the A pair
                        let mut idx = [0usize; 4];
                        for p in 0..n {
                            for q in 0..n {
                                let f = b.form_upper.get(&[p, q]);
                                if f.is_zero() {
                                    continue;
                                }
                                idx[fp.0] = p;
                                idx[fp.1] = q;
                                idx[ap.0] = k;
                                idx[ap.1] = l;
                                e.add_at(&idx, f);
                            }
                        }
                    }
                    None => {
                        let mut idx = [0usize; 4];
                        for p in 0..n {
                            idx[fp.0] = p;
                            idx[fp.1] = p;
                            idx[ap.0] = k;
                            idx[ap.1] = l;
                            e.add_at(&idx, &Rational::one());
                        }
                    }
                }
                let y = self.young_slots(&e, 0)?;
                let probe = self.trace_pair(&y, probe_pair.0, probe_pair.1)?;
                columns.push(probe.data().to_vec());
                generators.push(y);
            }
        }
        // M[r][c] = probe-trace entry r of generator c.
        let rows = n * n;
        let mut m = vec![vec![Rational::zero(); columns.len()]; rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m[r][c] = v.clone();
                }
            }
        }
        let solver = PrefactoredSolver::factor(&m);
        Ok(Some(TraceRemover {
            probe_pair,
            verify_pairs,
            generators,
            solver,
        }))
    }

    /// Removes all traces from a Young-projected rank-4 tensor. The solve is
    /// parameterized by one probe trace; the output is verified trace-free in
    /// every pair, so an unsound shortcut cannot pass silently.
    fn remove_traces(&self, w: &DenseTensor) -> Result<DenseTensor> {
        let remover = match &self.remover {
            None => return Ok(w.clone()),
            Some(r) => r,
        };
        let probe = self.trace_pair(w, remover.probe_pair.0, remover.probe_pair.1)?;
        let out = if probe.is_zero() {
            w.clone()
        } else {
            let x = remover
                .solver
                .solve(probe.data())
                .ok_or(LieError::TraceSolveFailed)?;
            let mut u = DenseTensor::zeros(w.dim(), w.variance())?;
            for (c, g) in x.iter().zip(&remover.generators) {
                if !c.is_zero() {
                    u.add_scaled_assign(c, g)?;
                }
            }
            w.sub(&u)?
        };
        for &(i, j) in &remover.verify_pairs {
            // Skip pairs that cannot contract (same variance without form).
            if self.bilinear.is_none()
                && w.variance()[i] == w.variance()[j]
            {
                continue;
            }
            if !self.trace_pair(&out, i, j)?.is_zero() {
                return Err(LieError::TraceSolveFailed);
            }
        }
        Ok(out)
    }

    /// Validates the kind's slot symmetries of a quadratic element.
    pub fn check_quadratic(&self, v: &DenseTensor) -> Result<()> {
        if v.dim() != self.v_dim || v.variance() != self.quadratic_variance().as_slice() {
            return Err(LieError::SymmetryViolation);
        }
        let ok = match self.kind {
            AlgebraKind::SO(_) => {
                v.symmetrize(&[0, 1], false)?.is_zero() && v.symmetrize(&[2, 3], false)?.is_zero()
            }
            AlgebraKind::SP(_) => {
                v.symmetrize(&[0, 1], true)?.is_zero() && v.symmetrize(&[2, 3], true)?.is_zero()
            }
            AlgebraKind::SL(_) => v.contract(0, 1)?.is_zero() && v.contract(2, 3)?.is_zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(LieError::SymmetryViolation)
        }
    }

    /// The Cartan projection on `g (x) g`: Young symmetrization followed by
    /// removal of all traces. Exact, idempotent, equivariant.
    pub fn cartan_project(&self, v: &QuadraticElement) -> Result<QuadraticElement> {
        self.check_quadratic(&v.0)?;
        Ok(QuadraticElement(self.cartan_project_slots(&v.0, 0)?))
    }

    /// Cartan projection applied to four consecutive slots of a larger
    /// tensor; remaining slots are passengers.
    pub fn cartan_project_slots(&self, t: &DenseTensor, offset: usize) -> Result<DenseTensor> {
        let y = self.young_slots(t, offset)?;
        if self.remover.is_none() {
            return Ok(y);
        }
        if t.rank() == 4 {
            debug_assert_eq!(offset, 0);
            return self.remove_traces(&y);
        }
        // Slice over passenger indices, remove traces per rank-4 slice.
        let rank = t.rank();
        let n = t.dim();
        let passengers: Vec<usize> = (0..rank).filter(|s| *s < offset || *s >= offset + 4).collect();
        let quad_var: Vec<Variance> = (offset..offset + 4).map(|s| t.variance()[s]).collect();
        let mut out = DenseTensor::zeros(n, t.variance())?;
        let mut pidx = vec![0usize; passengers.len()];
        let pcount = n.pow(passengers.len() as u32);
        let mut full = vec![0usize; rank];
        for _ in 0..pcount {
            let mut slice = DenseTensor::zeros(n, &quad_var)?;
            for (s, &p) in passengers.iter().enumerate() {
                full[p] = pidx[s];
            }
            let mut qidx = [0usize; 4];
            let qtotal = n.pow(4);
            for _ in 0..qtotal {
                for (k, q) in qidx.iter().enumerate() {
                    full[offset + k] = *q;
                }
                let v = y.get(&full);
                if !v.is_zero() {
                    slice.set(&qidx, v.clone());
                }
                advance(&mut qidx, n);
            }
            let cleaned = self.remove_traces(&slice)?;
            let mut qidx = [0usize; 4];
            for _ in 0..qtotal {
                for (k, q) in qidx.iter().enumerate() {
                    full[offset + k] = *q;
                }
                let v = cleaned.get(&qidx);
                if !v.is_zero() {
                    out.set(&full, v.clone());
                }
                advance(&mut qidx, n);
            }
            advance(&mut pidx, n);
        }
        Ok(out)
    }

    /// Splits `W` in `g (x) g` into Cartan part, bracket copy, Killing line
    /// and remainder; the four pieces sum back to `W` exactly.
    pub fn decompose_g2(&self, w: &DenseTensor) -> Result<G2Decomposition> {
        let d = self.algebra_dim;
        let coords = self.expand_quadratic(w)?;
        let cartan = QuadraticElement(self.cartan_project_slots(w, 0)?);

        // beta = b(W): contraction through the structure constants.
        let mut beta = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let w_ij = &coords[i * d + j];
                if w_ij.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        beta[k] += w_ij * c;
                    }
                }
            }
        }
        let bracket_part_coords: Vec<Rational> =
            beta.iter().map(|b| b / rational::int(2)).collect();

        // Adjoint embedding v = (K^-1 (x) K^-1) b^T K beta, then normalize so
        // that b(v_normalized) = beta.
        let bracket_embedded_coords = if beta.iter().all(|b| b.is_zero()) {
            vec![Rational::zero(); d * d]
        } else {
            let kbeta: Vec<Rational> = (0..d).map(|k| dot(&self.killing[k], &beta)).collect();
            // m[p][q] = sum_k c^k_{pq} kbeta_k
            let mut mpq = vec![vec![Rational::zero(); d]; d];
            for p in 0..d {
                for q in 0..d {
                    let mut acc = Rational::zero();
                    for k in 0..d {
                        let c = self.structure_constant(p, q, k);
                        if !c.is_zero() && !kbeta[k].is_zero() {
                            acc += c * &kbeta[k];
                        }
                    }
                    mpq[p][q] = acc;
                }
            }
            // sandwich: K^-1 m K^-T (Killing is symmetric)
            let mut tmp = vec![vec![Rational::zero(); d]; d];
            for i in 0..d {
                for j in 0..d {
                    tmp[i][j] = dot(&self.killing_inv[i], &column(&mpq, j));
                }
            }
            let mut v = vec![Rational::zero(); d * d];
            for i in 0..d {
                for j in 0..d {
                    v[i * d + j] = dot(&tmp[i], &self.killing_inv[j]);
                }
            }
            // b(v) must be proportional to beta: find the Schur scalar.
            let mut bv = vec![Rational::zero(); d];
            for i in 0..d {
                for j in 0..d {
                    let vij = &v[i * d + j];
                    if vij.is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        let c = self.structure_constant(i, j, k);
                        if !c.is_zero() {
                            bv[k] += vij * c;
                        }
                    }
                }
            }
            let scalar = proportionality(&bv, &beta).ok_or(LieError::NotProportional)?;
            if scalar.is_zero() {
                return Err(LieError::Internal("adjoint embedding collapsed"));
            }
            let inv = Rational::one() / scalar;
            v.iter().map(|x| x * &inv).collect()
        };

        // Killing line: kappa_elem has coordinates K^-1.
        let killing_part = {
            let mut acc = Rational::zero();
            for i in 0..d {
                for j in 0..d {
                    let w_ij = &coords[i * d + j];
                    if !w_ij.is_zero() && !self.killing[i][j].is_zero() {
                        acc += w_ij * &self.killing[i][j];
                    }
                }
            }
            acc
        };
        let kscale = &killing_part / rational::int(d as i64);
        let mut killing_embedded_coords = vec![Rational::zero(); d * d];
        if !killing_part.is_zero() {
            for i in 0..d {
                for j in 0..d {
                    let k = &self.killing_inv[i][j];
                    if !k.is_zero() {
                        killing_embedded_coords[i * d + j] = &kscale * k;
                    }
                }
            }
        }

        let bracket_embedded = self.quadratic_from_coords(&bracket_embedded_coords)?;
        let killing_embedded = self.quadratic_from_coords(&killing_embedded_coords)?;
        let bracket_part = self.from_coords(&bracket_part_coords)?;
        let remainder = w
            .sub(&cartan.0)?
            .sub(&bracket_embedded)?
            .sub(&killing_embedded)?;
        Ok(G2Decomposition {
            cartan,
            bracket_part,
            killing_part,
            remainder,
            bracket_embedded,
            killing_embedded,
        })
    }

    /// Coordinates of a rank-4 tensor over basis (x) basis; errors if the
    /// tensor is outside `g (x) g`.
    pub fn expand_quadratic(&self, w: &DenseTensor) -> Result<Vec<Rational>> {
        let d = self.algebra_dim;
        let n = self.v_dim;
        if w.dim() != n || w.rank() != 4 {
            return Err(LieError::SymmetryViolation);
        }
        // y[i][(cd)] = sum_{ab} B_i[ab] W[ab,cd]
        let n2 = n * n;
        let mut pair1 = vec![vec![Rational::zero(); n2]; d];
        for (i, b) in self.basis.iter().enumerate() {
            for (lin, bv) in b.data().iter().enumerate() {
                if bv.is_zero() {
                    continue;
                }
                let base = lin * n2;
                let row = &mut pair1[i];
                for cd in 0..n2 {
                    let wv = &w.data()[base + cd];
                    if !wv.is_zero() {
                        row[cd] += bv * wv;
                    }
                }
            }
        }
        // p[i][j] = sum_{cd} y[i][cd] B_j[cd]
        let mut pair = vec![Rational::zero(); d * d];
        for i in 0..d {
            for (j, b) in self.basis.iter().enumerate() {
                let mut acc = Rational::zero();
                for (lin, bv) in b.data().iter().enumerate() {
                    if !bv.is_zero() && !pair1[i][lin].is_zero() {
                        acc += bv * &pair1[i][lin];
                    }
                }
                pair[i * d + j] = acc;
            }
        }
        // coords = G^-1 P G^-T
        let mut tmp = vec![Rational::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rational::zero();
                for k in 0..d {
                    let gi = &self.gram_inv[i][k];
                    if !gi.is_zero() && !pair[k * d + j].is_zero() {
                        acc += gi * &pair[k * d + j];
                    }
                }
                tmp[i * d + j] = acc;
            }
        }
        let mut coords = vec![Rational::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rational::zero();
                for k in 0..d {
                    let t = &tmp[i * d + k];
                    if !t.is_zero() && !self.gram_inv[j][k].is_zero() {
                        acc += t * &self.gram_inv[j][k];
                    }
                }
                coords[i * d + j] = acc;
            }
        }
        // Verify exact reconstruction.
        let recon = self.quadratic_from_coords(&coords)?;
        if &recon != w {
            return Err(LieError::NotInAlgebra);
        }
        Ok(coords)
    }

    /// Rank-4 tensor from basis (x) basis coordinates.
    pub fn quadratic_from_coords(&self, coords: &[Rational]) -> Result<DenseTensor> {
        let d = self.algebra_dim;
        let mut out = DenseTensor::zeros(self.v_dim, &self.quadratic_variance())?;
        for i in 0..d {
            for j in 0..d {
                let c = &coords[i * d + j];
                if c.is_zero() {
                    continue;
                }
                let prod = self.basis[i].tensor_product(&self.basis[j])?;
                out.add_scaled_assign(c, &prod)?;
            }
        }
        Ok(out)
    }
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

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn column(m: &[Vec<Rational>], j: usize) -> Vec<Rational> {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Finds `s` with `a = s * b` (entrywise); `None` if not proportional or if
/// `b = 0` while `a != 0`.
pub fn proportionality(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let mut scalar: Option<Rational> = None;
    for (x, y) in a.iter().zip(b.iter()) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let r = x / y;
        match &scalar {
            None => scalar = Some(r),
            Some(s) => {
                if *s != r {
                    return None;
                }
            }
        }
    }
    scalar.or(Some(Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn algebra_dimensions() {
        assert_eq!(LieContext::build(AlgebraKind::SO(5)).unwrap().algebra_dim(), 10);
        assert_eq!(LieContext::build(AlgebraKind::SP(2)).unwrap().algebra_dim(), 10);
        assert_eq!(LieContext::build(AlgebraKind::SL(3)).unwrap().algebra_dim(), 8);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            LieContext::build(AlgebraKind::SO(4)),
            Err(LieError::OutOfRange(_))
        ));
        assert!(matches!(
            LieContext::build(AlgebraKind::SL(2)),
            Err(LieError::OutOfRange(_))
        ));
        assert!(LieContext::build_relaxed(AlgebraKind::SL(2)).is_ok());
        assert!(matches!(
            LieContext::build_relaxed(AlgebraKind::SO(4)),
            Err(LieError::OutOfRange(_))
        ));
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi_on_basis() {
        for kind in [AlgebraKind::SO(5), AlgebraKind::SP(2), AlgebraKind::SL(3)] {
            let ctx = LieContext::build(kind).unwrap();
            let d = ctx.algebra_dim();
            // [X, X] = 0 on a random-ish combination
            let x = ctx.from_coords(&(0..d).map(|i| int(i as i64 % 5 - 2)).collect::<Vec<_>>()).unwrap();
            assert!(ctx.bracket(&x, &x).unwrap().is_zero());
            // Jacobi on a handful of basis triples
            for (i, j, k) in [(0usize, 1usize, 2usize), (1, 3, 5), (0, 2, 4)] {
                let a = &ctx.basis()[i % d];
                let b = &ctx.basis()[j % d];
                let c = &ctx.basis()[k % d];
                let t1 = ctx.bracket(&ctx.bracket(a, b).unwrap(), c).unwrap();
                let t2 = ctx.bracket(&ctx.bracket(b, c).unwrap(), a).unwrap();
                let t3 = ctx.bracket(&ctx.bracket(c, a).unwrap(), b).unwrap();
                assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn killing_multiple_matches_known_values() {
        // so(n): <X,Y> = -(n-2) X^{ab} Y_{ab}
        let ctx = LieContext::build(AlgebraKind::SO(5)).unwrap();
        assert_eq!(ctx.pairing_multiple(), &int(-3));
        // sp(2n): <X,Y> = -2(n+1) X^{ab} Y_{ab}
        let ctx = LieContext::build(AlgebraKind::SP(2)).unwrap();
        assert_eq!(ctx.pairing_multiple(), &int(-6));
        // sl(n): <X,Y> = 2n X^a_b Y^b_a
        let ctx = LieContext::build(AlgebraKind::SL(3)).unwrap();
        assert_eq!(ctx.pairing_multiple(), &int(6));
        let ctx = LieContext::build_relaxed(AlgebraKind::SL(2)).unwrap();
        assert_eq!(ctx.pairing_multiple(), &int(4));
    }

    #[test]
    fn killing_invariance() {
        let ctx = LieContext::build(AlgebraKind::SL(3)).unwrap();
        let x = &ctx.basis()[0];
        let y = &ctx.basis()[3];
        let z = &ctx.basis()[6];
        let lhs = ctx.killing(&ctx.bracket(z, x).unwrap(), y).unwrap();
        let rhs = ctx.killing(x, &ctx.bracket(z, y).unwrap()).unwrap();
        assert_eq!(lhs + rhs, Rational::zero());
    }

    #[test]
    fn cartan_projector_idempotent_and_kills_trace() {
        for kind in [AlgebraKind::SO(5), AlgebraKind::SP(2), AlgebraKind::SL(3)] {
            let ctx = LieContext::build(kind).unwrap();
            // A pseudo-random element of g (x) g.
            let d = ctx.algebra_dim();
            let mut w = DenseTensor::zeros(ctx.v_dim(), &ctx.quadratic_variance()).unwrap();
            for i in 0..d {
                for j in 0..d {
                    let c = int(((i * 7 + j * 3) % 11) as i64 - 5);
                    let prod = ctx.basis()[i].tensor_product(&ctx.basis()[j]).unwrap();
                    w.add_scaled_assign(&c, &prod).unwrap();
                }
            }
            let p1 = ctx.cartan_project(&QuadraticElement(w.clone())).unwrap();
            let p2 = ctx.cartan_project(&p1).unwrap();
            assert_eq!(p1, p2, "{:?} projector not idempotent", kind);
        }
    }

    #[test]
    fn pure_trace_projects_to_zero_for_so() {
        let ctx = LieContext::build(AlgebraKind::SO(5)).unwrap();
        let b = ctx.bilinear().unwrap();
        // g^{ac} g^{bd} - g^{ad} g^{bc}: the pure-trace quadratic element.
        let gg = b.form_upper.tensor_product(&b.form_upper).unwrap();
        let t1 = gg.permuted(&[0, 2, 1, 3]).unwrap();
        let t2 = gg.permuted(&[0, 2, 3, 1]).unwrap();
        let w = t1.sub(&t2).unwrap();
        ctx.check_quadratic(&w).unwrap();
        let p = ctx.cartan_project(&QuadraticElement(w)).unwrap();
        assert!(p.0.is_zero());
    }

    #[test]
    fn decompose_antisymmetric_pair() {
        for kind in [AlgebraKind::SO(5), AlgebraKind::SL(3)] {
            let ctx = LieContext::build(kind).unwrap();
            let x = &ctx.basis()[0];
            let y = &ctx.basis()[4];
            let w = x
                .tensor_product(y)
                .unwrap()
                .sub(&y.tensor_product(x).unwrap())
                .unwrap();
            let dec = ctx.decompose_g2(&w).unwrap();
            assert!(dec.cartan.0.is_zero());
            assert!(dec.killing_part.is_zero());
            assert_eq!(dec.bracket_part, ctx.bracket(x, y).unwrap());
            // Reconstruction
            let sum = dec
                .cartan
                .0
                .add(&dec.bracket_embedded)
                .unwrap()
                .add(&dec.killing_embedded)
                .unwrap()
                .add(&dec.remainder)
                .unwrap();
            assert_eq!(sum, w);
        }
    }

    #[test]
    fn adjoint_action_matches_bracket_on_elements() {
        let ctx = LieContext::build(AlgebraKind::SP(2)).unwrap();
        let z = &ctx.basis()[2];
        let x = &ctx.basis()[7];
        let via_action = ctx.adjoint_action(z, x).unwrap();
        let via_bracket = ctx.bracket(z, x).unwrap();
        assert_eq!(via_action, via_bracket);
    }

    #[test]
    fn skew_form_raise_lower_round_trips() {
        // The convention `X_b = X^a w_{ab}`, `X^a = X_b w^{ab}` makes lower
        // and raise exact mutual inverses; both orders are identities.
        let ctx = LieContext::build(AlgebraKind::SP(2)).unwrap();
        let b = ctx.bilinear().unwrap();
        let x = DenseTensor::from_fn(4, &variances("u"), |i| {
            crate::rational::frac(2 * i[0] as i64 + 1, 3)
        })
        .unwrap();
        let lowered = x.raise_lower(0, &b.form_lower).unwrap();
        assert_eq!(lowered.raise_lower(0, &b.form_upper).unwrap(), x);
        let x_low = DenseTensor::from_fn(4, &variances("l"), |i| {
            crate::rational::int(i[0] as i64 - 2)
        })
        .unwrap();
        let raised = x_low.raise_lower(0, &b.form_upper).unwrap();
        assert_eq!(raised.raise_lower(0, &b.form_lower).unwrap(), x_low);
    }
}
