//! The quadratic ideal, its special tensors, and the critical parameter.
//!
//! For each classical algebra the two-sided ideal generated by
//! `X (x) Y - X o Y - 1/2 [X,Y] - lambda <X,Y>` admits a distinguished
//! rank-6 "special tensor" `S`, linear in a seed `T` of the algebra, whose
//! Cartan parts vanish in both factor pairs. Reducing `S` modulo the ideal
//! with respect to either pair collapses it to an exact multiple of `T`;
//! the two multiples are affine in `lambda` and agree at exactly one value,
//! the critical parameter. This module constructs the generators and the
//! special tensors, runs the reduction rewriting, solves for the critical
//! value, fits closed forms over parameter grids, and classifies the
//! quotient.

use alloc::vec::Vec;

use core::fmt;

use num_traits::Zero;
use rand_core::RngCore;

use crate::lie::{AlgebraKind, LieContext, LieError, QuadraticElement};
use crate::poly::{self, RationalFunction};
use crate::rational::{self, Rational};
use crate::tensor::{variances, DenseTensor, TensorError, Variance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealError {
    Lie(LieError),
    Tensor(TensorError),
    /// Seed violates the kind's symmetry/trace condition.
    BadSeed,
    /// A (possibly intermediate) Cartan part failed to vanish, so the
    /// rewriting step is not legitimate.
    CartanObstruction,
    /// The reduced element is not an exact multiple of the seed.
    NotProportionalToSeed,
    /// A nonzero degree-0 residue appeared where a pure multiple of the
    /// seed was required.
    DegreeZeroResidue,
    /// The two reduction coefficients are identical as affine functions.
    CoefficientsCoincide,
    /// Zero-padding target must strictly exceed the source size.
    PadTooSmall,
    /// No rational interpolant reproduced the sample grid.
    InterpolationFailed,
    NotSymplectic,
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::Lie(e) => write!(f, "{e}"),
            IdealError::Tensor(e) => write!(f, "{e}"),
            IdealError::BadSeed => write!(f, "seed tensor violates the kind's symmetry"),
            IdealError::CartanObstruction => {
                write!(f, "Cartan part does not vanish; reduction is not legitimate")
            }
            IdealError::NotProportionalToSeed => {
                write!(f, "reduction result is not a multiple of the seed")
            }
            IdealError::DegreeZeroResidue => {
                write!(f, "reduction left a nonzero scalar residue")
            }
            IdealError::CoefficientsCoincide => {
                write!(f, "reduction coefficients coincide as affine functions")
            }
            IdealError::PadTooSmall => write!(f, "padding target not larger than source"),
            IdealError::InterpolationFailed => write!(f, "interpolation failed"),
            IdealError::NotSymplectic => write!(f, "operation requires a symplectic context"),
        }
    }
}

impl From<LieError> for IdealError {
    fn from(e: LieError) -> Self {
        IdealError::Lie(e)
    }
}

impl From<TensorError> for IdealError {
    fn from(e: TensorError) -> Self {
        IdealError::Tensor(e)
    }
}

pub type Result<T> = core::result::Result<T, IdealError>;

/// The ideal parameter `lambda`.
pub type IdealParameter = Rational;

/// A value `constant + slope * lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLambda {
    pub constant: Rational,
    pub slope: Rational,
}

impl AffineLambda {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        AffineLambda { constant, slope }
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        &self.constant + &self.slope * lambda
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }
}

impl fmt::Display for AffineLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*lambda",
            rational::format(&self.constant),
            rational::format(&self.slope)
        )
    }
}

/// A seed element of the algebra: skew `T^{ab}` (so), symmetric `T^{ab}`
/// (sp), trace-free `T^a_b` (sl).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedTensor(DenseTensor);

impl SeedTensor {
    pub fn new(ctx: &LieContext, t: DenseTensor) -> Result<Self> {
        if ctx.is_algebra_element(&t) {
            Ok(SeedTensor(t))
        } else {
            Err(IdealError::BadSeed)
        }
    }

    pub fn tensor(&self) -> &DenseTensor {
        &self.0
    }

    /// Deterministic pseudo-random seed with small integer coordinates.
    pub fn random(ctx: &LieContext, rng: &mut impl RngCore) -> Self {
        loop {
            let coords: Vec<Rational> = (0..ctx.algebra_dim())
                .map(|_| rational::int((rng.next_u32() % 19) as i64 - 9))
                .collect();
            let t = ctx.from_coords(&coords).expect("coords in range");
            if !t.is_zero() {
                return SeedTensor(t);
            }
        }
    }
}

/// The rank-6 special tensor together with the seed it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialTensor {
    tensor: DenseTensor,
    seed: DenseTensor,
}

impl SpecialTensor {
    pub fn tensor(&self) -> &DenseTensor {
        &self.tensor
    }

    pub fn seed(&self) -> &DenseTensor {
        &self.seed
    }
}

/// Element of the ideal's ambient grading: degree-2 part in `g (x) g`,
/// degree-1 part in `g`, degree-0 scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomogeneousElement {
    pub degree2: DenseTensor,
    pub degree1: DenseTensor,
    pub degree0: Rational,
}

/// Which factor pair of the rank-6 tensor is rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    FirstPair,
    SecondPair,
}

impl ReductionOrder {
    fn offset(self) -> usize {
        match self {
            ReductionOrder::FirstPair => 0,
            ReductionOrder::SecondPair => 2,
        }
    }
}

/// Which orientation of the seed the reduction landed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedOrientation {
    Direct,
    Transposed,
}

/// Output of one reduction chain: the affine-in-lambda coefficient and the
/// seed direction it multiplies.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub coefficient: AffineLambda,
    pub direction: DenseTensor,
    pub orientation: SeedOrientation,
}

/// The generator `X (x) Y - X o Y - 1/2 [X,Y] - lambda <X,Y>` presented by
/// graded parts (each part negated into its own degree: the degree-2 part
/// is `X (x) Y - X o Y`, the degree-1 part `-1/2 [X,Y]`, the degree-0 part
/// `-lambda <X,Y>`).
pub fn generator(
    ctx: &LieContext,
    lambda: &IdealParameter,
    x: &DenseTensor,
    y: &DenseTensor,
) -> Result<InhomogeneousElement> {
    let prod = x.tensor_product(y)?;
    let cartan = ctx.cartan_project(&QuadraticElement(prod.clone()))?;
    let degree2 = prod.sub(&cartan.0)?;
    let half = rational::frac(1, 2);
    let degree1 = ctx.bracket(x, y)?.scale(&-half);
    let degree0 = -(lambda * &ctx.killing(x, y)?);
    Ok(InhomogeneousElement {
        degree2,
        degree1,
        degree0,
    })
}

// Term tables for the special tensors: coefficient, two form/delta pairs,
// seed pair, all over output slots 0..6 = (a, b, c, d, e, f).
type Pair = (usize, usize);

const SO_TERMS: [(i64, Pair, Pair, Pair); 20] = [
    (2, (0, 5), (1, 4), (2, 3)),
    (-2, (0, 4), (1, 5), (2, 3)),
    (-2, (2, 5), (3, 4), (0, 1)),
    (2, (2, 4), (3, 5), (0, 1)),
    (1, (0, 2), (1, 4), (3, 5)),
    (-1, (1, 2), (0, 4), (3, 5)),
    (-1, (0, 3), (1, 4), (2, 5)),
    (1, (1, 3), (0, 4), (2, 5)),
    (-1, (0, 2), (1, 5), (3, 4)),
    (1, (1, 2), (0, 5), (3, 4)),
    (1, (0, 3), (1, 5), (2, 4)),
    (-1, (1, 3), (0, 5), (2, 4)),
    (-1, (0, 2), (3, 4), (1, 5)),
    (1, (0, 3), (2, 4), (1, 5)),
    (1, (1, 2), (3, 4), (0, 5)),
    (-1, (1, 3), (2, 4), (0, 5)),
    (1, (0, 2), (3, 5), (1, 4)),
    (-1, (0, 3), (2, 5), (1, 4)),
    (-1, (1, 2), (3, 5), (0, 4)),
    (1, (1, 3), (2, 5), (0, 4)),
];

const SP_TERMS: [(i64, Pair, Pair, Pair); 20] = [
    (4, (0, 5), (1, 4), (2, 3)),
    (4, (0, 4), (1, 5), (2, 3)),
    (-4, (2, 5), (3, 4), (0, 1)),
    (-4, (2, 4), (3, 5), (0, 1)),
    (-1, (0, 2), (1, 4), (3, 5)),
    (-1, (1, 2), (0, 4), (3, 5)),
    (-1, (0, 3), (1, 4), (2, 5)),
    (-1, (1, 3), (0, 4), (2, 5)),
    (-1, (0, 2), (1, 5), (3, 4)),
    (-1, (1, 2), (0, 5), (3, 4)),
    (-1, (0, 3), (1, 5), (2, 4)),
    (-1, (1, 3), (0, 5), (2, 4)),
    (-1, (0, 2), (3, 4), (1, 5)),
    (-1, (0, 3), (2, 4), (1, 5)),
    (-1, (1, 2), (3, 4), (0, 5)),
    (-1, (1, 3), (2, 4), (0, 5)),
    (-1, (0, 2), (3, 5), (1, 4)),
    (-1, (0, 3), (2, 5), (1, 4)),
    (-1, (1, 2), (3, 5), (0, 4)),
    (-1, (1, 3), (2, 5), (0, 4)),
];

// sl terms: (numerator, divide-by-n flag, delta pair (upper, lower),
// delta pair, seed pair (upper, lower)); slots (a,b,c,d,e,f) have
// variance (u,l,u,l,u,l).
const SL_TERMS: [(i64, bool, Pair, Pair, Pair); 8] = [
    (1, false, (4, 3), (2, 5), (0, 1)),
    (-1, true, (2, 3), (4, 5), (0, 1)),
    (-1, false, (4, 1), (0, 5), (2, 3)),
    (1, true, (0, 1), (4, 5), (2, 3)),
    (1, false, (0, 3), (4, 1), (2, 5)),
    (-1, true, (0, 3), (4, 5), (2, 1)),
    (-1, false, (2, 1), (4, 3), (0, 5)),
    (1, true, (2, 1), (4, 5), (0, 3)),
];

fn six_slot_variance(ctx: &LieContext) -> Vec<Variance> {
    match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => variances("uuuuuu"),
        AlgebraKind::SL(_) => variances("ululul"),
    }
}

/// Builds the kind's special rank-6 tensor from a seed.
pub fn special_tensor(ctx: &LieContext, seed: &SeedTensor) -> Result<SpecialTensor> {
    let t = seed.tensor();
    let n = ctx.v_dim();
    let var = six_slot_variance(ctx);
    let tensor = match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            let form = &ctx
                .bilinear()
                .expect("so/sp context carries a form")
                .form_upper;
            let terms: &[(i64, Pair, Pair, Pair)] = match ctx.kind() {
                AlgebraKind::SO(_) => &SO_TERMS,
                _ => &SP_TERMS,
            };
            DenseTensor::from_fn(n, &var, |idx| {
                let mut acc = Rational::zero();
                for (coef, f1, f2, tp) in terms {
                    let a = form.get(&[idx[f1.0], idx[f1.1]]);
                    if a.is_zero() {
                        continue;
                    }
                    let b = form.get(&[idx[f2.0], idx[f2.1]]);
                    if b.is_zero() {
                        continue;
                    }
                    let c = t.get(&[idx[tp.0], idx[tp.1]]);
                    if c.is_zero() {
                        continue;
                    }
                    acc += rational::int(*coef) * a * b * c;
                }
                acc
            })?
        }
        AlgebraKind::SL(_) => DenseTensor::from_fn(n, &var, |idx| {
            let mut acc = Rational::zero();
            for (num, over_n, d1, d2, tp) in &SL_TERMS {
                if idx[d1.0] != idx[d1.1] || idx[d2.0] != idx[d2.1] {
                    continue;
                }
                let c = t.get(&[idx[tp.0], idx[tp.1]]);
                if c.is_zero() {
                    continue;
                }
                let coef = if *over_n {
                    rational::frac(*num, n as i64)
                } else {
                    rational::int(*num)
                };
                acc += coef * c;
            }
            acc
        })?,
    };
    let s = SpecialTensor {
        tensor,
        seed: t.clone(),
    };
    validate_special(ctx, &s)?;
    Ok(s)
}

/// Structural checks: each factor pair carries the kind's symmetry, and the
/// tensor is antisymmetric under swapping the first two pairs.
fn validate_special(ctx: &LieContext, s: &SpecialTensor) -> Result<()> {
    let t = &s.tensor;
    let swap = t.permuted(&[2, 3, 0, 1, 4, 5])?;
    if t.add(&swap)?.is_zero() != true {
        return Err(IdealError::CartanObstruction);
    }
    let ok = match ctx.kind() {
        AlgebraKind::SO(_) => {
            t.symmetrize(&[0, 1], false)?.is_zero()
                && t.symmetrize(&[2, 3], false)?.is_zero()
                && t.symmetrize(&[4, 5], false)?.is_zero()
        }
        AlgebraKind::SP(_) => {
            t.symmetrize(&[0, 1], true)?.is_zero()
                && t.symmetrize(&[2, 3], true)?.is_zero()
                && t.symmetrize(&[4, 5], true)?.is_zero()
        }
        AlgebraKind::SL(_) => {
            t.contract(0, 1)?.is_zero()
                && t.contract(2, 3)?.is_zero()
                && t.contract(4, 5)?.is_zero()
        }
    };
    if ok {
        Ok(())
    } else {
        Err(IdealError::BadSeed)
    }
}

/// The Young-symmetrization step over the second factor pair (slots 2..6),
/// i.e. the tensor the closed-form displays describe.
pub fn young_z(ctx: &LieContext, s: &SpecialTensor) -> Result<DenseTensor> {
    Ok(ctx.young_slots(&s.tensor, 2)?)
}

/// Does the Cartan part of `S` vanish with respect to the chosen pair?
pub fn cartan_vanishes(ctx: &LieContext, s: &SpecialTensor, order: ReductionOrder) -> Result<bool> {
    let proj = ctx.cartan_project_slots(&s.tensor, order.offset())?;
    Ok(proj.is_zero())
}

/// The bracket-substitution contraction on four consecutive slots starting
/// at `offset`: the two factor slots collapse to the bracket's output pair,
/// passengers ride along. This is the index form of `[X, Y]` applied inside
/// a larger tensor (verified against the structure constants in tests).
pub fn pair_bracket(ctx: &LieContext, t: &DenseTensor, offset: usize) -> Result<DenseTensor> {
    let term1;
    let term2;
    match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            // `V^a{}_b{}^{bd}`: the *first* slot of the inner pair is
            // lowered and the second contracts against it. The orientation
            // matters for the skew form.
            let form_lower = &ctx.bilinear().expect("so/sp form").form_lower;
            let lowered = t.raise_lower(offset + 1, form_lower)?;
            term1 = lowered.contract(offset + 1, offset + 2)?;
            // Reading the surviving bracket slots in swapped order.
            let mut perm: Vec<usize> = (0..term1.rank()).collect();
            perm.swap(offset, offset + 1);
            term2 = term1.permuted(&perm)?;
        }
        AlgebraKind::SL(_) => {
            term1 = t.contract(offset + 1, offset + 2)?;
            let raw2 = t.contract(offset, offset + 3)?;
            let mut perm: Vec<usize> = (0..raw2.rank()).collect();
            perm.swap(offset, offset + 1);
            term2 = raw2.permuted(&perm)?;
        }
    }
    match ctx.kind() {
        AlgebraKind::SP(_) => Ok(term1.add(&term2)?),
        _ => Ok(term1.sub(&term2)?),
    }
}

/// Full invariant trace of four consecutive slots (the pairing the Killing
/// substitution uses, before scaling by the derived Killing multiple).
pub fn pair_trace(ctx: &LieContext, t: &DenseTensor, offset: usize) -> Result<DenseTensor> {
    match ctx.kind() {
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            let c1 = ctx.trace_pair(t, offset, offset + 2)?;
            // The surviving pair slots now sit at (offset, offset+1).
            Ok(ctx.trace_pair(&c1, offset, offset + 1)?)
        }
        AlgebraKind::SL(_) => {
            let c1 = t.contract(offset + 1, offset + 2)?;
            Ok(c1.contract(offset, offset + 1)?)
        }
    }
}

/// Killing substitution on four consecutive slots: `pair_trace` scaled by
/// the context's derived Killing/pairing multiple.
pub fn pair_killing(ctx: &LieContext, t: &DenseTensor, offset: usize) -> Result<DenseTensor> {
    Ok(pair_trace(ctx, t, offset)?.scale(ctx.pairing_multiple()))
}

fn membership_in_seed(
    value: &DenseTensor,
    seed: &DenseTensor,
) -> Result<Option<(Rational, SeedOrientation)>> {
    if value.is_zero() {
        return Ok(Some((Rational::zero(), SeedOrientation::Direct)));
    }
    if let Some(c) = value.solve_membership(core::slice::from_ref(seed))? {
        return Ok(Some((c[0].clone(), SeedOrientation::Direct)));
    }
    let transposed = seed.permuted(&[1, 0])?;
    if let Some(c) = value.solve_membership(&[transposed])? {
        return Ok(Some((c[0].clone(), SeedOrientation::Transposed)));
    }
    Ok(None)
}

/// Reduces the special tensor modulo the ideal with respect to one factor
/// pair: check the Cartan part vanishes, substitute
/// `1/2 bracket + lambda Killing`, iterate on the degree-2 residue, and
/// express the final degree-1 element as an exact multiple of the seed.
pub fn reduce(ctx: &LieContext, s: &SpecialTensor, order: ReductionOrder) -> Result<Reduction> {
    if !cartan_vanishes(ctx, s, order)? {
        return Err(IdealError::CartanObstruction);
    }
    let offset = order.offset();
    let half = rational::frac(1, 2);

    // Step 1: S ~ B + lambda K1 with B the half-bracket residue (degree 2)
    // and K1 the Killing contraction times the passenger pair (degree 1).
    let b = pair_bracket(ctx, &s.tensor, offset)?.scale(&half);
    let k1 = pair_killing(ctx, &s.tensor, offset)?;

    // Step 2: the residue B is again in g (x) g; its Cartan part must
    // vanish for the rewriting to continue.
    if !ctx.cartan_project_slots(&b, 0)?.is_zero() {
        return Err(IdealError::CartanObstruction);
    }
    let d1 = pair_bracket(ctx, &b, 0)?.scale(&half);
    let d0 = pair_killing(ctx, &b, 0)?;
    if !d0.is_zero() {
        // A scalar residue cannot be a multiple of the seed.
        return Err(IdealError::DegreeZeroResidue);
    }

    // Total degree-1 part: d1 + lambda * k1, an exact multiple of the seed.
    let (constant, o1) =
        membership_in_seed(&d1, &s.seed)?.ok_or(IdealError::NotProportionalToSeed)?;
    let (slope, o2) =
        membership_in_seed(&k1, &s.seed)?.ok_or(IdealError::NotProportionalToSeed)?;
    if !d1.is_zero() && !k1.is_zero() && o1 != o2 {
        return Err(IdealError::NotProportionalToSeed);
    }
    let orientation = if d1.is_zero() { o2 } else { o1 };
    let direction = match orientation {
        SeedOrientation::Direct => s.seed.clone(),
        SeedOrientation::Transposed => s.seed.permuted(&[1, 0])?,
    };
    Ok(Reduction {
        coefficient: AffineLambda::new(constant, slope),
        direction,
        orientation,
    })
}

/// Both reduction coefficients for a deterministic nonzero seed.
pub fn reduction_pair(ctx: &LieContext) -> Result<(AffineLambda, AffineLambda)> {
    let seed = SeedTensor::new(ctx, ctx.basis()[0].clone())?;
    let s = special_tensor(ctx, &seed)?;
    let r1 = reduce(ctx, &s, ReductionOrder::FirstPair)?;
    let r2 = reduce(ctx, &s, ReductionOrder::SecondPair)?;
    if r1.orientation != r2.orientation {
        return Err(IdealError::NotProportionalToSeed);
    }
    Ok((r1.coefficient, r2.coefficient))
}

/// The unique parameter at which the two reductions agree.
pub fn critical_lambda(ctx: &LieContext) -> Result<Rational> {
    let (c1, c2) = reduction_pair(ctx)?;
    let slope_diff = &c2.slope - &c1.slope;
    if slope_diff.is_zero() {
        return Err(IdealError::CoefficientsCoincide);
    }
    Ok((&c1.constant - &c2.constant) / slope_diff)
}

/// Classification of the quotient algebra at a given parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientClass {
    /// `lambda` is the critical value: the quotient stays infinite
    /// dimensional.
    Critical,
    /// `lambda = 0` away from critical: the quotient collapses to the
    /// scalars (the ideal's image is the augmentation ideal).
    CollapsedToScalars,
    /// Any other `lambda`: the ideal is everything.
    CollapsedEntirely,
}

pub fn classify_quotient(ctx: &LieContext, lambda: &IdealParameter) -> Result<QuotientClass> {
    let critical = critical_lambda(ctx)?;
    if *lambda == critical {
        Ok(QuotientClass::Critical)
    } else if lambda.is_zero() {
        Ok(QuotientClass::CollapsedToScalars)
    } else {
        Ok(QuotientClass::CollapsedEntirely)
    }
}

/// Fits the lowest-degree rational function of the family parameter through
/// the critical values on `n_min..=n_max`. `family` is the kind
/// constructor, e.g. `AlgebraKind::SO`.
pub fn fit_lambda_formula(
    family: fn(usize) -> AlgebraKind,
    n_min: usize,
    n_max: usize,
) -> Result<RationalFunction> {
    let mut samples = Vec::new();
    for n in n_min..=n_max {
        let ctx = LieContext::build(family(n)).map_err(IdealError::Lie)?;
        samples.push((rational::int(n as i64), critical_lambda(&ctx)?));
    }
    if samples.len() < 5 {
        return Err(IdealError::InterpolationFailed);
    }
    poly::interpolate_rational(&samples, 8).ok_or(IdealError::InterpolationFailed)
}

/// Zero-pads a symplectic special tensor from `sp(2m)` to `sp(2n)`:
/// entries with any index outside the small range become zero. With the
/// block-pairwise form convention the padded seed is again symplectic and
/// the padded tensor keeps both vanishing Cartan parts.
pub fn sp_zero_pad(
    small_ctx: &LieContext,
    large_ctx: &LieContext,
    s: &SpecialTensor,
) -> Result<SpecialTensor> {
    let (AlgebraKind::SP(m), AlgebraKind::SP(n)) = (small_ctx.kind(), large_ctx.kind()) else {
        return Err(IdealError::NotSymplectic);
    };
    if n <= m {
        return Err(IdealError::PadTooSmall);
    }
    let small_v = small_ctx.v_dim();
    let pad = |t: &DenseTensor| -> Result<DenseTensor> {
        Ok(DenseTensor::from_fn(
            large_ctx.v_dim(),
            t.variance(),
            |idx| {
                if idx.iter().any(|&i| i >= small_v) {
                    Rational::zero()
                } else {
                    t.get(idx).clone()
                }
            },
        )?)
    };
    let padded = SpecialTensor {
        tensor: pad(&s.tensor)?,
        seed: pad(&s.seed)?,
    };
    // The padded seed must be a genuine element of the larger algebra.
    SeedTensor::new(large_ctx, padded.seed.clone())?;
    validate_special(large_ctx, &padded)?;
    Ok(padded)
}

/// Restriction inverse to `sp_zero_pad` on surviving entries.
pub fn sp_restrict(small_ctx: &LieContext, padded: &SpecialTensor) -> Result<SpecialTensor> {
    let v = small_ctx.v_dim();
    let cut = |t: &DenseTensor| -> Result<DenseTensor> {
        Ok(DenseTensor::from_fn(v, t.variance(), |idx| {
            t.get(idx).clone()
        })?)
    };
    Ok(SpecialTensor {
        tensor: cut(&padded.tensor)?,
        seed: cut(&padded.seed)?,
    })
}

// ---------------------------------------------------------------------------
// Closed-form reference expansions used by the verification suites.
// ---------------------------------------------------------------------------

/// Closed form of the Young-projected tensor for the orthogonal case
/// (eighteen terms: two with coefficient 2, sixteen with 1/2).
pub fn so_z_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let terms: [(i64, i64, Pair, Pair, Pair); 18] = [
        (2, 1, (2, 4), (3, 5), (0, 1)),
        (-2, 1, (3, 4), (2, 5), (0, 1)),
        (-1, 2, (0, 2), (3, 4), (1, 5)),
        (1, 2, (0, 3), (2, 4), (1, 5)),
        (1, 2, (1, 2), (3, 4), (0, 5)),
        (-1, 2, (1, 3), (2, 4), (0, 5)),
        (1, 2, (0, 2), (3, 5), (1, 4)),
        (-1, 2, (0, 3), (2, 5), (1, 4)),
        (-1, 2, (1, 2), (3, 5), (0, 4)),
        (1, 2, (1, 3), (2, 5), (0, 4)),
        (-1, 2, (0, 4), (2, 5), (1, 3)),
        (1, 2, (0, 4), (3, 5), (1, 2)),
        (1, 2, (1, 4), (2, 5), (0, 3)),
        (-1, 2, (1, 4), (3, 5), (0, 2)),
        (1, 2, (0, 5), (2, 4), (1, 3)),
        (-1, 2, (0, 5), (3, 4), (1, 2)),
        (-1, 2, (1, 5), (2, 4), (0, 3)),
        (1, 2, (1, 5), (3, 4), (0, 2)),
    ];
    let AlgebraKind::SO(_) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let form = &ctx.bilinear().expect("so form").form_upper;
    let t = seed.tensor();
    Ok(DenseTensor::from_fn(
        ctx.v_dim(),
        &variances("uuuuuu"),
        |idx| {
            let mut acc = Rational::zero();
            for (num, den, f1, f2, tp) in &terms {
                let a = form.get(&[idx[f1.0], idx[f1.1]]);
                if a.is_zero() {
                    continue;
                }
                let b = form.get(&[idx[f2.0], idx[f2.1]]);
                if b.is_zero() {
                    continue;
                }
                let c = t.get(&[idx[tp.0], idx[tp.1]]);
                if c.is_zero() {
                    continue;
                }
                acc += rational::frac(*num, *den) * a * b * c;
            }
            acc
        },
    )?)
}

/// Closed form of the Young-projected tensor for the special linear case.
/// It is manifestly pure trace in the last four slots.
pub fn sl_z_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    // (numerator, denominator kind: 1 -> plain, n -> divide by n,
    //  delta pair, delta pair, seed pair); slots (a,b,c,d,e,f) = (u,l,u,l,u,l).
    #[derive(Clone, Copy)]
    enum Den {
        Plain(i64),
        OverN(i64),
    }
    use Den::*;
    let terms: [(Den, Pair, Pair, Pair); 20] = [
        (Plain(2), (4, 3), (2, 5), (0, 1)),
        (Plain(-1), (2, 1), (4, 3), (0, 5)),
        (OverN(-2), (2, 3), (4, 5), (0, 1)),
        (OverN(1), (0, 1), (4, 5), (2, 3)),
        (OverN(-1), (0, 3), (4, 5), (2, 1)),
        (OverN(1), (2, 1), (4, 5), (0, 3)),
        (Plain(-1), (4, 1), (2, 5), (0, 3)),
        (OverN(-1), (2, 3), (0, 5), (4, 1)),
        (OverN(1), (0, 1), (4, 3), (2, 5)),
        (OverN(1), (0, 1), (2, 5), (4, 3)),
        (OverN(1), (2, 3), (4, 1), (0, 5)),
        (OverN(-2), (2, 5), (4, 3), (0, 1)),
        (OverN(1), (0, 1), (2, 3), (4, 5)),
        (OverN(-1), (0, 5), (4, 3), (2, 1)),
        (OverN(1), (2, 1), (4, 3), (0, 5)),
        (OverN(-1), (0, 3), (2, 5), (4, 1)),
        (OverN(1), (4, 1), (2, 5), (0, 3)),
        (Plain(2), (4, 5), (2, 3), (0, 1)),
        (Plain(-1), (2, 1), (4, 5), (0, 3)),
        (Plain(-1), (4, 1), (2, 3), (0, 5)),
    ];
    let AlgebraKind::SL(_) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let n = ctx.v_dim();
    let t = seed.tensor();
    Ok(DenseTensor::from_fn(n, &variances("ululul"), |idx| {
        let mut acc = Rational::zero();
        for (den, d1, d2, tp) in &terms {
            if idx[d1.0] != idx[d1.1] || idx[d2.0] != idx[d2.1] {
                continue;
            }
            let c = t.get(&[idx[tp.0], idx[tp.1]]);
            if c.is_zero() {
                continue;
            }
            let coef = match den {
                Plain(x) => rational::frac(*x, 4),
                OverN(x) => rational::frac(*x, 4 * n as i64),
            };
            acc += coef * c;
        }
        acc
    })?)
}

/// Closed form of the single trace `S^a{}_b{}^{bdef}` for the orthogonal
/// case: `(n-4) [g^{af}T^{de} - g^{ae}T^{df} + g^{de}T^{af} - g^{df}T^{ae}]`
/// on slots `(a, d, e, f)`.
pub fn so_first_trace_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SO(n) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let scale = rational::int(n as i64 - 4);
    closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(1), (0, 3), (1, 2)),
            (rational::int(-1), (0, 2), (1, 3)),
            (rational::int(1), (1, 2), (0, 3)),
            (rational::int(-1), (1, 3), (0, 2)),
        ],
    )
    .map(|t| t.scale(&scale))
}

/// Closed form of the single trace `S^{abc}{}_d{}^{df}` for the orthogonal
/// case on slots `(a, b, c, f)`.
pub fn so_second_trace_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SO(n) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let n = n as i64;
    closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(-1), (0, 3), (1, 2)),
            (rational::int(1), (1, 3), (0, 2)),
            (rational::int(-2 * (n - 2)), (2, 3), (0, 1)),
            (rational::int(-(n - 3)), (0, 2), (1, 3)),
            (rational::int(n - 3), (1, 2), (0, 3)),
        ],
    )
}

/// Closed form of the first-pair bracket residue for the symplectic case:
/// `-2(n-1) (w^{ae}T^{df} + w^{de}T^{af} + w^{af}T^{de} + w^{df}T^{ae})`
/// on slots `(a, d, e, f)`.
pub fn sp_first_residue_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SP(n) = ctx.kind() else {
        return Err(IdealError::NotSymplectic);
    };
    let scale = rational::int(-2 * (n as i64 - 1));
    closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(1), (0, 2), (1, 3)),
            (rational::int(1), (1, 2), (0, 3)),
            (rational::int(1), (0, 3), (1, 2)),
            (rational::int(1), (1, 3), (0, 2)),
        ],
    )
    .map(|t| t.scale(&scale))
}

/// Closed form of the second-pair bracket residue for the symplectic case:
/// `-(n-1) (w^{ac}T^{bf} + w^{bc}T^{af} + w^{af}T^{bc} + w^{bf}T^{ac})`
/// on slots `(a, b, c, f)`.
pub fn sp_second_residue_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SP(n) = ctx.kind() else {
        return Err(IdealError::NotSymplectic);
    };
    let scale = rational::int(-(n as i64 - 1));
    closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(1), (0, 2), (1, 3)),
            (rational::int(1), (1, 2), (0, 3)),
            (rational::int(1), (0, 3), (1, 2)),
            (rational::int(1), (1, 3), (0, 2)),
        ],
    )
    .map(|t| t.scale(&scale))
}

fn closed_form_rank4(
    ctx: &LieContext,
    seed: &SeedTensor,
    terms: &[(Rational, Pair, Pair)],
) -> Result<DenseTensor> {
    let form = &ctx
        .bilinear()
        .ok_or(IdealError::BadSeed)?
        .form_upper;
    let t = seed.tensor();
    Ok(DenseTensor::from_fn(
        ctx.v_dim(),
        &variances("uuuu"),
        |idx| {
            let mut acc = Rational::zero();
            for (coef, fp, tp) in terms {
                let a = form.get(&[idx[fp.0], idx[fp.1]]);
                if a.is_zero() {
                    continue;
                }
                let c = t.get(&[idx[tp.0], idx[tp.1]]);
                if c.is_zero() {
                    continue;
                }
                acc += coef * a * c;
            }
            acc
        },
    )?)
}

/// Closed form of the first-pair bracket residue for the special linear
/// case: `-(n-1) d^e_d T^a_f - d^a_f T^e_d + d^a_d T^e_f + d^e_f T^a_d` on
/// slots `(a, d, e, f)` with variance `(u, l, u, l)`.
pub fn sl_first_residue_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SL(n) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let n = n as i64;
    sl_closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(-(n - 1)), (2, 1), (0, 3)),
            (rational::int(-1), (0, 3), (2, 1)),
            (rational::int(1), (0, 1), (2, 3)),
            (rational::int(1), (2, 3), (0, 1)),
        ],
    )
}

/// Closed form of the second-pair bracket contraction for the special
/// linear case (before the overall 1/2):
/// `d^c_f T^a_b - (n-1) d^c_b T^a_f + d^a_b T^c_f - d^a_f T^c_b` on slots
/// `(a, b, c, f)` with variance `(u, l, u, l)`.
pub fn sl_second_residue_closed_form(ctx: &LieContext, seed: &SeedTensor) -> Result<DenseTensor> {
    let AlgebraKind::SL(n) = ctx.kind() else {
        return Err(IdealError::BadSeed);
    };
    let n = n as i64;
    sl_closed_form_rank4(
        ctx,
        seed,
        &[
            (rational::int(1), (2, 3), (0, 1)),
            (rational::int(-(n - 1)), (2, 1), (0, 3)),
            (rational::int(1), (0, 1), (2, 3)),
            (rational::int(-1), (0, 3), (2, 1)),
        ],
    )
}

fn sl_closed_form_rank4(
    ctx: &LieContext,
    seed: &SeedTensor,
    terms: &[(Rational, Pair, Pair)],
) -> Result<DenseTensor> {
    let t = seed.tensor();
    Ok(DenseTensor::from_fn(
        ctx.v_dim(),
        &variances("ulul"),
        |idx| {
            let mut acc = Rational::zero();
            for (coef, dp, tp) in terms {
                if idx[dp.0] != idx[dp.1] {
                    continue;
                }
                let c = t.get(&[idx[tp.0], idx[tp.1]]);
                if c.is_zero() {
                    continue;
                }
                acc += coef * c;
            }
            acc
        },
    )?)
}
