//! Check implementations and the bounded worker pool that schedules them.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use joseph_core::ideal::{
    self, cartan_vanishes, classify_quotient, critical_lambda, pair_trace, reduction_pair,
    sp_zero_pad, special_tensor, young_z, ReductionOrder, SeedTensor,
};
use joseph_core::lie::{AlgebraKind, LieContext};
use joseph_core::rational::{format as fmt_q, frac, int, Rational};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::config::{Family, RunConfig};
use crate::report::{CheckRecord, Status};

/// Write-once per key, in-memory for the run.
#[derive(Default)]
pub struct ContextCache {
    map: Mutex<HashMap<AlgebraKind, Arc<LieContext>>>,
}

impl ContextCache {
    pub fn get(&self, kind: AlgebraKind) -> Result<Arc<LieContext>, String> {
        if let Some(c) = self.map.lock().unwrap().get(&kind) {
            return Ok(c.clone());
        }
        // Build outside the lock; duplicate builds are harmless, the first
        // insert wins.
        let built = Arc::new(
            LieContext::build_relaxed(kind).map_err(|e| format!("{}: {e}", kind.label()))?,
        );
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(kind).or_insert(built).clone())
    }
}

fn record(
    id: &str,
    kind: Family,
    n: usize,
    anchor: &str,
    expected: String,
    got: String,
    started: Instant,
) -> CheckRecord {
    let status = if expected == got {
        Status::Pass
    } else {
        Status::Fail
    };
    CheckRecord {
        id: id.to_string(),
        kind: kind.name().to_string(),
        n,
        anchor: anchor.to_string(),
        status,
        expected,
        got,
        millis: started.elapsed().as_millis(),
    }
}

fn zero_or_witness(t: &joseph_core::tensor::DenseTensor) -> String {
    if t.is_zero() {
        "0".to_string()
    } else {
        let nz = t.data().iter().filter(|x| !x.is_zero()).count();
        format!("nonzero at {nz} entries")
    }
}

/// The closed-form critical value per family.
pub fn critical_closed_form(f: Family, n: usize) -> Rational {
    let ni = n as i64;
    match f {
        Family::So => frac(-(ni - 4), 4 * (ni - 1) * (ni - 2)),
        Family::Sp => frac(-1, 16 * (ni + 1)),
        Family::Sl => frac(-1, 8 * (ni + 1)),
    }
}

/// Closed forms of the two reduction coefficients: (first, second) as
/// (constant, slope) pairs.
fn reduction_closed_form(f: Family, n: usize) -> ((Rational, Rational), (Rational, Rational)) {
    let ni = n as i64;
    match f {
        Family::So => (
            (int((ni - 2) * (ni - 4)), int(0)),
            (
                frac((ni - 2) * (ni - 4), 2),
                int(-2 * (ni - 1) * (ni - 2) * (ni - 2)),
            ),
        ),
        Family::Sp => (
            (int(-4 * (ni - 1) * (ni + 1)), int(0)),
            (
                int(-2 * (ni - 1) * (ni + 1)),
                int(32 * (ni - 1) * (ni + 1) * (ni + 1)),
            ),
        ),
        Family::Sl => (
            (frac(-ni * (ni - 2), 2), int(0)),
            (frac(-ni * (ni - 2), 4), int(2 * ni * (ni - 2) * (ni + 1))),
        ),
    }
}

/// The full-trace identities of the special tensor per family:
/// first-pair trace is always zero; the second-pair trace is the stated
/// multiple of the seed.
fn second_trace_multiple(f: Family, n: usize) -> Rational {
    let ni = n as i64;
    match f {
        Family::So => int(2 * (ni - 1) * (ni - 2)),
        Family::Sp => int(-16 * (ni - 1) * (ni + 1)),
        Family::Sl => int((ni - 2) * (ni + 1)),
    }
}

/// All verification checks for one grid cell `(family, n)`.
pub fn cell_checks(
    cache: &ContextCache,
    cfg: &RunConfig,
    family: Family,
    n: usize,
) -> Vec<CheckRecord> {
    let kind = family.kind(n);
    let mut out = Vec::new();
    let ctx = match cache.get(kind) {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord {
                id: "context-build".into(),
                kind: family.name().into(),
                n,
                anchor: "context construction".into(),
                status: Status::Fail,
                expected: "context".into(),
                got: e,
                millis: 0,
            });
            return out;
        }
    };

    for seed_index in 0..cfg.seeds_per_check.max(1) {
        let stream = cfg
            .seed
            .wrapping_add(seed_index as u64)
            .wrapping_add((n as u64) << 32)
            .wrapping_add(match family {
                Family::So => 1 << 48,
                Family::Sp => 2 << 48,
                Family::Sl => 3 << 48,
            });
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let seed = SeedTensor::random(&ctx, &mut rng);
        let suffix = if cfg.seeds_per_check > 1 {
            format!("#{seed_index}")
        } else {
            String::new()
        };

        let t0 = Instant::now();
        let s = match special_tensor(&ctx, &seed) {
            Ok(s) => s,
            Err(e) => {
                out.push(CheckRecord {
                    id: format!("special-tensor{suffix}"),
                    kind: family.name().into(),
                    n,
                    anchor: "special tensor construction".into(),
                    status: Status::Fail,
                    expected: "tensor".into(),
                    got: format!("{e}"),
                    millis: t0.elapsed().as_millis(),
                });
                continue;
            }
        };
        let swap = s.tensor().permuted(&[2, 3, 0, 1, 4, 5]).unwrap();
        out.push(record(
            &format!("special-tensor-pair-swap{suffix}"),
            family,
            n,
            "S^{abcdef} = -S^{cdabef}",
            "0".into(),
            zero_or_witness(&s.tensor().add(&swap).unwrap()),
            t0,
        ));

        let t0 = Instant::now();
        let z = young_z(&ctx, &s).unwrap();
        match family {
            Family::So => {
                let closed = ideal::so_z_closed_form(&ctx, &seed).unwrap();
                out.push(record(
                    &format!("young-z-display{suffix}"),
                    family,
                    n,
                    "Z equals its closed-form expansion",
                    "0".into(),
                    zero_or_witness(&z.sub(&closed).unwrap()),
                    t0,
                ));
            }
            Family::Sp => {
                out.push(record(
                    &format!("young-z-vanishes{suffix}"),
                    family,
                    n,
                    "Z = 0",
                    "0".into(),
                    zero_or_witness(&z),
                    t0,
                ));
            }
            Family::Sl => {
                let closed = ideal::sl_z_closed_form(&ctx, &seed).unwrap();
                out.push(record(
                    &format!("young-z-display{suffix}"),
                    family,
                    n,
                    "Z equals its closed-form (pure trace) expansion",
                    "0".into(),
                    zero_or_witness(&z.sub(&closed).unwrap()),
                    t0,
                ));
            }
        }

        let t0 = Instant::now();
        let first = cartan_vanishes(&ctx, &s, ReductionOrder::FirstPair).unwrap();
        let second = cartan_vanishes(&ctx, &s, ReductionOrder::SecondPair).unwrap();
        out.push(record(
            &format!("cartan-vanishes{suffix}"),
            family,
            n,
            "Cartan parts of S vanish in both factor pairs",
            "true/true".into(),
            format!("{first}/{second}"),
            t0,
        ));

        let t0 = Instant::now();
        let tr1 = pair_trace(&ctx, s.tensor(), 0).unwrap();
        let tr2 = pair_trace(&ctx, s.tensor(), 2).unwrap();
        let expect2 = seed.tensor().scale(&second_trace_multiple(family, n));
        out.push(record(
            &format!("intermediate-traces{suffix}"),
            family,
            n,
            "first-pair full trace = 0; second-pair full trace is the stated multiple of T",
            "0 and 0".into(),
            format!(
                "{} and {}",
                zero_or_witness(&tr1),
                zero_or_witness(&tr2.sub(&expect2).unwrap())
            ),
            t0,
        ));

        let t0 = Instant::now();
        match reduction_pair(&ctx) {
            Ok((c1, c2)) => {
                let ((e1c, e1s), (e2c, e2s)) = reduction_closed_form(family, n);
                out.push(record(
                    &format!("reduction-first{suffix}"),
                    family,
                    n,
                    "first-pair reduction coefficient matches its closed form",
                    format!("{} + {}*lambda", fmt_q(&e1c), fmt_q(&e1s)),
                    format!("{c1}"),
                    t0,
                ));
                let t0 = Instant::now();
                out.push(record(
                    &format!("reduction-second{suffix}"),
                    family,
                    n,
                    "second-pair reduction coefficient matches its closed form",
                    format!("{} + {}*lambda", fmt_q(&e2c), fmt_q(&e2s)),
                    format!("{c2}"),
                    t0,
                ));
            }
            Err(e) => {
                out.push(record(
                    &format!("reduction{suffix}"),
                    family,
                    n,
                    "two-sided reduction to a multiple of the seed",
                    "multiple of T".into(),
                    format!("{e}"),
                    t0,
                ));
            }
        }
    }

    // Seed-independent checks.
    let t0 = Instant::now();
    match critical_lambda(&ctx) {
        Ok(lam) => {
            out.push(record(
                "critical-lambda",
                family,
                n,
                "unique parameter at which the two reductions agree",
                fmt_q(&critical_closed_form(family, n)),
                fmt_q(&lam),
                t0,
            ));
            let t0 = Instant::now();
            let at_critical = classify_quotient(&ctx, &lam).unwrap();
            let at_zero = classify_quotient(&ctx, &int(0)).unwrap();
            let at_one = classify_quotient(&ctx, &int(1)).unwrap();
            out.push(record(
                "quotient-classification",
                family,
                n,
                "trichotomy: critical / collapsed-to-scalars / collapsed-entirely",
                "Critical/CollapsedToScalars/CollapsedEntirely".into(),
                format!("{at_critical:?}/{at_zero:?}/{at_one:?}"),
                t0,
            ));
        }
        Err(e) => {
            out.push(record(
                "critical-lambda",
                family,
                n,
                "unique parameter at which the two reductions agree",
                fmt_q(&critical_closed_form(family, n)),
                format!("{e}"),
                t0,
            ));
        }
    }

    // Symplectic zero padding into the next larger algebra.
    if family == Family::Sp && family.kind(n + 1).v_dim() <= cfg.max_v_dim {
        if let Ok(large) = cache.get(family.kind(n + 1)) {
            let t0 = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9d5a_u64 ^ (n as u64));
            let seed = SeedTensor::random(&ctx, &mut rng);
            let s = special_tensor(&ctx, &seed).unwrap();
            let padded = sp_zero_pad(&ctx, &large, &s).unwrap();
            let first = cartan_vanishes(&large, &padded, ReductionOrder::FirstPair).unwrap();
            let second = cartan_vanishes(&large, &padded, ReductionOrder::SecondPair).unwrap();
            out.push(record(
                "zero-pad",
                family,
                n,
                "zero padding keeps both Cartan parts zero in the larger algebra",
                "true/true".into(),
                format!("{first}/{second}"),
                t0,
            ));
        }
    }

    out
}

/// Runs one closure per grid cell on a pool of `jobs` workers.
pub fn run_grid(cfg: &RunConfig, cache: &ContextCache) -> Vec<CheckRecord> {
    let cells: Vec<(Family, usize)> = cfg
        .kinds
        .iter()
        .zip(&cfg.ranges)
        .flat_map(|(f, r)| r.iter().map(move |n| (*f, n)))
        .collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<CheckRecord>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.min(cells.len()).max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= cells.len() {
                    break;
                }
                let (f, n) = cells[i];
                let records = cell_checks(cache, cfg, f, n);
                results.lock().unwrap().extend(records);
            });
        }
    });
    results.into_inner().unwrap()
}

/// Hom-dimension checks (and optionally the explicit kernel solver).
pub struct HomOutcome {
    pub dims: (u64, u64),
    pub ker_phi: Option<usize>,
    pub ker_phi_psi: Option<usize>,
    pub special_in_kernel: Option<bool>,
}

pub fn homdim_outcome(
    cache: &ContextCache,
    family: Family,
    n: usize,
    ker_phi: bool,
    with_psi: bool,
) -> Result<HomOutcome, CliFailure> {
    let kind = family.kind(n);
    let dims = joseph_core::rep::hom_dims(kind).map_err(|e| CliFailure::Usage(format!("{e}")))?;
    if !ker_phi {
        return Ok(HomOutcome {
            dims,
            ker_phi: None,
            ker_phi_psi: None,
            special_in_kernel: None,
        });
    }
    let ctx = cache.get(kind).map_err(CliFailure::Usage)?;
    let space = joseph_core::rep::dim_hom_ker_phi(&ctx, with_psi).map_err(|e| match e {
        joseph_core::rep::HomError::ContextTooLarge(_) => CliFailure::Resource(format!("{e}")),
        other => CliFailure::Usage(format!("{other}")),
    })?;
    let values: Vec<joseph_core::tensor::DenseTensor> = ctx
        .basis()
        .iter()
        .map(|b| {
            special_tensor(&ctx, &SeedTensor::new(&ctx, b.clone()).unwrap())
                .unwrap()
                .tensor()
                .clone()
        })
        .collect();
    let contained = space.contains_in_ker_phi(&ctx, &values).unwrap_or(false);
    Ok(HomOutcome {
        dims,
        ker_phi: Some(space.ker_phi_dim()),
        ker_phi_psi: space.ker_phi_psi_dim(),
        special_in_kernel: Some(contained),
    })
}

/// Failures that map to specific exit codes.
#[derive(Debug)]
pub enum CliFailure {
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Resource(String),
}
