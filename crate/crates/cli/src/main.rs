//! Verification driver: runs the exact tensor checks per algebra family,
//! prints critical parameters and Hom dimensions, and emits text or JSON
//! reports.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage/config
//! error, 3 resource ceiling hit.

mod checks;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use checks::{CliFailure, ContextCache};
use config::{Family, Format, NRange, RunConfig};
use joseph_core::ideal;
use joseph_core::rational::{self, format as fmt_q};
use num_traits::Zero;
use report::{CheckRecord, Status, VerificationReport};

#[derive(Parser)]
#[command(
    name = "joseph",
    version,
    about = "Exact verification of the critical quadratic-ideal parameter for the classical Lie algebras"
)]
struct Cli {
    /// Output format for reports and results.
    #[arg(long, global = true, value_parser = parse_format, default_value = "text")]
    format: Format,

    /// Seed for the deterministic pseudo-random tensors.
    #[arg(long, global = true, default_value_t = 0x4a5e9)]
    seed: u64,

    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Directory for caching expensive equivariant-solver results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Admit parameters outside the theorem ranges where the machinery
    /// still makes sense (currently sl(2)).
    #[arg(long, global = true)]
    allow_out_of_range: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        _ => Err("format must be `text` or `json`".into()),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| "kind must be one of so, sp, sl".into())
}

fn parse_range(s: &str) -> Result<NRange, String> {
    NRange::parse(s).ok_or_else(|| "expected N or MIN..MAX (inclusive)".into())
}

#[derive(Args)]
struct VerifyArgs {
    /// Family to verify: so, sp, sl, or all.
    #[arg(long, default_value = "all")]
    kind: String,

    /// Inclusive parameter range, e.g. `5..8` or `5`.
    #[arg(long, value_parser = parse_range)]
    n: Option<NRange>,

    /// Random seeds per identity check.
    #[arg(long, default_value_t = 2)]
    seeds_per_check: u32,

    /// Dimension ceiling for the defining representation.
    #[arg(long, default_value_t = 12)]
    max_v_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the special-tensor, projection, reduction and critical-parameter
    /// checks over a parameter grid.
    Verify(VerifyArgs),
    /// Print the critical parameter for one algebra.
    CriticalLambda {
        #[arg(value_parser = parse_family)]
        kind: Family,
        n: usize,
    },
    /// Fit the closed form of the critical parameter over a grid.
    FitLambda {
        #[arg(value_parser = parse_family)]
        kind: Family,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Hom-space dimensions, optionally with the explicit kernel solver.
    Homdim {
        #[arg(value_parser = parse_family)]
        kind: Family,
        n: usize,
        /// Also solve the equivariant maps into the kernel of the Cartan
        /// projection (smallest contexts only).
        #[arg(long)]
        ker_phi: bool,
        /// Intersect with the kernel of the Killing contraction as well.
        #[arg(long, requires = "ker_phi")]
        with_psi: bool,
    },
    /// Differential-operator realization checks for sl(n).
    WeylCheck {
        #[arg(long)]
        n: usize,
        /// Degrees used for the composition-law verification.
        #[arg(long, value_parser = parse_range, default_value = "1..4")]
        degrees: NRange,
        /// Order and degree for the independence witness, e.g. `2,2`.
        #[arg(long, default_value = "2,2")]
        independence: String,
    },
    /// Run the full default grid plus Hom-dimension and operator sections.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliFailure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliFailure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn base_config(cli: &Cli, kinds: Vec<Family>, ranges: Vec<NRange>, seeds_per_check: u32, max_v_dim: usize) -> RunConfig {
    RunConfig {
        kinds,
        ranges,
        seed: cli.seed,
        seeds_per_check,
        format: cli.format,
        jobs: cli.jobs.max(1),
        max_v_dim,
        allow_out_of_range: cli.allow_out_of_range,
    }
}

fn emit(report: &VerificationReport) {
    match report.config.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn run(cli: Cli) -> Result<bool, CliFailure> {
    let cache = ContextCache::default();
    match &cli.command {
        Command::Verify(args) => {
            let kinds: Vec<Family> = match args.kind.as_str() {
                "all" => vec![Family::So, Family::Sp, Family::Sl],
                k => vec![parse_family(k).map_err(CliFailure::Usage)?],
            };
            let ranges: Vec<NRange> = kinds
                .iter()
                .map(|f| {
                    args.n.unwrap_or_else(|| {
                        let (lo, hi) = f.default_range();
                        NRange { min: lo, max: hi }
                    })
                })
                .collect();
            let cfg = base_config(&cli, kinds, ranges, args.seeds_per_check, args.max_v_dim);
            cfg.validate().map_err(CliFailure::Usage)?;
            let records = checks::run_grid(&cfg, &cache);
            let report = VerificationReport::new(cfg, records);
            emit(&report);
            Ok(report.all_passed())
        }
        Command::CriticalLambda { kind, n } => {
            let cfg = base_config(&cli, vec![*kind], vec![NRange { min: *n, max: *n }], 1, 12);
            cfg.validate().map_err(CliFailure::Usage)?;
            let ctx = cache.get(kind.kind(*n)).map_err(CliFailure::Usage)?;
            let t0 = Instant::now();
            let lam = ideal::critical_lambda(&ctx)
                .map_err(|e| CliFailure::Usage(format!("{e}")))?;
            match cli.format {
                Format::Text => println!("{}", fmt_q(&lam)),
                Format::Json => {
                    let rec = CheckRecord {
                        id: "critical-lambda".into(),
                        kind: kind.name().into(),
                        n: *n,
                        anchor: "unique parameter at which the two reductions agree".into(),
                        status: Status::Pass,
                        expected: fmt_q(&checks::critical_closed_form(*kind, *n)),
                        got: fmt_q(&lam),
                        millis: t0.elapsed().as_millis(),
                    };
                    let report = VerificationReport::new(cfg, vec![rec]);
                    emit(&report);
                }
            }
            Ok(true)
        }
        Command::FitLambda { kind, n_min, n_max } => {
            if n_max < n_min || n_max - n_min + 1 < 5 {
                return Err(CliFailure::Usage(
                    "fit-lambda needs at least five sample points".into(),
                ));
            }
            let cfg = base_config(
                &cli,
                vec![*kind],
                vec![NRange { min: *n_min, max: *n_max }],
                1,
                12,
            );
            cfg.validate().map_err(CliFailure::Usage)?;
            let family_ctor = match kind {
                Family::So => joseph_core::lie::AlgebraKind::SO,
                Family::Sp => joseph_core::lie::AlgebraKind::SP,
                Family::Sl => joseph_core::lie::AlgebraKind::SL,
            };
            let rf = ideal::fit_lambda_formula(family_ctor, *n_min, *n_max)
                .map_err(|e| CliFailure::Usage(format!("{e}")))?;
            match cli.format {
                Format::Text => println!("{}", rf.display("n")),
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "version": env!("CARGO_PKG_VERSION"),
                            "kind": kind.name(),
                            "n_min": n_min,
                            "n_max": n_max,
                            "formula": rf.display("n"),
                        })
                    );
                }
            }
            Ok(true)
        }
        Command::Homdim {
            kind,
            n,
            ker_phi,
            with_psi,
        } => {
            if !cli.allow_out_of_range && !kind.in_theorem_range(*n) && !(matches!(kind, Family::Sl) && *n == 2) {
                return Err(CliFailure::Usage(format!(
                    "{}({n}) outside the theorem range",
                    kind.name()
                )));
            }
            // The kernel solve may consult the on-disk cache.
            let cached = cli.cache_dir.as_ref().and_then(|dir| {
                let path = cache_path(dir, *kind, *n, *with_psi);
                std::fs::read_to_string(path).ok()
            });
            let outcome = if let Some(text) = cached {
                serde_json::from_str::<CachedHom>(&text)
                    .map_err(|e| CliFailure::Usage(format!("corrupt cache entry: {e}")))?
                    .into_outcome()
            } else {
                let o = checks::homdim_outcome(&cache, *kind, *n, *ker_phi, *with_psi)?;
                if *ker_phi {
                    if let Some(dir) = &cli.cache_dir {
                        let _ = std::fs::create_dir_all(dir);
                        let path = cache_path(dir, *kind, *n, *with_psi);
                        let _ = std::fs::write(path, CachedHom::from_outcome(&o).to_json());
                    }
                }
                o
            };
            match cli.format {
                Format::Text => {
                    println!("({}, {})", outcome.dims.0, outcome.dims.1);
                    if let Some(k) = outcome.ker_phi {
                        println!("{k}");
                    }
                    if let Some(k) = outcome.ker_phi_psi {
                        println!("{k}");
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "version": env!("CARGO_PKG_VERSION"),
                            "kind": kind.name(),
                            "n": n,
                            "hom_wedge2_g_tensor_g": outcome.dims.0,
                            "hom_g_tensor_cartan2": outcome.dims.1,
                            "ker_phi": outcome.ker_phi,
                            "ker_phi_psi": outcome.ker_phi_psi,
                            "special_tensor_in_kernel": outcome.special_in_kernel,
                        })
                    );
                }
            }
            Ok(outcome.special_in_kernel.unwrap_or(true))
        }
        Command::WeylCheck {
            n,
            degrees,
            independence,
        } => {
            if *n < 2 {
                return Err(CliFailure::Usage("weyl-check needs n >= 2".into()));
            }
            let degs: Vec<u32> = degrees.iter().map(|d| d as u32).collect();
            if degs.len() < 3 {
                return Err(CliFailure::Usage(
                    "composition-law fit needs at least three degrees".into(),
                ));
            }
            let (s, d) = independence
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<u32>().ok()?)))
                .ok_or_else(|| CliFailure::Usage("--independence expects `s,d`".into()))?;
            let mut records = Vec::new();
            let t0 = Instant::now();
            let commutes = joseph_core::weyl::commutator_check(*n)
                .map_err(|e| CliFailure::Usage(format!("{e}")))?;
            records.push(CheckRecord {
                id: "commutator-identity".into(),
                kind: "sl".into(),
                n: *n,
                anchor: "D_X D_Y - D_Y D_X = D_[X,Y] as operators".into(),
                status: if commutes { Status::Pass } else { Status::Fail },
                expected: "true".into(),
                got: format!("{commutes}"),
                millis: t0.elapsed().as_millis(),
            });
            let t0 = Instant::now();
            let (c1, c2) = joseph_core::weyl::composition_law(*n, &degs)
                .map_err(|e| CliFailure::Usage(format!("{e}")))?;
            let ni = *n as i64;
            let expect_c1 = joseph_core::poly::Poly::new(vec![
                rational::frac(ni, 2 * (ni + 2)),
                rational::frac(1, ni + 2),
            ]);
            let denom = 2 * ni * (ni + 1) * (ni + 2);
            let expect_c2 = joseph_core::poly::Poly::new(vec![
                rational::int(0),
                rational::frac(-1, denom),
                rational::frac(1, denom),
            ]);
            records.push(CheckRecord {
                id: "composition-law".into(),
                kind: "sl".into(),
                n: *n,
                anchor: "c1(w) = (2w+n)/(2(n+2)), c2(w) = w(w-1)/(2n(n+1)(n+2))".into(),
                status: if c1 == expect_c1 && c2 == expect_c2 {
                    Status::Pass
                } else {
                    Status::Fail
                },
                expected: format!("{} ; {}", expect_c1.display("w"), expect_c2.display("w")),
                got: format!("{} ; {}", c1.display("w"), c2.display("w")),
                millis: t0.elapsed().as_millis(),
            });
            let w = rational::frac(-ni, 2);
            let lam = -c2.eval(&w);
            records.push(CheckRecord {
                id: "critical-weight-evaluation".into(),
                kind: "sl".into(),
                n: *n,
                anchor: "at w = -n/2 the scalar coefficient is the critical parameter".into(),
                status: if lam == rational::frac(-1, 8 * (ni + 1)) && c1.eval(&w).is_zero() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                expected: fmt_q(&rational::frac(-1, 8 * (ni + 1))),
                got: fmt_q(&lam),
                millis: 0,
            });
            if *n == 2 {
                let t0 = Instant::now();
                let p = joseph_core::weyl::sl2_law(&degs)
                    .map_err(|e| CliFailure::Usage(format!("{e}")))?;
                let expect = joseph_core::poly::Poly::new(vec![
                    rational::int(0),
                    rational::frac(1, 12),
                    rational::frac(1, 24),
                ]);
                records.push(CheckRecord {
                    id: "sl2-law".into(),
                    kind: "sl".into(),
                    n: 2,
                    anchor: "the whole scalar term collapses to w(w+2)/24".into(),
                    status: if p == expect { Status::Pass } else { Status::Fail },
                    expected: expect.display("w"),
                    got: p.display("w"),
                    millis: t0.elapsed().as_millis(),
                });
            }
            let t0 = Instant::now();
            match joseph_core::weyl::independence_witness(*n, s, d) {
                Ok(witness) => {
                    // Independent rank oracle: the Weyl dimension of the
                    // s-fold Cartan power's highest weight.
                    let (rs, adj) =
                        joseph_core::rep::roots::for_kind(joseph_core::lie::AlgebraKind::SL(*n))
                            .map_err(|e| CliFailure::Usage(format!("{e}")))?;
                    let mut hw = adj.clone();
                    for _ in 1..s {
                        hw = hw.plus(&adj);
                    }
                    let dim = rs
                        .weyl_dim(&hw)
                        .map_err(|e| CliFailure::Usage(format!("{e}")))?;
                    records.push(CheckRecord {
                        id: format!("independence-witness-s{s}-d{d}"),
                        kind: "sl".into(),
                        n: *n,
                        anchor: "the operator assignment is injective on the Cartan power".into(),
                        status: if witness { Status::Pass } else { Status::Fail },
                        expected: format!("rank {dim}"),
                        got: if witness {
                            format!("rank {dim}")
                        } else {
                            "rank deficient".into()
                        },
                        millis: t0.elapsed().as_millis(),
                    });
                }
                Err(joseph_core::weyl::WeylError::ResourceGuard) => {
                    return Err(CliFailure::Resource(
                        "independence witness exceeds the resource guard".into(),
                    ));
                }
                Err(e) => return Err(CliFailure::Usage(format!("{e}"))),
            }
            let cfg = base_config(
                &cli,
                vec![Family::Sl],
                vec![NRange { min: *n, max: *n }],
                1,
                12,
            );
            let report = VerificationReport::new(cfg, records);
            emit(&report);
            Ok(report.all_passed())
        }
        Command::Report => {
            let kinds = vec![Family::So, Family::Sp, Family::Sl];
            let ranges: Vec<NRange> = kinds
                .iter()
                .map(|f| {
                    let (lo, hi) = f.default_range();
                    NRange { min: lo, max: hi }
                })
                .collect();
            let cfg = base_config(&cli, kinds, ranges, 2, 12);
            cfg.validate().map_err(CliFailure::Usage)?;
            let mut records = checks::run_grid(&cfg, &cache);
            // Hom-dimension section over the same grid.
            for (f, r) in cfg.kinds.iter().zip(&cfg.ranges) {
                for n in r.iter() {
                    let t0 = Instant::now();
                    let dims = joseph_core::rep::hom_dims(f.kind(n))
                        .map_err(|e| CliFailure::Usage(format!("{e}")))?;
                    let expect = match (f, n) {
                        (Family::Sl, _) => (4, 1),
                        // so(6) carries the special-linear count through the
                        // exceptional isomorphism with sl(4).
                        (Family::So, 6) => (4, 1),
                        _ => (2, 1),
                    };
                    records.push(CheckRecord {
                        id: "hom-dimensions".into(),
                        kind: f.name().into(),
                        n,
                        anchor: "dim Hom(g, wedge^2 g (x) g) and dim Hom(g, g (x) Cartan^2 g)"
                            .into(),
                        status: if dims == expect { Status::Pass } else { Status::Fail },
                        expected: format!("({}, {})", expect.0, expect.1),
                        got: format!("({}, {})", dims.0, dims.1),
                        millis: t0.elapsed().as_millis(),
                    });
                }
            }
            // Operator-realization section.
            for n in 2..=4usize {
                let t0 = Instant::now();
                let commutes = joseph_core::weyl::commutator_check(n)
                    .map_err(|e| CliFailure::Usage(format!("{e}")))?;
                records.push(CheckRecord {
                    id: "weyl-commutator".into(),
                    kind: "sl".into(),
                    n,
                    anchor: "D_X D_Y - D_Y D_X = D_[X,Y] as operators".into(),
                    status: if commutes { Status::Pass } else { Status::Fail },
                    expected: "true".into(),
                    got: format!("{commutes}"),
                    millis: t0.elapsed().as_millis(),
                });
            }
            let report = VerificationReport::new(cfg, records);
            emit(&report);
            Ok(report.all_passed())
        }
    }
}

fn cache_path(dir: &PathBuf, kind: Family, n: usize, with_psi: bool) -> PathBuf {
    dir.join(format!(
        "kerphi-{}-{}{}.json",
        kind.name(),
        n,
        if with_psi { "-psi" } else { "" }
    ))
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CachedHom {
    dims: (u64, u64),
    ker_phi: Option<usize>,
    ker_phi_psi: Option<usize>,
    special_in_kernel: Option<bool>,
}

impl CachedHom {
    fn from_outcome(o: &checks::HomOutcome) -> Self {
        CachedHom {
            dims: o.dims,
            ker_phi: o.ker_phi,
            ker_phi_psi: o.ker_phi_psi,
            special_in_kernel: o.special_in_kernel,
        }
    }

    fn into_outcome(self) -> checks::HomOutcome {
        checks::HomOutcome {
            dims: self.dims,
            ker_phi: self.ker_phi,
            ker_phi_psi: self.ker_phi_psi,
            special_in_kernel: self.special_in_kernel,
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache serializes")
    }
}
