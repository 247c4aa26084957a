//! Argument parsing and subcommand dispatch for the `kakeya` binary.
//!
//! Each subcommand calls one library entry point and prints its result, so
//! `run` returns the exact bytes a caller would get from the library plus the
//! exit status. Exit codes: 0 success, 1 property fails, 2 input error,
//! 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use kakeya_core::bounds::{alon_tao_bound, corollary_bound, schwartz_zippel_bound, thm2_bound, BoundReport};
use kakeya_core::certify::certify_cascade_unchecked;
use kakeya_core::{
    certify_cascade, certify_refutation_thm2, check_delta_gamma, construct, count_zeros, direction_profile,
    is_kakeya, minimal_kakeya_exact, minimal_kakeya_greedy, parse_rational, to_sorted_json, verify_certificate,
    Certificate, Construction, Error, FieldSpec, PointSet, Polynomial, Rational, SearchLimits,
};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_MAX_POINTS: u64 = 1 << 16;
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// The parsed command line. `--dump-config` prints it back as JSON.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "kakeya", version, about = "Kakeya sets over finite fields")]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest q^n any subcommand will enumerate.
    #[arg(long, global = true, env = "KAKEYA_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: u64,

    /// Search-tree nodes the exact search may visit.
    #[arg(long, global = true, env = "KAKEYA_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,

    /// Print the parsed configuration as JSON and exit.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub dump_config: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FieldArgs {
    /// Field order or spec: `5`, `4`, `2^2`, or `2^2 mod=1,1,1`.
    #[arg(long)]
    pub q: String,

    /// Modulus coefficients c0,...,ck (lowest degree first) for extension fields.
    #[arg(long = "mod")]
    #[serde(rename = "mod")]
    pub modulus: Option<String>,

    #[arg(long)]
    pub n: usize,
}

impl FieldArgs {
    fn spec(&self) -> kakeya_core::Result<FieldSpec> {
        match &self.modulus {
            Some(m) => FieldSpec::parse(&format!("{} mod={m}", self.q)),
            None => FieldSpec::parse(&self.q),
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Build a Kakeya set and write it as a set file.
    Construct {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        /// full, greedy, or random
        #[arg(long, default_value = "greedy")]
        kind: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the Kakeya or (δ,γ)-Kakeya property of a set file.
    Verify {
        input: PathBuf,
        #[arg(long, conflicts_with_all = ["delta", "gamma"])]
        kakeya: bool,
        #[arg(long, requires = "gamma")]
        delta: Option<String>,
        #[arg(long, requires = "delta")]
        gamma: Option<String>,
        /// Include the per-direction line counts.
        #[arg(long)]
        profile: bool,
    },
    /// Print the largest line intersection for every direction.
    Profile { input: PathBuf },
    /// Print the lower bounds that apply to (q, n).
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "gamma")]
        delta: Option<String>,
        #[arg(long, requires = "delta")]
        gamma: Option<String>,
        /// Also apply the product-set scheme with this power.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Produce a certificate for a set file.
    #[command(group(ArgGroup::new("pipeline").required(true).args(["cascade", "thm2"])))]
    Certify {
        input: PathBuf,
        #[arg(long)]
        cascade: bool,
        /// Refute a claimed (δ,γ) profile by the degree argument.
        #[arg(long)]
        thm2: bool,
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long, default_value = "1")]
        gamma: String,
        /// Skip the Kakeya check before the cascade.
        #[arg(long, requires = "cascade")]
        unchecked: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count the zeros of a polynomial over all of F^n.
    Zeros {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        /// Polynomial text, e.g. `1*x1^1+2*x2^2`.
        #[arg(long)]
        poly: String,
    },
    /// Search for a minimum Kakeya set.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "greedy"])))]
    Search {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = 16)]
        restarts: u64,
        /// Write the witness set file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Include wall time in the output (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Re-check a certificate from its JSON alone.
    VerifyCertificate { input: PathBuf },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn with(stdout: String, success: bool) -> Self {
        Outcome {
            stdout,
            code: if success { 0 } else { 1 },
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse { .. } | Error::DivisionByZero => 2,
        Error::Resource(_) => 3,
        Error::NoWitnessLine { .. } | Error::Inconsistent(_) => 1,
    }
}

fn read(path: &Path) -> kakeya_core::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> kakeya_core::Result<()> {
    fs::write(path, text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn check_size(spec: &FieldSpec, n: usize, max_points: u64) -> kakeya_core::Result<()> {
    match (spec.order() as u64).checked_pow(n as u32) {
        Some(size) if size <= max_points => Ok(()),
        _ => Err(Error::Resource(format!(
            "q^n = {}^{n} exceeds --max-points {max_points}",
            spec.order()
        ))),
    }
}

fn read_set(path: &Path, max_points: u64) -> kakeya_core::Result<PointSet> {
    let k = PointSet::parse_set_file(&read(path)?)?;
    check_size(k.spec(), k.dim(), max_points)?;
    Ok(k)
}

fn rational_pair(delta: &str, gamma: &str) -> kakeya_core::Result<(Rational, Rational)> {
    Ok((parse_rational(delta)?, parse_rational(gamma)?))
}

fn is_prime_power(q: u64) -> bool {
    let Some(p) = (2..=q).find(|d| q.is_multiple_of(*d)) else {
        return false;
    };
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

fn json<T: Serialize>(v: &T) -> String {
    to_sorted_json(v)
}

fn coords(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Executes a parsed command line. Library errors are returned unchanged so the
/// caller can print them and map them through [`exit_code`].
pub fn run(cfg: &RunConfig) -> kakeya_core::Result<Outcome> {
    if cfg.dump_config {
        return Ok(Outcome::ok(json(cfg)));
    }
    let text = cfg.format == Format::Text;
    match &cfg.command {
        Command::Construct { field, kind, output } => {
            let spec = field.spec()?;
            check_size(&spec, field.n, cfg.max_points)?;
            let kind: Construction = kind.parse()?;
            let k = construct(kind, &spec, field.n, cfg.seed)?;
            let body = if text {
                k.to_set_file()
            } else {
                json(&k.to_json())
            };
            match output {
                Some(path) => {
                    write(path, &body)?;
                    Ok(Outcome::ok(format!("wrote {} points to {}\n", k.len(), path.display())))
                }
                None => Ok(Outcome::ok(body)),
            }
        }
        Command::Verify {
            input,
            kakeya: _,
            delta,
            gamma,
            profile,
        } => {
            let k = read_set(input, cfg.max_points)?;
            if let (Some(d), Some(g)) = (delta, gamma) {
                let (d, g) = rational_pair(d, g)?;
                let r = check_delta_gamma(&k, d, g)?;
                let out = if text {
                    let mut s = format!(
                        "({d}, {g})-Kakeya: {}\nthreshold {} points per line; {} qualifying vectors, {} required\n",
                        if r.holds { "yes" } else { "no" },
                        r.threshold,
                        r.qualifying_vectors,
                        r.required
                    );
                    if let Some(dir) = &r.failing_direction {
                        s.push_str(&format!("first direction below threshold: {}\n", coords(dir)));
                    }
                    if *profile {
                        s.push_str(&profile_text(&r.profile));
                    }
                    s
                } else {
                    json(&r)
                };
                return Ok(Outcome::with(out, r.holds));
            }
            let r = is_kakeya(&k);
            let out = if text {
                let mut s = match &r.failing_direction {
                    None => "kakeya: yes\n".to_string(),
                    Some(dir) => format!("kakeya: no\nno contained line in direction {}\n", coords(dir)),
                };
                if *profile {
                    s.push_str(&profile_text(&direction_profile(&k)));
                }
                s
            } else if *profile {
                #[derive(Serialize)]
                struct WithProfile<'a> {
                    report: &'a kakeya_core::kakeya::KakeyaReport,
                    profile: kakeya_core::DirectionProfile,
                }
                json(&WithProfile {
                    report: &r,
                    profile: direction_profile(&k),
                })
            } else {
                json(&r)
            };
            Ok(Outcome::with(out, r.is_kakeya))
        }
        Command::Profile { input } => {
            let k = read_set(input, cfg.max_points)?;
            let p = direction_profile(&k);
            Ok(Outcome::ok(if text { profile_text(&p) } else { json(&p) }))
        }
        Command::Bound { q, n, delta, gamma, r } => {
            if !is_prime_power(*q) {
                return Err(Error::Usage(format!("{q} is not a prime power")));
            }
            let mut reports: Vec<BoundReport> = vec![alon_tao_bound(*q, *n)?];
            if let (Some(d), Some(g)) = (delta, gamma) {
                let (d, g) = rational_pair(d, g)?;
                reports.push(thm2_bound(*q, *n, d, g)?);
            }
            if let Some(r) = r {
                reports.push(corollary_bound(*q, *n, *r)?);
            }
            Ok(Outcome::ok(if text { bound_text(&reports) } else { json(&reports) }))
        }
        Command::Certify {
            input,
            cascade,
            thm2: _,
            delta,
            gamma,
            unchecked,
            output,
        } => {
            let k = read_set(input, cfg.max_points)?;
            let cert = if *cascade {
                if *unchecked {
                    certify_cascade_unchecked(&k)?
                } else {
                    certify_cascade(&k)?
                }
            } else {
                let (d, g) = rational_pair(delta, gamma)?;
                certify_refutation_thm2(&k, d, g)?
            };
            let body = cert.to_json();
            match output {
                Some(path) => {
                    write(path, &body)?;
                    let kind = serde_json::to_value(cert.kind).expect("serializable");
                    Ok(Outcome::ok(format!(
                        "wrote {} certificate ({} steps) to {}\n",
                        kind.as_str().unwrap_or_default(),
                        cert.steps.len(),
                        path.display()
                    )))
                }
                None => Ok(Outcome::ok(body)),
            }
        }
        Command::Zeros { field, poly } => {
            let spec = field.spec()?;
            check_size(&spec, field.n, cfg.max_points)?;
            let p = Polynomial::parse(&spec, field.n, poly)?;
            let zeros = count_zeros(&p, cfg.max_points)?;
            if text {
                return Ok(Outcome::ok(format!("{zeros}\n")));
            }
            #[derive(Serialize)]
            struct ZeroReport {
                field: String,
                n: usize,
                polynomial: String,
                degree: Option<u32>,
                zeros: u64,
                schwartz_zippel_bound: Option<u64>,
            }
            let degree = p.degree().finite();
            let q = spec.order() as u64;
            Ok(Outcome::ok(json(&ZeroReport {
                field: spec.to_string(),
                n: field.n,
                polynomial: p.to_string(),
                degree,
                zeros,
                schwartz_zippel_bound: degree.map(|d| schwartz_zippel_bound(d as u64, q, field.n)),
            })))
        }
        Command::Search {
            field,
            exact,
            greedy: _,
            restarts,
            output,
            timing,
        } => {
            let spec = field.spec()?;
            check_size(&spec, field.n, cfg.max_points)?;
            let result = if *exact {
                let limits = SearchLimits {
                    max_points: cfg.max_points,
                    node_budget: cfg.node_budget,
                };
                minimal_kakeya_exact(&spec, field.n, &limits)?
            } else {
                minimal_kakeya_greedy(&spec, field.n, *restarts, cfg.seed)?
            };
            if let Some(path) = output {
                write(path, &result.witness.to_set_file())?;
            }
            let summary = result.summary(*timing);
            if !text {
                return Ok(Outcome::ok(json(&summary)));
            }
            let mut s = format!(
                "field {} n={}: minimum {} ({})\nnodes {}\n",
                summary.field,
                summary.n,
                summary.minimum,
                if summary.budget_exhausted {
                    "budget exhausted, result heuristic"
                } else if *exact {
                    "exact"
                } else {
                    "heuristic"
                },
                summary.nodes
            );
            if let Some(ms) = summary.wall_time_ms {
                s.push_str(&format!("wall time {ms} ms\n"));
            }
            for p in &summary.witness {
                s.push_str(&coords(p));
                s.push('\n');
            }
            Ok(Outcome::ok(s))
        }
        Command::VerifyCertificate { input } => {
            let cert = Certificate::from_json(&read(input)?)?;
            let report = verify_certificate(&cert)?;
            let out = if text {
                let mut s = String::new();
                for c in report.checks.iter().filter(|c| !c.ok) {
                    s.push_str(&format!("FAILED {}: {}\n", c.step, c.detail));
                }
                s.push_str(if report.ok {
                    "certificate verified\n"
                } else {
                    "certificate rejected\n"
                });
                s
            } else {
                json(&report)
            };
            Ok(Outcome::with(out, report.ok))
        }
    }
}

fn profile_text(p: &kakeya_core::DirectionProfile) -> String {
    let mut s = String::from("direction\tbase\tcount\n");
    for e in &p.entries {
        s.push_str(&format!("{}\t{}\t{}\n", coords(&e.direction), coords(&e.base), e.count));
    }
    s
}

fn bound_text(reports: &[BoundReport]) -> String {
    let mut s = String::from("formula\tbound\td\n");
    for r in reports {
        let name = serde_json::to_value(r.formula).expect("serializable");
        s.push_str(&format!("{}\t{}\t{}\n", name.as_str().unwrap_or_default(), r.bound, r.d));
        if let (Some(pb), Some(r)) = (r.product_bound, r.r) {
            s.push_str(&format!("  product set K^{r} needs at least {pb} points\n"));
        }
    }
    s
}
