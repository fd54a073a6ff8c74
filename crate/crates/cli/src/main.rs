use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superalg_core::algebra::{
    char_sequence, check_leibniz, check_lie, derived_series, lower_central_series,
    right_annihilator, GradedSubspace, SamplingOptions,
};
use superalg_core::derivations::{derivation_space, max_nil_independent};
use superalg_core::families::{
    build_family, errata_ledger, known_defects, list_families, ErrataMode, FamilyId, FamilySpec,
};
use superalg_core::invariants::fingerprint_with;
use superalg_core::verify::{plan, run};
use superalg_core::{sdf, Error, Parity, Rational, SuperAlgebra};

#[derive(Parser)]
#[command(
    name = "superalg",
    version,
    about = "Exact analysis of Leibniz and Lie superalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a catalogued family as an SDF file.
    Family {
        id: String,
        /// Size for families indexed by n.
        #[arg(long)]
        n: Option<usize>,
        /// Size for families indexed by m (N2M, M1..M5).
        #[arg(long)]
        m: Option<usize>,
        /// Parameter assignment `name=value`; repeatable. `t` selects the SH1/SG1 member.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Set every parameter not given with --param to zero.
        #[arg(long)]
        zeros: bool,
        #[arg(long, value_enum, default_value_t = Errata::Corrected)]
        errata: Errata,
        /// Output file; standard output when omitted.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a superidentity on all basis triples (symbolically in the parameters).
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = IdentityArg::Leibniz)]
        identity: IdentityArg,
        #[arg(long)]
        json: bool,
    },
    /// Dimensions of the lower central or derived series.
    Series {
        file: PathBuf,
        #[arg(long = "type", value_enum, default_value_t = SeriesType::LowerCentral)]
        kind: SeriesType,
        #[arg(long)]
        json: bool,
    },
    /// Sampled characteristic sequence of a nilpotent superalgebra.
    Charseq {
        file: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        /// Defaults to SUPERALG_SEED, else 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Basis of the superderivations of one degree.
    Derivations {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Degree::Even)]
        degree: Degree,
        #[arg(long)]
        json: bool,
    },
    /// Right annihilator.
    Annihilator {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Invariant fingerprint as JSON.
    Invariants { file: PathBuf },
    /// Run verification claims and report.
    Verify {
        /// Comma-separated claim ids or groups, or `all`.
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long = "n-range", default_value = "3..8")]
        n_range: String,
        #[arg(long, value_enum, default_value_t = Errata::Corrected)]
        errata: Errata,
        /// Also write the report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List the catalogued families with parameter domains.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Show the corrections applied in corrected mode and the known table defects.
    Errata {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Errata {
    Verbatim,
    Corrected,
}

impl From<Errata> for ErrataMode {
    fn from(e: Errata) -> Self {
        match e {
            Errata::Verbatim => ErrataMode::Verbatim,
            Errata::Corrected => ErrataMode::Corrected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Leibniz,
    Lie,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesType {
    LowerCentral,
    Derived,
}

#[derive(Clone, Copy, ValueEnum)]
enum Degree {
    Even,
    Odd,
}

/// Outcome of a successful command: text to print and the exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<SuperAlgebra, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    sdf::from_json(&text)
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn describe_subspace(a: &SuperAlgebra, s: &GradedSubspace) -> Vec<String> {
    s.basis_vectors()
        .iter()
        .map(|v| {
            let terms: Vec<String> = v
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    if c.is_one() {
                        a.label(i).to_string()
                    } else {
                        format!("{c}*{}", a.label(i))
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect()
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Error> {
    let bad = || Error::Parse(format!("--n-range expects A..B, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b
        .trim_start_matches('=')
        .trim()
        .parse()
        .map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn execute(command: Command) -> Result<Output, Error> {
    match command {
        Command::Family {
            id,
            n,
            m,
            params,
            zeros,
            errata,
            output,
        } => {
            let id: FamilyId = id.parse()?;
            let size = if id.sized_by_m() {
                m.ok_or_else(|| Error::InvalidSpec(format!("{id} is sized by --m")))?
            } else {
                n.ok_or_else(|| Error::InvalidSpec(format!("{id} is sized by --n")))?
            };
            let mut spec = FamilySpec::new(id, size).mode(errata.into());
            for p in &params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("--param expects K=V, got `{p}`")))?;
                let v: Rational = v.trim().parse()?;
                spec = spec.with_rational(k.trim(), v);
            }
            if zeros {
                spec = spec.zeros();
            }
            let text = sdf::to_json(&build_family(&spec)?);
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| {
                        Error::Parse(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(Output::ok(String::new()))
                }
                None => Ok(Output::ok(text)),
            }
        }
        Command::Check {
            file,
            identity,
            json,
        } => {
            let a = load(&file)?;
            let residuals = match identity {
                IdentityArg::Leibniz => check_leibniz(&a),
                IdentityArg::Lie => check_lie(&a),
            };
            let code = u8::from(!residuals.is_empty());
            let text = if json {
                json_text(&json!({ "algebra": a.name(), "residuals": residuals }))
            } else {
                let mut t = format!("{}: {} residual(s)\n", a.name(), residuals.len());
                for r in &residuals {
                    let _ = writeln!(t, "  {r}");
                }
                t
            };
            Ok(Output { text, code })
        }
        Command::Series { file, kind, json } => {
            let a = load(&file)?;
            let (name, series) = match kind {
                SeriesType::LowerCentral => ("lower central", lower_central_series(&a)?),
                SeriesType::Derived => ("derived", derived_series(&a)?),
            };
            let dims: Vec<(usize, usize)> = series.iter().map(GradedSubspace::dims).collect();
            let reaches_zero = series.last().is_some_and(GradedSubspace::is_zero);
            if json {
                return Ok(Output::ok(json_text(
                    &json!({ "series": name, "dims": dims, "reaches_zero": reaches_zero }),
                )));
            }
            let mut t = format!("{name} series of {}\n", a.name());
            for (k, (d0, d1)) in dims.iter().enumerate() {
                let _ = writeln!(t, "  {:>2}: ({d0} | {d1})", k + 1);
            }
            let _ = writeln!(
                t,
                "{}",
                if reaches_zero {
                    "reaches zero"
                } else {
                    "stabilizes above zero"
                }
            );
            Ok(Output::ok(t))
        }
        Command::Charseq {
            file,
            samples,
            seed,
            bound,
            json,
        } => {
            let a = load(&file)?;
            let mut opts = SamplingOptions::from_env();
            if let Some(s) = samples {
                opts.samples = s;
            }
            if let Some(s) = seed {
                opts.seed = s;
            }
            if let Some(b) = bound {
                opts.bound = b;
            }
            let c = char_sequence(&a, &opts)?;
            if json {
                return Ok(Output::ok(json_text(
                    &json!({ "char_sequence": c, "options": opts }),
                )));
            }
            Ok(Output::ok(format!(
                "{c} (sampled max over {} candidates, seed {})\n",
                c.samples_evaluated, opts.seed
            )))
        }
        Command::Derivations { file, degree, json } => {
            let a = load(&file)?;
            let parity = match degree {
                Degree::Even => Parity::Even,
                Degree::Odd => Parity::Odd,
            };
            let space = derivation_space(&a, parity)?;
            let nil_independent = match parity {
                Parity::Even => max_nil_independent(&space).ok().map(|r| r.max_count),
                Parity::Odd => None,
            };
            if json {
                let basis: Vec<Vec<Vec<String>>> = space
                    .basis
                    .iter()
                    .map(|m| {
                        m.row_vecs()
                            .iter()
                            .map(|r| r.iter().map(ToString::to_string).collect())
                            .collect()
                    })
                    .collect();
                return Ok(Output::ok(json_text(&json!({
                    "degree": parity,
                    "dim": space.dim(),
                    "max_nil_independent": nil_independent,
                    "basis": basis,
                }))));
            }
            let mut t = format!(
                "{:?} derivations of {}: dim {}\n",
                parity,
                a.name(),
                space.dim()
            );
            if let Some(k) = nil_independent {
                let _ = writeln!(t, "maximal nil-independent: {k}");
            }
            for (idx, m) in space.basis.iter().enumerate() {
                let _ = write!(t, "  d{}:", idx + 1);
                for j in 0..m.cols() {
                    let image: Vec<String> = (0..m.rows())
                        .filter(|&i| !m.get(i, j).is_zero())
                        .map(|i| format!("{}*{}", m.get(i, j), a.label(i)))
                        .collect();
                    if !image.is_empty() {
                        let _ = write!(t, " {} -> {};", a.label(j), image.join(" + "));
                    }
                }
                t.push('\n');
            }
            Ok(Output::ok(t))
        }
        Command::Annihilator { file, json } => {
            let a = load(&file)?;
            let ann = right_annihilator(&a)?;
            let basis = describe_subspace(&a, &ann);
            if json {
                return Ok(Output::ok(json_text(
                    &json!({ "dims": ann.dims(), "basis": basis }),
                )));
            }
            let (d0, d1) = ann.dims();
            Ok(Output::ok(format!(
                "right annihilator: ({d0} | {d1})\n  {}\n",
                basis.join("\n  ")
            )))
        }
        Command::Invariants { file } => {
            let a = load(&file)?;
            let f = fingerprint_with(&a, &SamplingOptions::from_env())?;
            Ok(Output::ok(json_text(&json!(f))))
        }
        Command::Verify {
            claims,
            n_range,
            errata,
            report,
            json,
        } => {
            let selectors: Vec<String> = claims
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            let sizes = parse_range(&n_range)?;
            let mode: ErrataMode = errata.into();
            let plan = plan(&selectors, sizes, mode)?;
            let r = run(&plan, &SamplingOptions::from_env(), mode);
            let text = if json { r.to_json() } else { r.to_text() };
            if let Some(path) = report {
                fs::write(&path, r.to_json())
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Output {
                text,
                code: r.exit_code() as u8,
            })
        }
        Command::Catalog { json } => {
            let fams = list_families();
            if json {
                return Ok(Output::ok(json_text(&json!(fams))));
            }
            let mut t = String::new();
            for f in &fams {
                let params: Vec<String> = f
                    .parameters
                    .iter()
                    .map(|p| format!("{} in {}", p.name, p.domain))
                    .collect();
                let _ = writeln!(
                    t,
                    "{:<4} size {:<2} dims {:<14} {}",
                    f.id,
                    f.size_name,
                    f.dims,
                    params.join(", ")
                );
                for c in &f.constraints {
                    let _ = writeln!(t, "       {c}");
                }
            }
            Ok(Output::ok(t))
        }
        Command::Errata { json } => {
            let entries = errata_ledger();
            let defects = known_defects();
            if json {
                return Ok(Output::ok(json_text(
                    &json!({ "corrections": entries, "known_defects": defects }),
                )));
            }
            let mut t = String::from("corrections applied in corrected mode:\n");
            for e in &entries {
                let _ = writeln!(
                    t,
                    "  {} {}: {} -> {} ({})",
                    e.family, e.location, e.verbatim, e.corrected, e.justification
                );
                if let Some(w) = &e.witness {
                    let _ = writeln!(t, "      witness on {}: {w}", e.instance.label());
                }
            }
            t.push_str("known defects (no correction applied):\n");
            for d in &defects {
                let _ = writeln!(t, "  {} {}: {}", d.family, d.location, d.analysis);
                if let Some(w) = &d.witness {
                    let _ = writeln!(t, "      witness on {}: {w}", d.instance.label());
                }
            }
            Ok(Output::ok(t))
        }
    }
}
