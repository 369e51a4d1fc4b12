//! Command-line front end. [`run`] parses arguments, writes all output to the
//! given sinks and returns the process exit code: `0` when everything checked
//! out, `1` when a counterexample was found, `2` for usage or range errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{run_check, CheckKind, CheckReport};
use crate::decomposition::rank::rank_full;
use crate::decomposition::verify::{verify_stanley, StanleyOptions, StanleyReport};
use crate::decomposition::{build_decomposition, check_range, family_g, sign_matrix, triangle_check, valid_pairs};
use crate::error::{Error, Result};
use crate::matching::{index, phi, psi, Match};
use crate::subsets::{lattice_path, GroundSet, Subset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "koszul-sdepth", version, about = "Stanley decompositions of upper-half Koszul syzygy modules")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for the sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw the lattice path of a subset and show ψ and φ.
    Path { n: usize, set: String },
    /// Apply ψ (delete the first global maximum).
    Psi { n: usize, set: String },
    /// Apply φ (add the element after the last global maximum).
    Phi { n: usize, set: String },
    /// The index of a subset inside a bigger set.
    Index { n: usize, set: String, within: String },
    /// List the family of generators contributing in a support.
    Family {
        n: usize,
        k: usize,
        support: String,
        /// Also print the sign matrix of the boundary map.
        #[arg(long)]
        matrix: bool,
    },
    /// Print the decomposition of M(n,k).
    Decompose { n: usize, k: usize },
    /// Verify the Stanley decomposition for one (n, k) or for all n up to a bound.
    Verify {
        n: Option<usize>,
        k: Option<usize>,
        #[arg(long = "all-n", value_name = "N")]
        all_n: Option<usize>,
        /// Also check all multidegrees in {0..d}^n.
        #[arg(long = "box", value_name = "D")]
        box_depth: Option<u32>,
        /// Skip the exact rank computation for every support.
        #[arg(long)]
        no_rank: bool,
    },
    /// Run one exhaustive property suite for every ground set up to n.
    Check { n: usize, which: String },
    /// Shorthand for `check <n> lemma-ind`.
    CheckLemma { n: usize },
    /// Runs the `inverse` and `greedy` suites.
    CheckMatching { n: usize },
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    let code = match pool.install(|| execute(&cli, &mut buf)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    };
    let _ = out.write_all(&buf);
    code
}

fn parse_set(n: usize, text: &str) -> Result<Subset> {
    Subset::parse(GroundSet::new(n)?, text)
}

fn show(set: Option<Subset>) -> String {
    set.map_or_else(|| "undefined".to_string(), |s| s.to_string())
}

fn match_json(set: &Subset, m: Option<Match>) -> Value {
    json!({
        "set": set.to_vec(),
        "defined": m.is_some(),
        "value": m.map(|m| m.value.to_vec()),
        "pivot": m.map(|m| m.pivot),
    })
}

fn emit(out: &mut Vec<u8>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Invariant(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::Invariant(e.to_string()))
}

macro_rules! out {
    ($dst:expr, $($arg:tt)*) => {
        writeln!($dst, $($arg)*).map_err(|e| Error::Invariant(e.to_string()))?
    };
}

fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Path { n, set } => {
            let g = parse_set(*n, set)?;
            let path = lattice_path(&g);
            let (down, up) = (psi(&g), phi(&g));
            if json {
                emit(
                    out,
                    &json!({
                        "n": n,
                        "set": g.to_vec(),
                        "heights": path.heights,
                        "alpha": path.alpha,
                        "argmax": path.argmax(&g),
                        "nu": path.nu,
                        "mu": path.mu,
                        "psi": down.map(|m| m.value.to_vec()),
                        "phi": up.map(|m| m.value.to_vec()),
                    }),
                )?;
            } else {
                out.extend_from_slice(render_path(&g).as_bytes());
            }
            Ok(EXIT_OK)
        }
        Command::Psi { n, set } | Command::Phi { n, set } => {
            let g = parse_set(*n, set)?;
            let is_psi = matches!(cli.command, Command::Psi { .. });
            let m = if is_psi { psi(&g) } else { phi(&g) };
            if json {
                emit(out, &match_json(&g, m))?;
            } else {
                let name = if is_psi { "psi" } else { "phi" };
                match m {
                    Some(m) => out!(out, "{name}({g}) = {} (pivot {})", m.value, m.pivot),
                    None => out!(out, "{name}({g}) = undefined"),
                }
            }
            Ok(EXIT_OK)
        }
        Command::Index { n, set, within } => {
            let (g, m) = (parse_set(*n, set)?, parse_set(*n, within)?);
            let i = index(&g, &m)?;
            if json {
                emit(out, &json!({ "set": g.to_vec(), "within": m.to_vec(), "index": i }))?;
            } else {
                out!(out, "ind_{m}({g}) = {i}");
            }
            Ok(EXIT_OK)
        }
        Command::Family { n, k, support, matrix } => {
            check_range(*n, *k)?;
            let m = parse_set(*n, support)?;
            if m.len() < *k {
                return Err(Error::InvalidArgument(format!("support {m} has fewer than k = {k} elements")));
            }
            let decomp = build_decomposition(*n, *k)?;
            let family = family_g(&decomp, &m)?;
            let triangle = triangle_check(&family);
            let signs = sign_matrix(&family);
            let independent = rank_full(&signs.entries);
            if json {
                let members: Vec<Value> = family
                    .members
                    .iter()
                    .zip(&triangle.distinguished)
                    .map(|(mem, t)| json!({ "G": mem.set.to_vec(), "index": mem.index, "distinguished": t.to_vec() }))
                    .collect();
                let mut value = json!({
                    "n": n, "k": k, "support": m.to_vec(), "members": members,
                    "triangle": triangle.passed(), "independent": independent,
                });
                if *matrix {
                    value["matrix"] = json!({
                        "rows": signs.rows.iter().map(Subset::to_vec).collect::<Vec<_>>(),
                        "cols": signs.cols.iter().map(Subset::to_vec).collect::<Vec<_>>(),
                        "entries": signs.entries,
                    });
                }
                emit(out, &value)?;
            } else {
                let noun = if family.len() == 1 { "member" } else { "members" };
                out!(out, "family of {m} for M({n},{k}): {} {noun} (squashed order)", family.len());
                let width = family.sets().map(|s| s.to_string().len()).max().unwrap_or(1).max(1);
                out!(out, "  {:<width$}  index  distinguished", "G");
                for (mem, t) in family.members.iter().zip(&triangle.distinguished) {
                    out!(out, "  {:<width$}  {:<5}  {}", mem.set.to_string(), mem.index, t);
                }
                out!(out, "triangle condition: {}", if triangle.passed() { "ok" } else { "FAIL" });
                if *matrix {
                    out!(out, "sign matrix ({} x {}):", signs.rows.len(), signs.cols.len());
                    write!(out, "{signs}").map_err(|e| Error::Invariant(e.to_string()))?;
                }
                out!(out, "linearly independent: {}", if independent { "yes" } else { "no" });
            }
            Ok(if triangle.passed() && independent { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Decompose { n, k } => {
            let d = build_decomposition(*n, *k)?;
            if json {
                out!(out, "{}", d.to_json());
            } else {
                write!(out, "{d}").map_err(|e| Error::Invariant(e.to_string()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { n, k, all_n, box_depth, no_rank } => {
            let pairs: Vec<(usize, usize)> = match (n, k, all_n) {
                (Some(n), Some(k), None) => {
                    check_range(*n, *k)?;
                    vec![(*n, *k)]
                }
                (None, None, Some(max)) => {
                    GroundSet::new(*max)?;
                    valid_pairs(*max).collect()
                }
                _ => return Err(Error::InvalidArgument("use `verify <n> <k>` or `verify --all-n <N>`".into())),
            };
            let options = StanleyOptions { check_rank: !no_rank, box_depth: *box_depth };
            let reports: Vec<StanleyReport> =
                pairs.iter().map(|&(n, k)| verify_stanley(n, k, options)).collect::<Result<_>>()?;
            let all_passed = reports.iter().all(StanleyReport::passed);
            if json {
                let results: Vec<Value> = reports.iter().map(stanley_json).collect();
                emit(out, &json!({ "results": results, "passed": all_passed }))?;
            } else {
                for r in &reports {
                    out!(out, "{r}");
                }
                out!(
                    out,
                    "summary: {}/{} (n,k) pairs verified",
                    reports.iter().filter(|r| r.passed()).count(),
                    reports.len()
                );
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Check { n, which } => {
            let kind: CheckKind = which.parse()?;
            report_checks(out, json, &[run_check(kind, *n)?])
        }
        Command::CheckLemma { n } => report_checks(out, json, &[run_check(CheckKind::LemmaInd, *n)?]),
        Command::CheckMatching { n } => {
            report_checks(out, json, &[run_check(CheckKind::Inverse, *n)?, run_check(CheckKind::Greedy, *n)?])
        }
    }
}

fn stanley_json(r: &StanleyReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "passed": r.passed(),
        "summands": r.summands,
        "hilbert_checked": r.hilbert.checked,
        "hilbert_failures": r.hilbert.failures.len(),
        "box_checked": r.box_hilbert.as_ref().map(|b| b.checked),
        "box_failures": r.box_hilbert.as_ref().map(|b| b.failures.len()),
        "supports_checked": r.supports_checked,
        "ranks_checked": r.ranks_checked,
        "failures": r.failures.iter().map(|f| json!({ "M": f.support.to_vec(), "reason": f.reason })).collect::<Vec<_>>(),
        "depth": r.depth,
        "sdepth_lower_bound": r.passed().then_some(r.n - 1),
        "upper_bound": "cited, not verified",
    })
}

fn report_checks(out: &mut Vec<u8>, json: bool, reports: &[CheckReport]) -> Result<i32> {
    let passed = reports.iter().all(CheckReport::passed);
    if json {
        let items: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name, "max_n": r.max_n, "cases": r.cases, "passed": r.passed(),
                    "counterexamples": r.counterexamples, "notes": r.notes,
                })
            })
            .collect();
        emit(out, &json!({ "checks": items, "passed": passed }))?;
    } else {
        for r in reports {
            write!(out, "{r}").map_err(|e| Error::Invariant(e.to_string()))?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

/// ASCII lattice path: one row per height unit labelled by the height at the
/// top of the row, `/` and `\` for steps, position ruler below the axis and
/// `ν`/`μ` markers under their positions.
pub fn render_path(set: &Subset) -> String {
    let path = lattice_path(set);
    let h = &path.heights;
    let n = set.n();
    let top = *h.iter().max().expect("path has n + 1 heights");
    let bottom = *h.iter().min().expect("path has n + 1 heights");
    let label = (bottom + 1..=top).map(|r| r.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for row in (bottom + 1..=top).rev() {
        let mut line: String = " ".into();
        for g in 1..=n {
            line.push(match (h[g] > h[g - 1], h[g].max(h[g - 1]) == row) {
                (true, true) => '/',
                (false, true) => '\\',
                _ => ' ',
            });
        }
        s.push_str(&format!("{row:>label$} |{}\n", line.trim_end()));
    }
    let pad = " ".repeat(label);
    s.push_str(&format!("{pad} +{}\n", "-".repeat(n + 1)));
    let ruler: String = (0..=n).map(|g| char::from_digit((g % 10) as u32, 10).unwrap()).collect();
    s.push_str(&format!("{pad}  {ruler}\n"));
    s.push_str(&format!("{pad}  {}ν\n", " ".repeat(path.nu)));
    s.push_str(&format!("{pad}  {}μ\n", " ".repeat(path.mu)));
    let argmax: Vec<String> = path.argmax(set).iter().map(|g| g.to_string()).collect();
    s.push_str(&format!(
        "G = {set} in [{n}]: alpha = {}, N(G) = {{{}}}, nu = {}, mu = {}\n",
        path.alpha,
        argmax.join(","),
        path.nu,
        path.mu
    ));
    s.push_str(&format!(
        "psi(G) = {}, phi(G) = {}\n",
        show(psi(set).map(|m| m.value)),
        show(phi(set).map(|m| m.value))
    ));
    s
}
