//! Command-line surface for the convmds toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 budget exceeded where exactness was demanded.

mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use convmds::criteria::{self, Verdict};
use convmds::distance::{
    self, free_distance_bruteforce, Budget, DistanceError, FreeBound,
};
use convmds::gf::FieldSpec;
use convmds::planner;
use convmds::polymat::{CodeFile, PolyMatrix};
use convmds::search::{self, Mode, SearchConfig};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "convmds", version, about = "Construct, certify and search MDS convolutional codes over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Auto,
    Main,
    Main2,
    Prior,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a code file against the sufficiency criteria.
    Check {
        code_file: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremArg::Auto)]
        theorem: TheoremArg,
        /// Use the relaxed condition set from the planner.
        #[arg(long)]
        planned: bool,
        /// Rate-bound parameter for --theorem prior (defaults to the
        /// smallest row degree).
        #[arg(long)]
        nu: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Render field elements as polynomials in a.
        #[arg(long)]
        pretty: bool,
    },
    /// Column distances, reverse column distances and (with --free) the
    /// free distance of a code file.
    Distances {
        code_file: PathBuf,
        #[arg(long)]
        free: bool,
        /// Extra brute-force message degree for the free-distance upper
        /// bound.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Enumeration budget (default from CONVMDS_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the relaxed condition set for given parameters.
    Plan {
        n: usize,
        k: usize,
        delta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the explicit power-of-alpha code, or report the field degree
    /// it would need.
    Construct {
        n: usize,
        k: usize,
        delta: usize,
        /// Largest binary extension degree to actually build.
        #[arg(long = "max-N", default_value_t = 20)]
        max_n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
    },
    /// Seeded candidate search over one field (or a scan over several).
    Search {
        n: usize,
        k: usize,
        delta: usize,
        /// Field size(s); a comma-separated list runs a field-size scan.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate budget (default from CONVMDS_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Check the unrelaxed theorem conditions instead of the plan.
        #[arg(long)]
        theorem_conditions: bool,
        /// Fix G0[0][0] = 1.
        #[arg(long)]
        normalize: bool,
        /// Directory for hit code files and the statistics sidecar.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive every bundled reference example and report mismatches.
    VerifyPaper {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the bundled reference code files to this directory.
        #[arg(long)]
        emit_codes: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    schema_version: u32,
    command: String,
    payload: T,
}

fn write_report<T: Serialize>(out: Option<&Path>, command: &str, payload: &T) -> Result<(), String> {
    let Some(path) = out else { return Ok(()) };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        payload,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    std::fs::write(path, json + "\n").map_err(|e| e.to_string())
}

fn load_code(path: &Path) -> Result<(PolyMatrix, usize), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = CodeFile::from_json(&text).map_err(|e| e.to_string())?;
    let declared = file.params.delta;
    let (g, _) = file.into_code().map_err(|e| e.to_string())?;
    if g.is_row_reduced() {
        let structural: usize = g.row_degrees().iter().sum();
        if structural != declared {
            return Err(format!(
                "declared delta = {declared} but the matrix has degree {structural}"
            ));
        }
    }
    Ok((g, declared))
}

fn default_budget(cli_budget: Option<u64>) -> Budget {
    let mut b = Budget::default();
    if let Some(v) = cli_budget {
        b.max_enumerations = v;
    } else if let Ok(v) = std::env::var("CONVMDS_BUDGET") {
        if let Ok(v) = v.parse() {
            b.max_enumerations = v;
        }
    }
    b
}

fn print_code(g: &PolyMatrix, pretty: bool) {
    for (d, m) in g.coeffs.iter().enumerate() {
        println!("  G{d}:");
        for r in 0..g.k {
            let row: Vec<String> = m
                .row(r)
                .iter()
                .map(|e| {
                    if pretty {
                        g.field.render(*e)
                    } else {
                        e.0.to_string()
                    }
                })
                .collect();
            println!("    [{}]", row.join(", "));
        }
    }
}

fn run_check(
    code_file: &Path,
    theorem: TheoremArg,
    planned: bool,
    nu: Option<u64>,
    out: Option<&Path>,
    pretty: bool,
) -> Result<u8, (u8, String)> {
    let (g, _) = load_code(code_file).map_err(|e| (EXIT_MALFORMED, e))?;
    let to_input_err = |e: criteria::CriteriaError| (EXIT_MALFORMED, e.to_string());
    let report = if planned {
        let (rep, _) = planner::certify_planned(&g).map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
        rep
    } else {
        match theorem {
            TheoremArg::Auto => criteria::check_auto(&g).map_err(to_input_err)?,
            TheoremArg::Main => criteria::check_main(&g).map_err(to_input_err)?,
            TheoremArg::Main2 => criteria::check_main2(&g).map_err(to_input_err)?,
            TheoremArg::Prior => criteria::check_prior_work(&g, nu).map_err(to_input_err)?,
        }
    };
    println!(
        "{} for ({}, {}, {}) over GF({}): {}",
        report.theorem,
        report.params.n,
        report.params.k,
        report.params.delta,
        g.field.q(),
        match report.verdict {
            Verdict::CertifiedMds => "certified-MDS",
            Verdict::BoundsFail => "bounds-fail",
            Verdict::MinorsFail => "minors-fail",
        }
    );
    for b in &report.bounds {
        println!(
            "  bound {}: required {}, have {} -> {}",
            b.name,
            b.required,
            b.actual,
            if b.satisfied { "ok" } else { "FAIL" }
        );
    }
    for item in &report.minors.items {
        match &item.result {
            Some(r) if r.pass => println!(
                "  minors {}: ok ({} checked, {} trivially zero)",
                item.label, r.minors_checked, r.trivially_zero_skipped
            ),
            Some(r) => println!(
                "  minors {}: FAIL at columns {:?}",
                item.label,
                r.witness.clone().unwrap_or_default()
            ),
            None => println!("  minors {}: skipped (early exit)", item.label),
        }
    }
    if let Some(sr) = &report.superregular {
        println!(
            "  superregular stack: {}",
            if sr.pass { "ok" } else { "FAIL" }
        );
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
    if pretty {
        print_code(&g, true);
    }
    write_report(out, "check", &report).map_err(|e| (EXIT_MALFORMED, e))?;
    Ok(if report.verdict == Verdict::CertifiedMds {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn run_distances(
    code_file: &Path,
    free: bool,
    max_degree: Option<usize>,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<u8, (u8, String)> {
    let (g, delta) = load_code(code_file).map_err(|e| (EXIT_MALFORMED, e))?;
    let budget = default_budget(budget);
    let mut profile = if free {
        // Supply the certificate lower bound in case the trellis is out of
        // budget: a passing planned certificate pins the Singleton bound.
        let cert = planner::certify_planned(&g)
            .ok()
            .filter(|(rep, _)| rep.verdict == Verdict::CertifiedMds)
            .map(|(rep, _)| rep.params.singleton);
        distance::distance_profile(&g, &budget, cert)
    } else {
        distance::column_profile(&g, &budget)
    }
    .map_err(|e| match e {
        DistanceError::Precondition(p) => (EXIT_MALFORMED, p),
        other => (EXIT_BUDGET, other.to_string()),
    })?;
    if let (true, Some(deg)) = (free, max_degree) {
        match free_distance_bruteforce(&g, deg, &budget) {
            Ok(v) => {
                let better = profile.free_upper.is_none_or(|u| v < u.value);
                if better {
                    profile.free_upper = Some(FreeBound {
                        value: v,
                        provenance: distance::BoundProvenance::BruteForce,
                    });
                }
            }
            Err(DistanceError::BudgetExceeded { .. }) => {}
            Err(e) => return Err((EXIT_MALFORMED, e.to_string())),
        }
    }

    println!(
        "distance profile for ({}, {}, {}) over GF({}), S = {}",
        g.n,
        g.k,
        delta,
        g.field.q(),
        profile.params.singleton
    );
    for (j, d) in profile.column.iter().enumerate() {
        println!(
            "  d_{j} = {}{}{}",
            d.value,
            if d.exact { "" } else { " (upper bound)" },
            if profile.column_optimal[j] { " optimal" } else { "" }
        );
    }
    for (j, d) in profile.reverse_column.iter().enumerate() {
        println!(
            "  reverse d_{j} = {}{}{}",
            d.value,
            if d.exact { "" } else { " (upper bound)" },
            if profile.reverse_column_optimal[j] {
                " optimal"
            } else {
                ""
            }
        );
    }
    if let Some(lo) = profile.free_lower {
        println!("  free distance >= {} ({:?})", lo.value, lo.provenance);
    }
    if let Some(up) = profile.free_upper {
        println!("  free distance <= {} ({:?})", up.value, up.provenance);
    }
    match profile.mds {
        Some(true) => println!("  MDS: yes (free distance meets the Singleton bound)"),
        Some(false) => println!("  MDS: no"),
        None => println!("  MDS: undecided within budget"),
    }
    write_report(out, "distances", &profile).map_err(|e| (EXIT_MALFORMED, e))?;

    let columns_exact = profile.column.iter().chain(&profile.reverse_column).all(|d| d.exact);
    let free_decided = !free || profile.mds.is_some();
    Ok(if columns_exact && free_decided {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

fn run_plan(n: usize, k: usize, delta: usize, out: Option<&Path>) -> Result<u8, (u8, String)> {
    let plan = planner::plan(n, k, delta).map_err(|e| match e {
        planner::PlanError::BoundsNotSatisfied(_) => (EXIT_VERIFICATION, e.to_string()),
        other => (EXIT_MALFORMED, other.to_string()),
    })?;
    let i = &plan.intermediates;
    print!("plan for ({n}, {k}, {delta}): ");
    match plan.branch {
        planner::Branch::Divides => println!(
            "W = {}, E = {}, F = {}, R = {}",
            i.w.unwrap_or(0),
            i.e,
            i.f,
            i.r.unwrap_or(0)
        ),
        planner::Branch::NotDivides => {
            println!("D = {}, E = {}, F = {}", i.d.unwrap_or(0), i.e, i.f)
        }
    }
    for row in &plan.rows {
        let detail: Vec<String> = [
            row.a.map(|v| format!("A = {v}")),
            row.a1.map(|v| format!("A1 = {v}")),
            row.a2.map(|v| format!("A2 = {v}")),
            Some(format!("x = {}", row.x)),
            Some(format!("y = {}", row.y)),
        ]
        .into_iter()
        .flatten()
        .collect();
        println!("  l = {}: {}", row.ell, detail.join(", "));
    }
    println!("  conditions: {}", plan.set.labels().join(", "));
    for row in &plan.audit.rows {
        println!(
            "  audit {}: weight >= {} (need {})",
            row.class, row.total, row.required
        );
    }
    for note in &plan.notes {
        println!("  note: {note}");
    }
    write_report(out, "plan", &plan).map_err(|e| (EXIT_MALFORMED, e))?;
    Ok(EXIT_OK)
}

fn run_construct(
    n: usize,
    k: usize,
    delta: usize,
    max_n: u32,
    out: Option<&Path>,
    pretty: bool,
) -> Result<u8, (u8, String)> {
    let c = search::construct_general(n, k, delta, max_n)
        .map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
    println!(
        "construction for ({n}, {k}, {delta}): requires GF(2^{})",
        c.required_degree
    );
    let Some(g) = &c.code else {
        println!("  beyond --max-N {max_n}; nothing built");
        #[derive(Serialize)]
        struct RequiredOnly {
            required_degree: u128,
        }
        write_report(
            out,
            "construct",
            &RequiredOnly {
                required_degree: c.required_degree,
            },
        )
        .map_err(|e| (EXIT_MALFORMED, e))?;
        return Ok(EXIT_OK);
    };
    let report = if delta % k == 0 {
        criteria::check_main(g)
    } else {
        criteria::check_main2(g)
    }
    .map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
    println!(
        "  built over GF(2^{}); certificate: {:?}",
        c.required_degree, report.verdict
    );
    if pretty {
        print_code(g, true);
    }
    let file = CodeFile::from_code(g, delta);
    match out {
        Some(path) => {
            std::fs::write(path, file.to_json() + "\n")
                .map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
            println!("  code written to {}", path.display());
        }
        None => println!("{}", file.to_json()),
    }
    Ok(if report.verdict == Verdict::CertifiedMds {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    n: usize,
    k: usize,
    delta: usize,
    q: &[u64],
    seed: u64,
    budget: Option<u64>,
    exhaustive: bool,
    workers: usize,
    theorem_conditions: bool,
    normalize: bool,
    out: Option<&Path>,
) -> Result<u8, (u8, String)> {
    let budget_v = budget
        .or_else(|| std::env::var("CONVMDS_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(100_000);
    let mk_cfg = |field: Arc<FieldSpec>| {
        let mut cfg = SearchConfig::new(n, k, delta, field);
        cfg.seed = seed;
        cfg.budget = budget_v;
        cfg.mode = if exhaustive { Mode::Exhaustive } else { Mode::Random };
        cfg.workers = workers;
        cfg.normalize_first = normalize;
        cfg.condition_source = if theorem_conditions {
            search::ConditionSource::Theorem
        } else {
            search::ConditionSource::Planner
        };
        cfg
    };
    let to_err = |e: search::SearchError| match e {
        search::SearchError::ExhaustiveTooLarge { .. } => (EXIT_BUDGET, e.to_string()),
        other => (EXIT_MALFORMED, other.to_string()),
    };

    if q.len() > 1 {
        let (p0, m0) = search::prime_power(q[0]).map_err(to_err)?;
        let field = Arc::new(FieldSpec::new(p0, m0, None).map_err(|e| (EXIT_MALFORMED, e.to_string()))?);
        let rows = search::minimal_field_scan(n, k, delta, q, &mk_cfg(field)).map_err(to_err)?;
        println!("field-size scan for ({n}, {k}, {delta}):");
        for row in &rows {
            println!(
                "  q = {}: {:?} ({} candidates{})",
                row.q,
                row.outcome,
                row.tried,
                row.first_hit_index
                    .map(|i| format!(", first hit at {i}"))
                    .unwrap_or_default()
            );
        }
        write_report(out, "search-scan", &rows).map_err(|e| (EXIT_MALFORMED, e))?;
        return Ok(EXIT_OK);
    }

    let (p, m) = search::prime_power(q[0]).map_err(to_err)?;
    let field = Arc::new(FieldSpec::new(p, m, None).map_err(|e| (EXIT_MALFORMED, e.to_string()))?);
    let outcome = search::search_codes(&mk_cfg(field)).map_err(to_err)?;
    println!(
        "search ({n}, {k}, {delta}) over GF({}): {} certified of {} tried ({} structural rejects, {} trellis rejects, {} ms){}",
        q[0],
        outcome.stats.certified,
        outcome.stats.tried,
        outcome.stats.structural_rejects,
        outcome.stats.trellis_rejects,
        outcome.stats.wall_ms,
        if outcome.stats.exhausted { ", exhaustive" } else { "" }
    );
    for (label, fails) in &outcome.stats.item_fails {
        if *fails > 0 {
            println!("  first failure at {label}: {fails}");
        }
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
        for hit in &outcome.hits {
            let path = dir.join(format!("hit_{}.json", hit.index));
            std::fs::write(&path, hit.code.to_json() + "\n")
                .map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
        }
        let stats_path = dir.join("stats.json");
        let report = Report {
            schema_version: SCHEMA_VERSION,
            command: "search".to_string(),
            payload: &outcome.stats,
        };
        std::fs::write(
            &stats_path,
            serde_json::to_string_pretty(&report).unwrap() + "\n",
        )
        .map_err(|e| (EXIT_MALFORMED, e.to_string()))?;
        println!(
            "  {} hit file(s) and stats written to {}",
            outcome.hits.len(),
            dir.display()
        );
    } else if let Some(hit) = outcome.hits.first() {
        println!("  first hit (candidate {}):", hit.index);
        println!("{}", hit.code.to_json());
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check {
            code_file,
            theorem,
            planned,
            nu,
            out,
            pretty,
        } => run_check(code_file, *theorem, *planned, *nu, out.as_deref(), *pretty),
        Cmd::Distances {
            code_file,
            free,
            max_degree,
            budget,
            out,
        } => run_distances(code_file, *free, *max_degree, *budget, out.as_deref()),
        Cmd::Plan { n, k, delta, out } => run_plan(*n, *k, *delta, out.as_deref()),
        Cmd::Construct {
            n,
            k,
            delta,
            max_n,
            out,
            pretty,
        } => run_construct(*n, *k, *delta, *max_n, out.as_deref(), *pretty),
        Cmd::Search {
            n,
            k,
            delta,
            q,
            seed,
            budget,
            exhaustive,
            workers,
            theorem_conditions,
            normalize,
            out,
        } => run_search(
            *n,
            *k,
            *delta,
            q,
            *seed,
            *budget,
            *exhaustive,
            *workers,
            *theorem_conditions,
            *normalize,
            out.as_deref(),
        ),
        Cmd::VerifyPaper { out, emit_codes } => {
            verify::run_verify_paper(out.as_deref(), emit_codes.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
