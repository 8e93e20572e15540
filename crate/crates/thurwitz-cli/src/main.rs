//! `thurwitz`: brute-force counts, graph enumeration, chamber polynomials,
//! genus-g values and wall-crossings for triply interpolated double Hurwitz
//! numbers.

mod error;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use thurwitz::chambers::Chamber;
use thurwitz::graphs::{enumerate_reduced, enumerate_topologies, GraphJson};
use thurwitz::hurwitz::{
    divide_by_mu, genus0_polynomial_with, genus_g_h_value, genus_g_polynomial, genus_g_value, reduce_on_slice,
    ChamberPolynomialResult, Resolution, TypeShape,
};
use thurwitz::symgroup::{
    h_oracle, m_oracle, parse_end_conditions, parse_partition, parse_start_conditions, Conditions, TypeTuple,
    DEFAULT_BUDGET,
};
use thurwitz::wallcross::{check_consistent, wall_crossing};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "thurwitz", version, about = "Triply interpolated double Hurwitz numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Parts of mu, e.g. 3,1.
    #[arg(long, global = true)]
    mu: Option<String>,
    /// Parts of nu, e.g. 2,2.
    #[arg(long, global = true)]
    nu: Option<String>,
    #[arg(long = "ell-mu", global = true)]
    ell_mu: Option<usize>,
    #[arg(long = "ell-nu", global = true)]
    ell_nu: Option<usize>,
    #[arg(long, global = true)]
    g: Option<usize>,
    /// Weakly monotone steps.
    #[arg(long, global = true)]
    p: Option<usize>,
    /// Strictly monotone steps.
    #[arg(long, global = true)]
    q: Option<usize>,
    /// Unconstrained steps.
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Chamber given by a point `mu:nu`, e.g. 3,1:2,2. `wallcross` takes it twice.
    #[arg(long = "chamber-sample", global = true)]
    chamber_sample: Vec<String>,
    /// Start conditions, e.g. "(2,1,1);(3,2)".
    #[arg(long, global = true)]
    start: Option<String>,
    /// End conditions, e.g. "(1,1,2)".
    #[arg(long, global = true)]
    end: Option<String>,
    /// Write JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest degree swept by `verify`.
    #[arg(long = "max-d", global = true)]
    max_d: Option<i64>,
    /// Node budget of the brute-force search.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Brute-force M (and H without conditions) for a type.
    Oracle,
    /// Reduced graphs of a shape, optionally restricted to a chamber.
    Graphs,
    /// Genus-0 chamber polynomial.
    Poly,
    /// Genus-g value at a point or polynomial on a chamber.
    Genus,
    /// Difference of the chamber polynomials of two adjacent chambers.
    Wallcross,
    /// Cross-validation suites.
    Verify,
}

impl Cli {
    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags: [(&'static str, bool); 14] = [
            ("--mu", self.mu.is_some()),
            ("--nu", self.nu.is_some()),
            ("--ell-mu", self.ell_mu.is_some()),
            ("--ell-nu", self.ell_nu.is_some()),
            ("--g", self.g.is_some()),
            ("--p", self.p.is_some()),
            ("--q", self.q.is_some()),
            ("--r", self.r.is_some()),
            ("--chamber-sample", !self.chamber_sample.is_empty()),
            ("--start", self.start.is_some()),
            ("--end", self.end.is_some()),
            ("--max-d", self.max_d.is_some()),
            ("--budget", self.budget.is_some()),
            ("--threads", self.threads.is_some()),
        ];
        for (name, set) in flags {
            if set {
                out.push(name);
            }
        }
        out
    }

    fn check_flags(&self) -> Result<(), CliError> {
        let allowed: &[&str] = match self.command {
            Command::Oracle => &["--mu", "--nu", "--g", "--p", "--q", "--r", "--start", "--end", "--budget"],
            Command::Graphs => &["--ell-mu", "--ell-nu", "--g", "--p", "--q", "--r", "--chamber-sample"],
            Command::Poly => &["--ell-mu", "--ell-nu", "--g", "--p", "--q", "--r", "--chamber-sample", "--start", "--end"],
            Command::Genus => &["--mu", "--nu", "--ell-mu", "--ell-nu", "--g", "--p", "--q", "--r", "--chamber-sample"],
            Command::Wallcross => &["--ell-mu", "--ell-nu", "--g", "--p", "--q", "--r", "--chamber-sample"],
            Command::Verify => &["--max-d", "--budget"],
        };
        for flag in self.given() {
            if flag != "--threads" && !allowed.contains(&flag) {
                return Err(CliError::usage(format!("{flag} does not apply to this subcommand")));
            }
        }
        Ok(())
    }

    fn pqr(&self) -> Result<(usize, usize, usize), CliError> {
        match (self.p, self.q, self.r) {
            (Some(p), Some(q), Some(r)) => Ok((p, q, r)),
            _ => Err(CliError::usage("--p, --q and --r are required")),
        }
    }

    fn partitions(&self) -> Result<Option<(Vec<i64>, Vec<i64>)>, CliError> {
        match (&self.mu, &self.nu) {
            (Some(m), Some(n)) => Ok(Some((parse_partition(m)?, parse_partition(n)?))),
            (None, None) => Ok(None),
            _ => Err(CliError::usage("--mu and --nu go together")),
        }
    }

    fn conditions(&self) -> Result<Conditions, CliError> {
        Ok(Conditions {
            start: self.start.as_deref().map(parse_start_conditions).transpose()?.unwrap_or_default(),
            end: self.end.as_deref().map(parse_end_conditions).transpose()?.unwrap_or_default(),
        })
    }

    fn chambers(&self) -> Result<Vec<Chamber>, CliError> {
        self.chamber_sample.iter().map(|s| Chamber::parse_sample(s).map_err(CliError::from)).collect()
    }

    /// Lengths from `--ell-mu/--ell-nu`, checked against the chambers.
    fn lengths(&self, chambers: &[Chamber]) -> Result<(usize, usize), CliError> {
        let from_flags = match (self.ell_mu, self.ell_nu) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(CliError::usage("--ell-mu and --ell-nu go together")),
        };
        let from_chamber = chambers.first().map(|c| (c.ell_mu, c.ell_nu));
        for c in chambers {
            if let Some((a, b)) = from_flags.or(from_chamber) {
                if (c.ell_mu, c.ell_nu) != (a, b) {
                    return Err(CliError::usage(format!(
                        "chamber sample has lengths ({},{}) but ({a},{b}) are in use",
                        c.ell_mu, c.ell_nu
                    )));
                }
            }
        }
        from_flags.or(from_chamber).ok_or_else(|| CliError::usage("--ell-mu/--ell-nu or --chamber-sample required"))
    }
}

#[derive(Serialize)]
struct TypeJson {
    g: usize,
    mu: Vec<i64>,
    nu: Vec<i64>,
    p: usize,
    q: usize,
    r: usize,
}

impl From<&TypeTuple> for TypeJson {
    fn from(t: &TypeTuple) -> Self {
        TypeJson { g: t.g, mu: t.mu.clone(), nu: t.nu.clone(), p: t.p, q: t.q, r: t.r }
    }
}

#[derive(Serialize)]
struct ValueJson {
    #[serde(rename = "type")]
    kind: TypeJson,
    start: String,
    end: String,
    m: String,
    h: Option<String>,
}

#[derive(Serialize)]
struct GraphEntryJson {
    id: usize,
    symmetry: u64,
    graph: GraphJson<thurwitz::exactmath::LinearForm>,
}

#[derive(Serialize)]
struct GraphsJson {
    #[serde(rename = "type")]
    kind: TypeShape,
    chamber: Option<Chamber>,
    graphs: Vec<GraphEntryJson>,
}

struct Report {
    text: String,
    json: String,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialises");
    s.push('\n');
    s
}

fn join(parts: &[String], sep: &str) -> String {
    parts.join(sep)
}

fn conditions_text(c: &Conditions) -> (String, String) {
    let s: Vec<String> = c.start.iter().map(ToString::to_string).collect();
    let e: Vec<String> = c.end.iter().map(ToString::to_string).collect();
    (join(&s, ";"), join(&e, ";"))
}

fn run_oracle(cli: &Cli) -> Result<Report, CliError> {
    let (mu, nu) = cli.partitions()?.ok_or_else(|| CliError::usage("--mu and --nu are required"))?;
    let (p, q, r) = cli.pqr()?;
    let ty = match cli.g {
        Some(g) => TypeTuple::new(g, mu, nu, p, q, r)?,
        None => TypeTuple::with_genus_from_branching(mu, nu, p, q, r)?,
    };
    let conditions = cli.conditions()?;
    check_consistent(&conditions)?;
    conditions.check_against(&ty)?;
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    eprintln!("counting factorisations of type {ty}");
    let m = m_oracle(&ty, &conditions, budget)?;
    let h = if conditions.is_empty() { Some(h_oracle(&ty, budget)?.to_string()) } else { None };
    let (start, end) = conditions_text(&conditions);
    let mut text = format!("type {ty}\nM = {m}\n");
    if let Some(h) = &h {
        text += &format!("H = {h}\n");
    }
    let json = to_json(&ValueJson { kind: (&ty).into(), start, end, m: m.to_string(), h });
    Ok(Report { text, json })
}

fn run_graphs(cli: &Cli) -> Result<Report, CliError> {
    let chambers = cli.chambers()?;
    if chambers.len() > 1 {
        return Err(CliError::usage("graphs takes at most one --chamber-sample"));
    }
    let (lm, ln) = cli.lengths(&chambers)?;
    let (p, q, r) = cli.pqr()?;
    let g = cli.g.unwrap_or(0);
    let shape = TypeShape::new(g, lm, ln, p, q, r)?;
    let topologies = match chambers.first() {
        Some(c) => enumerate_reduced(lm, ln, g, p, q, r, c),
        None => enumerate_topologies(lm, ln, g, p, q, r).to_vec(),
    };
    let graphs: Vec<GraphEntryJson> = topologies
        .iter()
        .enumerate()
        .map(|(id, t)| GraphEntryJson { id, symmetry: t.symmetry, graph: t.graph.to_json() })
        .collect();
    let mut text = format!("{} graphs\n", graphs.len());
    for e in &graphs {
        text += &format!("{} symmetry {} {}\n", e.id, e.symmetry, serde_json::to_string(&e.graph).expect("graph serialises"));
    }
    let json = to_json(&GraphsJson { kind: shape, chamber: chambers.first().cloned(), graphs });
    Ok(Report { text, json })
}

fn polynomial_report(res: &ChamberPolynomialResult) -> Report {
    let m = reduce_on_slice(&res.m_poly, res.shape.ell_mu, res.shape.ell_nu);
    let mut text = format!("m = {m}\n");
    match &res.h_poly {
        Some(h) => text += &format!("h = {h}\n"),
        None => text += "h = none\n",
    }
    Report { text, json: to_json(&res.to_json()) }
}

fn single_chamber(cli: &Cli) -> Result<Chamber, CliError> {
    let mut chambers = cli.chambers()?;
    match chambers.len() {
        1 => Ok(chambers.remove(0)),
        _ => Err(CliError::usage("exactly one --chamber-sample is required")),
    }
}

fn run_poly(cli: &Cli) -> Result<Report, CliError> {
    let chamber = single_chamber(cli)?;
    let (lm, ln) = cli.lengths(std::slice::from_ref(&chamber))?;
    let (p, q, r) = cli.pqr()?;
    if cli.g.unwrap_or(0) != 0 {
        return Err(CliError::usage("poly is genus 0; use genus for g > 0"));
    }
    TypeShape::new(0, lm, ln, p, q, r)?;
    let conditions = cli.conditions()?;
    let resolution = if conditions.is_empty() {
        Resolution::Deep
    } else {
        check_consistent(&conditions)?;
        if p != 0 && q != 0 {
            return Err(CliError::usage("conditions need --p 0 or --q 0"));
        }
        Resolution::AtSample
    };
    eprintln!("summing graphs of ({lm},{ln}) with (p,q,r) = ({p},{q},{r})");
    let res = genus0_polynomial_with(lm, ln, p, q, r, &chamber, &conditions, resolution)?;
    Ok(polynomial_report(&res))
}

fn run_genus(cli: &Cli) -> Result<Report, CliError> {
    let (p, q, r) = cli.pqr()?;
    let g = cli.g.ok_or_else(|| CliError::usage("--g is required"))?;
    if let Some((mu, nu)) = cli.partitions()? {
        if !cli.chamber_sample.is_empty() || cli.ell_mu.is_some() || cli.ell_nu.is_some() {
            return Err(CliError::usage("give either --mu/--nu or a chamber"));
        }
        let ty = TypeTuple::new(g, mu, nu, p, q, r)?;
        eprintln!("summing lattice points of type {ty}");
        let m = genus_g_value(&ty)?;
        let h = genus_g_h_value(&ty)?.map(|h| h.to_string());
        let mut text = format!("type {ty}\nM = {m}\n");
        if let Some(h) = &h {
            text += &format!("H = {h}\n");
        }
        let json = to_json(&ValueJson { kind: (&ty).into(), start: String::new(), end: String::new(), m: m.to_string(), h });
        return Ok(Report { text, json });
    }
    let chamber = single_chamber(cli)?;
    let (lm, ln) = cli.lengths(std::slice::from_ref(&chamber))?;
    let shape = TypeShape::new(g, lm, ln, p, q, r)?;
    eprintln!("interpolating genus {g} on the chamber of {}", chamber_text(&chamber));
    let m_poly = genus_g_polynomial(&shape, &chamber)?;
    let h_poly = if (p == 0 || q == 0) && p + q + r > 0 { divide_by_mu(&m_poly, lm, ln) } else { None };
    let res = ChamberPolynomialResult { shape, chamber, m_poly, h_poly, per_graph: Vec::new() };
    Ok(polynomial_report(&res))
}

fn chamber_text(c: &Chamber) -> String {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    format!("{}:{}", join(&c.sample_mu), join(&c.sample_nu))
}

fn run_wallcross(cli: &Cli) -> Result<Report, CliError> {
    let chambers = cli.chambers()?;
    if chambers.len() != 2 {
        return Err(CliError::usage("wallcross takes --chamber-sample twice: from, then to"));
    }
    cli.lengths(&chambers)?;
    if cli.g.unwrap_or(0) != 0 {
        return Err(CliError::usage("wall-crossing is genus 0"));
    }
    let (p, q, r) = cli.pqr()?;
    TypeShape::new(0, chambers[0].ell_mu, chambers[0].ell_nu, p, q, r)?;
    eprintln!("crossing from {} to {}", chamber_text(&chambers[0]), chamber_text(&chambers[1]));
    let wc = wall_crossing(&chambers[0], &chambers[1], p, q, r)?;
    let reduced = reduce_on_slice(&wc.wc_poly, wc.from.ell_mu, wc.from.ell_nu);
    let text = format!("wall {}\nwc = {reduced}\n", wc.wall.form);
    Ok(Report { text, json: to_json(&wc.to_json()) })
}

#[derive(Serialize)]
struct VerifyJson {
    max_d: i64,
    suites: Vec<verify::SuiteResult>,
}

fn run_verify(cli: &Cli) -> Result<(Report, bool), CliError> {
    let max_d = cli.max_d.unwrap_or(5);
    if !(1..=7).contains(&max_d) {
        return Err(CliError::usage("--max-d must lie in 1..=7"));
    }
    let suites = verify::run_all(max_d, cli.budget.unwrap_or(DEFAULT_BUDGET))?;
    let ok = suites.iter().all(|s| s.pass);
    let mut text = String::new();
    for s in &suites {
        text += &format!("{} {} ({} cases){}\n", if s.pass { "PASS" } else { "FAIL" }, s.name, s.cases, s.detail_suffix());
    }
    Ok((Report { text, json: to_json(&VerifyJson { max_d, suites }) }, ok))
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = if cli.json { &report.json } else { &report.text };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::io(e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    cli.check_flags()?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::io(e.to_string()))?;
    }
    let (report, ok) = match cli.command {
        Command::Oracle => (run_oracle(cli)?, true),
        Command::Graphs => (run_graphs(cli)?, true),
        Command::Poly => (run_poly(cli)?, true),
        Command::Genus => (run_genus(cli)?, true),
        Command::Wallcross => (run_wallcross(cli)?, true),
        Command::Verify => run_verify(cli)?,
    };
    emit(cli, &report)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(error::VERIFICATION_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
