//! Batch command-line front end: build, validate, compute, cross-check and
//! emit reports as JSON, CSV or markdown.
//!
//! Exit codes: 0 on success, 1 when a requested check fails, 2 on usage
//! errors. All output is deterministic for a fixed flag set; randomness
//! flows from the single `--seed` flag.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cohomology::{cohomology_dims, ext_dims, PoincareTable};
use crate::invariants::{a1_dual_variables, crosscheck_iso, symmetric_invariants, torus_invariants};
use crate::liesuper::{
    algebra_to_json, cartan_subalgebra, construct_gl_super, construct_s, construct_sbar,
    construct_w, degree_zero_subalgebra, detecting_subalgebra_gl, detecting_subalgebra_sbar,
    restrict_to_subalgebra, validate, CartanAlgebra, LieSuperalgebra, SubalgebraSpec,
};
use crate::smodule::{
    adjoint_module, dual, kac_module_sigma, module_from_json, random_e_module, tensor,
    trivial_module, SuperModule,
};
use crate::varieties::{rank_variety_sample, support_kac, support_simple, VarietyKind};
use crate::weights::{atypical_dominant_form, is_atypical_w, parse_weight, WeightVector};

/// The detecting subalgebra e of S̄(n) as a standalone algebra.
fn restricted_detecting_algebra(n: usize) -> anyhow::Result<LieSuperalgebra> {
    let sbar = construct_sbar(n)?;
    let pair = detecting_subalgebra_sbar(&sbar)?;
    Ok(restrict_to_subalgebra(&sbar.alg, &pair.e, "e".to_string())?)
}

#[derive(Parser)]
#[command(name = "supercohomology", version, about = "Exact relative cohomology and support varieties for Cartan-type Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    W,
    S,
    Sbar,
    Glmn,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::W => "W",
            Family::S => "S",
            Family::Sbar => "Sbar",
            Family::Glmn => "gl",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sub {
    /// degree-zero part
    G0,
    /// detecting subalgebra
    E,
    /// detecting subalgebra extended by the full diagonal
    A,
    /// diagonal Cartan subalgebra
    H,
    /// the zero subalgebra (absolute cohomology)
    Zero,
}

impl Sub {
    fn name(self) -> &'static str {
        match self {
            Sub::G0 => "g0",
            Sub::E => "e",
            Sub::A => "a",
            Sub::H => "h",
            Sub::Zero => "0",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

/// Flags shared by the computing subcommands.
#[derive(Args, Clone)]
struct RunConfig {
    /// algebra family
    #[arg(long, value_enum, default_value_t = Family::Sbar)]
    family: Family,
    /// rank n (second index for gl(m|n))
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// first index m, for gl(m|n) only
    #[arg(long)]
    m: Option<usize>,
    /// relative subalgebra t
    #[arg(long, value_enum, default_value_t = Sub::G0)]
    sub: Sub,
    /// coefficient module: trivial | adjoint | kac:A | file:PATH |
    /// dual(EXPR) | tensor(EXPR,EXPR)
    #[arg(long, default_value = "trivial")]
    coeff: String,
    /// maximal cohomological degree
    #[arg(long, default_value_t = 4)]
    pmax: usize,
    /// seed for any randomized construction
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build or validate an algebra
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Poincaré table of H^p(g, t; M)
    Cohomology {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Poincaré table of Ext^p(M, N) in the relative category
    Ext {
        #[command(flatten)]
        cfg: RunConfig,
        /// first argument module (same grammar as --coeff)
        #[arg(long, default_value = "trivial")]
        m1: String,
        /// second argument module
        #[arg(long, default_value = "trivial")]
        m2: String,
    },
    /// Invariant-ring data for S̄(n): generator degrees, Hilbert series,
    /// torus-invariant monomials
    Invariants {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// degree cap for series and monomial enumeration
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Three-way agreement: cochain cohomology vs brute-force invariants vs
    /// Hilbert series, for S̄(n) relative to g₀
    Crosscheck {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        pmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Typical/atypical verdict for a dominant weight
    Typicality {
        #[arg(long, value_enum, default_value_t = Family::Sbar)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// comma-separated coordinates, e.g. 2,1,0
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Support-variety descriptor of a simple or Kac module over S̄(n)
    Support {
        #[command(subcommand)]
        which: SupportCmd,
    },
    /// Sampled rank variety of a random module over the detecting
    /// subalgebra of S̄(n)
    Rankvariety {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// module shape as even,odd
        #[arg(long, default_value = "2,2")]
        dims: String,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Batch health reports
    Report {
        #[command(subcommand)]
        which: ReportCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Construct the algebra and print its basis and structure constants
    Build {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Run super-antisymmetry, super-Jacobi and grading checks
    Validate {
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(Subcommand)]
enum SupportCmd {
    /// simple module L(λ)
    Simple {
        #[arg(long, value_enum, default_value_t = Family::Sbar)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kac module K(λ)
    Kac {
        #[arg(long, value_enum, default_value_t = Family::Sbar)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Exercise every public operation at rank n and report pass/fail lines
    All {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

/// Whether a completed command found what it was checking for.
enum Outcome {
    Pass,
    Fail,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

// ---------------------------------------------------------------------------
// algebra construction and flag resolution
// ---------------------------------------------------------------------------

enum Built {
    Cartan(CartanAlgebra),
    Plain(LieSuperalgebra),
}

impl Built {
    fn alg(&self) -> &LieSuperalgebra {
        match self {
            Built::Cartan(c) => &c.alg,
            Built::Plain(g) => g,
        }
    }

    fn cartan(&self) -> Option<&CartanAlgebra> {
        match self {
            Built::Cartan(c) => Some(c),
            Built::Plain(_) => None,
        }
    }
}

fn build_algebra(family: Family, n: usize, m: Option<usize>) -> anyhow::Result<Built> {
    Ok(match family {
        Family::W => Built::Cartan(construct_w(n)?),
        Family::S => Built::Cartan(construct_s(n)?),
        Family::Sbar => Built::Cartan(construct_sbar(n)?),
        Family::Glmn => {
            let m = m.ok_or_else(|| anyhow::anyhow!("--family glmn requires --m"))?;
            Built::Plain(construct_gl_super(m, n)?)
        }
    })
}

fn resolve_sub(built: &Built, family: Family, m: Option<usize>, n: usize, sub: Sub) -> anyhow::Result<SubalgebraSpec> {
    let g = built.alg();
    Ok(match sub {
        Sub::Zero => SubalgebraSpec::new(Vec::new()),
        Sub::G0 => degree_zero_subalgebra(g),
        Sub::H => match built.cartan() {
            Some(c) => cartan_subalgebra(c),
            None => anyhow::bail!("--sub h is only defined for the Cartan families"),
        },
        Sub::E | Sub::A => match (family, built.cartan()) {
            (Family::Sbar, Some(c)) => {
                let pair = detecting_subalgebra_sbar(c)?;
                if sub == Sub::E {
                    pair.e
                } else {
                    pair.a
                }
            }
            (Family::Glmn, _) => {
                let m = m.expect("checked at build");
                let r = m.min(n);
                detecting_subalgebra_gl(g, m, n, r)?
            }
            _ => anyhow::bail!(
                "--sub {} is not available for family {}",
                sub.name(),
                family.name()
            ),
        },
    })
}

/// Parses the coefficient grammar: `trivial`, `adjoint`, `kac:A`,
/// `file:PATH`, `dual(EXPR)`, `tensor(EXPR,EXPR)`.
fn parse_coeff(expr: &str, built: &Built) -> anyhow::Result<(SuperModule, String)> {
    let e = expr.trim();
    if e == "trivial" {
        return Ok((trivial_module(built.alg()), "C".to_string()));
    }
    if e == "adjoint" {
        return Ok((adjoint_module(built.alg()), "adjoint".to_string()));
    }
    if let Some(a) = e.strip_prefix("kac:") {
        let a: i64 = a.trim().parse().map_err(|_| anyhow::anyhow!("kac: expects an integer, got {a:?}"))?;
        let c = built
            .cartan()
            .ok_or_else(|| anyhow::anyhow!("kac modules require a Cartan family"))?;
        return Ok((kac_module_sigma(c, a), format!("K({a}σ)")));
    }
    if let Some(path) = e.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        let v: serde_json::Value = serde_json::from_str(&text)?;
        return Ok((module_from_json(built.alg(), &v)?, format!("file:{path}")));
    }
    if let Some(inner) = e.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        let (m, name) = parse_coeff(inner, built)?;
        return Ok((dual(&m), format!("dual({name})")));
    }
    if let Some(inner) = e.strip_prefix("tensor(").and_then(|r| r.strip_suffix(')')) {
        let (left, right) = split_top_level(inner)
            .ok_or_else(|| anyhow::anyhow!("tensor(...) expects two comma-separated arguments"))?;
        let (a, an) = parse_coeff(left, built)?;
        let (b, bn) = parse_coeff(right, built)?;
        return Ok((tensor(&a, &b)?, format!("tensor({an},{bn})")));
    }
    anyhow::bail!("cannot parse coefficient expression {e:?}")
}

/// Splits at the unique comma outside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

fn emit_json(payload: serde_json::Value) {
    let mut obj = serde_json::Map::new();
    obj.insert("schema".to_string(), json!("1"));
    if let serde_json::Value::Object(m) = payload {
        obj.extend(m);
    }
    println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(obj)).unwrap());
}

fn emit_table(format: Format, table: &PoincareTable, kind: &str) {
    match format {
        Format::Json => emit_json(json!({
            "kind": kind,
            "pair": table.pair,
            "coeff": table.coeff,
            "p_max": table.p_max,
            "dims": table.dims,
        })),
        Format::Csv => {
            let mut s = String::from("p,dim\n");
            for (p, d) in table.dims.iter().enumerate() {
                let _ = writeln!(s, "{p},{d}");
            }
            print!("{s}");
        }
        Format::Md => print!("{}", table.to_markdown()),
    }
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

fn dispatch(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Algebra { action } => match action {
            AlgebraCmd::Build { cfg } => cmd_algebra_build(&cfg),
            AlgebraCmd::Validate { cfg } => cmd_algebra_validate(&cfg),
        },
        Command::Cohomology { cfg } => {
            let built = build_algebra(cfg.family, cfg.n, cfg.m)?;
            let t = resolve_sub(&built, cfg.family, cfg.m, cfg.n, cfg.sub)?;
            let (m, coeff_name) = parse_coeff(&cfg.coeff, &built)?;
            let table =
                cohomology_dims(built.alg(), t, &m, &coeff_name, cfg.sub.name(), cfg.pmax)?;
            emit_table(cfg.format, &table, "cohomology");
            Ok(Outcome::Pass)
        }
        Command::Ext { cfg, m1, m2 } => {
            let built = build_algebra(cfg.family, cfg.n, cfg.m)?;
            let t = resolve_sub(&built, cfg.family, cfg.m, cfg.n, cfg.sub)?;
            let (ma, na) = parse_coeff(&m1, &built)?;
            let (mb, nb) = parse_coeff(&m2, &built)?;
            let mut table = ext_dims(built.alg(), t, &ma, &mb, cfg.sub.name(), cfg.pmax)?;
            table.coeff = format!("Ext({na}, {nb})");
            emit_table(cfg.format, &table, "ext");
            Ok(Outcome::Pass)
        }
        Command::Invariants { n, cap, format } => cmd_invariants(n, cap, format),
        Command::Crosscheck { n, pmax, format } => cmd_crosscheck(n, pmax, format),
        Command::Typicality { family, n, weight, format } => {
            cmd_typicality(family, n, &weight, format)
        }
        Command::Support { which } => match which {
            SupportCmd::Simple { family, n, weight, format } => {
                cmd_support(family, n, &weight, format, true)
            }
            SupportCmd::Kac { family, n, weight, format } => {
                cmd_support(family, n, &weight, format, false)
            }
        },
        Command::Rankvariety { n, dims, points, seed, format } => {
            cmd_rankvariety(n, &dims, points, seed, format)
        }
        Command::Report { which } => match which {
            ReportCmd::All { n } => cmd_report_all(n),
        },
    }
}

fn cmd_algebra_build(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let built = build_algebra(cfg.family, cfg.n, cfg.m)?;
    let g = built.alg();
    let mut graded: BTreeMap<i64, usize> = BTreeMap::new();
    for b in &g.space.basis {
        *graded.entry(b.degree).or_insert(0) += 1;
    }
    match cfg.format {
        Format::Json => emit_json(json!({
            "kind": "algebra",
            "name": g.name,
            "dim": g.dim(),
            "graded_dims": graded.iter().map(|(d, c)| json!([d, c])).collect::<Vec<_>>(),
            "algebra": algebra_to_json(g),
        })),
        Format::Csv => {
            let mut s = String::from("index,label,degree,parity\n");
            for (i, b) in g.space.basis.iter().enumerate() {
                let _ = writeln!(s, "{i},{},{},{:?}", b.label, b.degree, b.parity);
            }
            print!("{s}");
        }
        Format::Md => {
            println!("# {} (dim {})\n", g.name, g.dim());
            println!("| degree | dim |\n|---|---|");
            for (d, c) in &graded {
                println!("| {d} | {c} |");
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_algebra_validate(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let built = build_algebra(cfg.family, cfg.n, cfg.m)?;
    let g = built.alg();
    let report = validate(g);
    match cfg.format {
        Format::Json => emit_json(json!({
            "kind": "validation",
            "name": g.name,
            "ok": report.ok,
            "violations": report.violations,
        })),
        Format::Csv | Format::Md => {
            println!("{}: {}", g.name, if report.ok { "ok" } else { "FAIL" });
            for v in &report.violations {
                println!("  {v}");
            }
        }
    }
    Ok(if report.ok { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_invariants(n: usize, cap: usize, format: Format) -> anyhow::Result<Outcome> {
    let sym = symmetric_invariants(n, cap)?;
    let sbar = construct_sbar(n)?;
    let vars = a1_dual_variables(&sbar)?;
    let monomials = torus_invariants(&vars, cap);
    let labels: Vec<&str> = vars.iter().map(|v| v.label.as_str()).collect();
    let mut torus_counts = vec![0usize; cap + 1];
    for m in &monomials {
        let deg: u32 = m.iter().sum();
        torus_counts[deg as usize] += 1;
    }
    match format {
        Format::Json => emit_json(json!({
            "kind": "invariants",
            "n": n,
            "generator_degrees": sym.generator_degrees,
            "hilbert": sym.series.coeffs,
            "torus_variables": labels,
            "torus_monomial_counts": torus_counts,
        })),
        Format::Csv => {
            let mut s = String::from("degree,hilbert,torus_monomials\n");
            for (d, count) in torus_counts.iter().enumerate() {
                let _ = writeln!(s, "{d},{},{count}", sym.series.coeffs[d]);
            }
            print!("{s}");
        }
        Format::Md => {
            println!("# invariants of S̄({n})\n");
            println!("free generator degrees: {:?}\n", sym.generator_degrees);
            println!("| degree | hilbert | torus monomials |\n|---|---|---|");
            for (d, count) in torus_counts.iter().enumerate() {
                println!("| {d} | {} | {count} |", sym.series.coeffs[d]);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_crosscheck(n: usize, pmax: usize, format: Format) -> anyhow::Result<Outcome> {
    let report = crosscheck_iso(n, pmax)?;
    match format {
        Format::Json => emit_json(json!({
            "kind": "crosscheck",
            "n": report.n,
            "p_max": report.p_max,
            "cohomology": report.cohomology,
            "bruteforce": report.bruteforce,
            "hilbert": report.hilbert,
            "agree": report.agree,
        })),
        Format::Csv => {
            let mut s = String::from("p,cohomology,bruteforce,hilbert\n");
            for p in 0..=report.p_max {
                let _ = writeln!(
                    s,
                    "{p},{},{},{}",
                    report.cohomology[p], report.bruteforce[p], report.hilbert[p]
                );
            }
            print!("{s}");
        }
        Format::Md => {
            println!("| p | cohomology | brute force | hilbert |\n|---|---|---|---|");
            for p in 0..=report.p_max {
                println!(
                    "| {p} | {} | {} | {} |",
                    report.cohomology[p], report.bruteforce[p], report.hilbert[p]
                );
            }
            println!("\nagree: {}", report.agree);
        }
    }
    if report.agree {
        Ok(Outcome::Pass)
    } else {
        eprintln!(
            "crosscheck disagreement: cohomology {:?} vs bruteforce {:?} vs hilbert {:?}",
            report.cohomology, report.bruteforce, report.hilbert
        );
        Ok(Outcome::Fail)
    }
}

fn cmd_typicality(family: Family, n: usize, weight: &str, format: Format) -> anyhow::Result<Outcome> {
    let lambda = parse_weight(weight)?;
    if lambda.n() != n {
        anyhow::bail!("weight has {} coordinates, expected n = {n}", lambda.n());
    }
    let atypical = match family {
        Family::W => is_atypical_w(&lambda),
        Family::Sbar => atypical_dominant_form(&lambda)?,
        _ => anyhow::bail!("typicality is defined for families w and sbar"),
    };
    let verdict = if atypical { "atypical" } else { "typical" };
    match format {
        Format::Json => emit_json(json!({
            "kind": "typicality",
            "family": family.name(),
            "weight": weight,
            "verdict": verdict,
        })),
        Format::Csv | Format::Md => println!("{verdict}"),
    }
    Ok(Outcome::Pass)
}

fn cmd_support(
    family: Family,
    n: usize,
    weight: &str,
    format: Format,
    simple: bool,
) -> anyhow::Result<Outcome> {
    if family != Family::Sbar {
        anyhow::bail!("support descriptors are implemented for --family sbar");
    }
    let lambda = parse_weight(weight)?;
    if lambda.n() != n {
        anyhow::bail!("weight has {} coordinates, expected n = {n}", lambda.n());
    }
    let desc = if simple { support_simple(n, &lambda)? } else { support_kac(n, &lambda)? };
    let summary = match &desc.kind {
        VarietyKind::ZeroPoint => "ZeroPoint".to_string(),
        VarietyKind::FullAffine(d) => format!("FullAffine dim {d}"),
        VarietyKind::SampledSubset(_) => "SampledSubset".to_string(),
    };
    match format {
        Format::Json => emit_json(json!({
            "kind": "support",
            "module": if simple { "simple" } else { "kac" },
            "n": n,
            "weight": weight,
            "descriptor": desc,
            "summary": summary,
        })),
        Format::Csv | Format::Md => {
            println!("{summary} (ambient dim {})", desc.ambient_dim)
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_rankvariety(
    n: usize,
    dims: &str,
    points: usize,
    seed: u64,
    format: Format,
) -> anyhow::Result<Outcome> {
    let (even, odd) = dims
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
        .ok_or_else(|| anyhow::anyhow!("--dims expects even,odd, e.g. 2,2"))?;
    let e = restricted_detecting_algebra(n)?;
    let m = random_e_module(&e, (even, odd), seed)?;
    let desc = rank_variety_sample(&m, points, seed.wrapping_add(1))?;
    let verdicts = match &desc.kind {
        VarietyKind::SampledSubset(v) => v.clone(),
        _ => unreachable!("sampling always returns a subset"),
    };
    let projective = verdicts.iter().filter(|v| v.projective).count();
    match format {
        Format::Json => emit_json(json!({
            "kind": "rankvariety",
            "n": n,
            "dims": [even, odd],
            "points": points,
            "seed": seed,
            "ambient_dim": desc.ambient_dim,
            "projective_points": projective,
            "verdicts": verdicts,
        })),
        Format::Csv => {
            let mut s = String::from("point,projective,zero_block_dim,zero_block_rank\n");
            for v in &verdicts {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{}",
                    v.point.join(" "),
                    v.projective,
                    v.zero_block_dim,
                    v.zero_block_rank
                );
            }
            print!("{s}");
        }
        Format::Md => {
            println!("| point | projective | 0-block dim | 0-block rank |\n|---|---|---|---|");
            for v in &verdicts {
                println!(
                    "| {} | {} | {} | {} |",
                    v.point.join(" "),
                    v.projective,
                    v.zero_block_dim,
                    v.zero_block_rank
                );
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_report_all(n: usize) -> anyhow::Result<Outcome> {
    let mut healthy = true;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        healthy &= ok;
    };

    let w = construct_w(n)?;
    let s = construct_s(n)?;
    let sbar = construct_sbar(n)?;
    let gl = construct_gl_super(1, 1)?;
    check("validate W(n)", validate(&w.alg).ok);
    check("validate S(n)", validate(&s.alg).ok);
    check("validate Sbar(n)", validate(&sbar.alg).ok);
    check("validate gl(1|1)", validate(&gl).ok);
    check("dim W(n) = n*2^n", w.alg.dim() == n * (1usize << n));
    check("dim Sbar(n) = dim S(n) + 1", sbar.alg.dim() == s.alg.dim() + 1);

    let t = degree_zero_subalgebra(&sbar.alg);
    let m = trivial_module(&sbar.alg);
    let table = cohomology_dims(&sbar.alg, t, &m, "C", "g0", 4)?;
    check("cohomology H^0 = C", table.dims[0] == 1);

    let cross = crosscheck_iso(n, 4)?;
    check("invariant-ring crosscheck", cross.agree);

    let sym = symmetric_invariants(n, 2 * n)?;
    check(
        "generator degrees 4..2(n-1)",
        sym.generator_degrees == (2..=n - 1).map(|i| 2 * i).collect::<Vec<_>>(),
    );

    let mut coords = vec![0i64; n];
    coords[0] = 2;
    coords[1] = 1;
    let typical = !atypical_dominant_form(&WeightVector::from_ints(&coords))?;
    check("(2,1,0,...) is typical", typical);

    let e = restricted_detecting_algebra(n)?;
    let module = random_e_module(&e, (2, 2), 0)?;
    let sample = rank_variety_sample(&module, 10, 1)?;
    check(
        "rank-variety sampling",
        matches!(sample.kind, VarietyKind::SampledSubset(ref v) if v.len() == 10),
    );

    Ok(if healthy { Outcome::Pass } else { Outcome::Fail })
}
