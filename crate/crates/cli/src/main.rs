mod args;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qorep::gtrep::{so3_rep, so4_rep};
use qorep::qarith::{q_number_real, ShiftedArg};
use qorep::so22::{self, format_arg, LadderTag, RepParams, StarStatus, TermSign};
use qorep::verify::{check_commute, check_serre, check_so3_bilinear, check_star, ResidualReport, Restriction, StarForm};
use qorep::xdiag::{so4_rep_xbasis, spectrum_on_vm};
use qorep::{Error, GenMatrixSet, Generator, HalfInt, MatrixFile, QContext};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qorep", version, about = "Representation matrices and certificates for U'_q(so_3), U'_q(so_4), U'_q(so_{2,2})")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a representation and write it as a matrix file.
    Rep {
        family: FamilyArg,
        #[command(flatten)]
        params: Params,
        /// Output path; the file goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run relation and *-structure checks on a file or a fresh construction.
    Verify {
        #[arg(long, conflicts_with = "family")]
        file: Option<PathBuf>,
        #[arg(long, required_unless_present = "file")]
        family: Option<FamilyArg>,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_delimiter = ',', default_value = "serre,commute")]
        checks: Vec<CheckArg>,
        /// Interior margin for window families.
        #[arg(long, default_value_t = 3)]
        margin: i32,
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues [x] of -i I43 on the V_m blocks of T_rs.
    Spectrum {
        #[arg(long)]
        r: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
        #[arg(long, required_unless_present = "all_m", allow_hyphen_values = true)]
        m: Option<HalfInt>,
        #[arg(long)]
        all_m: bool,
        #[arg(long, default_value_t = 1.3)]
        q: f64,
        #[arg(long)]
        csv: bool,
    },
    /// Irreducibility, decomposition and *-series of T^eps_bc.
    Classify {
        #[arg(long, default_value_t = 0)]
        eps: u8,
        #[arg(long, value_parser = args::parse_arg, allow_hyphen_values = true)]
        b: ShiftedArg,
        #[arg(long, value_parser = args::parse_arg, allow_hyphen_values = true)]
        c: ShiftedArg,
        #[arg(long, default_value_t = 1.3)]
        q: f64,
        #[arg(long = "K")]
        window: Option<HalfInt>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    So3,
    So4,
    So4x,
    So22,
    So22primed,
    Ladder,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Serre,
    Commute,
    Bilinear,
    Star,
    StarCompact,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct Params {
    #[arg(long, default_value_t = 1.3)]
    q: f64,
    #[arg(long)]
    l: Option<HalfInt>,
    #[arg(long)]
    r: Option<HalfInt>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<HalfInt>,
    #[arg(long, default_value_t = 0)]
    eps: u8,
    #[arg(long, value_parser = args::parse_arg, allow_hyphen_values = true)]
    b: Option<ShiftedArg>,
    #[arg(long, value_parser = args::parse_arg, allow_hyphen_values = true)]
    c: Option<ShiftedArg>,
    /// Window radius K for so22, so22primed and ladder.
    #[arg(long = "K", alias = "window")]
    window: Option<HalfInt>,
    /// Ladder tag: D0, F0, Q0, R0, Qplus, Qminus, Rplus, Rminus.
    #[arg(long)]
    tag: Option<String>,
    /// Relative sign between the two terms of the Q+-/R+- chains.
    #[arg(long)]
    sign: Option<SignArg>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificationFailed { .. } | Error::EquivalenceFailed(_) | Error::NotUnitary { .. } | Error::NotEquivalent(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn context(q: f64) -> Result<QContext, Failure> {
    Ok(QContext::new(q)?.with_env_overrides()?)
}

fn need<T: Copy>(v: Option<T>, name: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for {family}")))
}

fn rep_params(p: &Params) -> Result<RepParams, Failure> {
    let b = need(p.b, "b", "this family")?;
    let c = need(p.c, "c", "this family")?;
    Ok(RepParams::new(p.eps, b, c)?)
}

fn build(family: FamilyArg, p: &Params, ctx: &QContext) -> Result<GenMatrixSet, Failure> {
    let set = match family {
        FamilyArg::So3 => so3_rep(need(p.l, "l", "so3")?, ctx)?,
        FamilyArg::So4 => so4_rep(need(p.r, "r", "so4")?, need(p.s, "s", "so4")?, ctx)?,
        FamilyArg::So4x => so4_rep_xbasis(need(p.r, "r", "so4x")?, need(p.s, "s", "so4x")?, ctx)?,
        FamilyArg::So22 | FamilyArg::So22primed => {
            let rp = rep_params(p)?;
            let k = p.window.unwrap_or_else(|| rp.default_window());
            if matches!(family, FamilyArg::So22) {
                so22::so22_rep(&rp, k, ctx)?
            } else {
                so22::so22_rep_primed(&rp, k, ctx)?.set
            }
        }
        FamilyArg::Ladder => {
            let rp = rep_params(p)?;
            let tag: LadderTag = p.tag.as_deref().ok_or_else(|| Failure::Usage("--tag is required for ladder".into()))?.parse()?;
            let sign = match p.sign {
                Some(SignArg::Minus) => TermSign::Minus,
                Some(SignArg::Plus) => TermSign::Plus,
                None => so22::RESOLVED_SIGN,
            };
            let k = p.window.unwrap_or_else(|| rp.default_window());
            so22::ladder_rep_with_sign(tag, &rp, k, sign, ctx)?
        }
    };
    Ok(set)
}

fn summary(set: &GenMatrixSet) -> String {
    let m = &set.meta;
    let mut parts = vec![format!("family {}", serde_json::to_value(m.family).unwrap().as_str().unwrap_or("?")), format!("q {}", m.q)];
    for (name, v) in [("l", m.l), ("r", m.r), ("s", m.s), ("K", m.window)] {
        if let Some(v) = v {
            parts.push(format!("{name} {v}"));
        }
    }
    if let Some(e) = m.eps {
        parts.push(format!("eps {e}"));
    }
    for (name, v) in [("b", m.b), ("c", m.c)] {
        if let Some(v) = v {
            parts.push(format!("{name} {}", format_arg(&v)));
        }
    }
    if let Some(t) = &m.tag {
        parts.push(format!("tag {t}"));
    }
    format!("dimension {}; {}", set.dim(), parts.join(", "))
}

fn cmd_rep(family: FamilyArg, p: &Params, out: Option<PathBuf>) -> Result<(), Failure> {
    let ctx = context(p.q)?;
    let set = build(family, p, &ctx)?;
    let text = MatrixFile::from_set(&set).to_json();
    match out {
        Some(path) => {
            fs::write(&path, text + "\n")?;
            println!("{}", summary(&set));
            println!("wrote {}", path.display());
        }
        None => {
            eprintln!("{}", summary(&set));
            println!("{text}");
        }
    }
    Ok(())
}

fn is_window(set: &GenMatrixSet) -> bool {
    set.meta.window.is_some()
}

fn run_checks(set: &GenMatrixSet, checks: &[CheckArg], margin: i32, ctx: &QContext) -> Result<Vec<ResidualReport>, Failure> {
    let r = if is_window(set) {
        Restriction::subset(so22::interior_indices(set, margin), format!("interior({margin})"))
    } else {
        Restriction::Full
    };
    let mut out = Vec::new();
    for check in checks {
        match check {
            CheckArg::Serre => {
                for (ga, gb) in [(Generator::I21, Generator::I32), (Generator::I32, Generator::I43)] {
                    if let (Some(a), Some(b)) = (set.try_get(ga), set.try_get(gb)) {
                        out.extend(check_serre(a, b, ctx, &r)?.into_iter().map(|mut rep| {
                            rep.name = format!("{ga}/{gb} {}", rep.name);
                            rep
                        }));
                    }
                }
            }
            CheckArg::Commute => {
                if let (Some(a), Some(b)) = (set.try_get(Generator::I21), set.try_get(Generator::I43)) {
                    out.push(check_commute(a, b, ctx, &r)?);
                }
            }
            CheckArg::Bilinear => {
                let triples = [
                    (Generator::I21, Generator::I32, Generator::I31),
                    (Generator::I32, Generator::I43, Generator::I42),
                ];
                for (a, b, c) in triples {
                    if let (Some(a), Some(b), Some(c)) = (set.try_get(a), set.try_get(b), set.try_get(c)) {
                        out.extend(check_so3_bilinear(a, b, c, ctx, &r)?);
                    }
                }
                if out.is_empty() && set.try_get(Generator::I31).is_none() {
                    return Err(Failure::Usage("bilinear check needs the derived generators I31, I42".into()));
                }
            }
            CheckArg::Star => out.extend(check_star(set, StarForm::So22, ctx, &r)),
            CheckArg::StarCompact => out.extend(check_star(set, StarForm::Compact, ctx, &r)),
        }
    }
    Ok(out)
}

fn cmd_verify(
    file: Option<PathBuf>,
    family: Option<FamilyArg>,
    p: &Params,
    checks: &[CheckArg],
    margin: i32,
    as_json: bool,
) -> Result<(), Failure> {
    let (set, ctx) = match file {
        Some(path) => {
            let text = fs::read_to_string(&path)?;
            let set = MatrixFile::from_json(&text)?.to_set()?;
            let ctx = context(set.meta.q)?;
            (set, ctx)
        }
        None => {
            let ctx = context(p.q)?;
            (build(family.expect("clap enforces --family"), p, &ctx)?, ctx)
        }
    };
    let reports = run_checks(&set, checks, margin, &ctx)?;
    let all = reports.iter().all(|r| r.passed);
    let mut stdout = io::stdout().lock();
    if as_json {
        let rows: Vec<_> = reports
            .iter()
            .map(|r| json!({"name": r.name, "residual": r.residual, "passed": r.passed, "restriction": r.restriction}))
            .collect();
        writeln!(stdout, "{}", serde_json::to_string_pretty(&json!({"passed": all, "checks": rows})).unwrap())?;
    } else {
        writeln!(stdout, "{}", summary(&set))?;
        for r in &reports {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            writeln!(stdout, "{verdict}  {:<28} {:>10.3e}  on {}", r.name, r.residual, r.restriction)?;
        }
        writeln!(stdout, "{}", if all { "all checks passed" } else { "some checks failed" })?;
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn cmd_spectrum(r: HalfInt, s: HalfInt, m: Option<HalfInt>, all_m: bool, q: f64, csv_out: bool) -> Result<(), Failure> {
    let ctx = context(q)?;
    let ms: Vec<HalfInt> = if all_m { HalfInt::range_inclusive(-r, r).collect() } else { vec![m.expect("clap enforces --m")] };
    let mut rows = Vec::new();
    for m in ms {
        let spec = spectrum_on_vm(r, s, m, &ctx)?;
        for x in spec.x_labels {
            rows.push((m, x, q_number_real(x.value(), &ctx)));
        }
    }
    if csv_out {
        let mut w = csv::Writer::from_writer(io::stdout());
        w.write_record(["m", "x", "qnumber"]).map_err(|e| Failure::Usage(e.to_string()))?;
        for (m, x, v) in rows {
            w.write_record([m.to_string(), x.to_string(), v.to_string()]).map_err(|e| Failure::Usage(e.to_string()))?;
        }
        w.flush()?;
    } else {
        println!("{:>6} {:>6} {:>22}", "m", "x", "[x]");
        for (m, x, v) in rows {
            println!("{:>6} {:>6} {:>22.15}", m.to_string(), x.to_string(), v);
        }
    }
    Ok(())
}

fn cmd_classify(eps: u8, b: ShiftedArg, c: ShiftedArg, q: f64, window: Option<HalfInt>, as_json: bool) -> Result<(), Failure> {
    let ctx = context(q)?;
    let p = RepParams::new(eps, b, c)?;
    let (cp, _) = so22::canonicalize(&p, &ctx);
    let k = window.unwrap_or_else(|| cp.default_window());
    let report = so22::classify(&p, k, &ctx)?;
    let series: Vec<String> = report.star_series().iter().map(|s| format!("{} {}", s.series_name(), s)).collect();
    let headline = format!(
        "{}; class ({}); star: {}",
        if report.irreducible { "irreducible" } else { "reducible" },
        report.class_letter().map_or("unlisted".to_string(), |c| c.to_string()),
        if series.is_empty() { "none".to_string() } else { series.join(", ") }
    );
    if as_json {
        let comps: Vec<_> = report
            .components
            .iter()
            .map(|comp| {
                let star = report.star.iter().find(|s| s.component == comp.name);
                json!({
                    "label": comp.name,
                    "region": comp.inequalities,
                    "finite_dimensional": comp.finite_dimensional,
                    "vectors_in_window": comp.indices.len(),
                    "leakage": comp.leakage,
                    "star_class": star.and_then(|s| s.pattern).map(|c| c.number()),
                    "star_status": star.map(|s| format!("{:?}", s.status)),
                    "star_residual": star.map(|s| s.residual),
                })
            })
            .collect();
        let doc = json!({
            "eps": report.params.eps,
            "b": format_arg(&report.params.b),
            "c": format_arg(&report.params.c),
            "moves": report.moves.iter().map(|m| format!("{m:?}")).collect::<Vec<_>>(),
            "window": report.window.to_string(),
            "irreducible": report.irreducible,
            "irreducibility_flag": report.irreducibility.flag,
            "class_letter": report.class_letter().map(|c| c.to_string()),
            "star_series": report.star_series().iter().map(|s| s.number()).collect::<Vec<_>>(),
            "components": comps,
            "summary": headline,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        return Ok(());
    }
    println!("{headline}");
    println!("canonical: eps {}, b {}, c {}, window K = {}", cp.eps, format_arg(&cp.b), format_arg(&cp.c), k);
    for m in &report.moves {
        println!("move: {m:?}");
    }
    if report.star.iter().any(|s| s.status == StarStatus::UnlistedPass) {
        println!("note: components marked `extra` pass the Hermiticity check without a listed *-class");
    }
    if report.irreducibility.flag {
        println!("note: literal and parity-refined lattice predicates disagree; wall scan decides");
    }
    println!("{:<14} {:<26} {:>8} {:>6} {:>11} {:>6} {:>11}", "component", "region", "vectors", "finite", "leakage", "star", "hermitian");
    for comp in &report.components {
        let star = report.star.iter().find(|s| s.component == comp.name);
        println!(
            "{:<14} {:<26} {:>8} {:>6} {:>11.2e} {:>6} {:>11}",
            comp.name,
            comp.inequalities,
            comp.indices.len(),
            if comp.finite_dimensional { "yes" } else { "no" },
            comp.leakage,
            match star {
                Some(s) if s.status == StarStatus::UnlistedPass => "extra".to_string(),
                _ => star.and_then(|s| s.pattern).map_or("-".to_string(), |c| c.to_string()),
            },
            star.map_or("-".to_string(), |s| format!("{:.2e}", s.residual)),
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rep { family, params, out } => cmd_rep(family, &params, out),
        Command::Verify { file, family, params, checks, margin, json } => cmd_verify(file, family, &params, &checks, margin, json),
        Command::Spectrum { r, s, m, all_m, q, csv } => cmd_spectrum(r, s, m, all_m, q, csv),
        Command::Classify { eps, b, c, q, window, json } => cmd_classify(eps, b, c, q, window, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
