//! Command-line front end. [`run`] is pure apart from cache and rule file
//! access, so it is exercised directly by tests.

pub mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::affweyl::{EllContext, ReductionResult};
use crate::error::{Error, Result};
use crate::fusion::{load_or_build, verify_cache, FusionTable, Verlinde, CACHE_ENV};
use crate::regquot::{LabelKind, ObjLabel, PrincipalFusionRule, RegEngine};
use crate::rootsys::{Family, RootSystemSpec, Weight};
use crate::tiltprofile::{self, ComplexProfile};
use crate::verify;
use parse::{AtomKind, ObjExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "alcove", version, about = "Alcove combinatorics, fusion rules and regular parts")]
pub struct Cli {
    #[arg(long, global = true)]
    pub family: Option<Family>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    #[arg(long, global = true)]
    pub ell: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fusion table cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    /// Principal-block rule file; built-in rules are used otherwise.
    #[arg(long, global = true)]
    pub rules: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system and alcove data.
    Info,
    /// Write a weight as `x·λ` with `λ` in the fundamental alcove.
    Reduce {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weight: Vec<i64>,
        /// Factor over `W_ext⁺` relative to this fundamental-alcove weight.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        base: Option<Vec<i64>>,
    },
    /// One row of fusion coefficients.
    Fuse {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lhs: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        rhs: Vec<i64>,
        /// Use the Racah–Speiser formula instead of the alcove sum.
        #[arg(long)]
        racah: bool,
    },
    /// Build, load or check the full fusion table.
    FusionTable {
        /// Rebuild and compare against the cached digest.
        #[arg(long)]
        verify: bool,
    },
    /// Regular part of a tensor expression.
    Regpart { expr: String },
    /// Good filtration dimension of a tensor expression.
    Gfd { expr: String },
    /// Minimal tilting complex profile of one simple or Weyl label.
    Profile { expr: String },
    /// Run the lemma suites.
    Verify,
}

/// Exit status with captured standard output and error text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Usage(_)
            | Error::UnknownFamily(_)
            | Error::InvalidRank { .. }
            | Error::RankMismatch { .. }
            | Error::GeneratorIndex { .. }
    )
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => RunOutput { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = if is_usage(&e) { EXIT_USAGE } else { EXIT_DOMAIN };
            RunOutput { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn context(cli: &Cli) -> Result<EllContext> {
    let missing = |flag: &str| Error::Usage(format!("--{flag} is required"));
    let family = cli.family.ok_or_else(|| missing("family"))?;
    let rank = cli.rank.ok_or_else(|| missing("rank"))?;
    let ell = cli.ell.ok_or_else(|| missing("ell"))?;
    EllContext::from_spec(RootSystemSpec::new(family, rank)?, ell)
}

fn table(cli: &Cli, engine: &Verlinde) -> Result<FusionTable> {
    match &cli.cache {
        Some(dir) => load_or_build(engine, dir),
        None => engine.build_table(),
    }
}

fn rules(cli: &Cli, ctx: &EllContext) -> Result<PrincipalFusionRule> {
    match &cli.rules {
        Some(path) => PrincipalFusionRule::load(path),
        None => {
            let spec = ctx.rootsystem().spec();
            PrincipalFusionRule::builtin_for(spec.family, spec.rank)
        }
    }
}

fn weight(ctx: &EllContext, v: &[i64]) -> Result<Weight> {
    let w = Weight(v.to_vec());
    ctx.rootsystem().check_weight(&w)?;
    Ok(w)
}

/// Label of one parsed atom.
pub fn label_from_atom(ctx: &EllContext, atom: &parse::Atom) -> Result<ObjLabel> {
    let kind = match &atom.kind {
        AtomKind::Simple => LabelKind::Simple,
        AtomKind::Weyl => LabelKind::Weyl,
        AtomKind::Tilting => LabelKind::Tilting,
        AtomKind::Custom(n) => LabelKind::Custom(n.clone()),
    };
    let w = atom.weight.as_ref().map(|v| Weight(v.clone()));
    match (&atom.word, w) {
        (Some(word), w) if !matches!(kind, LabelKind::Tilting | LabelKind::Custom(_)) => {
            let slot = w.unwrap_or_else(|| ctx.rootsystem().zero());
            ObjLabel::from_word(ctx, kind, word, &slot)
        }
        (_, Some(w)) => ObjLabel::from_highest_weight(ctx, kind, &w),
        (_, None) => ObjLabel::from_highest_weight(ctx, kind, &ctx.rootsystem().zero()),
    }
}

/// Parses and validates an expression into labels.
pub fn labels_from_expr(ctx: &EllContext, text: &str) -> Result<Vec<ObjLabel>> {
    let expr: ObjExpr = parse::parse(text)?;
    parse::validate(&expr, ctx.rank())?;
    expr.atoms.iter().map(|a| label_from_atom(ctx, a)).collect()
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string(&v).expect("json value serialises");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let ctx = context(cli)?;
    let f = cli.format;
    let out = match &cli.command {
        Command::Info => info(&ctx, f),
        Command::Reduce { weight: v, base: None } => reduce(&ctx, &weight(&ctx, v)?, f)?,
        Command::Reduce { weight: v, base: Some(b) } => {
            let (tau, base) = (weight(&ctx, v)?, weight(&ctx, b)?);
            let (x, lambda) = ctx.weight_to_xlambda_at(&tau, &base)?;
            let (desc, len) = (ctx.describe(&x), ctx.length(&x));
            let omega = ctx.omega_of(&x).index;
            match f {
                Format::Text => format!("x={desc} lambda={lambda} omega={omega} len={len}\n"),
                Format::Csv => csv_rows(
                    &["x", "lambda", "omega", "len"],
                    &[vec![desc, lambda.to_string(), omega.to_string(), len.to_string()]],
                ),
                Format::Json => json_line(json!({"x": desc, "lambda": lambda, "omega": omega, "len": len})),
            }
        }
        Command::Fuse { lhs, rhs, racah } => {
            let (l, r) = (weight(&ctx, lhs)?, weight(&ctx, rhs)?);
            let engine = Verlinde::new(ctx.clone());
            let row = if *racah { engine.fusion_row_racah(&l, &r)? } else { engine.fusion_row(&l, &r)? };
            let rows: Vec<(Weight, u64)> = row.into_iter().collect();
            match f {
                Format::Text => rows.iter().map(|(n, c)| format!("nu={n} c={c}\n")).collect(),
                Format::Csv => csv_rows(&["nu", "c"], &rows.iter().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect::<Vec<_>>()),
                Format::Json => json_line(json!(rows.iter().map(|(n, c)| json!({"nu": n, "c": c})).collect::<Vec<_>>())),
            }
        }
        Command::FusionTable { verify: check } => {
            let engine = Verlinde::new(ctx.clone());
            let t = match (&cli.cache, check) {
                (Some(dir), true) => verify_cache(&engine, dir)?,
                (None, true) => return Err(Error::Usage("--verify needs --cache".into())),
                _ => table(cli, &engine)?,
            };
            match f {
                Format::Text => format!("{} weights={} digest={}\n", t.file_name(), t.weights().len(), t.digest()),
                Format::Json => format!("{}\n", t.to_json()),
                Format::Csv => {
                    let ws = t.weights();
                    let mut rows = Vec::new();
                    for l in ws {
                        for m in ws {
                            for (n, c) in t.row(l, m).unwrap_or_default() {
                                rows.push(vec![l.to_string(), m.to_string(), n.to_string(), c.to_string()]);
                            }
                        }
                    }
                    csv_rows(&["lambda", "mu", "nu", "c"], &rows)
                }
            }
        }
        Command::Regpart { expr } => {
            let labels = labels_from_expr(&ctx, expr)?;
            let engine = Verlinde::new(ctx.clone());
            let t = table(cli, &engine)?;
            let r = rules(cli, &ctx)?;
            let obj = RegEngine::new(&ctx, &r, &t)?.regpart_of_labels(&labels)?;
            match f {
                Format::Text => format!("{obj}\n"),
                Format::Json => json_line(serde_json::to_value(obj.to_records())?),
                Format::Csv => csv_rows(
                    &["kind", "name", "word", "weight", "mult"],
                    &obj.to_records()
                        .into_iter()
                        .map(|r| {
                            vec![
                                r.kind,
                                r.name.unwrap_or_default(),
                                r.word.unwrap_or_default(),
                                Weight(r.weight).to_string(),
                                r.mult.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Gfd { expr } => {
            let labels = labels_from_expr(&ctx, expr)?;
            let g = tiltprofile::gfd_tensor(&ctx, &labels)?;
            match f {
                Format::Text => format!("gfd={} strongly_regular={}\n", g.gfd, g.strongly_regular),
                Format::Csv => csv_rows(&["gfd", "strongly_regular"], &[vec![g.gfd.to_string(), g.strongly_regular.to_string()]]),
                Format::Json => json_line(json!({"gfd": g.gfd, "strongly_regular": g.strongly_regular})),
            }
        }
        Command::Profile { expr } => profile(&ctx, expr, f)?,
        Command::Verify => {
            let engine = Verlinde::new(ctx.clone());
            let t = table(cli, &engine)?;
            let r = rules(cli, &ctx)?;
            let with_rules = (!r.rows.is_empty()).then_some(&r);
            let reports = verify::run_all(&engine, &t, with_rules)?;
            let failed = reports.iter().any(|r| !r.passed());
            let text = match f {
                Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
                Format::Csv => csv_rows(
                    &["suite", "checks", "passed", "counterexample"],
                    &reports
                        .iter()
                        .map(|r| vec![r.name.to_string(), r.checked.to_string(), r.passed().to_string(), r.failure.clone().unwrap_or_default()])
                        .collect::<Vec<_>>(),
                ),
                Format::Json => json_line(json!(reports
                    .iter()
                    .map(|r| json!({"suite": r.name, "checks": r.checked, "passed": r.passed(), "counterexample": r.failure}))
                    .collect::<Vec<_>>())),
            };
            return Ok((if failed { EXIT_DOMAIN } else { EXIT_OK }, text));
        }
    };
    Ok((EXIT_OK, out))
}

fn info(ctx: &EllContext, f: Format) -> String {
    let rs = ctx.rootsystem();
    let alcove = ctx.fundamental_alcove_weights();
    let fields: Vec<(&str, String)> = vec![
        ("type", rs.spec().to_string()),
        ("ell", ctx.ell().to_string()),
        ("coxeter_number", rs.coxeter_number().to_string()),
        ("positive_roots", rs.positive_roots().len().to_string()),
        ("rho", rs.rho().to_string()),
        ("omega_order", ctx.omega_group().len().to_string()),
        ("alcove_weights", alcove.len().to_string()),
    ];
    match f {
        Format::Text => {
            let mut s: String = fields.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
            for o in ctx.omega_group() {
                let _ = writeln!(s, "omega{} {} .0={}", o.index, ctx.describe(&o.elem), o.image_of_zero);
            }
            s
        }
        Format::Csv => csv_rows(&["key", "value"], &fields.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect::<Vec<_>>()),
        Format::Json => {
            let mut m: serde_json::Map<String, serde_json::Value> = fields.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            m.insert("alcove".into(), json!(alcove));
            json_line(serde_json::Value::Object(m))
        }
    }
}

fn reduce(ctx: &EllContext, tau: &Weight, f: Format) -> Result<String> {
    Ok(match ctx.reduce(tau)? {
        ReductionResult::Singular { beta, m } => {
            let root = &ctx.rootsystem().positive_roots()[beta].root;
            match f {
                Format::Text => format!("singular beta={root} m={m}\n"),
                Format::Csv => csv_rows(&["singular", "beta", "m"], &[vec!["true".into(), root.to_string(), m.to_string()]]),
                Format::Json => json_line(json!({"singular": true, "beta": root, "m": m})),
            }
        }
        ReductionResult::Regular { x, lambda, sign, length, .. } => {
            let x = ctx.describe(&x);
            match f {
                Format::Text => format!("x={x} lambda={lambda} sign={sign} len={length}\n"),
                Format::Csv => csv_rows(
                    &["x", "lambda", "sign", "len"],
                    &[vec![x, lambda.to_string(), sign.to_string(), length.to_string()]],
                ),
                Format::Json => json_line(json!({"x": x, "lambda": lambda, "sign": sign, "len": length})),
            }
        }
    })
}

fn profile(ctx: &EllContext, expr: &str, f: Format) -> Result<String> {
    let labels = labels_from_expr(ctx, expr)?;
    let [label] = labels.as_slice() else {
        return Err(Error::Precondition("profile takes exactly one label".into()));
    };
    let word = match (&label.kind, &label.word) {
        (LabelKind::Simple | LabelKind::Weyl, Some(w)) => w,
        _ => return Err(Error::Precondition(format!("profile needs a regular Simple or Weyl label, got {label}"))),
    };
    let x = ctx.from_word(word)?;
    let p: ComplexProfile = if label.kind == LabelKind::Simple {
        tiltprofile::simple_profile(ctx, &x, &label.weight)?
    } else {
        tiltprofile::weyl_profile(ctx, &x, &label.weight)?
    };
    let rows: Vec<(i64, Vec<String>)> =
        p.degrees.iter().map(|(i, cs)| (*i, cs.iter().map(ToString::to_string).collect())).collect();
    Ok(match f {
        Format::Text => rows.iter().map(|(i, cs)| format!("deg={i} {}\n", cs.join(" "))).collect(),
        Format::Csv => csv_rows(
            &["degree", "constraints"],
            &rows.iter().map(|(i, cs)| vec![i.to_string(), cs.join(" ")]).collect::<Vec<_>>(),
        ),
        Format::Json => json_line(json!({
            "symmetric": p.symmetric,
            "degrees": rows.iter().map(|(i, cs)| json!({"degree": i, "constraints": cs})).collect::<Vec<_>>(),
        })),
    })
}
