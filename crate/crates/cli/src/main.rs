use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use virlog_core::exact_arith::{parse_rational, rational_roots};
use virlog_core::fusion::{
    descent_operator, determine_b, fixture_polynomial, indicial_polynomial,
    ope_level2_coefficient, solve_euler, EulerOperator, FixtureCase, LogSeries,
};
use virlog_core::json::{
    deviations_to_json, euler_to_json, indicial_to_json, log_series_to_json, matrix_to_json,
    module_vector_from_json, module_vector_to_json, poly_to_json, qpoly_to_json,
    rational_to_json, wlog_element_to_json,
};
use virlog_core::report::{self, any_failed, render_table, report_to_json};
use virlog_core::vir_modules::{
    check_hom_pair, factor_determinant, radical_dimension, singular_vectors, JordanVermaModule,
    ModuleVector,
};
use virlog_core::wlog::{
    check_jacobi, cocycle, deviations_report, pairing, vacuum_expectation, wlog_bracket, Cocycle,
    Polarization, WLogGenerator, WLogWord,
};
use num_traits::One;
use virlog_core::{Poly, Rational};

/// Exact computations for Virasoro modules with Jordan top levels,
/// logarithmic fusion and the logarithmic Witt algebra.
#[derive(Parser)]
#[command(name = "virlog", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output document to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Clone)]
struct ModuleArgs {
    /// Central charge (integer or p/q).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Option<Rational>,
    /// Lowest weight (integer or p/q).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    h: Option<Rational>,
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Size of the Jordan block on the top level.
    #[arg(long, default_value_t = 1)]
    jordan: usize,
    /// Keep c and h as symbols.
    #[arg(long)]
    symbolic: bool,
}

impl ModuleArgs {
    fn module(&self) -> Result<JordanVermaModule> {
        if self.symbolic {
            if self.c.is_some() || self.h.is_some() {
                bail!("--symbolic cannot be combined with --c/--h");
            }
            return Ok(JordanVermaModule::symbolic(self.jordan)?);
        }
        match (&self.c, &self.h) {
            (Some(c), Some(h)) => Ok(JordanVermaModule::numeric(c.clone(), h.clone(), self.jordan)?),
            _ => bail!("give --c and --h, or --symbolic"),
        }
    }
}

#[derive(Args, Clone)]
struct FusionArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    h1: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    h2: Rational,
    /// Level of the singular vector in M(c,h2); default: the lowest one up to 8.
    #[arg(long)]
    level: Option<usize>,
}

fn cocycle_arg(s: &str) -> std::result::Result<Cocycle, String> {
    s.parse().map_err(|e: virlog_core::Error| e.to_string())
}

fn polarization_arg(s: &str) -> std::result::Result<Polarization, String> {
    s.parse().map_err(|e: virlog_core::Error| e.to_string())
}

fn generator_arg(s: &str) -> std::result::Result<WLogGenerator, String> {
    s.parse().map_err(|e: virlog_core::Error| e.to_string())
}

#[derive(Subcommand)]
enum Cmd {
    /// Gram matrix of the Shapovalov form at one level.
    Shapovalov(ModuleArgs),
    /// Determinant of the Shapovalov form, factored when symbolic.
    Det(ModuleArgs),
    /// Basis of singular vectors at one level.
    Singular(ModuleArgs),
    /// Dimension of the radical of the form at one level.
    Radical(ModuleArgs),
    /// Check that two level-n vectors of M_2(c,h) define a homomorphism
    /// M_2(c,h+n) -> M_2(c,h).
    HomCheck {
        #[command(flatten)]
        module: ModuleArgs,
        /// JSON module vector for the image of the lower top vector.
        #[arg(long, value_name = "FILE")]
        s1: Option<PathBuf>,
        /// JSON module vector for the image of the upper top vector.
        #[arg(long, value_name = "FILE")]
        s2: Option<PathBuf>,
        /// Use the printed level-3 pair for c = h = 1.
        #[arg(long)]
        reference: bool,
    },
    /// Indicial (fusion) polynomial from a singular vector of M(c,h2).
    Fusion(FusionArgs),
    /// Solve the singular-vector equation with a one-term right-hand side.
    EulerSolve {
        #[command(flatten)]
        fusion: FusionArgs,
        /// Coefficient of the right-hand side, a polynomial such as 2/3b.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        rhs: String,
        /// Exponent s0 of x^{s0} on the right-hand side.
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        rhs_exp: Rational,
        /// Power of log(x) on the right-hand side.
        #[arg(long, default_value_t = 0)]
        rhs_log: u32,
    },
    /// Level-2 OPE coefficient a in Y(w,x)w = x^{-2h}(1 + a x^2 L(-2)1 + ...).
    OpeCoeff {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        h: Rational,
    },
    /// Printed fusion polynomial of a reference case against the computed one.
    Fixture {
        /// c1(m,n), cminus2 or c0(p).
        case: String,
    },
    /// Central charge b of the logarithmic vacuum from h at c = 0.
    DetermineB {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        h: Rational,
    },
    /// The logarithmic Witt algebra.
    #[command(subcommand)]
    Wlog(WlogCmd),
    /// Run every reference fixture and print the result table.
    Report {
        /// Only this acceptance criterion (1-9).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum WlogCmd {
    /// Bracket of two generators, e.g. t(-1,2) t(1,-2).
    Bracket {
        #[arg(value_parser = generator_arg, allow_hyphen_values = true)]
        a: WLogGenerator,
        #[arg(value_parser = generator_arg, allow_hyphen_values = true)]
        b: WLogGenerator,
        #[arg(long, value_parser = cocycle_arg, default_value = "residue")]
        cocycle: Cocycle,
    },
    /// Cocycle value on two generators.
    Cocycle {
        #[arg(value_parser = generator_arg, allow_hyphen_values = true)]
        a: WLogGenerator,
        #[arg(value_parser = generator_arg, allow_hyphen_values = true)]
        b: WLogGenerator,
        #[arg(long, value_parser = cocycle_arg, default_value = "residue")]
        cocycle: Cocycle,
    },
    /// Vacuum expectation of a word, or the pairing <left', word> with --pair.
    Vev {
        /// Space-separated generators, e.g. "t(-1,2) t(0,-2)".
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
        #[arg(long, value_parser = cocycle_arg, default_value = "residue")]
        cocycle: Cocycle,
        /// mode: negative modes create; log: negative log index creates.
        #[arg(long, value_parser = polarization_arg, default_value = "mode")]
        polarization: Polarization,
    },
    /// Jacobi identity over all generator triples with |i|,|m| <= range.
    Jacobi {
        #[arg(long, default_value_t = 2)]
        range: i64,
        #[arg(long, value_parser = cocycle_arg, default_value = "none")]
        cocycle: Cocycle,
    },
    /// Pairs where the closed-form cocycle and the residue cocycle differ.
    Deviations {
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

fn lowest_singular(args: &FusionArgs) -> Result<(usize, ModuleVector, EulerOperator)> {
    let m = JordanVermaModule::numeric(args.c.clone(), args.h2.clone(), 1)?;
    let levels: Vec<usize> = match args.level {
        Some(l) => vec![l],
        None => (1..=8).collect(),
    };
    for level in levels {
        if let Some(v) = singular_vectors(&m, level)?.into_iter().next() {
            let op = descent_operator(&v, &Poly::constant(args.h1.clone()))?;
            return Ok((level, v, op));
        }
    }
    bail!(
        "M({}, {}) has no singular vector at the requested level(s)",
        args.c,
        args.h2
    )
}

fn roots_text(roots: &[(Rational, usize)]) -> String {
    let parts: Vec<String> = roots
        .iter()
        .map(|(r, m)| if *m == 1 { r.to_string() } else { format!("{r} (x{m})") })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn load_vector(path: &PathBuf) -> Result<ModuleVector> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(module_vector_from_json(&v)?.1)
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(match &cli.cmd {
        Cmd::Shapovalov(a) => {
            let m = a.module()?.shapovalov_matrix(a.level)?;
            Output::ok(m.to_string(), matrix_to_json(&m))
        }
        Cmd::Det(a) => {
            let module = a.module()?;
            let d = module.shapovalov_determinant(a.level)?;
            if module.is_numeric() {
                Output::ok(d.to_string(), json!({"determinant": poly_to_json(&d)}))
            } else {
                let f = factor_determinant(&d, a.level);
                let factors: Vec<Value> = f
                    .factors
                    .iter()
                    .map(|(p, e)| json!({"factor": poly_to_json(p), "power": e}))
                    .collect();
                Output::ok(
                    f.to_string(),
                    json!({
                        "determinant": poly_to_json(&d),
                        "factored": {
                            "constant": rational_to_json(&f.constant),
                            "factors": factors,
                            "rest": poly_to_json(&f.rest),
                        },
                    }),
                )
            }
        }
        Cmd::Singular(a) => {
            let module = a.module()?;
            let sing = singular_vectors(&module, a.level)?;
            let text: Vec<String> = sing.iter().map(|v| v.to_string()).collect();
            let text = if text.is_empty() { "none".to_string() } else { text.join("\n") };
            Output::ok(
                text,
                Value::Array(sing.iter().map(|v| module_vector_to_json(&module, v)).collect()),
            )
        }
        Cmd::Radical(a) => {
            let d = radical_dimension(&a.module()?, a.level)?;
            Output::ok(d.to_string(), json!({"level": a.level, "dimension": d}))
        }
        Cmd::HomCheck {
            module,
            s1,
            s2,
            reference,
        } => {
            let (target, v1, v2) = if *reference {
                let (v1, v2) = report::reference_singular_pair();
                let m = match (&module.c, &module.h) {
                    (None, None) => JordanVermaModule::numeric(Rational::one(), Rational::one(), 2)?,
                    _ => module.module()?,
                };
                (m, v1, v2)
            } else {
                let (Some(s1), Some(s2)) = (s1, s2) else {
                    bail!("give --s1 FILE and --s2 FILE, or --reference");
                };
                (module.module()?, load_vector(s1)?, load_vector(s2)?)
            };
            let ok = check_hom_pair(&target, &v1, &v2)?;
            Output::ok(ok.to_string(), json!({"homomorphism": ok}))
        }
        Cmd::Fusion(args) => {
            let (level, v, op) = lowest_singular(args)?;
            let d = indicial_polynomial(&op, &Poly::constant(args.h1.clone()), &Poly::constant(args.h2.clone()))?;
            let mut j = indicial_to_json(&d);
            j["operator"] = euler_to_json(&op);
            let text = format!(
                "singular vector (level {level}): {v}\noperator: {op}\nindicial: {}\nfusion polynomial: {}\nroots: {}\nlogarithmic: {}",
                d.indicial.to_mpoly(),
                d.fusion_h3.to_mpoly(),
                roots_text(&d.roots),
                d.logarithmic
            );
            Output::ok(text, j)
        }
        Cmd::EulerSolve {
            fusion,
            rhs,
            rhs_exp,
            rhs_log,
        } => {
            let (_, _, op) = lowest_singular(fusion)?;
            let coeff: Poly = rhs.parse()?;
            let rhs = LogSeries::term(rhs_exp.clone(), *rhs_log, coeff);
            let sol = solve_euler(&op, &rhs)?;
            let hom: Vec<String> = sol.homogeneous.iter().map(|h| h.to_string()).collect();
            let text = format!(
                "operator: {op}\nhomogeneous: {}\nparticular: {}",
                hom.join(", "),
                sol.particular
            );
            Output::ok(
                text,
                json!({
                    "operator": euler_to_json(&op),
                    "homogeneous": sol.homogeneous.iter().map(log_series_to_json).collect::<Vec<_>>(),
                    "particular": log_series_to_json(&sol.particular),
                }),
            )
        }
        Cmd::OpeCoeff { c, h } => {
            let a = ope_level2_coefficient(c, h)?;
            Output::ok(a.to_string(), rational_to_json(&a))
        }
        Cmd::Fixture { case } => {
            let case: FixtureCase = case.parse()?;
            let printed = fixture_polynomial(case)?;
            let printed_roots = rational_roots(&printed)?.roots;
            let (c, h1, h2, level) = case.params()?;
            let (_, _, op) = lowest_singular(&FusionArgs {
                c,
                h1: h1.clone(),
                h2: h2.clone(),
                level: Some(level),
            })?;
            let d = indicial_polynomial(&op, &Poly::constant(h1), &Poly::constant(h2))?;
            let same_set = printed_roots.iter().map(|r| &r.0).eq(d.roots.iter().map(|r| &r.0));
            let same_multiset = printed_roots == d.roots;
            let text = format!(
                "case: {case}\nprinted: {printed}\nprinted roots: {}\ncomputed roots: {}\nroot sets agree: {same_set}\nmultiplicities agree: {same_multiset}",
                roots_text(&printed_roots),
                roots_text(&d.roots)
            );
            let roots = |r: &[(Rational, usize)]| -> Value {
                r.iter().map(|(x, m)| json!([rational_to_json(x), m])).collect()
            };
            Output::ok(
                text,
                json!({
                    "case": case.to_string(),
                    "printed": qpoly_to_json(&printed),
                    "printed_roots": roots(&printed_roots),
                    "computed": indicial_to_json(&d),
                    "agree": same_set,
                    "multiplicities_agree": same_multiset,
                }),
            )
        }
        Cmd::DetermineB { h } => {
            let b = determine_b(h)?;
            Output::ok(b.to_string(), rational_to_json(&b))
        }
        Cmd::Wlog(w) => run_wlog(w)?,
        Cmd::Report { criterion } => {
            let results = match criterion {
                Some(n) if report::CRITERIA.contains(n) => report::run_criterion(*n),
                Some(n) => bail!("no criterion {n}; expected 1-9"),
                None => report::run_all(),
            };
            Output {
                text: render_table(&results),
                json: report_to_json(&results),
                code: if any_failed(&results) { 2 } else { 0 },
            }
        }
    })
}

fn run_wlog(w: &WlogCmd) -> Result<Output> {
    Ok(match w {
        WlogCmd::Bracket { a, b, cocycle } => {
            let e = wlog_bracket(*a, *b, *cocycle)?;
            Output::ok(e.to_string(), wlog_element_to_json(&e))
        }
        WlogCmd::Cocycle { a, b, cocycle: mode } => {
            let (WLogGenerator::T(x), WLogGenerator::T(y)) = (a, b) else {
                bail!("the cocycle is defined on t(i,m) generators only");
            };
            let v = cocycle(*x, *y, *mode)?;
            Output::ok(v.to_string(), rational_to_json(&v))
        }
        WlogCmd::Vev {
            word,
            pair,
            cocycle,
            polarization,
        } => {
            let right: WLogWord = word.parse()?;
            let v = match pair {
                Some(left) => pairing(&left.parse()?, &right, *cocycle, *polarization)?,
                None => vacuum_expectation(&right, *cocycle, *polarization)?,
            };
            Output::ok(v.to_string(), poly_to_json(&v))
        }
        WlogCmd::Jacobi { range, cocycle } => {
            if *range < 1 {
                bail!("--range must be at least 1");
            }
            let r = check_jacobi(*range, *cocycle);
            let shown: Vec<String> = r
                .violations
                .iter()
                .take(20)
                .map(|[a, b, c]| format!("{a} {b} {c}"))
                .collect();
            let mut text = format!(
                "cocycle {}: {} triples checked, {} skipped, {} violations",
                r.cocycle,
                r.checked,
                r.skipped,
                r.violations.len()
            );
            for s in &shown {
                text.push_str("\n  ");
                text.push_str(s);
            }
            let viol: Vec<Value> = r
                .violations
                .iter()
                .map(|t| Value::Array(t.iter().map(|g| json!([g.log, g.mode])).collect()))
                .collect();
            Output::ok(
                text,
                json!({
                    "cocycle": r.cocycle.to_string(),
                    "range": r.range,
                    "checked": r.checked,
                    "skipped": r.skipped,
                    "violations": viol,
                }),
            )
        }
        WlogCmd::Deviations { range } => {
            let d = deviations_report(*range);
            let lines: Vec<String> = d
                .iter()
                .map(|x| format!("{} {}: closed {} residue {}", x.a, x.b, x.closed, x.residue))
                .collect();
            let text = if lines.is_empty() { "none".to_string() } else { lines.join("\n") };
            Output::ok(text, deviations_to_json(&d))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut doc = if cli.json {
        serde_json::to_string_pretty(&out.json).expect("serializable")
    } else {
        out.text
    };
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, doc) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{doc}"),
    }
    ExitCode::from(out.code)
}
