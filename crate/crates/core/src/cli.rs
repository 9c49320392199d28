//! Command-line front end. Exit codes: 0 success or analytic, 1 checked and
//! failed, 2 usage, parse or I/O error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{
    structure_tensor, verify_algebra_identities, Algebra, Element, IdentityCheck, StructureFile,
};
use crate::cayley_dickson::find_isomorphism;
use crate::cr::{
    check_function, contraction_violations, dirac_matrix, factorization_holds, Form, Variant,
};
use crate::error::Error;
use crate::expr::load_function;
use crate::matrix_rep::{homomorphism_holds, MixedRule};
use crate::sample::{self, DEFAULT_SEED};
use crate::scalar::{format_rational, parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Real,
    Quat,
    Complex,
    Vector,
    Jadczyk,
    Kappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Analytic,
    Antianalytic,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Analytic => Variant::Analytic,
            VariantArg::Antianalytic => Variant::Antianalytic,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cayley-cr",
    version,
    about = "Composition-algebra arithmetic and Cauchy-Riemann checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis multiplication table and ε triples.
    Table {
        #[arg(long)]
        n: usize,
    },
    /// Exact algebraic and operator identities.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, hide = true)]
        structure: Option<PathBuf>,
    },
    /// Residual of a function under one Cauchy-Riemann form.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormArg::Real)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Analytic)]
        variant: VariantArg,
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        expr: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// The symbolic Dirac operator matrix.
    EmitMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Analytic)]
        variant: VariantArg,
    },
    /// Signed-permutation isomorphism between two structure files.
    Iso { a: PathBuf, b: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<(i32, String), Error>;

fn execute(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    match &cli.command {
        Command::Table { n } => cmd_table(*n, cfg.format),
        Command::Verify { n, structure } => cmd_verify(*n, structure.as_deref(), cfg),
        Command::Check {
            n,
            form,
            variant,
            kappa,
            expr,
            file,
        } => {
            let source = match (expr, file) {
                (Some(e), _) => e.clone(),
                (None, Some(p)) => read(p)?,
                (None, None) => unreachable!("clap requires one of --expr/--file"),
            };
            let form = build_form(*form, (*variant).into(), kappa.as_deref())?;
            cmd_check(*n, &source, &form, cfg)
        }
        Command::EmitMatrix { n, variant } => cmd_emit_matrix(*n, (*variant).into(), cfg.format),
        Command::Iso { a, b } => cmd_iso(a, b, cfg.format),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn build_form(form: FormArg, variant: Variant, kappa: Option<&str>) -> Result<Form, Error> {
    Ok(match form {
        FormArg::Real => Form::Real(variant),
        FormArg::Quat => Form::Quaternionic(variant),
        FormArg::Complex => Form::Complex(variant),
        FormArg::Vector => Form::Vector,
        FormArg::Jadczyk => Form::Jadczyk,
        FormArg::Kappa => {
            let k = kappa.ok_or_else(|| Error::Usage("--form kappa needs --kappa p/q".into()))?;
            Form::Kappa(parse_rational(k)?)
        }
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

/// `Σ c_σ e_σ` as text, e.g. `-e0`, `1/2*e1 + e3`, `0`.
pub fn render_element(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (sigma, c) in coeffs.iter().enumerate() {
        if c == &Rational::from_integer(0.into()) {
            continue;
        }
        let negative = c < &Rational::from_integer(0.into());
        let mag = if negative { -c.clone() } else { c.clone() };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mag != Rational::from_integer(1.into()) {
            let _ = write!(out, "{}*", format_rational(&mag));
        }
        let _ = write!(out, "e{sigma}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
struct TableJson {
    #[serde(rename = "N")]
    n: usize,
    table: Vec<Vec<String>>,
    epsilon: Vec<(usize, usize, usize, i8)>,
}

pub fn cmd_table(n: usize, format: Format) -> Outcome {
    let alg = structure_tensor(n)?;
    let mut table = vec![vec![String::new(); n]; n];
    for (mu, row) in table.iter_mut().enumerate() {
        for (nu, cell) in row.iter_mut().enumerate() {
            let p = Element::<Rational>::basis(&alg, mu)?.multiply(&Element::basis(&alg, nu)?)?;
            *cell = render_element(p.coeffs());
        }
    }
    let epsilon: Vec<_> = alg
        .epsilon()
        .iter()
        .map(|t| (t.i, t.j, t.k, t.sign))
        .collect();
    let text = match format {
        Format::Json => to_json(&TableJson { n, table, epsilon }),
        Format::Csv => {
            let mut s = String::from("left");
            for nu in 0..n {
                let _ = write!(s, ",e{nu}");
            }
            s.push('\n');
            for (mu, row) in table.iter().enumerate() {
                let _ = write!(s, "e{mu}");
                for cell in row {
                    let _ = write!(s, ",{}", quote(cell));
                }
                s.push('\n');
            }
            s
        }
        Format::Plain => {
            let mut s = format!("N = {n}\n");
            for (mu, row) in table.iter().enumerate() {
                for (nu, cell) in row.iter().enumerate() {
                    let _ = writeln!(s, "e{mu}*e{nu} = {cell}");
                }
            }
            s.push_str("epsilon triples:\n");
            for (i, j, k, sign) in &epsilon {
                let _ = writeln!(s, "({i}, {j}, {k}) {sign:+}");
            }
            s
        }
    };
    Ok((EXIT_OK, text))
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(rename = "N")]
    n: usize,
    seed: u64,
    samples: usize,
    passed: bool,
    checks: Vec<IdentityCheck>,
}

fn load_verify_algebra(n: Option<usize>, structure: Option<&Path>) -> Result<Algebra, Error> {
    match (n, structure) {
        (_, Some(path)) => {
            let alg = StructureFile::from_json(&read(path)?)?;
            if let Some(n) = n.filter(|n| *n != alg.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alg.dim(),
                });
            }
            Ok(alg)
        }
        (Some(n), None) => structure_tensor(n),
        (None, None) => Err(Error::Usage("verify needs --n".into())),
    }
}

pub fn cmd_verify(n: Option<usize>, structure: Option<&Path>, cfg: &RunConfig) -> Outcome {
    let alg = load_verify_algebra(n, structure)?;
    let n = alg.dim();
    let mut checks = verify_algebra_identities(&alg, cfg.samples, cfg.seed).checks;
    if n >= 2 {
        checks.push(IdentityCheck {
            name: "factorization".into(),
            cases: 2,
            passed: factorization_holds(&alg),
            counterexample: None,
        });
        let bad = contraction_violations(&alg);
        checks.push(IdentityCheck {
            name: "contraction-identity".into(),
            cases: n * n * n,
            passed: bad.is_empty(),
            counterexample: bad
                .first()
                .map(|(mu, nu, s)| format!("mu={mu} nu={nu} d{s}")),
        });
    }
    if n == 8 {
        let mut r = sample::rng(cfg.seed.wrapping_add(1));
        let mut check = IdentityCheck {
            name: "matrix-homomorphism".into(),
            cases: cfg.samples,
            passed: true,
            counterexample: None,
        };
        let octo = structure_tensor(8)?;
        for _ in 0..cfg.samples {
            let x = crate::algebra::random_element(&octo, &mut r);
            let y = crate::algebra::random_element(&octo, &mut r);
            if !homomorphism_holds(&alg, &x, &y, MixedRule::Printed)? {
                check.passed = false;
                check.counterexample = Some(format!(
                    "{} | {}",
                    render_element(x.coeffs()),
                    render_element(y.coeffs())
                ));
                break;
            }
        }
        checks.push(check);
    }
    let passed = checks.iter().all(|c| c.passed);
    let text = match cfg.format {
        Format::Json => to_json(&VerifyJson {
            n,
            seed: cfg.seed,
            samples: cfg.samples,
            passed,
            checks,
        }),
        Format::Csv => {
            let mut s = String::from("check,cases,passed,counterexample\n");
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    c.name,
                    c.cases,
                    c.passed,
                    quote(c.counterexample.as_deref().unwrap_or(""))
                );
            }
            s
        }
        Format::Plain => {
            let mut s = format!("N = {n}, seed = {}, samples = {}\n", cfg.seed, cfg.samples);
            for c in &checks {
                match (&c.passed, &c.counterexample) {
                    (true, _) => {
                        let _ = writeln!(s, "PASS {} ({} cases)", c.name, c.cases);
                    }
                    (false, Some(ce)) => {
                        let _ = writeln!(s, "FAIL {}: {ce}", c.name);
                    }
                    (false, None) => {
                        let _ = writeln!(s, "FAIL {}", c.name);
                    }
                }
            }
            s
        }
    };
    Ok((if passed { EXIT_OK } else { EXIT_FAILED }, text))
}

pub fn cmd_check(n: usize, source: &str, form: &Form, cfg: &RunConfig) -> Outcome {
    let alg = structure_tensor(n)?;
    if !form.supports(n) {
        return Err(Error::UnsupportedForm { form: form.id(), n });
    }
    let u = load_function(source, &alg)?;
    let report = check_function(&u, &alg, form, cfg.samples, cfg.seed, cfg.tol)?;
    let code = if report.is_analytic() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("point,max,l2\n");
            for (p, r) in report.points.iter().zip(&report.per_point) {
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    quote(&p.join(" ")),
                    quote(&r.max),
                    quote(&r.l2)
                );
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "form: {}", report.form);
            if let Some(k) = &report.kappa {
                let _ = writeln!(s, "kappa: {k}");
            }
            let _ = writeln!(s, "points: {}", report.points.len());
            let _ = writeln!(s, "max_residual: {}", report.max_residual);
            let _ = writeln!(s, "tolerance: {}", report.tolerance);
            let _ = writeln!(s, "seed: {}", report.seed);
            let _ = writeln!(s, "verdict: {}", report.verdict);
            s
        }
    };
    Ok((code, text))
}

pub fn cmd_emit_matrix(n: usize, variant: Variant, format: Format) -> Outcome {
    let rows = dirac_matrix(n, variant)?.render();
    let text = match format {
        Format::Json => to_json(&rows),
        Format::Csv => rows.iter().map(|r| r.join(",") + "\n").collect(),
        Format::Plain => rows
            .iter()
            .map(|r| format!("[{}]\n", r.join(", ")))
            .collect(),
    };
    Ok((EXIT_OK, text))
}

#[derive(Serialize)]
struct IsoJson {
    found: bool,
    perm: Option<Vec<usize>>,
    signs: Option<Vec<i8>>,
}

pub fn cmd_iso(a: &Path, b: &Path, format: Format) -> Outcome {
    let alg_a = StructureFile::from_json(&read(a)?)?;
    let alg_b = StructureFile::from_json(&read(b)?)?;
    let found = find_isomorphism(&alg_a, &alg_b)?;
    let code = if found.is_some() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let text = match format {
        Format::Json => to_json(&IsoJson {
            found: found.is_some(),
            perm: found.as_ref().map(|p| p.perm.clone()),
            signs: found.as_ref().map(|p| p.signs.clone()),
        }),
        Format::Csv => match &found {
            Some(p) => {
                let mut s = String::from("from,to,sign\n");
                for (i, (t, sg)) in p.perm.iter().zip(&p.signs).enumerate() {
                    let _ = writeln!(s, "e{i},e{t},{sg}");
                }
                s
            }
            None => "none\n".into(),
        },
        Format::Plain => match &found {
            Some(p) => format!("{p}\n"),
            None => "none\n".into(),
        },
    };
    Ok((code, text))
}
