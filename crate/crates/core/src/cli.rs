//! Command-line front end. Every subcommand produces a [`Report`]; the exit
//! code is 0 when all its checks pass, 1 when some check fails and 2 on an
//! input or computation error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::algebra::{Poly, VarSpace};
use crate::delta::growth_sequence;
use crate::error::{Error, Result};
use crate::expr::{parse_expression_with, EvalOptions, Value};
use crate::harmonic::{harmonic_decompose, so3_project};
use crate::lorentz::{generator, lorentz_generators, GeneratorKind, GeneratorSpec};
use crate::report::{Check, Report};
use crate::sampling::DEFAULT_SEED;
use crate::spinor::{
    cg_decompose, check_covariant_identities, covariant_poly, diagonal_count, extract_invariant,
    kernel_test, make_covariant, reflection_parity, RepLabel,
};
use crate::split::{
    boost_matrix, boost_matrix_closed_form, coefficient_bound_check, cokernel_report,
    invariant_completion_traced, inverse_bound_check, is_lorentz_invariant, solve_boost_equation,
};
use crate::taylor::lemma3_decompose;
use crate::verify::suite_report;

#[derive(Parser, Debug)]
#[command(
    name = "lorentz-delta",
    version,
    about = "Exact Lorentz-invariant delta expansions"
)]
pub struct Cli {
    /// Emit compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Emit a human-readable check list instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Solve N_1 v0 = u in degree n and check the coefficient bound.
    SolveBoost {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        u: String,
    },
    /// Replace v+, v- by Lorentz-invariant w+, w- with the same difference.
    Split {
        #[arg(long)]
        plus: String,
        #[arg(long)]
        minus: String,
    },
    /// Decompose a spatial polynomial into harmonic pieces.
    Harmonic {
        #[arg(long)]
        poly: String,
    },
    /// Rotation-invariant part of a homogeneous momentum polynomial.
    ProjectSo3 {
        #[arg(long)]
        poly: String,
    },
    /// The boost matrix of degree n.
    Matrix {
        #[arg(long)]
        n: u32,
    },
    /// Inverse closed forms and the 2^(n/2) bound for n = 1..=n_max.
    Bounds {
        #[arg(long)]
        n_max: u32,
    },
    /// Two-dimensional cokernel of the boost for n = 0..=n_max.
    Cokernel2d {
        #[arg(long)]
        n_max: u32,
    },
    /// The covariant (wb x w)^s2 and the operator identities.
    Covariant {
        #[arg(long)]
        s2: u32,
    },
    /// Which powers of p^2 the covariant operator annihilates.
    KernelCheck {
        #[arg(long)]
        s2: u32,
        #[arg(long)]
        l_max: u32,
    },
    /// Clebsch-Gordan series of (r,s) x (s,r), spins doubled.
    Cg {
        #[arg(long)]
        r2: u32,
        #[arg(long)]
        s2: u32,
    },
    /// Recover an invariant functional from its covariant image.
    Extract {
        #[arg(long)]
        s2: u32,
        #[arg(long)]
        w: String,
    },
    /// Write f = sum_i x_i^(m+1) f_i for f with vanishing low-order jet.
    Lemma3 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        poly: String,
        /// Number of coordinates x0..x(dim-1).
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// Growth sequence m_n = n^beta max |c_k|^(1/n).
    Growth {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Run the full verification suite.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn opts(space: VarSpace) -> EvalOptions {
    EvalOptions {
        dim: 4,
        default_space: space,
    }
}

fn parse_poly(text: &str, o: &EvalOptions, space: VarSpace) -> Result<Poly> {
    let p = parse_expression_with(text, o)?.as_poly(o, space)?;
    if p.space() != space {
        return Err(Error::SpaceMismatch {
            left: space,
            right: p.space(),
        });
    }
    Ok(p)
}

fn parse_rational(text: &str) -> Result<BigRational> {
    match parse_expression_with(text, &opts(VarSpace::Position))? {
        Value::Scalar(c) if c.is_real() => Ok(c.re().clone()),
        other => Err(Error::Type(format!(
            "expected a real rational, got {other}"
        ))),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Json {
    Json::Array(
        items
            .into_iter()
            .map(|s| Json::String(s.to_string()))
            .collect(),
    )
}

/// Runs one subcommand.
pub fn execute(cmd: &Command) -> Result<Report> {
    let p_opts = opts(VarSpace::Momentum);
    let x_opts = opts(VarSpace::Position);
    match cmd {
        Command::SolveBoost { n, u } => {
            let up = parse_poly(u, &p_opts, VarSpace::Momentum)?;
            let s = coefficient_bound_check(&up, *n)?;
            let mut r = s
                .to_report("solve-boost")
                .input("n", *n)
                .input("u", u.as_str());
            r.output("v0", solve_boost_equation(&up, *n)?.to_string());
            Ok(r)
        }
        Command::Split { plus, minus } => {
            let vp = parse_expression_with(plus, &x_opts)?.as_delta(4)?;
            let vm = parse_expression_with(minus, &x_opts)?.as_delta(4)?;
            let c = invariant_completion_traced(&vp, &vm)?;
            let mut r = Report::new("split")
                .input("plus", plus.as_str())
                .input("minus", minus.as_str());
            r.output("w_plus", c.w_plus.to_string());
            r.output("w_minus", c.w_minus.to_string());
            r.output(
                "steps",
                Json::Array(
                    c.steps
                        .iter()
                        .map(|s| {
                            json!({
                                "degree": s.degree,
                                "projected": s.projected.to_string(),
                                "boost_image": s.target.to_string(),
                                "boost_solution": s.solution.to_string(),
                            })
                        })
                        .collect(),
                ),
            );
            r.push(Check::equal(
                "w+ invariant",
                true,
                is_lorentz_invariant(&c.w_plus),
            ));
            r.push(Check::equal(
                "w- invariant",
                true,
                is_lorentz_invariant(&c.w_minus),
            ));
            r.push(Check::equal(
                "w+ - w- equals v+ - v-",
                vp.checked_sub(&vm)?,
                c.w_plus.checked_sub(&c.w_minus)?,
            ));
            Ok(r)
        }
        Command::Harmonic { poly } => {
            let q = parse_poly(poly, &p_opts, VarSpace::Momentum)?;
            let d = harmonic_decompose(&q)?;
            let laplace = generator(&GeneratorSpec::new(
                GeneratorKind::Laplace3,
                VarSpace::Momentum,
                4,
            )?);
            let mut r = Report::new("harmonic").input("poly", poly.as_str());
            r.output("degree", d.degree);
            r.output(
                "parts",
                Json::Array(
                    d.parts
                        .iter()
                        .map(|(k, h)| json!({ "power_of_spatial_square": k, "harmonic": h.to_string() }))
                        .collect(),
                ),
            );
            r.push(Check::equal("reassembly", &q, d.reassemble()));
            for (k, h) in &d.parts {
                r.push(Check::equal(
                    format!("k={k}: laplace3 h"),
                    "0",
                    laplace.apply(h)?,
                ));
            }
            Ok(r)
        }
        Command::ProjectSo3 { poly } => {
            let p = parse_poly(poly, &p_opts, VarSpace::Momentum)?;
            let proj = so3_project(&p)?;
            let mut r = Report::new("project-so3").input("poly", poly.as_str());
            r.output("projection", proj.to_string());
            r.push(Check::equal("idempotent", &proj, so3_project(&proj)?));
            for spec in lorentz_generators(VarSpace::Momentum) {
                if matches!(spec.kind(), GeneratorKind::Rotation(..)) {
                    r.push(Check::equal(
                        format!("{spec} annihilates"),
                        "0",
                        generator(&spec).apply(&proj)?,
                    ));
                }
            }
            Ok(r)
        }
        Command::Matrix { n } => {
            let m = boost_matrix(*n)?;
            let mut r = Report::new("matrix").input("n", *n);
            r.output("matrix", m.to_string());
            r.push(Check::equal(
                "closed form",
                boost_matrix_closed_form(*n)?,
                &m,
            ));
            Ok(r)
        }
        Command::Bounds { n_max } => {
            let mut r = Report::new("bounds").input("n_max", *n_max);
            let mut maxima = serde_json::Map::new();
            for n in 1..=*n_max {
                let s = inverse_bound_check(n)?;
                if let Some(m) = &s.max_abs_inverse_entry {
                    maxima.insert(n.to_string(), m.to_string().into());
                }
                r.extend(s.checks.into_iter().map(|c| Check {
                    name: format!("n={n}: {}", c.name),
                    ..c
                }));
            }
            r.output("max_abs_inverse_entry", Json::Object(maxima));
            Ok(r)
        }
        Command::Cokernel2d { n_max } => {
            let mut r = Report::new("cokernel2d").input("n_max", *n_max);
            for n in 0..=*n_max {
                let c = cokernel_report(n);
                r.push_outputs(&format!("n={n}"), &c);
                r.extend(c.checks.into_iter().map(|k| Check {
                    name: format!("n={n}: {}", k.name),
                    ..k
                }));
            }
            Ok(r)
        }
        Command::Covariant { s2 } => {
            let cov = covariant_poly(*s2, VarSpace::Position);
            let mut r = Report::new("covariant").input("s2", *s2);
            r.output("covariant", cov.to_string());
            r.output("reflection_parity", reflection_parity(*s2));
            r.push(Check::equal("slot count", (s2 + 1).pow(2), cov.len()));
            r.extend(check_covariant_identities().checks);
            Ok(r)
        }
        Command::KernelCheck { s2, l_max } => {
            let mut r = Report::new("kernel-check")
                .input("s2", *s2)
                .input("l_max", *l_max);
            for l in 0..=*l_max {
                r.push(Check::equal(
                    format!("l={l}: annihilated"),
                    l < *s2,
                    kernel_test(*s2, l),
                ));
            }
            Ok(r)
        }
        Command::Cg { r2, s2 } => {
            let series = cg_decompose(RepLabel::new(*r2, *s2));
            let mut r = Report::new("cg").input("r2", *r2).input("s2", *s2);
            r.output("representations", strings(&series));
            r.output("count", series.len());
            r.output("diagonal_count", diagonal_count(&series));
            r.push(Check::equal(
                "count",
                (r2.abs_diff(*s2)..=r2 + s2).step_by(2).count().pow(2),
                series.len(),
            ));
            r.push(Check::equal(
                "diagonal count",
                r2.min(s2) + 1,
                diagonal_count(&series),
            ));
            Ok(r)
        }
        Command::Extract { s2, w } => {
            let wv = parse_expression_with(w, &x_opts)?.as_spinor_delta(*s2)?;
            let e = extract_invariant(&wv, *s2)?;
            let mut r = Report::new("extract")
                .input("s2", *s2)
                .input("w", w.as_str());
            r.output("v", e.v.to_string());
            r.output("ambiguity_orders", Json::from(e.ambiguity.clone()));
            r.push(Check::equal(
                "covariant image reproduces w",
                &wv,
                make_covariant(&e.v, *s2)?,
            ));
            r.push(Check::equal(
                "v invariant",
                true,
                is_lorentz_invariant(&e.v),
            ));
            Ok(r)
        }
        Command::Lemma3 { m, poly, dim } => {
            let o = EvalOptions {
                dim: *dim,
                default_space: VarSpace::Position,
            };
            let f = parse_poly(poly, &o, VarSpace::Position)?;
            let d = lemma3_decompose(&f, *m)?;
            let mut r = Report::new("lemma3")
                .input("m", *m)
                .input("poly", poly.as_str())
                .input("dim", *dim);
            r.output("parts", strings(&d.parts));
            r.output("steps", strings(&d.steps));
            r.push(Check::equal("reassembly", &f, d.reassemble(*m)));
            Ok(r)
        }
        Command::Growth {
            beta,
            coeffs,
            n_max,
        } => {
            let b = parse_rational(beta)?;
            let v = parse_expression_with(coeffs, &x_opts)?;
            let dim = match &v {
                Value::Delta(d) => d.dim(),
                _ => 1,
            };
            let v = v.as_delta(dim)?;
            let n_max = n_max.unwrap_or_else(|| v.max_order().unwrap_or(0));
            let m = growth_sequence(&v, n_max, &b);
            let mut r = Report::new("growth")
                .input("beta", beta.as_str())
                .input("coeffs", coeffs.as_str())
                .input("n_max", n_max);
            r.output("sequence", strings(m.iter().map(|x| format!("{x:.12}"))));
            Ok(r)
        }
        Command::VerifyAll { seed } => Ok(suite_report(*seed)),
    }
}

impl Report {
    fn push_outputs(&mut self, prefix: &str, other: &Report) {
        for (k, v) in &other.outputs {
            self.output(&format!("{prefix}: {k}"), v.clone());
        }
    }
}

fn render(report: &Report, cli: &Cli, elapsed_ms: Option<u128>) -> String {
    if cli.pretty {
        let mut s = report.to_string();
        if let Some(ms) = elapsed_ms {
            s.push_str(&format!("time: {ms} ms\n"));
        }
        return s;
    }
    match elapsed_ms {
        None => report.to_json(false),
        Some(ms) => {
            let mut v = report.to_value();
            v["timing_ms"] = ms.to_string().into();
            v.to_string()
        }
    }
}

/// Parses arguments, runs the command and writes the report to `out`.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let start = Instant::now();
    let result = execute(&cli.command);
    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    match result {
        Ok(report) => {
            let _ = writeln!(out, "{}", render(&report, &cli, elapsed).trim_end());
            if report.pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
