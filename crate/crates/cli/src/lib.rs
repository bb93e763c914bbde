//! Batch front end for `rinehart`: reads a structure file, runs one command
//! and reports the result as text or JSON.
//!
//! Exit codes: 0 on success, 1 when the structure fails its axioms (the
//! witness is printed), 2 on input or parse errors.

pub mod format;
pub mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use rinehart::{
    nakayama_free, nakayama_hypersurface, nakayama_poisson, parse_poly, parse_u_expr, Error,
    JacobiCheck, NakayamaResult, Validation,
};

pub use format::{Structure, StructureFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Validate Jacobi or the Lie-Rinehart axioms.
    Check,
    /// Nakayama shifts, their verification and the Calabi-Yau verdict.
    Nakayama,
    /// Evaluate a Poisson bracket given with `-e "{f,g}"`.
    Bracket,
    /// PBW normal form of a U-expression given with `-e`.
    Nf,
    /// Everything at once; use `--json` for the machine-readable document.
    Report,
}

#[derive(Debug, Parser)]
#[command(name = "rinehart", version, about = "Nakayama automorphisms of Lie-Rinehart enveloping algebras")]
pub struct Args {
    pub command: Command,
    pub file: PathBuf,
    /// Expression for `bracket` and `nf`.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
    /// Emit JSON (for `report`).
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// The structure parsed but violates its axioms.
    Invalid(String),
    /// Unreadable or malformed input.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    pub(crate) fn core_input(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid structure: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// `None` when the structure satisfies its axioms, otherwise a witness.
pub fn witness(s: &Structure) -> Option<String> {
    match s {
        Structure::Poisson(ps) => match ps.check_jacobi() {
            JacobiCheck::Pass => None,
            JacobiCheck::Fail { triple, jacobiator } => {
                let v = ps.ring().variables();
                Some(format!(
                    "jacobiator({}, {}, {}) = {jacobiator}",
                    v[triple.0], v[triple.1], v[triple.2]
                ))
            }
        },
        Structure::LieRinehart(lr) => match lr.validate() {
            Validation::Pass => None,
            Validation::Fail {
                axiom,
                indices: (i, j, k),
                defect,
            } => {
                let g = lr.names();
                let third = if axiom == rinehart::Axiom::AnchorHomomorphism {
                    lr.ring().variables()[k].clone()
                } else {
                    g[k].clone()
                };
                Some(format!("{axiom} fails at ({}, {}, {third}): {defect}", g[i], g[j]))
            }
        },
        // the Nambu bracket satisfies Jacobi modulo P by construction
        Structure::Nambu { .. } => None,
    }
}

fn require_valid(s: &Structure) -> Result<(), CliError> {
    match witness(s) {
        None => Ok(()),
        Some(w) => Err(CliError::Invalid(w)),
    }
}

pub fn nakayama(s: &Structure) -> Result<NakayamaResult, CliError> {
    require_valid(s)?;
    let result = match s {
        Structure::Poisson(ps) => nakayama_poisson(ps),
        Structure::LieRinehart(lr) => nakayama_free(lr),
        Structure::Nambu { h, q } => nakayama_hypersurface(h, q),
    };
    result.map_err(|e| CliError::Invalid(e.to_string()))
}

/// Splits `{f,g}` at its top-level comma.
fn bracket_operands(expr: &str) -> Result<(&str, &str), CliError> {
    let bad = || CliError::Input(format!("expected `{{f,g}}`, got `{expr}`"));
    let inner = expr
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(bad)?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    Err(bad())
}

pub fn bracket(s: &Structure, expr: &str) -> Result<String, CliError> {
    let (f, g) = bracket_operands(expr)?;
    let ring = s.ring();
    let f = parse_poly(f, ring).map_err(CliError::core_input)?;
    let g = parse_poly(g, ring).map_err(CliError::core_input)?;
    let value = match s {
        Structure::Poisson(ps) => ps.bracket(&f, &g),
        Structure::Nambu { h, q } => h.nambu_bracket(q).and_then(|nb| nb.bracket(h, &f, &g)),
        Structure::LieRinehart(_) => {
            return Err(CliError::Input(
                "bracket needs a poisson or nambu-hypersurface structure".into(),
            ))
        }
    };
    Ok(value.map_err(CliError::core_input)?.to_string())
}

pub fn normal_form(s: &Structure, expr: &str) -> Result<String, CliError> {
    let lr = match s {
        Structure::Poisson(ps) => ps.to_lie_rinehart(),
        Structure::LieRinehart(lr) => lr.clone(),
        Structure::Nambu { .. } => {
            return Err(CliError::Input(
                "nf needs a free structure (poisson or lie-rinehart)".into(),
            ))
        }
    };
    require_valid(s)?;
    let algebra = Arc::new(lr);
    let e = parse_u_expr(expr, &algebra).map_err(CliError::core_input)?;
    Ok(e.to_string())
}

fn check_text(s: &Structure) -> Result<String, CliError> {
    let mut out = format!("kind: {}\n", s.kind());
    if let Structure::Nambu { h, .. } = s {
        out += &format!("t = {}\neuler sum = {}\n", h.t(), h.euler_sum());
    }
    match witness(s) {
        None => {
            out += "valid: true";
            Ok(out)
        }
        Some(w) => Err(CliError::Invalid(w)),
    }
}

/// Runs one command, writing its output to `out`.
pub fn execute(args: &Args, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.file.display())))?;
    run_text(args.command, &text, args.expr.as_deref(), args.json, &args.file.display().to_string(), out)
}

/// [`execute`] on file contents already in memory.
pub fn run_text(
    command: Command,
    text: &str,
    expr: Option<&str>,
    json: bool,
    source: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let file = StructureFile::parse(text)?;
    let need_expr = || expr.ok_or_else(|| CliError::Input("this command needs -e EXPR".into()));
    let body = match command {
        Command::Check => check_text(&file.structure)?,
        Command::Nakayama => nakayama(&file.structure)?.to_string(),
        Command::Bracket => bracket(&file.structure, need_expr()?)?,
        Command::Nf => normal_form(&file.structure, need_expr()?)?,
        Command::Report => {
            let r = report::Report::build(source, &file);
            let body = if json { r.to_json_string() } else { r.to_text() };
            writeln!(out, "{body}").map_err(|e| CliError::Input(e.to_string()))?;
            return match r.witness {
                Some(w) => Err(CliError::Invalid(w)),
                None => Ok(()),
            };
        }
    };
    writeln!(out, "{body}").map_err(|e| CliError::Input(e.to_string()))
}
