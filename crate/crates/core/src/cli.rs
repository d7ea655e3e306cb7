//! Command-line front end. [`run`] takes the argument list and returns the
//! rendered output with an exit status, so the binary stays a thin shim.
//!
//! Exit status: 0 on success, 1 on a domain error (for example a matrix that
//! is not symplectic), 2 on a usage or parse error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bender::{parse_word, verify_relations, word_order, BenderError};
use crate::criterion::{
    burgisser_criterion, enumerate_orders, max_order, order_bound, power_solvable, CriterionError,
    Genus,
};
use crate::matrix::{certified_order, is_symplectic, IntMatrix, MatrixError};

#[derive(Debug, Parser)]
#[command(name = "sptorsion", version, about = "Torsion orders in Sp(2g, Z)")]
pub struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GenusArg {
    #[arg(long)]
    pub genus: u32,
}

#[derive(Debug, Args)]
pub struct GenusOrderArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub m: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All element orders occurring in Sp(2g, Z).
    Orders(GenusArg),
    /// Whether an element of order m exists, with the totient ledger.
    CheckOrder(GenusOrderArgs),
    /// Whether A^m = I has a non-identity solution.
    Solvable(GenusOrderArgs),
    /// Closed-form order bound next to the exact maximal order.
    Bound(GenusArg),
    /// Exact maximal order and its factorization.
    MaxOrder(GenusArg),
    /// Check the eight defining relations of Sp(4, Z) on K and L.
    VerifyPresentation,
    /// Order of a word in K and L.
    WordOrder {
        #[arg(long)]
        word: String,
    },
    /// Order of a symplectic matrix read from a file.
    MatrixOrder {
        #[arg(long)]
        file: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Orders(_) => "orders",
            Command::CheckOrder(_) => "check-order",
            Command::Solvable(_) => "solvable",
            Command::Bound(_) => "bound",
            Command::MaxOrder(_) => "max-order",
            Command::VerifyPresentation => "verify-presentation",
            Command::WordOrder { .. } => "word-order",
            Command::MatrixOrder { .. } => "matrix-order",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<CriterionError> for Failure {
    fn from(e: CriterionError) -> Self {
        match e {
            CriterionError::Overflow(_) => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Criterion(c) => c.into(),
            MatrixError::OddDimension(_) | MatrixError::Empty => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<BenderError> for Failure {
    fn from(e: BenderError) -> Self {
        match e {
            BenderError::Parse(p) => Failure::Usage(p.to_string()),
            BenderError::Matrix(m) => m.into(),
        }
    }
}

/// A command result: text rendering plus JSON payload.
struct Rendered {
    text: String,
    payload: serde_json::Value,
}

fn rendered(text: String, payload: impl Serialize) -> Rendered {
    Rendered {
        text,
        payload: serde_json::to_value(payload).expect("payloads serialize"),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let name = cli.command.name();
    match execute(&cli.command) {
        Ok(r) if cli.json => {
            let envelope = json!({ "command": name, "format": "json", "result": r.payload });
            Outcome::ok(format!("{envelope}\n"))
        }
        Ok(r) => Outcome::ok(r.text),
        Err(Failure::Usage(msg)) => Outcome::fail(2, msg),
        Err(Failure::Domain(msg)) => Outcome::fail(1, msg),
    }
}

fn execute(command: &Command) -> Result<Rendered, Failure> {
    match command {
        Command::Orders(a) => orders(Genus::new(a.genus)?),
        Command::CheckOrder(a) => check_order(Genus::new(a.genus)?, a.m),
        Command::Solvable(a) => solvable(Genus::new(a.genus)?, a.m),
        Command::Bound(a) => bound(Genus::new(a.genus)?),
        Command::MaxOrder(a) => max_order_cmd(Genus::new(a.genus)?),
        Command::VerifyPresentation => presentation(),
        Command::WordOrder { word } => word_order_cmd(word),
        Command::MatrixOrder { file } => matrix_order_cmd(file),
    }
}

fn sp(genus: Genus) -> String {
    format!("Sp({}, Z)", genus.dim())
}

fn orders(genus: Genus) -> Result<Rendered, Failure> {
    let set = enumerate_orders(genus)?;
    let line: Vec<String> = set.iter().map(|m| m.to_string()).collect();
    Ok(rendered(format!("{}\n", line.join(" ")), &set))
}

fn check_order(genus: Genus, m: u64) -> Result<Rendered, Failure> {
    let w = burgisser_criterion(m, genus)?;
    let mut text = format!("m = {m}, genus {genus}, budget {}\n", w.budget);
    if w.case_two_mod_four {
        text.push_str("case: m = 2 mod 4 (factor 2 is free)\n");
    } else {
        text.push_str("case: m != 2 mod 4 (all prime powers counted)\n");
    }
    if w.terms.is_empty() {
        text.push_str("no prime-power terms\n");
    }
    for t in &w.terms {
        if t.exponent == 1 {
            let _ = writeln!(text, "phi({}) = {}", t.prime, t.phi);
        } else {
            let _ = writeln!(text, "phi({}^{}) = {}", t.prime, t.exponent, t.phi);
        }
    }
    let cmp = if w.order_exists { "<=" } else { ">" };
    let _ = writeln!(text, "phi-sum = {} {cmp} {}", w.phi_sum, w.budget);
    if w.order_exists {
        let note = if m == 1 { " (identity)" } else { "" };
        let _ = writeln!(text, "exists: order {m} occurs in {}{note}", sp(genus));
    } else {
        let _ = writeln!(text, "not exists: no element of order {m} in {}", sp(genus));
    }
    Ok(rendered(text, &w))
}

fn solvable(genus: Genus, m: u64) -> Result<Rendered, Failure> {
    let v = power_solvable(m, genus)?;
    let text = match v.witness_prime {
        Some(p) => format!(
            "solvable: A^{m} = I has a non-identity solution in {} (prime {p} <= {} divides {m})\n",
            sp(genus),
            genus.max_prime()
        ),
        None => format!(
            "not solvable: every prime factor of {m} exceeds {}\n",
            genus.max_prime()
        ),
    };
    Ok(rendered(text, v))
}

fn bound(genus: Genus) -> Result<Rendered, Failure> {
    let r = order_bound(genus)?;
    let text = format!(
        "genus {genus}\n\
         alpha = log 2 / log 3 = {}\n\
         2(2g)^(g/alpha) = {}\n\
         (2g)^((g+1)/alpha) = {}\n\
         M = {}\n\
         bound = max{{30, M}} = {}\n\
         exact max order = {} = {}\n",
        crate::criterion::format_significant(r.alpha, 12),
        r.two_mod_four_term,
        r.general_term,
        r.m_value,
        r.analytic_bound,
        r.exact_max_order,
        r.witness_factorization,
    );
    Ok(rendered(text, &r))
}

fn max_order_cmd(genus: Genus) -> Result<Rendered, Failure> {
    let (m, f) = max_order(genus)?;
    let payload = json!({ "genus": genus, "max_order": m, "factorization": f });
    Ok(rendered(format!("{m} = {f}\n"), payload))
}

fn presentation() -> Result<Rendered, Failure> {
    let report = verify_relations()?;
    let mut text = String::new();
    for r in &report.relations {
        let verdict = if r.holds { "holds" } else { "FAILS" };
        let _ = writeln!(text, "({}) {} = {} : {verdict}", r.label, r.lhs, r.rhs);
    }
    let total = report.relations.len();
    let _ = writeln!(text, "{}/{total} relations hold", report.passed());
    let payload = json!({
        "relations": report.relations,
        "passed": report.passed(),
        "total": total,
    });
    Ok(rendered(text, payload))
}

fn word_order_cmd(text: &str) -> Result<Rendered, Failure> {
    let word = parse_word(text).map_err(BenderError::from)?;
    let order = word_order(&word)?;
    let payload = json!({ "word": text, "order": order });
    Ok(rendered(format!("{order}\n"), payload))
}

fn matrix_order_cmd(path: &PathBuf) -> Result<Rendered, Failure> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let matrix: IntMatrix = contents
        .parse()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if !is_symplectic(&matrix)? {
        return Err(Failure::Domain(format!(
            "{}: matrix is not symplectic",
            path.display()
        )));
    }
    let order = certified_order(&matrix)?;
    let payload = json!({ "dim": matrix.dim(), "order": order });
    Ok(rendered(format!("{order}\n"), payload))
}
