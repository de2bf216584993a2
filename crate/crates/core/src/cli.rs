//! Code-file format and the `eaqecc` command line.
//!
//! A code file lists a basis of a code in F_q^{2n}:
//!
//! ```text
//! # [[5,1,3;0]]_2
//! q 2
//! n 5
//! 1 0 0 1 0 | 0 1 1 0 0
//! 0 1 0 0 1 | 0 0 1 1 0
//! ```
//!
//! `q` comes first, then an optional `poly c0 c1 ... cm` line (irreducible
//! polynomial, lowest degree first) for extension fields, then `n`, then
//! one row per line with a `|` between the two halves. `#` starts a
//! comment; blank lines are ignored.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 the
//! enumeration cap was hit.

use std::fmt::{self, Write as _};
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::field::FieldSpec;
use crate::symplectic_code::{
    format_row, random_self_orthogonal, CodeError, LinearCode, DEFAULT_CAP,
};
use crate::transform::{
    compare_applicability, construct_eaqecc, puncture, search_positions, shorten, verify_lemmas,
    ConstructOptions, PositionSet, TheoremReport, TransformError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_int(line: usize, (col, tok): (usize, &str)) -> Result<u64, ParseError> {
    tok.parse::<u64>().map_err(|_| {
        perr(
            line,
            col,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

/// Parses a code file into a code with canonical basis.
pub fn parse_code_file(text: &str) -> Result<LinearCode, ParseError> {
    let mut q: Option<(usize, usize, u64)> = None;
    let mut poly: Option<Vec<u32>> = None;
    let mut header: Option<(FieldSpec, usize)> = None;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col0, first)) = toks.first() else {
            continue;
        };

        if let Some((field, n)) = &header {
            let q = field.q() as u64;
            let bars: Vec<usize> = toks
                .iter()
                .enumerate()
                .filter(|(_, t)| t.1 == "|")
                .map(|(i, _)| i)
                .collect();
            let entries = toks.len() - bars.len();
            if entries != 2 * n {
                return Err(perr(
                    line_no,
                    col0,
                    format!("row has {entries} entries, expected 2n = {}", 2 * n),
                ));
            }
            match bars.as_slice() {
                [b] if *b == *n => {}
                [] => return Err(perr(line_no, col0, "row is missing the `|` separator")),
                [b] => {
                    return Err(perr(
                        line_no,
                        toks[*b].0,
                        format!("`|` must separate the two halves of {n} entries each"),
                    ))
                }
                [_, b, ..] => return Err(perr(line_no, toks[*b].0, "row has more than one `|`")),
            }
            let mut row = Vec::with_capacity(2 * n);
            for &(col, tok) in toks.iter().filter(|t| t.1 != "|") {
                let v = parse_int(line_no, (col, tok))?;
                if v >= q {
                    return Err(perr(
                        line_no,
                        col,
                        format!("entry {v} is not an element of GF({q})"),
                    ));
                }
                row.push(v as u32);
            }
            rows.push(row);
            continue;
        }

        let expect_args = |count: usize| -> Result<(), ParseError> {
            if toks.len() != count + 1 {
                let col = toks.get(count + 1).map_or(col0, |t| t.0);
                return Err(perr(
                    line_no,
                    col,
                    format!("`{first}` takes exactly {count} argument(s)"),
                ));
            }
            Ok(())
        };

        match (first, q.is_some()) {
            ("q", false) => {
                expect_args(1)?;
                q = Some((line_no, toks[1].0, parse_int(line_no, toks[1])?));
            }
            ("q", true) => return Err(perr(line_no, col0, "duplicate `q` header")),
            ("poly", true) if poly.is_none() => {
                if toks.len() < 2 {
                    return Err(perr(line_no, col0, "`poly` needs its coefficients"));
                }
                let coeffs = toks[1..]
                    .iter()
                    .map(|&t| parse_int(line_no, t).map(|v| v.min(u32::MAX as u64) as u32))
                    .collect::<Result<Vec<_>, _>>()?;
                let (_, _, qv) = q.unwrap();
                FieldSpec::from_order(qv, Some(&coeffs))
                    .map_err(|e| perr(line_no, toks[1].0, e.to_string()))?;
                poly = Some(coeffs);
            }
            ("poly", true) => return Err(perr(line_no, col0, "duplicate `poly` header")),
            ("n", true) => {
                expect_args(1)?;
                let n = parse_int(line_no, toks[1])? as usize;
                let (q_line, q_col, qv) = q.unwrap();
                let field = FieldSpec::from_order(qv, poly.as_deref())
                    .map_err(|e| perr(q_line, q_col, e.to_string()))?;
                header = Some((field, n));
            }
            (_, false) => {
                return Err(perr(
                    line_no,
                    col0,
                    format!("expected `q <order>`, found `{first}`"),
                ))
            }
            (other, true) => {
                return Err(perr(
                    line_no,
                    col0,
                    format!("unknown header field `{other}`"),
                ))
            }
        }
    }

    let Some((field, n)) = header else {
        let what = if q.is_some() {
            "`n <length>`"
        } else {
            "`q <order>`"
        };
        return Err(perr(last_line + 1, 1, format!("missing {what} header")));
    };
    LinearCode::from_rows(field, n, &rows).map_err(|e| perr(last_line, 1, e.to_string()))
}

/// Writes `code` in the code-file format (canonical basis order).
pub fn serialize_code(code: &LinearCode) -> String {
    let f = code.field();
    let mut s = String::new();
    writeln!(s, "q {}", f.q()).unwrap();
    if f.m() > 1 {
        let poly: Vec<String> = f.irreducible().iter().map(u32::to_string).collect();
        writeln!(s, "poly {}", poly.join(" ")).unwrap();
    }
    writeln!(s, "n {}", code.n()).unwrap();
    for r in code.basis().row_iter() {
        writeln!(s, "{}", format_row(r, code.n())).unwrap();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Renders a report. The JSON form is the serde encoding of
/// [`TheoremReport`] and parses back to an equal value.
pub fn emit_report(report: &TheoremReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "positions: {}", report.positions).unwrap();
            if let Some(p) = &report.input_params {
                writeln!(s, "input:  {p}").unwrap();
            }
            if let Some(p) = &report.output_params {
                let pure = p.pure_d.map_or("-".to_string(), |d| d.to_string());
                writeln!(s, "output: {p} (dual min weight {pure})").unwrap();
            }
            for c in &report.checks {
                writeln!(
                    s,
                    "{:<7} {}: expected {}, actual {}",
                    c.status.to_string(),
                    c.name,
                    c.expected,
                    c.actual
                )
                .unwrap();
            }
            writeln!(
                s,
                "overall: {}",
                if report.overall { "ok" } else { "failed" }
            )
            .unwrap();
            s
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Code(CodeError::CapExceeded { .. })
            | CliError::Transform(TransformError::Code(CodeError::CapExceeded { .. })) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "eaqecc",
    version,
    about = "Symplectic codes and entanglement-assisted code construction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Code file
    file: String,
    /// Maximum number of codewords a weight search may enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct WithPositions {
    #[command(flatten)]
    common: Common,
    /// 1-indexed positions, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    positions: Vec<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print [[n,k,d;c]]_q parameters
    Params(Common),
    /// Print the symplectic dual
    Dual(Common),
    /// Delete coordinate pairs (i, n+i)
    Puncture(WithPositions),
    /// Keep codewords vanishing at (i, n+i), then delete those coordinates
    Shorten(WithPositions),
    /// Puncture a self-orthogonal code and verify the resulting EAQECC
    Construct {
        #[command(flatten)]
        inner: WithPositions,
        /// Trust this pure distance instead of computing it
        #[arg(long)]
        trusted_d: Option<usize>,
    },
    /// Check the single-position puncture/shorten lemmas
    VerifyLemmas {
        #[command(flatten)]
        common: Common,
        /// Positions to check (default: all)
        #[arg(long, value_delimiter = ',')]
        positions: Vec<usize>,
    },
    /// Run the construction over all position sets of size l
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long = "l")]
        l: usize,
        /// Only the first N position sets in lexicographic order
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compare the largest admissible l under symplectic vs Hamming distance
    CompareRemark(Common),
    /// Generate a random self-orthogonal code
    Random {
        #[arg(long)]
        q: u64,
        /// Irreducible polynomial coefficients, lowest degree first
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u32>>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &str) -> Result<LinearCode, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    parse_code_file(&text).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    q: usize,
    n: usize,
    dim: usize,
    basis: Vec<Vec<u8>>,
}

fn code_json(code: &LinearCode) -> serde_json::Value {
    serde_json::to_value(CodeJson {
        q: code.field().q(),
        n: code.n(),
        dim: code.dim(),
        basis: code.basis().to_rows(),
    })
    .unwrap()
}

fn emit_code(code: &LinearCode, format: Format) -> String {
    match format {
        Format::Text => serialize_code(code),
        Format::Json => code_json(code).to_string() + "\n",
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok((text, status)) => {
            let _ = out.write_all(text.as_bytes());
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(String, i32), CliError> {
    let ok = |s: String| Ok((s, 0));
    match command {
        Command::Params(c) => {
            let code = load(&c.file)?;
            let p = code.params(c.cap)?;
            match c.format {
                Format::Json => ok(serde_json::to_string_pretty(&p).unwrap() + "\n"),
                Format::Text => {
                    let pure = p.pure_d.map_or("-".to_string(), |d| d.to_string());
                    ok(format!(
                        "{p}\ndim {}, dual min weight {pure}, stabilizer QECC: {}\n",
                        code.dim(),
                        if p.is_stabilizer_qecc { "yes" } else { "no" }
                    ))
                }
            }
        }
        Command::Dual(c) => {
            let code = load(&c.file)?;
            ok(emit_code(&code.dual(), c.format))
        }
        Command::Puncture(w) => {
            let code = load(&w.common.file)?;
            let s = PositionSet::new(&w.positions, code.n())?;
            ok(emit_code(&puncture(&code, &s)?, w.common.format))
        }
        Command::Shorten(w) => {
            let code = load(&w.common.file)?;
            let s = PositionSet::new(&w.positions, code.n())?;
            ok(emit_code(&shorten(&code, &s)?, w.common.format))
        }
        Command::Construct { inner, trusted_d } => {
            let code = load(&inner.common.file)?;
            let s = PositionSet::new(&inner.positions, code.n())?;
            let opts = ConstructOptions {
                cap: inner.common.cap,
                trusted_d,
            };
            let (result, report) = construct_eaqecc(&code, &s, opts)?;
            let shortened_dual = shorten(&code.dual(), &s)?;
            let status = if report.overall { 0 } else { 1 };
            let text = match inner.common.format {
                Format::Json => {
                    json!({
                        "code": code_json(&result),
                        "shortened_dual": code_json(&shortened_dual),
                        "report": report,
                    })
                    .to_string()
                        + "\n"
                }
                Format::Text => format!(
                    "## punctured code\n{}## shortened dual\n{}## report\n{}",
                    serialize_code(&result),
                    serialize_code(&shortened_dual),
                    emit_report(&report, Format::Text)
                ),
            };
            Ok((text, status))
        }
        Command::VerifyLemmas { common, positions } => {
            let code = load(&common.file)?;
            let positions = if positions.is_empty() {
                (1..=code.n()).collect()
            } else {
                PositionSet::new(&positions, code.n())?.positions().to_vec()
            };
            let reports = positions
                .iter()
                .map(|&i| verify_lemmas(&code, i, common.cap))
                .collect::<Result<Vec<_>, _>>()?;
            let overall = reports.iter().all(|r| r.overall);
            let text = match common.format {
                Format::Json => {
                    json!({ "reports": reports, "overall": overall }).to_string() + "\n"
                }
                Format::Text => reports
                    .iter()
                    .map(|r| emit_report(r, Format::Text))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((text, if overall { 0 } else { 1 }))
        }
        Command::Search { common, l, limit } => {
            let code = load(&common.file)?;
            let hits = search_positions(&code, l, common.cap, limit)?;
            let overall = hits.iter().all(|h| h.overall);
            let text = match common.format {
                Format::Json => json!({ "hits": hits }).to_string() + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for h in &hits {
                        let pure = h.params.pure_d.map_or("-".to_string(), |d| d.to_string());
                        writeln!(
                            s,
                            "{:<12} {}  dual min weight {}  {}",
                            h.positions.to_string(),
                            h.params,
                            pure,
                            if h.overall { "ok" } else { "failed" }
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok((text, if overall { 0 } else { 1 }))
        }
        Command::CompareRemark(c) => {
            let code = load(&c.file)?;
            let a = compare_applicability(&code, c.cap)?;
            match c.format {
                Format::Json => ok(serde_json::to_string_pretty(&a).unwrap() + "\n"),
                Format::Text => {
                    let show = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
                    ok(format!(
                        "symplectic distance of dual: {}\nHamming distance of dual:    {}\nmax l (l < d):               {}\nmax l (2l < w_H):            {}\n",
                        show(a.pure_d),
                        show(a.hamming_d),
                        a.ours_max_l,
                        a.hamming_max_l
                    ))
                }
            }
        }
        Command::Random {
            q,
            poly,
            n,
            dim,
            seed,
        } => {
            let field = FieldSpec::from_order(q, poly.as_deref())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let code = random_self_orthogonal(&field, n, dim, seed)?;
            ok(serialize_code(&code))
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = include_str!("../examples/code_A.txt");

    #[test]
    fn parses_example_file() {
        let c = parse_code_file(EXAMPLE).unwrap();
        assert_eq!((c.n(), c.dim(), c.field().q()), (5, 4, 2));
    }

    #[test]
    fn empty_rows_give_zero_code() {
        let c = parse_code_file("q 3\nn 4\n").unwrap();
        assert_eq!(c, LinearCode::zero(FieldSpec::prime(3), 4));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_code_file("q 2\nn 5\n1 0 0 1 | 0 1 1 0 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("9 entries"), "{e}");

        let e = parse_code_file("q 3\nn 1\n1 | 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));

        let e = parse_code_file("q 6\nn 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(e.message.contains("prime"));

        let e = parse_code_file("q 4\npoly 1 0 1\nn 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("reducible"));

        let e = parse_code_file("q 2\nk 3\n").unwrap_err();
        assert!(e.message.contains("unknown header field"));

        let e = parse_code_file("q 2\nn 2\n1 0 0 | 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));

        let e = parse_code_file("q 2\nn 1 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));

        let e = parse_code_file("# nothing\n").unwrap_err();
        assert!(e.message.contains("missing `q"));

        let e = parse_code_file("q 16\nn 1\n").unwrap_err();
        assert!(e.message.contains("built-in"));
    }

    #[test]
    fn comments_and_extension_fields() {
        let c = parse_code_file("q 8 # octal\n\npoly 1 0 1 1\nn 1\n# row\n3 | 7\n").unwrap();
        assert_eq!(c.field().irreducible(), &[1, 0, 1, 1]);
        assert_eq!(c.dim(), 1);
        assert_eq!(parse_code_file(&serialize_code(&c)).unwrap(), c);
    }

    #[test]
    fn vacuous_status_appears_in_text_report() {
        let c = parse_code_file("q 2\nn 3\n1 0 0 | 0 0 0\n").unwrap();
        let r = verify_lemmas(&c, 1, DEFAULT_CAP).unwrap();
        assert!(emit_report(&r, Format::Text).contains("VACUOUS"));
    }

    #[test]
    fn json_report_round_trips() {
        let c = parse_code_file(EXAMPLE).unwrap();
        let (_, r) = construct_eaqecc(
            &c,
            &PositionSet::new(&[3], 5).unwrap(),
            ConstructOptions::new(DEFAULT_CAP),
        )
        .unwrap();
        let back: TheoremReport = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        let text = emit_report(&r, Format::Text);
        assert!(text.contains("[[4,1,3;1]]_2"));
        assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6);
    }

    proptest! {
        #[test]
        fn code_file_round_trip(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
            n in 0usize..=6,
            seed in any::<u64>(),
        ) {
            let dim = if n == 0 { 0 } else { seed as usize % (2 * n + 1) };
            let c = crate::symplectic_code::random_code(&FieldSpec::from_order(q, None).unwrap(), n, dim, seed);
            prop_assert_eq!(parse_code_file(&serialize_code(&c)).unwrap(), c);
        }
    }
}
