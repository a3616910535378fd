//! The `vacillating` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bijections::{di_insert, di_invert, di_trace, vac_insert, vac_insert_traced, vac_invert, VacillatingTableau};
use crate::diagrams::{enumerate_with_limit, Family, SetPartitionDiagram};
use crate::enumeration::{self, build_bratteli, half_label, Report, VerifyOptions};
use crate::error::Error;
use crate::growth::{growth_diagram, staircase_paths};
use crate::tableaux::StandardTableau;

#[derive(Parser, Debug)]
#[command(name = "vacillating", version, about = "Insertion bijections for the partition monoid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Insert a diagram such as "1 3 4' | 2 1' | 4 3' 2'" and print (P, Q).
    Insert {
        /// Diagram text, or "-" for standard input.
        #[arg(allow_hyphen_values = true)]
        diagram: String,
        /// Print every intermediate tableau.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recover a diagram from P and Q; with "-" reads the output of `insert`.
    Invert {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Delete-insert a sequence such as "2,4,3".
    Di {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recover a sequence from a tableau and a path; with "-" reads the
    /// output of `di`.
    DiInvert {
        #[arg(allow_hyphen_values = true)]
        tableau: String,
        #[arg(allow_hyphen_values = true)]
        path: Option<String>,
        /// Needed only when the path is given without parentheses.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Print the filled growth diagram of a diagram.
    Growth {
        #[arg(allow_hyphen_values = true)]
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// List every diagram of a family.
    Enumerate {
        family: String,
        /// Size; half integers such as 2.5 select half_A.
        #[arg(long, value_parser = parse_half)]
        k: usize,
        /// Allow sizes above the default guard.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively check an identity.
    Verify {
        identity: Identity,
        #[arg(long, value_parser = parse_half)]
        k: usize,
        /// For nk; defaults to 2k.
        #[arg(long)]
        n: Option<u32>,
        /// For ideal; every t from 0 to k when absent.
        #[arg(long)]
        t: Option<usize>,
        /// For symmetric and squares.
        #[arg(long, default_value = "A")]
        family: String,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a Bratteli diagram with path counts.
    Bratteli {
        family: String,
        #[arg(long, value_parser = parse_half)]
        k: usize,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    Nk,
    Bell,
    OddBell,
    Ideal,
    Catalan,
    Binomial,
    Symmetric,
    Squares,
}

/// Parses `3`, `2.5`, `5/2` or `2½` into a doubled index.
fn parse_half(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let err = || format!("expected an integer or half integer, got {s:?}");
    if let Some(whole) = s.strip_suffix('½') {
        let w: usize = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| err())? };
        return Ok(2 * w + 1);
    }
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(err());
        }
        return num.trim().parse().map_err(|_| err());
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let w: usize = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| err())? };
        return match frac.trim_end_matches('0') {
            "" => Ok(2 * w),
            "5" => Ok(2 * w + 1),
            _ => Err(err()),
        };
    }
    s.parse::<usize>().map(|v| 2 * v).map_err(|_| err())
}

enum Failure {
    Input(String),
    Verification,
    ClosedOutput,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedOutput;
        }
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub fn main() -> ExitCode {
    let stdin = io::stdin();
    let code = run(std::env::args(), &mut stdin.lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}

/// Runs one command against the given streams and returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(()) | Err(Failure::ClosedOutput) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_arg(arg: String, input: &mut dyn BufRead) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    } else {
        Ok(arg)
    }
}

fn parse_diagram(text: &str) -> Result<SetPartitionDiagram, Failure> {
    text.parse::<SetPartitionDiagram>().map_err(Into::into)
}

fn parse_family(text: &str) -> Result<Family, Failure> {
    text.parse::<Family>().map_err(Into::into)
}

/// Picks labelled lines such as `P: …` out of piped output.
fn labelled(text: &str, label: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.trim().strip_prefix(label).map(|rest| rest.trim().to_string()))
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    writeln!(out, "{}", serde_json::to_string(value).expect("values serialize"))?;
    Ok(())
}

fn dispatch(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Insert { diagram, trace, json } => {
            let d = parse_diagram(&read_arg(diagram, input)?)?;
            cmd_insert(&d, trace, json, out)
        }
        Command::Invert { p, q, json } => {
            let (p, q) = match q {
                Some(q) => (read_arg(p, input)?, q),
                None => {
                    let text = read_arg(p, input)?;
                    let p = labelled(&text, "P:");
                    let q = labelled(&text, "Q:");
                    match (p, q) {
                        (Some(p), Some(q)) => (p, q),
                        _ => return Err(Failure::Input("expected P and Q, or lines labelled P: and Q:".into())),
                    }
                }
            };
            let p: VacillatingTableau = p.parse()?;
            let q: VacillatingTableau = q.parse()?;
            let d = vac_invert(&p, &q)?;
            if json {
                print_json(out, &serde_json::to_value(&d).expect("diagrams serialize"))
            } else {
                writeln!(out, "{d}")?;
                Ok(())
            }
        }
        Command::Di { sequence, n, trace, json } => {
            let seq = parse_sequence(&read_arg(sequence, input)?)?;
            cmd_di(&seq, n, trace, json, out)
        }
        Command::DiInvert { tableau, path, n, json } => {
            let (t, p) = match path {
                Some(p) => (read_arg(tableau, input)?, p),
                None => {
                    let text = read_arg(tableau, input)?;
                    match (labelled(&text, "T:"), labelled(&text, "P:")) {
                        (Some(t), Some(p)) => (t, p),
                        _ => return Err(Failure::Input("expected T and P, or lines labelled T: and P:".into())),
                    }
                }
            };
            let t: StandardTableau = t.parse()?;
            let mut p: VacillatingTableau = p.parse()?;
            if let Some(n) = n {
                p = p.to_lambda(n)?;
            }
            let seq = di_invert(&t, &p)?;
            if json {
                print_json(out, &json!(seq))
            } else {
                let text: Vec<String> = seq.iter().map(ToString::to_string).collect();
                writeln!(out, "{}", text.join(","))?;
                Ok(())
            }
        }
        Command::Growth { diagram, json } => {
            let d = parse_diagram(&read_arg(diagram, input)?)?;
            let g = growth_diagram(&d);
            let (p, q) = staircase_paths(&g)?;
            if json {
                let mut v = g.to_json();
                v["P"] = serde_json::to_value(&p).expect("paths serialize");
                v["Q"] = serde_json::to_value(&q).expect("paths serialize");
                print_json(out, &v)
            } else {
                write!(out, "{g}")?;
                writeln!(out, "P: {p}")?;
                writeln!(out, "Q: {q}")?;
                Ok(())
            }
        }
        Command::Enumerate { family, k, force, json } => {
            let family = parse_family(&family)?;
            let k = size_for(family, k)?;
            let limit = if force { usize::MAX } else { family.default_limit() };
            for d in enumerate_with_limit(k, family, limit)? {
                if json {
                    print_json(out, &serde_json::to_value(&d).expect("diagrams serialize"))?;
                } else {
                    writeln!(out, "{d}")?;
                }
            }
            Ok(())
        }
        Command::Verify { identity, k, n, t, family, workers, force, json } => {
            let opts = VerifyOptions { workers, force };
            let reports = cmd_verify(identity, k, n, t, &family, &opts)?;
            if json {
                let values: Vec<_> = reports.iter().map(Report::to_json).collect();
                if values.len() == 1 {
                    print_json(out, &values[0])?;
                } else {
                    print_json(out, &json!(values))?;
                }
            } else {
                for r in &reports {
                    write!(out, "{r}")?;
                }
            }
            if reports.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Bratteli { family, k, json, dot } => {
            let family = parse_family(&family)?;
            let b = build_bratteli(family, k)?;
            if dot {
                write!(out, "{}", b.to_dot())?;
            } else if json {
                print_json(out, &b.to_json())?;
            } else {
                write!(out, "{b}")?;
            }
            Ok(())
        }
    }
}

/// Converts a doubled `--k` into the size used by the enumerators: `half_A`
/// wants a half integer `k - 1/2` and is indexed by `k`.
fn size_for(family: Family, k2: usize) -> Result<usize, Failure> {
    match (family, k2 % 2) {
        (Family::HalfA, 1) => Ok(k2.div_ceil(2)),
        (Family::HalfA, _) => Err(Failure::Input("half_A needs a half-integer --k such as 2.5".into())),
        (_, 0) => Ok(k2 / 2),
        _ => Err(Failure::Input(format!("{family} needs an integer --k"))),
    }
}

fn parse_sequence(text: &str) -> Result<Vec<u32>, Failure> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut col = 1;
    let mut seq = Vec::new();
    for piece in text.split(',') {
        let v = piece.trim().parse::<u32>().map_err(|_| {
            Failure::from(Error::Parse {
                column: col,
                message: format!("expected a positive integer, found {:?}", piece.trim()),
            })
        })?;
        seq.push(v);
        col += piece.len() + 1;
    }
    Ok(seq)
}

fn cmd_insert(d: &SetPartitionDiagram, trace: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let (p, q) = vac_insert(d);
    let steps = trace.then(|| vac_insert_traced(d));
    if json {
        let mut v = json!({
            "diagram": d,
            "P": p,
            "Q": q,
            "shape": p.final_shape(),
        });
        if let Some(steps) = steps {
            v["trace"] = steps
                .iter()
                .map(|s| {
                    json!({
                        "index": half_label(s.index),
                        "label": s.label,
                        "tableau": s.tableau,
                        "shape": s.tableau.shape(),
                    })
                })
                .collect();
        }
        return print_json(out, &v);
    }
    if let Some(steps) = steps {
        let rows: Vec<[String; 4]> = steps
            .iter()
            .map(|s| {
                [
                    half_label(s.index),
                    if s.index == 0 { String::new() } else { s.label.map_or("-".into(), |l| l.to_string()) },
                    s.tableau.to_string(),
                    s.tableau.shape().to_string(),
                ]
            })
            .collect();
        write_table(out, &["j", "E", "T", "shape"], &rows)?;
    }
    writeln!(out, "P: {p}")?;
    writeln!(out, "Q: {q}")?;
    writeln!(out, "shape: {}", p.final_shape())?;
    Ok(())
}

fn cmd_di(seq: &[u32], n: u32, trace: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let (t, p) = di_insert(seq, n)?;
    let steps = if trace { Some(di_trace(seq, n)?) } else { None };
    if json {
        let mut v = json!({ "T": t, "P": p });
        if let Some(steps) = steps {
            v["trace"] = steps
                .iter()
                .enumerate()
                .map(|(m, t)| json!({ "index": half_label(m), "tableau": t }))
                .collect();
        }
        return print_json(out, &v);
    }
    if let Some(steps) = steps {
        let rows: Vec<[String; 4]> = steps
            .iter()
            .enumerate()
            .map(|(m, t)| {
                let entry = if m == 0 { String::new() } else { seq[(m - 1) / 2].to_string() };
                [half_label(m), entry, t.to_string(), format!("({})", t.shape())]
            })
            .collect();
        write_table(out, &["j", "i", "T", "shape"], &rows)?;
    }
    writeln!(out, "T: {t}")?;
    writeln!(out, "P: {p}")?;
    Ok(())
}

fn write_table(out: &mut dyn Write, header: &[&str; 4], rows: &[[String; 4]]) -> io::Result<()> {
    let mut widths = header.map(str::len);
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: [&str; 4]| {
        let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(*header))?;
    for r in rows {
        writeln!(out, "{}", line([&r[0], &r[1], &r[2], &r[3]]))?;
    }
    Ok(())
}

fn cmd_verify(
    identity: Identity,
    k2: usize,
    n: Option<u32>,
    t: Option<usize>,
    family: &str,
    opts: &VerifyOptions,
) -> Result<Vec<Report>, Failure> {
    let integer_k = || {
        if k2.is_multiple_of(2) {
            Ok(k2 / 2)
        } else {
            Err(Failure::Input(format!("{identity:?} needs an integer --k").to_lowercase()))
        }
    };
    let reports = match identity {
        Identity::Nk => {
            let k = integer_k()?;
            vec![enumeration::verify_nk(n.unwrap_or(2 * k as u32), k, opts)?]
        }
        Identity::Bell => vec![enumeration::verify_bell(integer_k()?, opts)?],
        Identity::OddBell => vec![enumeration::verify_odd_bell(size_for(Family::HalfA, k2)?, opts)?],
        Identity::Ideal => {
            let k = integer_k()?;
            match t {
                Some(t) => vec![enumeration::verify_ideal(k, t, opts)?],
                None => (0..=k)
                    .map(|t| enumeration::verify_ideal(k, t, opts))
                    .collect::<Result<_, _>>()?,
            }
        }
        Identity::Catalan => vec![enumeration::verify_catalan(k2, opts)?],
        Identity::Binomial => vec![enumeration::verify_binomial(integer_k()?, opts)?],
        Identity::Symmetric => {
            let family = parse_family(family)?;
            vec![enumeration::verify_symmetric(family, size_for(family, k2)?, opts)?]
        }
        Identity::Squares => {
            let family = parse_family(family)?;
            vec![enumeration::verify_squares(family, size_for(family, k2)?, opts)?]
        }
    };
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (u8, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["vacillating"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn half_parsing() {
        assert_eq!(parse_half("3"), Ok(6));
        assert_eq!(parse_half("2.5"), Ok(5));
        assert_eq!(parse_half("5/2"), Ok(5));
        assert_eq!(parse_half("2½"), Ok(5));
        assert_eq!(parse_half("½"), Ok(1));
        assert_eq!(parse_half("2.0"), Ok(4));
        assert!(parse_half("2.25").is_err());
        assert!(parse_half("x").is_err());
    }

    #[test]
    fn insert_examples() {
        let (code, out, _) = call(&["insert", "1 3 4' | 2 1' | 4 3' 2'"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "P: -;-;1;1;2;1;2;2;2,1\nQ: -;-;1;1;1,1;1;2;2;2,1\nshape: 2,1\n");
        let (_, out, _) = call(&["insert", "1 1'"], "");
        assert_eq!(out, "P: -;-;1\nQ: -;-;1\nshape: 1\n");
        let (_, out, _) = call(&["insert", "1 | 1'"], "");
        assert_eq!(out, "P: -;-;-\nQ: -;-;-\nshape: -\n");
    }

    #[test]
    fn input_errors() {
        let (code, _, err) = call(&["insert", "1 2 | 1' x"], "");
        assert_eq!(code, 2);
        assert_eq!(err, "error: parse error at column 10: unexpected character 'x'\n");
        let (code, _, _) = call(&["frobnicate"], "");
        assert_eq!(code, 2);
        let (code, _, _) = call(&["enumerate", "A", "--k", "6"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn pipes() {
        let (_, out, _) = call(&["insert", "-"], "1 3 4' | 2 1' | 4 3' 2'\n");
        let (code, back, _) = call(&["invert", "-"], &out);
        assert_eq!(code, 0);
        assert_eq!(back, "1 3 4' | 2 1' | 4 3' 2'\n");
        let (_, out, _) = call(&["di", "2,4,3", "--n", "6"], "");
        assert_eq!(out, "T: 1,2,3,6/4/5\nP: (6);(5);(5,1);(4,1);(4,2);(4,1);(4,1,1)\n");
        let (_, back, _) = call(&["di-invert", "-"], &out);
        assert_eq!(back, "2,4,3\n");
        let (_, back, _) = call(&["di-invert", "1,2,3,6/4/5", "-;-;1;1;2;1;1,1", "--n", "6"], "");
        assert_eq!(back, "2,4,3\n");
    }

    #[test]
    fn verify_and_bratteli() {
        let (code, out, _) = call(&["verify", "bell", "--k", "3"], "");
        assert_eq!(code, 0);
        assert!(out.contains("lhs = 203\nrhs = 203\npass\n"), "{out}");
        let (code, out, _) = call(&["verify", "odd-bell", "--k", "2.5", "--json"], "");
        assert_eq!(code, 0);
        assert!(out.contains(r#""lhs":52"#));
        let (code, out, _) = call(&["enumerate", "A", "--k", "1"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        let (_, out, _) = call(&["bratteli", "PR", "--k", "3"], "");
        assert!(out.ends_with("3:  -:1  1:3  2:3  3:1\n"), "{out}");
    }
}
