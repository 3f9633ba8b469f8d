//! Command line front end. [`run_command`] does all the work so that tests
//! can drive it without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use trapezoid_core::ast::{self, AlternatingSignTrapezoid};
use trapezoid_core::csspp::{self, ColumnStrictShiftedPlanePartition};
use trapezoid_core::verify::{run_verify, VerifyBounds};
use trapezoid_core::{formulas, paths, trees, LaurentPolynomial};

/// Search nodes above which `ast enumerate` wants `--force`.
pub const ENUMERATION_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "trapezoid", version, about = "Refined enumeration of alternating sign trapezoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating sign trapezoids
    #[command(subcommand)]
    Ast(AstCmd),
    /// Column strict shifted plane partitions
    #[command(subcommand)]
    Csspp(CssppCmd),
    /// Binomial determinant formula
    #[command(subcommand)]
    Det(DetCmd),
    /// Lattice path route
    #[command(subcommand)]
    Lgv(LgvCmd),
    /// Trapezoid to tree correspondence
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Product formula for the 2-enumeration
    Twoenum {
        #[command(flatten)]
        nl: NL,
        #[command(flatten)]
        out: Output,
    },
    /// Run every cross-check
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_l: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct NL {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum AstCmd {
    /// List every trapezoid
    Enumerate {
        #[command(flatten)]
        nl: NL,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Generating function by enumeration
    Genfunc {
        #[command(flatten)]
        nl: NL,
        #[command(flatten)]
        out: Output,
    },
    /// Statistics of a trapezoid given as JSON (file or `-`)
    Stats {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// x-enumeration; with --table, for every row count up to n
    Xenum {
        #[command(flatten)]
        nl: NL,
        #[arg(long, value_parser = parse_rational)]
        x: BigRational,
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum CssppCmd {
    Enumerate {
        #[command(flatten)]
        nk: NK,
        #[command(flatten)]
        out: Output,
    },
    Genfunc {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    Count {
        #[command(flatten)]
        nk: NK,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct NK {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum DetCmd {
    Genfunc {
        #[command(flatten)]
        nl: NL,
        #[command(flatten)]
        out: Output,
    },
    /// A single matrix entry, delta included
    Entry {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum LgvCmd {
    Genfunc {
        #[command(flatten)]
        nl: NL,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum TreeCmd {
    /// Map a trapezoid (JSON file or `-`) to its tree
    Map {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check trapezoid -> tree -> trapezoid on every (n,l)-trapezoid
    Roundtrip {
        #[command(flatten)]
        nl: NL,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("{s:?} is not an integer or p/q rational: {e}"))
}

/// Failure modes: exit code 1 for failed checks, 2 for bad input.
enum Failure {
    Check(String, String),
    Usage(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &str, stdin: &str) -> Result<String, Failure> {
    if path == "-" {
        Ok(stdin.to_string())
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
    }
}

fn csv_lines(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

fn quoted_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

fn poly_out(p: &LaurentPolynomial, format: Format, label: &[(&str, String)]) -> String {
    match format {
        Format::Json => p.to_json() + "\n",
        Format::Text => format!("{p}\n"),
        Format::Csv => {
            let mut header: Vec<&str> = label.iter().map(|(k, _)| *k).collect();
            header.push("polynomial");
            let mut row: Vec<String> = label.iter().map(|(_, v)| v.clone()).collect();
            row.push(p.to_string());
            quoted_csv(&header, &[row])
        }
    }
}

fn scalar_out(value: String, format: Format, label: &[(&str, String)], key: &str) -> String {
    match format {
        Format::Json => {
            let mut m = serde_json::Map::new();
            for (k, v) in label {
                m.insert((*k).into(), v.clone().into());
            }
            m.insert(key.into(), value.into());
            serde_json::Value::Object(m).to_string() + "\n"
        }
        Format::Text => value + "\n",
        Format::Csv => {
            let mut header: Vec<&str> = label.iter().map(|(k, _)| *k).collect();
            header.push(key);
            let mut row: Vec<String> = label.iter().map(|(_, v)| v.clone()).collect();
            row.push(value);
            csv_lines(&header, &[row])
        }
    }
}

fn trapezoid_text(a: &AlternatingSignTrapezoid) -> String {
    let mut s = String::new();
    for (r, row) in a.rows().iter().enumerate() {
        let _ = write!(s, "{}", "   ".repeat(r));
        for v in row {
            let _ = write!(s, "{v:>3}");
        }
        s.push('\n');
    }
    s
}

fn partition_text(p: &ColumnStrictShiftedPlanePartition) -> String {
    if p.rows().is_empty() {
        return "(empty)\n".into();
    }
    let mut s = String::new();
    for (r, row) in p.rows().iter().enumerate() {
        let _ = write!(s, "{}", "   ".repeat(r));
        for v in row {
            let _ = write!(s, "{v:>3}");
        }
        s.push('\n');
    }
    s
}

fn json_line<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes") + "\n"
}

fn nl_label(n: usize, l: usize) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("l", l.to_string())]
}

fn ast_cmd(cmd: AstCmd, stdin: &str) -> Result<(String, Option<PathBuf>), Failure> {
    match cmd {
        AstCmd::Enumerate { nl, force, out } => {
            let cells = (nl.n * (nl.n + nl.l.saturating_sub(1))) as u64;
            let estimate = formulas::andrews_count(nl.n, nl.l) * BigInt::from(cells.max(1));
            if !force && estimate > BigInt::from(ENUMERATION_LIMIT) {
                return Err(usage(format!(
                    "ast enumerate --n {} --l {} would visit about {estimate} search nodes; pass --force to run it",
                    nl.n, nl.l
                )));
            }
            let it = ast::enumerate(nl.n, nl.l).map_err(usage)?;
            let text = match out.format {
                Format::Json => it.map(|a| json_line(&a)).collect(),
                Format::Text => it.map(|a| trapezoid_text(&a)).collect::<Vec<_>>().join("\n"),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = it
                        .enumerate()
                        .map(|(i, a)| {
                            let st = a.statistics();
                            vec![
                                i.to_string(),
                                st.q.to_string(),
                                st.r.to_string(),
                                st.s.to_string(),
                                st.t.to_string(),
                                u8::from(st.central_ten_flag).to_string(),
                                a.weight().to_string(),
                                serde_json::to_string(a.rows()).expect("plain data"),
                            ]
                        })
                        .collect();
                    quoted_csv(&["index", "q", "r", "s", "t", "central_ten_flag", "weight", "rows"], &rows)
                }
            };
            Ok((text, out.out))
        }
        AstCmd::Genfunc { nl, out } => {
            let z = ast::genfunc(nl.n, nl.l).map_err(usage)?;
            Ok((poly_out(&z, out.format, &nl_label(nl.n, nl.l)), out.out))
        }
        AstCmd::Stats { input, out } => {
            let raw = read_input(&input, stdin)?;
            let a: AlternatingSignTrapezoid =
                serde_json::from_str(&raw).map_err(|e| usage(format!("invalid trapezoid: {e}")))?;
            let st = a.statistics();
            let w = a.weight();
            let text = match out.format {
                Format::Json => {
                    serde_json::json!({
                        "n": a.n(), "l": a.l(), "q": st.q, "r": st.r, "s": st.s, "t": st.t,
                        "central_ten_flag": u8::from(st.central_ten_flag),
                        "weight": w.to_string(),
                    })
                    .to_string()
                        + "\n"
                }
                Format::Text => format!(
                    "q={} r={} s={} t={} central_ten_flag={}\nweight {w}\n",
                    st.q,
                    st.r,
                    st.s,
                    st.t,
                    u8::from(st.central_ten_flag)
                ),
                Format::Csv => quoted_csv(
                    &["n", "l", "q", "r", "s", "t", "central_ten_flag", "weight"],
                    &[vec![
                        a.n().to_string(),
                        a.l().to_string(),
                        st.q.to_string(),
                        st.r.to_string(),
                        st.s.to_string(),
                        st.t.to_string(),
                        u8::from(st.central_ten_flag).to_string(),
                        w.to_string(),
                    ]],
                ),
            };
            Ok((text, out.out))
        }
        AstCmd::Xenum { nl, x, table, out } => {
            let ns: Vec<usize> = if table { (1..=nl.n).collect() } else { vec![nl.n] };
            let mut rows = Vec::new();
            for n in ns {
                let v = ast::x_enumeration(n, nl.l, &x).map_err(usage)?;
                rows.push(vec![n.to_string(), nl.l.to_string(), x.to_string(), v.to_string()]);
            }
            let text = match out.format {
                Format::Json => rows
                    .iter()
                    .map(|r| serde_json::json!({"n": r[0], "l": r[1], "x": r[2], "value": r[3]}).to_string() + "\n")
                    .collect(),
                Format::Text if !table => format!("{}\n", rows[0][3]),
                Format::Text => rows.iter().map(|r| format!("n={} {}\n", r[0], r[3])).collect(),
                Format::Csv => csv_lines(&["n", "l", "x", "value"], &rows),
            };
            Ok((text, out.out))
        }
    }
}

fn csspp_cmd(cmd: CssppCmd) -> Result<(String, Option<PathBuf>), Failure> {
    match cmd {
        CssppCmd::Enumerate { nk, out } => {
            let it = csspp::enumerate(nk.n, nk.k).map_err(usage)?;
            let text = match out.format {
                Format::Json => it.map(|p| json_line(&p)).collect(),
                Format::Text => it.map(|p| partition_text(&p)).collect::<Vec<_>>().join("\n"),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = it
                        .enumerate()
                        .map(|(i, p)| {
                            vec![
                                i.to_string(),
                                serde_json::to_string(p.shape()).expect("plain data"),
                                serde_json::to_string(p.rows()).expect("plain data"),
                            ]
                        })
                        .collect();
                    quoted_csv(&["index", "shape", "rows"], &rows)
                }
            };
            Ok((text, out.out))
        }
        CssppCmd::Genfunc { nk, d, out } => {
            let z = csspp::genfunc(nk.n, nk.k, d).map_err(usage)?;
            let label = vec![("n", nk.n.to_string()), ("k", nk.k.to_string()), ("d", d.to_string())];
            Ok((poly_out(&z, out.format, &label), out.out))
        }
        CssppCmd::Count { nk, out } => {
            let c = csspp::count(nk.n, nk.k).map_err(usage)?;
            let label = vec![("n", nk.n.to_string()), ("k", nk.k.to_string())];
            Ok((scalar_out(c.to_string(), out.format, &label, "count"), out.out))
        }
    }
}

fn run(cli: Cli, stdin: &str) -> Result<(String, Option<PathBuf>), Failure> {
    match cli.command {
        Command::Ast(cmd) => ast_cmd(cmd, stdin),
        Command::Csspp(cmd) => csspp_cmd(cmd),
        Command::Det(DetCmd::Genfunc { nl, out }) => {
            let z = formulas::det_formula_genfunc(nl.n, nl.l).map_err(usage)?;
            Ok((poly_out(&z, out.format, &nl_label(nl.n, nl.l)), out.out))
        }
        Command::Det(DetCmd::Entry { i, j, l, out }) => {
            if l == 0 {
                return Err(usage("l must be at least 1"));
            }
            let label = vec![("i", i.to_string()), ("j", j.to_string()), ("l", l.to_string())];
            Ok((poly_out(&formulas::det_entry(i, j, l), out.format, &label), out.out))
        }
        Command::Lgv(LgvCmd::Genfunc { nl, d, out }) => {
            let z = paths::lgv_genfunc(nl.n, nl.l, d).map_err(usage)?;
            let mut label = nl_label(nl.n, nl.l);
            label.push(("d", d.to_string()));
            Ok((poly_out(&z, out.format, &label), out.out))
        }
        Command::Tree(TreeCmd::Map { input, out }) => {
            let raw = read_input(&input, stdin)?;
            let a: AlternatingSignTrapezoid =
                serde_json::from_str(&raw).map_err(|e| usage(format!("invalid trapezoid: {e}")))?;
            let t = trees::ast_to_tree(&a).map_err(usage)?;
            let text = match out.format {
                Format::Json => json_line(&t),
                Format::Text => {
                    let (s, tt) = t.label();
                    let mut x = format!("({s:?},{tt:?})-tree with bottom row {:?}\n", t.bottom());
                    for row in t.grid() {
                        let cells: Vec<String> =
                            row.iter().map(|c| c.map_or("*".to_string(), |v| v.to_string())).collect();
                        x.push_str(&cells.join(" "));
                        x.push('\n');
                    }
                    x
                }
                Format::Csv => quoted_csv(
                    &["n", "s", "t", "rows", "bottom"],
                    &[vec![
                        t.n().to_string(),
                        serde_json::to_string(t.s()).expect("plain data"),
                        serde_json::to_string(t.t()).expect("plain data"),
                        serde_json::to_string(t.rows()).expect("plain data"),
                        serde_json::to_string(t.bottom()).expect("plain data"),
                    ]],
                ),
            };
            Ok((text, out.out))
        }
        Command::Tree(TreeCmd::Roundtrip { nl, out }) => {
            let mut total = 0usize;
            let mut failures = Vec::new();
            for a in ast::enumerate(nl.n, nl.l).map_err(usage)? {
                total += 1;
                let ok = trees::ast_to_tree(&a)
                    .and_then(|t| trees::tree_to_ast(&t, nl.l))
                    .map(|b| b == a)
                    .unwrap_or(false);
                if !ok {
                    failures.push(serde_json::to_string(&a).expect("plain data"));
                }
            }
            let passed = total - failures.len();
            let label = nl_label(nl.n, nl.l);
            let summary = scalar_out(format!("{passed}/{total}"), out.format, &label, "round_trips");
            if failures.is_empty() {
                Ok((summary, out.out))
            } else {
                Err(Failure::Check(summary, format!("round trip failed for: {}", failures.join(", "))))
            }
        }
        Command::Twoenum { nl, out } => {
            let r = formulas::two_enum_product(nl.n, nl.l).map_err(usage)?;
            let text = match out.format {
                Format::Json => json_line(&r),
                Format::Text => format!("{}\n", r.value),
                Format::Csv => csv_lines(
                    &["n_rows", "l", "parity", "value"],
                    &[vec![
                        r.n_rows.to_string(),
                        r.l.to_string(),
                        format!("{:?}", r.parity).to_lowercase(),
                        r.value.to_string(),
                    ]],
                ),
            };
            Ok((text, out.out))
        }
        Command::Verify { max_n, max_l, jobs, out } => {
            if max_n == 0 || max_l == 0 {
                return Err(usage("--max-n and --max-l must be at least 1"));
            }
            let report = run_verify(VerifyBounds { max_n, max_l, jobs });
            let text = match out.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            if report.passed {
                Ok((text, out.out))
            } else {
                let failed = report.rows.iter().filter(|r| !r.passed).count();
                Err(Failure::Check(text, format!("{failed} checks failed")))
            }
        }
    }
}

fn deliver(text: String, out: Option<PathBuf>, code: i32, mut stderr: String) -> CommandOutput {
    match out {
        None => CommandOutput { code, stdout: text, stderr },
        Some(path) => match fs::write(&path, text) {
            Ok(()) => CommandOutput {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => {
                let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
                CommandOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr,
                }
            }
        },
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    let o = match &cli.command {
        Command::Ast(AstCmd::Enumerate { out, .. })
        | Command::Ast(AstCmd::Genfunc { out, .. })
        | Command::Ast(AstCmd::Stats { out, .. })
        | Command::Ast(AstCmd::Xenum { out, .. })
        | Command::Csspp(CssppCmd::Enumerate { out, .. })
        | Command::Csspp(CssppCmd::Genfunc { out, .. })
        | Command::Csspp(CssppCmd::Count { out, .. })
        | Command::Det(DetCmd::Genfunc { out, .. })
        | Command::Det(DetCmd::Entry { out, .. })
        | Command::Lgv(LgvCmd::Genfunc { out, .. })
        | Command::Tree(TreeCmd::Map { out, .. })
        | Command::Tree(TreeCmd::Roundtrip { out, .. })
        | Command::Twoenum { out, .. }
        | Command::Verify { out, .. } => out,
    };
    o.out.clone()
}

/// Runs one invocation; `argv[0]` is the program name. `stdin` backs `--input -`.
pub fn run_command<I, S>(argv: I, stdin: &str) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let target = out_path(&cli);
    match run(cli, stdin) {
        Ok((text, out)) => deliver(text, out, 0, String::new()),
        Err(Failure::Check(text, msg)) => deliver(text, target, 1, msg + "\n"),
        Err(Failure::Usage(msg)) => CommandOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Reads standard input only when some argument asks for it.
pub fn stdin_if_needed(args: &[String]) -> String {
    let mut buf = String::new();
    if args.windows(2).any(|w| w[0] == "--input" && w[1] == "-") || args.iter().any(|a| a == "--input=-") {
        let _ = std::io::stdin().read_to_string(&mut buf);
    }
    buf
}
