//! Command-line front end: computations and verification suites with
//! deterministic text or JSON output.
//!
//! [`run`] never touches the process state besides an optional `--out`
//! file; timings are written to stderr by the binary.

mod suites;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{ch_eval, ch_h_expansion, ch_oracle};
use crate::combinatorics::{packed_words, set_compositions, Composition, PackedWord, Parity};
use crate::diagrams::{eval_on, interlacing_alphabet, YoungDiagram};
use crate::exactalg::CommPoly;
use crate::ngraphs::{fg_m_expansion, gk_independence_rank, ng_eval, ng_solprime, verify_ng_formula, BipartiteGraph};
use crate::qsym::{expand_on_alphabet, plain_alphabet, virtual_x, QSymElement};
use crate::stanley::{h_eval, h_expand_poly, h_poly, phi_x_to_pq, PQParam};
use crate::wqsym::{
    check_functional_eq_nc, default_kernel_width, expand, kernel_ideal_dimension, p_virtual_expand, phi_kernel_dimension, virtual_expand, wq_product,
    WQSymElement,
};

pub use suites::{run_all, run_suite, Check, SuiteReport, SUITES};

/// Top-level JSON schema tag.
pub const SCHEMA: &str = "qyd/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    #[default]
    Standard,
    Deep,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Param {
    Q,
    #[default]
    QPrime,
}

impl From<Param> for PQParam {
    fn from(p: Param) -> PQParam {
        match p {
            Param::Q => PQParam::Q,
            Param::QPrime => PQParam::QPrime,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qyd", version, about = "Quasi-symmetric functions on Young diagrams")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the output document to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Verification depth; `QYD_DEEP=1` selects deep.
    #[arg(long, global = true, value_enum)]
    pub depth: Option<Depth>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hopf algebra operations in the monomial basis.
    #[command(subcommand)]
    Qsym(QsymCmd),
    /// Young diagram coordinates and evaluations.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Stanley coordinates and the 𝖧 basis.
    #[command(subcommand)]
    Stanley(StanleyCmd),
    /// Normalized symmetric group characters.
    #[command(subcommand)]
    Char(CharCmd),
    /// Bipartite graph polynomials.
    #[command(subcommand)]
    Ng(NgCmd),
    /// Word quasi-symmetric functions.
    #[command(subcommand)]
    Wqsym(WqsymCmd),
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum QsymCmd {
    Mult { f: String, g: String },
    Coproduct { f: String },
    Antipode { f: String },
    /// Expand on x₁..x_n, or on the virtual alphabet 𝕏 with `--virtual`.
    Expand {
        f: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "virtual")]
        virt: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DiagramCmd {
    Convert { lambda: String },
    /// Evaluate a QSym element on a diagram.
    Eval { f: String, lambda: String },
}

#[derive(Debug, Args)]
pub struct WidthArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Param::QPrime)]
    pub param: Param,
}

#[derive(Debug, Subcommand)]
pub enum StanleyCmd {
    /// 𝖧_I at width m.
    HEval {
        i: String,
        #[command(flatten)]
        w: WidthArgs,
    },
    /// 𝖧 expansion of a polynomial in p, q′ at width m.
    HExpand {
        poly: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Φ_x→p,q of a QSym element at width m.
    Phi {
        f: String,
        #[command(flatten)]
        w: WidthArgs,
    },
}

#[derive(Debug, Args)]
pub struct MuLambda {
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    Expand {
        #[arg(long)]
        mu: String,
    },
    Eval(MuLambda),
    Oracle(MuLambda),
}

#[derive(Debug, Subcommand)]
pub enum NgCmd {
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    Gk {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum WqsymCmd {
    /// Expand on a₁..a_n, or on the virtual alphabet 𝔸 with `--virtual`.
    Expand {
        f: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "virtual")]
        virt: bool,
    },
    Product { f: String, g: String },
    KernelDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Functional equation for every P_u(𝔸) with |u| ≤ n-max.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

/// What a command produced: a JSON result, its text rendering, and whether
/// every check passed.
struct Output {
    result: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn ok(result: Value, text: String) -> Output {
        Output { result, text, ok: true }
    }
}

/// Outcome of [`run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage(msg: impl std::fmt::Display) -> String {
    msg.to_string()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| usage(format!("malformed {what} '{s}': {e}")))
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunResult { stdout: text, stderr: String::new(), code }
            } else {
                RunResult { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let depth = cli.depth.unwrap_or_else(|| {
        if std::env::var("QYD_DEEP").is_ok_and(|v| v == "1") {
            Depth::Deep
        } else {
            Depth::Standard
        }
    });
    let start = Instant::now();
    let (name, out) = match execute(&cli.command, depth) {
        Ok(x) => x,
        Err(msg) => return RunResult { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 2 },
    };
    let stdout = match cli.format {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "command": name, "ok": out.ok, "result": out.result });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => out.text,
    };
    let mut stderr = format!("time: {:.3}s\n", start.elapsed().as_secs_f64());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &stdout) {
            stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
            return RunResult { stdout, stderr, code: 2 };
        }
    }
    RunResult { stdout, stderr, code: if out.ok { 0 } else { 1 } }
}

fn execute(cmd: &Command, depth: Depth) -> Result<(String, Output), String> {
    Ok(match cmd {
        Command::Qsym(c) => qsym(c)?,
        Command::Diagram(c) => diagram(c)?,
        Command::Stanley(c) => stanley(c)?,
        Command::Char(c) => chars(c)?,
        Command::Ng(c) => ng(c)?,
        Command::Wqsym(c) => wqsym(c)?,
        Command::Verify { suite } => ("verify".to_string(), verify(suite, depth)?),
    })
}

fn qsym(c: &QsymCmd) -> Result<(String, Output), String> {
    let el = |s: &str| parse::<QSymElement>(s, "QSym element");
    let (name, out) = match c {
        QsymCmd::Mult { f, g } => {
            let r = &el(f)? * &el(g)?;
            ("qsym mult", Output::ok(to_value(&r), format!("{r}\n")))
        }
        QsymCmd::Coproduct { f } => {
            let terms = el(f)?.coproduct();
            let mut text = String::new();
            let mut list = Vec::new();
            for t in &terms {
                writeln!(text, "{} * M:{} ⊗ M:{}", t.weight, t.left, t.right).expect("string write");
                list.push(json!({ "weight": t.weight, "left": t.left, "right": t.right }));
            }
            ("qsym coproduct", Output::ok(Value::Array(list), text))
        }
        QsymCmd::Antipode { f } => {
            let r = el(f)?.antipode();
            ("qsym antipode", Output::ok(to_value(&r), format!("{r}\n")))
        }
        QsymCmd::Expand { f, n, virt } => {
            let f = el(f)?;
            let p: CommPoly = if *virt {
                expand_on_alphabet(&f, &virtual_x(*n))
            } else {
                let xs: Vec<_> = (1..=*n as u32).map(crate::exactalg::Var::x).collect();
                expand_on_alphabet(&f, &plain_alphabet(&xs))
            };
            ("qsym expand", Output::ok(to_value(&p), format!("{p}\n")))
        }
    };
    Ok((name.to_string(), out))
}

fn diagram(c: &DiagramCmd) -> Result<(String, Output), String> {
    let (name, out) = match c {
        DiagramCmd::Convert { lambda } => {
            let lam: YoungDiagram = parse(lambda, "diagram")?;
            let (ic, mr, fr) = (lam.interlacing(), lam.multirect(), lam.frobenius());
            let join = |v: Vec<String>| v.join(",");
            let text = format!(
                "rows: {}\ninterlacing: {}\np: {}\nq: {}\nq': {}\nfrobenius a: {}\nfrobenius b: {}\n",
                lam,
                join(ic.xs().iter().map(i64::to_string).collect()),
                join(mr.p().iter().map(u64::to_string).collect()),
                join(mr.q().iter().map(u64::to_string).collect()),
                join(mr.q_prime().iter().map(u64::to_string).collect()),
                join(fr.a().iter().map(ToString::to_string).collect()),
                join(fr.b().iter().map(ToString::to_string).collect()),
            );
            let result = json!({
                "rows": lam.rows(),
                "interlacing": ic.xs(),
                "p": mr.p(),
                "q": mr.q(),
                "q_prime": mr.q_prime(),
                "frobenius": { "a": fr.a(), "b": fr.b() },
            });
            ("diagram convert", Output::ok(result, text))
        }
        DiagramCmd::Eval { f, lambda } => {
            let f: QSymElement = parse(f, "QSym element")?;
            let lam: YoungDiagram = parse(lambda, "diagram")?;
            let v = eval_on(&f, &interlacing_alphabet(lam.interlacing().xs()));
            ("diagram eval", Output::ok(to_value(&v), format!("{v}\n")))
        }
    };
    Ok((name.to_string(), out))
}

fn stanley(c: &StanleyCmd) -> Result<(String, Output), String> {
    let (name, out) = match c {
        StanleyCmd::HEval { i, w } => {
            let i: Composition = parse(i, "composition")?;
            let p = match w.param {
                Param::QPrime => Ok(h_poly(&i, w.m)),
                Param::Q => h_eval(&i, w.m),
            }
            .map_err(usage)?;
            ("stanley h-eval", Output::ok(to_value(&p), format!("{p}\n")))
        }
        StanleyCmd::HExpand { poly, m } => {
            let p: CommPoly = parse(poly, "polynomial")?;
            let e = h_expand_poly(&p, *m).map_err(usage)?;
            ("stanley h-expand", Output::ok(to_value(&e), format!("{e}\n")))
        }
        StanleyCmd::Phi { f, w } => {
            let f: QSymElement = parse(f, "QSym element")?;
            let p = phi_x_to_pq(&f, w.m, w.param.into());
            ("stanley phi", Output::ok(to_value(&p), format!("{p}\n")))
        }
    };
    Ok((name.to_string(), out))
}

fn chars(c: &CharCmd) -> Result<(String, Output), String> {
    let (name, out) = match c {
        CharCmd::Expand { mu } => {
            let mu: YoungDiagram = parse(mu, "partition")?;
            let e = ch_h_expansion(&mu).map_err(usage)?;
            ("char expand", Output::ok(to_value(&e), format!("{e}\n")))
        }
        CharCmd::Eval(a) => {
            let (mu, lam): (YoungDiagram, YoungDiagram) = (parse(&a.mu, "partition")?, parse(&a.lambda, "diagram")?);
            let v = ch_eval(&mu, &lam).map_err(usage)?;
            ("char eval", Output::ok(to_value(&v), format!("{v}\n")))
        }
        CharCmd::Oracle(a) => {
            let (mu, lam): (YoungDiagram, YoungDiagram) = (parse(&a.mu, "partition")?, parse(&a.lambda, "diagram")?);
            if mu.is_empty() {
                return Err(usage("μ must be nonempty"));
            }
            let v = ch_oracle(&mu, &lam);
            ("char oracle", Output::ok(to_value(&v), format!("{v}\n")))
        }
    };
    Ok((name.to_string(), out))
}

fn read_graph(path: &PathBuf) -> Result<BipartiteGraph, String> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| usage(format!("malformed graph {}: {e}", path.display())))
}

fn ng(c: &NgCmd) -> Result<(String, Output), String> {
    let (name, out) = match c {
        NgCmd::Eval { graph, m } => {
            let g = read_graph(graph)?;
            g.check_hypothesis().map_err(usage)?;
            let p = ng_eval(&g, *m);
            let f = fg_m_expansion(&g);
            let text = format!("N_G: {p}\nF_G: {f}\n");
            ("ng eval", Output::ok(json!({ "ng": p, "fg": f }), text))
        }
        NgCmd::Verify { graph, m } => {
            let g = read_graph(graph)?;
            let mut checks = Vec::new();
            let formula = verify_ng_formula(&g, *m).map_err(usage)?;
            checks.push(Check {
                name: "formula".into(),
                passed: formula,
                witness: (!formula).then(|| format!("N_G ≠ F_G(𝕏) at width ≤ {m}")),
            });
            let sol = ng_solprime(&g, *m + 1);
            checks.push(Check {
                name: "Sol′".into(),
                passed: sol.is_ok(),
                witness: sol.err().map(|e| format!("{}: {e}", e.equation())),
            });
            let ok = checks.iter().all(|c| c.passed);
            ("ng verify", Output { text: render_checks(&checks), result: to_value(&checks), ok })
        }
        NgCmd::Gk { n } => {
            let r = gk_independence_rank(*n);
            let text = format!(
                "n = {}: {} graphs, rank {}, leading words recover K: {}, injective: {}\n",
                r.n, r.count, r.rank, r.leading_recovers_k, r.injective
            );
            ("ng gk", Output { result: to_value(&r), text, ok: r.holds() })
        }
    };
    Ok((name.to_string(), out))
}

fn wqsym(c: &WqsymCmd) -> Result<(String, Output), String> {
    let el = |s: &str| parse::<WQSymElement>(s, "WQSym element");
    let (name, out) = match c {
        WqsymCmd::Expand { f, n, virt } => {
            let f = el(f)?;
            let p = if *virt { virtual_expand(&f, *n) } else { expand(&f, *n) };
            ("wqsym expand", Output::ok(to_value(&p), format!("{p}\n")))
        }
        WqsymCmd::Product { f, g } => {
            let r = wq_product(&el(f)?, &el(g)?).map_err(usage)?;
            ("wqsym product", Output::ok(to_value(&r), format!("{r}\n")))
        }
        WqsymCmd::KernelDim { n, m } => {
            let r = phi_kernel_dimension(*n, m.unwrap_or_else(|| default_kernel_width(*n)));
            let text = format!(
                "n = {}, m = {}: dim WQSym_n = {}, image rank = {}, kernel = {}, dim 𝒦_n = {}, stable: {}\n",
                r.n,
                r.m,
                r.ambient,
                r.image_rank,
                r.nullity,
                r.ideal_dim,
                r.stable()
            );
            ("wqsym kernel-dim", Output { result: to_value(&r), text, ok: r.holds() })
        }
        WqsymCmd::Verify { n_max } => {
            let mut checks = Vec::new();
            for k in 1..=*n_max {
                for u in packed_words(k) {
                    let res = check_functional_eq_nc(|n| p_virtual_expand(&u, n), 6);
                    checks.push(Check {
                        name: format!("P_{u}"),
                        passed: res.is_ok(),
                        witness: res.err().map(|e| e.to_string()),
                    });
                }
            }
            let dim = kernel_ideal_dimension(*n_max);
            let want = set_compositions(*n_max, Parity::Odd).len();
            checks.push(Check {
                name: format!("dim 𝒦_{n_max} = {dim}"),
                passed: dim == want,
                witness: (dim != want).then(|| format!("expected {want} odd set compositions")),
            });
            let ok = checks.iter().all(|c| c.passed);
            ("wqsym verify", Output { text: render_checks(&checks), result: to_value(&checks), ok })
        }
    };
    Ok((name.to_string(), out))
}

fn render_checks(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) => writeln!(s, "{status} {} [witness: {w}]", c.name),
            None => writeln!(s, "{status} {}", c.name),
        }
        .expect("string write");
    }
    s
}

fn render_report(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} {} (criterion {}, {})\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.suite,
        r.criterion,
        match r.depth {
            Depth::Standard => "standard",
            Depth::Deep => "deep",
        }
    );
    for line in render_checks(&r.checks).lines() {
        writeln!(s, "  {line}").expect("string write");
    }
    for n in &r.notes {
        writeln!(s, "  note: {n}").expect("string write");
    }
    s
}

fn verify(suite: &str, depth: Depth) -> Result<Output, String> {
    let reports = if suite == "all" {
        run_all(depth)
    } else {
        vec![run_suite(suite, depth)
            .ok_or_else(|| usage(format!("unknown suite '{suite}'; expected one of: all, {}", SUITES.join(", "))))?]
    };
    let ok = reports.iter().all(|r| r.passed);
    let text: String = reports.iter().map(render_report).collect();
    Ok(Output { result: to_value(&reports), text, ok })
}

/// Parses a dot-separated composition, for callers outside clap.
pub fn parse_composition(s: &str) -> Result<Composition, String> {
    parse(s, "composition")
}

/// Parses a packed word such as `121`.
pub fn parse_packed_word(s: &str) -> Result<PackedWord, String> {
    parse(s, "packed word")
}
