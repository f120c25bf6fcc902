//! Command-line front end. [`run`] takes the argument list and output streams
//! so it can be driven from tests; the `modinv` binary is a thin wrapper.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::TensorElement;
use crate::dickson::{self, OMethod};
use crate::field::Field;
use crate::fixedpoint::{default_max_degree, fixed_dim_by_exterior, verify_module, VerificationReport};
use crate::groups::{act, gens_case, group_order_bfs, Case, CaseLabel};
use crate::milnor::MilnorIndexSet;

/// Exit code for success or a fully matching verification.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification reports a mismatch.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit code for bad arguments or inputs.
pub const EXIT_USAGE: i32 = 2;

const BFS_CAP: usize = 2_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "modinv",
    version,
    about = "Dickson and Mui invariants, Milnor operations and invariant-ring checks over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print e_n, or c_{n,i} with --index.
    Dickson {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print Q_I dx_1...dx_n, or the bracket [r: i_1, ..., i_{n-r}] with --det-form.
    Mui {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        /// Comma-separated indices, e.g. 0,2 (empty for the empty set).
        #[arg(long = "I", value_name = "LIST", default_value = "")]
        index_set: String,
        #[arg(long)]
        det_form: bool,
        #[arg(long, requires = "det_form")]
        r: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print O_{n-1}(x_i), the product of x_i + v over v in the span of x_2..x_n.
    Opoly {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = OMethodArg::DicksonSum)]
        method: OMethodArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare invariant dimensions with the predicted Hilbert series and check every listed element.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of the invariants in one cohomological degree.
    FixedDim {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group order from the formula, or by enumeration with --bfs.
    Order {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        bfs: bool,
        /// Print the presentation and both orders as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply generator k of a case to an element read from JSON.
    Act {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        generator: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: i64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Monic modulus coefficients, constant term first, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long = "case", value_name = "LABEL")]
    label: CaseLabel,
    /// Size for sl, gl, g0 and parabolic.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Human-readable sum of terms instead of JSON.
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OMethodArg {
    Product,
    DicksonSum,
}

struct Failure(i32, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn make_field(p: i64, e: u32, modulus: Option<&[i64]>) -> Result<Field, Failure> {
    Field::new(p, e, modulus).map_err(usage)
}

impl FieldArgs {
    fn build(&self) -> Result<Field, Failure> {
        make_field(self.p, self.e, self.modulus.as_deref())
    }
}

impl CaseArgs {
    fn build(&self) -> Result<Case, Failure> {
        match self.label.fixed_shape() {
            Some((n, p)) => {
                if self.n.is_some_and(|m| m != n) || self.p.is_some_and(|m| m != p as i64) || self.e != 1 {
                    return Err(usage(format!("case {} is fixed to n = {n} over F_{p}", self.label)));
                }
                Case::weyl(self.label).map_err(usage)
            }
            None => {
                let n = self.n.ok_or_else(|| usage(format!("case {} needs --n", self.label)))?;
                let p = self.p.ok_or_else(|| usage(format!("case {} needs --p", self.label)))?;
                let field = make_field(p, self.e, self.modulus.as_deref())?;
                Case::new(self.label, n, &field).map_err(usage)
            }
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(usage),
    }
}

fn emit_element(out: &mut dyn Write, u: &TensorElement, output: &OutputArgs, var: &str) -> Result<(), Failure> {
    let text = if output.pretty { u.format(var) } else { u.to_json() };
    emit(out, output.out.as_ref(), &text)
}

fn parse_index_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| usage(format!("bad index {t:?}: {e}"))))
        .collect()
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!("{} up to degree {}\n", r.case, r.max_degree);
    s.push_str("   d  computed  predicted\n");
    for row in &r.rows {
        let flag = if row.matches { "" } else { "  MISMATCH" };
        s.push_str(&format!("{:>4}  {:>8}  {:>9}{flag}\n", row.d, row.computed, row.predicted));
    }
    let ok = |rows: &[crate::fixedpoint::CheckRow]| rows.iter().filter(|c| c.passed).count();
    s.push_str(&format!("invariant elements: {}/{}\n", ok(&r.invariance), r.invariance.len()));
    s.push_str(&format!("degree bookkeeping: {}/{}\n", ok(&r.degrees), r.degrees.len()));
    if !r.polynomial_rows.is_empty() {
        let good = r.polynomial_rows.iter().filter(|x| x.matches).count();
        s.push_str(&format!("polynomial part: {good}/{} degrees\n", r.polynomial_rows.len()));
    }
    if !r.eigen.is_empty() {
        s.push_str(&format!("eigenvalue checks: {}/{}\n", ok(&r.eigen), r.eigen.len()));
    }
    let w = &r.wilkerson;
    s.push_str(&format!("degree product {:?} = {} vs order {}\n", w.degrees, w.degree_product, w.order));
    if w.witness.applicable {
        s.push_str(&format!(
            "witness {}: monic {}, dickson coefficients {}, vanishes {}\n",
            w.witness.witness, w.witness.monic, w.witness.dickson_coefficients, w.witness.vanishes
        ));
    }
    let mismatches = r.mismatches();
    if mismatches.is_empty() {
        s.push_str(&format!("all checks pass up to degree {}", r.max_degree));
    } else {
        s.push_str(&format!("mismatches: {}", mismatches.join("; ")));
    }
    s
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Dickson { field, n, index, output } => {
            let f = field.build()?;
            let poly = match index {
                None => dickson::dickson_e(&f, n),
                Some(i) if i <= n => dickson::dickson_c(&f, n, i),
                Some(i) => return Err(usage(format!("index {i} exceeds n = {n}"))),
            };
            emit_element(out, &TensorElement::from_poly(poly), &output, "x")?;
        }
        Command::Mui { field, n, index_set, det_form, r, output } => {
            let f = field.build()?;
            let indices = parse_index_list(&index_set)?;
            let u = if det_form {
                let r = r.ok_or_else(|| usage("--det-form needs --r"))?;
                dickson::mui_bracket(&f, r, &indices, n).map_err(usage)?
            } else {
                let set = MilnorIndexSet::new(indices).map_err(usage)?;
                if set.indices().iter().any(|&i| i as usize >= n) {
                    return Err(usage(format!("indices of I must be below n = {n}")));
                }
                dickson::mui_q(&f, &set, n)
            };
            emit_element(out, &u, &output, "x")?;
        }
        Command::Opoly { field, n, i, method, output } => {
            let f = field.build()?;
            let method = match method {
                OMethodArg::Product => OMethod::Product,
                OMethodArg::DicksonSum => OMethod::DicksonSum,
            };
            let poly = dickson::o_poly(&f, n, i, method).map_err(usage)?;
            emit_element(out, &TensorElement::from_poly(poly), &output, "x")?;
        }
        Command::Verify { case, max_degree, json, out: path } => {
            let case = case.build()?;
            let d_max = max_degree.unwrap_or_else(|| default_max_degree(&case));
            let report = verify_module(&case, d_max).map_err(usage)?;
            let text = if json { serde_json::to_string(&report).map_err(usage)? } else { report_text(&report) };
            emit(out, path.as_ref(), &text)?;
            return Ok(if report.passed { EXIT_OK } else { EXIT_MISMATCH });
        }
        Command::FixedDim { case, degree, json, out: path } => {
            let case = case.build()?;
            let pres = gens_case(&case).map_err(usage)?;
            let by_ext = fixed_dim_by_exterior(&pres, degree).map_err(usage)?;
            let total: usize = by_ext.iter().map(|(_, d)| d).sum();
            let text = if json {
                let parts: Vec<_> = by_ext.iter().map(|(r, d)| serde_json::json!({"r": r, "dim": d})).collect();
                serde_json::json!({"case": case.name(), "degree": degree, "dim": total, "by_exterior_degree": parts})
                    .to_string()
            } else {
                total.to_string()
            };
            emit(out, path.as_ref(), &text)?;
        }
        Command::Order { case, bfs, json, out: path } => {
            let case = case.build()?;
            let pres = gens_case(&case).map_err(usage)?;
            let counted = if bfs { Some(group_order_bfs(&pres, BFS_CAP).map_err(usage)?) } else { None };
            let text = if json {
                serde_json::json!({
                    "case": case.name(),
                    "order_formula": pres.order_formula.to_string(),
                    "bfs": counted,
                    "presentation": pres.to_json_value(),
                })
                .to_string()
            } else {
                counted.map_or(pres.order_formula.to_string(), |c| c.to_string())
            };
            emit(out, path.as_ref(), &text)?;
            if counted.is_some_and(|c| c as u128 != pres.order_formula) {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Act { case, input, generator, output } => {
            let case = case.build()?;
            let pres = gens_case(&case).map_err(usage)?;
            let g = pres.generators.get(generator).ok_or_else(|| {
                usage(format!("generator {generator} out of range; the case has {}", pres.generators.len()))
            })?;
            let text = std::fs::read_to_string(&input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let u = TensorElement::from_json(&text).map_err(usage)?;
            if u.field() != &case.field {
                return Err(usage("input element is over a different field"));
            }
            let v = act(g, &u).map_err(usage)?;
            emit_element(out, &v, &output, case.var_name())?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            if code == EXIT_USAGE {
                let _ = writeln!(err, "run `modinv --help` for usage");
            }
            code
        }
    }
}
