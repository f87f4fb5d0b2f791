mod emit;
mod report;
mod verify;
mod zeta;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sbdo_core::jordan::{JordanAlgebra, Param};
use sbdo_core::poly::Rational;
use sbdo_core::source::{build_b, build_d, build_f};

use emit::Format;

#[derive(Parser)]
#[command(name = "sbdo", version, about = "Source operators, Rankin-Cohen brackets and zeta functional equations on Jordan algebras")]
struct Cli {
    /// Worker threads for parallel checks (defaults to all cores).
    #[arg(long, global = true, env = "SBDO_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the operator D_{s,t} in the (ξ, ζ) variables.
    #[command(name = "emit-D")]
    EmitD(EmitArgs),
    /// Emit the source operator F_{λ,μ} in the (x, y) variables.
    #[command(name = "emit-F")]
    EmitF(EmitArgs),
    /// Emit the bracket B^{(k)} as an operator on (x, y) followed by restriction.
    #[command(name = "emit-B")]
    EmitB(EmitArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Zeta functional equations.
    Zeta {
        #[command(subcommand)]
        cmd: ZetaCmd,
    },
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long, default_value = "R")]
    algebra: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Order of the bracket (emit-B only).
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    s: Option<Rational>,
    #[arg(long)]
    t: Option<Rational>,
    #[arg(long)]
    lambda: Option<Rational>,
    #[arg(long)]
    mu: Option<Rational>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value = "R")]
    algebra: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Suite {
    /// The source-operator identity on all monomials up to a degree cap.
    Source {
        #[command(flatten)]
        common: SuiteArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Fischer duality, adjunction, Taylor and Leibniz formulas.
    Fischer {
        #[command(flatten)]
        common: SuiteArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Bernstein-Sato identities on every element of the translate span of det.
    Bernstein {
        #[command(flatten)]
        common: SuiteArgs,
    },
    /// Infinitesimal covariance of F and B^{(j)} for j ≤ k.
    Covariance {
        #[command(flatten)]
        common: SuiteArgs,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Symbol polynomials, the symbol theorem and classical brackets.
    Symbols {
        #[command(flatten)]
        common: SuiteArgs,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Both sides of the functional equation for a Hermite test function (JSON).
    Check {
        /// R, Sym2 or Rpq:p,q
        #[arg(long)]
        case: String,
        #[arg(long, value_parser = zeta::parse_complex, allow_hyphen_values = true)]
        s: num_complex::Complex64,
        /// Hermite orders per coordinate, e.g. h0,h2
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Gamma-matrix of a functional equation case at one s (JSON).
    Matrices {
        /// eucl_a, eucl_a', eucl_b1, eucl_b3, eucl_c0..eucl_c3, Rpq:p,q, typeII_scalar, typeIIIIV_scalar
        #[arg(long)]
        case: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r_plus: Option<usize>,
        #[arg(long, value_parser = zeta::parse_complex, allow_hyphen_values = true)]
        s: num_complex::Complex64,
    },
}

type Run = Result<bool, String>;

/// Writes to stdout, treating a closed pipe as success.
fn emit_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn algebra(id: &str) -> Result<JordanAlgebra, String> {
    JordanAlgebra::from_id(id).map_err(|e| e.to_string())
}

fn emit(which: char, a: &EmitArgs) -> Run {
    let alg = algebra(&a.algebra)?;
    let values = emit::specialization(&[
        (Param::S, a.s.clone()),
        (Param::T, a.t.clone()),
        (Param::Lambda, a.lambda.clone()),
        (Param::Mu, a.mu.clone()),
    ]);
    let d = build_d(&alg);
    let (name, op, symbol) = match which {
        'D' => ("D".to_string(), d, None),
        'F' => ("F".to_string(), build_f(&alg, &d), None),
        _ => {
            let b = build_b(&alg, &build_f(&alg, &d), a.k);
            let sym = b.symbol.specialize(&values).to_text();
            (format!("B{}", a.k), b.b.lift(), Some(sym))
        }
    };
    let op = op.specialize(&values);
    emit_out(&emit::render(&alg, &name, &op, symbol, &values, a.format));
    Ok(true)
}

fn suite(s: &Suite) -> Run {
    let (common, report) = match s {
        Suite::Source { common, degree } => (common, verify::source(&algebra(&common.algebra)?, *degree)),
        Suite::Fischer { common, seed, samples } => {
            (common, verify::fischer(&algebra(&common.algebra)?, *seed, *samples))
        }
        Suite::Bernstein { common } => (common, verify::bernstein(&algebra(&common.algebra)?)),
        Suite::Covariance { common, k } => (common, verify::covariance(&algebra(&common.algebra)?, *k)),
        Suite::Symbols { common, k } => (common, verify::symbols(&algebra(&common.algebra)?, *k)),
    };
    emit_out(report.render(common.json).trim_end());
    Ok(report.pass)
}

fn zeta_cmd(c: &ZetaCmd) -> Run {
    match c {
        ZetaCmd::Check { case, s, f, tol } => {
            let orders = zeta::parse_orders(f)?;
            let r = zeta::check(case, *s, orders, *tol).map_err(|e| e.to_string())?;
            emit_out(&serde_json::to_string_pretty(&r).unwrap());
            Ok(r.pass())
        }
        ZetaCmd::Matrices { case, r, d, p, q, n, r_plus, s } => {
            let args = zeta::MatrixArgs {
                case: case.clone(),
                r: *r,
                d: *d,
                p: *p,
                q: *q,
                n: *n,
                r_plus: *r_plus,
            };
            let m = zeta::matrices(&args, *s).map_err(|e| e.to_string())?;
            emit_out(&serde_json::to_string_pretty(&m).unwrap());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let run = match &cli.command {
        Command::EmitD(a) => emit('D', a),
        Command::EmitF(a) => emit('F', a),
        Command::EmitB(a) => emit('B', a),
        Command::Verify { suite: s } => suite(s),
        Command::Zeta { cmd } => zeta_cmd(cmd),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
