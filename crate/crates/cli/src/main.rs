use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use aqg::algebra::{fmt_vec, DEFAULT_MAX_DIM};
use aqg::corep::{build_universal, check_round_trip, universal_report, Corepresentation};
use aqg::duality::{bidual_report, Dual};
use aqg::haar::QuantumGroup;
use aqg::models::{standard_models, CorepSpec, Spec};
use aqg::report::{Check, Report};
use aqg::suite::{self, error_witness};
use aqg::{Error, Matrix, Scalar};

const PASS: u8 = 0;
const FALSIFIED: u8 = 2;
const BAD_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "aqg", version, about = "Exact workbench for finite algebraic quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest accepted algebra dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite on a spec.
    Check {
        /// Spec file, or `-` for standard input.
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the Haar functionals and modular data.
    Haar {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the dual as a spec.
    Dual {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the dual of the dual, or verify the evaluation isomorphism.
    Bidual {
        spec: PathBuf,
        /// Check that evaluation is an isomorphism onto the bidual.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build the universal corepresentation and verify it.
    Universal {
        spec: PathBuf,
        /// Also write U as a corepresentation file.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Corepresentation tools.
    Corep {
        #[command(subcommand)]
        command: CorepCommand,
    },
    /// Print one of the built-in models as a spec.
    Model {
        /// fun_c2, grp_c2, fun_c4, grp_c4, fun_s3, grp_s3 or sweedler.
        name: String,
    },
}

#[derive(Subcommand)]
enum CorepCommand {
    /// Verify a corepresentation file against a spec.
    Verify {
        spec: PathBuf,
        corep: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure {
                code: BAD_INPUT,
                message: format!("input error: {e}"),
            }
        } else {
            Failure {
                code: FALSIFIED,
                message: format!("falsified: {e}\nwitness: {}", error_witness(&e)),
            }
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { spec, common } => cmd_check(&spec, &common),
        Command::Haar { spec, common } => cmd_haar(&spec, &common),
        Command::Dual { spec, common } => cmd_dual(&spec, &common),
        Command::Bidual { spec, verify, common } => cmd_bidual(&spec, verify, &common),
        Command::Universal { spec, output, common } => cmd_universal(&spec, output.as_deref(), &common),
        Command::Corep {
            command: CorepCommand::Verify { spec, corep, common },
        } => cmd_corep_verify(&spec, &corep, &common),
        Command::Model { name } => cmd_model(&name),
    }
}

fn verdict(rep: &Report) -> u8 {
    if rep.all_passed() {
        PASS
    } else {
        FALSIFIED
    }
}

fn check_line(c: &Check) -> String {
    let status = if c.passed { "PASS" } else { "FAIL" };
    match &c.witness {
        None => format!("{status} {:<36} {}", c.id, c.anchor),
        Some(w) => format!("{status} {:<36} {}\n     witness {w}", c.id, c.anchor),
    }
}

fn print_report(name: &str, rep: &Report, json: bool) {
    if json {
        let v = json!({
            "spec": name,
            "passed": rep.all_passed(),
            "total": rep.len(),
            "failed": rep.failures().count(),
            "checks": rep.checks,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        for c in &rep.checks {
            println!("{}", check_line(c));
        }
        println!(
            "{name}: {} checks, {} failed",
            rep.len(),
            rep.failures().count()
        );
    }
}

fn load_qg(spec: &Spec, common: &Common) -> Result<Arc<QuantumGroup>, Failure> {
    let h = spec.load(common.max_dim)?;
    Ok(Arc::new(QuantumGroup::new(h)?))
}

fn cmd_check(path: &Path, common: &Common) -> Outcome {
    let spec = Spec::read(path)?;
    let p = suite::run(&spec, common.max_dim)?;
    print_report(&spec.name, &p.report, common.json);
    Ok(verdict(&p.report))
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

fn cmd_haar(path: &Path, common: &Common) -> Outcome {
    let spec = Spec::read(path)?;
    let q = load_qg(&spec, common)?;
    let alg = q.hopf().algebra();
    let delta = alg.element_of(q.delta_element());
    let rep = q.modular_report();
    if common.json {
        let v = json!({
            "spec": spec.name,
            "phi": strings(q.phi()),
            "psi": strings(q.psi()),
            "delta": delta.as_deref().map(strings),
            "mu": q.mu().to_string(),
            "unimodular": q.is_unimodular(),
            "rho": matrix_strings(q.rho()),
            "rho_prime": matrix_strings(q.rho_prime()),
            "checks": rep.checks,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        for (name, w) in [("phi", q.phi()), ("psi", q.psi())] {
            for (i, c) in w.iter().enumerate() {
                println!("{name}(e{i}) = {c}");
            }
        }
        match &delta {
            Some(d) => println!("delta = {}", fmt_vec(d)),
            None => println!("delta is a proper multiplier"),
        }
        println!("mu = {}", q.mu());
        println!("unimodular = {}", q.is_unimodular());
        println!("rho = {:?}", q.rho());
        println!("rho' = {:?}", q.rho_prime());
        print_report(&spec.name, &rep, false);
    }
    Ok(verdict(&rep))
}

fn build_dual(spec: &Spec, common: &Common) -> Result<Arc<Dual>, Failure> {
    let q = load_qg(spec, common)?;
    Ok(Arc::new(Dual::new(q)?))
}

fn cmd_dual(path: &Path, common: &Common) -> Outcome {
    let spec = Spec::read(path)?;
    let d = build_dual(&spec, common)?;
    print!("{}", d.to_spec(&format!("dual_{}", spec.name)).to_json());
    Ok(PASS)
}

fn cmd_bidual(path: &Path, verify: bool, common: &Common) -> Outcome {
    let spec = Spec::read(path)?;
    let d = build_dual(&spec, common)?;
    let bd = Arc::new(Dual::new(d.quantum_group().clone())?);
    if !verify {
        print!("{}", bd.to_spec(&format!("bidual_{}", spec.name)).to_json());
        return Ok(PASS);
    }
    let rep = bidual_report(&d, &bd);
    print_report(&spec.name, &rep, common.json);
    Ok(verdict(&rep))
}

/// Nonzero coefficients of `U = Σ c·e_k⊗ω_j`.
fn element_terms(x: &[Scalar], m: usize) -> Vec<(usize, usize, Scalar)> {
    x.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| (idx / m, idx % m, c.clone()))
        .collect()
}

fn cmd_universal(path: &Path, output: Option<&Path>, common: &Common) -> Outcome {
    let spec = Spec::read(path)?;
    let d = build_dual(&spec, common)?;
    let u = build_universal(&d)?;
    let rep = universal_report(&u, &d);
    let m = d.dim();
    let terms = u.tensor().element_of(u.multiplier()).map(|x| element_terms(&x, m));
    if let Some(out) = output {
        std::fs::write(out, CorepSpec::new(u.target(), u.multiplier()).to_json())
            .map_err(Error::from)?;
    }
    if common.json {
        let v = json!({
            "spec": spec.name,
            "terms": terms.as_ref().map(|t| t
                .iter()
                .map(|(k, j, c)| json!([k, j, c.to_string()]))
                .collect::<Vec<Value>>()),
            "passed": rep.all_passed(),
            "checks": rep.checks,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        match &terms {
            Some(t) => {
                println!("U = sum of c * e_k (x) w_j over:");
                for (k, j, c) in t {
                    println!("  e{k} (x) w{j} : {c}");
                }
            }
            None => println!("U is a proper multiplier"),
        }
        print_report(&spec.name, &rep, false);
    }
    Ok(verdict(&rep))
}

fn cmd_corep_verify(spec_path: &Path, corep_path: &Path, common: &Common) -> Outcome {
    let spec = Spec::read(spec_path)?;
    let file = CorepSpec::read(corep_path)?;
    let d = build_dual(&spec, common)?;
    let q = d.base().clone();
    let (b, v) = file.load(q.dim(), common.max_dim)?;
    let c = Corepresentation::unchecked(q, Arc::new(b), v)?;
    let mut rep = c.report(&d);
    if c.is_corep() {
        match c.nondegeneracy(&d) {
            Ok(nd) => rep.extend(nd.report()),
            Err(e) => rep.push(Check::fail(
                "nondegeneracy.equivalence",
                "V invertible ⇔ π_V non-degenerate ⇔ V(A⊙B) = (A⊙B)V = A⊙B",
                error_witness(&e),
            )),
        }
        if c.is_nondegenerate() {
            let u = build_universal(&d)?;
            rep.push(Check::from_result(
                "corep.round-trip",
                "(ι⊙π_V)(U) = V",
                check_round_trip(&c, &u, &d),
            ));
            if c.quantum_group().hopf().algebra().star().is_some() && c.target().star().is_some() {
                rep.extend(c.unitarity(&d)?.report());
            }
        }
    }
    print_report(&spec.name, &rep, common.json);
    Ok(verdict(&rep))
}

fn cmd_model(name: &str) -> Outcome {
    match standard_models().into_iter().find(|s| s.name == name) {
        Some(s) => {
            print!("{}", s.to_json());
            Ok(PASS)
        }
        None => Err(Failure {
            code: BAD_INPUT,
            message: format!("input error: unknown model {name}"),
        }),
    }
}
