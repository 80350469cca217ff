//! Command-line front end: parse JSON inputs, dispatch to the library,
//! emit exact or float results and axiom reports.
//!
//! Exit codes: 0 success, 1 domain error, 2 malformed input, 3 axiom
//! check failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use buildings::axioms;
use buildings::jsonio::{self, FiltrationJson, SplitNormJson};
use buildings::tits::{self, PairingForm};
use buildings::valnorm;
use buildings::Rat;

#[derive(Parser)]
#[command(name = "buildings", about = "Filtrations, norms and buildings for GL_n", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Standard,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceArg {
    Tits,
    Valnorm,
    Symspace,
}

#[derive(Subcommand)]
enum Command {
    /// The sorted weight multiset t(F) of a filtration.
    Type { file: PathBuf },
    /// Exact squared distance and float angle between two filtrations.
    Distance {
        #[arg(long, value_enum, default_value = "standard")]
        form: FormArg,
        first: PathBuf,
        second: PathBuf,
    },
    /// Filtration addition (two filtrations), or norm translation
    /// (a split norm plus a filtration).
    Add { first: PathBuf, second: PathBuf },
    /// Retraction of a filtration onto the Levi of a flag.
    Retract { filtration: PathBuf, flag: PathBuf },
    /// Cartan invariant of two split norms.
    Cartan {
        /// Expected prime; checked against the inputs.
        #[arg(long)]
        p: Option<u64>,
        first: PathBuf,
        second: PathBuf,
    },
    /// Simultaneously adapted basis of two norms, or of a norm and a
    /// filtration.
    Adapt {
        #[arg(long)]
        p: Option<u64>,
        first: PathBuf,
        second: PathBuf,
    },
    /// Residue filtration loc(α, M) of a norm at a lattice point.
    Loc {
        #[arg(long)]
        p: Option<u64>,
        norm: PathBuf,
        lattice: PathBuf,
    },
    /// Moy-Prasad ball of the adjoint norm of α at level r.
    MoyPrasad {
        #[arg(long, default_value = "0")]
        r: String,
        norm: PathBuf,
    },
    /// Fischer-Courant vector and dⁿ of two Euclidean norms.
    Symdist { first: PathBuf, second: PathBuf },
    /// Run the axiom suites against one instance.
    Axioms {
        #[arg(long, value_enum)]
        instance: InstanceArg,
        #[arg(long, default_value = "3")]
        n: usize,
        #[arg(long, default_value = "2")]
        p: u64,
        #[arg(long, default_value = "100")]
        trials: u32,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Tolerance override for the float instance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

/// Error with an exit code: 1 for domain errors, 2 for malformed input.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn read_value(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn as_filtration(v: &Value) -> Result<buildings::QFiltration, CliError> {
    let j: FiltrationJson =
        serde_json::from_value(v.clone()).map_err(CliError::input)?;
    jsonio::filtration_from_json(&j).map_err(CliError::input)
}

fn as_norm(v: &Value) -> Result<valnorm::SplitNorm, CliError> {
    let j: SplitNormJson = serde_json::from_value(v.clone()).map_err(CliError::input)?;
    jsonio::split_norm_from_json(&j).map_err(CliError::input)
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    use std::str::FromStr;
    Rat::from_str(s.trim()).map_err(|_| CliError::input(format!("malformed fraction {s}")))
}

fn check_prime(expected: Option<u64>, got: u64) -> Result<(), CliError> {
    match expected {
        Some(p) if p != got => Err(CliError::input(format!(
            "--p {p} does not match the input prime {got}"
        ))),
        _ => Ok(()),
    }
}

fn is_norm_value(v: &Value) -> bool {
    v.get("weights").is_some() && v.get("p").is_some()
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Type { file } => {
            let f = as_filtration(&read_value(&file)?)?;
            let values: Vec<String> = f.type_of().values().iter().map(Rat::to_string).collect();
            Ok((json!({ "type": values }).to_string(), 0))
        }
        Command::Distance {
            form,
            first,
            second,
        } => {
            let f1 = as_filtration(&read_value(&first)?)?;
            let f2 = as_filtration(&read_value(&second)?)?;
            let form = match form {
                FormArg::Standard => PairingForm::Standard,
                FormArg::Adjoint => PairingForm::Adjoint,
            };
            let d2 = tits::distance_sq(&f1, &f2, form).map_err(CliError::domain)?;
            let angle = match tits::angle(&f1, &f2, form) {
                Ok(a) => json!(a),
                Err(_) => Value::Null,
            };
            Ok((
                json!({ "d2": d2.to_string(), "angle": angle }).to_string(),
                0,
            ))
        }
        Command::Add { first, second } => {
            let a = read_value(&first)?;
            let b = read_value(&second)?;
            if is_norm_value(&a) {
                let norm = as_norm(&a)?;
                let f = as_filtration(&b)?;
                let moved = valnorm::add_fil_norm(&norm, &f).map_err(CliError::domain)?;
                let out = serde_json::to_string(&jsonio::split_norm_to_json(&moved))
                    .map_err(CliError::domain)?;
                Ok((out, 0))
            } else {
                let f1 = as_filtration(&a)?;
                let f2 = as_filtration(&b)?;
                let sum = tits::add_fil(&f1, &f2).map_err(CliError::domain)?;
                let out = serde_json::to_string(&jsonio::filtration_to_json(&sum))
                    .map_err(CliError::domain)?;
                Ok((out, 0))
            }
        }
        Command::Retract { filtration, flag } => {
            let f = as_filtration(&read_value(&filtration)?)?;
            let flag_json: jsonio::FlagJson =
                serde_json::from_value(read_value(&flag)?).map_err(CliError::input)?;
            let flag = jsonio::flag_from_json(&flag_json).map_err(CliError::input)?;
            let r = tits::retract(&f, &flag).map_err(CliError::domain)?;
            let out = serde_json::to_string(&jsonio::filtration_to_json(&r))
                .map_err(CliError::domain)?;
            Ok((out, 0))
        }
        Command::Cartan { p, first, second } => {
            let a = as_norm(&read_value(&first)?)?;
            let b = as_norm(&read_value(&second)?)?;
            check_prime(p, a.p())?;
            check_prime(p, b.p())?;
            let c = valnorm::cartan(&a, &b).map_err(CliError::domain)?;
            let values: Vec<String> = c.values().iter().map(Rat::to_string).collect();
            Ok((json!({ "cartan": values }).to_string(), 0))
        }
        Command::Adapt { p, first, second } => {
            let a = as_norm(&read_value(&first)?)?;
            check_prime(p, a.p())?;
            let b = read_value(&second)?;
            let n = a.dim();
            let col_strings = |m: &buildings::QMatrix| -> Vec<Vec<String>> {
                (0..n)
                    .map(|j| (0..n).map(|i| m[(i, j)].to_string()).collect())
                    .collect()
            };
            if is_norm_value(&b) {
                let beta = as_norm(&b)?;
                check_prime(p, beta.p())?;
                let common =
                    valnorm::simultaneous_adapt(&a, &beta).map_err(CliError::domain)?;
                let aw: Vec<String> = common.alpha_weights.iter().map(Rat::to_string).collect();
                let bw: Vec<String> = common.beta_weights.iter().map(Rat::to_string).collect();
                Ok((
                    json!({
                        "basis": col_strings(&common.vectors),
                        "alpha_weights": aw,
                        "beta_weights": bw,
                    })
                    .to_string(),
                    0,
                ))
            } else {
                let f = as_filtration(&b)?;
                let adapted =
                    valnorm::adapt_to_filtration(&a, &f).map_err(CliError::domain)?;
                let aw: Vec<String> = adapted.alpha_weights.iter().map(Rat::to_string).collect();
                let fw: Vec<String> = adapted.fil_weights.iter().map(Rat::to_string).collect();
                Ok((
                    json!({
                        "basis": col_strings(&adapted.vectors),
                        "alpha_weights": aw,
                        "fil_weights": fw,
                    })
                    .to_string(),
                    0,
                ))
            }
        }
        Command::Loc { p, norm, lattice } => {
            let alpha = as_norm(&read_value(&norm)?)?;
            check_prime(p, alpha.p())?;
            let lattice_json: SplitNormJson =
                serde_json::from_value(read_value(&lattice)?).map_err(CliError::input)?;
            let m = jsonio::lattice_from_json(&lattice_json).map_err(CliError::input)?;
            check_prime(p, m.norm().p())?;
            let res = valnorm::loc(&alpha, &m).map_err(CliError::domain)?;
            let out = serde_json::to_string(&jsonio::residue_filtration_to_json(
                &res,
                alpha.p(),
            ))
            .map_err(CliError::domain)?;
            Ok((out, 0))
        }
        Command::MoyPrasad { r, norm } => {
            let alpha = as_norm(&read_value(&norm)?)?;
            let level = parse_rat(&r)?;
            let end = valnorm::hom_norm(&alpha, &alpha).map_err(CliError::domain)?;
            let gens = valnorm::moy_prasad(&end, &level);
            let out: Vec<Vec<Vec<String>>> =
                gens.iter().map(jsonio::qmatrix_to_json).collect();
            Ok((json!({ "generators": out }).to_string(), 0))
        }
        Command::Symdist { first, second } => {
            let a: jsonio::EuclideanNormJson =
                serde_json::from_value(read_value(&first)?).map_err(CliError::input)?;
            let b: jsonio::EuclideanNormJson =
                serde_json::from_value(read_value(&second)?).map_err(CliError::input)?;
            let alpha = jsonio::euclidean_from_json(&a).map_err(CliError::input)?;
            let beta = jsonio::euclidean_from_json(&b).map_err(CliError::input)?;
            let d = buildings::symspace::fischer_courant(&alpha, &beta)
                .map_err(CliError::domain)?;
            let total: f64 = d.iter().sum();
            Ok((json!({ "d": d, "dn": total }).to_string(), 0))
        }
        Command::Axioms {
            instance,
            n,
            p,
            trials,
            seed,
            tolerance,
        } => {
            let reports = match instance {
                InstanceArg::Tits => {
                    axioms::full_suite(&axioms::TitsInstance { n }, trials, seed)
                }
                InstanceArg::Valnorm => {
                    axioms::full_suite(&axioms::ValnormInstance { n, p }, trials, seed)
                }
                InstanceArg::Symspace => {
                    let inst = axioms::SymspaceInstance {
                        n,
                        tol: tolerance.unwrap_or(axioms::SYM_TOL),
                    };
                    axioms::full_suite(&inst, trials, seed)
                }
            };
            let all_pass = reports.iter().all(|r| r.passed());
            let out = serde_json::to_string(&reports).map_err(CliError::domain)?;
            Ok((out, if all_pass { 0 } else { 3 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, code)) => {
            println!("{output}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
