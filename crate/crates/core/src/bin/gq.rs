//! `gq`: command-line front end for the galois-qudit toolkit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use galois_qudit::bases::{find_self_dual, FieldBasis};
use galois_qudit::css::DEFAULT_DISTANCE_BUDGET;
use galois_qudit::gates::{build_gate, hierarchy_level, GateKind};
use galois_qudit::grs::QrsCode;
use galois_qudit::io::{tableau_from_json, tableau_to_json, CodeJson};
use galois_qudit::q2b::{convert_code, default_assignment, to_alist, to_dense_text, QubitBundle};
use galois_qudit::tableau::run_cat_gadget;
use galois_qudit::{verify, Field, GqError, PauliWord, Result};

#[derive(Parser)]
#[command(name = "gq", version, about = "Galois-qudit codes, tableaux and gates over GF(2^s)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field arithmetic.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Bases of F_q over F_2.
    #[command(subcommand)]
    Basis(BasisCmd),
    /// CSS and quantum Reed-Solomon codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Tableau simulation.
    #[command(subcommand)]
    Sim(SimCmd),
    /// Gate analysis.
    #[command(subcommand)]
    Gates(GatesCmd),
    /// Acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Clone)]
struct FieldSpec {
    /// Field order (a power of two); uses the smallest irreducible modulus.
    #[arg(long)]
    q: Option<u64>,
    /// Irreducible modulus as an integer bitmask, e.g. 11 for x^3+x+1.
    #[arg(long)]
    modulus: Option<u64>,
}

impl FieldSpec {
    fn field(&self) -> Result<Field> {
        match (self.q, self.modulus) {
            (_, Some(m)) => {
                let f = Field::from_modulus(m)?;
                if let Some(q) = self.q {
                    if f.q() as u64 != q {
                        return Err(GqError::InvalidArgument(format!("modulus {m} does not define F_{q}")));
                    }
                }
                Ok(f)
            }
            (Some(q), None) => Field::with_order(q),
            (None, None) => Err(GqError::InvalidArgument("give --q or --modulus".into())),
        }
    }
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Summary of the field: order, modulus, trace values.
    Info(FieldSpec),
    /// Multiplication table.
    Table(FieldSpec),
}

#[derive(Subcommand)]
enum BasisCmd {
    /// A self-dual basis (lexicographically first).
    Selfdual(FieldSpec),
    /// Trace-dual of a basis.
    Dual {
        #[command(flatten)]
        field: FieldSpec,
        /// Basis element codes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Hx,
    Hz,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Alist,
    Dense,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Build QRS(n, k1, k2) from nested GRS codes.
    Qrs {
        #[command(flatten)]
        field: FieldSpec,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Evaluation points (default: the first n codes).
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u32>>,
        /// Column multipliers (default: all ones).
        #[arg(long, value_delimiter = ',')]
        v: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameters [[n, k, d]] with brute-force distances.
    Params {
        #[arg(long = "in")]
        input: PathBuf,
        /// Maximum number of codewords to enumerate per distance.
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        budget: u64,
    },
    /// Convert to a qubit CSS code with a self-dual basis on every qudit.
    ToQubits {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a qubit parity-check matrix.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "hx")]
        which: Which,
        #[arg(long, value_enum, default_value = "alist")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SimCmd {
    /// Measure a pure-type Pauli on a tableau read from JSON.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        /// Pauli word `+|x:[..]|z:[..]`.
        #[arg(long)]
        pauli: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cat-state syndrome extraction on a 4-qudit block.
    CatDemo {
        #[command(flatten)]
        field: FieldSpec,
        #[arg(long, value_delimiter = ',', required = true)]
        gammas: Vec<u32>,
        #[arg(long)]
        eta: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GatesCmd {
    /// Clifford-hierarchy level of a gate.
    Level {
        #[command(flatten)]
        field: FieldSpec,
        /// x, z, hadamard, mult, cnot, ccz, multi_cz, u_n, s, t.
        #[arg(long)]
        gate: String,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        gamma: Option<u32>,
        #[arg(long)]
        delta: Option<u32>,
        /// Qudit count for multi_cz, exponent for u_n.
        #[arg(long)]
        count: Option<u32>,
        #[arg(long, default_value_t = 3)]
        max_level: u32,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every acceptance criterion.
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn read_code(path: &PathBuf) -> Result<CodeJson> {
    galois_qudit::io::code_from_json(&fs::read_to_string(path)?)
}

fn field_info(f: &Field) -> Result<String> {
    let traces: Vec<u32> = f.elements().map(|a| f.trace(a)).collect();
    let sd = find_self_dual(f)?;
    Ok(pretty(&json!({
        "q": f.q(),
        "s": f.s(),
        "modulus": f.modulus(),
        "primitive": f.primitive(),
        "traces": traces,
        "self_dual_basis": sd.elements(),
    })))
}

fn field_table(f: &Field) -> String {
    let labels: Vec<String> = f.elements().map(|a| f.format_element(a)).collect();
    let w = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:>w$} |", "*");
    for l in &labels {
        out.push_str(&format!(" {l:>w$}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(w + 2 + (w + 1) * labels.len()));
    out.push('\n');
    for a in f.elements() {
        out.push_str(&format!("{:>w$} |", labels[a as usize]));
        for b in f.elements() {
            out.push_str(&format!(" {:>w$}", f.format_element(f.mul(a, b))));
        }
        out.push('\n');
    }
    out
}

fn basis_json(b: &FieldBasis) -> String {
    pretty(&json!({
        "q": b.field().q(),
        "modulus": b.field().modulus(),
        "elements": b.elements(),
        "self_dual": b.is_self_dual(),
        "dual": b.dual().elements(),
    }))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Field(FieldCmd::Info(fs)) => emit(&field_info(&fs.field()?)?, None)?,
        Command::Field(FieldCmd::Table(fs)) => emit(&field_table(&fs.field()?), None)?,
        Command::Basis(BasisCmd::Selfdual(fs)) => emit(&basis_json(&find_self_dual(&fs.field()?)?), None)?,
        Command::Basis(BasisCmd::Dual { field, elements }) => {
            emit(&basis_json(&FieldBasis::new(&field.field()?, elements)?), None)?
        }
        Command::Code(cmd) => run_code(cmd)?,
        Command::Sim(SimCmd::Measure { input, pauli, seed, out }) => {
            let t = tableau_from_json(&fs::read_to_string(&input)?)?;
            let p = PauliWord::parse(t.field(), &pauli)?;
            let m = t.measure(&p, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let tableau: serde_json::Value = serde_json::from_str(&tableau_to_json(&m.tableau))?;
            let report = json!({ "outcome": m.outcome, "deterministic": m.deterministic, "tableau": tableau });
            emit(&pretty(&report), out.as_ref())?
        }
        Command::Sim(SimCmd::CatDemo { field, gammas, eta, seed }) => {
            let f = field.field()?;
            let g: [u32; 4] = gammas
                .try_into()
                .map_err(|_| GqError::InvalidArgument("--gammas takes four values".into()))?;
            f.check(eta)?;
            let run = run_cat_gadget(&f, g, eta, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let report = json!({
                "q": f.q(),
                "gammas": g,
                "eta": eta,
                "outcomes": run.outcomes,
                "recovered": run.recovered,
                "last_deterministic": run.last_deterministic,
                "predicted_last": run.predicted_last,
                "intermediate_matches": run.intermediate_matches,
            });
            emit(&pretty(&report), None)?;
            if run.recovered != eta {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gates(GatesCmd::Level { field, gate, beta, gamma, delta, count, max_level }) => {
            let f = field.field()?;
            let default = match gate.to_ascii_lowercase().as_str() {
                "mult" | "m" | "ccz" | "multi_cz" | "mcz" | "x" | "z" | "s" | "t" | "u_n" | "un" => 1,
                _ => 0,
            };
            let param = beta.or(gamma).or(delta).unwrap_or(default);
            let kind = GateKind::parse(&gate, param, count)?;
            let report = hierarchy_level(&build_gate(&f, kind)?, max_level, &kind.name())?;
            emit(&pretty(&report), None)?
        }
        Command::Verify(VerifyCmd::All { seed, json, out }) => {
            let report = verify::run_all(seed);
            let text = if json { report.to_json() + "\n" } else { report.to_text() };
            emit(&text, out.as_ref())?;
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_code(cmd: CodeCmd) -> Result<()> {
    match cmd {
        CodeCmd::Qrs { field, n, k1, k2, alpha, v, out } => {
            let f = field.field()?;
            let alpha = match alpha {
                Some(a) => a,
                None => galois_qudit::grs::default_alpha(&f, n)?,
            };
            if alpha.len() != n {
                return Err(GqError::InvalidArgument(format!("{} evaluation points for n = {n}", alpha.len())));
            }
            let v = v.unwrap_or_else(|| vec![1; n]);
            let code = QrsCode::new(&f, k1, k2, alpha, v)?;
            emit(&pretty(&CodeJson::from_qrs(&code)), out.as_ref())
        }
        CodeCmd::Params { input, budget } => {
            let cj = read_code(&input)?;
            let code = cj.to_code()?;
            let p = code.params(budget);
            let mut v = serde_json::to_value(p)?;
            if let Some(qrs) = cj.to_qrs()? {
                v["formula_d_x"] = json!(qrs.formula_d_x());
                v["formula_d_z"] = json!(qrs.formula_d_z());
            }
            emit(&pretty(&v), None)
        }
        CodeCmd::ToQubits { input, out } => {
            let cj = read_code(&input)?;
            let code = cj.to_code()?;
            let bases = default_assignment(code.field(), code.n())?;
            let qubits = convert_code(&code, &bases)?;
            emit(&pretty(&QubitBundle::new(cj, &bases, &qubits)), out.as_ref())
        }
        CodeCmd::Export { input, which, format, out } => {
            let code = read_code(&input)?.to_code()?;
            let bases = default_assignment(code.field(), code.n())?;
            let qubits = convert_code(&code, &bases)?;
            let h = match which {
                Which::Hx => &qubits.hx,
                Which::Hz => &qubits.hz,
            };
            let text = match format {
                ExportFormat::Alist => to_alist(h),
                ExportFormat::Dense => to_dense_text(h),
            };
            emit(&text, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gq: {e}");
            ExitCode::from(2)
        }
    }
}
