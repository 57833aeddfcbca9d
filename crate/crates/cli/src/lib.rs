//! Command line front end for `conley-core`. Every subcommand reads JSON
//! (inline, from a file, or from stdin with `-`) and writes one JSON value.

pub mod format;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use conley_core::conley::{self, Orientation};
use conley_core::degree;
use conley_core::dold;
use conley_core::finite_map;
use conley_core::linalg;
use conley_core::radial;
use conley_core::realize;
use conley_core::{Error, Rational, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        Self { status: Status::Ok, payload, diagnostics }
    }

    fn error(e: &Error) -> Self {
        Self { status: Status::Error, payload: format::error_json(e), diagnostics: Vec::new() }
    }

    /// Error code of a failed command.
    pub fn error_code(&self) -> Option<&str> {
        self.payload.get("error")?.get("code")?.as_str()
    }

    /// Payload as written to the output: compact JSON, or plain text for
    /// help and usage messages.
    pub fn render(&self) -> String {
        match &self.payload {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        }
    }
}

/// Exit status for a library error: 2 for malformed input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Format(_) => 2,
        _ => 1,
    }
}

#[derive(Parser, Debug)]
#[command(name = "conley", version, about = "Exact Conley index and fixed point index calculus")]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dold sequences and their coefficients.
    #[command(subcommand)]
    Dold(DoldCmd),
    /// Rational matrices.
    #[command(subcommand)]
    Linalg(LinalgCmd),
    /// Self-maps of finite sets.
    #[command(subcommand)]
    Maps(MapsCmd),
    /// Conley index data.
    #[command(subcommand)]
    Conley(ConleyCmd),
    /// Realizability of index sequences.
    #[command(subcommand)]
    Realize(RealizeCmd),
    /// Radial skew-product models.
    #[command(subcommand)]
    Radial(RadialCmd),
    /// Winding numbers and sphere degrees.
    #[command(subcommand)]
    Degree(DegreeCmd),
}

#[derive(Args, Debug)]
struct SeqArg {
    /// Sequence `{"prefix":[...],"period":p}`.
    #[arg(long)]
    seq: String,
}

#[derive(Args, Debug)]
struct CoeffsArg {
    /// Coefficients `{"k":"p/q",...}`.
    #[arg(long)]
    coeffs: String,
}

#[derive(Args, Debug)]
struct MatrixPair {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Subcommand, Debug)]
enum DoldCmd {
    /// Coefficients `a_k` of a periodic sequence.
    Decompose(SeqArg),
    /// Dold congruences and integrality of the coefficients.
    Check(SeqArg),
    /// `I_n = Σ_{k|n} k·a_k`.
    Reconstruct {
        #[command(flatten)]
        coeffs: CoeffsArg,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum LinalgCmd {
    /// Restriction to the generalized image.
    Leray {
        #[arg(long)]
        matrix: String,
    },
    /// Similarity over Q.
    Conjugate(MatrixPair),
    /// Shift equivalence of the Leray reductions.
    ShiftEquiv(MatrixPair),
    /// Equality of nonzero spectra with multiplicity.
    SpectrumEquiv(MatrixPair),
}

#[derive(Subcommand, Debug)]
enum MapsCmd {
    /// Shift equivalence of two finite maps.
    ShiftEquiv {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Fixed point counts of the iterates.
    FixSeq {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

#[derive(Args, Debug)]
struct CanonicalArgs {
    #[arg(long)]
    dim: usize,
    /// 1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    orientation: i64,
}

#[derive(Subcommand, Debug)]
enum ConleyCmd {
    /// Fixed point indices of the iterates.
    IndexSeq {
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 24)]
        n_max: usize,
    },
    /// Index data predicted for the inverse map.
    Dual {
        #[arg(long)]
        data: String,
    },
    /// Whether two index data are dual.
    CheckDuality {
        #[arg(long)]
        f: String,
        #[arg(long)]
        finv: String,
    },
    /// Index data of an attracting fixed point.
    Attractor(CanonicalArgs),
    /// Index data of a repelling fixed point.
    Repeller(CanonicalArgs),
}

#[derive(Subcommand, Debug)]
enum RealizeCmd {
    /// Realizability conditions.
    Check(CoeffsArg),
    /// Cycle counts of a realizing pair of maps.
    Solve(CoeffsArg),
    /// Full realization with verified index data.
    Witness(CoeffsArg),
}

#[derive(Subcommand, Debug)]
enum RadialCmd {
    /// Index data of the lower end.
    Induce {
        #[arg(long)]
        model: String,
    },
    /// Model on the 2-sphere from component permutations.
    FromPerms {
        #[arg(long)]
        phi_minus: String,
        #[arg(long)]
        psi_plus: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        orientation: i64,
    },
    /// Model on the 3-sphere with a solenoidal attractor.
    Solenoidal {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DegreeCmd {
    /// Winding number of a sampled loop.
    Winding {
        #[arg(long = "loop")]
        samples: String,
    },
    /// Degree of a sampled sphere map.
    Sphere {
        #[arg(long)]
        sphere: String,
    },
    /// Index of the origin for one of the explicit examples.
    Example {
        /// planar_poly or volume_preserving_3d.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        l: usize,
        /// Radius as "p/q".
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    /// Inline JSON, `-` for stdin, or a file path.
    fn json(&mut self, arg: &str, what: &str) -> Result<Value> {
        let text = if arg == "-" {
            if self.stdin_used {
                return Err(Error::Format(format!("{what}: stdin can only be read once")));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Format(format!("{what}: reading stdin: {e}")))?;
            s
        } else if arg.trim_start().starts_with(['{', '[']) {
            arg.to_owned()
        } else {
            std::fs::read_to_string(arg)
                .map_err(|e| Error::Format(format!("{what}: reading {arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| Error::Format(format!("{what}: invalid JSON: {e}")))
    }
}

type Outcome = Result<(Value, Vec<String>)>;

fn plain(v: Value) -> Outcome {
    Ok((v, Vec::new()))
}

fn dispatch(cmd: Command, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        Command::Dold(c) => run_dold(c, io),
        Command::Linalg(c) => run_linalg(c, io),
        Command::Maps(c) => run_maps(c, io),
        Command::Conley(c) => run_conley(c, io),
        Command::Realize(c) => run_realize(c, io),
        Command::Radial(c) => run_radial(c, io),
        Command::Degree(c) => run_degree(c, io),
    }
}

fn run_dold(cmd: DoldCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        DoldCmd::Decompose(s) => {
            let seq = format::sequence(&io.json(&s.seq, "seq")?)?;
            plain(format::coefficients_json(&dold::dold_decompose(&seq)?))
        }
        DoldCmd::Check(s) => {
            let seq = format::sequence(&io.json(&s.seq, "seq")?)?;
            let check = dold::dold_check(&seq)?;
            let mut diagnostics = Vec::new();
            if let Some(n) = check.first_failing_congruence {
                diagnostics.push(format!("first failing congruence at n = {n}"));
            }
            let payload = match &check.first_violation {
                None => json!({
                    "ok": check.ok,
                    "coefficients": format::coefficients_json(&check.coefficients),
                }),
                Some(v) => json!({
                    "ok": check.ok,
                    "first_violation": { "k": v.k, "a": format::rational_json(&v.a) },
                }),
            };
            Ok((payload, diagnostics))
        }
        DoldCmd::Reconstruct { coeffs, n_max } => {
            let a = format::coefficients(&io.json(&coeffs.coeffs, "coeffs")?)?;
            let n_max = n_max.unwrap_or_else(|| (2 * a.period()).max(12));
            let r = dold::reconstruct(&a, n_max)?;
            plain(json!({
                "values": r.values.iter().map(format::rational_json).collect::<Vec<_>>(),
                "period": r.period,
                "integral": r.integral,
            }))
        }
    }
}

fn matrix_pair(p: &MatrixPair, io: &mut Inputs<'_>) -> Result<(linalg::RationalMatrix, linalg::RationalMatrix)> {
    let a = format::matrix(&io.json(&p.a, "a")?)?;
    let b = format::matrix(&io.json(&p.b, "b")?)?;
    Ok((a, b))
}

fn run_linalg(cmd: LinalgCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        LinalgCmd::Leray { matrix } => {
            let m = format::matrix(&io.json(&matrix, "matrix")?)?;
            plain(format::matrix_json(&linalg::leray_reduction(&m)?))
        }
        LinalgCmd::Conjugate(p) => {
            let (a, b) = matrix_pair(&p, io)?;
            plain(json!({ "conjugate": linalg::conjugate(&a, &b)? }))
        }
        LinalgCmd::ShiftEquiv(p) => {
            let (a, b) = matrix_pair(&p, io)?;
            plain(json!({ "shift_equivalent": linalg::shift_equivalent_matrices(&a, &b)? }))
        }
        LinalgCmd::SpectrumEquiv(p) => {
            let (a, b) = matrix_pair(&p, io)?;
            plain(json!({ "spectrum_equivalent": linalg::spectrum_equivalent(&a, &b)? }))
        }
    }
}

fn run_maps(cmd: MapsCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        MapsCmd::ShiftEquiv { phi, psi } => {
            let phi = format::finite_map(&io.json(&phi, "phi")?)?;
            let psi = format::finite_map(&io.json(&psi, "psi")?)?;
            plain(json!({ "shift_equivalent": finite_map::shift_equivalent_maps(&phi, &psi) }))
        }
        MapsCmd::FixSeq { map, n_max } => {
            let phi = format::finite_map(&io.json(&map, "map")?)?;
            plain(json!({ "fix": finite_map::fix_sequence(&phi, n_max) }))
        }
    }
}

fn run_conley(cmd: ConleyCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        ConleyCmd::IndexSeq { data, n_max } => {
            let data = format::conley_data(&io.json(&data, "data")?)?;
            plain(format::sequence_json(&conley::index_sequence(&data, n_max)?))
        }
        ConleyCmd::Dual { data } => {
            let data = format::conley_data(&io.json(&data, "data")?)?;
            plain(format::conley_data_json(&conley::szymczak_dual(&data)))
        }
        ConleyCmd::CheckDuality { f, finv } => {
            let f = format::conley_data(&io.json(&f, "f")?)?;
            let finv = format::conley_data(&io.json(&finv, "finv")?)?;
            plain(json!({ "dual": conley::check_duality(&f, &finv)? }))
        }
        ConleyCmd::Attractor(a) => {
            let o = Orientation::from_sign(a.orientation)?;
            plain(format::conley_data_json(&conley::canonical_attractor(a.dim, o)?))
        }
        ConleyCmd::Repeller(a) => {
            let o = Orientation::from_sign(a.orientation)?;
            plain(format::conley_data_json(&conley::canonical_repeller(a.dim, o)?))
        }
    }
}

fn run_realize(cmd: RealizeCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        RealizeCmd::Check(c) => {
            let a = format::coefficients(&io.json(&c.coeffs, "coeffs")?)?;
            plain(match realize::check_conditions(&a) {
                Ok(()) => json!({ "ok": true }),
                Err(v) => json!({ "ok": false, "violation": format::violation_json(&v) }),
            })
        }
        RealizeCmd::Solve(c) => {
            let a = format::coefficients(&io.json(&c.coeffs, "coeffs")?)?;
            let (b, c) = realize::solve_witness(&a)?;
            plain(json!({ "b": format::cycle_counts_json(&b), "c": format::cycle_counts_json(&c) }))
        }
        RealizeCmd::Witness(c) => {
            let a = format::coefficients(&io.json(&c.coeffs, "coeffs")?)?;
            plain(format::witness_json(&realize::realize(&a)?))
        }
    }
}

fn run_radial(cmd: RadialCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        RadialCmd::Induce { model } => {
            let m = format::radial_model(&io.json(&model, "model")?)?;
            plain(format::conley_data_json(&radial::induced_conley_data(&m)))
        }
        RadialCmd::FromPerms { phi_minus, psi_plus, orientation } => {
            let phi = format::finite_map(&io.json(&phi_minus, "phi-minus")?)?;
            let psi = format::finite_map(&io.json(&psi_plus, "psi-plus")?)?;
            let o = Orientation::from_sign(orientation)?;
            plain(format::radial_model_json(&radial::model_from_attractor_repeller_perms(&phi, &psi, o)?))
        }
        RadialCmd::Solenoidal { m } => plain(format::radial_model_json(&radial::solenoidal_model(m)?)),
    }
}

fn run_degree(cmd: DegreeCmd, io: &mut Inputs<'_>) -> Outcome {
    match cmd {
        DegreeCmd::Winding { samples } => {
            let l = format::sampled_loop(&io.json(&samples, "loop")?)?;
            plain(json!({ "index": degree::winding_number(&l) }))
        }
        DegreeCmd::Sphere { sphere } => {
            let s = format::sphere_map(&io.json(&sphere, "sphere")?)?;
            plain(json!({ "index": degree::sphere_degree(&s)? }))
        }
        DegreeCmd::Example { kind, l, radius, resolution } => {
            let kind = format::example_kind(&kind)?;
            let radius: Rational = radius
                .parse()
                .map_err(|_| Error::Format(format!("radius: \"{radius}\" is not a rational")))?;
            let ex = degree::sample_example_map(kind, l, &radius, resolution)?;
            let index = ex.sample.index()?;
            match kind {
                degree::ExampleKind::PlanarPoly => plain(json!({ "index": index })),
                degree::ExampleKind::VolumePreserving3d => plain(json!({
                    "index": index,
                    "metadata": format::metadata_json(&ex.metadata),
                })),
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs the command, reading
/// `-` arguments from `stdin`. Returns the result, the requested output
/// file and the exit code.
pub fn run_with_stdin<I, T>(argv: I, stdin: &mut dyn Read) -> (CommandResult, Option<PathBuf>, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (CommandResult::ok(Value::String(text), Vec::new()), None, 0)
                }
                _ => {
                    let err = Error::Format(format!("usage: {}", e.kind()));
                    let mut r = CommandResult::error(&err);
                    r.diagnostics.push(text);
                    (r, None, 2)
                }
            };
        }
    };
    let mut io = Inputs { stdin, stdin_used: false };
    match dispatch(cli.command, &mut io) {
        Ok((payload, diagnostics)) => (CommandResult::ok(payload, diagnostics), cli.output, 0),
        Err(e) => (CommandResult::error(&e), cli.output, exit_code(&e)),
    }
}

/// [`run_with_stdin`] on the process stdin, without the output file.
pub fn run<I, T>(argv: I) -> (CommandResult, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (r, _, code) = run_with_stdin(argv, &mut std::io::stdin());
    (r, code)
}
