use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use magkern::mehler::DEFAULT_E2;

#[derive(Debug, Parser)]
#[command(name = "magkern", version, about = "Magnetic relativistic kernels, bounds and certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one kernel, envelope or constant at a single parameter point.
    Eval(EvalArgs),
    /// Run a grid certificate.
    Certify(CertifyArgs),
    /// Check the integral identities by quadrature.
    Verify(VerifyArgs),
    /// Evaluate a target over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    /// γ_c, C₁(B₀), δ_m(B₀) and the S_m bound.
    Constants,
    /// Heat kernel of the magnetic Schrödinger operator.
    Mehler,
    /// Spin-resolved heat kernel of E_A².
    Ea2,
    /// Free heat kernel (4πt)^{-3/2} e^{-|x-x'|²/4t}.
    Free,
    /// Diamagnetic envelope of the E_A² heat kernel.
    A6a,
    /// τ-derivative of the E_A² heat kernel.
    Ea2Deriv,
    /// Kernel of E_A.
    Ea,
    /// Kernel of e^{-tE_A}.
    ExpTea,
    /// Envelope of the E_A kernel.
    B9,
    /// Envelope of the e^{-tE_A} kernel.
    ExpTeaBound,
    /// Envelope of the off-diagonal Foldy–Wouthuysen kernel.
    U0,
    /// Double-integral envelope of √((E_A+m)/E_A).
    Ae,
    /// The same envelope with all distances replaced by y.
    AeY,
    /// Bessel-sum closed form of the y-replaced envelope.
    AeClosed,
    /// S_k from the hypergeometric closed form.
    Sk,
    /// S_k by oscillatory quadrature.
    SkQuad,
    /// Modified Bessel function K_ν(arg).
    BesselK,
    /// Bessel function J_ν(arg) for ν ∈ {1, 3/2}.
    BesselJ,
    /// Γ(arg).
    Gamma,
    /// ₂F₁(a, b; c; arg).
    Hyp2f1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertTarget {
    Hyperbolic,
    Diamagnetic,
    Semigroup,
    EaEnvelope,
    EaEnvelopeTrend,
    SmBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinArg {
    Up,
    Down,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct JobsArg {
    /// Worker threads for grid sweeps.
    #[arg(long, env = "MAGKERN_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Field strength B₀.
    #[arg(long, conflicts_with = "eb0", allow_negative_numbers = true)]
    pub b0: Option<f64>,
    /// Product eB₀, kept exact.
    #[arg(long, allow_negative_numbers = true)]
    pub eb0: Option<f64>,
    /// Mass.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Coupling e².
    #[arg(long, default_value_t = DEFAULT_E2)]
    pub e2: f64,
    /// Time t (τ for ea2-deriv).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
    /// Point x as x1,x2,x3.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub x: Option<[f64; 3]>,
    /// Point x' as x1,x2,x3.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub xp: Option<[f64; 3]>,
    /// Separation |x' − x|; places x' at polar angle --theta from the field.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Polar angle of x' − x against the field when --r is given.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Spin channel of E_A-type targets.
    #[arg(long, value_enum, default_value = "both")]
    pub spin: SpinArg,
    /// Coulomb coupling γ = Ze².
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// (ω₁, ω₂) for S_k; defaults to ω at --x.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    pub omega: Option<[f64; 2]>,
    /// Axis k ∈ {1, 2} of S_k.
    #[arg(long, default_value_t = 1)]
    pub axis: u8,
    /// Order ν of Bessel functions.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nu: f64,
    /// Argument of special functions.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub arg: f64,
    /// Parameters a,b,c of ₂F₁.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub abc: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub target: EvalTarget,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub target: EvalTarget,
    /// Grid axis `name:min:max:count:lin|log` or `name=v1,v2,...`; repeatable.
    #[arg(long = "grid", required = true, allow_hyphen_values = true)]
    pub grid: Vec<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub jobs: JobsArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(value_enum)]
    pub target: CertTarget,
    /// Replace a default grid axis; repeatable.
    #[arg(long = "grid", allow_hyphen_values = true)]
    pub grid: Vec<String>,
    /// Seed of randomized spot checks.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub jobs: JobsArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "identities")]
    pub target: VerifyTarget,
    /// Relative tolerance of every identity.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(out)
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    parse_list::<3>(s)
}

fn parse_vec2(s: &str) -> Result<[f64; 2], String> {
    parse_list::<2>(s)
}
