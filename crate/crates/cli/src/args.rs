use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Format;

#[derive(Debug, Parser)]
#[command(name = "padic-opalg", version, about = "Exact p-adic operator algebra workbench")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Prime p (default 2, or the preset's prime).
    #[arg(long = "p", global = true)]
    pub p: Option<u64>,
    /// Relative precision N in p-adic digits [default: 32].
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Window size M [default: 64].
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Interior margin; defaults to the bandwidth of the operator at hand.
    #[arg(long, global = true)]
    pub margin: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized runs.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// JSON input file; repeat for commands taking two operands.
    #[arg(long, global = true)]
    pub file: Vec<PathBuf>,
    /// Built-in input: allones2x2, zerodivisor-p5, tate-tau, cuntz-n2,
    /// rotation-z2-p5, or e<n> for the rose graph with n loops.
    #[arg(long, global = true)]
    pub preset: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scalar arithmetic in Q_p.
    #[command(subcommand)]
    Scalar(ScalarCmd),
    /// Operators on finite windows.
    #[command(subcommand)]
    Operator(OperatorCmd),
    /// Mahler coefficients and functional calculus.
    #[command(subcommand)]
    Mahler(MahlerCmd),
    /// Convolution algebras, crossed products and the rotation algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Compares the norm of f(tau) with the Gauss norm of f.
    TateCheck(TateArgs),
    /// K-theory tables.
    #[command(subcommand)]
    Ktheory(KtheoryCmd),
}

#[derive(Debug, Subcommand)]
pub enum ScalarCmd {
    /// Sum, difference, product and quotient of two scalars.
    Arith {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Square root of a unit by Hensel lifting.
    Hensel {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// binom(x, n) for x in Z_p.
    Binom {
        #[arg(allow_hyphen_values = true)]
        x: String,
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Right,
    Left,
}

#[derive(Debug, Subcommand)]
pub enum OperatorCmd {
    /// Operator norm.
    Norm,
    /// Adjoint (transpose).
    Adjoint,
    /// Product of the first and second operand.
    Compose,
    /// Unitary, projection, isometry and related flags.
    Classify,
    /// Compares |T|^2 with |T*T|.
    CstarCheck,
    /// Cuntz relations for truncated generators s_1..s_n.
    CuntzVerify {
        #[arg(long)]
        n: Option<usize>,
        /// Interior size; defaults to floor(M/n).
        #[arg(long)]
        interior: Option<usize>,
    },
    /// Unilateral shift on {0..M-1}.
    Shift {
        #[arg(long, value_enum, default_value_t = Direction::Right)]
        direction: Direction,
    },
    /// Kronecker product of the two operands.
    Tensor,
}

#[derive(Debug, Subcommand)]
pub enum MahlerCmd {
    /// Mahler coefficients of the sampled values f(0), f(1), ...
    Coeffs {
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Evaluates sum c_n binom(x, n) at a scalar, or at an operator from
    /// --file/--preset.
    Eval {
        /// Comma-separated Mahler coefficients.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// phi * psi in the convolution algebra of a group or groupoid.
    Convolve,
    /// Left regular representation and its norm.
    Rep,
    /// Twisted regular representation for a 2-cocycle.
    TwistedRep,
    /// Regular representation of the crossed product.
    Crossed,
    /// Image of a crossed-product element in the action groupoid algebra.
    ActionGroupoid,
    /// Relations of the truncated rotation algebra generators.
    RotationVerify {
        /// Twist z, a unit of Z_p.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Half size M of the window {-M..M}^2.
        #[arg(long)]
        half_size: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct TateArgs {
    /// Comma-separated coefficients a_0, a_1, ... of f.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Number of random polynomials to test instead.
    #[arg(long)]
    pub random: Option<usize>,
    /// Maximal degree of random polynomials.
    #[arg(long, default_value_t = 20)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct Degrees {
    /// Single degree.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
    pub degree: Option<i64>,
    /// Inclusive range `a..b` [default: 0..6].
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum KtheoryCmd {
    /// K_m(F_p).
    Quillen(Degrees),
    /// KH of the Leavitt path algebra of a graph (--file or --preset e<n>).
    Graph(Degrees),
    /// KH of the Leavitt algebra L_n.
    Cuntz {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// KH of F_p[t, 1/t].
    Laurent(Degrees),
    /// KH of the noncommutative torus with twist lambda.
    Rotation {
        #[arg(long)]
        lambda: u64,
        #[command(flatten)]
        degrees: Degrees,
    },
}
