use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "nflab", version, about = "n-filters, structures and filter implications on finite algebras")]
pub struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A structure file, `-` for stdin, with an optional replacement upset.
#[derive(Args, Debug, Clone)]
pub struct Input {
    #[arg(long)]
    pub structure: PathBuf,
    /// Comma-separated element names replacing the file's designated set.
    #[arg(long)]
    pub upset: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a predicate of the designated upset.
    Check {
        predicate: Predicate,
        #[command(flatten)]
        input: Input,
        /// Degree: a number or `inf`.
        #[arg(long, default_value = "1")]
        n: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Element for `m-prime-element`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Generate the n-filter of the designated upset.
    Generate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        n: String,
        /// Use the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Split a prime n-filter into prime filters.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Extend the designated n-filter to a prime n-filter missing an ideal.
    Separate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated members of the ideal.
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "1")]
        n: String,
    },
    /// Search for a homomorphism.
    Hom {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        injective: bool,
    },
    /// Search for a strict embedding.
    Embed {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Direct product of structures.
    Product {
        #[arg(long = "structure", required = true)]
        structures: Vec<PathBuf>,
    },
    /// Dual product of structures.
    Dualproduct {
        #[arg(long = "structure", required = true)]
        structures: Vec<PathBuf>,
    },
    /// Evaluate, refute or decide rules.
    #[command(subcommand)]
    Rule(RuleCommand),
    /// Filter-class membership and the splitting dichotomy.
    #[command(subcommand)]
    Class(ClassCommand),
    /// Run a theorem suite.
    Verify {
        /// Suite name, or `list`.
        suite: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Print a named structure.
    Gallery {
        /// Name, or `list`.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Hasse diagram in DOT with the upset filled.
    ExportDot {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    NFilter,
    Prime,
    MPrimeNFilter,
    MPrimeElement,
    Degree,
    Kind,
}

#[derive(Args, Debug, Clone)]
pub struct RuleArg {
    /// Rule text such as `x, ~x |- y`.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub rule: Option<String>,
    /// Builtin rule such as `alpha(2)`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum RuleCommand {
    /// Whether the rule holds in a structure.
    Holds {
        #[command(flatten)]
        rule: RuleArg,
        #[command(flatten)]
        input: Input,
    },
    /// Search for a structure refuting the rule.
    Countermodel {
        #[command(flatten)]
        rule: RuleArg,
        /// Search every algebra up to this size instead of the gallery.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value = "distributive")]
        signature: String,
    },
    /// Whether a filter class validates the rule.
    Entails {
        #[command(flatten)]
        rule: RuleArg,
        /// Class such as `DL(2)` or `BA(inf)`.
        #[arg(long)]
        class: String,
    },
    /// Print a builtin rule.
    Builtin { name: String },
}

#[derive(Subcommand, Debug)]
pub enum ClassCommand {
    /// Membership in the class generated by the given structures.
    Member {
        #[arg(long = "generator", required = true)]
        generators: Vec<PathBuf>,
        #[command(flatten)]
        input: Input,
        /// Close under strict images as well.
        #[arg(long)]
        logical: bool,
    },
    /// Which side of the αₙ splitting a Boolean structure falls on.
    Split {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Membership in the class generated by `∇ₘ × ∇ₙ`.
    ProductClass {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}
