//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and renders a report; `main` only forwards the exit code.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

pub use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "kclab", version, about = "Incompressibility tools for formal languages")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Omit the `#` header line.
    #[arg(long, global = true)]
    pub no_header: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode naturals and words.
    #[command(subcommand)]
    Encode(Encode),
    /// Invert the encodings.
    #[command(subcommand)]
    Decode(Decode),
    /// Run, combine and minimize DFAs.
    #[command(subcommand)]
    Dfa(DfaCmd),
    /// Run a DPDA with a full trace.
    #[command(subcommand)]
    Dpda(DpdaCmd),
    /// Example languages.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Characteristic sequence χ of L_x.
    Chi(ChiArgs),
    /// Residual table for all x up to length P.
    Table(TableArgs),
    /// Build a DFA from a residual table.
    Synth(TableArgs),
    /// Regular / nonregular evidence from row counts.
    Verdict(VerdictArgs),
    /// Decoder-suite complexity Ĉ.
    #[command(subcommand)]
    Kc(KcCmd),
    /// DPDA stack analysis.
    #[command(subcommand)]
    Dcfl(DcflCmd),
    /// λ, bounded halting and sparse sequences.
    #[command(subcommand)]
    Rec(RecCmd),
}

#[derive(Subcommand, Debug)]
pub enum Encode {
    /// Natural number to word.
    Bij { n: BigUint },
    /// Self-delimiting code x'.
    Selfdelim { x: String },
    /// ⟨x,y⟩, or ⟨x,y,z⟩ = ⟨x,⟨y,z⟩⟩ with a third word.
    Pair { x: String, y: String, z: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum Decode {
    /// Word to natural number.
    Bij { w: String },
    /// Split a self-delimiting code from the rest of the input.
    Selfdelim { s: String },
    /// Invert the pairing.
    Pair {
        n: BigUint,
        #[arg(long)]
        triple: bool,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct MachineSource {
    /// Machine description file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Name of a shipped machine.
    #[arg(long)]
    pub machine: Option<String>,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OtherSource {
    /// Second operand, from a file.
    #[arg(long)]
    pub other: Option<PathBuf>,
    /// Second operand, a shipped machine.
    #[arg(long)]
    pub other_machine: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum DfaCmd {
    Run {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        input: String,
    },
    /// complement, union or intersection.
    Combine {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        op: String,
        #[command(flatten)]
        other: OtherSource,
    },
    Minimize {
        #[command(flatten)]
        source: MachineSource,
    },
    /// Language equality, with the least distinguishing word.
    Equiv {
        #[command(flatten)]
        source: MachineSource,
        #[command(flatten)]
        other: OtherSource,
    },
}

#[derive(Subcommand, Debug)]
pub enum DpdaCmd {
    Run {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        input: String,
        #[arg(long)]
        epsilon_limit: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZooCmd {
    List {
        /// Also print class, alphabet and description.
        #[arg(long)]
        verbose: bool,
    },
    Member {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        word: String,
    },
    /// i-th word of an enumerator (1-based).
    Enumerate {
        #[arg(long, default_value = "length-lex")]
        enumerator: String,
        #[arg(long)]
        i: BigUint,
        #[arg(long, default_value = "01")]
        alphabet: String,
    },
    /// n-th y with xy in L (or not in L).
    Nth {
        #[arg(long)]
        lang: String,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "length-lex")]
        enumerator: String,
        #[arg(long)]
        complement: bool,
        #[arg(long)]
        include_empty: bool,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
pub struct ChiArgs {
    #[arg(long)]
    pub lang: String,
    #[arg(long, default_value = "")]
    pub x: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub lang: String,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = kclab::charseq::DEFAULT_CELL_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct VerdictArgs {
    #[arg(long)]
    pub lang: String,
    #[arg(long, default_value_t = 8)]
    pub p_max: usize,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = kclab::charseq::DEFAULT_CELL_BUDGET)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum KcCmd {
    /// Ĉ(x) or Ĉ(x | side).
    Estimate {
        #[arg(long)]
        word: String,
        #[arg(long)]
        side: Option<BigUint>,
        /// Alphabet of a non-binary word; it is binarized first.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Install the residual decoder for a DFA and describe the n-th word of L_x.
    Residual {
        #[command(flatten)]
        source: ResidualSource,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long)]
        n: BigUint,
        #[arg(long, default_value = "length-lex")]
        order: String,
        #[arg(long, default_value_t = 1 << 16)]
        prime_budget: u64,
    },
    /// Least word of length n with Ĉ ≥ n.
    Incompressible {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        side: Option<BigUint>,
    },
    /// d(A_n) for A = {x : Ĉ(x) ≤ l(n) + c}.
    Census {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
        c: Vec<usize>,
    },
    /// Ĉ(uvw) against Ĉ(v) + l(uw) + log-term.
    Substring {
        #[arg(long)]
        word: String,
        /// l(u),l(v),l(w).
        #[arg(long, value_delimiter = ',', required = true)]
        split: Vec<usize>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ResidualSource {
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub machine: Option<String>,
    /// A zoo language with a reference DFA.
    #[arg(long)]
    pub lang: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum DcflCmd {
    /// Stack height after each input symbol.
    Profile {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        input: String,
    },
    Classify {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Defaults to |Γ| + 1.
        #[arg(long)]
        c1: Option<usize>,
    },
    /// Repeating triples while reading y^k x.
    Cycle {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 64)]
        max_blocks: usize,
    },
    /// u = y^blocks x, v = omega_{1:n}.
    Experiment {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c1: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_blocks: usize,
        #[arg(long, default_value_t = 1 << 16)]
        w_budget: u64,
        /// Check the machine against this zoo language first.
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long, default_value_t = 10)]
        oracle_len: usize,
    },
    /// First word where machine and oracle disagree.
    Diff {
        #[command(flatten)]
        source: MachineSource,
        #[arg(long)]
        lang: String,
        /// Words of length below this are checked.
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RecCmd {
    Lambda {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        n: usize,
    },
    /// k^T: toy program i on input i halts within T steps.
    Halting {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: usize,
    },
    /// h = k_1 0^2 k_2 0^4 …
    Sparse {
        #[arg(long)]
        n: usize,
        /// The k bits; defaults to k^T with T from --t.
        #[arg(long)]
        kbits: Option<String>,
        #[arg(long, default_value_t = 1000)]
        t: u64,
    },
    /// Ĉ(λ^T_{1:n} | n) with the count decoder installed.
    Reprobe {
        /// halting, empty, sigma-star-semi, or a zoo language.
        #[arg(long)]
        semi: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
    },
}

/// Leaf subcommands and the operation each one serves. Inverses and
/// listings serve none.
pub const SUBCOMMANDS: &[(&str, Option<&str>)] = &[
    ("encode bij", Some("nat_str_bijection")),
    ("encode selfdelim", Some("self_delim")),
    ("encode pair", Some("pair")),
    ("decode bij", None),
    ("decode selfdelim", None),
    ("decode pair", None),
    ("dfa run", Some("dfa_run")),
    ("dfa combine", Some("dfa_combine")),
    ("dfa minimize", Some("dfa_minimize")),
    ("dfa equiv", None),
    ("dpda run", Some("dpda_run")),
    ("zoo list", None),
    ("zoo member", Some("zoo_oracle")),
    ("zoo enumerate", Some("enumerate")),
    ("zoo nth", Some("nth_in_residual")),
    ("chi", Some("chi_prefix")),
    ("table", Some("residual_table")),
    ("synth", Some("synthesize_dfa")),
    ("verdict", Some("regularity_verdict")),
    ("kc estimate", Some("estimate_C")),
    ("kc residual", Some("install_residual_decoder")),
    ("kc incompressible", Some("find_incompressible")),
    ("kc census", Some("a_n_census")),
    ("kc substring", Some("substring_bound_check")),
    ("dcfl profile", Some("stack_profile")),
    ("dcfl classify", Some("case_classify")),
    ("dcfl cycle", Some("cycle_detect")),
    ("dcfl experiment", Some("kcdcfl_experiment")),
    ("dcfl diff", Some("dpda_vs_oracle_diff")),
    ("rec lambda", Some("lambda_prefix")),
    ("rec halting", Some("halting_prefix")),
    ("rec sparse", Some("sparse_sequence")),
    ("rec reprobe", Some("re_upperbound_probe")),
];

/// A failed invocation: usage errors exit with 2, domain errors with 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    kclab::Error,
    kclab::error::WordError,
    kclab::error::CodecError,
    kclab::error::AutomatonError,
    kclab::error::ZooError,
    kclab::error::CharSeqError,
    kclab::error::KcError,
    kclab::error::DcflError,
    kclab::error::RecError
);

fn quote(arg: &str) -> String {
    if arg.is_empty() || arg.contains(|c: char| c.is_whitespace() || "\"'\\$`#".contains(c)) {
        format!("\"{}\"", arg.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        arg.to_string()
    }
}

/// `# kclab <version> (suite v1): <invocation>`.
pub fn header(args: &[String]) -> String {
    let echo: Vec<String> = std::iter::once("kclab".to_string()).chain(args.iter().map(|a| quote(a))).collect();
    format!(
        "# kclab {} (suite {}): {}",
        env!("CARGO_PKG_VERSION"),
        kclab::kolmogorov::SUITE_VERSION,
        echo.join(" ")
    )
}

/// Runs one invocation; `args` excludes the program name. Returns the exit code.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(std::iter::once("kclab".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            if !cli.no_header {
                let _ = writeln!(out, "{}", header(args));
            }
            let _ = write!(out, "{}", report.render(cli.format));
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
