use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Primes accepted by `--field gf<p>`.
pub const PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 65537];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

pub fn parse_field(s: &str) -> Result<FieldChoice, String> {
    let s = s.trim().to_ascii_lowercase();
    if s == "q" {
        return Ok(FieldChoice::Rational);
    }
    let digits = s
        .strip_prefix("gf")
        .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
        .ok_or_else(|| format!("expected `q` or `gf<p>`, found `{s}`"))?;
    let p: u64 = digits.parse().map_err(|_| format!("invalid prime `{digits}`"))?;
    if PRIMES.contains(&p) {
        Ok(FieldChoice::Prime(p))
    } else {
        Err(format!("unsupported prime {p}; supported: {PRIMES:?}"))
    }
}

/// Exact computation in Cohn algebras, Leavitt path algebras and their
/// wreath products.
#[derive(Parser, Debug)]
#[command(name = "lwr", version)]
pub struct Cli {
    /// Scalar field: `q` or `gf<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldChoice,
    /// Seed for every randomized probe.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graph files.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Hereditary saturated subsets.
    #[command(subcommand)]
    Hsat(HsatCmd),
    /// The Cohn algebra C(Γ).
    #[command(subcommand)]
    Cohn(AlgebraCmd),
    /// The Leavitt path algebra L(Γ).
    #[command(subcommand)]
    Lpa(LpaCmd),
    /// The wreath product A wr L(Γ).
    #[command(subcommand)]
    Wreath(WreathCmd),
    /// Randomized and exhaustive structural probes.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Finite generation of the wreath product.
    #[command(subcommand)]
    Prop1(Prop1Cmd),
    /// L(Γ) ≅ L(Γ(W)) wr L(Γ/W).
    #[command(subcommand)]
    Prop2(Prop2Cmd),
    /// Balloon extensions.
    #[command(subcommand)]
    Balloon(BalloonCmd),
    /// The loop wreath product B = A wr L(loop).
    Affinize(AffinizeArgs),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Parse a graph file and summarize it.
    Check { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct SetArgs {
    pub file: PathBuf,
    /// Vertex names separated by commas or spaces.
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Subcommand, Debug)]
pub enum HsatCmd {
    /// Whether the set is hereditary and saturated.
    Check(SetArgs),
    /// The least hereditary saturated superset.
    Closure(SetArgs),
    /// All hereditary saturated subsets.
    Enumerate {
        file: PathBuf,
        /// Largest vertex count for the exhaustive search.
        #[arg(long, default_value_t = 16)]
        bound: usize,
    },
}

#[derive(Args, Debug)]
pub struct ExprArgs {
    pub file: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    pub file: PathBuf,
    /// Factors, in order; give at least two.
    #[arg(long = "expr", required = true, allow_hyphen_values = true)]
    pub exprs: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Normal form of an expression.
    Nf(ExprArgs),
    /// Product of expressions.
    Mul(ProductArgs),
}

#[derive(Subcommand, Debug)]
pub enum LpaCmd {
    /// Normal form of an expression.
    Nf(ExprArgs),
    /// Product of expressions.
    Mul(ProductArgs),
    /// Homogeneous components of an expression.
    Graded {
        #[command(flatten)]
        expr: ExprArgs,
        /// Print only this degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WreathAlgebra {
    /// Diagonal algebra spanned by the extension's idempotents.
    Diagonal,
    /// F[x] with the single idempotent `1`.
    Poly,
}

#[derive(Args, Debug)]
pub struct WreathFiles {
    pub graph: PathBuf,
    pub ext: PathBuf,
    #[arg(long, value_enum, default_value_t = WreathAlgebra::Diagonal)]
    pub algebra: WreathAlgebra,
}

#[derive(Subcommand, Debug)]
pub enum WreathCmd {
    /// Normal form of an expression.
    Nf {
        #[command(flatten)]
        files: WreathFiles,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of expressions.
    Mul {
        #[command(flatten)]
        files: WreathFiles,
        #[arg(long = "expr", required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Probe {
    /// Associativity of action algebras, with a corrupted control.
    Assoc,
    /// Closure of the bridge-path actions and the biset axioms.
    Actions,
    /// CK(v) annihilates matrix units.
    Ck,
    /// Random elements of J reduce to zero.
    Jcapi,
}

#[derive(Subcommand, Debug)]
pub enum LemmaCmd {
    /// Run one probe on the built-in wreath products, or on the given files.
    Probe {
        #[arg(value_enum)]
        probe: Probe,
        graph: Option<PathBuf>,
        ext: Option<PathBuf>,
        /// Random samples per instance.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Longest monomial for the action probe.
        #[arg(long, default_value_t = 8)]
        slen: usize,
        /// Longest index for the action and CK probes.
        #[arg(long, default_value_t = 4)]
        xlen: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Prop1Cmd {
    /// Witness words for the loop wreath over F[x].
    Check {
        #[arg(long, default_value_t = 3)]
        index_len: usize,
        #[arg(long, default_value_t = 2)]
        entry_len: usize,
        #[arg(long, default_value_t = 8)]
        max_word: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Prop2Cmd {
    /// Check the isomorphism for a hereditary saturated set.
    Verify {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        #[arg(long, default_value_t = 300)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BalloonCmd {
    /// Check L(Γ′) ≅ L(Γ′(W)) wr L(C) for a balloon vertex.
    Check {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        #[arg(long, default_value_t = 300)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AffineTask {
    /// The six index-shift relations.
    Relations,
    /// Generation by t, t⁻¹, a and (1)_{0,0}.
    Prop3,
    /// Quasi-inverses in A₀ and M_n(A₀), and the non-nil witness.
    Radical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AffineAlgebra {
    /// A = F.
    Scalar,
    /// A = F[x].
    Poly,
    /// A = F·1 + A₀.
    Local,
}

#[derive(Args, Debug)]
pub struct AffinizeArgs {
    #[arg(value_enum)]
    pub task: AffineTask,
    #[arg(long, value_enum, default_value_t = AffineAlgebra::Local)]
    pub algebra: AffineAlgebra,
    /// Word length bound for prop3.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    /// Matrix window size.
    #[arg(long, default_value_t = 4)]
    pub window: u64,
    /// Random A₀ elements for radical.
    #[arg(long, default_value_t = 200)]
    pub elements: usize,
    /// Random matrices for radical.
    #[arg(long, default_value_t = 100)]
    pub matrices: usize,
    /// Largest matrix size for radical.
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Powers of the non-nil witness for radical.
    #[arg(long, default_value_t = 20)]
    pub powers: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        assert_eq!(parse_field("q"), Ok(FieldChoice::Rational));
        assert_eq!(parse_field("Q"), Ok(FieldChoice::Rational));
        assert_eq!(parse_field("gf5"), Ok(FieldChoice::Prime(5)));
        assert_eq!(parse_field("GF(65537)"), Ok(FieldChoice::Prime(65537)));
        assert!(parse_field("gf4").is_err());
        assert!(parse_field("gf").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
