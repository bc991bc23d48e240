use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cboom", version, about = "c-differential and c-boomerang tables over small finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the field definition and a certificate that the generator is primitive
    Field(FieldCmd),
    /// c-differential tables and uniformities
    Ddt(TableCmd),
    /// c-boomerang tables and uniformities
    Bct(TableCmd),
    /// Walsh transforms and the Walsh-side characterizations
    Walsh(WalshCmd),
    /// Run a named theorem verifier over a range of c
    Verify(VerifyCmd),
    /// Value sets and witness lists for a function family, optionally diffed against published data
    Atlas(AtlasCmd),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree
    #[arg(long)]
    pub n: u32,
    /// Defining polynomial coefficients, constant term first, e.g. "2,2,1"
    #[arg(long)]
    pub modulus: Option<String>,
    /// Index of a primitive element to use as generator
    #[arg(long)]
    pub generator: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct FuncArgs {
    /// Polynomial expression in x, e.g. "x^10 - x^6 - x^2"; "inv" is x^(q-2)
    #[arg(long, conflicts_with = "family")]
    pub func: Option<String>,
    /// Named family: square, gold, half_gold, dob, inverse
    #[arg(long)]
    pub family: Option<String>,
    /// Frobenius index for gold and half_gold
    #[arg(long)]
    pub k: Option<u32>,
    /// Parameter u of the dob family, as a field literal
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct CArgs {
    /// Multiplier: a field literal such as "2*a + 1", or "all" for every c other than 0 and 1
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    pub c: Vec<String>,
    /// Literal to drop from the selected multipliers (repeatable)
    #[arg(long, allow_hyphen_values = true)]
    pub exclude: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Slow,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Allow jobs above the fast-tier cost limit
    #[arg(long, value_enum, default_value = "fast")]
    pub tier: Tier,
}

#[derive(Args, Debug)]
pub struct FieldCmd {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    System,
    Definition,
    Naive,
}

#[derive(Args, Debug)]
pub struct TableCmd {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub func: FuncArgs,
    #[command(flatten)]
    pub c: CArgs,
    #[command(flatten)]
    pub common: Common,
    /// Counting route for the c-BCT
    #[arg(long, value_enum, default_value = "system")]
    pub method: Method,
    /// Recompute every table with an independent brute-force count and compare
    #[arg(long)]
    pub oracle: bool,
    /// Print only the uniformities, not the tables
    #[arg(long)]
    pub summary: bool,
}

#[derive(Args, Debug)]
pub struct WalshCmd {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub func: FuncArgs,
    #[command(flatten)]
    pub c: CArgs,
    #[command(flatten)]
    pub common: Common,
    /// Omit the transform table
    #[arg(long)]
    pub no_transform: bool,
    /// Cross-check the constrained sums by direct enumeration
    #[arg(long)]
    pub oracle: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    GoldBound,
    MuC,
    InverseBinary,
    InverseOdd,
    QuadraticCensus,
    MonomialShift,
    MonomialInverseDdt,
    ZeroRow,
    BetaMinus1,
    Sandwich,
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    #[arg(value_enum)]
    pub theorem: Theorem,
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub func: FuncArgs,
    /// Exponent d for monomial statements
    #[arg(long)]
    pub d: Option<u128>,
    #[command(flatten)]
    pub c: CArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Paper,
}

#[derive(Args, Debug)]
pub struct AtlasCmd {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub func: FuncArgs,
    #[command(flatten)]
    pub common: Common,
    /// Compare with the published value sets and witness lists
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
    /// Also collect the value set over every cell, including a = 0 and b = 0
    #[arg(long)]
    pub include_zero: bool,
    /// Report progress on stderr
    #[arg(long)]
    pub progress: bool,
}
