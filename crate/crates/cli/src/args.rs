use std::ops::RangeInclusive;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ramsum",
    version,
    about = "Exact Ramanujan sums and sums of products of Ramanujan sums"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// A comma-separated list such as `6,10,15`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List<T>(pub Vec<T>);

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<List<T>, String> {
    if text.is_empty() {
        return Err(format!("empty {what} list"));
    }
    text.split(',')
        .map(|item| {
            item.parse::<T>()
                .map_err(|_| format!("'{item}' is not a valid {what}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(List)
}

fn parse_moduli(text: &str) -> Result<List<u64>, String> {
    let list = parse_list::<u64>(text, "modulus")?;
    if list.0.contains(&0) {
        return Err("moduli must be positive".into());
    }
    Ok(list)
}

fn parse_shifts(text: &str) -> Result<List<i64>, String> {
    parse_list(text, "shift")
}

/// `lo..hi`, both ends inclusive, 1 ≤ lo ≤ hi.
fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("range '{text}' must look like LO..HI"))?;
    let lo: u64 = lo.parse().map_err(|_| format!("bad range start '{lo}'"))?;
    let hi: u64 = hi.parse().map_err(|_| format!("bad range end '{hi}'"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range {lo}..{hi} must satisfy 1 ≤ LO ≤ HI"));
    }
    Ok(lo..=hi)
}

/// Either an explicit moduli list or a range of equal-moduli tuples.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ModuliArgs {
    /// Comma-separated moduli, e.g. `6,10`.
    #[arg(long, value_parser = parse_moduli)]
    pub moduli: Option<List<u64>>,

    /// Table mode: evaluate at (m, …, m) for every m in LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<RangeInclusive<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumStrategy {
    /// Per-prime convolution, with closed forms where they apply.
    Fast,
    /// Per-prime convolution without closed-form shortcuts.
    General,
    /// Literal summation over k mod m.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TStrategyArg {
    Closed,
    Spectral,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootStrategy {
    Multiplicative,
    Direct,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Ramanujan sum c_n(k) for each listed n.
    #[command(name = "c")]
    C {
        #[command(flatten)]
        moduli: ModuliArgs,
        /// The argument k.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },

    /// E_G(m_1, …, m_r), the mean of Π c_{m_i}(g_i(k)) over k mod lcm.
    #[command(name = "E", group(ArgGroup::new("system").required(true).args(["polys", "shifts"])))]
    E {
        #[command(flatten)]
        moduli: ModuliArgs,
        /// Semicolon-separated polynomials, e.g. `x^2-1;x+1`.
        #[arg(long)]
        polys: Option<String>,
        /// Comma-separated shifts a_i, meaning g_i(x) = x − a_i.
        #[arg(long, value_parser = parse_shifts, allow_hyphen_values = true)]
        shifts: Option<List<i64>>,
        #[arg(long, value_enum, default_value_t = SumStrategy::Fast)]
        strategy: SumStrategy,
    },

    /// R_G(m_1, …, m_r), the sum restricted to k prime to lcm. Without
    /// polynomials or shifts this is R(m_1, …, m_r) (all shifts 1).
    #[command(name = "R", group(ArgGroup::new("system").args(["polys", "shifts"])))]
    R {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long)]
        polys: Option<String>,
        #[arg(long, value_parser = parse_shifts, allow_hyphen_values = true)]
        shifts: Option<List<i64>>,
        #[arg(long, value_enum, default_value_t = SumStrategy::Fast)]
        strategy: SumStrategy,
    },

    /// T_a(m_1, …, m_r).
    #[command(name = "T")]
    T {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Number of moduli in table mode.
        #[arg(long, requires = "range", conflicts_with = "moduli")]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = TStrategyArg::Closed)]
        strategy: TStrategyArg,
    },

    /// Root counts N_G (or η_G with --units) of a congruence system.
    Roots {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long)]
        polys: String,
        /// Count only solutions prime to every modulus.
        #[arg(long)]
        units: bool,
        #[arg(long, value_enum, default_value_t = RootStrategy::Multiplicative)]
        strategy: RootStrategy,
    },

    /// The Euler product α_r truncated at a prime bound.
    Alpha {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
    },

    /// Σ_{m≤x} g_r(m) against (α_r / r) x^r.
    Asymptotic {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
    },

    /// Run verification suites; exits 4 if any check fails.
    Verify {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Range parameter for the suite (its default range if omitted).
        #[arg(long)]
        max: Option<u64>,
    },
}
