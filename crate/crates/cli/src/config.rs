//! Flag parsing helpers: size ranges, field modes, custom supercharges.

use clap::ValueEnum;
use nicolai::fock::{MonomialTerm, OperatorLetter, SuperchargeSpec};
use nicolai::homology::DEFAULT_SIZE_CAP;
use nicolai::linalg::{FieldSpec, RankMode};
use nicolai::{Error, Model, Result};

/// Default seed for random prime selection; always echoed in the output so
/// runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x1ceb_00da;

/// Environment variable overriding the default brute-force size cap.
pub const SIZE_CAP_ENV: &str = "NICOLAI_SIZE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Nicolai,
    Z2,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuiltinModelArg {
    Nicolai,
    Z2,
}

impl From<BuiltinModelArg> for Model {
    fn from(m: BuiltinModelArg) -> Model {
        match m {
            BuiltinModelArg::Nicolai => Model::Nicolai,
            BuiltinModelArg::Z2 => Model::Z2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Recursion,
    Hpl,
    Hamiltonian,
    All,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Brute => "brute",
            MethodArg::Recursion => "recursion",
            MethodArg::Hpl => "hpl",
            MethodArg::Hamiltonian => "hamiltonian",
            MethodArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Hpl,
    Hamiltonian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
    Csv,
}

/// Field flag: `two-prime`, `rational`, or `prime:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldArg {
    TwoPrime,
    Rational,
    Prime(u64),
}

impl FieldArg {
    pub fn parse(text: &str) -> Result<FieldArg> {
        match text {
            "two-prime" => Ok(FieldArg::TwoPrime),
            "rational" => Ok(FieldArg::Rational),
            other => match other.strip_prefix("prime:") {
                Some(p) => p
                    .parse::<u64>()
                    .map(FieldArg::Prime)
                    .map_err(|_| Error::Config(format!("bad prime modulus '{p}'"))),
                None => Err(Error::Config(format!(
                    "unknown field '{other}' (expected two-prime, rational, or prime:<p>)"
                ))),
            },
        }
    }

    pub fn rank_mode(self, seed: u64) -> RankMode {
        match self {
            FieldArg::TwoPrime => RankMode::TwoPrime { seed },
            FieldArg::Rational => RankMode::Field(FieldSpec::ExactRational),
            FieldArg::Prime(p) => RankMode::Field(FieldSpec::PrimeField(p)),
        }
    }

    pub fn describe(self) -> String {
        match self {
            FieldArg::TwoPrime => "two-prime".into(),
            FieldArg::Rational => "rational".into(),
            FieldArg::Prime(p) => format!("prime:{p}"),
        }
    }
}

/// `N`, `A..B` or `A..=B`, both bounds inclusive.
pub fn parse_sizes(text: &str) -> Result<(u32, u32)> {
    if let Some((a, b)) = text.split_once("..") {
        let lo: u32 = a
            .parse()
            .map_err(|_| Error::Config(format!("bad size range '{text}'")))?;
        let hi: u32 = b
            .trim_start_matches('=')
            .parse()
            .map_err(|_| Error::Config(format!("bad size range '{text}'")))?;
        if lo > hi {
            return Err(Error::Config(format!("empty size range '{text}'")));
        }
        Ok((lo, hi))
    } else {
        let n: u32 = text
            .parse()
            .map_err(|_| Error::Config(format!("bad size '{text}'")))?;
        Ok((n, n))
    }
}

/// The brute-force size cap: flag, else environment, else the default.
pub fn resolve_size_cap(flag: Option<u32>) -> Result<u32> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(SIZE_CAP_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| Error::Config(format!("bad {SIZE_CAP_ENV} value '{text}'"))),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

/// Parses the custom supercharge syntax: terms separated by `+`, each an
/// optional integer coefficient followed by letters `a<site>` (annihilate)
/// and `c<site>` (create), read left to right as the operator product.
///
/// Example: `a1 c2 a3 + a3 c4 a5`.
pub fn parse_supercharge(text: &str, sites: u32) -> Result<SuperchargeSpec> {
    let mut terms = Vec::new();
    for chunk in text.split('+') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(Error::Config(format!("empty term in '{text}'")));
        }
        let mut coefficient = 1i64;
        let mut letters = Vec::new();
        for (i, token) in chunk.split_whitespace().enumerate() {
            if i == 0 {
                if let Ok(c) = token.parse::<i64>() {
                    coefficient = c;
                    continue;
                }
            }
            let (kind, site_text) = token
                .split_at_checked(1)
                .ok_or_else(|| Error::Config(format!("bad letter '{token}'")))?;
            let site: u32 = site_text
                .parse()
                .map_err(|_| Error::Config(format!("bad site in letter '{token}'")))?;
            let letter = match kind {
                "a" => OperatorLetter::annihilate(site),
                "c" => OperatorLetter::create(site),
                _ => {
                    return Err(Error::Config(format!(
                        "bad letter '{token}' (expected a<site> or c<site>)"
                    )))
                }
            };
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(Error::Config(format!("term '{chunk}' has no letters")));
        }
        terms.push(MonomialTerm::new(coefficient, letters)?);
    }
    let degree = terms[0].degree();
    SuperchargeSpec::new(sites, degree, terms)
}

/// Exit codes: 0 ok, 1 verification mismatch, 2 config, 3 resource cap,
/// 4 internal arithmetic disagreement.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Config(_) | Error::Model(_) => 2,
        Error::Resource(_) => 3,
        Error::Arithmetic(_) => 4,
    }
}
