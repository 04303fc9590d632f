//! Command-line flags. The parsed [`RunConfig`] is echoed into every report
//! and can be printed back to an equivalent argument list.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gradus_core::{Bidegree, FieldSpec, TypeTuple};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "gradus", version, about = "Exact rank certificates for bigraded ideal containments")]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// Certify the main containment for one or more types.
    VerifyType {
        #[arg(long = "type", value_name = "A,B,C,D", required = true)]
        types: Vec<TypeArg>,
    },
    /// Hilbert function and a strong Lefschetz element of a monomial
    /// complete intersection.
    Lefschetz {
        #[arg(long, value_name = "M0,M1,...", required = true)]
        degrees: Vec<Degrees>,
    },
    /// The Fermat-surface certificate in P^3.
    NlClassical {
        #[arg(long, required = true)]
        degree: Vec<u32>,
    },
    /// Certify every type of the default matrix, using the cache.
    Batch {
        /// Largest `t` of the generated types.
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        max_t: i64,
        /// Recompute every K-th cache hit and compare (0 disables).
        #[arg(long, default_value_t = 0)]
        recheck: usize,
    },
    /// Dimension of a graded piece.
    Dim {
        #[arg(long)]
        ring: RingArg,
        #[arg(long = "type", value_name = "A,B,C,D")]
        ty: Option<TypeArg>,
        #[arg(long, value_name = "M,N", allow_hyphen_values = true)]
        bidegree: Bidegree,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// `qq` or `fp:PRIME`.
    #[arg(long, global = true, env = "GRADUS_FIELD", default_value = "fp:65537")]
    pub field: FieldSpec,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Explicit)]
    pub mode: ModeArg,
    /// Seed for random mode.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Write the JSON report here; `-` for stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "GRADUS_CACHE")]
    pub cache: Option<PathBuf>,
    /// Write the dense matrix of every deficient certificate.
    #[arg(long, global = true)]
    pub dump_matrices: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Explicit,
    Random,
}

/// A type given as `a,b,c,d`, validated on parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u32; 4]", into = "[u32; 4]")]
pub struct TypeArg(pub TypeTuple);

impl FromStr for TypeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = parse_list(s)?;
        let arr: [u32; 4] = parts
            .try_into()
            .map_err(|v: Vec<u32>| format!("a type has 4 entries, got {}", v.len()))?;
        arr.try_into()
    }
}

impl TryFrom<[u32; 4]> for TypeArg {
    type Error = String;
    fn try_from(d: [u32; 4]) -> Result<Self, String> {
        TypeTuple::new(d).map(TypeArg).map_err(|e| e.to_string())
    }
}

impl From<TypeArg> for [u32; 4] {
    fn from(t: TypeArg) -> Self {
        t.0.input()
    }
}

impl fmt::Display for TypeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0.input()))
    }
}

/// Degrees of a complete intersection, each at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Degrees(pub Vec<u32>);

impl FromStr for Degrees {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s)?.try_into()
    }
}

impl TryFrom<Vec<u32>> for Degrees {
    type Error = String;
    fn try_from(v: Vec<u32>) -> Result<Self, String> {
        if v.len() < 2 {
            return Err("need at least two degrees".into());
        }
        if v.contains(&0) {
            return Err("degrees must be at least 1".into());
        }
        Ok(Degrees(v))
    }
}

impl From<Degrees> for Vec<u32> {
    fn from(d: Degrees) -> Self {
        d.0
    }
}

impl fmt::Display for Degrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// `S`, `T`, `U` (which need a type) or `P<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RingArg {
    S,
    T,
    U,
    P(usize),
}

impl FromStr for RingArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "S" | "s" => Ok(RingArg::S),
            "T" | "t" => Ok(RingArg::T),
            "U" | "u" => Ok(RingArg::U),
            other => other
                .strip_prefix(['P', 'p'])
                .and_then(|n| n.parse().ok())
                .filter(|&n| (1..8).contains(&n))
                .map(RingArg::P)
                .ok_or_else(|| format!("unknown ring {other:?}; expected S, T, U or P1..P7")),
        }
    }
}

impl TryFrom<String> for RingArg {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<RingArg> for String {
    fn from(r: RingArg) -> String {
        r.to_string()
    }
}

impl fmt::Display for RingArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingArg::S => f.write_str("S"),
            RingArg::T => f.write_str("T"),
            RingArg::U => f.write_str("U"),
            RingArg::P(n) => write!(f, "P{n}"),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// Arguments that parse back to this configuration. Every flag is
    /// spelled out, so defaults and environment variables do not matter.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn to_args(&self) -> Vec<String> {
        let mut a: Vec<String> = Vec::new();
        let mut flag = |name: &str, value: String| {
            a.push(format!("--{name}"));
            a.push(value);
        };
        let name = match &self.command {
            Command::VerifyType { .. } => "verify-type",
            Command::Lefschetz { .. } => "lefschetz",
            Command::NlClassical { .. } => "nl-classical",
            Command::Batch { .. } => "batch",
            Command::Dim { .. } => "dim",
        };
        let mut args = vec![name.to_string()];
        match &self.command {
            Command::VerifyType { types } => types.iter().for_each(|t| flag("type", t.to_string())),
            Command::Lefschetz { degrees } => degrees.iter().for_each(|d| flag("degrees", d.to_string())),
            Command::NlClassical { degree } => degree.iter().for_each(|d| flag("degree", d.to_string())),
            Command::Batch { max_t, recheck } => {
                flag("max-t", max_t.to_string());
                flag("recheck", recheck.to_string());
            }
            Command::Dim { ring, ty, bidegree } => {
                flag("ring", ring.to_string());
                if let Some(t) = ty {
                    flag("type", t.to_string());
                }
                flag("bidegree", format!("{},{}", bidegree.m, bidegree.n));
            }
        }
        let c = &self.common;
        flag("field", c.field.to_string());
        flag(
            "mode",
            match c.mode {
                ModeArg::Explicit => "explicit".into(),
                ModeArg::Random => "random".into(),
            },
        );
        flag("seed", c.seed.to_string());
        flag("jobs", c.jobs.to_string());
        if let Some(out) = &c.out {
            flag("out", out.display().to_string());
        }
        if let Some(cache) = &c.cache {
            flag("cache", cache.display().to_string());
        }
        args.extend(a);
        if c.dump_matrices {
            args.push("--dump-matrices".into());
        }
        args
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("gradus").chain(args.iter().copied())).unwrap()
    }

    fn round_trip(cfg: &RunConfig) {
        let args = cfg.to_args();
        let again = RunConfig::try_parse_from(std::iter::once("gradus".to_string()).chain(args)).unwrap();
        assert_eq!(&again, cfg);
    }

    #[test]
    fn printer_round_trips() {
        for args in [
            &["verify-type", "--type", "2,2,2,2", "--type", "4,0,2,2", "--mode", "random", "--seed", "9"][..],
            &["lefschetz", "--degrees", "2,2,2", "--degrees", "3,3", "--field", "qq"],
            &["nl-classical", "--degree", "4", "--degree", "5", "--dump-matrices"],
            &["batch", "--max-t", "7", "--jobs", "4", "--cache", "/tmp/c", "--out", "r.json"],
            &["batch", "--max-t", "-1", "--recheck", "2"],
            &["dim", "--ring", "S", "--type", "2,2,2,2", "--bidegree", "-3,4"],
            &["dim", "--ring", "P3", "--bidegree", "8,0", "--field", "fp:101"],
        ] {
            round_trip(&parse(args));
        }
    }

    #[test]
    fn config_serializes_and_back() {
        let cfg = parse(&["verify-type", "--type", "4,0,2,2", "--cache", "/tmp/x"]);
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), cfg);
        let bad = json.replacen("\"seed\"", "\"sede\"", 1);
        assert!(serde_json::from_str::<RunConfig>(&bad).is_err());
    }

    #[test]
    fn type_order_is_kept_for_reporting() {
        let t: TypeArg = "4,0,2,2".parse().unwrap();
        assert_eq!(t.to_string(), "4,0,2,2");
        assert_eq!(t.0.degrees(), [0, 2, 2, 4]);
    }

    #[test]
    fn invalid_inputs() {
        assert!("1,2,2,2".parse::<TypeArg>().is_err());
        assert!("2,2,2".parse::<TypeArg>().is_err());
        assert!("0,2,2".parse::<Degrees>().is_err());
        assert!("Q".parse::<RingArg>().is_err());
    }
}
