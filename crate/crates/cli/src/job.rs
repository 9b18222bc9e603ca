//! Job documents: what a command was asked to do, in a form that serializes
//! back to itself.

use std::fmt;
use std::str::FromStr;

use polya_core::groups::{GroupKind, PermGroup, Permutation};
use polya_core::lefschetz::HodgeDiamond;
use polya_core::suite::SuiteConfig;
use polya_core::{BigInt, Rational};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub const SCHEMA: &str = "polya/v1";

/// An exact rational read from a JSON integer or a string such as `"-3/4"`,
/// written back as a canonical string.
#[derive(Clone, Debug, PartialEq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Exact(Rational::from_integer(i.into()))),
            Raw::Str(s) => parse_rational(&s).map(Exact).map_err(de::Error::custom),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("bad rational `{s}`"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("bad rational `{s}`"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(num, den))
}

/// Nonnegative integer read from a JSON integer or a decimal string.
#[derive(Clone, Debug, PartialEq)]
pub struct Count(pub BigInt);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(i) => s.serialize_i64(i),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Exact::deserialize(d)?.0;
        if !r.is_integer() {
            return Err(de::Error::custom(format!("expected an integer, got {r}")));
        }
        Ok(Count(r.to_integer()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `symmetric`, `alternating`, `cyclic`, `dihedral`, `trivial` or `generators`.
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> polya_core::Result<PermGroup> {
        if self.kind == "generators" {
            let gens = self
                .generators
                .iter()
                .map(|g| Permutation::parse(g, self.n))
                .collect::<polya_core::Result<Vec<_>>>()?;
            return PermGroup::closure(&gens, self.n, cap);
        }
        if !self.generators.is_empty() {
            return Err(polya_core::Error::InvalidInput(format!(
                "`generators` only applies to kind `generators`, not `{}`",
                self.kind
            )));
        }
        PermGroup::named(self.kind.parse::<GroupKind>()?, self.n, cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Symmetric,
    Alternating,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
        })
    }
}

/// `h^{p,q}` entries as `[p, q, h]` triples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hodge(pub Vec<[usize; 3]>);

impl Hodge {
    pub fn diamond(&self) -> Result<HodgeDiamond, String> {
        let mut d = HodgeDiamond::new();
        for &[p, q, h] in &self.0 {
            let key = (
                u32::try_from(p).map_err(|_| "p out of range")?,
                u32::try_from(q).map_err(|_| "q out of range")?,
            );
            if d.insert(key, h).is_some() {
                return Err(format!("h^{{{p},{q}}} given twice"));
            }
        }
        Ok(d)
    }
}

/// Cohomological input: Betti numbers, a Hodge diamond, or an explicit graded
/// map given as one square block (list of rows) per degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Data {
    Betti(Vec<usize>),
    Hodge(Hodge),
    Map(Vec<Vec<Vec<Exact>>>),
}

/// Point counts, either listed or given as a polynomial in `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<Count>>,
    /// Coefficients `c_k` of `Σ c_k q^k`, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_poly: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSeriesParams {
    pub family: Family,
    pub data: Data,
    /// Specialize `u = 1`.
    #[serde(default)]
    pub u_one: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointCountParams {
    pub group: GroupSpec,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<Count>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_poly: Option<Vec<i64>>,
}

impl PointCountParams {
    pub fn counts(&self) -> Counts {
        Counts {
            q: self.q,
            counts: self.counts.clone(),
            count_poly: self.count_poly.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyaParams {
    pub group: GroupSpec,
    pub colors: u64,
    /// Also report the weight polynomial in `t_1..t_colors`.
    #[serde(default)]
    pub weights: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeParams {
    pub group: GroupSpec,
    pub hodge: Hodge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusParams {
    pub n: usize,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleCheckParams {
    pub seed: u64,
    pub min_n: usize,
    pub max_n: usize,
    pub degree_bounds: Vec<usize>,
    pub max_total_dim: usize,
    pub maps_per_group: usize,
    pub random_groups: usize,
    pub max_entry: i64,
    pub per_element: bool,
}

impl Default for OracleCheckParams {
    fn default() -> Self {
        let c = SuiteConfig::default();
        OracleCheckParams {
            seed: c.seed,
            min_n: c.min_n,
            max_n: c.max_n,
            degree_bounds: c.degree_bounds,
            max_total_dim: c.max_total_dim,
            maps_per_group: c.maps_per_group,
            random_groups: c.random_groups,
            max_entry: c.max_entry,
            per_element: c.per_element,
        }
    }
}

impl OracleCheckParams {
    pub fn config(&self, oracle_cap: usize) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            min_n: self.min_n,
            max_n: self.max_n,
            degree_bounds: self.degree_bounds.clone(),
            max_total_dim: self.max_total_dim,
            maps_per_group: self.maps_per_group,
            random_groups: self.random_groups,
            max_entry: self.max_entry,
            per_element: self.per_element,
            oracle_cap,
        }
    }
}

/// Command plus parameters, tagged by the command name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "params", rename_all = "kebab-case")]
pub enum Command {
    CycleIndex(GroupSpec),
    QuotientSeries(QuotientSeriesParams),
    PointCount(PointCountParams),
    Zeta(Counts),
    AltZeta(Counts),
    Polya(PolyaParams),
    Hodge(HodgeParams),
    DiscriminantCensus(CensusParams),
    OracleCheck(OracleCheckParams),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CycleIndex(_) => "cycle-index",
            Command::QuotientSeries(_) => "quotient-series",
            Command::PointCount(_) => "point-count",
            Command::Zeta(_) => "zeta",
            Command::AltZeta(_) => "alt-zeta",
            Command::Polya(_) => "polya",
            Command::Hodge(_) => "hodge",
            Command::DiscriminantCensus(_) => "discriminant-census",
            Command::OracleCheck(_) => "oracle-check",
        }
    }

    /// Parses a bare parameter object for the named command.
    pub fn from_params(name: &str, params: serde_json::Value) -> serde_json::Result<Self> {
        let mut tagged = serde_json::Map::new();
        tagged.insert("command".into(), name.into());
        tagged.insert("params".into(), params);
        serde_json::from_value(serde_json::Value::Object(tagged))
    }
}

/// Resolved truncation order and resource caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub trunc: usize,
    pub group_cap: usize,
    pub oracle_cap: usize,
    pub enum_budget: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub limits: Limits,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    schema: String,
    command: String,
    params: serde_json::Value,
    limits: Limits,
}

impl JobSpec {
    pub fn to_value(&self) -> serde_json::Value {
        let tagged = serde_json::to_value(&self.command).expect("commands serialize");
        let raw = RawJob {
            schema: SCHEMA.to_string(),
            command: self.command.name().to_string(),
            params: tagged["params"].clone(),
            limits: self.limits,
        };
        serde_json::to_value(raw).expect("jobs serialize")
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self, String> {
        let raw: RawJob = serde_json::from_value(v).map_err(|e| e.to_string())?;
        if raw.schema != SCHEMA {
            return Err(format!(
                "unsupported schema `{}`, expected `{SCHEMA}`",
                raw.schema
            ));
        }
        let command = Command::from_params(&raw.command, raw.params).map_err(|e| e.to_string())?;
        Ok(JobSpec {
            command,
            limits: raw.limits,
        })
    }
}
