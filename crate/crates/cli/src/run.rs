use polya_core::algebra::{MultiPoly, SquareMatrix, TruncatedSeries, Vars};
use polya_core::enumeration::{
    alt_zeta_from_counts, discriminant_census, discriminant_poly, polya_count, polya_weight_poly,
    quotient_point_value, zeta_from_counts, CountVector,
};
use polya_core::formulas::{
    alt_generating_function, alt_generating_function_raw, hodge_numbers, hodge_quotient,
    sym_generating_function,
};
use polya_core::lefschetz::{betti_to_identity_map, hodge_to_map, LefschetzPoly};
use polya_core::suite::run_equivalence_suite;
use polya_core::{Error, Map, Rational};
use serde_json::{json, Value};

use crate::job::{Command, Counts, Data, Family, JobSpec};

/// Exit status classes.
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Partial result to print anyway (oracle mismatches).
    pub output: Option<Value>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GroupTooLarge { .. }
            | Error::OracleCapExceeded { .. }
            | Error::BudgetExceeded { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
        }
    }
}

type Outcome = Result<Value, Failure>;

pub fn execute(job: &JobSpec) -> Outcome {
    let lim = &job.limits;
    match &job.command {
        Command::CycleIndex(g) => {
            let group = g.build(lim.group_cap)?;
            Ok(json!({
                "order": group.order(),
                "cycle_index": group.cycle_index::<Rational>().to_string(),
            }))
        }
        Command::QuotientSeries(p) => {
            let phi = graded_map(&p.data)?;
            let show = |c: &MultiPoly<Rational>| -> Result<String, Failure> {
                let l = LefschetzPoly::from_poly(c.clone())?;
                Ok(if p.u_one {
                    l.at_u_one().to_string()
                } else {
                    l.to_string()
                })
            };
            let mut out = serde_json::Map::new();
            match p.family {
                Family::Symmetric => {
                    let gf = sym_generating_function(&phi, lim.trunc)?;
                    out.insert("numerator".into(), gf.numerator.to_string().into());
                    out.insert("denominator".into(), gf.denominator.to_string().into());
                    out.insert("series".into(), series_strings(&gf.expansion, show)?.into());
                }
                Family::Alternating => {
                    let s = alt_generating_function(&phi, lim.trunc)?;
                    out.insert("series".into(), series_strings(&s, show)?.into());
                    let raw = alt_generating_function_raw(&phi, lim.trunc)?;
                    out.insert("raw_series".into(), series_strings(&raw, show)?.into());
                }
            }
            Ok(Value::Object(out))
        }
        Command::PointCount(p) => {
            let group = p.group.build(lim.group_cap)?;
            let counts = count_vector(&p.counts(), group.degree())?;
            let v = quotient_point_value(&group, &counts)?;
            let mut out = json!({ "value": v.to_string(), "integral": v.is_integer() });
            if v.is_integer() {
                out["count"] = v.to_integer().to_string().into();
            }
            Ok(out)
        }
        Command::Zeta(c) => {
            let counts = count_vector(c, lim.trunc)?;
            let z = zeta_from_counts::<Rational>(&counts, lim.trunc)?;
            Ok(json!({ "series": constant_strings(&z) }))
        }
        Command::AltZeta(c) => {
            let counts = count_vector(c, lim.trunc)?;
            let z = alt_zeta_from_counts::<Rational>(&counts, lim.trunc)?;
            Ok(json!({ "series": constant_strings(&z) }))
        }
        Command::Polya(p) => {
            let group = p.group.build(lim.group_cap)?;
            let mut out = json!({ "count": polya_count(&group, p.colors).to_string() });
            if p.weights {
                let colors =
                    usize::try_from(p.colors).map_err(|_| Failure::usage("too many colors"))?;
                out["weight_poly"] = polya_weight_poly::<Rational>(&group, colors)?
                    .to_string()
                    .into();
            }
            Ok(out)
        }
        Command::Hodge(p) => {
            let group = p.group.build(lim.group_cap)?;
            let diamond = p.hodge.diamond().map_err(Failure::usage)?;
            let poly = hodge_quotient::<Rational>(&group, &diamond, group.degree())?;
            let numbers: Vec<Value> = hodge_numbers(&poly)?
                .into_iter()
                .map(|((pp, qq), h)| json!([pp, qq, h]))
                .collect();
            Ok(json!({ "hodge_polynomial": poly.to_string(), "hodge_numbers": numbers }))
        }
        Command::DiscriminantCensus(p) => {
            let c = discriminant_census(p.n, p.q, u128::from(lim.enum_budget))?;
            Ok(json!({
                "discriminant": discriminant_poly(p.n)?.to_string(),
                "zero": c.zero,
                "qr": c.qr,
                "qnr": c.qnr,
                "double_cover": c.double_cover,
            }))
        }
        Command::OracleCheck(p) => {
            let report = run_equivalence_suite(&p.config(lim.oracle_cap))?;
            let verdict = if report.all_passed() { "PASS" } else { "FAIL" };
            let out = json!({
                "summary": format!("{verdict} {}/{}", report.passed(), report.total()),
                "instances": report
                    .instances
                    .iter()
                    .map(|i| json!({ "label": i.label, "passed": i.passed }))
                    .collect::<Vec<_>>(),
            });
            if report.all_passed() {
                Ok(out)
            } else {
                Err(Failure {
                    code: EXIT_MISMATCH,
                    message: format!(
                        "formula and oracle disagree on {} instance(s)",
                        report.total() - report.passed()
                    ),
                    output: Some(out),
                })
            }
        }
    }
}

fn graded_map(data: &Data) -> Result<Map, Failure> {
    Ok(match data {
        Data::Betti(b) => betti_to_identity_map(b),
        Data::Hodge(h) => hodge_to_map(&h.diamond().map_err(Failure::usage)?),
        Data::Map(blocks) => {
            let v = Vars::empty();
            let blocks = blocks
                .iter()
                .map(|rows| {
                    let rows = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|e| MultiPoly::constant(&v, e.0.clone()))
                                .collect()
                        })
                        .collect();
                    SquareMatrix::from_rows(&v, rows)
                })
                .collect::<polya_core::Result<Vec<_>>>()?;
            Map::new(&v, blocks)?
        }
    })
}

fn count_vector(c: &Counts, needed: usize) -> Result<CountVector, Failure> {
    match (&c.counts, &c.count_poly) {
        (Some(v), None) => Ok(CountVector::new(
            c.q,
            v.iter().map(|x| x.0.clone()).collect(),
        )?),
        (None, Some(p)) => Ok(CountVector::from_polynomial_count(c.q, p, needed)?),
        _ => Err(Failure::usage(
            "give exactly one of `counts` and `count_poly`",
        )),
    }
}

fn series_strings(
    s: &TruncatedSeries<Rational>,
    show: impl Fn(&MultiPoly<Rational>) -> Result<String, Failure>,
) -> Result<Vec<String>, Failure> {
    s.coeffs().iter().map(show).collect()
}

fn constant_strings(s: &TruncatedSeries<Rational>) -> Vec<String> {
    s.coeffs()
        .iter()
        .map(|c| c.constant_term().to_string())
        .collect()
}
