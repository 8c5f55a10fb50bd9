use num_bigint::{BigInt, BigUint};
use persym::census::{joint_rank_census_with, rank_census_with, Budget, CensusCache};
use persym::families::nested_chain;
use persym::formulas::double::{closed_form_terms, gamma_double_recur_with};
use persym::formulas::moments::{moment_of_counts, moment_of_shape};
use persym::formulas::persym::gamma_persym_rows;
use persym::formulas::{gamma_double, gamma_persym, gamma_triple, r_q_single_closed, FormulaResult};
use persym::laurent::{exp_sum_direct, exp_sum_rank, integral_moment_with, LaurentPoint, SumShape};
use persym::polycount::SystemSpec;
use persym::{Error, FamilyShape, Result};
use serde_json::{json, Map, Value};

use crate::{CountPath, Failure, GammaPath};

type Outcome = std::result::Result<(String, Option<String>), Failure>;

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialise");
    s.push('\n');
    s
}

pub fn census(shape: &str, joint: bool, csv: bool, budget: Budget) -> Result<String> {
    let shape: FamilyShape = shape.parse()?;
    if joint {
        let table = joint_rank_census_with(&shape, &nested_chain(&shape)?, budget)?;
        return Ok(if csv { table.to_csv() } else { pretty(&table.to_json()) });
    }
    let dist = rank_census_with(&shape, budget)?;
    Ok(if csv { dist.to_csv() } else { pretty(&dist.to_json()) })
}

/// `Gamma_i` from whichever closed form covers the family.
pub fn closed_gamma(shape: &FamilyShape, i: usize) -> Result<FormulaResult> {
    match *shape {
        FamilyShape::Single { s, k } => gamma_persym(s, k, i),
        FamilyShape::PersymPlusRows { n, m, k } => gamma_persym_rows(n, m, k, i),
        FamilyShape::Double { s: 0, m, k } => gamma_persym(m, k, i),
        FamilyShape::Double { s, m, k } => gamma_double(s, m, k, i),
        FamilyShape::Triple { s, m, l: 0, k } if s > 0 => gamma_triple(s, m, k, i),
        FamilyShape::Triple { .. } => Err(Error::NotCovered {
            what: format!("{shape}"),
            nearest: "the triple closed forms need l=0 and s>=1; try --path recur".into(),
        }),
    }
}

/// `Gamma_i` through a row-removal recurrence.
pub fn recur_gamma(shape: &FamilyShape, i: usize, cache: &CensusCache) -> Result<FormulaResult> {
    match *shape {
        FamilyShape::Double { s, m, k } if s >= 2 => {
            let terms = closed_form_terms(cache);
            gamma_double_recur_with(s, m, k, i, &terms)
        }
        FamilyShape::Triple { s, m, l, k } if s >= 2 => {
            persym::formulas::triple::gamma_triple_recur_with(s, m, l, k, i, cache)
        }
        _ => Err(Error::NotCovered {
            what: format!("recurrence for {shape}"),
            nearest: "double or triple families with s >= 2".into(),
        }),
    }
}

fn census_gamma(shape: &FamilyShape, i: usize, cache: &CensusCache) -> Result<FormulaResult> {
    let dist = cache.rank(shape)?;
    Ok(FormulaResult::new(BigInt::from(dist.get(i)), "exhaustive census"))
}

fn path_json(r: &Result<FormulaResult>) -> Value {
    match r {
        Ok(v) => json!({ "value": v.value.to_string(), "provenance": v.provenance }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Whether every available value is equal; `None` if none is available.
fn agreement<'a>(values: impl Iterator<Item = &'a BigInt>) -> Option<bool> {
    let mut first: Option<&BigInt> = None;
    for v in values {
        match first {
            None => first = Some(v),
            Some(f) if f != v => return Some(false),
            _ => {}
        }
    }
    first.map(|_| true)
}

/// Collects named path results into a report; fails only if no path ran.
fn compare(mut head: Map<String, Value>, results: Vec<(&str, Result<FormulaResult>)>) -> Outcome {
    let values: Vec<&BigInt> = results.iter().filter_map(|(_, r)| r.as_ref().ok().map(|v| &v.value)).collect();
    let Some(agree) = agreement(values.iter().copied()) else {
        let (_, err) = results.into_iter().find(|(_, r)| r.is_err()).expect("no path available");
        return Err(Failure::Lib(err.err().expect("checked")));
    };
    let paths: Map<String, Value> = results.iter().map(|(name, r)| (name.to_string(), path_json(r))).collect();
    head.insert("paths".into(), Value::Object(paths));
    head.insert("available".into(), json!(values.len()));
    head.insert("agree".into(), json!(agree));
    if agree {
        head.insert("value".into(), json!(values[0].to_string()));
    }
    let verdict = (!agree).then(|| "paths disagree".to_string());
    Ok((pretty(&Value::Object(head)), verdict))
}

pub fn gamma(shape: &str, i: usize, path: GammaPath, budget: Budget) -> Outcome {
    let shape: FamilyShape = shape.parse()?;
    let cache = CensusCache::new(budget);
    let mut head = Map::new();
    head.insert("shape".into(), json!(shape.to_string()));
    head.insert("rank".into(), json!(i));
    let single = |r: Result<FormulaResult>, name: &str| -> Outcome {
        let r = r?;
        let mut head = head.clone();
        head.insert("path".into(), json!(name));
        head.insert("value".into(), json!(r.value.to_string()));
        head.insert("provenance".into(), json!(r.provenance));
        Ok((pretty(&Value::Object(head)), None))
    };
    match path {
        GammaPath::Closed => single(closed_gamma(&shape, i), "closed"),
        GammaPath::Recur => single(recur_gamma(&shape, i, &cache), "recur"),
        GammaPath::Census => single(census_gamma(&shape, i, &cache), "census"),
        GammaPath::All => compare(
            head.clone(),
            vec![
                ("closed", closed_gamma(&shape, i)),
                ("recur", recur_gamma(&shape, i, &cache)),
                ("census", census_gamma(&shape, i, &cache)),
            ],
        ),
    }
}

/// Count through closed-form rank counts and the moment identity.
pub fn closed_count(spec: &SystemSpec, q: usize) -> Result<FormulaResult> {
    if let SystemSpec::Single { k, m } = *spec {
        if m < k {
            return r_q_single_closed(q, k, m);
        }
    }
    let shape = spec.family();
    let counts = (0..=shape.max_rank())
        .map(|i| {
            let v = closed_gamma(&shape, i)?.value;
            v.to_biguint()
                .ok_or_else(|| Error::Internal(format!("negative count {v} at rank {i}")))
        })
        .collect::<Result<Vec<BigUint>>>()?;
    let r = moment_of_counts(&counts, q, shape.cols() + shape.total_rows(), shape.param_bits())?;
    Ok(FormulaResult::new(r.value, "closed-form rank counts"))
}

fn brute_count(spec: &SystemSpec, q: usize, budget: Budget) -> Result<FormulaResult> {
    Ok(FormulaResult::new(BigInt::from(spec.count(q, budget)?), "linearity count over Y tuples"))
}

fn integral_count(spec: &SystemSpec, q: usize, budget: Budget) -> Result<FormulaResult> {
    let shape = SumShape::for_family(&spec.family())?;
    Ok(FormulaResult::new(integral_moment_with(&shape, q, budget)?, "moment integral over cosets"))
}

fn moment_count(spec: &SystemSpec, q: usize, budget: Budget) -> Result<FormulaResult> {
    let dist = rank_census_with(&spec.family(), budget)?;
    let r = moment_of_shape(&dist, q)?;
    Ok(FormulaResult::new(r.value, "census rank counts"))
}

pub fn count(system: &str, q: usize, path: CountPath, budget: Budget) -> Outcome {
    let spec: SystemSpec = system.parse()?;
    if q == 0 {
        return Err(Error::Domain("q must be at least 1".into()).into());
    }
    let mut head = Map::new();
    head.insert("system".into(), json!(spec.to_string()));
    head.insert("q".into(), json!(q));
    let single = |r: Result<FormulaResult>, name: &str| -> Outcome {
        let r = r?;
        let mut head = head.clone();
        head.insert("path".into(), json!(name));
        head.insert("value".into(), json!(r.value.to_string()));
        Ok((pretty(&Value::Object(head)), None))
    };
    match path {
        CountPath::Brute => single(brute_count(&spec, q, budget), "brute"),
        CountPath::Integral => single(integral_count(&spec, q, budget), "integral"),
        CountPath::Moment => single(moment_count(&spec, q, budget), "moment"),
        CountPath::Closed => single(closed_count(&spec, q), "closed"),
        CountPath::All => compare(
            head.clone(),
            vec![
                ("brute", brute_count(&spec, q, budget)),
                ("integral", integral_count(&spec, q, budget)),
                ("moment", moment_count(&spec, q, budget)),
                ("closed", closed_count(&spec, q)),
            ],
        ),
    }
}

fn sum_shape(shape: &FamilyShape, exact: bool) -> Result<SumShape> {
    if !exact {
        return SumShape::for_family(shape);
    }
    match *shape {
        FamilyShape::Single { s, k } => SumShape::g_exact(s, k),
        FamilyShape::PersymPlusRows { n: 1, m, k } => SumShape::g_one(m, k),
        _ => Err(Error::NotCovered {
            what: format!("exact-degree sum for {shape}"),
            nearest: "single or rows with n=1".into(),
        }),
    }
}

pub fn expsum(shape: &str, points: &[String], exact: bool, budget: Budget) -> Outcome {
    let family: FamilyShape = shape.parse()?;
    let sum = sum_shape(&family, exact)?;
    let points = points
        .iter()
        .map(|p| p.parse::<LaurentPoint>())
        .collect::<Result<Vec<_>>>()?;
    let rank = exp_sum_rank(&sum, &points)?;
    let direct = exp_sum_direct(&sum, &points, budget);
    let mut head = Map::new();
    head.insert("shape".into(), json!(family.to_string()));
    head.insert("exact".into(), json!(exact));
    head.insert("points".into(), json!(points.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
    head.insert("rank".into(), json!(rank.to_string()));
    let verdict = match &direct {
        Ok(d) => {
            head.insert("direct".into(), json!(d.to_string()));
            head.insert("agree".into(), json!(*d == rank));
            (*d != rank).then(|| "direct and rank evaluations disagree".to_string())
        }
        Err(e) => {
            head.insert("direct".into(), json!({ "error": e.to_string() }));
            None
        }
    };
    Ok((pretty(&Value::Object(head)), verdict))
}
