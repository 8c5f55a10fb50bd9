//! Identity suites run by `persym verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use persym::census::{joint_rank_census_with, rank_census_with, Budget, CensusCache};
use persym::families::nested_chain;
use persym::formulas::double::{closed_form_terms, delta_double_census, delta_double_with, gamma_double_recur_with};
use persym::formulas::persym::quadruple_from_chain;
use persym::formulas::reductions::reduction_identities_with;
use persym::formulas::triple::gamma_triple_recur_with;
use persym::formulas::{gamma_double, gamma_persym, gamma_triple, joint_persym_formula, ReductionKind};
use persym::laurent::{exp_sum_direct, exp_sum_rank, LaurentPoint, SumShape};
use persym::polycount::SystemSpec;
use persym::{Error, FamilyShape, Result};
use serde_json::{json, Value};

use crate::commands::{closed_count, pretty};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Single-block rank counts against census.
    Daykin,
    /// Joint corner-rank counts of a single block against census.
    Joint,
    /// Invertible fractions of square double and triple families.
    Fractions,
    /// Every reduction identity between rank counts.
    Reductions,
    /// Double closed forms against census.
    Double,
    /// Triple closed forms against census.
    Triple,
    /// Row-removal recurrences and their remainders against census.
    Recurrence,
    /// Literal exponential sums against their rank evaluation.
    Character,
    /// Values of the exact-degree sum are 0 or a signed power of two.
    SignLaw,
    /// Solution counts by brute force, integral, census moment and closed form.
    Moments,
}

#[derive(Debug, Clone, Default)]
pub struct Bounds {
    pub max_s: Option<usize>,
    pub max_m: Option<usize>,
    pub max_k: Option<usize>,
    pub max: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: Suite,
    pub rows: Vec<Row>,
    pub skipped: Vec<String>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report {
            suite,
            rows: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        self.rows.push(Row {
            name: name.into(),
            ok: lhs == rhs,
            lhs,
            rhs,
        });
    }

    /// Records a budget refusal as skipped; anything else is an error.
    fn skip_or_fail(&mut self, name: impl Into<String>, err: Error) -> Result<()> {
        match err {
            Error::Budget { .. } => {
                self.skipped.push(format!("{}: {err}", name.into()));
                Ok(())
            }
            other => Err(other),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count()
    }

    pub fn to_json(&self, all: bool) -> String {
        let row = |r: &Row| json!({ "name": r.name, "lhs": r.lhs, "rhs": r.rhs, "ok": r.ok });
        let shown: Vec<Value> = self.rows.iter().filter(|r| all || !r.ok).map(row).collect();
        let mut v = json!({
            "suite": self.suite.to_possible_value().expect("no skipped variants").get_name(),
            "instances": self.rows.len(),
            "passed": self.rows.len() - self.failed(),
            "failed": self.failed(),
            "skipped": self.skipped,
        });
        v[if all { "rows" } else { "failures" }] = Value::Array(shown);
        pretty(&v)
    }
}

pub fn run(suite: Suite, bounds: &Bounds, budget: Budget) -> Result<Report> {
    let mut report = Report::new(suite);
    let cache = CensusCache::new(budget);
    let r = &mut report;
    match suite {
        Suite::Daykin => daykin(r, bounds, budget)?,
        Suite::Joint => joint(r, bounds, budget)?,
        Suite::Fractions => fractions(r, bounds, budget)?,
        Suite::Reductions => reductions(r, bounds, &cache)?,
        Suite::Double => double(r, bounds, &cache)?,
        Suite::Triple => triple(r, bounds, &cache)?,
        Suite::Recurrence => recurrence(r, bounds, &cache)?,
        Suite::Character => character(r, budget)?,
        Suite::SignLaw => sign_law(r, bounds, budget)?,
        Suite::Moments => moments(r, budget)?,
    }
    Ok(report)
}

fn daykin(r: &mut Report, b: &Bounds, budget: Budget) -> Result<()> {
    for k in 1..=b.max_k.unwrap_or(6) {
        for s in 1..=k.min(b.max_s.unwrap_or(6)) {
            let shape = FamilyShape::single(s, k);
            let dist = match rank_census_with(&shape, budget) {
                Ok(d) => d,
                Err(e) => {
                    r.skip_or_fail(shape.to_string(), e)?;
                    continue;
                }
            };
            for i in 0..=s {
                r.check(format!("{shape} rank {i}"), gamma_persym(s, k, i)?.value, dist.get(i));
            }
        }
    }
    Ok(())
}

fn joint(r: &mut Report, b: &Bounds, budget: Budget) -> Result<()> {
    for k in 2..=b.max_k.unwrap_or(6) {
        for s in 2..=k.min(b.max_s.unwrap_or(6)) {
            let shape = FamilyShape::single(s, k);
            let table = match joint_rank_census_with(&shape, &nested_chain(&shape)?, budget) {
                Ok(t) => t,
                Err(e) => {
                    r.skip_or_fail(shape.to_string(), e)?;
                    continue;
                }
            };
            for code in 0..(s + 1).pow(4) {
                let chain: Vec<usize> = (0..4).map(|p| code / (s + 1).pow(p) % (s + 1)).collect();
                let quad = quadruple_from_chain(&chain)?;
                let formula = joint_persym_formula(s, k, quad)?.value;
                let census = BigInt::from(table.get(&chain));
                if formula.sign() == num_bigint::Sign::NoSign && census.sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                r.check(format!("{shape} corners {quad:?}"), formula, census);
            }
        }
    }
    Ok(())
}

fn fraction_row(r: &mut Report, name: String, invertible: BigInt, bits: usize, num: u32, den_log2: usize) {
    // invertible / 2^bits == num / 2^den_log2
    let lhs = invertible.clone() << den_log2;
    let rhs = BigInt::from(num) << bits;
    r.rows.push(Row {
        name,
        lhs: format!("{invertible}/2^{bits}"),
        rhs: format!("{num}/2^{den_log2}"),
        ok: lhs == rhs,
    });
}

fn fractions(r: &mut Report, b: &Bounds, budget: Budget) -> Result<()> {
    let census = |r: &mut Report, shape: FamilyShape, num: u32, den: usize| -> Result<()> {
        match rank_census_with(&shape, budget) {
            Ok(d) => {
                fraction_row(r, format!("census {shape}"), d.get(shape.cols()).into(), shape.param_bits(), num, den);
                Ok(())
            }
            Err(e) => r.skip_or_fail(format!("census {shape}"), e),
        }
    };
    for (s, m) in [(1, 0), (1, 1), (2, 0)] {
        census(r, FamilyShape::double(s, m, 2 * s + m), 3, 3)?;
    }
    for (s, m) in [(1, 0), (1, 1)] {
        census(r, FamilyShape::triple(s, m, 0, 3 * s + 2 * m), 21, 6)?;
    }
    for s in 1..=b.max_s.unwrap_or(4) {
        for m in 0..=b.max_m.unwrap_or(3) {
            let k = 2 * s + m;
            let shape = FamilyShape::double(s, m, k);
            fraction_row(r, format!("formula {shape}"), gamma_double(s, m, k, k)?.value, shape.param_bits(), 3, 3);
            let k = 3 * s + 2 * m;
            let shape = FamilyShape::triple(s, m, 0, k);
            fraction_row(r, format!("formula {shape}"), gamma_triple(s, m, k, k)?.value, shape.param_bits(), 21, 6);
        }
    }
    Ok(())
}

fn reductions(r: &mut Report, b: &Bounds, cache: &CensusCache) -> Result<()> {
    let terms = closed_form_terms(cache);
    for kind in ReductionKind::ALL {
        for args in kind.instances(b.max.unwrap_or(8)) {
            let name = format!("{kind} {args:?}");
            match reduction_identities_with(kind, &args, &terms) {
                Ok(c) => r.check(name, c.lhs, c.rhs),
                Err(e) => r.skip_or_fail(name, e)?,
            }
        }
    }
    Ok(())
}

fn census_vs(
    r: &mut Report,
    shape: FamilyShape,
    cache: &CensusCache,
    formula: impl Fn(usize) -> Result<BigInt>,
) -> Result<()> {
    let dist = match cache.rank(&shape) {
        Ok(d) => d,
        Err(e) => return r.skip_or_fail(shape.to_string(), e),
    };
    for i in 0..=shape.max_rank() {
        r.check(format!("{shape} rank {i}"), formula(i)?, dist.get(i));
    }
    Ok(())
}

fn double(r: &mut Report, b: &Bounds, cache: &CensusCache) -> Result<()> {
    for s in 1..=b.max_s.unwrap_or(4) {
        for m in 0..=b.max_m.unwrap_or(3) {
            for k in 1..=b.max_k.unwrap_or(7) {
                census_vs(r, FamilyShape::double(s, m, k), cache, |i| Ok(gamma_double(s, m, k, i)?.value))?;
            }
        }
    }
    Ok(())
}

fn triple(r: &mut Report, b: &Bounds, cache: &CensusCache) -> Result<()> {
    for s in 1..=b.max_s.unwrap_or(2) {
        for m in 0..=b.max_m.unwrap_or(2) {
            for k in 1..=b.max_k.unwrap_or(6) {
                census_vs(r, FamilyShape::triple(s, m, 0, k), cache, |i| Ok(gamma_triple(s, m, k, i)?.value))?;
            }
        }
    }
    Ok(())
}

fn recurrence(r: &mut Report, b: &Bounds, cache: &CensusCache) -> Result<()> {
    let terms = closed_form_terms(cache);
    for s in 2..=b.max_s.unwrap_or(3) {
        for m in 0..=b.max_m.unwrap_or(2) {
            for k in 1..=b.max_k.unwrap_or(6) {
                let shape = FamilyShape::double(s, m, k);
                census_vs(r, shape, cache, |i| Ok(gamma_double_recur_with(s, m, k, i, &terms)?.value))?;
                for i in 0..=shape.max_rank() {
                    let name = format!("{shape} remainder {i}");
                    match delta_double_census(s, m, k, i, cache) {
                        Ok(census) => r.check(name, delta_double_with(s, m, k, i, &terms)?.value, census),
                        Err(e) => r.skip_or_fail(name, e)?,
                    }
                }
            }
        }
    }
    for m in 0..=1 {
        for l in 0..=1 {
            for k in 1..=4 {
                let shape = FamilyShape::triple(2, m, l, k);
                census_vs(r, shape, cache, |i| Ok(gamma_triple_recur_with(2, m, l, k, i, cache)?.value))?;
            }
        }
    }
    Ok(())
}

/// Every tuple of points a shape's sum depends on.
fn all_points(shape: &SumShape) -> impl Iterator<Item = Vec<LaurentPoint>> + '_ {
    let bits = shape.coset_bits();
    (0..1u128 << bits).map(move |counter| {
        let mut off = 0;
        shape
            .depths()
            .iter()
            .map(|&d| {
                let p = LaurentPoint::from_word(counter >> off, d);
                off += d;
                p
            })
            .collect()
    })
}

fn exhaustive(r: &mut Report, name: &str, shape: &SumShape, budget: Budget) -> Result<()> {
    if let Err(e) = budget.check(shape.coset_bits()) {
        return r.skip_or_fail(name, e);
    }
    let mut mismatches = 0u64;
    let mut first = None;
    let mut total = 0u64;
    for pts in all_points(shape) {
        let direct = exp_sum_direct(shape, &pts, budget)?;
        let rank = exp_sum_rank(shape, &pts)?;
        total += 1;
        if direct != rank {
            mismatches += 1;
            first.get_or_insert((pts, direct, rank));
        }
    }
    match first {
        None => r.check(format!("{name}, {total} points"), "direct = rank", "direct = rank"),
        Some((pts, d, k)) => {
            let at: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            r.check(format!("{name}, {mismatches} of {total} points differ, first at {at:?}"), d, k)
        }
    }
    Ok(())
}

fn character(r: &mut Report, budget: Budget) -> Result<()> {
    let shapes = [
        ("bounded single s=2 k=3", SumShape::h(2, 3)?),
        ("exact degree s=3 k=3", SumShape::g_exact(3, 3)?),
        ("one exact row m=1 k=2", SumShape::g_one(1, 2)?),
        ("one bounded row m=1 k=2", SumShape::f(1, 2)?),
        ("double k=2 s=1 m=1", SumShape::double(1, 1, 2)?),
        ("triple k=2 s=1", SumShape::triple(1, 0, 0, 2)?),
    ];
    for (name, shape) in &shapes {
        exhaustive(r, name, shape, budget)?;
    }
    Ok(())
}

fn sign_law(r: &mut Report, b: &Bounds, budget: Budget) -> Result<()> {
    for k in 1..=b.max_k.unwrap_or(3) {
        for s in 1..=k.min(b.max_s.unwrap_or(3)) {
            let shape = SumShape::g_exact(s, k)?;
            let name = format!("exact degree s={s} k={k}");
            exhaustive(r, &name, &shape, budget)?;
            let bad = all_points(&shape)
                .map(|pts| exp_sum_rank(&shape, &pts))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|v| v.magnitude().count_ones() > 1)
                .count();
            r.check(format!("{name} values in {{0, +-2^e}}"), bad, 0);
        }
    }
    Ok(())
}

fn moments(r: &mut Report, budget: Budget) -> Result<()> {
    let cases = [
        (SystemSpec::Single { k: 3, m: 1 }, 1..=3),
        (SystemSpec::Rows { n: 1, k: 3, m: 2 }, 1..=3),
        (SystemSpec::Double { k: 3, s: 1, m: 1 }, 1..=3),
        (SystemSpec::Double { k: 4, s: 3, m: 2 }, 3..=3),
        (SystemSpec::Triple { k: 3, s: 1, m: 1, l: 0 }, 1..=2),
    ];
    for (spec, qs) in cases {
        for q in qs {
            let name = format!("{spec} q={q}");
            let brute = match spec.count(q, budget) {
                Ok(v) => BigInt::from(v),
                Err(e) => {
                    r.skip_or_fail(name, e)?;
                    continue;
                }
            };
            let sum = SumShape::for_family(&spec.family())?;
            let integral = persym::laurent::integral_moment_with(&sum, q, budget)?;
            let dist = rank_census_with(&spec.family(), budget)?;
            let census = persym::formulas::moment_of_shape(&dist, q)?.value;
            let closed = closed_count(&spec, q)?.value;
            r.check(format!("{name} brute = integral"), &brute, &integral);
            r.check(format!("{name} brute = census moment"), &brute, &census);
            r.check(format!("{name} brute = closed"), &brute, &closed);
        }
    }
    Ok(())
}
