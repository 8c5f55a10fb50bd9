//! Exhaustive rank statistics over a family's whole parameter space.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{nested_chain, FamilyShape, ParamVec, RowLayout, Truncation};
use crate::gf2::{rank_of_words, BitMatrix};

/// Default ceiling on the number of parameter vectors a sweep may visit.
pub const DEFAULT_BUDGET_LOG2: u32 = 34;

/// Upper bound on exhaustive work, as a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub log2: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { log2: DEFAULT_BUDGET_LOG2 }
    }
}

impl Budget {
    pub fn new(log2: u32) -> Self {
        Budget { log2 }
    }

    pub fn check(&self, required_log2: usize) -> Result<()> {
        if required_log2 > self.log2 as usize {
            return Err(Error::Budget {
                required_log2: required_log2.min(u32::MAX as usize) as u32,
                budget_log2: self.log2,
            });
        }
        Ok(())
    }
}

/// Number of matrices of each rank in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDistribution {
    pub shape: FamilyShape,
    /// `counts[i]` is the number of members of rank `i`, for `i` up to the
    /// maximal possible rank.
    pub counts: Vec<BigUint>,
}

impl RankDistribution {
    pub fn get(&self, rank: usize) -> BigUint {
        self.counts.get(rank).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        let counts: Map<String, Value> = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, c)| (i.to_string(), Value::String(c.to_string())))
            .collect();
        json!({
            "shape": self.shape.to_string(),
            "param_bits": self.shape.param_bits(),
            "counts": counts,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

/// Counts of rank tuples over a chain of truncations of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointRankTable {
    pub shape: FamilyShape,
    pub chain: Vec<Truncation>,
    pub counts: BTreeMap<Vec<usize>, BigUint>,
}

impl JointRankTable {
    pub fn get(&self, tuple: &[usize]) -> BigUint {
        self.counts.get(tuple).cloned().unwrap_or_default()
    }

    /// Count of parameter vectors whose chain ranks all equal `i`.
    pub fn diagonal(&self, i: usize) -> BigUint {
        self.get(&vec![i; self.chain.len()])
    }

    /// Sums out every coordinate except `coord`.
    pub fn marginal(&self, coord: usize) -> BTreeMap<usize, BigUint> {
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (t, c) in &self.counts {
            *out.entry(t[coord]).or_default() += c;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let counts: Map<String, Value> = self
            .counts
            .iter()
            .map(|(t, c)| {
                let key: Vec<String> = t.iter().map(|r| r.to_string()).collect();
                (key.join(","), Value::String(c.to_string()))
            })
            .collect();
        json!({
            "shape": self.shape.to_string(),
            "param_bits": self.shape.param_bits(),
            "chain": self.chain.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "counts": counts,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..self.chain.len()).map(|i| format!("r{i}")).collect();
        out.push_str(&header.join(","));
        out.push_str(",count\n");
        for (t, c) in &self.counts {
            let row: Vec<String> = t.iter().map(|r| r.to_string()).collect();
            out.push_str(&format!("{},{c}\n", row.join(",")));
        }
        out
    }
}

fn check_chain(shape: &FamilyShape, chain: &[Truncation]) -> Result<()> {
    let heights = shape.block_heights();
    for t in chain {
        if t.heights.len() != heights.len()
            || t.heights.iter().zip(&heights).any(|(a, b)| a > b)
            || t.cols > shape.cols()
        {
            return Err(Error::Dimension(format!("{t} does not fit inside {shape}")));
        }
    }
    Ok(())
}

/// Splits `0..2^bits` into contiguous shards for parallel sweeps.
fn shards(bits: usize) -> impl ParallelIterator<Item = (u128, u128)> {
    let shard_bits = bits.min(10);
    let per = 1u128 << (bits - shard_bits);
    (0..1u128 << shard_bits)
        .into_par_iter()
        .map(move |h| (h * per, (h + 1) * per))
}

/// Rank tuples of every parameter vector over `chain`, with their counts.
fn sweep_tuples(shape: &FamilyShape, chain: &[Truncation], budget: Budget) -> Result<HashMap<Vec<usize>, u64>> {
    shape.validate()?;
    check_chain(shape, chain)?;
    let bits = shape.param_bits();
    budget.check(bits)?;
    let radices: Vec<usize> = chain.iter().map(|t| t.rows().min(t.cols) + 1).collect();
    let cells = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r).filter(|&p| p <= 1 << 22));
    let layout = RowLayout::new(shape).filter(|_| shape.total_rows() <= 256);
    let (Some(layout), Some(cells)) = (layout, cells) else {
        return Ok(sweep_generic(shape, chain, bits)?);
    };
    let dense = shards(bits)
        .map(|(lo, hi)| {
            let mut local = vec![0u64; cells];
            let mut buf = vec![0u64; shape.total_rows().max(1)];
            for counter in lo..hi {
                let mut idx = 0;
                for (t, &radix) in chain.iter().zip(&radices) {
                    let n = layout.fill(counter, t, &mut buf);
                    idx = idx * radix + rank_of_words(&buf[..n]);
                }
                local[idx] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut out = HashMap::new();
    for (mut idx, &c) in dense.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut key = vec![0; radices.len()];
        for (slot, &radix) in key.iter_mut().zip(&radices).rev() {
            *slot = idx % radix;
            idx /= radix;
        }
        out.insert(key, c);
    }
    Ok(out)
}

// Wide matrices or huge tuple spaces: slow path through BitMatrix.
fn sweep_generic(shape: &FamilyShape, chain: &[Truncation], bits: usize) -> Result<HashMap<Vec<usize>, u64>> {
    let mut local: HashMap<Vec<usize>, u64> = HashMap::new();
    for counter in 0..1u128 << bits {
        let full = shape.matrix(&ParamVec::from_counter(shape, counter))?;
        let key = chain
            .iter()
            .map(|t| t.apply(shape, &full).map(|m| m.rank()))
            .collect::<Result<Vec<_>>>()?;
        *local.entry(key).or_default() += 1;
    }
    Ok(local)
}

/// Exact rank distribution of `shape` by visiting every parameter vector.
pub fn rank_census(shape: &FamilyShape) -> Result<RankDistribution> {
    rank_census_with(shape, Budget::default())
}

pub fn rank_census_with(shape: &FamilyShape, budget: Budget) -> Result<RankDistribution> {
    let chain = [Truncation::full(shape)];
    let tallies = sweep_tuples(shape, &chain, budget)?;
    let mut counts = vec![BigUint::zero(); shape.max_rank() + 1];
    for (key, c) in tallies {
        counts[key[0]] += c;
    }
    Ok(RankDistribution { shape: *shape, counts })
}

/// Joint ranks over [`nested_chain`] of `shape`.
pub fn joint_rank_census(shape: &FamilyShape) -> Result<JointRankTable> {
    joint_rank_census_with(shape, &nested_chain(shape)?, Budget::default())
}

/// Joint ranks over an arbitrary list of truncations of `shape`.
pub fn joint_rank_census_with(shape: &FamilyShape, chain: &[Truncation], budget: Budget) -> Result<JointRankTable> {
    let tallies = sweep_tuples(shape, chain, budget)?;
    Ok(JointRankTable {
        shape: *shape,
        chain: chain.to_vec(),
        counts: tallies.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect(),
    })
}

/// Number of parameter vectors whose nested-chain ranks all equal `i`.
pub fn diagonal_sigma(shape: &FamilyShape, i: usize) -> Result<BigUint> {
    Ok(joint_rank_census(shape)?.diagonal(i))
}

/// Fraction of a square family that is invertible.
pub fn invertible_fraction(shape: &FamilyShape) -> Result<BigRational> {
    if shape.total_rows() != shape.cols() {
        return Err(Error::Domain(format!(
            "{shape} is {}x{}, not square",
            shape.total_rows(),
            shape.cols()
        )));
    }
    let dist = rank_census(shape)?;
    let num = dist.get(shape.cols());
    let den = BigUint::one() << shape.param_bits();
    Ok(BigRational::new(num.into(), den.into()))
}

/// Rank of a single family member; convenience for callers holding a [`ParamVec`].
pub fn rank_of(shape: &FamilyShape, params: &ParamVec) -> Result<usize> {
    Ok(shape.matrix(params)?.rank())
}

/// Memoises censuses for recurrences that revisit the same sub-families.
#[derive(Debug, Default)]
pub struct CensusCache {
    budget: Budget,
    dists: Mutex<HashMap<FamilyShape, RankDistribution>>,
    joints: Mutex<HashMap<(FamilyShape, Vec<Truncation>), JointRankTable>>,
}

impl CensusCache {
    pub fn new(budget: Budget) -> Self {
        CensusCache {
            budget,
            ..Default::default()
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn rank(&self, shape: &FamilyShape) -> Result<RankDistribution> {
        if let Some(d) = self.dists.lock().expect("cache poisoned").get(shape) {
            return Ok(d.clone());
        }
        let d = rank_census_with(shape, self.budget)?;
        self.dists.lock().expect("cache poisoned").insert(*shape, d.clone());
        Ok(d)
    }

    pub fn joint(&self, shape: &FamilyShape, chain: &[Truncation]) -> Result<JointRankTable> {
        let key = (*shape, chain.to_vec());
        if let Some(t) = self.joints.lock().expect("cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let t = joint_rank_census_with(shape, chain, self.budget)?;
        self.joints.lock().expect("cache poisoned").insert(key, t.clone());
        Ok(t)
    }
}

/// Reference rank census through the generic [`BitMatrix`] path. Slow;
/// used to cross-check the packed sweep.
pub fn rank_census_reference(shape: &FamilyShape, budget: Budget) -> Result<RankDistribution> {
    shape.validate()?;
    budget.check(shape.param_bits())?;
    let mut counts = vec![BigUint::zero(); shape.max_rank() + 1];
    for counter in 0..1u128 << shape.param_bits() {
        let m: BitMatrix = shape.matrix(&ParamVec::from_counter(shape, counter))?;
        counts[m.rank()] += 1u32;
    }
    Ok(RankDistribution { shape: *shape, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(d: &RankDistribution) -> Vec<u64> {
        d.counts.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_distributions() {
        assert_eq!(counts(&rank_census(&FamilyShape::single(2, 2)).unwrap()), vec![1, 3, 4]);
        assert_eq!(counts(&rank_census(&FamilyShape::single(0, 3)).unwrap()), vec![1]);
        assert_eq!(counts(&rank_census(&FamilyShape::rows(1, 2, 3)).unwrap()), vec![1, 13, 66, 176]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = rank_census_with(&FamilyShape::single(10, 10), Budget::new(12)).unwrap_err();
        assert_eq!(err, Error::Budget { required_log2: 19, budget_log2: 12 });
    }

    #[test]
    fn packed_sweep_matches_reference() {
        for shape in [
            FamilyShape::single(3, 4),
            FamilyShape::double(2, 1, 3),
            FamilyShape::triple(1, 1, 0, 3),
            FamilyShape::rows(2, 1, 3),
        ] {
            assert_eq!(
                rank_census(&shape).unwrap(),
                rank_census_reference(&shape, Budget::default()).unwrap()
            );
        }
    }

    #[test]
    fn json_output() {
        let v = rank_census(&FamilyShape::single(2, 2)).unwrap().to_json();
        assert_eq!(v["shape"], "single:s=2,k=2");
        assert_eq!(v["param_bits"], 3);
        assert_eq!(v["counts"]["2"], "4");
    }

    #[test]
    fn invertible_fractions() {
        let half = invertible_fraction(&FamilyShape::single(1, 1)).unwrap();
        assert_eq!(half, BigRational::new(1.into(), 2.into()));
        assert!(invertible_fraction(&FamilyShape::single(1, 2)).is_err());
    }
}
