//! Moment integrals of exponential sums expressed through rank counts.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{exact_shift_down, n, p2, qi, sz, to_int, FormulaResult, Q};
use crate::census::{JointRankTable, RankDistribution};
use crate::error::{Error, Result};

/// `2^-measure_bits * sum_i counts[i] * 2^(q (row_dim_exp - i))`.
pub fn moment(dist: &RankDistribution, q: usize, row_dim_exp: usize, measure_bits: usize) -> Result<FormulaResult> {
    moment_of_counts(&dist.counts, q, row_dim_exp, measure_bits)
}

/// [`moment`] with the exponents a family's exponential sum implies:
/// the sum has `2^(k + rows)` terms and is constant on cosets of width
/// `param_bits`.
pub fn moment_of_shape(dist: &RankDistribution, q: usize) -> Result<FormulaResult> {
    let shape = &dist.shape;
    moment(dist, q, shape.cols() + shape.total_rows(), shape.param_bits())
}

pub fn moment_of_counts(counts: &[BigUint], q: usize, row_dim_exp: usize, measure_bits: usize) -> Result<FormulaResult> {
    if q == 0 {
        return Err(Error::Domain("moments need q >= 1".into()));
    }
    let mut acc = BigInt::zero();
    for (i, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i > row_dim_exp {
            return Err(Error::Domain(format!("rank {i} exceeds the sum exponent {row_dim_exp}")));
        }
        acc += BigInt::from(c.clone()) << (q * (row_dim_exp - i));
    }
    let value = exact_shift_down(&acc, measure_bits, "moment")?;
    Ok(FormulaResult::new(value, "rank-weighted moment"))
}

/// Closed form for the number of solutions of `Y1 Z1 + ... + Yq Zq = 0`
/// with `deg Y <= k-1`, `deg Z <= m`.
pub fn r_q_single_closed(q: usize, k: usize, m: usize) -> Result<FormulaResult> {
    if q == 0 || k == 0 || m + 1 > k {
        return Err(Error::Domain(format!("need q >= 1 and m <= k-1, got q={q} k={k} m={m}")));
    }
    let (q, k, m) = (sz(q), sz(k), sz(m));
    let (value, tag) = match q {
        1 => (p2(k) + p2(1 + m) - n(1), "q=1"),
        2 => (p2(2 * k) + n(3 * (m + 1)) * p2(k + m), "q=2"),
        _ => {
            let bracket = n(1)
                + n(3) * (n(1) - p2((2 - q) * m)) / (p2(q) - n(4))
                + (p2(k + m) - p2(2 * m)) * p2(-q * (1 + m));
            (p2((q - 1) * (k + m + 1) + 1) * bracket, "q>=3")
        }
    };
    Ok(FormulaResult::new(to_int(&value, "single moment")?, format!("single-block moment, {tag}")))
}

/// Even moment of the exponential sum over polynomials of exact degree,
/// from the diagonal of the joint corner-rank table of an `s x k`
/// persymmetric matrix.
pub fn g_even_moment(table: &JointRankTable, s: usize, k: usize, q: usize) -> Result<FormulaResult> {
    if s == 0 || q == 0 {
        return Err(Error::Domain("need s >= 1 and q >= 1".into()));
    }
    let (si, ki, qq) = (sz(s), sz(k), sz(q));
    let mut total = Q::zero();
    for j in 0..s {
        total += qi(&table.diagonal(j).into()) * p2(-2 * qq * sz(j));
    }
    let value = p2((si + ki - 2) * (2 * qq - 1)) * total;
    Ok(FormulaResult::new(to_int(&value, "even moment")?, "exact-degree even moment"))
}

/// Moment of the sum with one exact-degree constant companion, from the
/// counts `sigma[i]` of pairs where the block and its one-row extension
/// both have rank `i`.
pub fn sigma_moment(sigma: &[BigUint], m: usize, k: usize, q: usize) -> Result<FormulaResult> {
    if q == 0 {
        return Err(Error::Domain("moments need q >= 1".into()));
    }
    let (m, k, qq) = (sz(m), sz(k), sz(q));
    let mut total = Q::zero();
    for (i, c) in sigma.iter().enumerate().take((k.min(1 + m) + 1) as usize) {
        total += qi(&c.clone().into()) * p2(-sz(i) * qq);
    }
    let value = p2(qq * (k + m + 1) - 2 * k - m) * total;
    Ok(FormulaResult::new(to_int(&value, "sigma moment")?, "equal-rank pair moment"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{joint_rank_census, joint_rank_census_with, rank_census, Budget};
    use crate::families::{FamilyShape, Truncation};
    use crate::laurent::{integral_moment, SumShape};
    use crate::polycount::SystemSpec;
    use proptest::prelude::*;

    #[test]
    fn one_free_row_moments() {
        let dist = rank_census(&FamilyShape::rows(1, 2, 3)).unwrap();
        let expect = [23u64, 712, 32768, 2215936, 198115328];
        for (q, want) in (1..=5).zip(expect) {
            assert_eq!(moment_of_shape(&dist, q).unwrap().value, BigInt::from(want), "q={q}");
        }
    }

    #[test]
    fn inexact_moment_is_an_error() {
        let counts = [BigUint::from(1u32)];
        assert!(matches!(moment_of_counts(&counts, 1, 0, 1), Err(Error::Internal(_))));
        assert!(moment_of_counts(&counts, 0, 0, 0).is_err());
    }

    #[test]
    fn single_closed_form_matches_brute_force() {
        for q in 1..=3 {
            for k in 1..=5 {
                for m in 0..k {
                    if q * k > 12 {
                        continue;
                    }
                    let closed = r_q_single_closed(q, k, m).unwrap().value;
                    let brute = SystemSpec::Single { k, m }.count(q, Budget::default()).unwrap();
                    assert_eq!(closed, BigInt::from(brute), "q={q} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn exact_degree_even_moment_matches_integral() {
        for (s, k) in [(2, 3), (3, 3), (2, 4)] {
            let table = joint_rank_census(&FamilyShape::single(s, k)).unwrap();
            for q in 1..=3 {
                let formula = g_even_moment(&table, s, k, q).unwrap().value;
                let integral = integral_moment(&SumShape::g_exact(s, k).unwrap(), 2 * q).unwrap();
                assert_eq!(formula, integral, "s={s} k={k} q={q}");
            }
        }
    }

    #[test]
    fn equal_rank_pair_moment_matches_integral() {
        for (m, k) in [(0, 2), (1, 2), (1, 3), (2, 3)] {
            let shape = FamilyShape::double(1, m, k);
            let chain = [Truncation { heights: vec![0, 1 + m], cols: k }, Truncation::full(&shape)];
            let table = joint_rank_census_with(&shape, &chain, Budget::default()).unwrap();
            let sigma: Vec<BigUint> = (0..=k.min(1 + m)).map(|i| table.get(&[i, i])).collect();
            for q in 1..=3 {
                let formula = sigma_moment(&sigma, m, k, q).unwrap().value;
                let integral = integral_moment(&SumShape::g_one(m, k).unwrap(), q).unwrap();
                assert_eq!(formula, integral, "m={m} k={k} q={q}");
            }
        }
    }

    proptest! {
        #[test]
        fn census_moment_matches_integral(s in 1usize..3, m in 0usize..2, k in 1usize..4, q in 1usize..4) {
            let shape = FamilyShape::double(s, m, k);
            let dist = rank_census(&shape).unwrap();
            let via_census = moment_of_shape(&dist, q).unwrap().value;
            prop_assert_eq!(via_census, integral_moment(&SumShape::double(s, m, k).unwrap(), q).unwrap());
        }
    }
}
