//! Truncated Laurent series in `1/T` over GF(2), the additive character,
//! and exponential sums over polynomials with degree conditions.
//!
//! A point `t = a1 T^-1 + a2 T^-2 + ...` is stored by its first `d`
//! coefficients. `E(u) = (-1)^c` where `c` is the coefficient of `T^-1` in
//! `u`. For `deg Y < k`, `deg Z < h` the residue of `t Y Z` only involves
//! `a1 .. a_{k+h-1}`, so sums are constant on cosets of that depth.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::census::Budget;
use crate::error::{Error, Result};
use crate::families::{persym_matrix, FamilyShape};
use crate::gf2::{rank_of_words, BitMatrix};

/// A point of the unit interval, truncated to its leading coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoint {
    /// `coeffs[i]` is the coefficient of `T^-(i+1)`.
    pub coeffs: Vec<bool>,
}

impl LaurentPoint {
    pub fn new(coeffs: Vec<bool>) -> Self {
        LaurentPoint { coeffs }
    }

    pub fn zero(depth: usize) -> Self {
        LaurentPoint { coeffs: vec![false; depth] }
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// The point whose coefficient bits are the low `depth` bits of `word`.
    pub fn from_word(word: u128, depth: usize) -> Self {
        LaurentPoint {
            coeffs: (0..depth).map(|i| i < 128 && (word >> i) & 1 == 1).collect(),
        }
    }

    fn word(&self, depth: usize) -> u128 {
        self.coeffs[..depth]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u128, |acc, (i, _)| acc | 1 << i)
    }
}

impl fmt::Display for LaurentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.coeffs {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoint {
    type Err = Error;

    /// Parses `a1 a2 ... ad` written as a string of `0`/`1`. Underscores are
    /// ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for ch in s.trim().chars() {
            match ch {
                '0' => coeffs.push(false),
                '1' => coeffs.push(true),
                '_' => {}
                other => return Err(Error::Parse(format!("unexpected {other:?} in point {s:?}"))),
            }
        }
        if coeffs.len() > crate::families::MAX_DIM * 2 {
            return Err(Error::Parse(format!("point of depth {} is too deep", coeffs.len())));
        }
        Ok(LaurentPoint { coeffs })
    }
}

/// `E` restricted to the residue bit: `0 -> +1`, `1 -> -1`.
pub fn character(residue_bit: bool) -> i64 {
    if residue_bit {
        -1
    } else {
        1
    }
}

/// Coefficient of `T^-1` in `t Y Z`, where `y[j]`, `z[j]` are the
/// coefficients of `T^j`.
pub fn residue_bilinear(point: &LaurentPoint, y: &[bool], z: &[bool]) -> Result<bool> {
    if y.is_empty() || z.is_empty() {
        return Ok(false);
    }
    let need = y.len() + z.len() - 1;
    if point.depth() < need {
        return Err(Error::Dimension(format!(
            "residue with deg Y < {} and deg Z < {} needs depth {need}, point has {}",
            y.len(),
            z.len(),
            point.depth()
        )));
    }
    let mut bit = false;
    for (a, &ya) in y.iter().enumerate() {
        if !ya {
            continue;
        }
        for (b, &zb) in z.iter().enumerate() {
            if zb && point.coeffs[a + b] {
                bit = !bit;
            }
        }
    }
    Ok(bit)
}

/// Degree condition on one summation variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    /// Number of coefficients: `deg <= len - 1`.
    pub len: usize,
    /// Whether the top coefficient is forced to 1 (`deg = len - 1`).
    pub exact: bool,
}

impl Factor {
    pub fn bounded(len: usize) -> Self {
        Factor { len, exact: false }
    }

    pub fn exact(len: usize) -> Self {
        Factor { len, exact: true }
    }
}

/// `sum_Y prod_f sum_{Z_f} E(t_f Y Z_f)` with `deg Y < y_len` and one point
/// `t_f` per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumShape {
    pub y_len: usize,
    pub y_exact: bool,
    pub factors: Vec<Factor>,
}

/// How [`exp_sum_rank`] evaluates a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Every variable bounded: `2^(vars - rank)` of the stacked blocks.
    Bounded,
    /// `Y`, `Z` of exact degree: signed value from four nested ranks.
    ExactPair,
    /// Bounded `Z` with one exact constant companion.
    ExactConstant,
}

impl SumShape {
    pub fn new(y_len: usize, y_exact: bool, factors: Vec<Factor>) -> Result<Self> {
        let shape = SumShape { y_len, y_exact, factors };
        shape.validate()?;
        Ok(shape)
    }

    /// `sum_{deg Y <= k-1} sum_{deg Z <= s-1} E(tYZ)`.
    pub fn h(s: usize, k: usize) -> Result<Self> {
        SumShape::new(k, false, vec![Factor::bounded(s)])
    }

    /// `sum_{deg Y = k-1} sum_{deg Z = s-1} E(tYZ)`.
    pub fn g_exact(s: usize, k: usize) -> Result<Self> {
        SumShape::new(k, true, vec![Factor::exact(s)])
    }

    /// `sum_{deg Y <= k-1} sum_{deg Z <= m} E(tYZ) sum_{deg U = 0} E(eta Y U)`.
    pub fn g_one(m: usize, k: usize) -> Result<Self> {
        SumShape::new(k, false, vec![Factor::bounded(m + 1), Factor::exact(1)])
    }

    /// As [`SumShape::g_one`] with `deg U <= 0`.
    pub fn f(m: usize, k: usize) -> Result<Self> {
        SumShape::f_rows(1, m, k)
    }

    /// `n` constant companions `U_1 .. U_n` with `deg U_j <= 0`.
    pub fn f_rows(n: usize, m: usize, k: usize) -> Result<Self> {
        let mut factors = vec![Factor::bounded(m + 1)];
        factors.extend(std::iter::repeat_n(Factor::bounded(1), n));
        SumShape::new(k, false, factors)
    }

    /// Companions of degree below `s` and `s+m`.
    pub fn double(s: usize, m: usize, k: usize) -> Result<Self> {
        SumShape::new(k, false, vec![Factor::bounded(s), Factor::bounded(s + m)])
    }

    /// Companions of degree below `s`, `s+m` and `s+m+l`.
    pub fn triple(s: usize, m: usize, l: usize, k: usize) -> Result<Self> {
        SumShape::new(
            k,
            false,
            vec![Factor::bounded(s), Factor::bounded(s + m), Factor::bounded(s + m + l)],
        )
    }

    /// The all-bounded sum whose rank matrix is `shape`.
    pub fn for_family(shape: &FamilyShape) -> Result<Self> {
        let k = shape.cols();
        let factors = shape.block_heights().into_iter().map(Factor::bounded).collect();
        SumShape::new(k, false, factors)
    }

    /// The family with the same rank matrix, for all-bounded shapes.
    pub fn family(&self) -> Option<FamilyShape> {
        if self.rule().ok()? != Rule::Bounded {
            return None;
        }
        let k = self.y_len;
        let lens: Vec<usize> = self.factors.iter().map(|f| f.len).collect();
        match lens.as_slice() {
            [s] => Some(FamilyShape::single(*s, k)),
            [a, b] => Some(FamilyShape::double_from_heights([*a, *b], k)),
            [a, b, c] => Some(FamilyShape::triple_from_heights([*a, *b, *c], k)),
            [first, rest @ ..] if *first >= 1 && rest.iter().all(|&h| h == 1) => {
                Some(FamilyShape::rows(rest.len(), first - 1, k))
            }
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.y_len == 0 {
            return Err(Error::Domain("the Y variable needs at least one coefficient".into()));
        }
        if self.factors.is_empty() {
            return Err(Error::Domain("a sum needs at least one companion factor".into()));
        }
        if let Some(f) = self.factors.iter().find(|f| f.exact && f.len == 0) {
            return Err(Error::Domain(format!("exact-degree factor needs len >= 1, got {f:?}")));
        }
        let limit = crate::families::MAX_DIM;
        if self.y_len > limit || self.factors.iter().any(|f| f.len > limit) || self.factors.len() > limit {
            return Err(Error::Domain(format!("sum dimensions exceed {limit}")));
        }
        Ok(())
    }

    /// Number of point coefficients each factor's character depends on.
    pub fn depths(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|f| if f.len == 0 { 0 } else { self.y_len + f.len - 1 })
            .collect()
    }

    /// Total coset bits: the integral is an average over `2^coset_bits`
    /// representatives.
    pub fn coset_bits(&self) -> usize {
        self.depths().iter().sum()
    }

    fn rule(&self) -> Result<Rule> {
        let all_bounded = !self.y_exact && self.factors.iter().all(|f| !f.exact);
        if all_bounded {
            return Ok(Rule::Bounded);
        }
        match (self.y_exact, self.factors.as_slice()) {
            (true, [z]) if z.exact => Ok(Rule::ExactPair),
            (false, [z, u]) if !z.exact && u.exact && u.len == 1 => Ok(Rule::ExactConstant),
            _ => Err(Error::not_covered(
                format!("rank rule for {self:?}"),
                "all-bounded sums, the exact-degree pair, or one exact constant companion",
            )),
        }
    }

    fn check_points(&self, points: &[LaurentPoint]) -> Result<()> {
        if points.len() != self.factors.len() {
            return Err(Error::Dimension(format!(
                "{} factors need {} points, got {}",
                self.factors.len(),
                self.factors.len(),
                points.len()
            )));
        }
        for (p, d) in points.iter().zip(self.depths()) {
            if p.depth() < d {
                return Err(Error::Dimension(format!("factor needs point depth {d}, got {}", p.depth())));
            }
        }
        Ok(())
    }
}

/// The exponential sum evaluated literally, by enumerating every polynomial
/// meeting the degree conditions.
pub fn exp_sum_direct(shape: &SumShape, points: &[LaurentPoint], budget: Budget) -> Result<BigInt> {
    shape.check_points(points)?;
    let widest = shape.factors.iter().map(|f| f.len).max().unwrap_or(0);
    let log_factors = usize::BITS as usize - shape.factors.len().leading_zeros() as usize;
    budget.check(shape.y_len + widest + log_factors)?;
    if shape.y_len + widest > 127 {
        return Err(Error::Budget {
            required_log2: (shape.y_len + widest) as u32,
            budget_log2: budget.log2,
        });
    }
    let words: Vec<u128> = points.iter().zip(shape.depths()).map(|(p, d)| p.word(d)).collect();
    let ys = poly_range(shape.y_len, shape.y_exact);
    let total: i128 = ys
        .into_par_iter()
        .map(|y| {
            let mut prod = 1i128;
            for (f, &a) in shape.factors.iter().zip(&words) {
                let mut inner = 0i128;
                for z in poly_range(f.len, f.exact) {
                    let bit = (a & clmul(y, z)).count_ones() & 1 == 1;
                    inner += character(bit) as i128;
                }
                prod *= inner;
                if prod == 0 {
                    break;
                }
            }
            prod
        })
        .sum();
    Ok(BigInt::from(total))
}

/// Polynomials with `len` coefficients, optionally with the top one set.
fn poly_range(len: usize, exact: bool) -> std::ops::Range<u128> {
    if len == 0 {
        return 0..1;
    }
    if exact {
        (1u128 << (len - 1))..(1u128 << len)
    } else {
        0..(1u128 << len)
    }
}

/// Carry-less product of two polynomials over GF(2).
fn clmul(a: u128, b: u128) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// The exponential sum through the rank of its persymmetric matrices.
pub fn exp_sum_rank(shape: &SumShape, points: &[LaurentPoint]) -> Result<BigInt> {
    shape.check_points(points)?;
    let k = shape.y_len;
    let block = |f: &Factor, p: &LaurentPoint, rows: usize, cols: usize| -> Result<BitMatrix> {
        let need = if rows == 0 { 0 } else { rows + cols - 1 };
        persym_matrix(rows, cols, &p.coeffs[..need]).map_err(|e| Error::Internal(format!("{f:?}: {e}")))
    };
    match shape.rule()? {
        Rule::Bounded => {
            let blocks: Vec<BitMatrix> = shape
                .factors
                .iter()
                .zip(points)
                .map(|(f, p)| block(f, p, f.len, k))
                .collect::<Result<_>>()?;
            let rank = BitMatrix::vstack(&blocks)?.rank();
            let vars: usize = k + shape.factors.iter().map(|f| f.len).sum::<usize>();
            Ok(BigInt::one() << (vars - rank))
        }
        Rule::ExactPair => {
            let s = shape.factors[0].len;
            let d = block(&shape.factors[0], &points[0], s, k)?;
            let corner = |r: usize, c: usize| -> Result<usize> {
                if r == 0 || c == 0 {
                    return Ok(0);
                }
                Ok(d.leading_rows(r)?.leading_cols(c)?.rank())
            };
            let (r1, r2, r3, r4) = (corner(s - 1, k - 1)?, corner(s, k - 1)?, corner(s - 1, k)?, corner(s, k)?);
            Ok(exact_pair_value(s, k, [r1, r2, r3, r4]))
        }
        Rule::ExactConstant => {
            let z = &shape.factors[0];
            let d = block(z, &points[0], z.len, k)?;
            let eta = block(&shape.factors[1], &points[1], 1, k)?;
            let r1 = d.rank();
            let r2 = BitMatrix::vstack(&[d, eta])?.rank();
            Ok(exact_constant_value(z.len, k, r1, r2))
        }
    }
}

/// Signed value of the exact-degree pair sum from the ranks of the
/// `(s-1)x(k-1)`, `s x(k-1)`, `(s-1)x k` and `s x k` leading submatrices.
fn exact_pair_value(s: usize, k: usize, r: [usize; 4]) -> BigInt {
    let [r1, r2, r3, r4] = r;
    if r1 != r2 || r2 != r3 {
        return BigInt::zero();
    }
    let j = r1;
    let mag = BigInt::one() << (s + k - j - 2);
    if r4 == j {
        mag
    } else if r4 == j + 1 {
        -mag
    } else {
        BigInt::zero()
    }
}

fn exact_constant_value(len: usize, k: usize, r1: usize, r2: usize) -> BigInt {
    if r1 == r2 {
        BigInt::one() << (k + len - r1)
    } else {
        BigInt::zero()
    }
}

/// `integral of S^q` over the unit interval in every point variable,
/// computed as the average of `S^q` over all coset representatives.
pub fn integral_moment(shape: &SumShape, q: usize) -> Result<BigInt> {
    integral_moment_with(shape, q, Budget::default())
}

pub fn integral_moment_with(shape: &SumShape, q: usize, budget: Budget) -> Result<BigInt> {
    if q == 0 {
        return Err(Error::Domain("moments need q >= 1".into()));
    }
    let rule = shape.rule()?;
    let depths = shape.depths();
    let bits = shape.coset_bits();
    budget.check(bits)?;
    let k = shape.y_len;
    if bits > 127 || k > 64 {
        return Err(Error::Budget {
            required_log2: bits as u32,
            budget_log2: budget.log2,
        });
    }
    let offsets: Vec<usize> = depths
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let shard_bits = bits.min(12);
    let high = bits - shard_bits;
    // tally of (exponent, sign) -> number of coset representatives
    let tallies: Vec<BTreeMap<(usize, bool), u64>> = (0..(1u128 << shard_bits))
        .into_par_iter()
        .map(|shard| {
            let mut tally: BTreeMap<(usize, bool), u64> = BTreeMap::new();
            let mut rows = Vec::with_capacity(shape.factors.iter().map(|f| f.len).sum::<usize>() + 1);
            for low in 0..(1u128 << high) {
                let counter = (shard << high) | low;
                if let Some(v) = coset_value(shape, rule, k, &depths, &offsets, counter, &mut rows) {
                    *tally.entry(v).or_insert(0) += 1;
                }
            }
            tally
        })
        .collect();
    let mut merged: BTreeMap<(usize, bool), BigInt> = BTreeMap::new();
    for t in tallies {
        for (key, c) in t {
            *merged.entry(key).or_insert_with(BigInt::zero) += c;
        }
    }
    let mut total = BigInt::zero();
    for ((exp, negative), count) in merged {
        let term = count << (exp * q);
        if negative && q % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    let den = BigInt::one() << bits;
    if !(&total % &den).is_zero() {
        return Err(Error::Internal(format!("moment sum {total} is not divisible by 2^{bits}")));
    }
    Ok(total / den)
}

/// The sum at one coset representative as `(exponent, negative)`, or `None`
/// when it vanishes.
fn coset_value(
    shape: &SumShape,
    rule: Rule,
    k: usize,
    depths: &[usize],
    offsets: &[usize],
    counter: u128,
    rows: &mut Vec<u64>,
) -> Option<(usize, bool)> {
    let mask = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    let word = |f: usize| -> u128 {
        let d = depths[f];
        if d == 0 {
            0
        } else {
            (counter >> offsets[f]) & ((1u128 << d) - 1)
        }
    };
    let block_rows = |w: u128, len: usize, cols_mask: u64, out: &mut Vec<u64>| {
        for r in 0..len {
            out.push((w >> r) as u64 & cols_mask);
        }
    };
    rows.clear();
    match rule {
        Rule::Bounded => {
            let mut vars = k;
            for (f, factor) in shape.factors.iter().enumerate() {
                block_rows(word(f), factor.len, mask, rows);
                vars += factor.len;
            }
            Some((vars - rank_of_words(rows), false))
        }
        Rule::ExactPair => {
            let s = shape.factors[0].len;
            let w = word(0);
            let narrow = mask >> 1;
            block_rows(w, s, mask, rows);
            let r4 = rank_of_words(rows);
            let r3 = rank_of_words(&rows[..s - 1]);
            let cut: Vec<u64> = rows.iter().map(|r| r & narrow).collect();
            let r2 = rank_of_words(&cut);
            let r1 = rank_of_words(&cut[..s - 1]);
            if r1 != r2 || r2 != r3 {
                return None;
            }
            let e = s + k - r1 - 2;
            if r4 == r1 {
                Some((e, false))
            } else if r4 == r1 + 1 {
                Some((e, true))
            } else {
                None
            }
        }
        Rule::ExactConstant => {
            let len = shape.factors[0].len;
            block_rows(word(0), len, mask, rows);
            let r1 = rank_of_words(rows);
            rows.push(word(1) as u64 & mask);
            let r2 = rank_of_words(rows);
            (r1 == r2).then_some((k + len - r1, false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_points(shape: &SumShape) -> Vec<Vec<LaurentPoint>> {
        let depths = shape.depths();
        let bits: usize = depths.iter().sum();
        (0..1u128 << bits)
            .map(|counter| {
                let mut off = 0;
                depths
                    .iter()
                    .map(|&d| {
                        let p = LaurentPoint::from_word(counter >> off, d);
                        off += d;
                        p
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn point_text_round_trip() {
        let p: LaurentPoint = "1011_0".parse().unwrap();
        assert_eq!(p.coeffs, vec![true, false, true, true, false]);
        assert_eq!(p.to_string(), "10110");
        assert!("10a".parse::<LaurentPoint>().is_err());
        assert_eq!("".parse::<LaurentPoint>().unwrap().depth(), 0);
    }

    #[test]
    fn residue_of_single_terms() {
        // t = T^-2, Y = T, Z = 1: t Y Z = T^-1
        let t = LaurentPoint::new(vec![false, true]);
        assert!(residue_bilinear(&t, &[false, true], &[true]).unwrap());
        assert!(!residue_bilinear(&t, &[true], &[true]).unwrap_or(true));
        assert!(residue_bilinear(&LaurentPoint::zero(1), &[true, true], &[true]).is_err());
        assert_eq!(character(false), 1);
        assert_eq!(character(true), -1);
    }

    #[test]
    fn zero_point_gives_space_size() {
        let h = SumShape::h(2, 3).unwrap();
        let zeros: Vec<_> = h.depths().iter().map(|&d| LaurentPoint::zero(d)).collect();
        assert_eq!(exp_sum_direct(&h, &zeros, Budget::default()).unwrap(), BigInt::from(1 << 5));
        assert_eq!(exp_sum_rank(&h, &zeros).unwrap(), BigInt::from(1 << 5));
        let d = SumShape::double(1, 1, 2).unwrap();
        let zeros: Vec<_> = d.depths().iter().map(|&x| LaurentPoint::zero(x)).collect();
        assert_eq!(exp_sum_rank(&d, &zeros).unwrap(), BigInt::from(1 << 5));
    }

    #[test]
    fn direct_matches_rank_exhaustively() {
        let shapes = [
            SumShape::h(2, 3).unwrap(),
            SumShape::g_exact(2, 3).unwrap(),
            SumShape::g_one(1, 2).unwrap(),
            SumShape::f(1, 2).unwrap(),
            SumShape::f_rows(2, 1, 2).unwrap(),
            SumShape::double(1, 1, 2).unwrap(),
        ];
        for shape in &shapes {
            for pts in all_points(shape) {
                let direct = exp_sum_direct(shape, &pts, Budget::default()).unwrap();
                let rank = exp_sum_rank(shape, &pts).unwrap();
                assert_eq!(direct, rank, "{shape:?} at {pts:?}");
            }
        }
    }

    #[test]
    fn exact_degree_sum_takes_signed_values() {
        let shape = SumShape::g_exact(3, 3).unwrap();
        let mut seen_negative = false;
        for pts in all_points(&shape) {
            let v = exp_sum_rank(&shape, &pts).unwrap();
            if v < BigInt::zero() {
                seen_negative = true;
            }
            let mag = v.magnitude().clone();
            assert!(mag.is_zero() || mag.count_ones() == 1, "{v} is not 0 or a signed power of two");
        }
        assert!(seen_negative);
    }

    #[test]
    fn rows_moment_matches_closed_polynomial() {
        let shape = SumShape::f_rows(1, 2, 3).unwrap();
        for q in 1..=4usize {
            let q2 = |e: usize| BigInt::one() << (e * q);
            let expect = (q2(3) + 13 * q2(2) + 66 * q2(1) + 176) * q2(4) >> 8;
            assert_eq!(integral_moment(&shape, q).unwrap(), expect, "q={q}");
        }
    }

    #[test]
    fn uncovered_shapes_are_refused() {
        let mixed = SumShape::new(2, false, vec![Factor::exact(2), Factor::bounded(1), Factor::exact(1)]).unwrap();
        let pts: Vec<_> = mixed.depths().iter().map(|&d| LaurentPoint::zero(d)).collect();
        assert!(matches!(exp_sum_rank(&mixed, &pts), Err(Error::NotCovered { .. })));
    }

    proptest! {
        #[test]
        fn direct_matches_rank_on_random_points(seed in any::<u128>(), s in 1usize..3, m in 0usize..2, k in 1usize..4) {
            let shape = SumShape::double(s, m, k).unwrap();
            let mut off = 0;
            let pts: Vec<_> = shape.depths().iter().map(|&d| {
                let p = LaurentPoint::from_word(seed >> off, d);
                off += d;
                p
            }).collect();
            prop_assert_eq!(exp_sum_direct(&shape, &pts, Budget::default()).unwrap(), exp_sum_rank(&shape, &pts).unwrap());
        }

        #[test]
        fn deeper_coefficients_do_not_matter(base in any::<u64>(), tail in any::<u64>(), extra in 1usize..6) {
            let shape = SumShape::h(2, 3).unwrap();
            let d = shape.depths()[0];
            let short = LaurentPoint::from_word(base as u128, d);
            let long = LaurentPoint::from_word(base as u128 & ((1 << d) - 1) | (tail as u128) << d, d + extra);
            prop_assert_eq!(
                exp_sum_direct(&shape, &[short], Budget::default()).unwrap(),
                exp_sum_direct(&shape, &[long], Budget::default()).unwrap()
            );
        }
    }
}
