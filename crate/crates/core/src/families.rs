//! Structured matrix families built from persymmetric (Hankel) blocks.
//!
//! Every family handled here is a vertical stack of persymmetric blocks that
//! share a column count `k`. A block of height `h` is defined by `k + h - 1`
//! parameter bits; row `r` of the block holds bits `r .. r + k`. A one-row
//! block is an arbitrary row, which is how the `rows` family (a persymmetric
//! block with `n` free rows underneath) fits the same mould.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{low_mask, BitMatrix};

/// Upper bound accepted for any single dimension in the text form.
pub const MAX_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyShape {
    /// `s x k` persymmetric matrices.
    Single { s: usize, k: usize },
    /// A `(1+m) x k` persymmetric block over `n` arbitrary rows.
    PersymPlusRows { n: usize, m: usize, k: usize },
    /// Persymmetric blocks of heights `s` and `s+m`.
    Double { s: usize, m: usize, k: usize },
    /// Persymmetric blocks of heights `s`, `s+m` and `s+m+l`.
    Triple { s: usize, m: usize, l: usize, k: usize },
}

impl FamilyShape {
    pub fn single(s: usize, k: usize) -> Self {
        FamilyShape::Single { s, k }
    }

    pub fn rows(n: usize, m: usize, k: usize) -> Self {
        FamilyShape::PersymPlusRows { n, m, k }
    }

    pub fn double(s: usize, m: usize, k: usize) -> Self {
        FamilyShape::Double { s, m, k }
    }

    pub fn triple(s: usize, m: usize, l: usize, k: usize) -> Self {
        FamilyShape::Triple { s, m, l, k }
    }

    /// The triple family whose block heights are `heights` in some order.
    ///
    /// Permuting blocks permutes rows, so the rank distribution of any
    /// three-block stack equals that of its sorted form.
    pub fn triple_from_heights(mut heights: [usize; 3], k: usize) -> Self {
        heights.sort_unstable();
        FamilyShape::Triple {
            s: heights[0],
            m: heights[1] - heights[0],
            l: heights[2] - heights[1],
            k,
        }
    }

    /// Same as [`FamilyShape::triple_from_heights`] for two blocks.
    pub fn double_from_heights(mut heights: [usize; 2], k: usize) -> Self {
        heights.sort_unstable();
        FamilyShape::Double {
            s: heights[0],
            m: heights[1] - heights[0],
            k,
        }
    }

    pub fn cols(&self) -> usize {
        match *self {
            FamilyShape::Single { k, .. }
            | FamilyShape::PersymPlusRows { k, .. }
            | FamilyShape::Double { k, .. }
            | FamilyShape::Triple { k, .. } => k,
        }
    }

    /// Heights of the persymmetric blocks, top to bottom.
    pub fn block_heights(&self) -> Vec<usize> {
        match *self {
            FamilyShape::Single { s, .. } => vec![s],
            FamilyShape::PersymPlusRows { n, m, .. } => {
                let mut h = vec![1 + m];
                h.extend(std::iter::repeat(1).take(n));
                h
            }
            FamilyShape::Double { s, m, .. } => vec![s, s + m],
            FamilyShape::Triple { s, m, l, .. } => vec![s, s + m, s + m + l],
        }
    }

    pub fn total_rows(&self) -> usize {
        self.block_heights().iter().sum()
    }

    pub fn max_rank(&self) -> usize {
        self.total_rows().min(self.cols())
    }

    /// Parameter bits per block. An empty block carries no parameters.
    pub fn segment_lengths(&self) -> Vec<usize> {
        let k = self.cols();
        self.block_heights()
            .into_iter()
            .map(|h| block_bits(h, k))
            .collect()
    }

    pub fn param_bits(&self) -> usize {
        self.segment_lengths().iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.cols();
        if k == 0 {
            return Err(Error::Domain(format!("{self}: column count k must be at least 1")));
        }
        let dims: Vec<usize> = match *self {
            FamilyShape::Single { s, k } => vec![s, k],
            FamilyShape::PersymPlusRows { n, m, k } => vec![n, m, k],
            FamilyShape::Double { s, m, k } => vec![s, m, k],
            FamilyShape::Triple { s, m, l, k } => vec![s, m, l, k],
        };
        if dims.iter().any(|&d| d > MAX_DIM) {
            return Err(Error::Domain(format!("{self}: dimensions above {MAX_DIM}")));
        }
        Ok(())
    }

    /// Builds the family member described by `params`.
    pub fn matrix(&self, params: &ParamVec) -> Result<BitMatrix> {
        self.validate()?;
        let k = self.cols();
        let heights = self.block_heights();
        if params.segments.len() != heights.len() {
            return Err(Error::Dimension(format!(
                "{self} needs {} parameter segments, got {}",
                heights.len(),
                params.segments.len()
            )));
        }
        let blocks = heights
            .iter()
            .zip(&params.segments)
            .map(|(&h, seg)| persym_block(h, k, seg))
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::vstack(&blocks)
    }
}

#[inline]
pub(crate) fn block_bits(height: usize, k: usize) -> usize {
    if height == 0 {
        0
    } else {
        k + height - 1
    }
}

impl fmt::Display for FamilyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyShape::Single { s, k } => write!(f, "single:s={s},k={k}"),
            FamilyShape::PersymPlusRows { n, m, k } => write!(f, "rows:n={n},m={m},k={k}"),
            FamilyShape::Double { s, m, k } => write!(f, "double:s={s},m={m},k={k}"),
            FamilyShape::Triple { s, m, l, k } => write!(f, "triple:s={s},m={m},l={l},k={k}"),
        }
    }
}

impl FromStr for FamilyShape {
    type Err = Error;

    /// Parses the canonical text form, e.g. `double:s=3,m=2,k=4`.
    /// Keys may appear in any order but each exactly once.
    fn from_str(text: &str) -> Result<Self> {
        let (kind, rest) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `kind:key=value,...`, got {text:?}")))?;
        let keys: &[&str] = match kind {
            "single" => &["s", "k"],
            "rows" => &["n", "m", "k"],
            "double" => &["s", "m", "k"],
            "triple" => &["s", "m", "l", "k"],
            other => return Err(Error::Parse(format!("unknown family kind {other:?}"))),
        };
        let values = parse_key_values(rest, ',', keys)?;
        let shape = match kind {
            "single" => FamilyShape::single(values[0], values[1]),
            "rows" => FamilyShape::rows(values[0], values[1], values[2]),
            "double" => FamilyShape::double(values[0], values[1], values[2]),
            _ => FamilyShape::triple(values[0], values[1], values[2], values[3]),
        };
        shape.validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(shape)
    }
}

/// Parses `key=value` pairs separated by `sep` into values ordered like `keys`.
pub(crate) fn parse_key_values(text: &str, sep: char, keys: &[&str]) -> Result<Vec<usize>> {
    let mut values: Vec<Option<usize>> = vec![None; keys.len()];
    for part in text.split(sep).map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        let idx = keys
            .iter()
            .position(|&k| k == key.trim())
            .ok_or_else(|| Error::Parse(format!("unexpected key {key:?}")))?;
        if values[idx].is_some() {
            return Err(Error::Parse(format!("duplicate key {key:?}")));
        }
        let v: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid value {value:?} for {key}")))?;
        if v > MAX_DIM {
            return Err(Error::Parse(format!("{key}={v} exceeds {MAX_DIM}")));
        }
        values[idx] = Some(v);
    }
    values
        .iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::Parse(format!("missing key {k:?}"))))
        .collect()
}

/// The defining bits of one family member, one segment per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamVec {
    pub segments: Vec<Vec<bool>>,
}

impl ParamVec {
    pub fn new(segments: Vec<Vec<bool>>) -> Self {
        ParamVec { segments }
    }

    pub fn zeros(shape: &FamilyShape) -> Self {
        ParamVec {
            segments: shape.segment_lengths().into_iter().map(|n| vec![false; n]).collect(),
        }
    }

    /// Decodes an enumeration counter: bit `b` of the counter feeds the
    /// segments in order, lowest bits first.
    pub fn from_counter(shape: &FamilyShape, counter: u128) -> Self {
        let mut offset = 0;
        let segments = shape
            .segment_lengths()
            .into_iter()
            .map(|len| {
                let seg = (0..len)
                    .map(|b| offset + b < 128 && (counter >> (offset + b)) & 1 == 1)
                    .collect();
                offset += len;
                seg
            })
            .collect();
        ParamVec { segments }
    }
}

fn persym_block(height: usize, k: usize, alpha: &[bool]) -> Result<BitMatrix> {
    let need = block_bits(height, k);
    if alpha.len() != need {
        return Err(Error::Dimension(format!(
            "{height}x{k} persymmetric block needs {need} bits, got {}",
            alpha.len()
        )));
    }
    let mut m = BitMatrix::zeros(height, k);
    for i in 0..height {
        for j in 0..k {
            if alpha[i + j] {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// The `s x k` persymmetric matrix with entry `(i, j) = alpha[i + j]`
/// (zero-based; `alpha[0]` is the top-left entry).
pub fn persym_matrix(s: usize, k: usize, alpha: &[bool]) -> Result<BitMatrix> {
    persym_block(s, k, alpha)
}

/// A `(1+m) x k` persymmetric block stacked over `n` raw rows of `k` bits.
pub fn persym_plus_rows(n: usize, m: usize, k: usize, alpha: &[bool], rowbits: &[bool]) -> Result<BitMatrix> {
    if rowbits.len() != n * k {
        return Err(Error::Dimension(format!(
            "{n} free rows of width {k} need {} bits, got {}",
            n * k,
            rowbits.len()
        )));
    }
    let top = persym_block(1 + m, k, alpha)?;
    let mut bottom = BitMatrix::zeros(n, k);
    for (idx, _) in rowbits.iter().enumerate().filter(|(_, &b)| b) {
        bottom.set(idx / k, idx % k, true);
    }
    BitMatrix::vstack(&[top, bottom])
}

pub fn double_matrix(s: usize, m: usize, k: usize, alpha: &[bool], beta: &[bool]) -> Result<BitMatrix> {
    BitMatrix::vstack(&[persym_block(s, k, alpha)?, persym_block(s + m, k, beta)?])
}

pub fn triple_matrix(
    s: usize,
    m: usize,
    l: usize,
    k: usize,
    alpha: &[bool],
    beta: &[bool],
    gamma: &[bool],
) -> Result<BitMatrix> {
    BitMatrix::vstack(&[
        persym_block(s, k, alpha)?,
        persym_block(s + m, k, beta)?,
        persym_block(s + m + l, k, gamma)?,
    ])
}

/// A sub-matrix read off the same parameters as its parent family: block
/// `b` keeps its first `heights[b]` rows, and only the first `cols` columns
/// survive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Truncation {
    pub heights: Vec<usize>,
    pub cols: usize,
}

impl Truncation {
    pub fn full(shape: &FamilyShape) -> Self {
        Truncation {
            heights: shape.block_heights(),
            cols: shape.cols(),
        }
    }

    pub fn rows(&self) -> usize {
        self.heights.iter().sum()
    }

    /// Applies the truncation to a full family member.
    pub fn apply(&self, parent: &FamilyShape, full: &BitMatrix) -> Result<BitMatrix> {
        let parent_heights = parent.block_heights();
        if parent_heights.len() != self.heights.len()
            || self.heights.iter().zip(&parent_heights).any(|(h, p)| h > p)
            || self.cols > parent.cols()
        {
            return Err(Error::Dimension(format!("{self} does not fit inside {parent}")));
        }
        let mut pieces = Vec::with_capacity(self.heights.len());
        let mut start = 0;
        for (&keep, &height) in self.heights.iter().zip(&parent_heights) {
            let mut block = BitMatrix::zeros(keep, self.cols);
            for r in 0..keep {
                for c in 0..self.cols {
                    if full.get(start + r, c) {
                        block.set(r, c, true);
                    }
                }
            }
            pieces.push(block);
            start += height;
        }
        BitMatrix::vstack(&pieces)
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "[{}]x{}", hs.join("/"), self.cols)
    }
}

/// The sub-shapes whose joint ranks drive the recurrences.
///
/// * `Single(s,k)`: `(s-1)x(k-1)`, `s x(k-1)`, `(s-1)x k`, `s x k`.
/// * `Double(s,m,k)`: `[s-1, s-1+m]`, `[s, s+m-1]`, `[s, s+m]`.
/// * `Triple(s,m,l,k)`: drop the last row of every block, then restore them
///   one block at a time from the top.
pub fn nested_chain(shape: &FamilyShape) -> Result<Vec<Truncation>> {
    shape.validate()?;
    let unsupported = || Error::Domain(format!("{shape} has no nested chain"));
    match *shape {
        FamilyShape::Single { s, k } => {
            if s == 0 {
                return Err(unsupported());
            }
            let t = |h, c| Truncation { heights: vec![h], cols: c };
            Ok(vec![t(s - 1, k - 1), t(s, k - 1), t(s - 1, k), t(s, k)])
        }
        FamilyShape::Double { s, m, k } => {
            if s == 0 {
                return Err(unsupported());
            }
            let t = |a, b| Truncation { heights: vec![a, b], cols: k };
            Ok(vec![t(s - 1, s + m - 1), t(s, s + m - 1), t(s, s + m)])
        }
        FamilyShape::Triple { s, m, l, k } => {
            if s == 0 {
                return Err(unsupported());
            }
            let (a, b, c) = (s, s + m, s + m + l);
            let t = |x, y, z| Truncation { heights: vec![x, y, z], cols: k };
            Ok(vec![
                t(a - 1, b - 1, c - 1),
                t(a, b - 1, c - 1),
                t(a, b, c - 1),
                t(a, b, c),
            ])
        }
        FamilyShape::PersymPlusRows { .. } => Err(unsupported()),
    }
}

/// Fast row generation for families with at most 64 columns.
///
/// Parameter bits are packed into a `u128` counter; each block's segment is a
/// contiguous bit field, and persymmetric row `r` is that field shifted right
/// by `r` and masked to the column count.
#[derive(Debug, Clone)]
pub(crate) struct RowLayout {
    offsets: Vec<usize>,
    seg_masks: Vec<u128>,
}

impl RowLayout {
    pub(crate) fn new(shape: &FamilyShape) -> Option<Self> {
        let cols = shape.cols();
        let lens = shape.segment_lengths();
        if cols > 64 || shape.param_bits() > 128 || lens.iter().any(|&l| l > 127) {
            return None;
        }
        let mut offsets = Vec::with_capacity(lens.len());
        let mut off = 0;
        for &len in &lens {
            offsets.push(off);
            off += len;
        }
        Some(RowLayout {
            offsets,
            seg_masks: lens.iter().map(|&l| (1u128 << l) - 1).collect(),
        })
    }

    /// Writes the rows of `trunc` into `out`, returning how many were written.
    #[inline]
    pub(crate) fn fill(&self, counter: u128, trunc: &Truncation, out: &mut [u64]) -> usize {
        let mask = low_mask(trunc.cols);
        let mut n = 0;
        for (b, &h) in trunc.heights.iter().enumerate() {
            let seg = (counter >> self.offsets[b]) & self.seg_masks[b];
            for r in 0..h {
                out[n] = ((seg >> r) as u64) & mask;
                n += 1;
            }
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn persym_examples() {
        assert_eq!(persym_matrix(2, 3, &bits("0000")).unwrap().rank(), 0);
        let m = persym_matrix(2, 3, &bits("1011")).unwrap();
        assert_eq!(m, BitMatrix::from_bit_rows(&["101", "011"]).unwrap());
        // rows 100 / 000 / 001
        let m = persym_matrix(3, 3, &bits("10001")).unwrap();
        assert_eq!(m, BitMatrix::from_bit_rows(&["100", "000", "001"]).unwrap());
        assert_eq!(m.rank(), 2);
        assert!(persym_matrix(2, 3, &bits("101")).is_err());
    }

    #[test]
    fn leading_rows_of_persym_is_persym_of_prefix() {
        let alpha = bits("10110");
        let m = persym_matrix(3, 3, &alpha).unwrap();
        assert_eq!(m.leading_rows(2).unwrap(), persym_matrix(2, 3, &alpha[..4]).unwrap());
    }

    #[test]
    fn rows_family_layout() {
        let m = persym_plus_rows(1, 0, 2, &bits("10"), &bits("01")).unwrap();
        assert_eq!(m, BitMatrix::from_bit_rows(&["10", "01"]).unwrap());
        assert_eq!(m.rank(), 2);
        // n=1, m=2, k=3: rows a1a2a3 / a2a3a4 / a3a4a5 / b1b2b3
        let m = persym_plus_rows(1, 2, 3, &bits("11010"), &bits("001")).unwrap();
        assert_eq!(m, BitMatrix::from_bit_rows(&["110", "101", "010", "001"]).unwrap());
        let z = persym_plus_rows(2, 1, 3, &bits("0000"), &bits("000000")).unwrap();
        assert_eq!((z.rows(), z.rank()), (4, 0));
    }

    #[test]
    fn double_and_triple_layouts() {
        let m = double_matrix(1, 0, 2, &bits("10"), &bits("01")).unwrap();
        assert_eq!(m.rank(), 2);
        let m = double_matrix(3, 2, 4, &[false; 6], &[false; 8]).unwrap();
        assert_eq!((m.rows(), m.cols()), (8, 4));
        let t = triple_matrix(1, 1, 2, 2, &bits("11"), &bits("101"), &bits("01101")).unwrap();
        assert_eq!((t.rows(), t.cols()), (7, 2));
        assert!(t.rank() <= 2);
        let t = triple_matrix(2, 0, 0, 6, &[false; 7], &[false; 7], &[true; 7]).unwrap();
        assert_eq!((t.rows(), t.cols(), t.rank()), (6, 6, 1));
    }

    #[test]
    fn param_bits_by_kind() {
        assert_eq!(FamilyShape::single(2, 3).param_bits(), 4);
        assert_eq!(FamilyShape::rows(5, 2, 4).param_bits(), 6 + 20);
        assert_eq!(FamilyShape::double(3, 2, 4).param_bits(), 6 + 8);
        assert_eq!(FamilyShape::triple(2, 0, 0, 6).param_bits(), 21);
        assert_eq!(FamilyShape::single(0, 3).param_bits(), 0);
        assert_eq!(FamilyShape::double(0, 2, 3).param_bits(), 4);
    }

    #[test]
    fn text_form_round_trips() {
        for text in ["single:s=2,k=3", "double:s=3,m=2,k=4", "triple:s=2,m=0,l=0,k=6", "rows:n=1,m=2,k=3"] {
            let shape: FamilyShape = text.parse().unwrap();
            assert_eq!(shape.to_string(), text);
        }
        let shape: FamilyShape = "double:k=4,m=2,s=3".parse().unwrap();
        assert_eq!(shape, FamilyShape::double(3, 2, 4));
    }

    #[test]
    fn text_form_rejects_garbage() {
        for bad in [
            "",
            "single",
            "single:s=2",
            "single:s=2,k=3,k=3",
            "single:s=2,k=0",
            "quad:s=1,k=1",
            "double:s=1,m=x,k=2",
            "triple:s=1,m=0,l=0,k=99999",
            "single:s=2,k=3,z=1",
            "single:s=-1,k=3",
        ] {
            assert!(bad.parse::<FamilyShape>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn nested_chain_shapes() {
        let c = nested_chain(&FamilyShape::single(3, 4)).unwrap();
        let dims: Vec<(usize, usize)> = c.iter().map(|t| (t.rows(), t.cols)).collect();
        assert_eq!(dims, vec![(2, 3), (3, 3), (2, 4), (3, 4)]);

        let c = nested_chain(&FamilyShape::double(3, 2, 5)).unwrap();
        let hs: Vec<Vec<usize>> = c.iter().map(|t| t.heights.clone()).collect();
        assert_eq!(hs, vec![vec![2, 4], vec![3, 4], vec![3, 5]]);

        let c = nested_chain(&FamilyShape::triple(2, 1, 0, 4)).unwrap();
        let hs: Vec<Vec<usize>> = c.iter().map(|t| t.heights.clone()).collect();
        assert_eq!(hs, vec![vec![1, 2, 2], vec![2, 2, 2], vec![2, 3, 2], vec![2, 3, 3]]);

        assert!(nested_chain(&FamilyShape::rows(1, 1, 2)).is_err());
        assert!(nested_chain(&FamilyShape::single(0, 2)).is_err());
    }

    #[test]
    fn sorted_heights_normalise() {
        assert_eq!(FamilyShape::triple_from_heights([3, 2, 3], 5), FamilyShape::triple(2, 1, 0, 5));
        assert_eq!(FamilyShape::double_from_heights([3, 2], 5), FamilyShape::double(2, 1, 5));
    }

    proptest! {
        #[test]
        fn persym_entries_depend_only_on_antidiagonal(s in 1usize..6, k in 1usize..8, seed in any::<u64>()) {
            let alpha: Vec<bool> = (0..k + s - 1).map(|b| (seed >> (b % 64)) & 1 == 1).collect();
            let m = persym_matrix(s, k, &alpha).unwrap();
            for i in 0..s {
                for j in 0..k {
                    for i2 in 0..s {
                        if i + j >= i2 && i + j - i2 < k {
                            prop_assert_eq!(m.get(i, j), m.get(i2, i + j - i2));
                        }
                    }
                }
            }
        }

        #[test]
        fn chain_members_match_direct_construction(s in 1usize..4, m in 0usize..3, k in 1usize..6, seed in any::<u64>()) {
            let shape = FamilyShape::double(s, m, k);
            let params = ParamVec::from_counter(&shape, seed as u128);
            let full = shape.matrix(&params).unwrap();
            for t in nested_chain(&shape).unwrap() {
                let direct = double_matrix(
                    t.heights[0], t.heights[1] - t.heights[0].min(t.heights[1]), k,
                    &params.segments[0][..crate::families::block_bits(t.heights[0], k)],
                    &params.segments[1][..crate::families::block_bits(t.heights[1], k)],
                );
                // the middle chain member can have a shorter second block
                if t.heights[1] >= t.heights[0] {
                    prop_assert_eq!(t.apply(&shape, &full).unwrap(), direct.unwrap());
                } else {
                    let a = persym_matrix(t.heights[0], k, &params.segments[0][..block_bits(t.heights[0], k)]).unwrap();
                    let b = persym_matrix(t.heights[1], k, &params.segments[1][..block_bits(t.heights[1], k)]).unwrap();
                    prop_assert_eq!(t.apply(&shape, &full).unwrap(), BitMatrix::vstack(&[a, b]).unwrap());
                }
            }
        }

        #[test]
        fn row_layout_matches_matrix(s in 0usize..4, m in 0usize..3, l in 0usize..3, k in 1usize..7, seed in any::<u64>()) {
            let shape = FamilyShape::triple(s, m, l, k);
            let counter = (seed as u128) & ((1u128 << shape.param_bits()) - 1);
            let params = ParamVec::from_counter(&shape, counter);
            let full = shape.matrix(&params).unwrap();
            let layout = RowLayout::new(&shape).unwrap();
            let mut buf = [0u64; 64];
            let n = layout.fill(counter, &Truncation::full(&shape), &mut buf);
            prop_assert_eq!(BitMatrix::from_row_words(k, &buf[..n]).unwrap(), full);
        }
    }
}
