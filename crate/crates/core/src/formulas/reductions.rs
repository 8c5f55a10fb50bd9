//! Identities relating counts of different block families: stabilisation
//! of the remainder, column growth, and rank-shifting reductions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::double::{closed_form_terms, Terms};
use super::{n, p2, qi, sz, to_int, Q};
use crate::census::CensusCache;
use crate::error::{Error, Result};
use crate::families::FamilyShape;

/// A family of identities. Arguments are passed as a slice in the order
/// given by [`ReductionKind::params`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    /// The double remainder stops depending on `k` once `k > i` (or `k >= i`
    /// near the top rank).
    RemainderStable,
    /// Growth of double counts when a column is added.
    ColumnGrowth,
    /// `Gamma_{s+j}` of a double family in terms of `Gamma_{s+1}`.
    MidShift,
    /// Closed value of the shifted count at `k = s+j`.
    MidShiftSquare,
    /// Closed value of the shifted count for `j <= m-1`, `k > s+j`.
    MidShiftWide,
    /// Closed value of the shifted count for `j = m`, `k > s+m`.
    MidShiftLast,
    /// Upper double ranks in terms of an equal-height double family.
    TopShift,
    TopShiftSquare,
    TopShiftWide,
    TopShiftLast,
    /// Upper ranks of three equal blocks in terms of smaller blocks.
    TripleTail,
    TripleTailSquare,
    TripleTop,
    /// Upper ranks of `[s, s+1, s+1]` blocks.
    TripleOneShift,
    TripleOneTail,
    /// Upper ranks of `[s, s+m, s+m]` blocks with `m >= 2`.
    TripleMidShift,
    TripleMidLast,
    TripleMidTail,
    TripleMidTop,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 19] = [
        ReductionKind::RemainderStable,
        ReductionKind::ColumnGrowth,
        ReductionKind::MidShift,
        ReductionKind::MidShiftSquare,
        ReductionKind::MidShiftWide,
        ReductionKind::MidShiftLast,
        ReductionKind::TopShift,
        ReductionKind::TopShiftSquare,
        ReductionKind::TopShiftWide,
        ReductionKind::TopShiftLast,
        ReductionKind::TripleTail,
        ReductionKind::TripleTailSquare,
        ReductionKind::TripleTop,
        ReductionKind::TripleOneShift,
        ReductionKind::TripleOneTail,
        ReductionKind::TripleMidShift,
        ReductionKind::TripleMidLast,
        ReductionKind::TripleMidTail,
        ReductionKind::TripleMidTop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::RemainderStable => "remainder-stable",
            ReductionKind::ColumnGrowth => "column-growth",
            ReductionKind::MidShift => "mid-shift",
            ReductionKind::MidShiftSquare => "mid-shift-square",
            ReductionKind::MidShiftWide => "mid-shift-wide",
            ReductionKind::MidShiftLast => "mid-shift-last",
            ReductionKind::TopShift => "top-shift",
            ReductionKind::TopShiftSquare => "top-shift-square",
            ReductionKind::TopShiftWide => "top-shift-wide",
            ReductionKind::TopShiftLast => "top-shift-last",
            ReductionKind::TripleTail => "triple-tail",
            ReductionKind::TripleTailSquare => "triple-tail-square",
            ReductionKind::TripleTop => "triple-top",
            ReductionKind::TripleOneShift => "triple-one-shift",
            ReductionKind::TripleOneTail => "triple-one-tail",
            ReductionKind::TripleMidShift => "triple-mid-shift",
            ReductionKind::TripleMidLast => "triple-mid-last",
            ReductionKind::TripleMidTail => "triple-mid-tail",
            ReductionKind::TripleMidTop => "triple-mid-top",
        }
    }

    /// Names of the arguments, in order.
    pub fn params(self) -> &'static [&'static str] {
        use ReductionKind::*;
        match self {
            RemainderStable | ColumnGrowth => &["s", "m", "k", "i"],
            MidShift | MidShiftWide | TopShift | TopShiftWide | TripleMidShift | TripleMidTail => {
                &["s", "m", "k", "j"]
            }
            MidShiftSquare | TopShiftSquare => &["s", "m", "j"],
            MidShiftLast | TopShiftLast | TripleMidLast | TripleMidTop => &["s", "m", "k"],
            TripleTail | TripleOneShift | TripleOneTail => &["s", "k", "j"],
            TripleTailSquare => &["s", "j"],
            TripleTop => &["s", "k"],
        }
    }

    /// Whether `args` lies inside the identity's stated range.
    pub fn in_guard(self, args: &[usize]) -> bool {
        use ReductionKind::*;
        if args.len() != self.params().len() {
            return false;
        }
        let a: Vec<i64> = args.iter().map(|&v| sz(v)).collect();
        match self {
            RemainderStable => {
                let (s, m, k, i) = (a[0], a[1], a[2], a[3]);
                let top = 2 * s + m;
                s >= 2 && ((i <= top - 3 && k > i) || (i >= top - 2 && i <= top && k >= i))
            }
            ColumnGrowth => {
                let (s, m, k, i) = (a[0], a[1], a[2], a[3]);
                s >= 1 && k >= 1 && column_growth_rhs(s, m, k, i).is_some()
            }
            MidShift => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 1 && m >= 1 && 1 <= j && j <= m && k >= s + j
            }
            MidShiftSquare => {
                let (s, m, j) = (a[0], a[1], a[2]);
                s >= 1 && 1 <= j && j <= m
            }
            MidShiftWide => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 1 && 1 <= j && j < m && k > s + j
            }
            MidShiftLast => {
                let (s, m, k) = (a[0], a[1], a[2]);
                s >= 1 && m >= 1 && k > s + m
            }
            TopShift => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 1 && j < s && k >= s + m + 1 + j
            }
            TopShiftSquare => {
                let (s, _, j) = (a[0], a[1], a[2]);
                s >= 1 && j < s
            }
            TopShiftWide => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 2 && j <= s - 2 && k > s + m + 1 + j
            }
            TopShiftLast => {
                let (s, m, k) = (a[0], a[1], a[2]);
                s >= 1 && k > 2 * s + m
            }
            TripleTail => {
                let (s, k, j) = (a[0], a[1], a[2]);
                s >= 2 && j <= s - 2 && k >= 2 * s + 2 + j
            }
            TripleTailSquare => {
                let (s, j) = (a[0], a[1]);
                s >= 1 && j < s
            }
            TripleTop => {
                let (s, k) = (a[0], a[1]);
                s >= 1 && k >= 3 * s
            }
            TripleOneShift => {
                let (s, k, j) = (a[0], a[1], a[2]);
                s >= 1 && j <= 1 && k >= 2 * s + 2 + j
            }
            TripleOneTail => {
                let (s, k, j) = (a[0], a[1], a[2]);
                s >= 1 && j < s && k >= 2 * s + 3 + j
            }
            TripleMidShift => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 1 && m >= 2 && j <= m - 2 && k >= 2 * s + m + 2 + j
            }
            TripleMidLast => {
                let (s, m, k) = (a[0], a[1], a[2]);
                s >= 1 && m >= 2 && k >= 2 * s + 2 * m + 1
            }
            TripleMidTail => {
                let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
                s >= 2 && m >= 2 && j <= s - 2 && k >= 2 * s + 2 * m + 2 + j
            }
            TripleMidTop => {
                let (s, m, k) = (a[0], a[1], a[2]);
                s >= 1 && m >= 2 && k >= 3 * s + 2 * m
            }
        }
    }

    /// Every in-guard argument tuple with each entry at most `max`.
    pub fn instances(self, max: usize) -> Vec<Vec<usize>> {
        let arity = self.params().len();
        let mut out = Vec::new();
        let mut cur = vec![0usize; arity];
        loop {
            if self.in_guard(&cur) {
                out.push(cur.clone());
            }
            let mut pos = 0;
            loop {
                if pos == arity {
                    return out;
                }
                cur[pos] += 1;
                if cur[pos] <= max {
                    break;
                }
                cur[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown reduction kind {s:?}")))
    }
}

/// Both sides of one instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCheck {
    pub kind: ReductionKind,
    pub args: Vec<usize>,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
    pub description: String,
}

impl fmt::Display for ReductionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .kind
            .params()
            .iter()
            .zip(&self.args)
            .map(|(p, v)| format!("{p}={v}"))
            .collect();
        write!(
            f,
            "{} {} [{}]: {} = {} ({})",
            if self.holds { "ok  " } else { "FAIL" },
            self.kind,
            args.join(" "),
            self.lhs,
            self.rhs,
            self.description
        )
    }
}

/// Evaluates both sides with closed forms, falling back to census.
pub fn reduction_identities(kind: ReductionKind, args: &[usize]) -> Result<ReductionCheck> {
    let cache = CensusCache::default();
    let terms = closed_form_terms(&cache);
    reduction_identities_with(kind, args, &terms)
}

pub fn reduction_identities_with(kind: ReductionKind, args: &[usize], terms: &Terms<'_>) -> Result<ReductionCheck> {
    use ReductionKind::*;
    if !kind.in_guard(args) {
        return Err(Error::Domain(format!(
            "{kind} needs ({}) inside its range, got {args:?}",
            kind.params().join(", ")
        )));
    }
    let dbl = |s: usize, m: usize, k: usize, i: i64| -> Result<Q> { gamma_at(&FamilyShape::double(s, m, k), i, terms) };
    let eqs = |s: usize, k: usize, i: i64| -> Result<Q> { gamma_at(&FamilyShape::triple(s, 0, 0, k), i, terms) };
    let tri = |s: usize, m: usize, k: usize, i: i64| -> Result<Q> { gamma_at(&FamilyShape::triple(s, m, 0, k), i, terms) };
    let a = args;
    let (lhs, rhs, description): (Q, Q, String) = match kind {
        RemainderStable => {
            let (s, m, k, i) = (a[0], a[1], a[2], a[3]);
            let base = if i + 3 <= 2 * s + m { i + 1 } else { i };
            (
                remainder(s, m, k, i, terms)?,
                remainder(s, m, base, i, terms)?,
                format!("remainder at k={k} equals remainder at k={base}"),
            )
        }
        ColumnGrowth => {
            let (s, m, k, i) = (a[0], a[1], a[2], a[3]);
            let rhs = column_growth_rhs(sz(s), sz(m), sz(k), sz(i)).expect("guarded");
            (
                dbl(s, m, k + 1, sz(i))? - dbl(s, m, k, sz(i))?,
                rhs,
                format!("growth of rank-{i} count from k={k} to k={}", k + 1),
            )
        }
        MidShift => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            (
                dbl(s, m, k, sz(s + j))?,
                p2(3 * (sz(j) - 1)) * dbl(s, m - (j - 1), k - (j - 1), sz(s) + 1)?,
                "rank s+j count equals 8^(j-1) times a rank s+1 count".into(),
            )
        }
        MidShiftSquare => {
            let (s, m, j) = (a[0], a[1], a[2]);
            let (si, mm) = (sz(s), sz(m - (j - 1)));
            (
                dbl(s, m - (j - 1), s + 1, si + 1)?,
                p2(4 * si + mm) - n(3) * p2(3 * si - 1) + p2(2 * si - 1),
                "square rank s+1 count".into(),
            )
        }
        MidShiftWide => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            let (si, ki, ji) = (sz(s), sz(k), sz(j));
            (
                dbl(s, m - (j - 1), k - (j - 1), si + 1)?,
                n(3) * p2(ki - ji + si) + n(21) * (p2(3 * si - 1) - p2(2 * si - 1)),
                "wide rank s+1 count".into(),
            )
        }
        MidShiftLast => {
            let (s, m, k) = (a[0], a[1], a[2]);
            let (si, mi, ki) = (sz(s), sz(m), sz(k));
            (
                dbl(s, 1, k - (m - 1), si + 1)?,
                n(11) * p2(ki - mi + si) + n(21) * p2(3 * si - 1) - n(53) * p2(2 * si - 1),
                "rank s+1 count with one extra row".into(),
            )
        }
        TopShift => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            (
                dbl(s, m, k, sz(s + m + 1 + j))?,
                p2(3 * sz(2 * j + m)) * dbl(s - j, 0, k - m - 2 * j, sz(s - j + 1))?,
                "upper rank count equals 8^(2j+m) times an equal-height count".into(),
            )
        }
        TopShiftSquare => {
            let (s, _, j) = (a[0], a[1], a[2]);
            let (si, ji) = (sz(s), sz(j));
            (
                dbl(s - j, 0, s - j + 1, si - ji + 1)?,
                p2(4 * si - 4 * ji) - n(3) * p2(3 * si - 3 * ji - 1) + p2(2 * si - 2 * ji - 1),
                "square equal-height count".into(),
            )
        }
        TopShiftWide => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            let (si, mi, ki, ji) = (sz(s), sz(m), sz(k), sz(j));
            (
                dbl(s - j, 0, k - m - 2 * j, si - ji + 1)?,
                n(21) * (p2(ki - mi - 3 * ji + si - 1) + p2(3 * si - 3 * ji - 1) - n(5) * p2(2 * si - 2 * ji - 1)),
                "wide equal-height count".into(),
            )
        }
        TopShiftLast => {
            let (s, m, k) = (a[0], a[1], a[2]);
            let e = sz(k) - sz(m) - 2 * sz(s) + 2;
            (
                dbl(1, 0, k - m - 2 * s + 2, 2)?,
                p2(2 * e) - n(3) * p2(e) + n(2),
                "full-rank count of two single rows".into(),
            )
        }
        TripleTail => {
            let (s, k, j) = (a[0], a[1], a[2]);
            (
                eqs(s, k, sz(2 * s + 1 + j))?,
                p2(12 * sz(j)) * eqs(s - j, k - 3 * j, sz(2 * (s - j) + 1))?,
                "upper rank count equals 16^(3j) times a smaller count".into(),
            )
        }
        TripleTailSquare => {
            let (s, j) = (a[0], a[1]);
            (
                eqs(s, 2 * s + 1 + j, sz(2 * s + 1 + j))?,
                p2(12 * sz(j)) * eqs(s - j, 2 * (s - j) + 1, sz(2 * (s - j) + 1))?,
                "square upper rank count".into(),
            )
        }
        TripleTop => {
            let (s, k) = (a[0], a[1]);
            (
                eqs(s, k, sz(3 * s))?,
                p2(12 * (sz(s) - 1)) * eqs(1, k - 3 * (s - 1), 3)?,
                "full-rank count equals 16^(3(s-1)) times the s=1 count".into(),
            )
        }
        TripleOneShift => {
            let (s, k, j) = (a[0], a[1], a[2]);
            (
                tri(s, 1, k, sz(2 * s + 2 + j))?,
                p2(8 * sz(j)) * tri(s, 1 - j, k - 2 * j, sz(2 * s + 2 - j))?,
                "rank 2s+2+j count".into(),
            )
        }
        TripleOneTail => {
            let (s, k, j) = (a[0], a[1], a[2]);
            (
                tri(s, 1, k, sz(2 * s + 3 + j))?,
                p2(4 * (2 + 3 * sz(j))) * eqs(s - j, k - 2 - 3 * j, sz(2 * (s - j) + 1))?,
                "rank 2s+3+j count".into(),
            )
        }
        TripleMidShift => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            (
                tri(s, m, k, sz(2 * s + m + 1 + j))?,
                p2(8 * sz(j)) * tri(s, m - j, k - 2 * j, sz(2 * s + 1 + m - j))?,
                "rank 2s+m+1+j count".into(),
            )
        }
        TripleMidLast => {
            let (s, m, k) = (a[0], a[1], a[2]);
            (
                tri(s, m, k, sz(2 * s + 2 * m))?,
                p2(4 * (2 * sz(m) - 2)) * tri(s, 1, k - 2 * (m - 1), sz(2 * s + 2))?,
                "rank 2s+2m count".into(),
            )
        }
        TripleMidTail => {
            let (s, m, k, j) = (a[0], a[1], a[2], a[3]);
            (
                tri(s, m, k, sz(2 * s + 2 * m + 1 + j))?,
                p2(4 * (2 * sz(m) + 3 * sz(j))) * eqs(s - j, k - 2 * m - 3 * j, sz(2 * (s - j) + 1))?,
                "rank 2s+2m+1+j count".into(),
            )
        }
        TripleMidTop => {
            let (s, m, k) = (a[0], a[1], a[2]);
            (
                tri(s, m, k, sz(3 * s + 2 * m))?,
                p2(4 * (2 * sz(m) + 3 * sz(s) - 3)) * eqs(1, k - 2 * m - 3 * s + 3, 3)?,
                "full-rank count".into(),
            )
        }
    };
    let lhs = to_int(&lhs, kind.name())?;
    let rhs = to_int(&rhs, kind.name())?;
    Ok(ReductionCheck {
        kind,
        args: args.to_vec(),
        holds: lhs == rhs,
        lhs,
        rhs,
        description,
    })
}

fn gamma_at(shape: &FamilyShape, i: i64, terms: &Terms<'_>) -> Result<Q> {
    if i < 0 {
        return Ok(Q::zero());
    }
    Ok(qi(&terms(shape, i as usize)?))
}

/// Remainder of the double recurrence, read off as `Gamma_i` minus the
/// recurrence's three lower-order terms.
fn remainder(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<Q> {
    let g = |heights: [usize; 2], rank: i64| gamma_at(&FamilyShape::double_from_heights(heights, k), rank, terms);
    let i = sz(i);
    Ok(g([s, s + m], i)? - n(2) * g([s - 1, s + m], i - 1)? - n(4) * g([s, s + m - 1], i - 1)?
        + n(8) * g([s - 1, s - 1 + m], i - 2)?)
}

/// Right side of the column-growth identity, or `None` outside every case.
fn column_growth_rhs(s: i64, m: i64, k: i64, i: i64) -> Option<Q> {
    if i < s {
        return (k > i).then(Q::zero);
    }
    let j = i - s;
    match m {
        0 => {
            if j == 0 && k > s {
                Some(n(3) * p2(k + s - 1))
            } else if 1 <= j && j < s && k > s + j {
                Some(n(21) * p2(k + s + 3 * j - 4))
            } else if j == s && k > 2 * s {
                Some(n(3) * p2(2 * k + 2 * s - 2) - n(3) * p2(k + 4 * s - 4))
            } else {
                None
            }
        }
        1 => {
            if j == 0 && k > s {
                Some(p2(k + s - 1))
            } else if j == 1 && k > s + 1 {
                Some(n(11) * p2(k + s - 1))
            } else if 2 <= j && j <= s && k > s + j {
                Some(n(21) * p2(k + s + 3 * j - 5))
            } else if j == s + 1 && k > 2 * s + 1 {
                Some(n(3) * p2(2 * k + 2 * s - 1) - n(3) * p2(k + 4 * s - 2))
            } else {
                None
            }
        }
        _ => {
            let jm = i - s - m;
            if j == 0 && k > s {
                Some(p2(k + s - 1))
            } else if 1 <= j && j < m && k > s + j {
                Some(n(3) * p2(k + s + 2 * j - 3))
            } else if j == m && k > s + m {
                Some(n(11) * p2(k + s + 2 * m - 3))
            } else if 1 <= jm && jm < s && k > s + m + jm {
                Some(n(21) * p2(k + s + 2 * m + 3 * jm - 4))
            } else if jm == s && k > 2 * s + m {
                Some(n(3) * p2(2 * k + 2 * s + m - 2) - n(3) * p2(k + 4 * s + 2 * m - 4))
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::Budget;
    use crate::formulas::double::census_terms;

    #[test]
    fn names_round_trip() {
        for kind in ReductionKind::ALL {
            assert_eq!(kind.name().parse::<ReductionKind>().unwrap(), kind);
        }
        assert!("no-such-identity".parse::<ReductionKind>().is_err());
    }

    #[test]
    fn every_identity_holds_on_closed_forms() {
        for kind in ReductionKind::ALL {
            let instances = kind.instances(10);
            assert!(!instances.is_empty(), "{kind} has no instances");
            for args in instances {
                let check = reduction_identities(kind, &args).unwrap();
                assert!(check.holds, "{check}");
            }
        }
    }

    #[test]
    fn double_identities_hold_on_census() {
        let cache = CensusCache::new(Budget::new(20));
        let terms = census_terms(&cache);
        let mut checked = 0;
        for kind in ReductionKind::ALL.into_iter().filter(|k| !k.name().starts_with("triple")) {
            for args in kind.instances(5) {
                match reduction_identities_with(kind, &args, &terms) {
                    Ok(check) => {
                        assert!(check.holds, "{check}");
                        checked += 1;
                    }
                    Err(Error::Budget { .. }) => {}
                    Err(e) => panic!("{kind} {args:?}: {e}"),
                }
            }
        }
        assert!(checked > 500, "only {checked} census-backed instances");
    }

    #[test]
    fn out_of_range_arguments_are_rejected() {
        assert!(reduction_identities(ReductionKind::MidShift, &[1, 0, 3, 1]).is_err());
        assert!(reduction_identities(ReductionKind::TripleTop, &[1]).is_err());
    }
}
