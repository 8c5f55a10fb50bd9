//! Counting solutions of bilinear systems `sum_i Y_i W_i = 0` over GF(2)[T]
//! under degree bounds, without reference to ranks of persymmetric
//! matrices.
//!
//! For fixed `Y_1 .. Y_q` each companion equation is linear in its
//! companions, so it contributes `2^(q len - rank)` solutions where the rank
//! is that of the polynomials `Y_i T^c`, `c < len`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::census::Budget;
use crate::error::{Error, Result};
use crate::families::{parse_key_values, FamilyShape};
use crate::gf2::rank_of_words;

/// One kind of companion polynomial: `deg W <= len - 1`, appearing in
/// `multiplicity` separate equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Companion {
    pub len: usize,
    pub multiplicity: usize,
}

/// Number of tuples `(Y_i, W_i^(e))_{i <= q}` with `deg Y_i <= k-1`,
/// companion degrees as given, and `sum_i Y_i W_i^(e) = 0` for every
/// equation `e`.
pub fn count_solutions(k: usize, companions: &[Companion], q: usize, budget: Budget) -> Result<BigUint> {
    if k == 0 || q == 0 {
        return Err(Error::Domain(format!("need k >= 1 and q >= 1, got k={k} q={q}")));
    }
    let y_bits = q
        .checked_mul(k)
        .ok_or_else(|| Error::Domain("q * k overflows".into()))?;
    let widest = companions.iter().map(|c| c.len).max().unwrap_or(0);
    if y_bits > 63 || k + widest > 65 {
        return Err(Error::Budget {
            required_log2: y_bits.min(u32::MAX as usize) as u32,
            budget_log2: budget.log2,
        });
    }
    budget.check(y_bits)?;
    let mask = (1u64 << k) - 1;
    let shard_bits = y_bits.min(10);
    let high = y_bits - shard_bits;
    let partials: Vec<BigUint> = (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|shard| {
            let mut acc = BigUint::zero();
            let mut ys = vec![0u64; q];
            let mut gens = Vec::with_capacity(q * widest.max(1));
            for low in 0..1u64 << high {
                let tuple = (shard << high) | low;
                for (i, y) in ys.iter_mut().enumerate() {
                    *y = (tuple >> (i * k)) & mask;
                }
                let mut exp = 0usize;
                for c in companions {
                    gens.clear();
                    for &y in &ys {
                        for shift in 0..c.len {
                            gens.push(y << shift);
                        }
                    }
                    exp += c.multiplicity * (q * c.len - rank_of_words(&gens));
                }
                acc += BigUint::one() << exp;
            }
            acc
        })
        .collect();
    Ok(partials.into_iter().sum())
}

/// A bilinear system named by the block family it corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemSpec {
    /// `sum Y_i Z_i = 0` with `deg Z <= m`.
    Single { k: usize, m: usize },
    /// As `Single` plus `n` equations with constant companions.
    Rows { n: usize, k: usize, m: usize },
    /// Companions of degree below `s` and `s+m`.
    Double { k: usize, s: usize, m: usize },
    /// Companions of degree below `s`, `s+m`, `s+m+l`.
    Triple { k: usize, s: usize, m: usize, l: usize },
}

impl SystemSpec {
    pub fn k(&self) -> usize {
        match *self {
            SystemSpec::Single { k, .. }
            | SystemSpec::Rows { k, .. }
            | SystemSpec::Double { k, .. }
            | SystemSpec::Triple { k, .. } => k,
        }
    }

    pub fn companions(&self) -> Vec<Companion> {
        let one = |len| Companion { len, multiplicity: 1 };
        match *self {
            SystemSpec::Single { m, .. } => vec![one(m + 1)],
            SystemSpec::Rows { n, m, .. } => vec![one(m + 1), Companion { len: 1, multiplicity: n }],
            SystemSpec::Double { s, m, .. } => vec![one(s), one(s + m)],
            SystemSpec::Triple { s, m, l, .. } => vec![one(s), one(s + m), one(s + m + l)],
        }
    }

    /// The family whose rank distribution gives this system's count.
    pub fn family(&self) -> FamilyShape {
        match *self {
            SystemSpec::Single { k, m } => FamilyShape::single(m + 1, k),
            SystemSpec::Rows { n, k, m } => FamilyShape::rows(n, m, k),
            SystemSpec::Double { k, s, m } => FamilyShape::double(s, m, k),
            SystemSpec::Triple { k, s, m, l } => FamilyShape::triple(s, m, l, k),
        }
    }

    pub fn count(&self, q: usize, budget: Budget) -> Result<BigUint> {
        count_solutions(self.k(), &self.companions(), q, budget)
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SystemSpec::Single { k, m } => write!(f, "single:k={k},m={m}"),
            SystemSpec::Rows { n, k, m } => write!(f, "rows:n={n},k={k},m={m}"),
            SystemSpec::Double { k, s, m } => write!(f, "double:k={k},s={s},m={m}"),
            SystemSpec::Triple { k, s, m, l } => write!(f, "triple:k={k},s={s},m={m},l={l}"),
        }
    }
}

impl FromStr for SystemSpec {
    type Err = Error;

    /// Accepts `double:k=4,s=3,m=2` or `double k=4 s=3 m=2`. For `triple`
    /// the key `l` is optional and defaults to 0.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = match text.split_once(':') {
            Some((kind, rest)) => (kind.trim(), rest.to_string()),
            None => {
                let (kind, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
                (kind, rest.split_whitespace().collect::<Vec<_>>().join(","))
            }
        };
        let spec = match kind {
            "single" => {
                let v = parse_key_values(&rest, ',', &["k", "m"])?;
                SystemSpec::Single { k: v[0], m: v[1] }
            }
            "rows" => {
                let v = parse_key_values(&rest, ',', &["n", "k", "m"])?;
                SystemSpec::Rows { n: v[0], k: v[1], m: v[2] }
            }
            "double" => {
                let v = parse_key_values(&rest, ',', &["k", "s", "m"])?;
                SystemSpec::Double { k: v[0], s: v[1], m: v[2] }
            }
            "triple" => {
                let with_l = rest.split(',').any(|p| p.trim().starts_with("l"));
                if with_l {
                    let v = parse_key_values(&rest, ',', &["k", "s", "m", "l"])?;
                    SystemSpec::Triple { k: v[0], s: v[1], m: v[2], l: v[3] }
                } else {
                    let v = parse_key_values(&rest, ',', &["k", "s", "m"])?;
                    SystemSpec::Triple { k: v[0], s: v[1], m: v[2], l: 0 }
                }
            }
            other => return Err(Error::Parse(format!("unknown system kind {other:?}"))),
        };
        if spec.k() == 0 {
            return Err(Error::Parse("k must be at least 1".into()));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn clmul(a: u64, b: u64) -> u64 {
        (0..64).filter(|i| (b >> i) & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
    }

    /// Enumerates every `Y` tuple and every companion tuple.
    fn naive(k: usize, lens: &[usize], q: usize) -> u64 {
        let width = k + lens.iter().sum::<usize>();
        let mut count = 0;
        for word in 0..1u64 << (q * width) {
            let field = |pos: usize, len: usize| (word >> pos) & ((1 << len) - 1);
            let ok = (0..lens.len()).all(|e| {
                let mut acc = 0;
                for i in 0..q {
                    let base = i * width;
                    let off = k + lens[..e].iter().sum::<usize>();
                    acc ^= clmul(field(base, k), field(base + off, lens[e]));
                }
                acc == 0
            });
            count += ok as u64;
        }
        count
    }

    fn lens(spec: &SystemSpec) -> Vec<usize> {
        spec.companions()
            .iter()
            .flat_map(|c| std::iter::repeat(c.len).take(c.multiplicity))
            .collect()
    }

    #[test]
    fn single_system_at_q1() {
        for k in 1..=6 {
            for m in 0..k {
                let got = SystemSpec::Single { k, m }.count(1, Budget::default()).unwrap();
                assert_eq!(got, BigUint::from((1u64 << k) + (1 << (m + 1)) - 1), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn single_system_at_q2() {
        let got = SystemSpec::Single { k: 3, m: 1 }.count(2, Budget::default()).unwrap();
        assert_eq!(got, BigUint::from(160u32));
    }

    #[test]
    fn linearity_count_matches_naive_enumeration() {
        let specs = [
            SystemSpec::Single { k: 2, m: 1 },
            SystemSpec::Rows { n: 2, k: 2, m: 0 },
            SystemSpec::Double { k: 2, s: 1, m: 1 },
            SystemSpec::Triple { k: 2, s: 1, m: 0, l: 1 },
        ];
        for spec in specs {
            for q in 1..=2 {
                let fast = spec.count(q, Budget::default()).unwrap();
                assert_eq!(fast, BigUint::from(naive(spec.k(), &lens(&spec), q)), "{spec} q={q}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let spec = SystemSpec::Double { k: 12, s: 2, m: 1 };
        assert!(matches!(spec.count(3, Budget::new(30)), Err(Error::Budget { .. })));
        assert!(count_solutions(0, &[], 1, Budget::default()).is_err());
    }

    #[test]
    fn parses_both_spellings() {
        let a: SystemSpec = "double:k=4,s=3,m=2".parse().unwrap();
        let b: SystemSpec = "double k=4 s=3 m=2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, SystemSpec::Double { k: 4, s: 3, m: 2 });
        let t: SystemSpec = "triple k=5 s=3 m=0".parse().unwrap();
        assert_eq!(t, SystemSpec::Triple { k: 5, s: 3, m: 0, l: 0 });
        assert!("quad:k=1".parse::<SystemSpec>().is_err());
        assert!("single:k=0,m=0".parse::<SystemSpec>().is_err());
    }

    proptest! {
        #[test]
        fn display_parses_back(k in 1usize..9, s in 0usize..5, m in 0usize..5, l in 0usize..3, kind in 0u8..4) {
            let spec = match kind {
                0 => SystemSpec::Single { k, m },
                1 => SystemSpec::Rows { n: s, k, m },
                2 => SystemSpec::Double { k, s, m },
                _ => SystemSpec::Triple { k, s, m, l },
            };
            prop_assert_eq!(spec.to_string().parse::<SystemSpec>().unwrap(), spec);
        }

        #[test]
        fn zero_tuple_always_counts(k in 1usize..4, s in 1usize..3, m in 0usize..2, q in 1usize..3) {
            let c = SystemSpec::Double { k, s, m }.count(q, Budget::default()).unwrap();
            prop_assert!(c >= BigUint::one());
        }
    }
}
