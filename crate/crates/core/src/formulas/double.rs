//! Two stacked persymmetric blocks of heights `s` and `s+m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::persym::gamma_persym;
use super::triple::gamma_triple;
use super::{n, p2, qi, sz, to_int, Cases, FormulaResult, Q};
use crate::census::CensusCache;
use crate::error::{Error, Result};
use crate::families::FamilyShape;

/// Supplies `Gamma_i` of a sub-family inside a recurrence.
pub type Terms<'a> = dyn Fn(&FamilyShape, usize) -> Result<BigInt> + 'a;

/// Closed forms where a guard covers the argument, census otherwise.
pub fn closed_form_terms(cache: &CensusCache) -> impl Fn(&FamilyShape, usize) -> Result<BigInt> + '_ {
    move |shape, i| {
        if i > shape.max_rank() {
            return Ok(BigInt::zero());
        }
        let closed = match *shape {
            FamilyShape::Single { s, k } => gamma_persym(s, k, i),
            FamilyShape::Double { s: 0, m, k } => gamma_persym(m, k, i),
            FamilyShape::Double { s, m, k } => gamma_double(s, m, k, i),
            FamilyShape::Triple { s, m, l: 0, k } if s > 0 => gamma_triple(s, m, k, i),
            _ => Err(Error::not_covered(shape.to_string(), "census")),
        };
        match closed {
            Ok(r) => Ok(r.value),
            Err(Error::NotCovered { .. }) => Ok(cache.rank(shape)?.get(i).into()),
            Err(e) => Err(e),
        }
    }
}

/// Every term taken from an exhaustive census.
pub fn census_terms(cache: &CensusCache) -> impl Fn(&FamilyShape, usize) -> Result<BigInt> + '_ {
    move |shape, i| {
        if i > shape.max_rank() {
            return Ok(BigInt::zero());
        }
        Ok(cache.rank(shape)?.get(i).into())
    }
}

fn check_double(s: usize, k: usize) -> Result<()> {
    if s == 0 || k == 0 {
        return Err(Error::Domain(format!("double blocks need s >= 1 and k >= 1, got s={s} k={k}")));
    }
    Ok(())
}

/// Number of rank-`i` matrices stacking `s x k` and `(s+m) x k`
/// persymmetric blocks.
pub fn gamma_double(s: usize, m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    check_double(s, k)?;
    if i > k.min(2 * s + m) {
        return Ok(FormulaResult::new(0, "rank bound"));
    }
    double_table(s, m, k, i).first(&format!("s={s} m={m} k={k} i={i}"))
}

/// Every closed-form case for the double family whose guard holds.
pub fn gamma_double_cases(s: usize, m: usize, k: usize, i: usize) -> Result<Vec<FormulaResult>> {
    check_double(s, k)?;
    double_table(s, m, k, i).all()
}

fn double_table(s: usize, m: usize, k: usize, i: usize) -> Cases {
    let (s, m, k, i) = (sz(s), sz(m), sz(k), sz(i));
    let mut c = Cases::new(format!("double m={}", if m >= 2 { "2+".to_string() } else { m.to_string() }));
    let wide = k > i;
    let square = k == i;
    match m {
        0 => {
            c.case(i == 0 && k >= 1, "i=0", || n(1))
                .case(1 <= i && i < s && wide, "k>i, 1<=i<=s-1", || {
                    n(21) * p2(3 * i - 4) - n(3) * p2(2 * i - 3)
                })
                .case(i == s && wide, "k>i, i=s", || {
                    n(3) * p2(k + s - 1) + n(21) * p2(3 * s - 4) - n(27) * p2(2 * s - 3)
                })
                .case(s < i && i < 2 * s && wide, "k>i, s+1<=i<=2s-1", || {
                    n(21) * (p2(k - 2 * s + 3 * i - 4) + p2(3 * i - 4) - n(5) * p2(4 * i - 2 * s - 5))
                })
                .case(i == 2 * s && wide, "k>i, i=2s", || {
                    p2(2 * k + 2 * s - 2) - n(3) * p2(k + 4 * s - 4) + p2(6 * s - 5)
                })
                .case(square && 1 <= i && i <= s, "k=i, 1<=i<=s", || {
                    p2(2 * s + 2 * i - 2) - n(3) * p2(3 * i - 4) + p2(2 * i - 3)
                })
                .case(square && s < i && i <= 2 * s, "k=i, s+1<=i<=2s", || {
                    p2(2 * s + 2 * i - 2) - n(3) * p2(3 * i - 4) + p2(4 * i - 2 * s - 5)
                });
        }
        1 => {
            c.case(i == 0 && k >= 1, "i=0", || n(1))
                .case(1 <= i && i < s && wide, "k>i, 1<=i<=s-1", || {
                    n(21) * p2(3 * i - 4) - n(3) * p2(2 * i - 3)
                })
                .case(i == s && wide, "k>i, i=s", || {
                    p2(k + s - 1) + n(21) * p2(3 * s - 4) - n(11) * p2(2 * s - 3)
                })
                .case(i == s + 1 && wide, "k>i, i=s+1", || {
                    n(11) * p2(k + s - 1) + n(21) * p2(3 * s - 1) - n(53) * p2(2 * s - 1)
                })
                .case(s + 2 <= i && i <= 2 * s && wide, "k>i, s+2<=i<=2s", || {
                    n(21) * (p2(k - 2 * s + 3 * i - 5) + p2(3 * i - 4) - n(5) * p2(4 * i - 2 * s - 6))
                })
                .case(i == 2 * s + 1 && wide, "k>i, i=2s+1", || {
                    p2(2 * k + 2 * s - 1) - n(3) * p2(k + 4 * s - 2) + p2(6 * s - 2)
                })
                .case(square && 1 <= i && i <= s + 1, "k=i, 1<=i<=s+1", || {
                    p2(2 * s + 2 * i - 1) - n(3) * p2(3 * i - 4) + p2(2 * i - 3)
                })
                .case(square && s + 2 <= i && i <= 2 * s + 1, "k=i, s+2<=i<=2s+1", || {
                    p2(2 * s + 2 * i - 1) - n(3) * p2(3 * i - 4) + p2(4 * i - 2 * s - 6)
                });
        }
        _ => {
            c.case(i == 0 && k >= 1, "i=0", || n(1))
                .case(1 <= i && i < s && wide, "k>i, 1<=i<=s-1", || {
                    n(21) * p2(3 * i - 4) - n(3) * p2(2 * i - 3)
                })
                .case(i == s && wide, "k>i, i=s", || {
                    p2(k + s - 1) + n(21) * p2(3 * s - 4) - n(11) * p2(2 * s - 3)
                })
                .case(s < i && i < s + m && wide, "k>i, s+1<=i<=s+m-1", || {
                    n(3) * p2(k - s + 2 * i - 3) + n(21) * (p2(3 * i - 4) - p2(3 * i - s - 4))
                })
                .case(i == s + m && wide, "k>i, i=s+m", || {
                    n(11) * p2(k + s + 2 * m - 3) + n(21) * p2(3 * s + 3 * m - 4)
                        - n(53) * p2(2 * s + 3 * m - 4)
                })
                .case(s + m < i && i < 2 * s + m && wide, "k>i, s+m+1<=i<=2s+m-1", || {
                    n(21)
                        * (p2(k - 2 * s + 3 * i - m - 4) + p2(3 * i - 4)
                            - n(5) * p2(4 * i - 2 * s - m - 5))
                })
                .case(i == 2 * s + m && wide, "k>i, i=2s+m", || {
                    p2(2 * k + 2 * s + m - 2) - n(3) * p2(k + 4 * s + 2 * m - 4) + p2(6 * s + 3 * m - 5)
                })
                .case(square && 1 <= i && i <= s + 1, "k=i, 1<=i<=s+1", || {
                    p2(2 * s + 2 * i + m - 2) - n(3) * p2(3 * i - 4) + p2(2 * i - 3)
                })
                .case(square && s + 2 <= i && i <= s + m + 1, "k=i, s+2<=i<=s+m+1", || {
                    p2(2 * s + 2 * i + m - 2) - n(3) * p2(3 * i - 4) + p2(3 * i - s - 4)
                })
                .case(square && s + m + 2 <= i && i <= 2 * s + m, "k=i, s+m+2<=i<=2s+m", || {
                    p2(2 * s + 2 * i + m - 2) - n(3) * p2(3 * i - 4) + p2(4 * i - 2 * s - m - 5)
                });
        }
    }
    c
}

/// `Gamma_j` of the `[s-1 over s-1+m] x j` family, with `Gamma_0` of the
/// empty zero-column family taken as 1.
fn shrunk_square(s: usize, m: usize, j: i64, terms: &Terms<'_>) -> Result<Q> {
    if j < 0 {
        return Ok(Q::zero());
    }
    if j == 0 {
        return Ok(Q::one());
    }
    let shape = FamilyShape::double(s - 1, m, j as usize);
    Ok(qi(&terms(&shape, j as usize)?))
}

/// Remainder term of the double recurrence, from its closed form.
pub fn delta_double(s: usize, m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    let cache = CensusCache::default();
    let terms = closed_form_terms(&cache);
    delta_double_with(s, m, k, i, &terms)
}

pub fn delta_double_with(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<FormulaResult> {
    let c = delta_table(s, m, k, i, terms)?;
    c.first(&format!("s={s} m={m} k={k} i={i}"))
}

/// Every case of the remainder's closed form whose guard holds.
pub fn delta_double_cases(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<Vec<FormulaResult>> {
    delta_table(s, m, k, i, terms)?.all()
}

fn delta_table(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<Cases> {
    if s < 2 || k == 0 {
        return Err(Error::Domain(format!("remainder needs s >= 2 and k >= 1, got s={s} k={k}")));
    }
    let g = |j: i64| shrunk_square(s, m, j, terms);
    let top = sz(2 * s + m);
    let (k, i) = (sz(k), sz(i));
    let mut c = Cases::new("double remainder");
    c.case(i == 0 && k >= 1, "i=0", || n(1));
    c.case_try(i == 1 && k >= 2, "i=1, k>=2", || Ok(n(4) * g(1)? - g(2)? - n(3)))?;
    c.case_try(i == 1 && k == 1, "i=1, k=1", || Ok(n(4) * g(1)? - n(3)))?;
    c.case_try(i == 2 && k >= 3, "i=2, k>=3", || {
        Ok(n(7) * g(2)? - n(12) * g(1)? - g(3)? + n(2))
    })?;
    c.case_try(i == 2 && k == 2, "i=2, k=2", || Ok(n(7) * g(2)? - n(12) * g(1)? + n(2)))?;
    c.case_try(3 <= i && i <= top - 3 && k > i, "3<=i<=2s+m-3, k>=i+1", || {
        Ok(n(7) * g(i)? - n(14) * g(i - 1)? + n(8) * g(i - 2)? - g(i + 1)?)
    })?;
    c.case_try(3 <= i && i <= top - 3 && k == i, "3<=i<=2s+m-3, k=i", || {
        Ok(n(7) * g(i)? - n(14) * g(i - 1)? + n(8) * g(i - 2)?)
    })?;
    c.case_try(i == top - 2 && k >= i, "i=2s+m-2, k>=i", || {
        Ok(n(7) * g(top - 2)? - n(14) * g(top - 3)? + n(8) * g(top - 4)?)
    })?;
    c.case_try(i == top - 1 && k >= i, "i=2s+m-1, k>=i", || {
        Ok(n(8) * g(top - 3)? - n(14) * g(top - 2)?)
    })?;
    c.case_try(i == top && k >= i, "i=2s+m, k>=i", || Ok(n(8) * g(top - 2)?))?;
    Ok(c)
}

/// Count of parameter pairs whose nested-chain ranks all equal `i`, from
/// its closed form in terms of the shrunken family.
pub fn sigma_formula(s: usize, m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    let cache = CensusCache::default();
    let terms = closed_form_terms(&cache);
    sigma_formula_with(s, m, k, i, &terms)
}

pub fn sigma_formula_with(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<FormulaResult> {
    sigma_table(s, m, k, i, terms)?.first(&format!("s={s} m={m} k={k} i={i}"))
}

pub fn sigma_formula_cases(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<Vec<FormulaResult>> {
    sigma_table(s, m, k, i, terms)?.all()
}

fn sigma_table(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<Cases> {
    if s < 2 || k == 0 {
        return Err(Error::Domain(format!("diagonal counts need s >= 2 and k >= 1, got s={s} k={k}")));
    }
    let mut c = Cases::new("double diagonal");
    if i > k.min(2 * s + m - 2) {
        c.case(true, "rank bound", || n(0));
        return Ok(c);
    }
    let g = |j: i64| shrunk_square(s, m, j, terms);
    let low = sz(2 * s + m - 2);
    let (k, i) = (sz(k), sz(i));
    let narrow = 1 <= k && k <= low;
    let wide = k >= low;
    c.case(narrow && i == 0, "k<=2s+m-2, i=0", || n(1));
    c.case_try(narrow && 1 <= i && i < k, "k<=2s+m-2, 1<=i<=k-1", || Ok(n(4) * g(i)? - g(i + 1)?))?;
    c.case_try(narrow && i == k, "k<=2s+m-2, i=k", || Ok(n(4) * g(k)?))?;
    c.case(wide && i == 0, "k>=2s+m-2, i=0", || n(1));
    c.case_try(wide && 1 <= i && i < low, "k>=2s+m-2, 1<=i<=2s+m-3", || Ok(n(4) * g(i)? - g(i + 1)?))?;
    c.case_try(wide && i == low, "k>=2s+m-2, i=2s+m-2", || Ok(n(4) * g(low)?))?;
    Ok(c)
}

/// `Gamma_i` of the double family through the row-removal recurrence, with
/// the remainder from its closed form.
pub fn gamma_double_recur(s: usize, m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    let cache = CensusCache::default();
    let terms = closed_form_terms(&cache);
    gamma_double_recur_with(s, m, k, i, &terms)
}

pub fn gamma_double_recur_with(s: usize, m: usize, k: usize, i: usize, terms: &Terms<'_>) -> Result<FormulaResult> {
    if s < 2 || k == 0 {
        return Err(Error::Domain(format!("the recurrence needs s >= 2 and k >= 1, got s={s} k={k}")));
    }
    if i > k.min(2 * s + m) {
        return Ok(FormulaResult::new(0, "rank bound"));
    }
    let term = |heights: [usize; 2], rank: i64| -> Result<Q> {
        if rank < 0 {
            return Ok(Q::zero());
        }
        let shape = FamilyShape::double_from_heights(heights, k);
        Ok(qi(&terms(&shape, rank as usize)?))
    };
    let ii = sz(i);
    let delta = delta_double_with(s, m, k, i, terms)?;
    let value = n(2) * term([s - 1, s + m], ii - 1)? + n(4) * term([s, s + m - 1], ii - 1)?
        - n(8) * term([s - 1, s - 1 + m], ii - 2)?
        + qi(&delta.value);
    Ok(FormulaResult::new(
        to_int(&value, "double recurrence")?,
        format!("double recurrence, remainder {}", delta.provenance),
    ))
}

/// Remainder computed from census diagonals of the nested chain.
pub fn delta_double_census(s: usize, m: usize, k: usize, i: usize, cache: &CensusCache) -> Result<BigInt> {
    if s == 0 {
        return Err(Error::Domain("remainder needs s >= 1".into()));
    }
    let shape = FamilyShape::double(s, m, k);
    let table = cache.joint(&shape, &crate::families::nested_chain(&shape)?)?;
    let sigma = |j: i64| -> BigInt {
        if j < 0 {
            BigInt::zero()
        } else {
            table.diagonal(j as usize).into()
        }
    };
    let i = sz(i);
    Ok(sigma(i) - 3 * sigma(i - 1) + 2 * sigma(i - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::Budget;
    use proptest::prelude::*;

    fn table(s: usize, m: usize, k: usize) -> Vec<BigInt> {
        (0..=k.min(2 * s + m)).map(|i| gamma_double(s, m, k, i).unwrap().value).collect()
    }

    #[test]
    fn worked_tables() {
        assert_eq!(table(3, 2, 4), [1, 9, 78, 648, 15648].map(BigInt::from));
        assert_eq!(table(5, 0, 6), [1, 9, 78, 648, 5280, 42624, 999936].map(BigInt::from));
    }

    #[test]
    fn closed_forms_match_census_on_small_shapes() {
        let cache = CensusCache::new(Budget::new(22));
        for s in 1..=3 {
            for m in 0..=2 {
                for k in 1..=6 {
                    let dist = cache.rank(&FamilyShape::double(s, m, k)).unwrap();
                    for i in 0..=k {
                        let want: BigInt = dist.get(i).into();
                        assert_eq!(gamma_double(s, m, k, i).unwrap().value, want, "s={s} m={m} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn recurrence_reproduces_closed_forms() {
        let cache = CensusCache::new(Budget::new(22));
        let terms = closed_form_terms(&cache);
        for s in 2..=3 {
            for m in 0..=2 {
                for k in 1..=6 {
                    for i in 0..=k.min(2 * s + m) {
                        let r = gamma_double_recur_with(s, m, k, i, &terms).unwrap();
                        assert_eq!(r.value, gamma_double(s, m, k, i).unwrap().value, "s={s} m={m} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn remainder_formula_matches_census_remainder() {
        let cache = CensusCache::new(Budget::new(22));
        let terms = closed_form_terms(&cache);
        for s in 2..=3 {
            for m in 0..=2 {
                for k in 1..=6 {
                    for i in 0..=k.min(2 * s + m) {
                        let formula = delta_double_with(s, m, k, i, &terms).unwrap().value;
                        assert_eq!(formula, delta_double_census(s, m, k, i, &cache).unwrap(), "s={s} m={m} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_arguments_are_rejected() {
        assert!(matches!(gamma_double(0, 1, 3, 0), Err(Error::Domain(_))));
        assert_eq!(gamma_double(1, 0, 3, 3).unwrap().value, BigInt::zero());
    }

    proptest! {
        #[test]
        fn counts_sum_to_space(s in 1usize..7, m in 0usize..6, k in 1usize..22) {
            let total: BigInt = table(s, m, k).into_iter().sum();
            prop_assert_eq!(total, BigInt::one() << (2 * k + 2 * s + m - 2));
        }

        #[test]
        fn overlapping_cases_agree(s in 1usize..7, m in 0usize..6, k in 1usize..22, i in 0usize..22) {
            if let Ok(all) = gamma_double_cases(s, m, k, i) {
                for w in all.windows(2) {
                    prop_assert_eq!(&w[0].value, &w[1].value);
                }
            }
        }
    }
}
