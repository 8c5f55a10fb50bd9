//! Single persymmetric matrices and persymmetric blocks with free rows.

use num_traits::{One, Zero};

use super::{n, p2, qi, sz, to_int, Cases, FormulaResult, Q};
use crate::error::{Error, Result};

/// Number of `s x k` persymmetric matrices of rank `i`.
pub fn gamma_persym(s: usize, k: usize, i: usize) -> Result<FormulaResult> {
    if i > s.min(k) {
        return Ok(FormulaResult::new(0, "rank bound"));
    }
    if s > k {
        let r = gamma_persym(k, s, i)?;
        return Ok(FormulaResult::new(r.value, format!("{} (transposed)", r.provenance)));
    }
    let (s, k, i) = (sz(s), sz(k), sz(i));
    let mut c = Cases::new("persymmetric");
    c.case(i == 0, "i=0", || n(1))
        .case(1 <= i && i < s, "1<=i<=s-1", || n(3) * p2(2 * (i - 1)))
        .case(i == s, "i=s<=k", || p2(k + s - 1) - p2(2 * s - 2));
    c.first(&format!("s={s} k={k} i={i}"))
}

/// Reorders nested-chain ranks `[(s-1)x(k-1), s x(k-1), (s-1)x k, s x k]`
/// into the 2x2 layout `(top-left, top-right, bottom-left, bottom-right)`
/// used by [`joint_persym_formula`], where rows of the layout add a matrix
/// row and columns add a matrix column.
pub fn quadruple_from_chain(ranks: &[usize]) -> Result<[usize; 4]> {
    match ranks {
        [a, b, c, d] => Ok([*a, *c, *b, *d]),
        _ => Err(Error::Dimension(format!("expected four chain ranks, got {}", ranks.len()))),
    }
}

/// Joint count of the four corner ranks of an `s x k` persymmetric matrix.
///
/// `j = (j1, j2, j3, j4)` are the ranks of the `(s-1)x(k-1)`, `(s-1)x k`,
/// `s x(k-1)` and `s x k` leading submatrices.
pub fn joint_persym_formula(s: usize, k: usize, j: [usize; 4]) -> Result<FormulaResult> {
    if s == 0 || s > k {
        return Err(Error::Domain(format!("joint corner counts need 1 <= s <= k, got s={s} k={k}")));
    }
    let (s, k) = (sz(s), sz(k));
    let [j1, j2, j3, j4] = j.map(sz);
    let mut c = Cases::new("joint corner ranks");
    c.case(j1 == 0 && j2 == 0 && j3 == 0 && j4 == 0, "all zero", || n(1))
        .case(
            j1 == j2 && j2 == j3 && (j4 == j1 || j4 == j1 + 1) && 1 <= j1 && j1 < s,
            "(j,j,j,j or j+1), 1<=j<=s-1",
            || p2(2 * j1 - 1),
        )
        .case(
            j4 >= 2 && j4 <= s && j1 == j4 - 2 && j2 == j4 - 1 && j3 == j4 - 1,
            "(j-2,j-1,j-1,j), 2<=j<=s",
            || p2(2 * j4 - 3),
        )
        .case(j1 == s - 1 && j2 == s - 1 && j3 == s && j4 == s, "(s-1,s-1,s,s)", || {
            p2(k + s - 1) - p2(2 * s - 1)
        })
        .case(true, "otherwise", || n(0));
    c.first("")
}

/// The coefficient `a_j^(n)` of the free-rows expansion, from its
/// alternating-sum definition.
pub fn a_coeff(n_rows: usize, j: usize) -> Result<FormulaResult> {
    if j > n_rows {
        return Err(Error::Domain(format!("a_j^(n) needs 0 <= j <= n, got n={n_rows} j={j}")));
    }
    if j == 0 || j == n_rows {
        return Ok(FormulaResult::new(1, "boundary coefficient"));
    }
    let (nn, j) = (sz(n_rows), sz(j));
    let mut total = Q::zero();
    for s in 0..j {
        let mut prod = Q::one();
        for l in 0..=(j - (s + 1)) {
            prod *= (p2(nn + 1) - p2(l)) / (p2(j - s) - p2(l));
        }
        let term = prod * p2(s * (nn - j) + s * (s + 1) / 2);
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let tail = p2(j * nn - j * (j - 1) / 2);
    if j % 2 == 0 {
        total += tail;
    } else {
        total -= tail;
    }
    Ok(FormulaResult::new(to_int(&total, "a_coeff")?, "alternating sum"))
}

/// Number of rank-`i` matrices made of a `(1+m) x k` persymmetric block over
/// `n` arbitrary rows, as a combination of single-block counts.
pub fn gamma_persym_rows(n_rows: usize, m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if i > k.min(n_rows + m + 1) {
        return Ok(FormulaResult::new(0, "rank bound"));
    }
    let mut total = Q::zero();
    for j in 0..=n_rows.min(i) {
        let base = gamma_persym(1 + m, k, i - j)?.value;
        if base.is_zero() {
            continue;
        }
        let a = a_coeff(n_rows, j)?.value;
        let mut term = p2(sz((n_rows - j) * (i - j))) * qi(&a) * qi(&base);
        for l in 1..=j {
            term *= p2(sz(k)) - p2(sz(i) - sz(l));
        }
        total += term;
    }
    Ok(FormulaResult::new(to_int(&total, "free-rows expansion")?, "free-rows expansion"))
}

/// The explicit case tables for a persymmetric block over one free row.
pub fn gamma_persym_one_row(m: usize, k: usize, i: usize) -> Result<FormulaResult> {
    if i > k.min(m + 2) {
        return Ok(FormulaResult::new(0, "rank bound"));
    }
    one_row_table(m, k, i).first(&format!("m={m} k={k} i={i}"))
}

/// Every case of [`gamma_persym_one_row`] whose guard holds.
pub fn gamma_persym_one_row_cases(m: usize, k: usize, i: usize) -> Result<Vec<FormulaResult>> {
    one_row_table(m, k, i).all()
}

fn one_row_table(m: usize, k: usize, i: usize) -> Cases {
    let (m, k, i) = (sz(m), sz(k), sz(i));
    let mut c = Cases::new("one free row");
    // k = 2
    c.case(k == 2 && i == 0, "k=2, i=0", || n(1))
        .case(k == 2 && i == 1, "k=2, i=1", || n(9))
        .case(k == 2 && i == 2, "k=2, i=2", || p2(4 + m) - n(10));
    // m = 0
    c.case(m == 0 && k >= 2 && i == 0, "m=0, i=0", || n(1))
        .case(m == 0 && k >= 2 && i == 1, "m=0, i=1", || n(3) * (p2(k) - n(1)))
        .case(m == 0 && k >= 2 && i == 2, "m=0, i=2", || p2(2 * k) - n(3) * p2(k) + n(2));
    // m = 1
    c.case(m == 1 && k >= 3 && i == 0, "m=1, i=0", || n(1))
        .case(m == 1 && k >= 3 && i == 1, "m=1, i=1", || p2(k) + n(5))
        .case(m == 1 && k >= 3 && i == 2, "m=1, i=2", || n(11) * (p2(k) - n(2)))
        .case(m == 1 && k >= 3 && i == 3, "m=1, i=3", || {
            p2(2 * k + 1) - n(3) * p2(k + 2) + p2(4)
        });
    // 3 <= k <= 1+m
    let narrow = 3 <= k && k <= 1 + m;
    c.case(narrow && i == 0, "3<=k<=1+m, i=0", || n(1))
        .case(narrow && i == 1, "3<=k<=1+m, i=1", || p2(k) + n(5))
        .case(narrow && 2 <= i && i < k, "3<=k<=1+m, 2<=i<=k-1", || {
            n(3) * p2(k + 2 * i - 4) + n(21) * p2(3 * i - 5)
        })
        .case(narrow && i == k, "3<=k<=1+m, i=k", || p2(2 * k + m) - n(5) * p2(3 * k - 5));
    // 2 <= m <= k-2
    let wide = 2 <= m && m <= k - 2;
    c.case(wide && i == 0, "2<=m<=k-2, i=0", || n(1))
        .case(wide && i == 1, "2<=m<=k-2, i=1", || p2(k) + n(5))
        .case(wide && 2 <= i && i <= m, "2<=m<=k-2, 2<=i<=m", || {
            n(3) * p2(k + 2 * i - 4) + n(21) * p2(3 * i - 5)
        })
        .case(wide && i == m + 1, "2<=m<=k-2, i=m+1", || {
            n(11) * (p2(k + 2 * m - 2) - p2(3 * m - 2))
        })
        .case(wide && i == m + 2, "2<=m<=k-2, i=m+2", || {
            p2(2 * k + m) - n(3) * p2(k + 2 * m) + p2(3 * m + 1)
        });
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::rank_census;
    use crate::families::FamilyShape;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn small_tables() {
        let got: Vec<BigInt> = (0..=2).map(|i| gamma_persym(2, 2, i).unwrap().value).collect();
        assert_eq!(got, [1, 3, 4].map(BigInt::from));
        let rows: Vec<BigInt> = (0..=3).map(|i| gamma_persym_rows(1, 2, 3, i).unwrap().value).collect();
        assert_eq!(rows, [1, 13, 66, 176].map(BigInt::from));
    }

    #[test]
    fn expansion_coefficients_are_gaussian_binomials() {
        let expect: [&[i64]; 5] = [&[1, 1], &[1, 3, 1], &[1, 7, 7, 1], &[1, 15, 35, 15, 1], &[1, 31, 155, 155, 31, 1]];
        for (idx, row) in expect.iter().enumerate() {
            let n_rows = idx + 1;
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(a_coeff(n_rows, j).unwrap().value, BigInt::from(want), "n={n_rows} j={j}");
            }
        }
        assert!(a_coeff(2, 3).is_err());
    }

    #[test]
    fn free_rows_expansion_matches_census() {
        for n_rows in 1..=3 {
            for m in 0..=2 {
                for k in 1..=5 {
                    let dist = rank_census(&FamilyShape::rows(n_rows, m, k)).unwrap();
                    for i in 0..=k {
                        let want: BigInt = dist.get(i).into();
                        assert_eq!(gamma_persym_rows(n_rows, m, k, i).unwrap().value, want, "n={n_rows} m={m} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn one_row_table_agrees_with_expansion() {
        for m in 0..=5 {
            for k in 2..=9 {
                for i in 0..=k.min(m + 2) {
                    let table = gamma_persym_one_row_cases(m, k, i).unwrap();
                    let expansion = gamma_persym_rows(1, m, k, i).unwrap().value;
                    for r in table {
                        assert_eq!(r.value, expansion, "m={m} k={k} i={i} via {}", r.provenance);
                    }
                }
            }
        }
    }

    #[test]
    fn joint_corner_counts_sum_to_total() {
        for s in 2..=5 {
            for k in s..=7 {
                let mut total = BigInt::zero();
                for a in 0..=s {
                    for b in 0..=s {
                        for c in 0..=s {
                            for d in 0..=s {
                                total += joint_persym_formula(s, k, [a, b, c, d]).unwrap().value;
                            }
                        }
                    }
                }
                // the case table has no row for (0,0,0,1), realised only by
                // the matrix whose sole nonzero entry is the last one
                assert_eq!(joint_persym_formula(s, k, [0, 0, 0, 1]).unwrap().value, BigInt::zero());
                assert_eq!(total + 1, BigInt::one() << (s + k - 1), "s={s} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn single_counts_sum_to_space(s in 1usize..20, k in 1usize..20) {
            let total: BigInt = (0..=s.min(k)).map(|i| gamma_persym(s, k, i).unwrap().value).sum();
            prop_assert_eq!(total, BigInt::one() << (s + k - 1));
        }

        #[test]
        fn free_rows_counts_sum_to_space(n_rows in 1usize..6, m in 0usize..6, k in 1usize..14) {
            let total: BigInt = (0..=k).map(|i| gamma_persym_rows(n_rows, m, k, i).unwrap().value).sum();
            prop_assert_eq!(total, BigInt::one() << (k + m + n_rows * k));
        }
    }
}
