//! Smith normal form over `Z`.
//!
//! Two phases. Unit pivots are eliminated on the sparse column list first,
//! which disposes of nearly everything in a bar or resolution differential.
//! Whatever survives is small and dense and goes through the textbook
//! minimal-pivot reduction.

use std::collections::HashSet;

use num_bigint::BigInt;

use super::int::Int;
use super::{axpy, columns_of, Integers, SparseVec};
use crate::coeff::RingSpec;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Invariant factors of a matrix; over a field only the rank is meaningful
/// and every factor is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        let one = BigInt::from(1);
        self.factors.iter().filter(|f| **f != one).cloned().collect()
    }
}

/// Diagonal of the Smith form of `m`.
pub fn smith_normal_form(m: &Matrix) -> Result<SnfResult> {
    match m.ring() {
        RingSpec::Integers => Ok(SnfResult {
            factors: invariant_factors(m)?.iter().map(Int::to_big).collect(),
        }),
        ring if ring.is_field() => Ok(SnfResult {
            factors: vec![BigInt::from(1); super::rank(m)?],
        }),
        other => Err(Error::UnsupportedRing(other.to_string())),
    }
}

/// Nonzero invariant factors of an integer matrix, ascending.
pub(crate) fn invariant_factors(m: &Matrix) -> Result<Vec<Int>> {
    if m.ring() != RingSpec::Integers {
        return Err(Error::UnsupportedRing(m.ring().to_string()));
    }
    Ok(invariant_factors_of_columns(m.nrows(), columns_of(&Integers, m)?))
}

/// Invariant factors of the matrix with the given sparse columns, whose
/// entries index `0..nrows`.
pub fn invariant_factors_of_columns(nrows: usize, columns: Vec<SparseVec<Int>>) -> Vec<Int> {
    let (units, rest) = eliminate_units(nrows, columns);
    let mut factors = vec![Int::ONE; units];
    if !rest.is_empty() {
        // compress to the rows still in use
        let mut used: Vec<usize> = rest.iter().flat_map(|c| c.iter().map(|e| e.0)).collect();
        used.sort_unstable();
        used.dedup();
        let mut dense = vec![vec![Int::ZERO; rest.len()]; used.len()];
        for (j, col) in rest.iter().enumerate() {
            for (i, v) in col {
                let r = used.binary_search(i).expect("row recorded");
                dense[r][j] = v.clone();
            }
        }
        factors.extend(dense_invariant_factors(dense));
    }
    factors
}

/// Pivots on unit entries until none remain. Returns the number of pivots
/// and the nonzero leftover columns.
fn eliminate_units(nrows: usize, columns: Vec<SparseVec<Int>>) -> (usize, Vec<SparseVec<Int>>) {
    let mut cols: Vec<Option<SparseVec<Int>>> = columns.into_iter().map(|c| (!c.is_empty()).then_some(c)).collect();
    let mut by_row: Vec<HashSet<usize>> = vec![HashSet::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, _) in c.iter().flatten() {
            by_row[*i].insert(j);
        }
    }
    let mut order: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].is_some()).collect();
    order.sort_by_key(|&j| cols[j].as_ref().map_or(0, Vec::len));
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for &j in &order {
            let Some(col) = cols[j].as_ref() else { continue };
            let Some(row) = col
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(i, _)| by_row[*i].len())
                .map(|e| e.0)
            else {
                continue;
            };
            let pivot_col = cols[j].take().expect("live column");
            for (i, _) in &pivot_col {
                by_row[*i].remove(&j);
            }
            let u = pivot_col.iter().find(|e| e.0 == row).expect("pivot entry").1.clone();
            let others: Vec<usize> = by_row[row].iter().copied().collect();
            for k in others {
                let old = cols[k].take().expect("indexed column is live");
                let c = old.iter().find(|e| e.0 == row).expect("indexed entry").1.clone();
                // u is ±1, so c/u = c·u
                let new = axpy(&Integers, &old, &c.mul(&u).neg(), &pivot_col);
                for (i, _) in &old {
                    by_row[*i].remove(&k);
                }
                for (i, _) in &new {
                    by_row[*i].insert(k);
                }
                if !new.is_empty() {
                    cols[k] = Some(new);
                }
            }
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    (pivots, cols.into_iter().flatten().collect())
}

/// Invariant factors of a dense matrix.
///
/// Fraction-free elimination gives the rank `r` and a nonzero `r × r` minor
/// `D`. Every invariant factor divides `D`, so they are the first `r`
/// factors of the lattice spanned by the columns together with `D Z^m`, in
/// which entries can be kept reduced mod `D`.
pub(crate) fn dense_invariant_factors(a: Vec<Vec<Int>>) -> Vec<Int> {
    let (r, d) = rank_and_minor(a.clone());
    if r == 0 {
        return Vec::new();
    }
    if d.is_unit() {
        return vec![Int::ONE; r];
    }
    let mut f = modular_invariant_factors(a, &d);
    // a block vanishing mod D still carries D e_i, so its factors are D
    f.resize(r.max(f.len()), d);
    f.truncate(r);
    f
}

/// Bareiss elimination with full pivoting: the rank and the absolute value
/// of the last pivot, which is a nonzero minor of that size.
fn rank_and_minor(mut a: Vec<Vec<Int>>) -> (usize, Int) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Int::ONE;
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, k, k) else { return (k, prev.abs()) };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot = &head[k];
        for row in tail.iter_mut() {
            let c = row[k].clone();
            for j in k + 1..cols {
                let v = row[j].mul(&pivot[k]).sub(&c.mul(&pivot[j]));
                row[j] = v.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            row[k] = Int::ZERO;
        }
        prev = a[k][k].clone();
    }
    (rows.min(cols), prev.abs())
}

fn center(x: &Int, d: &Int) -> Int {
    let (_, r) = x.div_mod_floor(d);
    if r.add(&r).cmp_abs(d).is_gt() {
        r.sub(d)
    } else {
        r
    }
}

/// Invariant factors of the column lattice plus `D Z^m`, with every entry
/// centered mod `D`. Each off-pivot entry is cleared by one `2 × 2`
/// unimodular Bezout step instead of a chain of Euclidean reductions.
fn modular_invariant_factors(mut a: Vec<Vec<Int>>, d: &Int) -> Vec<Int> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v = center(v, d);
        }
    }
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (x, y) = (a[t][t].clone(), a[i][t].clone());
                let (top, bottom) = a.split_at_mut(i);
                combine(&x, &y, d, &mut top[t][t..], &mut bottom[0][t..]);
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (x, y) = (a[t][t].clone(), a[t][j].clone());
                let mut ct: Vec<Int> = a[t..].iter().map(|r| r[t].clone()).collect();
                let mut cj: Vec<Int> = a[t..].iter().map(|r| r[j].clone()).collect();
                combine(&x, &y, d, &mut ct, &mut cj);
                for (r, (u, v)) in a[t..].iter_mut().zip(ct.into_iter().zip(cj)) {
                    r[t] = u;
                    r[j] = v;
                }
            }
            if (t + 1..rows).any(|i| !a[i][t].is_zero()) {
                continue;
            }
            // the D e_t column folds into the pivot
            let (g, _, _) = a[t][t].extended_gcd(d);
            a[t][t] = g;
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j].div_exact(&a[t][t]).is_none()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].add(&a[i][j]);
                        a[t][j] = center(&v, d);
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Replaces the pair of lines `(p, q)`, whose leading entries are `x` and
/// `y`, by a unimodular combination whose second leading entry is zero.
fn combine(x: &Int, y: &Int, d: &Int, p: &mut [Int], q: &mut [Int]) {
    if let Some(k) = y.div_exact(x) {
        for (pv, qv) in p.iter().zip(q.iter_mut()) {
            *qv = center(&qv.sub(&k.mul(pv)), d);
        }
        return;
    }
    let (g, s, u) = x.extended_gcd(y);
    let (xg, yg) = (x.div_exact(&g).expect("gcd divides"), y.div_exact(&g).expect("gcd divides"));
    for (pv, qv) in p.iter_mut().zip(q.iter_mut()) {
        let np = s.mul(pv).add(&u.mul(qv));
        let nq = xg.mul(qv).sub(&yg.mul(pv));
        *pv = center(&np, d);
        *qv = center(&nq, d);
    }
}

fn min_entry(a: &[Vec<Int>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.cmp_abs(&a[bi][bj]).is_lt()) {
                best = Some((i, j));
                if v.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf_rows(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = Matrix::from_rows(RingSpec::Integers, rows);
        smith_normal_form(&m)
            .unwrap()
            .factors
            .iter()
            .map(|f| i64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf_rows(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf_rows(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(snf_rows(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf_rows(&[vec![6, 4], vec![4, 6]]), vec![2, 10]);
    }

    #[test]
    fn field_matrices_report_rank_only() {
        let m = Matrix::from_rows(RingSpec::ModM(2), &[vec![2, 4], vec![6, 9]]);
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.rank(), 1);
        assert!(r.torsion().is_empty());
    }

    /// gcd of all k×k minors, by brute-force determinants.
    fn minor_gcd(a: &[Vec<i64>], k: usize) -> i128 {
        fn det(m: &[Vec<i128>]) -> i128 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let sub: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| *v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&sub)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
        }
        let mut g: i128 = 0;
        for rs in subsets(a.len(), k) {
            for cs in subsets(a[0].len(), k) {
                let m: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect()).collect();
                g = num_integer::Integer::gcd(&g, &det(&m));
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn divisibility_chain_and_rank(rows in 1usize..=6, cols in 1usize..=6, seed in proptest::collection::vec(-9i64..=9, 36)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let f = snf_rows(&a);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(f.iter().all(|x| *x > 0));
            let q = Matrix::from_rows(RingSpec::Rationals, &a);
            prop_assert_eq!(f.len(), super::super::rank(&q).unwrap());
        }

        #[test]
        fn factors_match_minor_gcds(seed in proptest::collection::vec(-6i64..=6, 16)) {
            let a: Vec<Vec<i64>> = seed.chunks(4).map(<[i64]>::to_vec).collect();
            let f = snf_rows(&a);
            let mut prod: i128 = 1;
            for k in 1..=4 {
                let g = minor_gcd(&a, k);
                if g == 0 {
                    prop_assert!(f.len() < k);
                    break;
                }
                prod *= f[k - 1] as i128;
                prop_assert_eq!(prod, g);
            }
        }

        #[test]
        fn dense_path_matches_minor_gcds(seed in proptest::collection::vec(prop_oneof![Just(0i64), Just(2), Just(-2), Just(3), Just(-4), Just(6), Just(-9)], 16)) {
            // no unit entries, so the dense elimination does all the work
            let a: Vec<Vec<i64>> = seed.chunks(4).map(<[i64]>::to_vec).collect();
            let dense: Vec<Vec<Int>> = a.iter().map(|r| r.iter().map(|&v| Int::Small(v)).collect()).collect();
            let f: Vec<i128> = dense_invariant_factors(dense).iter().map(|x| i128::try_from(x.to_big()).unwrap()).collect();
            let mut prod: i128 = 1;
            for k in 1..=4 {
                let g = minor_gcd(&a, k);
                if g == 0 {
                    prop_assert_eq!(f.len(), k - 1);
                    break;
                }
                prod *= f[k - 1];
                prop_assert_eq!(prod, g);
            }
        }
    }
}
