//! Sparse integer matrices and the elimination routines used on Koszul
//! differentials: invariant factors over ℤ and ranks over prime fields.
//!
//! Invariant factors are computed in two phases. The sparse phase eliminates
//! unit pivots (each contributes an invariant factor 1), taking rows shortest
//! first and, within a row, the unit entry whose column is sparsest. Whatever is left has no unit entries and is handed to
//! a dense Smith reduction. Both phases first run on `i64` with checked
//! arithmetic; on overflow the whole computation restarts on `BigInt`.

use alloc::collections::{BTreeMap, BinaryHeap};
use core::cmp::Reverse;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntegerMatrix;

/// Row-major sparse integer matrix. Each row holds `(column, value)` pairs
/// sorted by column with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from unordered triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
        for (i, j, x) in triplets {
            assert!(i < rows && j < cols, "triplet out of range");
            *acc[i].entry(j).or_insert_with(<BigInt as Zero>::zero) += x;
        }
        let data = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, x)| !Zero::is_zero(x)).collect())
            .collect();
        Self { rows, cols, data }
    }

    pub fn from_dense(m: &IntegerMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !Zero::is_zero(*x))
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Product `self · rhs`. Panics on incompatible shapes.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.data[*k] {
                        *acc.entry(*j).or_insert_with(<BigInt as Zero>::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, x)| !Zero::is_zero(x)).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }
}

/// Coefficients the elimination can run on. `None` from a checked operation
/// signals overflow.
trait Scalar: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn minus_one() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// `self - f * g`
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self>;
    fn floor_div(&self, d: &Self) -> Self;
    fn is_multiple_of(&self, d: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn minus_one() -> Self {
        -1
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64().filter(|&v| v != i64::MIN)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*g)?)
    }
    fn floor_div(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        self % d == 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn minus_one() -> Self {
        BigInt::from(-1)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn into_big(self) -> BigInt {
        self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self> {
        Some(self - f * g)
    }
    fn floor_div(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        Integer::is_multiple_of(self, d)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

struct Overflow;

/// Invariant factors (nonzero Smith diagonal entries, ascending divisibility
/// chain) of a sparse integer matrix. The rank is the length of the result.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    if let Some(small) = convert::<i64>(m) {
        if let Ok(d) = invariant_factors_in(small, m.cols) {
            return d;
        }
    }
    let big = convert::<BigInt>(m).expect("BigInt conversion is total");
    match invariant_factors_in(big, m.cols) {
        Ok(d) => d,
        Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
    }
}

/// Rank over ℚ.
pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

fn convert<S: Scalar>(m: &SparseMatrix) -> Option<Vec<Vec<(usize, S)>>> {
    m.data
        .iter()
        .map(|r| {
            r.iter()
                .map(|(j, x)| S::from_big(x).map(|v| (*j, v)))
                .collect()
        })
        .collect()
}

/// `target ← target − f · pivot_row`, merging sorted rows. Reports columns
/// that became nonzero or zero through `on_change(col, now_nonzero)`.
fn row_update<S: Scalar>(
    target: &[(usize, S)],
    pivot_row: &[(usize, S)],
    f: &S,
    mut on_change: impl FnMut(usize, bool),
) -> Result<Vec<(usize, S)>, Overflow> {
    let mut out = Vec::with_capacity(target.len() + pivot_row.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot_row.len() {
        let ca = target.get(a).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = pivot_row.get(b).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(target[a].clone());
            a += 1;
        } else if cb < ca {
            let v = S::zero().sub_mul(f, &pivot_row[b].1).ok_or(Overflow)?;
            on_change(cb, true);
            out.push((cb, v));
            b += 1;
        } else {
            let v = target[a].1.sub_mul(f, &pivot_row[b].1).ok_or(Overflow)?;
            if v.is_zero() {
                on_change(ca, false);
            } else {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    Ok(out)
}

/// Rows ordered by current length; entries go stale when a row changes and
/// are skipped on pop, the changed row having been pushed again.
fn shortest_first<T>(rows: &[Vec<T>]) -> BinaryHeap<Reverse<(usize, usize)>> {
    rows.iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(i, r)| Reverse((r.len(), i)))
        .collect()
}

fn invariant_factors_in<S: Scalar>(mut rows: Vec<Vec<(usize, S)>>, cols: usize) -> Result<Vec<BigInt>, Overflow> {
    let mut col_count = vec![0usize; cols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_count[*j] += 1;
            col_rows[*j].push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut units = 0usize;

    let mut queue = shortest_first(&rows);
    while let Some(Reverse((len, pi))) = queue.pop() {
        if !alive[pi] || len == 0 || rows[pi].len() != len {
            continue;
        }
        let Some(pj) = rows[pi]
            .iter()
            .filter(|e| e.1.is_unit())
            .min_by_key(|e| col_count[e.0])
            .map(|e| e.0)
        else {
            continue;
        };
        let pivot_row = core::mem::take(&mut rows[pi]);
        alive[pi] = false;
        for (j, _) in &pivot_row {
            col_count[*j] -= 1;
        }
        let pv = pivot_row
            .iter()
            .find(|e| e.0 == pj)
            .map(|e| e.1.clone())
            .expect("pivot present");
        let candidates = core::mem::take(&mut col_rows[pj]);
        for r in candidates {
            if !alive[r] {
                continue;
            }
            let Some(x) = rows[r].iter().find(|e| e.0 == pj).map(|e| e.1.clone()) else {
                continue;
            };
            // pv = ±1, so x / pv = x · pv
            let f = x.mul(&pv).ok_or(Overflow)?;
            let mut changes = Vec::new();
            let updated = row_update(&rows[r], &pivot_row, &f, |c, nz| changes.push((c, nz)))?;
            rows[r] = updated;
            queue.push(Reverse((rows[r].len(), r)));
            for (c, nz) in changes {
                if nz {
                    col_count[c] += 1;
                    col_rows[c].push(r);
                } else {
                    col_count[c] -= 1;
                }
            }
        }
        units += 1;
    }

    // dense remainder
    let live: Vec<usize> = (0..rows.len()).filter(|&i| alive[i] && !rows[i].is_empty()).collect();
    let mut col_index = BTreeMap::new();
    for &i in &live {
        for (j, _) in &rows[i] {
            let next = col_index.len();
            col_index.entry(*j).or_insert(next);
        }
    }
    let mut dense = vec![vec![S::zero(); col_index.len()]; live.len()];
    for (di, &i) in live.iter().enumerate() {
        for (j, x) in &rows[i] {
            dense[di][col_index[j]] = x.clone();
        }
    }
    let tail = dense_diagonal(dense)?;
    let mut out = vec![BigInt::one(); units];
    out.extend(tail.into_iter().map(Scalar::into_big));
    Ok(out)
}

/// Nonzero Smith diagonal of a dense matrix, no transforms.
fn dense_diagonal<S: Scalar>(mut a: Vec<Vec<S>>) -> Result<Vec<S>, Overflow> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].magnitude_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t].clone();
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].floor_div(&p);
                for j in t..cols {
                    let v = a[i][j].sub_mul(&q, &a[t][j]).ok_or(Overflow)?;
                    a[i][j] = v;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].floor_div(&p);
                for i in t..rows {
                    let v = a[i][j].sub_mul(&q, &a[i][t]).ok_or(Overflow)?;
                    a[i][j] = v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
        if let Some(i) = offender {
            // row_t += row_i
            for j in t..cols {
                let v = a[t][j].sub_mul(&S::minus_one(), &a[i][j]).ok_or(Overflow)?;
                a[t][j] = v;
            }
            continue;
        }
        let p = if p.is_negative() { p.neg().ok_or(Overflow)? } else { p };
        diag.push(p);
        t += 1;
    }
    Ok(diag)
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let pm = BigInt::from(p);
    let mut rows: Vec<Vec<(usize, u64)>> = m
        .data
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|(j, x)| {
                    let v = x.mod_floor(&pm).to_u64().expect("reduced below p");
                    (v != 0).then_some((*j, v))
                })
                .collect()
        })
        .collect();
    let mut col_count = vec![0usize; m.cols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_count[*j] += 1;
            col_rows[*j].push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    let mut queue = shortest_first(&rows);
    while let Some(Reverse((len, pi))) = queue.pop() {
        if !alive[pi] || len == 0 || rows[pi].len() != len {
            continue;
        }
        let pj = rows[pi].iter().min_by_key(|e| col_count[e.0]).expect("row is not empty").0;
        let pivot_row = core::mem::take(&mut rows[pi]);
        alive[pi] = false;
        for (j, _) in &pivot_row {
            col_count[*j] -= 1;
        }
        let pv = pivot_row.iter().find(|e| e.0 == pj).expect("pivot present").1;
        let inv = mod_pow(pv, p - 2, p);
        for r in core::mem::take(&mut col_rows[pj]) {
            if !alive[r] {
                continue;
            }
            let Some(x) = rows[r].iter().find(|e| e.0 == pj).map(|e| e.1) else {
                continue;
            };
            let f = mul(x, inv);
            let target = core::mem::take(&mut rows[r]);
            let mut out = Vec::with_capacity(target.len() + pivot_row.len());
            let (mut a, mut b) = (0, 0);
            while a < target.len() || b < pivot_row.len() {
                let ca = target.get(a).map_or(usize::MAX, |e| e.0);
                let cb = pivot_row.get(b).map_or(usize::MAX, |e| e.0);
                if ca < cb {
                    out.push(target[a]);
                    a += 1;
                } else {
                    let sub = mul(f, pivot_row[b].1);
                    let base = if ca == cb { target[a].1 } else { 0 };
                    let v = (base + p - sub) % p;
                    if ca == cb {
                        a += 1;
                    }
                    b += 1;
                    match (base != 0, v != 0) {
                        (true, true) | (false, false) => {}
                        (false, true) => {
                            col_count[cb] += 1;
                            col_rows[cb].push(r);
                        }
                        (true, false) => col_count[cb] -= 1,
                    }
                    if v != 0 {
                        out.push((cb, v));
                    }
                }
            }
            rows[r] = out;
            queue.push(Reverse((rows[r].len(), r)));
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::smith_normal_form;

    fn sparse(cols: usize, rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_dense(&IntegerMatrix::from_rows(cols, rows))
    }

    #[test]
    fn matches_dense_smith() {
        let cases = [
            sparse(2, &[vec![2, 4], vec![6, 8]]),
            sparse(3, &[vec![0, 2, 0], vec![3, 0, 0], vec![0, 0, 0]]),
            sparse(3, &[vec![1, 1, 0], vec![0, 2, 2], vec![1, 0, -2]]),
        ];
        for m in &cases {
            let dense = smith_normal_form(&m.to_dense());
            let expected: Vec<BigInt> = dense.diagonal.into_iter().filter(|d| !Zero::is_zero(d)).collect();
            assert_eq!(invariant_factors(m), expected);
        }
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let m = sparse(2, &[vec![big, 3], vec![5, big]]);
        let dense = smith_normal_form(&m.to_dense());
        assert_eq!(invariant_factors(&m), dense.diagonal);
    }

    #[test]
    fn modular_rank() {
        let m = sparse(2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 2);
        // det = -8: rank drops only at 2
        assert_eq!(rank_mod_p(&m, 101), 2);
        let m = sparse(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(rank_mod_p(&m, 2), 2);
        assert_eq!(rank_mod_p(&m, 5), 3);
    }

    #[test]
    fn empty_matrices() {
        assert!(invariant_factors(&SparseMatrix::zeros(0, 5)).is_empty());
        assert!(invariant_factors(&SparseMatrix::zeros(3, 0)).is_empty());
        assert_eq!(rank_mod_p(&SparseMatrix::zeros(4, 4), 7), 0);
    }

    #[test]
    fn product() {
        let a = sparse(2, &[vec![1, 2], vec![0, 1]]);
        let b = sparse(1, &[vec![3], vec![-1]]);
        assert_eq!(a.mul(&b).to_dense(), IntegerMatrix::from_rows(1, &[vec![1], vec![-1]]));
    }
}
