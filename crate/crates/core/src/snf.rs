//! Sparse integer matrices and their Smith normal form.
//!
//! Elimination runs on `i64` with checked arithmetic and is restarted on
//! `BigInt` if any intermediate value overflows.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-major sparse matrix; each column is sorted by row and holds no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from columns; entries are summed and zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let ncols = cols.len();
        let cols = cols
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (r, v) in c {
                    assert!(r < nrows, "row {r} out of range");
                    *acc.entry(r).or_insert(0) += v;
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `self * rhs`, with `i128` accumulation.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let cols = rhs
            .cols
            .iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
                for &(k, b) in c {
                    for &(i, a) in &self.cols[k] {
                        *acc.entry(i).or_insert(0) += a as i128 * b as i128;
                    }
                }
                acc.into_iter()
                    .filter(|&(_, v)| v != 0)
                    .map(|(i, v)| (i, i64::try_from(v).expect("product entry overflows i64")))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.ncols]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                d[i][j] = v;
            }
        }
        d
    }
}

/// Nonzero invariant factors, ascending and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * v`
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self>;
    fn magnitude(&self) -> BigUint;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*v)?)
    }
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        Some(self - q * v)
    }
    fn magnitude(&self) -> BigUint {
        self.abs().to_biguint().unwrap()
    }
}

struct Overflow;

struct Work<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Scalar> Work<T> {
    fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][&j]
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    /// Row `p` with the smallest entry in column `j`, ties to the shortest row.
    fn best_in_column(&self, j: usize) -> usize {
        *self.cols[j]
            .iter()
            .min_by(|&&a, &&b| {
                self.get(a, j)
                    .abs_cmp(self.get(b, j))
                    .then(self.rows[a].len().cmp(&self.rows[b].len()))
                    .then(a.cmp(&b))
            })
            .unwrap()
    }

    /// row_i -= q * row_p
    fn row_op(&mut self, i: usize, p: usize, q: &T) -> Result<(), Overflow> {
        let src: Vec<(usize, T)> = self.rows[p].iter().map(|(&k, v)| (k, v.clone())).collect();
        for (k, v) in src {
            let cur = self.rows[i].get(&k).cloned();
            let new = match cur {
                Some(c) => c.sub_mul(q, &v).ok_or(Overflow)?,
                None => T::zero().sub_mul(q, &v).ok_or(Overflow)?,
            };
            self.set(i, k, new);
        }
        Ok(())
    }

    /// Eliminates until `(p, j)` is alone in its row and column; returns the pivot.
    fn pivot(&mut self, mut j: usize) -> Result<(usize, usize, T), Overflow> {
        let mut p = self.best_in_column(j);
        loop {
            let v = self.get(p, j).clone();
            let others: Vec<usize> = self.cols[j].iter().copied().filter(|&i| i != p).collect();
            for i in others {
                let q = self.get(i, j).quot(&v).ok_or(Overflow)?;
                if !q.is_zero() {
                    self.row_op(i, p, &q)?;
                }
            }
            if self.cols[j].len() > 1 {
                p = self.best_in_column(j);
                continue;
            }
            // Column j is now v * e_p, so column ops touch row p only.
            let others: Vec<usize> = self.rows[p].keys().copied().filter(|&k| k != j).collect();
            for k in others {
                let a = self.get(p, k).clone();
                let q = a.quot(&v).ok_or(Overflow)?;
                let r = a.sub_mul(&q, &v).ok_or(Overflow)?;
                self.set(p, k, r);
            }
            if self.rows[p].len() > 1 {
                let k = *self.rows[p]
                    .iter()
                    .filter(|(&k, _)| k != j)
                    .min_by(|a, b| a.1.abs_cmp(b.1).then(a.0.cmp(b.0)))
                    .unwrap()
                    .0;
                j = k;
                continue;
            }
            return Ok((p, j, v));
        }
    }
}

fn eliminate<T: Scalar>(m: &SparseMatrix, conv: impl Fn(i64) -> T) -> Result<Vec<BigUint>, Overflow> {
    let mut w = Work { rows: vec![BTreeMap::new(); m.nrows], cols: vec![BTreeSet::new(); m.ncols] };
    for (j, c) in m.cols.iter().enumerate() {
        for &(i, v) in c {
            w.set(i, j, conv(v));
        }
    }
    let mut diag = Vec::new();
    for j in 0..m.ncols {
        while !w.cols[j].is_empty() {
            let (p, k, v) = w.pivot(j)?;
            w.set(p, k, conv(0));
            diag.push(v.magnitude());
        }
    }
    Ok(diag)
}

/// Invariant factors from an arbitrary diagonal, by repeated gcd/lcm.
fn normalize(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    let units = diag.iter().filter(|d| d.is_one()).count();
    diag.retain(|d| !d.is_one());
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    let mut out = vec![BigUint::one(); units];
    out.extend(diag);
    out
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let diag = match eliminate(m, |v| v) {
        Ok(d) => d,
        Err(Overflow) => eliminate(m, BigInt::from)
            .unwrap_or_else(|_| unreachable!("big integers do not overflow")),
    };
    SmithForm { factors: normalize(diag) }
}

/// Rank over the field with two elements.
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    let mut pivots: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut rank = 0;
    for c in &m.cols {
        let mut col: BTreeSet<usize> = c.iter().filter(|&&(_, v)| v % 2 != 0).map(|&(i, _)| i).collect();
        while let Some(&low) = col.iter().next_back() {
            match pivots.get(&low) {
                Some(p) => {
                    col = col.symmetric_difference(p).copied().collect();
                }
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn det(mut a: Vec<Vec<i128>>) -> i128 {
        // Bareiss fraction-free elimination.
        let n = a.len();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }

    /// Invariant factors as quotients of determinantal divisors.
    fn determinantal_oracle(a: &[Vec<i64>]) -> Vec<u64> {
        let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
        let mut divisors = vec![1i128];
        for k in 1..=r.min(c) {
            let mut g = 0;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let minor = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect()).collect();
                    g = gcd(g, det(minor));
                }
            }
            if g == 0 {
                break;
            }
            divisors.push(g);
        }
        divisors.windows(2).map(|w| (w[1] / w[0]) as u64).collect()
    }

    /// Dense elementary-operation reduction to a diagonal.
    fn dense_oracle(a: &[Vec<i64>]) -> Vec<u64> {
        let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        let mut diag = Vec::new();
        for t in 0..r.min(c) {
            loop {
                let mut best = None;
                for i in t..r {
                    for j in t..c {
                        if m[i][j] != 0 && best.map_or(true, |(bi, bj): (usize, usize)| m[i][j].abs() < m[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                m.swap(t, bi);
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
                let v = m[t][t];
                let mut clean = true;
                for i in t + 1..r {
                    let q = m[i][t] / v;
                    for j in t..c {
                        m[i][j] -= q * m[t][j];
                    }
                    clean &= m[i][t] == 0;
                }
                for j in t + 1..c {
                    let q = m[t][j] / v;
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                    clean &= m[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                // Divisibility: fold any entry not divisible by v into row t.
                if let Some(i) = (t + 1..r).find(|&i| (t + 1..c).any(|j| m[i][j] % v != 0)) {
                    for j in t..c {
                        m[t][j] += m[i][j];
                    }
                    continue;
                }
                break;
            }
            if m.get(t).and_then(|row| row.get(t)).copied().unwrap_or(0) == 0 {
                break;
            }
            diag.push(m[t][t].unsigned_abs() as u64);
        }
        diag
    }

    fn factors_u64(s: &SmithForm) -> Vec<u64> {
        s.factors.iter().map(|f| u64::try_from(f).unwrap()).collect()
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
        let r = rng.gen_range(1..=8);
        let c = rng.gen_range(1..=8);
        let density: f64 = rng.gen_range(0.2..1.0);
        (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
            .collect()
    }

    #[test]
    fn agrees_with_oracles_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_matrix(&mut rng);
            let s = factors_u64(&smith_normal_form(&SparseMatrix::from_dense(&a)));
            assert_eq!(s, determinantal_oracle(&a), "{a:?}");
            assert_eq!(s, dense_oracle(&a), "{a:?}");
        }
    }

    #[test]
    fn known_forms() {
        let a = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(factors_u64(&smith_normal_form(&a)), vec![1, 6]);
        let b = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(factors_u64(&smith_normal_form(&b)), vec![2, 6, 12]);
        assert_eq!(smith_normal_form(&SparseMatrix::zero(3, 2)).rank(), 0);
        let c = SparseMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(factors_u64(&smith_normal_form(&c)), vec![2, 4]);
        let id = SparseMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(factors_u64(&smith_normal_form(&id)), vec![1, 1, 1]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let a = SparseMatrix::from_dense(&[vec![big, big - 1], vec![big - 1, big - 7]]);
        let s = smith_normal_form(&a);
        let d = BigInt::from(big) * BigInt::from(big - 7) - BigInt::from(big - 1) * BigInt::from(big - 1);
        assert_eq!(s.rank(), 2);
        assert_eq!(&s.factors[0] * &s.factors[1], d.abs().to_biguint().unwrap());
    }

    proptest! {
        #[test]
        fn rank_matches_determinantal_rank(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 5), 1..6)) {
            let s = smith_normal_form(&SparseMatrix::from_dense(&rows));
            prop_assert_eq!(factors_u64(&s), determinantal_oracle(&rows));
            for w in s.factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        #[test]
        fn mod2_rank_bounded_by_integer_rank(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 1..7)) {
            let m = SparseMatrix::from_dense(&rows);
            let s = smith_normal_form(&m);
            let even = s.factors.iter().filter(|f| f.is_even()).count();
            prop_assert_eq!(rank_mod2(&m), s.rank() - even);
        }
    }
}
