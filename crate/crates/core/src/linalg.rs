//! Sparse matrices over the prime field F_p and their rank.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted prime.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if p <= MAX_PRIME && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Reduce a signed integer into `0..p`.
pub fn residue(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

type SparseRow = Vec<(usize, u64)>;

/// Sparse `rows × cols` matrix over F_p. Each row keeps its nonzero entries
/// sorted by column; zero residues are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<SparseRow>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        MatrixFp { rows, cols, p, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i].push((i, 1 % p));
        }
        m
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_entries<I>(rows: usize, cols: usize, p: u64, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut acc: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let slot = acc[r].entry(c).or_insert(0);
            *slot = (*slot + residue(v, p)) % p;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        MatrixFp { rows, cols, p, data }
    }

    pub fn from_dense(p: u64, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        Self::from_entries(
            rows,
            cols,
            p,
            dense
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        match self.data[r].binary_search_by_key(&c, |&(col, _)| col) {
            Ok(i) => self.data[r][i].1,
            Err(_) => 0,
        }
    }

    /// Overwrite one entry (value taken mod p).
    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        let v = residue(value, self.p);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |&(col, _)| col) {
            Ok(i) if v == 0 => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = v,
            Err(i) if v != 0 => row.insert(i, (c, v)),
            Err(_) => {}
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v;
        }
        out
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        assert_eq!(self.p, rhs.p, "prime mismatch in product");
        let p = self.p;
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
                for &(k, a) in row {
                    for &(c, b) in &rhs.data[k] {
                        let slot = acc.entry(c).or_insert(0);
                        *slot = (*slot + mul_mod(a, b, p)) % p;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        MatrixFp { rows: self.rows, cols: rhs.cols, p, data }
    }

    /// Rank over F_p.
    ///
    /// Sparse Gaussian elimination. At each step the pivot row is the
    /// shortest remaining row and the pivot column is the entry of that row
    /// whose column is least populated, which keeps fill-in low on the
    /// boundary matrices met here (few nonzeros per column).
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut active: Vec<SparseRow> = self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut col_count = vec![0usize; self.cols];
        for row in &active {
            for &(c, _) in row {
                col_count[c] += 1;
            }
        }
        let mut rank = 0;
        while !active.is_empty() {
            let (pivot_idx, _) = active
                .iter()
                .enumerate()
                .min_by_key(|(i, r)| (r.len(), *i))
                .expect("nonempty");
            let pivot_row = active.swap_remove(pivot_idx);
            let &(pivot_col, pivot_val) = pivot_row
                .iter()
                .min_by_key(|&&(c, _)| (col_count[c], c))
                .expect("active rows are nonempty");
            for &(c, _) in &pivot_row {
                col_count[c] -= 1;
            }
            let inv = inv_mod(pivot_val, p);
            rank += 1;

            let mut next = Vec::with_capacity(active.len());
            for row in active.drain(..) {
                let coeff = match row.binary_search_by_key(&pivot_col, |&(c, _)| c) {
                    Ok(i) => row[i].1,
                    Err(_) => {
                        next.push(row);
                        continue;
                    }
                };
                // row ← row − (coeff / pivot_val) · pivot_row
                let factor = p - mul_mod(coeff, inv, p);
                for &(c, _) in &row {
                    col_count[c] -= 1;
                }
                let reduced = axpy(&row, &pivot_row, factor, p);
                for &(c, _) in &reduced {
                    col_count[c] += 1;
                }
                if !reduced.is_empty() {
                    next.push(reduced);
                }
            }
            active = next;
        }
        rank
    }
}

/// `x + a·y` for sorted sparse rows.
fn axpy(x: &SparseRow, y: &SparseRow, a: u64, p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = mul_mod(a, y[j].1, p);
            if v != 0 {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = (x[i].1 + mul_mod(a, y[j].1, p)) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
