//! Sparse matrices over the exact scalar ring.
//!
//! Row-major list-of-lists storage; every stored entry is nonzero and every
//! row is sorted by column, so structural equality is value equality.

use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::{Rational, Surd};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurdMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Surd)>>,
}

impl SurdMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SurdMat {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, Surd::one())
    }

    pub fn scaled_identity(n: usize, v: Surd) -> Self {
        let mut m = Self::zeros(n, n);
        if !v.is_zero() {
            for r in 0..n {
                m.rows[r].push((r, v.clone()));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> Surd {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Surd::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Surd) {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => {
                if v.is_zero() {
                    self.rows[r].remove(k);
                } else {
                    self.rows[r][k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    self.rows[r].insert(k, (c, v));
                }
            }
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Surd) {
        if v.is_zero() {
            return;
        }
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => {
                let sum = &self.rows[r][k].1 + v;
                if sum.is_zero() {
                    self.rows[r].remove(k);
                } else {
                    self.rows[r][k].1 = sum;
                }
            }
            Err(k) => self.rows[r].insert(k, (c, v.clone())),
        }
    }

    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Surd)>,
    {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in triplets {
            m.add_at(r, c, &v);
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Surd)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row(&self, r: usize) -> &[(usize, Surd)] {
        &self.rows[r]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn map<F: Fn(&Surd) -> Surd>(&self, f: F) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*c, w))
                    })
                    .collect()
            })
            .collect();
        SurdMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn scale(&self, v: &Surd) -> Self {
        self.map(|x| x * v)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.iter() {
            m.rows[c].push((r, v.clone()));
        }
        for row in &mut m.rows {
            row.sort_by_key(|(j, _)| *j);
        }
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, false))
            .collect();
        SurdMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, true))
            .collect();
        SurdMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matmul dimension mismatch");
        let mul_row = |arow: &Vec<(usize, Surd)>| -> Vec<(usize, Surd)> {
            let mut acc: Vec<Option<Surd>> = vec![None; other.ncols];
            let mut touched: Vec<usize> = Vec::new();
            for (k, a) in arow {
                for (j, b) in &other.rows[*k] {
                    let prod = a * b;
                    match &mut acc[*j] {
                        Some(x) => *x += &prod,
                        slot => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            touched
                .into_iter()
                .filter_map(|j| {
                    let v = acc[j].take().unwrap();
                    (!v.is_zero()).then_some((j, v))
                })
                .collect()
        };
        let rows: Vec<Vec<(usize, Surd)>> = if self.nrows >= 64 {
            self.rows.par_iter().map(mul_row).collect()
        } else {
            self.rows.iter().map(mul_row).collect()
        };
        SurdMat {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.matmul(b).sub(&b.matmul(a))
    }

    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        a.matmul(b).add(&b.matmul(a))
    }

    pub fn trace(&self) -> Surd {
        let mut t = Surd::zero();
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(k) = row.binary_search_by_key(&r, |(j, _)| *j) {
                t += &row[k].1;
            }
        }
        t
    }

    /// Kronecker product, left factor on the slow index:
    /// `(A⊗B)[a·rB + b, c·cB + d] = A[a,c]·B[b,d]`.
    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut rows = vec![Vec::new(); nrows];
        for (a, c, v) in self.iter() {
            for (b, d, w) in other.iter() {
                rows[a * other.nrows + b].push((c * other.ncols + d, v * w));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(j, _)| *j);
        }
        SurdMat { nrows, ncols, rows }
    }

    /// Dense submatrix selection by explicit row/column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let out_rows = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, Surd)> = self.rows[r]
                    .iter()
                    .filter_map(|(c, v)| {
                        let k = col_pos[*c];
                        (k != usize::MAX).then(|| (k, v.clone()))
                    })
                    .collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        SurdMat {
            nrows: rows.len(),
            ncols: cols.len(),
            rows: out_rows,
        }
    }

    /// True when every entry in the given columns is exactly zero.
    pub fn columns_are_zero(&self, cols: &[usize]) -> bool {
        let mut sel = vec![false; self.ncols];
        for &c in cols {
            sel[c] = true;
        }
        self.iter().all(|(_, c, _)| !sel[c])
    }

    /// Largest numeric magnitude among entries in the given columns.
    pub fn max_abs_in_columns(&self, cols: &[usize]) -> f64 {
        let mut sel = vec![false; self.ncols];
        for &c in cols {
            sel[c] = true;
        }
        self.iter()
            .filter(|(_, c, _)| sel[*c])
            .map(|(_, _, v)| v.abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().map(|(_, _, v)| v.abs_f64()).fold(0.0, f64::max)
    }

    /// Dense complex image for floating-point cross-checks.
    pub fn to_complex_dense(&self) -> Vec<Vec<(f64, f64)>> {
        let mut out = vec![vec![(0.0, 0.0); self.ncols]; self.nrows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.to_complex();
        }
        out
    }

    /// Requires a purely rational matrix; errors otherwise.
    pub fn rational_entries(&self) -> Result<Vec<(usize, usize, Rational)>> {
        self.iter()
            .map(|(r, c, v)| {
                v.rational_part()
                    .map(|q| (r, c, q))
                    .ok_or_else(|| Error::Consistency(format!("irrational entry at ({r},{c}): {v}")))
            })
            .collect()
    }

    /// Parses the matrix JSON produced by [`SurdMat::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Entry {
            r: usize,
            c: usize,
            v: Surd,
        }
        #[derive(serde::Deserialize)]
        struct MatJson {
            rows: usize,
            cols: usize,
            entries: Vec<Entry>,
        }
        let parsed: MatJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidScalar(format!("bad matrix JSON: {e}")))?;
        let mut m = SurdMat::zeros(parsed.rows, parsed.cols);
        for e in parsed.entries {
            if e.r == 0 || e.c == 0 || e.r > parsed.rows || e.c > parsed.cols {
                return Err(Error::IndexRange(format!(
                    "matrix entry ({}, {}) out of bounds",
                    e.r, e.c
                )));
            }
            m.set(e.r - 1, e.c - 1, e.v);
        }
        Ok(m)
    }

    /// JSON object `{"rows":…,"cols":…,"entries":[{"r":…,"c":…,"v":…}]}` with
    /// 1-based indices and zero entries omitted.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            r: usize,
            c: usize,
            v: &'a Surd,
        }
        let entries: Vec<Entry> = self
            .iter()
            .map(|(r, c, v)| Entry { r: r + 1, c: c + 1, v })
            .collect();
        serde_json::json!({
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": entries,
        })
    }
}

fn merge_rows(a: &[(usize, Surd)], b: &[(usize, Surd)], negate: bool) -> Vec<(usize, Surd)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = if negate { va - vb } else { va + vb };
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                out.push((*cb, if negate { -vb } else { vb.clone() }));
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, if negate { -vb } else { vb.clone() }));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Rank of a dense complex matrix by Gaussian elimination with partial
/// pivoting; pivots below `tol` in magnitude count as zero.
pub fn complex_rank(dense: &[Vec<(f64, f64)>], tol: f64) -> usize {
    if dense.is_empty() {
        return 0;
    }
    let nrows = dense.len();
    let ncols = dense[0].len();
    let mut m: Vec<Vec<(f64, f64)>> = dense.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let (mut best, mut best_abs) = (row, 0.0f64);
        for r in row..nrows {
            let a = m[r][col].0.hypot(m[r][col].1);
            if a > best_abs {
                best = r;
                best_abs = a;
            }
        }
        if best_abs <= tol {
            continue;
        }
        m.swap(row, best);
        let (pr, pi) = m[row][col];
        let norm = pr * pr + pi * pi;
        for r in (row + 1)..nrows {
            let (ar, ai) = m[r][col];
            if ar == 0.0 && ai == 0.0 {
                continue;
            }
            // factor = a / p
            let fr = (ar * pr + ai * pi) / norm;
            let fi = (ai * pr - ar * pi) / norm;
            for c in col..ncols {
                let (br, bi) = m[row][c];
                m[r][c].0 -= fr * br - fi * bi;
                m[r][c].1 -= fr * bi + fi * br;
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}
