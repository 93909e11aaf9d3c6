//! Minimal CSR sparse matrices with deterministic triplet assembly.
//!
//! Assembly accumulates (row, col, value) triplets and compresses them by a
//! sort on (row, col) followed by in-order summation of duplicates, so the
//! result depends only on the triplet sequence, never on scheduling.

/// Triplet accumulator for finite element assembly.
#[derive(Debug, Clone)]
pub struct Triplets {
    nrows: usize,
    ncols: usize,
    entries: Vec<(u32, u32, f64)>,
}

impl Triplets {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        assert!(nrows < u32::MAX as usize && ncols < u32::MAX as usize);
        Triplets {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    #[inline]
    pub fn push(&mut self, row: usize, col: usize, val: f64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        if val != 0.0 {
            self.entries.push((row as u32, col as u32, val));
        }
    }

    /// Scatter a dense local block at global positions `rows` x `cols`.
    pub fn push_block(&mut self, rows: &[usize], cols: &[usize], block: &nalgebra::DMatrix<f64>) {
        assert_eq!(block.nrows(), rows.len());
        assert_eq!(block.ncols(), cols.len());
        for (bj, &gj) in cols.iter().enumerate() {
            for (bi, &gi) in rows.iter().enumerate() {
                self.push(gi, gj, block[(bi, bj)]);
            }
        }
    }

    pub fn into_csr(self) -> Csr {
        Csr::from_triplets(self)
    }
}

/// Compressed sparse row matrix.
#[derive(Debug, Clone)]
pub struct Csr {
    pub nrows: usize,
    pub ncols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<u32>,
    pub vals: Vec<f64>,
}

impl Csr {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Csr {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn from_triplets(t: Triplets) -> Self {
        let mut e = t.entries;
        e.sort_unstable_by_key(|&(r, c, _)| ((r as u64) << 32) | c as u64);
        let mut row_ptr = vec![0usize; t.nrows + 1];
        let mut col_idx: Vec<u32> = Vec::with_capacity(e.len());
        let mut vals: Vec<f64> = Vec::with_capacity(e.len());
        let mut last: Option<(u32, u32)> = None;
        for &(r, c, v) in &e {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                vals.push(v);
                row_ptr[r as usize + 1] = col_idx.len();
                last = Some((r, c));
            }
        }
        // rows without entries inherit the previous offset
        for i in 1..row_ptr.len() {
            row_ptr[i] = row_ptr[i].max(row_ptr[i - 1]);
        }
        Csr {
            nrows: t.nrows,
            ncols: t.ncols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.vals[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&(j as u32)) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// y = A x
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            let mut s = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                s += v * x[*c as usize];
            }
            y[i] = s;
        }
    }

    /// y += s * A x
    pub fn matvec_add(&self, s: f64, x: &[f64], y: &mut [f64]) {
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                acc += v * x[*c as usize];
            }
            y[i] += s * acc;
        }
    }

    pub fn quadratic_form(&self, x: &[f64], y: &[f64]) -> f64 {
        assert_eq!(y.len(), self.ncols);
        let mut total = 0.0;
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            let mut s = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                s += v * y[*c as usize];
            }
            total += x[i] * s;
        }
        total
    }

    pub fn transpose(&self) -> Csr {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.col_idx {
            counts[c as usize + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut col_idx = vec![0u32; self.nnz()];
        let mut vals = vec![0.0; self.nnz()];
        let mut next = counts.clone();
        for i in 0..self.nrows {
            let (cols, vs) = self.row(i);
            for (c, v) in cols.iter().zip(vs) {
                let slot = next[*c as usize];
                col_idx[slot] = i as u32;
                vals[slot] = *v;
                next[*c as usize] += 1;
            }
        }
        Csr {
            nrows: self.ncols,
            ncols: self.nrows,
            row_ptr: counts,
            col_idx,
            vals,
        }
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.vals {
            *v *= s;
        }
    }

    /// Returns D A with diagonal D given as a vector (row scaling).
    pub fn scale_rows(&self, d: &[f64]) -> Csr {
        assert_eq!(d.len(), self.nrows);
        let mut out = self.clone();
        for i in 0..self.nrows {
            for k in out.row_ptr[i]..out.row_ptr[i + 1] {
                out.vals[k] *= d[i];
            }
        }
        out
    }

    /// Returns A D with diagonal D given as a vector (column scaling).
    pub fn scale_cols(&self, d: &[f64]) -> Csr {
        assert_eq!(d.len(), self.ncols);
        let mut out = self.clone();
        for k in 0..out.vals.len() {
            out.vals[k] *= d[out.col_idx[k] as usize];
        }
        out
    }

    /// Linear combination sum_k coeff_k * A_k of equally sized matrices.
    pub fn linear_combination(terms: &[(f64, &Csr)]) -> Csr {
        assert!(!terms.is_empty());
        let (nrows, ncols) = (terms[0].1.nrows, terms[0].1.ncols);
        let mut t = Triplets::new(nrows, ncols);
        for &(s, m) in terms {
            assert_eq!(m.nrows, nrows);
            assert_eq!(m.ncols, ncols);
            if s == 0.0 {
                continue;
            }
            for i in 0..nrows {
                let (cols, vals) = m.row(i);
                for (c, v) in cols.iter().zip(vals) {
                    t.entries.push((i as u32, *c, s * v));
                }
            }
        }
        t.into_csr()
    }

    /// Assemble a block matrix from an array of optional scaled blocks.
    /// `row_sizes` / `col_sizes` give the block grid; `blocks[i][j]` is placed
    /// with its row/col offsets.
    pub fn compose_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<(f64, &Csr)>>],
    ) -> Csr {
        let nrows: usize = row_sizes.iter().sum();
        let ncols: usize = col_sizes.iter().sum();
        let mut row_off = vec![0usize; row_sizes.len()];
        for i in 1..row_sizes.len() {
            row_off[i] = row_off[i - 1] + row_sizes[i - 1];
        }
        let mut col_off = vec![0usize; col_sizes.len()];
        for j in 1..col_sizes.len() {
            col_off[j] = col_off[j - 1] + col_sizes[j - 1];
        }
        let mut t = Triplets::new(nrows, ncols);
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, b) in brow.iter().enumerate() {
                if let Some((s, m)) = b {
                    if *s == 0.0 {
                        continue;
                    }
                    assert_eq!(m.nrows, row_sizes[bi]);
                    assert_eq!(m.ncols, col_sizes[bj]);
                    for i in 0..m.nrows {
                        let (cols, vals) = m.row(i);
                        for (c, v) in cols.iter().zip(vals) {
                            t.entries.push((
                                (row_off[bi] + i) as u32,
                                (col_off[bj] + *c as usize) as u32,
                                s * v,
                            ));
                        }
                    }
                }
            }
        }
        t.into_csr()
    }

    /// Largest |a_ij - a_ji| over all entries; zero for symmetric matrices.
    pub fn symmetry_defect(&self) -> f64 {
        assert_eq!(self.nrows, self.ncols);
        let tr = self.transpose();
        let mut worst: f64 = 0.0;
        for i in 0..self.nrows {
            let (ca, va) = self.row(i);
            let (cb, vb) = tr.row(i);
            // merge the two sorted rows
            let (mut p, mut q) = (0, 0);
            while p < ca.len() || q < cb.len() {
                let jc = match (ca.get(p), cb.get(q)) {
                    (Some(&a), Some(&b)) => a.min(b),
                    (Some(&a), None) => a,
                    (None, Some(&b)) => b,
                    (None, None) => break,
                };
                let x = if p < ca.len() && ca[p] == jc {
                    let v = va[p];
                    p += 1;
                    v
                } else {
                    0.0
                };
                let y = if q < cb.len() && cb[q] == jc {
                    let v = vb[q];
                    q += 1;
                    v
                } else {
                    0.0
                };
                worst = worst.max((x - y).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                m[(i, *c as usize)] = *v;
            }
        }
        m
    }
}
