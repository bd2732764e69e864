//! Sparse exact linear algebra over arbitrary-precision rationals.
//!
//! Provides the handful of operations the rest of the crate needs:
//!
//! * `SparseVec`, `SparseMat` — ordered sparse containers over `BigRational`,
//! * `rref` — reduced row echelon form with pivot bookkeeping,
//! * `kernel_basis` — a deterministic basis of the right kernel,
//! * `joint_kernel` — kernel of several stacked matrices.
//!
//! All arithmetic is exact; zero entries are never stored.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms by `num`.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d` (`d != 0`).
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector: ordered map from column index to a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rat>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rat)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_to(i, &c);
        }
        v
    }

    pub fn from_dense(coords: &[Rat]) -> Self {
        Self::from_pairs(coords.iter().cloned().enumerate())
    }

    pub fn get(&self, i: usize) -> Rat {
        self.entries.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Overwrite entry `i`; removes it when `c` is zero.
    pub fn set(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_to(&mut self, i: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.get(i) + c;
        self.set(i, v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rat)> {
        self.entries.iter()
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for v in self.entries.values_mut() {
            *v *= c;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rat, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, v) in other.entries.iter() {
            self.add_to(*i, &(c * v));
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rat::zero();
        for (i, v) in small.entries.iter() {
            if let Some(w) = big.entries.get(i) {
                acc += v * w;
            }
        }
        acc
    }
}

/// Sparse matrix stored by rows; every row shares the same column count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        for r in &rows {
            if let Some(lead) = r.entries.keys().next_back() {
                if *lead >= ncols {
                    return Err(Error::DimensionMismatch(format!(
                        "row entry at column {lead} outside width {ncols}"
                    )));
                }
            }
        }
        Ok(Self { ncols, rows })
    }

    /// Build from dense integer rows (convenient in tests).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let rows = rows
            .iter()
            .map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(i, n)| (i, rat(*n)))))
            .collect();
        Self { ncols, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn push_row(&mut self, row: SparseVec) {
        self.rows.push(row);
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.rows[i].get(j)
    }

    /// Matrix-vector product (vector indexed by columns).
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let d = row.dot(v);
            if !d.is_zero() {
                out.set(i, d);
            }
        }
        out
    }

    /// Stack several matrices with equal column counts on top of each other.
    pub fn vstack(mats: &[SparseMat]) -> Result<SparseMat> {
        let ncols = match mats.first() {
            Some(m) => m.ncols,
            None => return Ok(SparseMat::new(0)),
        };
        let mut rows = Vec::new();
        for m in mats {
            if m.ncols != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack: widths {} vs {}",
                    ncols, m.ncols
                )));
            }
            rows.extend(m.rows.iter().cloned());
        }
        Ok(SparseMat { ncols, rows })
    }

    /// Reduced row echelon form.
    ///
    /// Returns the reduced matrix (zero rows dropped, rows ordered by pivot
    /// column) together with the ascending list of pivot columns.  The
    /// computation is exact and deterministic.
    pub fn rref(&self) -> (SparseMat, Vec<usize>) {
        let mut rows: Vec<SparseVec> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut done = 0usize; // rows above `done` are already reduced

        while done < rows.len() {
            // Pivot column: smallest leading column among the remaining rows;
            // among those, prefer the sparsest row to limit fill-in.
            let mut best: Option<(usize, usize, usize)> = None; // (col, nnz, row)
            for (r, row) in rows.iter().enumerate().skip(done) {
                let lead = row.leading().expect("zero rows are filtered");
                let cand = (lead, row.len(), r);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
            let (col, _, r) = best.expect("nonempty remainder");
            rows.swap(done, r);

            let inv = {
                let pivot_val = rows[done].get(col);
                Rat::one() / pivot_val
            };
            rows[done].scale(&inv);
            let pivot_row = rows[done].clone();

            for (r, row) in rows.iter_mut().enumerate() {
                if r == done {
                    continue;
                }
                let c = row.get(col);
                if !c.is_zero() {
                    row.add_scaled(&(-c), &pivot_row);
                }
            }
            rows.retain(|r| !r.is_zero());
            // The pivot row survives (its pivot entry is 1), so `done` advances.
            pivots.push(col);
            done += 1;
        }

        // Rows are in pivot order already because pivots are chosen as the
        // global minimum leading column at each step.
        (
            SparseMat {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Deterministic basis of the right kernel `{ v : M v = 0 }`.
    ///
    /// One basis vector per free column, in ascending column order; the entry
    /// at the free column itself is 1.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let (red, pivots) = self.rref();
        let pivot_set: BTreeMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(row, col)| (*col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.set(free, Rat::one());
            for (col, row) in pivot_set.iter() {
                let c = red.rows[*row].get(free);
                if !c.is_zero() {
                    v.set(*col, -c);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Kernel of the stack of `mats`: vectors annihilated by every matrix.
pub fn joint_kernel(mats: &[SparseMat]) -> Result<Vec<SparseVec>> {
    Ok(SparseMat::vstack(mats)?.kernel_basis())
}

/// True iff `v` lies in the span of `basis` (used to compare subspaces).
pub fn in_span(basis: &[SparseVec], v: &SparseVec, ncols: usize) -> bool {
    let mut mat = SparseMat::new(ncols);
    for b in basis {
        mat.push_row(b.clone());
    }
    let rank0 = mat.rank();
    mat.push_row(v.clone());
    mat.rank() == rank0
}

/// Dimension of the span of a set of sparse vectors.
pub fn span_dim(vectors: &[SparseVec], ncols: usize) -> usize {
    let mut mat = SparseMat::new(ncols);
    for v in vectors {
        mat.push_row(v.clone());
    }
    mat.rank()
}

/// Format a rational without superfluous `/1`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // `num` keeps denominators positive, but be safe.
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
