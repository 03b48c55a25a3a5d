//! Flat row-major operation tables.

use alloc::vec::Vec;

use crate::error::{AlgebraError, Result};
use crate::Elem;

/// An `n x n` binary operation table, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BinOp {
    n: usize,
    data: Vec<Elem>,
}

impl BinOp {
    pub fn new(n: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != n * n {
            return Err(AlgebraError::structure(alloc::format!(
                "table has {} entries, expected {}",
                data.len(),
                n * n
            )));
        }
        if let Some(pos) = data.iter().position(|&e| e >= n) {
            return Err(AlgebraError::structure(alloc::format!(
                "table entry {} at offset {} is out of range 0..{}",
                data[pos],
                pos,
                n
            )));
        }
        Ok(BinOp { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                data.push(f(a, b));
            }
        }
        debug_assert!(data.iter().all(|&e| e < n));
        BinOp { n, data }
    }

    #[inline]
    pub fn at(&self, a: Elem, b: Elem) -> Elem {
        self.data[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn flat(&self) -> &[Elem] {
        &self.data
    }

    /// Relabels the carrier by the permutation `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[Elem]) -> Self {
        let inv = invert(perm);
        BinOp::from_fn(self.n, |a, b| perm[self.at(inv[a], inv[b])])
    }
}

/// A `rows x cols` action table (scalar index by element index), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Action {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Action {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgebraError::structure(alloc::format!(
                "action table has {} entries, expected {}",
                data.len(),
                rows * cols
            )));
        }
        if let Some(pos) = data.iter().position(|&e| e >= cols) {
            return Err(AlgebraError::structure(alloc::format!(
                "action entry {} at offset {} is out of range 0..{}",
                data[pos],
                pos,
                cols
            )));
        }
        Ok(Action { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, Elem) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for s in 0..rows {
            for m in 0..cols {
                data.push(f(s, m));
            }
        }
        debug_assert!(data.iter().all(|&e| e < cols));
        Action { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, s: usize, m: Elem) -> Elem {
        self.data[s * self.cols + m]
    }

    pub fn flat(&self) -> &[Elem] {
        &self.data
    }

    /// Relabels elements by `perm` (scalars untouched).
    pub fn relabel_elements(&self, perm: &[Elem]) -> Self {
        let inv = invert(perm);
        Action::from_fn(self.rows, self.cols, |s, m| perm[self.at(s, inv[m])])
    }
}

pub(crate) fn invert(perm: &[Elem]) -> Vec<Elem> {
    let mut inv = alloc::vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    inv
}

/// The permutation that swaps `a` with `0` and fixes everything else.
pub(crate) fn swap_to_front(n: usize, a: Elem) -> Vec<Elem> {
    let mut perm: Vec<Elem> = (0..n).collect();
    perm.swap(0, a);
    perm
}
