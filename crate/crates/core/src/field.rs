//! Dense matrices over prime fields.

use crate::arith::{mod_inv, mod_mul};

/// Square or rectangular matrix over the field with `p` elements, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F{}{:?}", self.p, self.to_rows())
    }
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        Self::scalar(p, n, 1)
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    pub fn diagonal(p: u64, entries: &[u64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(p, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e % p;
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to basis vector `image[i]`.
    pub fn permutation(p: u64, image: &[usize]) -> Self {
        let n = image.len();
        let mut m = Self::zero(p, n, n);
        for (i, &j) in image.iter().enumerate() {
            m.data[j * n + i] = 1;
        }
        m
    }

    /// Builds from rows; entries are reduced mod `p`. `None` for ragged input.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(FpMatrix {
            p,
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.p, self.rows)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p;
        let mut out = Self::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mod_mul(a, other.data[k * other.cols + j], p)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % p).collect();
        FpMatrix { data, ..*self }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| (acc + mod_mul(self.get(i, j), v[j], p)) % p)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self - c * I`.
    pub fn minus_scalar(&self, c: u64) -> FpMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = (m.get(i, i) + self.p - c % self.p) % self.p;
            m.set(i, i, v);
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, row * m.cols + j);
            }
            let inv = mod_inv(m.get(row, col), p);
            for j in 0..m.cols {
                let v = mod_mul(m.get(row, j), inv, p);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                let f = m.get(r, col);
                if r != row && f != 0 {
                    for j in 0..m.cols {
                        let v = (m.get(r, j) + p - mod_mul(f, m.get(row, j), p)) % p;
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dimension of the subspace fixed by `self`.
    pub fn fixed_dim(&self) -> usize {
        self.minus_scalar(1).kernel_dim()
    }

    /// Stacks matrices vertically (all with the same column count).
    pub fn vstack(parts: &[FpMatrix]) -> FpMatrix {
        let p = parts[0].p;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "dimension mismatch");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Whether `self` has multiplicative order exactly the prime `q`.
    pub fn has_prime_order(&self, q: u64) -> bool {
        !self.is_identity() && self.pow(q).is_identity()
    }
}
