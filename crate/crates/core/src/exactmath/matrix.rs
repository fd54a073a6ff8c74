use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::Error;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    #[serde(rename = "entries")]
    data: Vec<Vec<Rational>>,
}

/// Output of [`rref_rank_kernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefRankKernel {
    pub rref: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub kernel_basis: Vec<Vec<Rational>>,
}

/// Jordan type of a square matrix: the descending block sizes of a nilpotent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JordanType {
    Nilpotent(Vec<usize>),
    NotNilpotent,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from small integers; convenient in tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
            .collect();
        RatMatrix::from_rows(data).expect("rectangular literal")
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Rational::is_zero))
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i][i].clone())
            .sum()
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i][i].clone())
            .collect()
    }

    /// Entries strictly above the diagonal are zero.
    pub fn is_lower_triangular(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().skip(i + 1).all(Rational::is_zero))
    }

    /// Entries strictly below the diagonal are zero.
    pub fn is_upper_triangular(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().take(i.min(self.cols)).all(Rational::is_zero))
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.iter().flat_map(|r| r.iter().cloned()).collect()
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        assert!(self.is_square());
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients `[1, c1, ..., ck]` of `det(tI - A) = t^k + c1 t^(k-1) + ... + ck`,
    /// by the Faddeev-LeVerrier recurrence (exact over the rationals).
    pub fn char_poly(&self) -> Vec<Rational> {
        assert!(self.is_square());
        let k = self.rows;
        let mut coeffs = vec![Rational::one()];
        let mut m = RatMatrix::zeros(k, k);
        for step in 1..=k {
            let mut next = self * &m;
            for i in 0..k {
                next.data[i][i] += &coeffs[step - 1];
            }
            let am = self * &next;
            coeffs.push(-(am.trace() / Rational::from_int(step as i64)));
            m = next;
        }
        coeffs
    }

    /// Square sub-block on the given row/column index set.
    pub fn principal_block(&self, idx: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.data[a][b] = self.data[i][j].clone();
            }
        }
        m
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip().expect("nonzero pivot");
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *v -= &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            RatMatrix {
                rows: self.rows,
                cols: self.cols,
                data: m,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced row-echelon form.
    pub fn row_space_basis(&self) -> RatMatrix {
        let (r, piv) = self.rref();
        RatMatrix {
            rows: piv.len(),
            cols: self.cols,
            data: r.data.into_iter().take(piv.len()).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form, rank, and a null-space basis (one vector per free column,
/// with a `1` in that column).
pub fn rref_rank_kernel(m: &RatMatrix) -> RrefRankKernel {
    let (rref, pivots) = m.rref();
    let mut kernel_basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rref.get(r, free);
        }
        kernel_basis.push(v);
    }
    RrefRankKernel {
        rank: pivots.len(),
        rref,
        pivots,
        kernel_basis,
    }
}

/// Jordan type of a nilpotent matrix from its rank sequence: the number of blocks of
/// size at least `k` is `rank(M^(k-1)) - rank(M^k)`.
pub fn nilpotent_jordan_type(m: &RatMatrix) -> Result<JordanType, Error> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "Jordan type needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = RatMatrix::identity(n);
    loop {
        power = &power * m;
        let r = power.rank();
        let prev = *ranks.last().expect("nonempty");
        if r == prev {
            if r == 0 {
                break;
            }
            return Ok(JordanType::NotNilpotent);
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    // at_least[k-1] = number of blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::with_capacity(n);
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(JordanType::Nilpotent(parts))
}
