use serde::{Deserialize, Serialize};

use super::{GradedVector, NumericTable, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{RatMatrix, Rational, SparseEchelon};

/// Graded subspace stored as the reduced row-echelon bases of its even and odd parts,
/// each in the coordinates of its own parity component. The representation is unique,
/// so equality of values is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedSubspace {
    pub even_part: RatMatrix,
    pub odd_part: RatMatrix,
}

fn echelon_matrix(e: &SparseEchelon) -> RatMatrix {
    let rows = e.reduced_dense_rows();
    if rows.is_empty() {
        RatMatrix::zeros(0, e.cols())
    } else {
        RatMatrix::from_rows(rows).expect("rectangular")
    }
}

impl GradedSubspace {
    pub fn zero(n0: usize, n1: usize) -> Self {
        GradedSubspace {
            even_part: RatMatrix::zeros(0, n0),
            odd_part: RatMatrix::zeros(0, n1),
        }
    }

    pub fn full(n0: usize, n1: usize) -> Self {
        GradedSubspace {
            even_part: RatMatrix::identity(n0),
            odd_part: RatMatrix::identity(n1),
        }
    }

    /// Span of homogeneous vectors given in full coordinates.
    pub fn span(n0: usize, n1: usize, vectors: &[GradedVector]) -> Result<Self> {
        let mut even = SparseEchelon::new(n0);
        let mut odd = SparseEchelon::new(n1);
        for v in vectors {
            if v.len() != n0 + n1 {
                return Err(Error::Dimension(
                    "vector length does not match algebra".into(),
                ));
            }
            let (e, o) = v.coords.split_at(n0);
            let has_e = e.iter().any(|c| !c.is_zero());
            let has_o = o.iter().any(|c| !c.is_zero());
            if has_e && has_o {
                return Err(Error::NotHomogeneous);
            }
            if has_e {
                even.insert_dense(e);
            } else if has_o {
                odd.insert_dense(o);
            }
        }
        Ok(GradedSubspace {
            even_part: echelon_matrix(&even),
            odd_part: echelon_matrix(&odd),
        })
    }

    pub fn n_even(&self) -> usize {
        self.even_part.cols()
    }

    pub fn n_odd(&self) -> usize {
        self.odd_part.cols()
    }

    /// `(dim of even part, dim of odd part)`
    pub fn dims(&self) -> (usize, usize) {
        (self.even_part.rows(), self.odd_part.rows())
    }

    pub fn dim(&self) -> usize {
        self.even_part.rows() + self.odd_part.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors lifted to full coordinates, even ones first.
    pub fn basis_vectors(&self) -> Vec<GradedVector> {
        let (n0, n1) = (self.n_even(), self.n_odd());
        let mut out = Vec::with_capacity(self.dim());
        for r in self.even_part.row_vecs() {
            let mut c = r.clone();
            c.extend(std::iter::repeat_n(Rational::zero(), n1));
            out.push(GradedVector { coords: c });
        }
        for r in self.odd_part.row_vecs() {
            let mut c = vec![Rational::zero(); n0];
            c.extend(r.iter().cloned());
            out.push(GradedVector { coords: c });
        }
        out
    }

    fn part_echelon(part: &RatMatrix) -> SparseEchelon {
        let mut e = SparseEchelon::new(part.cols());
        for r in part.row_vecs() {
            e.insert_dense(r);
        }
        e
    }

    /// Membership of an arbitrary (not necessarily homogeneous) vector.
    pub fn contains(&self, v: &GradedVector) -> bool {
        let n0 = self.n_even();
        let (e, o) = v.coords.split_at(n0);
        let in_even =
            e.iter().all(Rational::is_zero) || Self::part_echelon(&self.even_part).contains(e);
        let in_odd =
            o.iter().all(Rational::is_zero) || Self::part_echelon(&self.odd_part).contains(o);
        in_even && in_odd
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        let ee = Self::part_echelon(&other.even_part);
        let oe = Self::part_echelon(&other.odd_part);
        self.even_part.row_vecs().iter().all(|r| ee.contains(r))
            && self.odd_part.row_vecs().iter().all(|r| oe.contains(r))
    }

    pub fn even_only(&self) -> GradedSubspace {
        GradedSubspace {
            even_part: self.even_part.clone(),
            odd_part: RatMatrix::zeros(0, self.n_odd()),
        }
    }
}

fn product_span(
    t: &NumericTable,
    n0: usize,
    n1: usize,
    u: &GradedSubspace,
    v: &GradedSubspace,
) -> GradedSubspace {
    let mut even = SparseEchelon::new(n0);
    let mut odd = SparseEchelon::new(n1);
    let vs = v.basis_vectors();
    for a in u.basis_vectors() {
        for b in &vs {
            let p = t.product(&a.coords, &b.coords);
            let (e, o) = p.split_at(n0);
            // homogeneous inputs give homogeneous products
            if e.iter().any(|c| !c.is_zero()) {
                even.insert_dense(e);
            }
            if o.iter().any(|c| !c.is_zero()) {
                odd.insert_dense(o);
            }
        }
    }
    GradedSubspace {
        even_part: echelon_matrix(&even),
        odd_part: echelon_matrix(&odd),
    }
}

/// `[U, V]`: span of products of basis vectors.
pub fn subspace_product(
    a: &SuperAlgebra,
    u: &GradedSubspace,
    v: &GradedSubspace,
) -> Result<GradedSubspace> {
    let t = a.numeric()?;
    Ok(product_span(&t, a.n_even(), a.n_odd(), u, v))
}

fn series(
    a: &SuperAlgebra,
    start: GradedSubspace,
    step: impl Fn(&NumericTable, &GradedSubspace) -> GradedSubspace,
) -> Result<Vec<GradedSubspace>> {
    let t = a.numeric()?;
    let mut out = vec![start];
    loop {
        let next = step(&t, out.last().expect("nonempty"));
        if &next == out.last().expect("nonempty") {
            break;
        }
        let zero = next.is_zero();
        out.push(next);
        if zero {
            break;
        }
    }
    Ok(out)
}

/// `L^1 = L`, `L^(k+1) = [L^k, L]` until the terms stabilize. The last entry is the
/// stable term (zero exactly when the algebra is nilpotent).
pub fn lower_central_series(a: &SuperAlgebra) -> Result<Vec<GradedSubspace>> {
    let (n0, n1) = (a.n_even(), a.n_odd());
    let whole = GradedSubspace::full(n0, n1);
    series(a, whole.clone(), move |t, cur| {
        product_span(t, n0, n1, cur, &whole)
    })
}

/// `L^(1) = L`, `L^(k+1) = [L^(k), L^(k)]` until the terms stabilize.
pub fn derived_series(a: &SuperAlgebra) -> Result<Vec<GradedSubspace>> {
    let (n0, n1) = (a.n_even(), a.n_odd());
    series(a, GradedSubspace::full(n0, n1), move |t, cur| {
        product_span(t, n0, n1, cur, cur)
    })
}

/// Derived series of the even part `L_0` viewed as a Leibniz algebra.
pub fn even_part_derived_series(a: &SuperAlgebra) -> Result<Vec<GradedSubspace>> {
    let (n0, n1) = (a.n_even(), a.n_odd());
    series(
        a,
        GradedSubspace::full(n0, n1).even_only(),
        move |t, cur| product_span(t, n0, n1, cur, cur).even_only(),
    )
}

/// Smallest `s` with `L^s = 0`, or `None` when the algebra is not nilpotent.
pub fn nilindex(a: &SuperAlgebra) -> Result<Option<usize>> {
    let lcs = lower_central_series(a)?;
    Ok(lcs.iter().position(GradedSubspace::is_zero).map(|p| p + 1))
}

pub fn is_nilpotent(a: &SuperAlgebra) -> Result<bool> {
    Ok(nilindex(a)?.is_some())
}

/// Solvability from the derived series, cross-checked against solvability of `L_0`.
/// A disagreement between the two routes is an internal error.
pub fn is_solvable(a: &SuperAlgebra) -> Result<bool> {
    let full = derived_series(a)?
        .last()
        .is_some_and(GradedSubspace::is_zero);
    let even = even_part_derived_series(a)?
        .last()
        .is_some_and(GradedSubspace::is_zero);
    if full != even {
        return Err(Error::Internal(format!(
            "{}: derived series says solvable={full} but the even part says solvable={even}",
            a.name()
        )));
    }
    Ok(full)
}

/// `Ann_r(L) = { z : [L, z] = 0 }`, solved per parity component.
pub fn right_annihilator(a: &SuperAlgebra) -> Result<GradedSubspace> {
    let t = a.numeric()?;
    let (n0, n1) = (a.n_even(), a.n_odd());
    let dim = a.dim();
    let mut parts = Vec::new();
    for (offset, width) in [(0, n0), (n0, n1)] {
        // one row per (i, k): sum_j z_j c_{i, offset+j}^k = 0
        let mut eqs = SparseEchelon::new(width);
        for i in 0..dim {
            let mut rows: Vec<std::collections::BTreeMap<usize, Rational>> =
                vec![Default::default(); dim];
            for j in 0..width {
                for (k, c) in t.cell(i, offset + j) {
                    rows[*k].insert(j, c.clone());
                }
            }
            for r in rows {
                if !r.is_empty() {
                    eqs.insert(r);
                }
            }
        }
        let kernel = eqs.kernel_basis();
        let mut span = SparseEchelon::new(width);
        for v in &kernel {
            span.insert_dense(v);
        }
        parts.push(echelon_matrix(&span));
    }
    let odd_part = parts.pop().expect("two parts");
    let even_part = parts.pop().expect("two parts");
    Ok(GradedSubspace {
        even_part,
        odd_part,
    })
}

#[cfg(test)]
mod tests {
    use super::super::test_util::n23;
    use super::*;

    fn dims(series: &[GradedSubspace]) -> Vec<(usize, usize)> {
        series.iter().map(GradedSubspace::dims).collect()
    }

    #[test]
    fn abelian_series() {
        let a = SuperAlgebra::abelian(2, 2);
        let lcs = lower_central_series(&a).unwrap();
        assert_eq!(dims(&lcs), vec![(2, 2), (0, 0)]);
        assert_eq!(nilindex(&a).unwrap(), Some(2));
        assert!(is_solvable(&a).unwrap());
        assert_eq!(right_annihilator(&a).unwrap(), GradedSubspace::full(2, 2));
    }

    #[test]
    fn n23_square_and_cube() {
        let a = n23();
        let l = GradedSubspace::full(2, 3);
        let l2 = subspace_product(&a, &l, &l).unwrap();
        assert_eq!(l2.dims(), (1, 2));
        let l3 = subspace_product(&a, &l2, &l).unwrap();
        assert_eq!(l3.dims(), (1, 1));
        // span{e2, y3}
        assert!(l3.contains(&GradedVector::basis(5, 1)));
        assert!(l3.contains(&GradedVector::basis(5, 4)));
    }

    #[test]
    fn n23_nilindex_is_five() {
        let a = n23();
        let lcs = lower_central_series(&a).unwrap();
        assert_eq!(dims(&lcs), vec![(2, 3), (1, 2), (1, 1), (1, 0), (0, 0)]);
        assert_eq!(nilindex(&a).unwrap(), Some(5));
    }

    #[test]
    fn n23_right_annihilator() {
        let a = n23();
        let ann = right_annihilator(&a).unwrap();
        assert_eq!(ann.dims(), (1, 0));
        assert!(ann.contains(&GradedVector::basis(5, 1)));
    }

    #[test]
    fn series_are_monotone() {
        let a = n23();
        for s in [
            lower_central_series(&a).unwrap(),
            derived_series(&a).unwrap(),
        ] {
            for w in s.windows(2) {
                assert!(w[1].is_subspace_of(&w[0]));
            }
        }
    }

    #[test]
    fn span_rejects_mixed_vectors() {
        let mut v = GradedVector::basis(3, 0);
        v.coords[2] = Rational::one();
        assert_eq!(
            GradedSubspace::span(2, 1, &[v]).unwrap_err(),
            Error::NotHomogeneous
        );
    }
}
