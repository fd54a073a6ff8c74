use std::collections::BTreeMap;

use super::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Incrementally built row-echelon basis over sparse rows.
///
/// Each stored row has a leading `1` in its pivot column and only larger column
/// indices otherwise; rows are added one at a time so large, highly redundant linear
/// systems never need to be materialized.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current basis and stores it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = lead_val.clone();
                    for (&k, v) in p {
                        let entry = row.entry(k).or_insert_with(Rational::zero);
                        *entry -= &(&f * v);
                        if entry.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = lead_val.recip().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn insert_dense(&mut self, row: &[Rational]) -> bool {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.insert(sparse)
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &[Rational]) -> bool {
        let mut probe = self.clone();
        !probe.insert_dense(row)
    }

    /// Fully reduced rows, ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseRow)> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let later: Vec<usize> = r
                .keys()
                .copied()
                .filter(|&k| k != p && done.contains_key(&k))
                .collect();
            for k in later {
                let f = match r.get(&k) {
                    Some(f) => f.clone(),
                    None => continue,
                };
                for (&c, v) in &done[&k] {
                    let entry = r.entry(c).or_insert_with(Rational::zero);
                    *entry -= &(&f * v);
                    if entry.is_zero() {
                        r.remove(&c);
                    }
                }
            }
            done.insert(p, r);
        }
        done.into_iter().collect()
    }

    /// Reduced rows as dense vectors.
    pub fn reduced_dense_rows(&self) -> Vec<Vec<Rational>> {
        self.reduced_rows()
            .into_iter()
            .map(|(_, r)| {
                let mut v = vec![Rational::zero(); self.cols];
                for (k, x) in r {
                    v[k] = x;
                }
                v
            })
            .collect()
    }

    /// Null-space basis of the stored rows, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let reduced = self.reduced_rows();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (p, row) in &reduced {
                if let Some(x) = row.get(&free) {
                    v[*p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rref_rank_kernel, RatMatrix};

    #[test]
    fn agrees_with_dense_rref() {
        let m = RatMatrix::from_ints(&[
            &[0, 2, 4, 1, 0],
            &[1, 1, 0, 0, 3],
            &[1, 3, 4, 1, 3],
            &[2, 0, -4, -1, 6],
        ]);
        let mut e = SparseEchelon::new(5);
        for r in m.row_vecs() {
            e.insert_dense(r);
        }
        let dense = rref_rank_kernel(&m);
        assert_eq!(e.rank(), dense.rank);
        let rows = e.reduced_dense_rows();
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_slice(), dense.rref.row(i));
        }
        assert_eq!(e.kernel_basis(), dense.kernel_basis);
    }

    #[test]
    fn contains_detects_span_membership() {
        let mut e = SparseEchelon::new(3);
        e.insert_dense(&[Rational::one(), Rational::one(), Rational::zero()]);
        assert!(e.contains(&[
            Rational::from_int(2),
            Rational::from_int(2),
            Rational::zero()
        ]));
        assert!(!e.contains(&[Rational::zero(), Rational::one(), Rational::zero()]));
    }
}
