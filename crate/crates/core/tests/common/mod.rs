//! Reference implementations written directly against the definitions, sharing no
//! code with the library's linear algebra or identity checker.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use superalg_core::{Polynomial, Rational, SuperAlgebra};

/// Dense structure constants of an instantiated algebra: `c[i][j][k]` is the
/// coefficient of `b_k` in `[b_i, b_j]`.
pub struct Dense {
    pub n0: usize,
    pub dim: usize,
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl Dense {
    pub fn of(a: &SuperAlgebra) -> Dense {
        let dim = a.dim();
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, cell) in a.products() {
            for (&k, p) in cell {
                c[i][j][k] = p.as_constant().expect("instantiated algebra");
            }
        }
        Dense {
            n0: a.n_even(),
            dim,
            c,
        }
    }

    pub fn odd(&self, i: usize) -> bool {
        i >= self.n0
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&f * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Every `(x, y, z, k, value)` with a nonzero `k`-component of
    /// `[x,[y,z]] - [[x,y],z] + (-1)^(|y||z|) [[x,z],y]`.
    pub fn leibniz_residuals(&self) -> Vec<(usize, usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for x in 0..self.dim {
            for y in 0..self.dim {
                for z in 0..self.dim {
                    let (ex, ey, ez) = (self.unit(x), self.unit(y), self.unit(z));
                    let lhs = self.bracket(&ex, &self.bracket(&ey, &ez));
                    let t1 = self.bracket(&self.bracket(&ex, &ey), &ez);
                    let t2 = self.bracket(&self.bracket(&ex, &ez), &ey);
                    let s = if self.odd(y) && self.odd(z) { -1 } else { 1 };
                    for k in 0..self.dim {
                        let r = &(&lhs[k] - &t1[k]) + &(&t2[k] * &Rational::from_int(s));
                        if !r.is_zero() {
                            out.push((x, y, z, k, r));
                        }
                    }
                }
            }
        }
        out
    }

    /// Dimension of each term of the lower central series, `L^1 = L`, until it
    /// stabilizes.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let mut cur: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.unit(i)).collect();
        let mut dims = vec![self.dim];
        loop {
            let mut next = Vec::new();
            for u in &cur {
                for j in 0..self.dim {
                    next.push(self.bracket(u, &self.unit(j)));
                }
            }
            let r = bareiss_rank(&next);
            if r == *dims.last().unwrap() {
                return dims;
            }
            dims.push(r);
            if r == 0 {
                return dims;
            }
            cur = independent_rows(&next);
        }
    }
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

/// Rank by fraction-free Gaussian elimination over the integers.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_integer_row(r)).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn independent_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for r in rows {
        let mut trial = kept.clone();
        trial.push(r.clone());
        if bareiss_rank(&trial) > kept.len() {
            kept = trial;
        }
    }
    kept
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Partition of a nilpotent matrix from the ranks of its powers, or `None` when some
/// power stalls above zero.
pub fn jordan_partition(a: &[Vec<Rational>]) -> Option<Vec<usize>> {
    let n = a.len();
    let mut ranks = vec![n];
    let mut p = a.to_vec();
    for _ in 0..n {
        ranks.push(bareiss_rank(&p));
        p = mat_mul(&p, a);
    }
    if *ranks.last().unwrap() != 0 {
        return None;
    }
    let mut parts = Vec::new();
    for k in (1..=n).rev() {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_k1 = if k < n { ranks[k] - ranks[k + 1] } else { 0 };
        parts.extend(std::iter::repeat_n(k, at_least_k - at_least_k1));
    }
    Some(parts)
}

/// Random integer matrix with an integer inverse: a product of elementary row
/// operations, returned with its inverse.
pub fn unimodular(
    rng: &mut ChaCha8Rng,
    n: usize,
    steps: usize,
) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let id = |n: usize| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_int((i == j) as i64))
                    .collect()
            })
            .collect()
    };
    let (mut p, mut q) = (id(n), id(n));
    if n < 2 {
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = Rational::from_int(rng.gen_range(-2..=2));
        // p <- E p with E = I + c e_ij ; q <- q E^{-1}
        let row_j = p[j].clone();
        for (t, v) in p[i].iter_mut().enumerate() {
            *v = &*v + &(&c * &row_j[t]);
        }
        for row in q.iter_mut() {
            let qi = row[i].clone();
            row[j] = &row[j] - &(&c * &qi);
        }
    }
    (p, q)
}

/// The same algebra in the basis `b'_j = sum_i P[i][j] b_i`, with `P` block diagonal
/// on the parity components.
pub fn change_basis(a: &SuperAlgebra, rng: &mut ChaCha8Rng) -> SuperAlgebra {
    let d = Dense::of(a);
    let (n0, n1) = (a.n_even(), a.n_odd());
    let (p0, q0) = unimodular(rng, n0, 3 * n0);
    let (p1, q1) = unimodular(rng, n1, 3 * n1);
    let dim = d.dim;
    let mut p = vec![vec![Rational::zero(); dim]; dim];
    let mut q = p.clone();
    for i in 0..n0 {
        for j in 0..n0 {
            p[i][j] = p0[i][j].clone();
            q[i][j] = q0[i][j].clone();
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            p[n0 + i][n0 + j] = p1[i][j].clone();
            q[n0 + i][n0 + j] = q1[i][j].clone();
        }
    }
    let col = |m: &Vec<Vec<Rational>>, j: usize| -> Vec<Rational> {
        (0..dim).map(|i| m[i][j].clone()).collect()
    };
    let mut quads = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let prod = d.bracket(&col(&p, i), &col(&p, j));
            // coordinates in the new basis: q * prod
            for k in 0..dim {
                let v = (0..dim).fold(Rational::zero(), |acc, t| &acc + &(&q[k][t] * &prod[t]));
                if !v.is_zero() {
                    quads.push((i, j, k, Polynomial::constant(v)));
                }
            }
        }
    }
    SuperAlgebra::new(
        format!("{}'", a.name()),
        a.even_basis().to_vec(),
        a.odd_basis().to_vec(),
        Vec::new(),
        quads,
    )
    .expect("basis change preserves the grading")
}

/// Random graded table of dimension `(n0|n1)` with sparse small integer constants.
pub fn random_table(rng: &mut ChaCha8Rng, n0: usize, n1: usize, density: f64) -> SuperAlgebra {
    let dim = n0 + n1;
    let odd = |i: usize| i >= n0;
    let mut quads = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if odd(k) != (odd(i) != odd(j)) || !rng.gen_bool(density) {
                    continue;
                }
                let v = rng.gen_range(-2..=2);
                if v != 0 {
                    quads.push((i, j, k, Polynomial::constant(Rational::from_int(v))));
                }
            }
        }
    }
    SuperAlgebra::new(
        "random",
        (1..=n0).map(|i| format!("e{i}")).collect(),
        (1..=n1).map(|i| format!("y{i}")).collect(),
        Vec::new(),
        quads,
    )
    .expect("graded by construction")
}
