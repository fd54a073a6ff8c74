use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Parity, SuperAlgebra};
use crate::exactmath::{Polynomial, Rational};

/// Which identity a residual violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `[x,[y,z]] = [[x,y],z] - (-1)^(|y||z|) [[x,z],y]`
    Leibniz,
    /// `[x,y] = -(-1)^(|x||y|) [y,x]`
    Antisymmetry,
    /// `(-1)^(|x||z|)[x,[y,z]] + (-1)^(|x||y|)[y,[z,x]] + (-1)^(|y||z|)[z,[x,y]] = 0`
    Jacobi,
}

/// Nonzero component of an identity evaluated on basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residual {
    pub identity: Identity,
    /// Basis labels the identity was evaluated on (three, or two for antisymmetry).
    pub args: Vec<String>,
    pub component: String,
    pub value: Polynomial,
}

impl std::fmt::Display for Residual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?}({}) at {}: {}",
            self.identity,
            self.args.join(", "),
            self.component,
            self.value
        )
    }
}

type SymCell = Vec<(usize, Polynomial)>;

struct SymbolicTable {
    dim: usize,
    parities: Vec<Parity>,
    cells: Vec<Vec<SymCell>>,
}

impl SymbolicTable {
    fn new(a: &SuperAlgebra) -> Self {
        let dim = a.dim();
        let mut cells = vec![vec![Vec::new(); dim]; dim];
        for (i, j, cell) in a.products() {
            cells[i][j] = cell.iter().map(|(&k, p)| (k, p.clone())).collect();
        }
        SymbolicTable {
            dim,
            parities: (0..dim).map(|i| a.parity(i)).collect(),
            cells,
        }
    }

    /// `acc += sign * [[a, b], c]`
    fn add_left_nested(
        &self,
        acc: &mut BTreeMap<usize, Polynomial>,
        a: usize,
        b: usize,
        c: usize,
        sign: &Rational,
    ) {
        for (l, p) in &self.cells[a][b] {
            for (m, q) in &self.cells[*l][c] {
                acc.entry(*m).or_default().add_scaled(&p.mul_ref(q), sign);
            }
        }
    }

    /// `acc += sign * [a, [b, c]]`
    fn add_right_nested(
        &self,
        acc: &mut BTreeMap<usize, Polynomial>,
        a: usize,
        b: usize,
        c: usize,
        sign: &Rational,
    ) {
        for (l, p) in &self.cells[b][c] {
            for (m, q) in &self.cells[a][*l] {
                acc.entry(*m).or_default().add_scaled(&p.mul_ref(q), sign);
            }
        }
    }
}

fn push_residuals(
    out: &mut Vec<Residual>,
    a: &SuperAlgebra,
    identity: Identity,
    args: &[usize],
    acc: BTreeMap<usize, Polynomial>,
) {
    for (k, value) in acc {
        if !value.is_zero() {
            out.push(Residual {
                identity,
                args: args.iter().map(|&i| a.label(i).to_string()).collect(),
                component: a.label(k).to_string(),
                value,
            });
        }
    }
}

/// Residuals of the Leibniz superidentity over all basis triples, symbolically in the
/// parameters. Empty iff the identity holds identically. Triples are visited in
/// lexicographic basis order.
pub fn check_leibniz(a: &SuperAlgebra) -> Vec<Residual> {
    let t = SymbolicTable::new(a);
    let one = Rational::one();
    let minus = -Rational::one();
    let mut out = Vec::new();
    for x in 0..t.dim {
        for y in 0..t.dim {
            for z in 0..t.dim {
                let mut acc = BTreeMap::new();
                t.add_right_nested(&mut acc, x, y, z, &one);
                t.add_left_nested(&mut acc, x, y, z, &minus);
                let sign = t.parities[y].sign(t.parities[z]);
                t.add_left_nested(&mut acc, x, z, y, &sign);
                push_residuals(&mut out, a, Identity::Leibniz, &[x, y, z], acc);
            }
        }
    }
    out
}

/// Residuals of graded antisymmetry (over unordered basis pairs) followed by the Jacobi
/// superidentity (over basis triples). Empty iff the algebra is a Lie superalgebra.
pub fn check_lie(a: &SuperAlgebra) -> Vec<Residual> {
    let t = SymbolicTable::new(a);
    let mut out = Vec::new();
    for x in 0..t.dim {
        for y in x..t.dim {
            let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (k, p) in &t.cells[x][y] {
                acc.entry(*k).or_default().add_assign_ref(p);
            }
            let sign = t.parities[x].sign(t.parities[y]);
            for (k, p) in &t.cells[y][x] {
                acc.entry(*k).or_default().add_scaled(p, &sign);
            }
            push_residuals(&mut out, a, Identity::Antisymmetry, &[x, y], acc);
        }
    }
    for x in 0..t.dim {
        for y in 0..t.dim {
            for z in 0..t.dim {
                let (px, py, pz) = (t.parities[x], t.parities[y], t.parities[z]);
                let mut acc = BTreeMap::new();
                t.add_right_nested(&mut acc, x, y, z, &px.sign(pz));
                t.add_right_nested(&mut acc, y, z, x, &px.sign(py));
                t.add_right_nested(&mut acc, z, x, y, &py.sign(pz));
                push_residuals(&mut out, a, Identity::Jacobi, &[x, y, z], acc);
            }
        }
    }
    out
}
