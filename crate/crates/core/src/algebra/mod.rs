//! Superalgebras given by structure constants, and the invariants computed from them.

mod charseq;
mod identities;
mod subspace;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, RatMatrix, Rational};

pub use charseq::{char_sequence, CharSequence, SamplingOptions};
pub use identities::{check_leibniz, check_lie, Identity, Residual};
pub use subspace::{
    derived_series, even_part_derived_series, is_nilpotent, is_solvable, lower_central_series,
    nilindex, right_annihilator, subspace_product, GradedSubspace,
};

/// Z_2 grading label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    /// `(-1)^(self * other)`
    pub fn sign(self, other: Parity) -> Rational {
        Rational::sign(self.bit() * other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Coordinates in the algebra's basis: even basis first, then odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVector {
    pub coords: Vec<Rational>,
}

impl GradedVector {
    pub fn zero(dim: usize) -> Self {
        GradedVector {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = GradedVector::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        GradedVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedVector {
        GradedVector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

type Cell = BTreeMap<usize, Polynomial>;

/// A finite-dimensional Z_2-graded algebra given by (possibly parametric) structure
/// constants `[b_i, b_j] = sum_k c_ij^k b_k`.
///
/// Basis order is fixed: the even basis in the given order, then the odd basis.
/// Validated at construction: grading, label uniqueness, declared parameters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperAlgebra {
    name: String,
    even_basis: Vec<String>,
    odd_basis: Vec<String>,
    parameters: Vec<String>,
    structure: BTreeMap<(usize, usize), Cell>,
}

/// Numeric structure constants of an instantiated algebra.
#[derive(Debug, Clone)]
pub struct NumericTable {
    dim: usize,
    parities: Vec<Parity>,
    cells: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl NumericTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    /// Nonzero components of `[b_i, b_j]`.
    pub fn cell(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.cells[i][j]
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in &self.cells[i][j] {
                    out[*k] += &(&f * c);
                }
            }
        }
        out
    }
}

impl SuperAlgebra {
    /// Assembles an algebra from `(left, right, target, coefficient)` index quadruples.
    /// Repeated cells accumulate.
    pub fn new(
        name: impl Into<String>,
        even_basis: Vec<String>,
        odd_basis: Vec<String>,
        parameters: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, usize, Polynomial)>,
    ) -> Result<Self> {
        let name = name.into();
        if even_basis.is_empty() {
            return Err(Error::InvalidAlgebra("even part must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for l in even_basis.iter().chain(&odd_basis) {
            if l.is_empty() {
                return Err(Error::InvalidAlgebra("empty basis label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate basis label `{l}`"
                )));
            }
        }
        let mut params: Vec<String> = parameters;
        params.sort();
        params.dedup();
        if let Some(p) = params.iter().find(|p| seen.contains(p.as_str())) {
            return Err(Error::InvalidAlgebra(format!(
                "parameter `{p}` clashes with a basis label"
            )));
        }
        let mut alg = SuperAlgebra {
            name,
            even_basis,
            odd_basis,
            parameters: params,
            structure: BTreeMap::new(),
        };
        let dim = alg.dim();
        for (i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "product index out of range ({i}, {j}) -> {k}"
                )));
            }
            if c.is_zero() {
                continue;
            }
            if alg.parity(k) != alg.parity(i).add(alg.parity(j)) {
                return Err(Error::InvalidAlgebra(format!(
                    "grading violation in [{}, {}]: component {} has the wrong parity",
                    alg.label(i),
                    alg.label(j),
                    alg.label(k)
                )));
            }
            for v in c.variables() {
                if alg.parameters.binary_search(&v).is_err() {
                    return Err(Error::InvalidAlgebra(format!(
                        "undeclared parameter `{v}` in [{}, {}]",
                        alg.label(i),
                        alg.label(j)
                    )));
                }
            }
            let cell = alg.structure.entry((i, j)).or_default();
            let slot = cell.entry(k).or_default();
            slot.add_assign_ref(&c);
            if slot.is_zero() {
                cell.remove(&k);
            }
            if cell.is_empty() {
                alg.structure.remove(&(i, j));
            }
        }
        Ok(alg)
    }

    /// Abelian (all products zero) superalgebra of dimension `(n0|n1)`.
    pub fn abelian(n0: usize, n1: usize) -> Self {
        let even = (1..=n0).map(|i| format!("e{i}")).collect();
        let odd = (1..=n1).map(|i| format!("y{i}")).collect();
        SuperAlgebra::new("abelian", even, odd, vec![], std::iter::empty())
            .expect("abelian algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn even_basis(&self) -> &[String] {
        &self.even_basis
    }

    pub fn odd_basis(&self) -> &[String] {
        &self.odd_basis
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn n_even(&self) -> usize {
        self.even_basis.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.n_even() + self.n_odd()
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.n_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn label(&self, i: usize) -> &str {
        if i < self.n_even() {
            &self.even_basis[i]
        } else {
            &self.odd_basis[i - self.n_even()]
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.even_basis
            .iter()
            .chain(&self.odd_basis)
            .map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels().position(|l| l == label)
    }

    /// Nonzero cells in lexicographic `(left, right)` order.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &BTreeMap<usize, Polynomial>)> {
        self.structure.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_products(&self) -> usize {
        self.structure.len()
    }

    /// Symbolic value of `[b_i, b_j]`.
    pub fn cell(&self, i: usize, j: usize) -> Option<&BTreeMap<usize, Polynomial>> {
        self.structure.get(&(i, j))
    }

    /// Symbolic `[b_i, b_j]` looked up by labels.
    pub fn product_by_label(
        &self,
        left: &str,
        right: &str,
    ) -> Option<BTreeMap<String, Polynomial>> {
        let (i, j) = (self.index_of(left)?, self.index_of(right)?);
        Some(
            self.cell(i, j)
                .map(|c| {
                    c.iter()
                        .map(|(k, p)| (self.label(*k).to_string(), p.clone()))
                        .collect()
                })
                .unwrap_or_default(),
        )
    }

    /// Parameters that occur in some structure constant.
    pub fn used_parameters(&self) -> BTreeSet<String> {
        self.structure
            .values()
            .flat_map(|c| c.values().flat_map(Polynomial::variables))
            .collect()
    }

    pub fn is_instantiated(&self) -> bool {
        self.used_parameters().is_empty()
    }

    /// Substitutes values for parameters. Assigned parameters are dropped from the
    /// declared list; unknown names are rejected.
    pub fn instantiate(&self, assignment: &BTreeMap<String, Rational>) -> Result<SuperAlgebra> {
        if let Some(k) = assignment
            .keys()
            .find(|k| self.parameters.binary_search(k).is_err())
        {
            return Err(Error::InvalidSpec(format!(
                "`{k}` is not a parameter of {}",
                self.name
            )));
        }
        let params = self
            .parameters
            .iter()
            .filter(|p| !assignment.contains_key(*p))
            .cloned()
            .collect();
        let products = self.structure.iter().flat_map(|(&(i, j), cell)| {
            cell.iter()
                .map(move |(&k, p)| (i, j, k, p.substitute(assignment)))
        });
        SuperAlgebra::new(
            self.name.clone(),
            self.even_basis.clone(),
            self.odd_basis.clone(),
            params,
            products.collect::<Vec<_>>(),
        )
    }

    /// Numeric constants; fails while any structure constant still carries a parameter.
    pub fn numeric(&self) -> Result<NumericTable> {
        let used = self.used_parameters();
        if !used.is_empty() {
            let names: Vec<String> = used.into_iter().collect();
            return Err(Error::Uninstantiated(self.name.clone(), names.join(", ")));
        }
        let dim = self.dim();
        let mut cells = vec![vec![Vec::new(); dim]; dim];
        for (&(i, j), cell) in &self.structure {
            cells[i][j] = cell
                .iter()
                .map(|(&k, p)| (k, p.as_constant().expect("instantiated")))
                .collect();
        }
        Ok(NumericTable {
            dim,
            parities: (0..dim).map(|i| self.parity(i)).collect(),
            cells,
        })
    }

    /// Parity of a homogeneous vector; zero counts as even. `None` if mixed.
    pub fn homogeneous_parity(&self, x: &GradedVector) -> Option<Parity> {
        let n0 = self.n_even();
        let has_even = x.coords[..n0].iter().any(|c| !c.is_zero());
        let has_odd = x.coords[n0..].iter().any(|c| !c.is_zero());
        match (has_even, has_odd) {
            (true, true) => None,
            (false, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    fn check_len(&self, x: &GradedVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "vector of length {} in algebra of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Bilinear product `[x, y]`.
    pub fn product(&self, x: &GradedVector, y: &GradedVector) -> Result<GradedVector> {
        self.check_len(x)?;
        self.check_len(y)?;
        let t = self.numeric()?;
        Ok(GradedVector {
            coords: t.product(&x.coords, &y.coords),
        })
    }

    /// Matrix of `R_x(y) = (-1)^(|x||y|) [y, x]` on the whole space; column `j` is the
    /// image of the `j`-th basis vector.
    pub fn right_mul_matrix(&self, x: &GradedVector) -> Result<RatMatrix> {
        self.check_len(x)?;
        let alpha = self.homogeneous_parity(x).ok_or(Error::NotHomogeneous)?;
        let t = self.numeric()?;
        Ok(right_mul_from_table(&t, &x.coords, alpha))
    }

    /// The sub-superalgebra spanned by a subset of basis vectors, which must be closed
    /// under the product.
    pub fn restrict(&self, indices: &[usize], name: impl Into<String>) -> Result<SuperAlgebra> {
        let keep: BTreeMap<usize, usize> = indices
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        let mut order = Vec::new();
        for &i in indices {
            match self.parity(i) {
                Parity::Even => even.push(i),
                Parity::Odd => odd.push(i),
            }
        }
        order.extend(&even);
        order.extend(&odd);
        let remap: BTreeMap<usize, usize> = order
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut products = Vec::new();
        for (&(i, j), cell) in &self.structure {
            if !(keep.contains_key(&i) && keep.contains_key(&j)) {
                continue;
            }
            for (&k, p) in cell {
                let Some(&nk) = remap.get(&k) else {
                    return Err(Error::InvalidAlgebra(format!(
                        "span is not closed: [{}, {}] has a component along {}",
                        self.label(i),
                        self.label(j),
                        self.label(k)
                    )));
                };
                products.push((remap[&i], remap[&j], nk, p.clone()));
            }
        }
        let used: BTreeSet<String> = products
            .iter()
            .flat_map(|(_, _, _, p)| p.variables())
            .collect();
        SuperAlgebra::new(
            name,
            even.iter().map(|&i| self.label(i).to_string()).collect(),
            odd.iter().map(|&i| self.label(i).to_string()).collect(),
            self.parameters
                .iter()
                .filter(|p| used.contains(*p))
                .cloned()
                .collect(),
            products,
        )
    }
}

pub(crate) fn right_mul_from_table(t: &NumericTable, x: &[Rational], alpha: Parity) -> RatMatrix {
    let dim = t.dim();
    let mut m = RatMatrix::zeros(dim, dim);
    for j in 0..dim {
        let sign = alpha.sign(t.parity(j));
        let mut col = vec![Rational::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in t.cell(j, i) {
                col[*k] += &(xi * c);
            }
        }
        for (k, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(k, j, &v * &sign);
            }
        }
    }
    m
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SuperAlgebra {} ({}|{}) params={:?}",
            self.name,
            self.n_even(),
            self.n_odd(),
            self.parameters
        )?;
        for (&(i, j), cell) in &self.structure {
            let terms: Vec<String> = cell
                .iter()
                .map(|(k, p)| format!("({p})*{}", self.label(*k)))
                .collect();
            writeln!(
                f,
                "  [{}, {}] = {}",
                self.label(i),
                self.label(j),
                terms.join(" + ")
            )?;
        }
        Ok(())
    }
}
