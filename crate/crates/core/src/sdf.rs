//! Superalgebra description files: the JSON interchange format.
//!
//! ```json
//! {"name": "N23", "even_basis": ["e1", "e2"], "odd_basis": ["y1", "y2", "y3"],
//!  "parameters": [], "products": [{"left": "y1", "right": "e1", "value": [["y2", "1"]]}]}
//! ```
//!
//! Omitted products are zero. Coefficients are rationals or polynomial expressions in
//! the declared parameters. Emission is canonical (products in basis order, components
//! in basis order, coefficients in canonical polynomial form), so writing a loaded file
//! reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SdfProduct {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SdfDocument {
    pub name: String,
    pub even_basis: Vec<String>,
    pub odd_basis: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub products: Vec<SdfProduct>,
}

impl SdfDocument {
    pub fn from_algebra(a: &SuperAlgebra) -> Self {
        let products = a
            .products()
            .map(|(i, j, cell)| SdfProduct {
                left: a.label(i).to_string(),
                right: a.label(j).to_string(),
                value: cell
                    .iter()
                    .map(|(&k, p)| (a.label(k).to_string(), p.to_string()))
                    .collect(),
            })
            .collect();
        SdfDocument {
            name: a.name().to_string(),
            even_basis: a.even_basis().to_vec(),
            odd_basis: a.odd_basis().to_vec(),
            parameters: a.parameters().to_vec(),
            products,
        }
    }

    pub fn to_algebra(&self) -> Result<SuperAlgebra> {
        let index: BTreeMap<&str, usize> = self
            .even_basis
            .iter()
            .chain(&self.odd_basis)
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |l: &str, ctx: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown basis label `{l}` in {ctx}")))
        };
        let mut seen = BTreeSet::new();
        let mut quads = Vec::new();
        for p in &self.products {
            let ctx = format!("[{}, {}]", p.left, p.right);
            let i = lookup(&p.left, &ctx)?;
            let j = lookup(&p.right, &ctx)?;
            if !seen.insert((i, j)) {
                return Err(Error::InvalidAlgebra(format!("duplicate product {ctx}")));
            }
            let mut comps = BTreeSet::new();
            for (basis, coeff) in &p.value {
                let k = lookup(basis, &ctx)?;
                if !comps.insert(k) {
                    return Err(Error::InvalidAlgebra(format!(
                        "component `{basis}` repeated in {ctx}"
                    )));
                }
                let c = Polynomial::parse(coeff)
                    .map_err(|e| Error::Parse(format!("coefficient of {basis} in {ctx}: {e}")))?;
                quads.push((i, j, k, c));
            }
        }
        SuperAlgebra::new(
            self.name.clone(),
            self.even_basis.clone(),
            self.odd_basis.clone(),
            self.parameters.clone(),
            quads,
        )
    }
}

/// Parses an SDF document and validates it into an algebra.
pub fn from_json(text: &str) -> Result<SuperAlgebra> {
    let doc: SdfDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("SDF: {e}")))?;
    doc.to_algebra()
}

/// Canonical pretty-printed SDF text, newline-terminated.
pub fn to_json(a: &SuperAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&SdfDocument::from_algebra(a))
        .expect("SDF documents always serialize");
    s.push('\n');
    s
}
