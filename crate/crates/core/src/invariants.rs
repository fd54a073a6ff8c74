use serde::{Deserialize, Serialize};

use crate::algebra::{
    char_sequence, derived_series, lower_central_series, nilindex, right_annihilator,
    subspace_product, CharSequence, SamplingOptions, SuperAlgebra,
};
use crate::derivations::derivation_space;
use crate::error::Result;
use crate::exactmath::{RatMatrix, Rational};
use crate::{GradedVector, Parity};

/// Basis-independent numerical invariants of an instantiated algebra. Equal
/// fingerprints do not imply isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dims: (usize, usize),
    pub lower_central: Vec<(usize, usize)>,
    pub derived: Vec<(usize, usize)>,
    pub nilindex: Option<usize>,
    pub annihilator: (usize, usize),
    pub even_derivations: usize,
    pub odd_derivations: usize,
    /// Present only for nilpotent algebras.
    pub char_sequence: Option<CharSequence>,
    /// Scale-free summary of the spectrum of `R_x` on `[L, L]`, present when
    /// `[L, L]` has codimension one with an even complement. See [`weight_ratios`].
    pub weight_ratios: Option<Vec<Rational>>,
}

pub fn fingerprint(a: &SuperAlgebra) -> Result<Fingerprint> {
    fingerprint_with(a, &SamplingOptions::default())
}

pub fn fingerprint_with(a: &SuperAlgebra, opts: &SamplingOptions) -> Result<Fingerprint> {
    let dims = |s: Vec<crate::GradedSubspace>| s.iter().map(|t| t.dims()).collect::<Vec<_>>();
    let nil = nilindex(a)?;
    let char_sequence = match nil {
        Some(_) => char_sequence(a, opts).ok(),
        None => None,
    };
    Ok(Fingerprint {
        dims: (a.n_even(), a.n_odd()),
        lower_central: dims(lower_central_series(a)?),
        derived: dims(derived_series(a)?),
        nilindex: nil,
        annihilator: right_annihilator(a)?.dims(),
        even_derivations: derivation_space(a, Parity::Even)?.dim(),
        odd_derivations: derivation_space(a, Parity::Odd)?.dim(),
        char_sequence,
        weight_ratios: weight_ratios(a)?,
    })
}

/// Spectrum of `R_x` restricted to `D = [L, L]`, for `x` spanning an even complement of
/// `D` in `L`, reduced to something independent of the choice of `x`.
///
/// Only computed when `D` is nilpotent. Each `D^k` of its lower central series is then
/// stable under `R_x`, and `R_d` (`d` in `D`) maps `D^k` into `D^(k+1)`, so replacing `x`
/// by `x + d` does not change the characteristic polynomial
/// `t^k + c1 t^(k-1) + ... + ck` of `R_x|_D`. Rescaling `x` by `s` sends `c_j` to
/// `s^j c_j`; with `i` the first index where `c_i != 0`, the ratios `c_j^i / c_i^j` are
/// invariants. An empty list means `R_x|_D` is nilpotent.
pub fn weight_ratios(a: &SuperAlgebra) -> Result<Option<Vec<Rational>>> {
    let series = derived_series(a)?;
    let Some(d) = series.get(1) else {
        return Ok(None);
    };
    if a.dim() - d.dim() != 1 || d.dims().0 + 1 != a.n_even() {
        return Ok(None);
    }
    let mut power = d.clone();
    while !power.is_zero() {
        let next = subspace_product(a, &power, d)?;
        if next == power {
            return Ok(None);
        }
        power = next;
    }
    let dim = a.dim();
    let Some(x) = (0..a.n_even()).find(|&i| !d.contains(&GradedVector::basis(dim, i))) else {
        return Ok(None);
    };
    let r = a.right_mul_matrix(&GradedVector::basis(dim, x))?;
    let basis = d.basis_vectors();
    // Basis rows are in reduced echelon form, so coordinates are read off the pivots.
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| {
            b.coords
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero basis vector")
        })
        .collect();
    let k = basis.len();
    let mut m = RatMatrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let image = r.mul_vec(&b.coords);
        for (i, &p) in pivots.iter().enumerate() {
            m.set(i, j, image[p].clone());
        }
    }
    let c = m.char_poly();
    let Some(i) = (1..c.len()).find(|&i| !c[i].is_zero()) else {
        return Ok(Some(Vec::new()));
    };
    let ratios = (i + 1..c.len())
        .map(|j| c[j].pow(i as u32) / c[i].pow(j as u32))
        .collect();
    Ok(Some(ratios))
}

/// Names of the fingerprint fields on which two fingerprints differ.
pub fn differing_fields(x: &Fingerprint, y: &Fingerprint) -> Vec<&'static str> {
    let mut out = Vec::new();
    if x.dims != y.dims {
        out.push("dims");
    }
    if x.lower_central != y.lower_central {
        out.push("lower_central");
    }
    if x.derived != y.derived {
        out.push("derived");
    }
    if x.nilindex != y.nilindex {
        out.push("nilindex");
    }
    if x.annihilator != y.annihilator {
        out.push("annihilator");
    }
    if x.even_derivations != y.even_derivations {
        out.push("even_derivations");
    }
    if x.odd_derivations != y.odd_derivations {
        out.push("odd_derivations");
    }
    let cs = |c: &Option<CharSequence>| c.as_ref().map(|c| (c.even.clone(), c.odd.clone()));
    if cs(&x.char_sequence) != cs(&y.char_sequence) {
        out.push("char_sequence");
    }
    if x.weight_ratios != y.weight_ratios {
        out.push("weight_ratios");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilyId, FamilySpec};

    fn fp(spec: FamilySpec) -> Fingerprint {
        fingerprint(&build_family(&spec).unwrap()).unwrap()
    }

    #[test]
    fn deterministic() {
        let s = FamilySpec::new(FamilyId::N2M, 3);
        assert_eq!(fp(s.clone()), fp(s));
    }

    #[test]
    fn mh1_and_mh2_differ() {
        let a = fp(FamilySpec::new(FamilyId::MH1, 5));
        let b = fp(FamilySpec::new(FamilyId::MH2, 5));
        assert!(!differing_fields(&a, &b).is_empty());
    }

    #[test]
    fn h2_parameter_shows_in_weights() {
        let a = fp(FamilySpec::new(FamilyId::H2, 5).with("b", 1));
        let b = fp(FamilySpec::new(FamilyId::H2, 5).with("b", 2));
        assert_eq!(differing_fields(&a, &b), ["weight_ratios"]);
    }

    #[test]
    fn weight_ratios_ignore_scaling_of_x() {
        let sl = build_family(&FamilySpec::new(FamilyId::SL, 5)).unwrap();
        let f = fp(FamilySpec::new(FamilyId::SL, 5));
        assert!(f.weight_ratios.as_ref().is_some_and(|r| !r.is_empty()));
        // rescaling x multiplies every product involving it; the ratios stay put
        let mut doc = crate::sdf::SdfDocument::from_algebra(&sl);
        for p in &mut doc.products {
            let k = (p.left == "x") as i32 + (p.right == "x") as i32;
            for (_, c) in &mut p.value {
                let v: Rational = c.parse().unwrap();
                *c = (v * Rational::from_int(3).pow(k as u32)).to_string();
            }
        }
        let scaled = fingerprint(&doc.to_algebra().unwrap()).unwrap();
        assert_eq!(scaled.weight_ratios, f.weight_ratios);
    }

    #[test]
    fn nilpotent_algebras_carry_a_sequence() {
        let f = fp(FamilySpec::new(FamilyId::N2M, 3));
        assert_eq!(f.nilindex, Some(5));
        assert_eq!(f.annihilator, (1, 0));
        assert!(f.char_sequence.is_some());
        let g = fp(FamilySpec::new(FamilyId::SL, 4));
        assert!(g.char_sequence.is_none());
    }
}
