//! Superderivations, nilpotency of derivation spaces and nil-independence.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{NumericTable, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{
    nilpotent_jordan_type, JordanType, RatMatrix, Rational, SparseEchelon, SparseRow,
};
use crate::families::{build_family, FamilyId, FamilySpec};

/// Basis of the space of superderivations of a fixed degree.
///
/// Each basis matrix acts on column vectors: column `j` is the image of `b_j`.
/// The basis is the reduced row-echelon basis of the flattened (row-major) matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationSpace {
    pub degree: Parity,
    pub basis: Vec<RatMatrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Square size of the matrices (the dimension of the algebra).
    pub fn size(&self) -> Option<usize> {
        self.basis.first().map(RatMatrix::rows)
    }
}

fn unknowns(a: &SuperAlgebra, degree: Parity) -> BTreeMap<(usize, usize), usize> {
    let dim = a.dim();
    let mut map = BTreeMap::new();
    for k in 0..dim {
        for j in 0..dim {
            if a.parity(k) == a.parity(j).add(degree) {
                let next = map.len();
                map.insert((k, j), next);
            }
        }
    }
    map
}

fn add_entry(row: &mut SparseRow, var: usize, c: &Rational) {
    let e = row.entry(var).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        row.remove(&var);
    }
}

/// Exact space of superderivations of the given degree. Every returned basis element
/// is checked against the defining identity by direct evaluation before returning.
pub fn derivation_space(a: &SuperAlgebra, degree: Parity) -> Result<DerivationSpace> {
    let t = a.numeric()?;
    let dim = a.dim();
    let vars = unknowns(a, degree);
    let mut system = SparseEchelon::new(vars.len());
    for i in 0..dim {
        let sign = degree.sign(a.parity(i));
        for j in 0..dim {
            let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
            // D([b_i, b_j]) component m: sum_l c_ij^l D[m][l]
            for (l, c) in t.cell(i, j) {
                for m in 0..dim {
                    if let Some(&v) = vars.get(&(m, *l)) {
                        add_entry(rows.entry(m).or_default(), v, c);
                    }
                }
            }
            // - [D b_i, b_j]
            for p in 0..dim {
                if let Some(&v) = vars.get(&(p, i)) {
                    for (m, c) in t.cell(p, j) {
                        add_entry(rows.entry(*m).or_default(), v, &-c);
                    }
                }
            }
            // - (-1)^(s alpha_i) [b_i, D b_j]
            for q in 0..dim {
                if let Some(&v) = vars.get(&(q, j)) {
                    for (m, c) in t.cell(i, q) {
                        add_entry(rows.entry(*m).or_default(), v, &-(c * &sign));
                    }
                }
            }
            for (_, r) in rows {
                if !r.is_empty() {
                    system.insert(r);
                }
            }
        }
    }
    let mut canon = SparseEchelon::new(dim * dim);
    for v in system.kernel_basis() {
        let row: SparseRow = vars
            .iter()
            .filter(|(_, &x)| !v[x].is_zero())
            .map(|(&(k, j), &x)| (k * dim + j, v[x].clone()))
            .collect();
        canon.insert(row);
    }
    let basis: Vec<RatMatrix> = canon
        .reduced_dense_rows()
        .into_iter()
        .map(|flat| {
            RatMatrix::from_rows(flat.chunks(dim).map(<[Rational]>::to_vec).collect())
                .expect("square")
        })
        .collect();
    for (n, d) in basis.iter().enumerate() {
        if let Some((i, j)) = derivation_defect(&t, d, degree) {
            return Err(Error::Internal(format!(
                "solver basis element {n} fails the derivation identity on ({}, {})",
                a.label(i),
                a.label(j)
            )));
        }
    }
    Ok(DerivationSpace { degree, basis })
}

/// First basis pair on which `d` violates the degree-`degree` derivation identity.
fn derivation_defect(t: &NumericTable, d: &RatMatrix, degree: Parity) -> Option<(usize, usize)> {
    let dim = t.dim();
    let cols: Vec<Vec<Rational>> = (0..dim).map(|j| d.column(j)).collect();
    let basis = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v
    };
    for i in 0..dim {
        let sign = degree.sign(t.parity(i));
        for j in 0..dim {
            let lhs = d.mul_vec(&t.product(&basis(i), &basis(j)));
            let a = t.product(&cols[i], &basis(j));
            let b = t.product(&basis(i), &cols[j]);
            let ok = (0..dim).all(|m| lhs[m] == &a[m] + &(&sign * &b[m]));
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether `d` is a superderivation of the given degree. Fails on an uninstantiated
/// algebra or a matrix of the wrong size.
pub fn is_derivation(a: &SuperAlgebra, d: &RatMatrix, degree: Parity) -> Result<bool> {
    if d.rows() != a.dim() || d.cols() != a.dim() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix on an algebra of dimension {}",
            d.rows(),
            d.cols(),
            a.dim()
        )));
    }
    let t = a.numeric()?;
    let compatible = (0..a.dim()).all(|k| {
        (0..a.dim()).all(|j| d.get(k, j).is_zero() || a.parity(k) == a.parity(j).add(degree))
    });
    Ok(compatible && derivation_defect(&t, d, degree).is_none())
}

/// Outcome of [`space_all_nilpotent`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyCertificate {
    pub all_nilpotent: bool,
    /// Smallest `k` such that all products of `k` basis matrices vanish.
    pub vanishing_length: Option<usize>,
    /// A non-nilpotent element of the span, when one was found among the basis
    /// elements or their products.
    pub witness: Option<RatMatrix>,
}

/// Decides whether every element of the span is nilpotent by checking that the
/// associative algebra generated by the basis is nilpotent: products of length equal to
/// the matrix size must all vanish. For a space closed under commutators (such as a
/// derivation space) the two conditions are equivalent.
pub fn space_all_nilpotent(s: &DerivationSpace) -> NilpotencyCertificate {
    let Some(n) = s.size() else {
        return NilpotencyCertificate {
            all_nilpotent: true,
            vanishing_length: Some(1),
            witness: None,
        };
    };
    for d in &s.basis {
        if !d.trace().is_zero() {
            return not_nilpotent(d.clone());
        }
    }
    for d in &s.basis {
        if matches!(nilpotent_jordan_type(d), Ok(JordanType::NotNilpotent)) {
            return not_nilpotent(d.clone());
        }
    }
    let lower = s.basis.iter().all(strictly_lower);
    let upper = s.basis.iter().all(|d| strictly_lower(&d.transpose()));
    let mut level: Vec<RatMatrix> = s.basis.clone();
    for k in 1..=n {
        if level.is_empty() {
            return NilpotencyCertificate {
                all_nilpotent: true,
                vanishing_length: Some(k),
                witness: None,
            };
        }
        if k == n {
            break;
        }
        let mut next = SparseEchelon::new(n * n);
        for p in &level {
            for b in &s.basis {
                let q = p * b;
                if q.is_zero() {
                    continue;
                }
                if !(lower || upper) && !q.trace().is_zero() {
                    return not_nilpotent(q);
                }
                next.insert_dense(&q.flatten());
            }
        }
        level = next
            .reduced_dense_rows()
            .into_iter()
            .map(|flat| {
                RatMatrix::from_rows(flat.chunks(n).map(<[Rational]>::to_vec).collect())
                    .expect("square")
            })
            .collect();
    }
    NilpotencyCertificate {
        all_nilpotent: level.is_empty(),
        vanishing_length: if level.is_empty() { Some(n) } else { None },
        witness: None,
    }
}

fn strictly_lower(d: &RatMatrix) -> bool {
    d.is_lower_triangular() && d.diagonal().iter().all(Rational::is_zero)
}

fn not_nilpotent(w: RatMatrix) -> NilpotencyCertificate {
    NilpotencyCertificate {
        all_nilpotent: false,
        vanishing_length: None,
        witness: Some(w),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilIndependenceMethod {
    AllNilpotent,
    TriangularDiagonalRank,
    ExhaustiveSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilIndependenceReport {
    pub max_count: usize,
    pub witnesses: Vec<RatMatrix>,
    pub method: NilIndependenceMethod,
}

/// Largest number of nil-independent elements of the span.
///
/// When every basis matrix is lower triangular (or every one upper triangular), a
/// combination is nilpotent exactly when its diagonal vanishes, so the answer is the
/// rank of the diagonals. Other shapes are only handled when the span has dimension at
/// most one.
pub fn max_nil_independent(s: &DerivationSpace) -> Result<NilIndependenceReport> {
    if space_all_nilpotent(s).all_nilpotent {
        return Ok(NilIndependenceReport {
            max_count: 0,
            witnesses: Vec::new(),
            method: NilIndependenceMethod::AllNilpotent,
        });
    }
    let lower = s.basis.iter().all(RatMatrix::is_lower_triangular);
    let upper = s.basis.iter().all(RatMatrix::is_upper_triangular);
    if lower || upper {
        let n = s.size().unwrap_or(0);
        let mut diag = SparseEchelon::new(n);
        let mut witnesses = Vec::new();
        for d in &s.basis {
            if diag.insert_dense(&d.diagonal()) {
                witnesses.push(d.clone());
            }
        }
        return Ok(NilIndependenceReport {
            max_count: diag.rank(),
            witnesses,
            method: NilIndependenceMethod::TriangularDiagonalRank,
        });
    }
    if s.basis.len() == 1 {
        // the span is one line and it is not all nilpotent
        return Ok(NilIndependenceReport {
            max_count: 1,
            witnesses: s.basis.clone(),
            method: NilIndependenceMethod::ExhaustiveSmall,
        });
    }
    Err(Error::UnsupportedShape)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extendability {
    Extendable,
    NotExtendable,
}

/// What the parameter-pattern tables predict for a nilpotent family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Extendable,
    NotExtendable,
    /// The table's hypothesis does not clearly cover the instance (L at n = 3 with
    /// theta nonzero, where the derivation constraint on theta is vacuous).
    PreconditionUnclear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendabilityReport {
    pub spec: FamilySpec,
    pub verdict: Extendability,
    pub reason: String,
    pub derivation_dim: usize,
    pub predicted: Prediction,
    /// Pattern of the table the parameters fall under, if any.
    pub pattern: Option<String>,
    /// `None` when the prediction is unclear.
    pub matches: Option<bool>,
}

/// Pattern-table prediction for `L`, `M`, `G` or `H` at size `n`. Parameters missing
/// from `params` count as zero.
pub fn corollary_prediction(
    id: FamilyId,
    n: usize,
    params: &BTreeMap<String, Rational>,
) -> Result<(Prediction, Option<String>)> {
    let nz = |k: &str| params.get(k).is_some_and(|v| !v.is_zero());
    let betas: Vec<usize> = (4..=n).filter(|k| nz(&format!("beta{k}"))).collect();
    let zero = "(0,...,0)".to_string();
    let yes = |p: String| Ok((Prediction::Extendable, Some(p)));
    let no = Ok((Prediction::NotExtendable, None));
    match id {
        FamilyId::L | FamilyId::M => {
            let alphas = (4..=n).any(|k| nz(&format!("alpha{k}")));
            let others = alphas || nz("tau") || (id == FamilyId::M && nz("theta"));
            if id == FamilyId::L && n == 3 && nz("theta") && !others {
                return Ok((Prediction::PreconditionUnclear, None));
            }
            if others || nz("theta") {
                no
            } else {
                yes(zero)
            }
        }
        FamilyId::H | FamilyId::G => {
            let delta = id == FamilyId::H && nz("delta");
            let gamma = nz("gamma");
            let special = n % 2 == 1 && n >= 5;
            match (betas.as_slice(), delta, gamma) {
                ([], false, false) => yes(zero),
                ([], true, false) => yes("(0,...,0,delta,0)".into()),
                ([], false, true) => yes("(0,...,0,gamma)".into()),
                ([_], false, false) => yes("(0,...,0,beta_t,0,...,0)".into()),
                ([t], false, true) if special && *t == (n + 3) / 2 => {
                    yes("(0,...,0,beta_(n+3)/2,0,...,0,gamma)".into())
                }
                _ => no,
            }
        }
        other => Err(Error::InvalidSpec(format!(
            "extendability is defined for the families L, M, G and H, not {other}"
        ))),
    }
}

/// Whether a nilpotent family member admits a non-nilpotent even derivation, and
/// hence a non-nilpotent solvable extension. Unset parameters are taken as zero.
pub fn extendability(spec: &FamilySpec) -> Result<ExtendabilityReport> {
    let spec = spec.clone().zeros();
    let (predicted, pattern) = corollary_prediction(spec.id, spec.size, &spec.params)?;
    let a = build_family(&spec)?;
    let space = derivation_space(&a, Parity::Even)?;
    let cert = space_all_nilpotent(&space);
    let (verdict, reason) = if cert.all_nilpotent {
        (
            Extendability::NotExtendable,
            format!(
                "all {} even derivations are nilpotent (products of length {} vanish)",
                space.dim(),
                cert.vanishing_length.unwrap_or(0)
            ),
        )
    } else {
        let trace = cert
            .witness
            .as_ref()
            .map(RatMatrix::trace)
            .unwrap_or_default();
        (
            Extendability::Extendable,
            format!("non-nilpotent even derivation found (trace {trace})"),
        )
    };
    let matches = match predicted {
        Prediction::PreconditionUnclear => None,
        Prediction::Extendable => Some(verdict == Extendability::Extendable),
        Prediction::NotExtendable => Some(verdict == Extendability::NotExtendable),
    };
    Ok(ExtendabilityReport {
        spec,
        verdict,
        reason,
        derivation_dim: space.dim(),
        predicted,
        pattern,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Polynomial;

    fn n23() -> SuperAlgebra {
        let one = || Polynomial::from(1);
        let neg = || Polynomial::from(-1);
        SuperAlgebra::new(
            "N23",
            vec!["e1".into(), "e2".into()],
            vec!["y1".into(), "y2".into(), "y3".into()],
            vec![],
            vec![
                (2, 0, 3, one()),
                (3, 0, 4, one()),
                (0, 2, 3, neg()),
                (0, 3, 4, neg()),
                (4, 2, 1, one()),
                (2, 4, 1, one()),
                (3, 3, 1, neg()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn abelian_derivations_are_all_graded_maps() {
        let a = SuperAlgebra::abelian(2, 3);
        assert_eq!(derivation_space(&a, Parity::Even).unwrap().dim(), 4 + 9);
        assert_eq!(derivation_space(&a, Parity::Odd).unwrap().dim(), 2 * 6);
    }

    #[test]
    fn basis_is_canonical_and_verified() {
        let a = n23();
        let s = derivation_space(&a, Parity::Even).unwrap();
        assert!(s.dim() > 0);
        for d in &s.basis {
            assert!(is_derivation(&a, d, Parity::Even).unwrap());
        }
        let again = derivation_space(&a, Parity::Even).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn right_multiplication_by_even_is_derivation() {
        let a = n23();
        for i in 0..2 {
            let r = a
                .right_mul_matrix(&crate::algebra::GradedVector::basis(5, i))
                .unwrap();
            assert!(is_derivation(&a, &r, Parity::Even).unwrap());
        }
    }

    #[test]
    fn non_derivation_is_rejected() {
        let a = n23();
        // e1 -> e1 and zero elsewhere breaks [y1, e1] = y2
        let mut d = RatMatrix::zeros(5, 5);
        d.set(0, 0, Rational::one());
        assert!(!is_derivation(&a, &d, Parity::Even).unwrap());
        let mut odd_mixed = RatMatrix::zeros(5, 5);
        odd_mixed.set(0, 0, Rational::one());
        assert!(!is_derivation(&a, &odd_mixed, Parity::Odd).unwrap());
    }

    #[test]
    fn strictly_triangular_space_is_nilpotent() {
        let s = DerivationSpace {
            degree: Parity::Even,
            basis: vec![RatMatrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[2, 3, 0]])],
        };
        let c = space_all_nilpotent(&s);
        assert!(c.all_nilpotent);
        assert_eq!(c.vanishing_length, Some(3));
        assert_eq!(max_nil_independent(&s).unwrap().max_count, 0);
    }

    #[test]
    fn diagonal_rank_counts_independent_weights() {
        let s = DerivationSpace {
            degree: Parity::Even,
            basis: vec![
                RatMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[5, 0, 3]]),
                RatMatrix::from_ints(&[&[2, 0, 0], &[0, 4, 0], &[0, 0, 6]]),
                RatMatrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
            ],
        };
        let r = max_nil_independent(&s).unwrap();
        assert_eq!(r.max_count, 2);
        assert_eq!(r.method, NilIndependenceMethod::TriangularDiagonalRank);
        assert!(!space_all_nilpotent(&s).all_nilpotent);
    }

    #[test]
    fn unsupported_shape_is_reported() {
        let s = DerivationSpace {
            degree: Parity::Even,
            basis: vec![
                RatMatrix::from_ints(&[&[1, 1], &[0, 0]]),
                RatMatrix::from_ints(&[&[0, 0], &[1, 1]]),
            ],
        };
        assert_eq!(
            max_nil_independent(&s).unwrap_err(),
            Error::UnsupportedShape
        );
    }

    #[test]
    fn products_catch_nonnilpotent_span() {
        // two nilpotent generators whose sum is not nilpotent
        let s = DerivationSpace {
            degree: Parity::Even,
            basis: vec![
                RatMatrix::from_ints(&[&[0, 1], &[0, 0]]),
                RatMatrix::from_ints(&[&[0, 0], &[1, 0]]),
            ],
        };
        let c = space_all_nilpotent(&s);
        assert!(!c.all_nilpotent);
        assert!(c.witness.is_some());
    }

    #[test]
    fn extendability_examples() {
        let r = extendability(&FamilySpec::new(FamilyId::H, 6).with("delta", 1)).unwrap();
        assert_eq!(r.verdict, Extendability::Extendable);
        assert_eq!(r.pattern.as_deref(), Some("(0,...,0,delta,0)"));
        assert_eq!(r.matches, Some(true));

        let r = extendability(
            &FamilySpec::new(FamilyId::H, 6)
                .with("beta4", 1)
                .with("beta5", 1),
        )
        .unwrap();
        assert_eq!(r.verdict, Extendability::NotExtendable);
        assert_eq!(r.matches, Some(true));

        let r = extendability(&FamilySpec::new(FamilyId::M, 5).with("theta", 1)).unwrap();
        assert_eq!(r.verdict, Extendability::NotExtendable);
    }

    #[test]
    fn l_at_three_with_theta_is_flagged() {
        let r = extendability(&FamilySpec::new(FamilyId::L, 3).with("theta", 1)).unwrap();
        assert_eq!(r.predicted, Prediction::PreconditionUnclear);
        assert_eq!(r.matches, None);
    }

    #[test]
    fn extendability_needs_a_nilpotent_family() {
        assert!(extendability(&FamilySpec::new(FamilyId::SL, 5)).is_err());
    }
}
