use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{right_mul_from_table, subspace, GradedSubspace, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{nilpotent_jordan_type, JordanType, Rational, SparseEchelon};

/// Environment variable that overrides the default sampling seed.
pub const SEED_ENV: &str = "SUPERALG_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingOptions {
    /// Random candidates drawn in addition to the admissible even basis vectors.
    pub samples: usize,
    pub seed: u64,
    /// Coordinates are drawn uniformly from `[-bound, bound]`.
    pub bound: i64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            samples: 64,
            seed: 0,
            bound: 5,
        }
    }
}

impl SamplingOptions {
    /// Defaults, with the seed taken from `SUPERALG_SEED` when it is set and parses.
    pub fn from_env() -> Self {
        let mut o = SamplingOptions::default();
        if let Some(seed) = std::env::var(SEED_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            o.seed = seed;
        }
        o
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSequence {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
    pub samples_evaluated: usize,
    pub method: String,
}

impl std::fmt::Display for CharSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j = |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", j(&self.even), j(&self.odd))
    }
}

/// Characteristic sequence by sampling `x` in `L_0 \ L_0^2`.
///
/// For each candidate the Jordan types of `R_x` on the even and the odd part are
/// computed, and each is maximized lexicographically on its own. Candidates are all
/// even basis vectors outside `L_0^2` and `samples` random integer vectors.
pub fn char_sequence(a: &SuperAlgebra, opts: &SamplingOptions) -> Result<CharSequence> {
    if !subspace::is_nilpotent(a)? {
        return Err(Error::NotNilpotent);
    }
    let t = a.numeric()?;
    let (n0, n1) = (a.n_even(), a.n_odd());
    let even = GradedSubspace::full(n0, n1).even_only();
    let sq = subspace::subspace_product(a, &even, &even)?;
    let mut sq_echelon = SparseEchelon::new(n0);
    for r in sq.even_part.row_vecs() {
        sq_echelon.insert_dense(r);
    }
    let admissible = |x: &[Rational]| !sq_echelon.contains(x);

    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n0 {
        let mut x = vec![Rational::zero(); n0];
        x[i] = Rational::one();
        if admissible(&x) {
            candidates.push(x);
        }
    }
    if candidates.is_empty() {
        return Err(Error::DegenerateSampling);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.bound.max(1);
    for _ in 0..opts.samples {
        let x: Vec<Rational> = (0..n0)
            .map(|_| Rational::from_int(rng.gen_range(-b..=b)))
            .collect();
        if admissible(&x) {
            candidates.push(x);
        }
    }

    let even_idx: Vec<usize> = (0..n0).collect();
    let odd_idx: Vec<usize> = (n0..n0 + n1).collect();
    let mut best_even: Vec<usize> = Vec::new();
    let mut best_odd: Vec<usize> = Vec::new();
    for x in &candidates {
        let mut full = x.clone();
        full.resize(n0 + n1, Rational::zero());
        let r = right_mul_from_table(&t, &full, Parity::Even);
        let je = partition(&r.principal_block(&even_idx))?;
        let jo = partition(&r.principal_block(&odd_idx))?;
        if je > best_even {
            best_even = je;
        }
        if jo > best_odd {
            best_odd = jo;
        }
    }
    Ok(CharSequence {
        even: best_even,
        odd: best_odd,
        samples_evaluated: candidates.len(),
        method: "sampled max".into(),
    })
}

fn partition(m: &crate::exactmath::RatMatrix) -> Result<Vec<usize>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    match nilpotent_jordan_type(m)? {
        JordanType::Nilpotent(p) => Ok(p),
        // a nilpotent algebra has nilpotent right multiplications
        JordanType::NotNilpotent => Err(Error::Internal(
            "right multiplication of a nilpotent algebra is not nilpotent".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_util::n23;
    use super::*;
    use crate::exactmath::Polynomial;

    #[test]
    fn abelian() {
        let c = char_sequence(&SuperAlgebra::abelian(2, 2), &SamplingOptions::default()).unwrap();
        assert_eq!((c.even, c.odd), (vec![1, 1], vec![1, 1]));
        assert_eq!(c.method, "sampled max");
    }

    #[test]
    fn n23_sequence() {
        let c = char_sequence(&n23(), &SamplingOptions::default()).unwrap();
        assert_eq!((c.even.clone(), c.odd.clone()), (vec![1, 1], vec![3]));
        assert_eq!(c.to_string(), "(1,1 | 3)");
    }

    #[test]
    fn not_nilpotent_is_rejected() {
        let a = SuperAlgebra::new(
            "s",
            vec!["e1".into()],
            vec![],
            vec![],
            vec![(0, 0, 0, Polynomial::from(1))],
        )
        .unwrap();
        assert_eq!(
            char_sequence(&a, &SamplingOptions::default()).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn seed_changes_nothing_on_n23() {
        for seed in 0..3 {
            let o = SamplingOptions {
                seed,
                ..Default::default()
            };
            let c = char_sequence(&n23(), &o).unwrap();
            assert_eq!(c.odd, vec![3]);
        }
    }
}
