//! Generators for the named superalgebra families.
//!
//! Each family is built from its multiplication table in one of two modes. `Verbatim`
//! transcribes the published table literally, including entries that turn out to be
//! misprints; `Corrected` applies the fixes recorded in [`errata_ledger`]. Products whose
//! target index falls outside the basis are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_leibniz, check_lie, Residual, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    N2M,
    L,
    G,
    M,
    H,
    M1,
    M2,
    M3,
    M4,
    M5,
    SL,
    SM,
    MH1,
    MH2,
    H1,
    H2,
    H3,
    H4,
    H5,
    SH1,
    SH2,
    SH3,
    SH4,
    MG1,
    MG2,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    SG1,
    SG2,
    SG3,
}

use FamilyId::*;

impl FamilyId {
    pub const ALL: [FamilyId; 34] = [
        N2M, L, G, M, H, M1, M2, M3, M4, M5, SL, SM, MH1, MH2, H1, H2, H3, H4, H5, SH1, SH2, SH3,
        SH4, MG1, MG2, G1, G2, G3, G4, G5, G6, SG1, SG2, SG3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            N2M => "N2M",
            L => "L",
            G => "G",
            M => "M",
            H => "H",
            M1 => "M1",
            M2 => "M2",
            M3 => "M3",
            M4 => "M4",
            M5 => "M5",
            SL => "SL",
            SM => "SM",
            MH1 => "MH1",
            MH2 => "MH2",
            H1 => "H1",
            H2 => "H2",
            H3 => "H3",
            H4 => "H4",
            H5 => "H5",
            SH1 => "SH1",
            SH2 => "SH2",
            SH3 => "SH3",
            SH4 => "SH4",
            MG1 => "MG1",
            MG2 => "MG2",
            G1 => "G1",
            G2 => "G2",
            G3 => "G3",
            G4 => "G4",
            G5 => "G5",
            G6 => "G6",
            SG1 => "SG1",
            SG2 => "SG2",
            SG3 => "SG3",
        }
    }

    /// Families indexed by the odd dimension `m` rather than `n`.
    pub fn sized_by_m(self) -> bool {
        matches!(self, N2M | M1 | M2 | M3 | M4 | M5)
    }

    pub fn is_nilpotent_family(self) -> bool {
        matches!(self, N2M | L | G | M | H)
    }

    pub fn is_solvable_family(self) -> bool {
        !self.is_nilpotent_family()
    }

    /// Names of the adjoined non-nilpotent generators.
    pub fn extension_generators(self) -> &'static [&'static str] {
        match self {
            N2M | L | G | M | H => &[],
            M5 => &["x", "z"],
            MH1 | MH2 | MG1 | MG2 => &["x1", "x2"],
            _ => &["x"],
        }
    }

    fn kind(self) -> Kind {
        match self {
            N2M | M1 | M2 | M3 | M4 | M5 => Kind::N,
            L | SL => Kind::L,
            M | SM => Kind::M,
            G | MG1 | MG2 | G1 | G2 | G3 | G4 | G5 | G6 | SG1 | SG2 | SG3 => Kind::G,
            H | MH1 | MH2 | H1 | H2 | H3 | H4 | H5 | SH1 | SH2 | SH3 | SH4 => Kind::H,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// The four nilpotent shapes the solvable families are built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    N,
    L,
    M,
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrataMode {
    Verbatim,
    #[default]
    Corrected,
}

impl FromStr for ErrataMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verbatim" => Ok(ErrataMode::Verbatim),
            "corrected" => Ok(ErrataMode::Corrected),
            _ => Err(Error::InvalidSpec(format!(
                "errata mode must be `verbatim` or `corrected`, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for ErrataMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrataMode::Verbatim => "verbatim",
            ErrataMode::Corrected => "corrected",
        })
    }
}

/// A request for one family member. Parameters absent from `params` stay symbolic;
/// the structural index `t` of SH1/SG1 must be given as the integer parameter `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: FamilyId,
    /// `n` for most families, `m` for N2M and M1..M5.
    pub size: usize,
    #[serde(default)]
    pub params: BTreeMap<String, Rational>,
    #[serde(default)]
    pub errata: ErrataMode,
}

impl FamilySpec {
    pub fn new(id: FamilyId, size: usize) -> Self {
        FamilySpec {
            id,
            size,
            params: BTreeMap::new(),
            errata: ErrataMode::Corrected,
        }
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        self.params
            .insert(name.to_string(), Rational::from_int(value));
        self
    }

    pub fn with_rational(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn verbatim(mut self) -> Self {
        self.errata = ErrataMode::Verbatim;
        self
    }

    pub fn mode(mut self, mode: ErrataMode) -> Self {
        self.errata = mode;
        self
    }

    /// Every named parameter set to zero, except those already given.
    pub fn zeros(mut self) -> Self {
        for p in parameter_names(self.id, self.size) {
            self.params.entry(p).or_insert_with(Rational::zero);
        }
        self
    }

    pub fn label(&self) -> String {
        let size = if self.id.sized_by_m() { "m" } else { "n" };
        let mut s = format!("{}[{}={}", self.id, size, self.size);
        for (k, v) in &self.params {
            s.push_str(&format!(",{k}={v}"));
        }
        if self.errata == ErrataMode::Verbatim {
            s.push_str(",verbatim");
        }
        s.push(']');
        s
    }

    fn t(&self) -> Result<usize> {
        let t = self.params.get("t").ok_or_else(|| {
            Error::InvalidSpec(format!("{} requires the integer parameter t", self.id))
        })?;
        if !t.is_integer() || t.is_negative() {
            return Err(Error::InvalidSpec("t must be a nonnegative integer".into()));
        }
        let v: usize = t
            .to_string()
            .parse()
            .map_err(|_| Error::InvalidSpec("t is out of range".into()))?;
        Ok(v)
    }
}

fn range_names(prefix: &str, lo: usize, hi: usize) -> impl Iterator<Item = String> + '_ {
    (lo..=hi).map(move |k| format!("{prefix}{k}"))
}

/// Free parameter names of a family at a given size (`t` excluded).
pub fn parameter_names(id: FamilyId, size: usize) -> Vec<String> {
    let n = size;
    let mut v: Vec<String> = match id {
        L => range_names("alpha", 4, n).chain(["theta".into()]).collect(),
        M => range_names("alpha", 4, n)
            .chain(["theta".into(), "tau".into()])
            .collect(),
        G => range_names("beta", 4, n).chain(["gamma".into()]).collect(),
        H => range_names("beta", 4, n)
            .chain(["delta".into(), "gamma".into()])
            .collect(),
        M2 => vec!["alpha".into()],
        M4 => (1..=size.saturating_sub(1) / 2)
            .map(|k| format!("b{}", 2 * k))
            .collect(),
        H1 | H2 | G1 | G2 => vec!["b".into()],
        G4 => vec!["b".into(), "gamma".into()],
        H4 => range_names("a", 2, n).collect(),
        H5 => range_names("a", 2, n).chain(["gamma".into()]).collect(),
        G5 | G6 => range_names("a", 2, n.saturating_sub(1))
            .chain(["gamma".into()])
            .collect(),
        SH3 | SG2 => vec!["gamma".into()],
        _ => Vec::new(),
    };
    v.sort();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSchema {
    pub name: String,
    pub domain: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub size_name: String,
    pub dims: String,
    pub parameters: Vec<ParamSchema>,
    pub constraints: Vec<String>,
    pub source: String,
}

fn schema(items: &[(&str, &str)]) -> Vec<ParamSchema> {
    items
        .iter()
        .map(|(n, d)| ParamSchema {
            name: n.to_string(),
            domain: d.to_string(),
        })
        .collect()
}

/// Catalog of every family with its parameter schema and domain constraints.
pub fn list_families() -> Vec<FamilyInfo> {
    FamilyId::ALL
        .iter()
        .map(|&id| {
            let (dims, params, constraints, source): (&str, Vec<ParamSchema>, Vec<&str>, &str) =
                match id {
                    N2M => (
                        "(2|m)",
                        vec![],
                        vec!["m odd", "m >= 3"],
                        "Lie superalgebra of maximal nilindex",
                    ),
                    L => (
                        "(n|n-1)",
                        schema(&[("alpha4..alphan", "Q"), ("theta", "Q")]),
                        vec!["n >= 3"],
                        "nilpotent, nilindex n+m, characteristic sequence (n-1,1|m), m = n-1",
                    ),
                    G => (
                        "(n|n-1)",
                        schema(&[("beta4..betan", "Q"), ("gamma", "Q")]),
                        vec!["n >= 3"],
                        "nilpotent, nilindex n+m, characteristic sequence (n-1,1|m), m = n-1",
                    ),
                    M => (
                        "(n|n)",
                        schema(&[("alpha4..alphan", "Q"), ("theta", "Q"), ("tau", "Q")]),
                        vec!["n >= 3"],
                        "nilpotent, nilindex n+m, characteristic sequence (n-1,1|m), m = n",
                    ),
                    H => (
                        "(n|n)",
                        schema(&[("beta4..betan", "Q"), ("delta", "Q"), ("gamma", "Q")]),
                        vec!["n >= 3"],
                        "nilpotent, nilindex n+m, characteristic sequence (n-1,1|m), m = n",
                    ),
                    M1 | M3 => (
                        "(3|m)",
                        vec![],
                        vec!["m odd", "m >= 3"],
                        "solvable, nilradical N2M, codimension 1",
                    ),
                    M2 => (
                        "(3|m)",
                        schema(&[("alpha", "Q")]),
                        vec!["m odd", "m >= 3"],
                        "solvable, nilradical N2M, codimension 1",
                    ),
                    M4 => (
                        "(3|m)",
                        schema(&[("b2,b4,..,b(m-1)", "Q")]),
                        vec!["m odd", "m >= 3"],
                        "solvable, nilradical N2M, codimension 1",
                    ),
                    M5 => (
                        "(4|m)",
                        vec![],
                        vec!["m odd", "m >= 3"],
                        "solvable, nilradical N2M, codimension 2",
                    ),
                    SL => (
                        "(n+1|n-1)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical L(0,...,0)",
                    ),
                    SM => (
                        "(n+1|n)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical M(0,...,0)",
                    ),
                    MH1 | MH2 => (
                        "(n+2|n)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical H(0,...,0), codimension 2",
                    ),
                    H1 => (
                        "(n+1|n)",
                        schema(&[("b", "Q")]),
                        vec!["n >= 3", "b != 0"],
                        "solvable, nilradical H(0,...,0), codimension 1",
                    ),
                    H2 => (
                        "(n+1|n)",
                        schema(&[("b", "Q")]),
                        vec!["n >= 3"],
                        "solvable, nilradical H(0,...,0), codimension 1",
                    ),
                    H3 => (
                        "(n+1|n)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical H(0,...,0), codimension 1",
                    ),
                    H4 => (
                        "(n+1|n)",
                        schema(&[("a2..an", "Q")]),
                        vec!["n >= 3"],
                        "solvable, nilradical H(0,...,0), codimension 1",
                    ),
                    H5 => (
                        "(n+1|n)",
                        schema(&[("a2..an", "Q"), ("gamma", "{0,1}")]),
                        vec!["n >= 3", "γ ∈ {0,1}"],
                        "solvable, nilradical H(0,...,0), codimension 1",
                    ),
                    SH1 => (
                        "(n+1|n)",
                        schema(&[("t", "integer")]),
                        vec!["4 <= t <= n"],
                        "solvable, nilradical H(beta_t = 1)",
                    ),
                    SH2 => (
                        "(n+1|n)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical H(delta = 1)",
                    ),
                    SH3 => (
                        "(n+1|n)",
                        schema(&[("gamma", "Q")]),
                        vec!["n odd", "n >= 5", "gamma != 0"],
                        "solvable, nilradical H(beta_(n+3)/2 = 1, gamma)",
                    ),
                    SH4 => (
                        "(n+1|n)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical H(gamma = 1)",
                    ),
                    MG1 | MG2 => (
                        "(n+2|n-1)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical G(0,...,0), codimension 2",
                    ),
                    G1 => (
                        "(n+1|n-1)",
                        schema(&[("b", "Q")]),
                        vec!["n >= 3", "b != 0"],
                        "solvable, nilradical G(0,...,0), codimension 1",
                    ),
                    G2 => (
                        "(n+1|n-1)",
                        schema(&[("b", "Q")]),
                        vec!["n >= 3"],
                        "solvable, nilradical G(0,...,0), codimension 1",
                    ),
                    G3 => (
                        "(n+1|n-1)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical G(0,...,0), codimension 1",
                    ),
                    G4 => (
                        "(n+1|n-1)",
                        schema(&[("gamma", "{0,1}"), ("b", "{0,1}")]),
                        vec!["n >= 3", "(gamma, b) ∈ {(0,1), (1,0), (1,1)}"],
                        "solvable, nilradical G(0,...,0), codimension 1",
                    ),
                    G5 | G6 => (
                        "(n+1|n-1)",
                        schema(&[("a2..a(n-1)", "Q"), ("gamma", "Q")]),
                        vec!["n >= 3"],
                        "solvable, nilradical G(0,...,0), codimension 1",
                    ),
                    SG1 => (
                        "(n+1|n-1)",
                        schema(&[("t", "integer")]),
                        vec!["4 <= t <= n"],
                        "solvable, nilradical G(beta_t = 1)",
                    ),
                    SG2 => (
                        "(n+1|n-1)",
                        schema(&[("gamma", "Q")]),
                        vec!["n odd", "n >= 5", "gamma != 0"],
                        "solvable, nilradical G(beta_(n+3)/2 = 1, gamma)",
                    ),
                    SG3 => (
                        "(n+1|n-1)",
                        vec![],
                        vec!["n >= 3"],
                        "solvable, nilradical G(gamma = 1)",
                    ),
                };
            FamilyInfo {
                id,
                size_name: if id.sized_by_m() { "m" } else { "n" }.into(),
                dims: dims.into(),
                parameters: params,
                constraints: constraints.into_iter().map(String::from).collect(),
                source: source.into(),
            }
        })
        .collect()
}

/// Checks the size and parameter domains of a spec.
pub fn validate(spec: &FamilySpec) -> Result<()> {
    let id = spec.id;
    let s = spec.size;
    let bad = |msg: &str| Err(Error::InvalidSpec(format!("{id}: {msg}")));
    if id.sized_by_m() {
        if s.is_multiple_of(2) {
            return bad("m must be odd");
        }
        if s < 3 {
            return bad("m must be at least 3");
        }
    } else if s < 3 {
        return bad("n must be at least 3");
    }
    let names = parameter_names(id, s);
    for k in spec.params.keys() {
        let structural = k == "t" && matches!(id, SH1 | SG1);
        if !structural && names.binary_search(k).is_err() {
            return bad(&format!("unknown parameter `{k}`"));
        }
    }
    let get = |k: &str| spec.params.get(k);
    match id {
        SH1 | SG1 => {
            let t = spec.t()?;
            if t < 4 || t > s {
                return bad("t must satisfy 4 <= t <= n");
            }
        }
        SH3 | SG2 => {
            if s.is_multiple_of(2) {
                return bad("n must be odd");
            }
            if s < 5 {
                return bad("n must be at least 5");
            }
            if get("gamma").is_some_and(Rational::is_zero) {
                return bad("gamma must be nonzero");
            }
        }
        H5 => {
            if let Some(g) = get("gamma") {
                if !(g.is_zero() || g.is_one()) {
                    return bad("γ ∈ {0,1} is required");
                }
            }
        }
        H1 | G1 => {
            if get("b").is_some_and(Rational::is_zero) {
                return bad("b must be nonzero");
            }
        }
        G4 => {
            let allowed = [(0, 1), (1, 0), (1, 1)];
            let ok = allowed.iter().any(|&(g, b)| {
                get("gamma").is_none_or(|v| *v == Rational::from_int(g))
                    && get("b").is_none_or(|v| *v == Rational::from_int(b))
            });
            if !ok {
                return bad("(gamma, b) must be one of (0,1), (1,0), (1,1)");
            }
        }
        _ => {}
    }
    Ok(())
}

fn e(i: usize) -> String {
    format!("e{i}")
}

fn y(i: usize) -> String {
    format!("y{i}")
}

fn c(v: i64) -> Polynomial {
    Polynomial::from(v)
}

fn half() -> Polynomial {
    Polynomial::constant(Rational::new(1, 2))
}

/// Multiplication-table builder. Targets outside the basis are dropped.
struct Table {
    even: Vec<String>,
    odd: Vec<String>,
    index: HashMap<String, usize>,
    assigned: BTreeMap<String, Rational>,
    symbolic: Vec<String>,
    products: Vec<(usize, usize, usize, Polynomial)>,
}

impl Table {
    fn new(even: Vec<String>, odd: Vec<String>, assigned: &BTreeMap<String, Rational>) -> Self {
        let index = even
            .iter()
            .chain(&odd)
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Table {
            even,
            odd,
            index,
            assigned: assigned.clone(),
            symbolic: Vec::new(),
            products: Vec::new(),
        }
    }

    fn par(&mut self, name: &str) -> Polynomial {
        match self.assigned.get(name) {
            Some(v) => Polynomial::constant(v.clone()),
            None => {
                if !self.symbolic.iter().any(|s| s == name) {
                    self.symbolic.push(name.to_string());
                }
                Polynomial::var(name)
            }
        }
    }

    fn has(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    fn set(&mut self, left: &str, right: &str, target: &str, coeff: Polynomial) {
        let (Some(&i), Some(&j)) = (self.index.get(left), self.index.get(right)) else {
            return;
        };
        if let Some(&k) = self.index.get(target) {
            self.products.push((i, j, k, coeff));
        }
    }

    fn finish(self, name: String) -> Result<SuperAlgebra> {
        SuperAlgebra::new(name, self.even, self.odd, self.symbolic, self.products)
    }
}

fn basis(kind: Kind, n: usize, extra: &[&str]) -> (Vec<String>, Vec<String>) {
    let (n0, n1) = match kind {
        Kind::N => (2, n),
        Kind::L | Kind::G => (n, n - 1),
        Kind::M | Kind::H => (n, n),
    };
    let mut even: Vec<String> = (1..=n0).map(e).collect();
    even.extend(extra.iter().map(|s| s.to_string()));
    (even, (1..=n1).map(y).collect())
}

/// Parameter-free part of the nilpotent table.
fn nil_core(t: &mut Table, kind: Kind, n: usize) {
    let (e_from, y_e1_to, ey1_from, ey1_to) = match kind {
        Kind::L => (2, n - 2, 2, n - 1),
        Kind::M => (2, n - 1, 2, n),
        Kind::G => (3, n - 2, 3, n - 1),
        Kind::H => (3, n - 1, 3, n),
        Kind::N => unreachable!("N2M has its own table"),
    };
    t.set("e1", "e1", "e3", c(1));
    for i in e_from..n {
        t.set(&e(i), "e1", &e(i + 1), c(1));
    }
    for j in 1..=y_e1_to {
        t.set(&y(j), "e1", &y(j + 1), c(1));
    }
    t.set("e1", "y1", "y2", half());
    for i in ey1_from..=ey1_to {
        t.set(&e(i), "y1", &y(i), half());
    }
    t.set("y1", "y1", "e1", c(1));
    for j in 2..n {
        t.set(&y(j), "y1", &e(j + 1), c(1));
    }
}

/// The `[., e2]` part of the L and M tables.
fn lm_params(t: &mut Table, kind: Kind, n: usize, fixed_second_row: bool) {
    let alpha = |t: &mut Table, k: usize| t.par(&format!("alpha{k}"));
    let theta = t.par("theta");
    for k in 4..n {
        let a = alpha(t, k);
        t.set("e1", "e2", &e(k), a);
    }
    t.set("e1", "e2", &e(n), theta.clone());
    for j in 2..=n.saturating_sub(2) {
        for k in 4..=n + 2 - j {
            let a = alpha(t, k);
            t.set(&e(j), "e2", &e(j + k - 2), a);
        }
    }
    for k in 4..n {
        let a = alpha(t, k);
        t.set("y1", "e2", &y(k - 1), a);
    }
    t.set("y1", "e2", &y(n - 1), theta.clone());
    match kind {
        Kind::L => {
            for j in 2..=n.saturating_sub(3) {
                for k in 4..=n + 1 - j {
                    let a = alpha(t, k);
                    t.set(&y(j), "e2", &y(j + k - 2), a);
                }
            }
        }
        Kind::M => {
            let tau = t.par("tau");
            t.set("y1", "e2", &y(n), tau);
            for k in 4..n {
                let a = alpha(t, k);
                // the table prints the second term as alpha5 y4
                let target = if k == 5 && !fixed_second_row { 4 } else { k };
                t.set("y2", "e2", &y(target), a);
            }
            t.set("y2", "e2", &y(n), theta);
            for j in 3..=n.saturating_sub(2) {
                for k in 4..=n + 2 - j {
                    let a = alpha(t, k);
                    t.set(&y(j), "e2", &y(j + k - 2), a);
                }
            }
        }
        _ => unreachable!(),
    }
}

/// The `[., e2]` part of the G and H tables with coefficient `beta(k)` for each
/// `beta_k`. `y_from` is the first `j` with a `[y_j, e2]` row.
fn gh_params(
    t: &mut Table,
    kind: Kind,
    n: usize,
    beta: &dyn Fn(&mut Table, usize) -> Polynomial,
    delta: Polynomial,
    gamma: Polynomial,
    y_from: usize,
) {
    for k in 4..=n {
        let b = beta(t, k);
        t.set("e1", "e2", &e(k), b);
    }
    for j in 3..=n.saturating_sub(2) {
        for k in 4..=n + 2 - j {
            let b = beta(t, k);
            t.set(&e(j), "e2", &e(j + k - 2), b);
        }
    }
    t.set("e2", "e2", &e(n), gamma);
    match kind {
        Kind::G => {
            for j in y_from..=n.saturating_sub(3) {
                for k in 4..=n + 1 - j {
                    let b = beta(t, k);
                    t.set(&y(j), "e2", &y(j + k - 2), b);
                }
            }
        }
        Kind::H => {
            for k in 4..=n {
                let b = beta(t, k);
                t.set("y1", "e2", &y(k - 1), b);
            }
            t.set("y1", "e2", &y(n), delta);
            for j in y_from.max(2)..=n.saturating_sub(2) {
                for k in 4..=n + 2 - j {
                    let b = beta(t, k);
                    t.set(&y(j), "e2", &y(j + k - 2), b);
                }
            }
        }
        _ => unreachable!(),
    }
}

fn symbolic_beta(t: &mut Table, k: usize) -> Polynomial {
    t.par(&format!("beta{k}"))
}

/// `beta_t = 1`, all other betas zero.
fn single_beta(tt: usize) -> impl Fn(&mut Table, usize) -> Polynomial {
    move |_, k| if k == tt { c(1) } else { c(0) }
}

/// Diagonal action `[e1,x]=2e1, [e_i,x]=2(i-1)e_i (i>=3), [y_i,x]=(2i-1)y_i` together
/// with `[x,e1]=-2e1, [x,y1]=-y1`.
fn weight_action(t: &mut Table, x: &str, n: usize, ny: usize) {
    t.set("e1", x, "e1", c(2));
    for i in 3..=n {
        t.set(&e(i), x, &e(i), c(2 * (i as i64 - 1)));
    }
    for i in 1..=ny {
        t.set(&y(i), x, &y(i), c(2 * i as i64 - 1));
    }
    t.set(x, "e1", "e1", c(-2));
    t.set(x, "y1", "y1", c(-1));
}

/// Raising action `[e1,x]=sum a_{k-1}e_k`, `[e_i,x]=sum a_{k+1-i}e_k`,
/// `[y_i,x]=sum a_{k+1-i}y_k` and `[e2,x]=e2`.
fn raising_action(t: &mut Table, n: usize, ny: usize, y_max: usize, odd_subscript: bool) {
    for k in 3..=n {
        let a = t.par(&format!("a{}", k - 1));
        t.set("e1", "x", &e(k), a);
    }
    t.set("e2", "x", "e2", c(1));
    for i in 3..=n {
        for k in i + 1..=n {
            let a = t.par(&format!("a{}", k + 1 - i));
            t.set(&e(i), "x", &e(k), a);
        }
    }
    if odd_subscript {
        for i in 1..=ny {
            for k in i + 1..=y_max {
                let a = t.par(&format!("a{}", k + 1 - i));
                t.set(&y(i), "x", &y(k), a);
            }
        }
    }
}

/// `N_{2,m}` completed to a Lie superalgebra, optionally with the odd-odd sign of the
/// solvable-extension tables (`[y_i, y_{m+1-i}] = -[y_{m+1-i}, y_i]`).
fn n2m_core(t: &mut Table, m: usize, antisymmetric_odd: bool) {
    for i in 1..m {
        t.set(&y(i), "e1", &y(i + 1), c(1));
        t.set("e1", &y(i), &y(i + 1), c(-1));
    }
    for i in 1..=m.div_ceil(2) {
        let s = if i % 2 == 1 { 1 } else { -1 };
        let j = m + 1 - i;
        t.set(&y(j), &y(i), "e2", c(s));
        if i != j {
            t.set(
                &y(i),
                &y(j),
                "e2",
                c(if antisymmetric_odd { -s } else { s }),
            );
        }
    }
}

/// `[a, x] = v` and `[x, a] = -v`.
fn lie_pair(t: &mut Table, a: &str, x: &str, target: &str, v: Polynomial) {
    t.set(x, a, target, -&v);
    t.set(a, x, target, v);
}

/// The individual fixes applied in corrected mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Correction {
    /// Odd-odd products of `N_{2,m}` inside M1..M5 are symmetric.
    OddPairSymmetry,
    /// M5: `[y_i, x] = (i-1) y_i`.
    M5OddWeight,
    /// M: the `alpha5` term of `[y2, e2]` lands on `y5`.
    MSecondOddRow,
    /// G5, G6: the odd rows of `R_x`.
    G5OddRows,
    /// SG1: the row `[y1, e2] = y_(t-1)`.
    SG1FirstOddRow,
}

/// Builds the algebra described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<SuperAlgebra> {
    build_inner(spec, None)
}

/// Corrected-mode build with one correction undone.
pub fn build_reverting(spec: &FamilySpec, revert: Correction) -> Result<SuperAlgebra> {
    build_inner(&spec.clone().mode(ErrataMode::Corrected), Some(revert))
}

fn build_inner(spec: &FamilySpec, revert: Option<Correction>) -> Result<SuperAlgebra> {
    validate(spec)?;
    let id = spec.id;
    let n = spec.size;
    let mode = spec.errata;
    let fix = |c: Correction| mode == ErrataMode::Corrected && revert != Some(c);
    let kind = id.kind();
    let (even, odd) = basis(kind, n, id.extension_generators());
    let mut t = Table::new(even, odd, &spec.params);
    let ny = t.odd.len();

    match id {
        N2M => n2m_core(&mut t, n, false),
        M1 | M2 | M3 | M4 | M5 => {
            let m = n;
            n2m_core(&mut t, m, !fix(Correction::OddPairSymmetry));
            let mf = m as i64;
            match id {
                M1 => {
                    lie_pair(&mut t, "e1", "x", "e1", c(1));
                    t.set("x", "x", "e2", c(1));
                    for i in 1..=m {
                        // (i - (m+1)/2)
                        let w = Polynomial::constant(Rational::new(2 * i as i64 - mf - 1, 2));
                        lie_pair(&mut t, &y(i), "x", &y(i), w);
                    }
                }
                M2 => {
                    let alpha = t.par("alpha");
                    lie_pair(&mut t, "e1", "x", "e1", c(1));
                    lie_pair(&mut t, "e2", "x", "e2", alpha.clone());
                    for i in 1..=m {
                        // i + (alpha - m - 1)/2
                        let w = &alpha.scale(&Rational::new(1, 2))
                            + &Polynomial::constant(Rational::new(2 * i as i64 - mf - 1, 2));
                        lie_pair(&mut t, &y(i), "x", &y(i), w);
                    }
                }
                M3 => {
                    lie_pair(&mut t, "e1", "x", "e1", c(1));
                    lie_pair(&mut t, "e1", "x", "e2", c(1));
                    lie_pair(&mut t, "e2", "x", "e2", c(1));
                    for i in 1..=m {
                        let w = Polynomial::constant(Rational::new(2 * i as i64 - mf, 2));
                        lie_pair(&mut t, &y(i), "x", &y(i), w);
                    }
                }
                M4 => {
                    lie_pair(&mut t, "e2", "x", "e2", c(2));
                    for i in 1..=m {
                        lie_pair(&mut t, &y(i), "x", &y(i), c(1));
                        for k in 1..=(m - i).div_ceil(2) {
                            let b = t.par(&format!("b{}", 2 * k));
                            lie_pair(&mut t, &y(i), "x", &y(i + 2 * k - 1), b);
                        }
                    }
                }
                M5 => {
                    lie_pair(&mut t, "e1", "x", "e1", c(1));
                    lie_pair(&mut t, "e2", "x", "e2", c(mf - 1));
                    lie_pair(&mut t, "e2", "z", "e2", c(2));
                    for i in 1..=m {
                        let w = if fix(Correction::M5OddWeight) {
                            i as i64 - 1
                        } else {
                            1 - i as i64
                        };
                        lie_pair(&mut t, &y(i), "x", &y(i), c(w));
                        lie_pair(&mut t, &y(i), "z", &y(i), c(1));
                    }
                }
                _ => unreachable!(),
            }
        }
        L | M => {
            nil_core(&mut t, kind, n);
            lm_params(&mut t, kind, n, fix(Correction::MSecondOddRow));
        }
        G | H => {
            nil_core(&mut t, kind, n);
            let delta = if kind == Kind::H {
                t.par("delta")
            } else {
                c(0)
            };
            let gamma = t.par("gamma");
            gh_params(&mut t, kind, n, &symbolic_beta, delta, gamma, 1);
        }
        SL | SM => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x", n, ny);
            t.set("e2", "x", "e2", c(2));
        }
        MH1 | MH2 | MG1 | MG2 => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x1", n, ny);
            t.set("e2", "x2", "e2", c(1));
            if matches!(id, MH2 | MG2) {
                t.set("x2", "e2", "e2", c(-1));
            }
        }
        H1 | H2 | G1 | G2 => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x", n, ny);
            let b = t.par("b");
            t.set("e2", "x", "e2", b.clone());
            if matches!(id, H1 | G1) {
                t.set("x", "e2", "e2", -&b);
            }
        }
        H3 => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x", n, ny);
            t.set("x", "x", "e2", c(1));
        }
        G3 => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x", n, ny);
            t.set("e2", "x", "e2", c(2 * (n as i64 - 1)));
            t.set("e2", "x", &e(n), c(1));
        }
        G4 => {
            nil_core(&mut t, kind, n);
            weight_action(&mut t, "x", n, ny);
            let b = t.par("b");
            let gamma = t.par("gamma");
            t.set("e2", "x", &e(n), b);
            t.set("x", "x", "e2", gamma);
        }
        H4 | H5 => {
            nil_core(&mut t, kind, n);
            let y_rows = if id == H4 { n - 1 } else { n };
            raising_action(&mut t, n, y_rows, n, true);
            if id == H5 {
                let gamma = t.par("gamma");
                t.set("x", "e2", "e2", c(-1));
                t.set("x", "x", "e2", gamma);
            }
        }
        G5 | G6 => {
            nil_core(&mut t, kind, n);
            // the odd rows print `a_{k+1-i} y` without a subscript
            raising_action(&mut t, n, n - 1, n - 1, fix(Correction::G5OddRows));
            let gamma = t.par("gamma");
            t.set("x", "x", &e(n), gamma);
            if id == G6 {
                t.set("x", "e2", "e2", c(-1));
            }
        }
        SH1 | SH2 | SH3 | SH4 | SG1 | SG2 | SG3 => {
            nil_core(&mut t, kind, n);
            let nf = n as i64;
            // (beta index, delta, gamma, weight of e2, extra [x,e2] component)
            let (tt, delta, gamma, w2, tail): (
                Option<usize>,
                Polynomial,
                Polynomial,
                i64,
                Option<usize>,
            ) = match id {
                SH1 | SG1 => {
                    let tt = spec.t()?;
                    (Some(tt), c(0), c(0), 2 * (tt as i64 - 2), Some(tt - 1))
                }
                SH2 => (None, c(1), c(0), 2 * (nf - 1), Some(n)),
                SH3 | SG2 => {
                    let g = t.par("gamma");
                    (Some((n + 3) / 2), c(0), g, nf - 1, Some(n.div_ceil(2)))
                }
                SH4 | SG3 => (None, c(0), c(1), nf - 1, None),
                _ => unreachable!(),
            };
            let beta: Box<dyn Fn(&mut Table, usize) -> Polynomial> = match tt {
                Some(tt) => Box::new(single_beta(tt)),
                None => Box::new(|_: &mut Table, _| c(0)),
            };
            // the SG1 table starts its [y_j, e2] rows at j = 2
            let y_from = if id == SG1 && !fix(Correction::SG1FirstOddRow) {
                2
            } else {
                1
            };
            gh_params(&mut t, kind, n, beta.as_ref(), delta, gamma, y_from);
            weight_action(&mut t, "x", n, ny);
            t.set("e2", "x", "e2", c(w2));
            t.set("x", "e2", "e2", c(-w2));
            if let Some(k) = tail {
                t.set("x", "e2", &e(k), c(-2));
            }
        }
    }
    debug_assert!(t.has("e1"));
    t.finish(spec.label())
}

/// The nilradical a solvable family is built on, as a spec of its nilpotent family.
/// `None` for the nilpotent families themselves.
pub fn nilradical_spec(spec: &FamilySpec) -> Result<Option<FamilySpec>> {
    let id = spec.id;
    let n = spec.size;
    let base = |fam: FamilyId| FamilySpec::new(fam, n).mode(spec.errata);
    let out = match id {
        N2M | L | G | M | H => return Ok(None),
        M1 | M2 | M3 | M4 | M5 => FamilySpec::new(N2M, n),
        SL => base(L).zeros(),
        SM => base(M).zeros(),
        MH1 | MH2 | H1 | H2 | H3 | H4 | H5 => base(H).zeros(),
        MG1 | MG2 | G1 | G2 | G3 | G4 | G5 | G6 => base(G).zeros(),
        SH1 | SG1 => {
            let tt = spec.t()?;
            let fam = if id == SH1 { H } else { G };
            base(fam).with(&format!("beta{tt}"), 1).zeros()
        }
        SH2 => base(H).with("delta", 1).zeros(),
        SH4 => base(H).with("gamma", 1).zeros(),
        SG3 => base(G).with("gamma", 1).zeros(),
        SH3 | SG2 => {
            let fam = if id == SH3 { H } else { G };
            let mut s = base(fam).with(&format!("beta{}", (n + 3) / 2), 1);
            match spec.params.get("gamma") {
                Some(g) => {
                    s = s.with_rational("gamma", g.clone());
                }
                None => {
                    // gamma stays symbolic on both sides
                    for p in parameter_names(fam, n) {
                        if p != "gamma" {
                            s.params.entry(p).or_insert_with(Rational::zero);
                        }
                    }
                    return Ok(Some(s));
                }
            }
            s.zeros()
        }
    };
    Ok(Some(out))
}

/// Number of adjoined generators (codimension of the nilradical).
pub fn codimension(id: FamilyId) -> usize {
    id.extension_generators().len()
}

/// Evidence that a transcribed table is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ErrataWitness {
    /// The table violates the Leibniz superidentity.
    Residual(Residual),
    /// The table satisfies the identity, but its nilpotent part differs from the
    /// nilradical it is built on.
    NilradicalMismatch {
        cell: String,
        verbatim: String,
        expected: String,
    },
}

impl fmt::Display for ErrataWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrataWitness::Residual(r) => write!(f, "{r}"),
            ErrataWitness::NilradicalMismatch {
                cell,
                verbatim,
                expected,
            } => write!(
                f,
                "nilradical cell {cell}: table gives {verbatim}, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrataEntry {
    pub family: FamilyId,
    pub correction: Correction,
    pub location: String,
    pub verbatim: String,
    pub corrected: String,
    pub justification: String,
    /// Instance on which the witness is reproduced.
    pub instance: FamilySpec,
    /// Defect of the instance with only this correction undone.
    pub witness: Option<ErrataWitness>,
    /// Whether the same check is clean once the correction is applied.
    pub corrected_clean: bool,
}

struct ErrataTemplate {
    family: FamilyId,
    correction: Correction,
    size: usize,
    params: &'static [(&'static str, i64)],
    location: &'static str,
    verbatim: &'static str,
    corrected: &'static str,
    justification: &'static str,
}

const ODD_PAIR_WHY: &str =
    "odd-odd products must be symmetric for the nilradical N2M; the antisymmetric reading breaks the Leibniz superidentity";

macro_rules! odd_pair {
    ($fam:expr, $params:expr) => {
        ErrataTemplate {
            family: $fam,
            correction: Correction::OddPairSymmetry,
            size: 3,
            params: $params,
            location: "[y_i, y_(m+1-i)], i != (m+1)/2",
            verbatim: "-(-1)^(i+1) e2",
            corrected: "(-1)^(i+1) e2",
            justification: ODD_PAIR_WHY,
        }
    };
}

const ERRATA: &[ErrataTemplate] = &[
    odd_pair!(M1, &[]),
    odd_pair!(M2, &[]),
    odd_pair!(M3, &[]),
    odd_pair!(M4, &[]),
    odd_pair!(M5, &[]),
    ErrataTemplate {
        family: M5,
        correction: Correction::M5OddWeight,
        size: 3,
        params: &[],
        location: "[y_i, x]",
        verbatim: "(1-i) y_i",
        corrected: "(i-1) y_i",
        justification: "R_x must be a derivation; with [y_i,e1] = y_(i+1) and [e1,x] = e1 the weight of y_i grows by one with i",
    },
    ErrataTemplate {
        family: M,
        correction: Correction::MSecondOddRow,
        size: 6,
        params: &[("alpha6", 0), ("theta", 0)],
        location: "[y2, e2], coefficient alpha5",
        verbatim: "alpha5 y4",
        corrected: "alpha5 y5",
        justification: "the general row [y_j,e2] = sum alpha_k y_(j+k-2) at j = 2; the y4 reading breaks the Leibniz superidentity",
    },
    ErrataTemplate {
        family: G5,
        correction: Correction::G5OddRows,
        size: 5,
        params: &[],
        location: "[y_i, x]",
        verbatim: "sum a_(k+1-i) y (no subscript; dropped)",
        corrected: "sum_(k=i+1)^(n-1) a_(k+1-i) y_k",
        justification: "without the odd rows R_x is not a derivation and the Leibniz superidentity fails",
    },
    ErrataTemplate {
        family: G6,
        correction: Correction::G5OddRows,
        size: 5,
        params: &[],
        location: "[y_i, x]",
        verbatim: "sum a_(k+1-i) y (no subscript; dropped)",
        corrected: "sum_(k=i+1)^(n-1) a_(k+1-i) y_k",
        justification: "without the odd rows R_x is not a derivation and the Leibniz superidentity fails",
    },
    ErrataTemplate {
        family: SG1,
        correction: Correction::SG1FirstOddRow,
        size: 5,
        params: &[("t", 4)],
        location: "[y1, e2]",
        verbatim: "0 (row absent)",
        corrected: "y_(t-1)",
        justification: "the nilradical G(beta_t = 1) has [y1,e2] = y_(t-1); without it the Leibniz superidentity fails",
    },
];

fn template_spec(family: FamilyId, size: usize, params: &[(&str, i64)]) -> FamilySpec {
    params
        .iter()
        .fold(FamilySpec::new(family, size), |s, (k, v)| s.with(k, *v))
}

/// First cell where two algebras on the same basis labels differ, as
/// `(cell, value in a, value in b)`.
pub fn first_difference(a: &SuperAlgebra, b: &SuperAlgebra) -> Option<(String, String, String)> {
    if a.even_basis() != b.even_basis() || a.odd_basis() != b.odd_basis() {
        return Some((
            "basis".into(),
            format!("{:?}|{:?}", a.even_basis(), a.odd_basis()),
            format!("{:?}|{:?}", b.even_basis(), b.odd_basis()),
        ));
    }
    let render = |x: &SuperAlgebra, i: usize, j: usize| {
        x.cell(i, j)
            .map(|cell| {
                cell.iter()
                    .map(|(k, p)| format!("({p}) {}", x.label(*k)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .unwrap_or_else(|| "0".into())
    };
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.cell(i, j) != b.cell(i, j) {
                return Some((
                    format!("[{}, {}]", a.label(i), a.label(j)),
                    render(a, i, j),
                    render(b, i, j),
                ));
            }
        }
    }
    None
}

/// Restriction of a family member to the basis vectors other than its adjoined
/// generators.
pub fn nilpotent_part(a: &SuperAlgebra, id: FamilyId) -> Result<SuperAlgebra> {
    let gens = id.extension_generators();
    let keep: Vec<usize> = (0..a.dim())
        .filter(|&i| !gens.contains(&a.label(i)))
        .collect();
    a.restrict(&keep, format!("{}|N", a.name()))
}

/// First defect of an already built member of `spec`'s family: a Leibniz residual, or
/// else a mismatch between its nilpotent part and the corrected nilradical.
pub fn table_defect(spec: &FamilySpec, a: &SuperAlgebra) -> Result<Option<ErrataWitness>> {
    if let Some(r) = check_leibniz(a).into_iter().next() {
        return Ok(Some(ErrataWitness::Residual(r)));
    }
    if let Some(nil) = nilradical_spec(spec)? {
        let part = nilpotent_part(a, spec.id)?;
        let expected = build_family(&nil.mode(ErrataMode::Corrected))?;
        if let Some((cell, verbatim, expected)) = first_difference(&part, &expected) {
            return Ok(Some(ErrataWitness::NilradicalMismatch {
                cell,
                verbatim,
                expected,
            }));
        }
    }
    Ok(None)
}

/// Defect of the verbatim transcription of `spec`, if any.
pub fn verbatim_witness(spec: &FamilySpec) -> Result<Option<ErrataWitness>> {
    let v = build_family(&spec.clone().verbatim())?;
    table_defect(spec, &v)
}

/// All shipped corrections, each with its witness reproduced on a sample instance.
pub fn errata_ledger() -> Vec<ErrataEntry> {
    ERRATA
        .iter()
        .map(|t| {
            let instance = template_spec(t.family, t.size, t.params);
            let witness = build_reverting(&instance, t.correction)
                .and_then(|a| table_defect(&instance, &a))
                .ok()
                .flatten();
            let corrected_clean = build_family(&instance)
                .and_then(|a| table_defect(&instance, &a))
                .is_ok_and(|d| d.is_none());
            ErrataEntry {
                family: t.family,
                correction: t.correction,
                location: t.location.into(),
                verbatim: t.verbatim.into(),
                corrected: t.corrected.into(),
                justification: t.justification.into(),
                instance,
                witness,
                corrected_clean,
            }
        })
        .collect()
}

/// Whether the ledger has a correction for `id`.
pub fn has_errata(id: FamilyId) -> bool {
    ERRATA.iter().any(|t| t.family == id)
}

/// A defect of a published table that no single-cell correction repairs: the
/// identity only holds on a proper subset of the stated parameter domain. These are
/// built as printed in both modes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownDefect {
    pub family: FamilyId,
    pub location: String,
    pub analysis: String,
    pub instance: FamilySpec,
    pub witness: Option<ErrataWitness>,
}

struct DefectTemplate {
    family: FamilyId,
    size: usize,
    params: &'static [(&'static str, i64)],
    location: &'static str,
    analysis: &'static str,
    lie: bool,
}

const DEFECTS: &[DefectTemplate] = &[
    DefectTemplate {
        family: M,
        size: 5,
        params: &[("theta", 1)],
        location: "[e2, e2] against [y2, e2]",
        analysis: "[e2,[e2,y1]] = 0 while [[e2,e2],y1] - [[e2,y1],e2] = (alpha_n - theta)/2 y_n, so the table is a Leibniz superalgebra only when theta = alpha_n (theta = 0 when n = 3)",
        lie: false,
    },
    DefectTemplate {
        family: H,
        size: 5,
        params: &[("gamma", 1)],
        location: "[e2, e2] = gamma e_n",
        analysis: "[e2,y1] = 0 and [e_n,y1] = y_n/2 give [[e2,e2],y1] = gamma/2 y_n with nothing to cancel it, so gamma = 0 is forced",
        lie: false,
    },
    DefectTemplate {
        family: SH3,
        size: 5,
        params: &[("gamma", 1)],
        location: "[e2, e2] = gamma e_n",
        analysis: "inherits the gamma defect of its nilradical",
        lie: false,
    },
    DefectTemplate {
        family: SH4,
        size: 5,
        params: &[],
        location: "[e2, e2] = e_n",
        analysis: "inherits the gamma defect of its nilradical",
        lie: false,
    },
    DefectTemplate {
        family: H5,
        size: 4,
        params: &[("gamma", 1)],
        location: "[x, x] = gamma e2",
        analysis: "squares lie in the right annihilator, but [x,e2] = -e2, so [x,[x,x]] = -gamma e2 forces gamma = 0",
        lie: false,
    },
    DefectTemplate {
        family: M1,
        size: 3,
        params: &[],
        location: "[x, x] = e2",
        analysis: "a nonzero square of an even element violates graded antisymmetry; M1 is a Leibniz superalgebra but not a Lie superalgebra",
        lie: true,
    },
];

/// Defects recorded against the published tables that have no correction.
pub fn known_defects() -> Vec<KnownDefect> {
    DEFECTS
        .iter()
        .map(|d| {
            let instance = template_spec(d.family, d.size, d.params);
            let witness = build_family(&instance).ok().and_then(|a| {
                let res = if d.lie {
                    check_lie(&a)
                } else {
                    check_leibniz(&a)
                };
                res.into_iter().next().map(ErrataWitness::Residual)
            });
            KnownDefect {
                family: d.family,
                location: d.location.into(),
                analysis: d.analysis.into(),
                instance,
                witness,
            }
        })
        .collect()
}
