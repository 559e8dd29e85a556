//! Combinatorics of the structure theorems: index sets of operator words,
//! weight/degree signatures, degree bounds, dimension bookkeeping for cusp and
//! non-cusp decompositions, and the `V_k` multiplicity solver.
//!
//! Dimensions of spaces of modular forms are always inputs ([`DimTable`]);
//! nothing here computes them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{NavOp, OperatorWord};

/// Weight `(ℓ₁, m₁)`, degree cap `p₁` and word degree `v = p₁ − p` after
/// applying a word to `N^p_{ℓ,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub ell: i64,
    pub m: i64,
    pub p: i64,
    pub degree: i64,
}

/// Folds the per-operator shifts of `word` (applied right to left) starting at
/// `(ℓ, m, p)`.
///
/// Words that pass through `m < 0`, apply `U` or `L` with `m < 2`, or lower the
/// degree cap below zero act as the zero operator; they are rejected.
pub fn op_signature(word: &OperatorWord, ell: i64, m: i64, p: i64) -> Result<Signature> {
    if m < 0 || p < 0 {
        return Err(Error::Invalid(format!("start (ℓ, m, p) = ({ell}, {m}, {p}) needs m, p ≥ 0")));
    }
    let (mut l, mut mm, mut pp) = (ell, m, p);
    for op in word.application_order() {
        if op.needs_m_ge_2() && mm < 2 {
            return Err(Error::Invalid(format!("{} applied at m = {mm} < 2 is the zero operator", op.token())));
        }
        let (dl, dm, dp) = op.shift();
        l += dl;
        mm += dm;
        pp += dp;
        if mm < 0 {
            return Err(Error::Invalid(format!("word {word} passes through m = {mm} < 0")));
        }
        if pp < 0 {
            return Err(Error::Invalid(format!("word {word} annihilates N^{p}: degree cap drops below 0")));
        }
    }
    Ok(Signature { ell: l, m: mm, p: pp, degree: pp - p })
}

fn word(prefix_e: bool, alpha: i64, beta: i64, gamma: i64) -> OperatorWord {
    let mut powers = Vec::new();
    if prefix_e {
        powers.push((NavOp::Ep, 1));
    }
    powers.extend([(NavOp::Xp, alpha as usize), (NavOp::Dp, beta as usize), (NavOp::U, gamma as usize)]);
    OperatorWord::from_powers(&powers)
}

/// The words `X` carrying weight `(ℓ′, m′)` forms into weight `(ℓ, m)` forms in
/// the structure theorem, each of the shape `[E₊] X₊^α D₊^β U^γ`.
///
/// For `ℓ′ = 1`, `m′ = 0` and `ℓ` even the candidate `E₊X₊^{m/2}D₊^{(ℓ−2)/2}`
/// is dropped: `E₊` annihilates the weight-`(1,1)` vector of `L(1,1)`, so that
/// word contributes nothing, and `L(1,1)` has no `K`-type `(ℓ+m, ℓ)` with `ℓ`
/// even.
pub fn index_set(ell: i64, m: i64, ellp: i64, mp: i64) -> Vec<OperatorWord> {
    if (ell, m, ellp, mp) == (0, 0, 0, 0) {
        return vec![OperatorWord::identity()];
    }
    if m < 0 || mp < 0 || ellp < 1 || ell < ellp {
        return Vec::new();
    }
    let mut out = Vec::new();
    if ellp == 1 {
        if mp > m || (m - mp) % 2 != 0 {
            return out;
        }
        let alpha = (m - mp) / 2;
        if ell % 2 == 1 {
            out.push(word(false, alpha, (ell - 1) / 2, 0));
        } else if mp > 0 {
            out.push(word(true, alpha, (ell - 2) / 2, 0));
        }
        return out;
    }
    for plus_e in [false, true] {
        let e = plus_e as i64;
        // ℓ′ + 2β + 2γ + e = ℓ and ℓ′ + m′ + 2α + 2β + e = ℓ + m.
        for gamma in 0..=mp / 2 {
            if plus_e && 2 * gamma >= mp {
                continue;
            }
            let twice_beta = ell - ellp - e - 2 * gamma;
            if twice_beta < 0 || twice_beta % 2 != 0 {
                continue;
            }
            let beta = twice_beta / 2;
            let twice_alpha = ell + m - ellp - mp - e - 2 * beta;
            if twice_alpha < 0 || twice_alpha % 2 != 0 {
                continue;
            }
            out.push(word(plus_e, twice_alpha / 2, beta, gamma));
        }
    }
    out
}

/// `ℓ − 1 + ⌊m/2⌋`, clamped at 0: every cusp form of weight `(ℓ, m)` that is
/// nearly holomorphic has at most this degree.
pub fn degree_bound(ell: i64, m: i64) -> i64 {
    (ell - 1 + m.div_euclid(2)).max(0)
}

/// Which space a user-supplied dimension refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DimKind {
    /// Cusp forms `S_{ℓ,m}(Γ)`.
    S,
    /// Holomorphic forms `M_{ℓ,m}(Γ)`.
    M,
    /// The enlarged space `M*_{3,m}(Γ)`.
    Mstar3,
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimKind::S => "S",
            DimKind::M => "M",
            DimKind::Mstar3 => "Mstar3",
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimEntry {
    ell: i64,
    m: i64,
    dim: u64,
    kind: DimKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimTableJson {
    dims: Vec<DimEntry>,
}

/// Finitely supported table `(ℓ′, m′, kind) ↦ dimension`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimTable {
    entries: BTreeMap<(i64, i64, DimKind), u64>,
}

impl DimTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, ell: i64, m: i64, kind: DimKind, dim: u64) -> Result<()> {
        if kind == DimKind::Mstar3 && ell != 3 {
            return Err(Error::Invalid(format!("Mstar3 entries need ell = 3, got {ell}")));
        }
        if self.entries.insert((ell, m, kind), dim).is_some() {
            return Err(Error::Invalid(format!("duplicate entry {kind}({ell},{m})")));
        }
        Ok(())
    }

    pub fn get(&self, ell: i64, m: i64, kind: DimKind) -> Option<u64> {
        self.entries.get(&(ell, m, kind)).copied()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: DimTableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = DimTable::new();
        for e in j.dims {
            t.insert(e.ell, e.m, e.kind, e.dim).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dims = self
            .entries
            .iter()
            .map(|(&(ell, m, kind), &dim)| DimEntry { ell, m, dim, kind })
            .collect();
        serde_json::to_value(DimTableJson { dims }).expect("dimension tables are always serializable")
    }
}

/// One `(ℓ′, m′)` summand of a dimension count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTerm {
    pub ell: i64,
    pub m: i64,
    pub kind: DimKind,
    pub words: Vec<String>,
    pub dim: Option<u64>,
    pub contribution: Option<u64>,
}

/// A dimension together with its per-summand breakdown. `total` is `None`
/// when some needed dimension was missing; those are listed in `unresolved`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimBreakdown {
    pub ell: i64,
    pub m: i64,
    pub cap: Option<i64>,
    pub terms: Vec<DimTerm>,
    pub known_part: u64,
    pub unresolved: Vec<String>,
    pub total: Option<u64>,
}

fn words_within_cap(ell: i64, m: i64, ellp: i64, mp: i64, cap: Option<i64>) -> Vec<OperatorWord> {
    index_set(ell, m, ellp, mp)
        .into_iter()
        .filter(|w| match cap {
            None => true,
            Some(p) => op_signature(w, ellp, mp, 0).map(|s| s.p <= p).unwrap_or(false),
        })
        .collect()
}

fn breakdown(ell: i64, m: i64, dims: &DimTable, cap: Option<i64>, kind_for: impl Fn(i64) -> DimKind) -> DimBreakdown {
    let mut terms = Vec::new();
    let mut unresolved = Vec::new();
    let mut known = 0u64;
    for ellp in 1..=ell {
        for mp in 0..=(ell + m - ellp) {
            let words = words_within_cap(ell, m, ellp, mp, cap);
            if words.is_empty() {
                continue;
            }
            let kind = kind_for(ellp);
            let dim = dims.get(ellp, mp, kind);
            let contribution = dim.map(|d| d * words.len() as u64);
            match contribution {
                Some(c) => known += c,
                None => unresolved.push(format!("{kind}({ellp},{mp})")),
            }
            terms.push(DimTerm {
                ell: ellp,
                m: mp,
                kind,
                words: words.iter().map(ToString::to_string).collect(),
                dim,
                contribution,
            });
        }
    }
    let total = unresolved.is_empty().then_some(known);
    DimBreakdown { ell, m, cap, terms, known_part: known, unresolved, total }
}

/// `dim N^p_{ℓ,m}(Γ)°` (no cap: `dim N_{ℓ,m}(Γ)°`) from cusp-form dimensions.
///
/// Each summand `(ℓ′, m′)` contributes `dim S_{ℓ′,m′} · |words|`, counting
/// only words whose degree cap after application is `≤ p`.
pub fn cusp_dimension(ell: i64, m: i64, dims: &DimTable, cap: Option<i64>) -> Result<DimBreakdown> {
    check_target(m, cap)?;
    Ok(breakdown(ell, m, dims, cap, |_| DimKind::S))
}

/// `dim N^p_{ℓ,m}(Γ)` from holomorphic dimensions, using `M*₃` in the `ℓ′ = 3`
/// column. For `ℓ ≤ 0` the only nearly holomorphic forms are the constants.
pub fn noncusp_dimension(ell: i64, m: i64, dims: &DimTable, cap: Option<i64>) -> Result<DimBreakdown> {
    check_target(m, cap)?;
    if ell <= 0 {
        let total = u64::from(ell == 0 && m == 0);
        return Ok(DimBreakdown { ell, m, cap, terms: Vec::new(), known_part: total, unresolved: Vec::new(), total: Some(total) });
    }
    Ok(breakdown(ell, m, dims, cap, |ellp| if ellp == 3 { DimKind::Mstar3 } else { DimKind::M }))
}

fn check_target(m: i64, cap: Option<i64>) -> Result<()> {
    if m < 0 {
        return Err(Error::Invalid(format!("m = {m} must be non-negative")));
    }
    if let Some(p) = cap.filter(|p| *p < 0) {
        return Err(Error::Invalid(format!("degree cap {p} must be non-negative")));
    }
    Ok(())
}

/// One summand `D₊^β U^γ S_{ℓ′,m′}` of the scalar-valued decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarTerm {
    pub ell: i64,
    pub m: i64,
    pub word: String,
    pub degree: i64,
}

/// The summands of `N^p_{ℓ,0}(Γ)°` for scalar weight `ℓ ≥ 1` (all of
/// `N_{ℓ,0}(Γ)°` when `p` is `None`).
pub fn scalar_decomposition(ell: i64, p: Option<i64>) -> Result<Vec<(i64, i64, OperatorWord)>> {
    if ell < 1 {
        return Err(Error::Invalid(format!("scalar decomposition needs ℓ ≥ 1, got {ell}")));
    }
    if let Some(p) = p.filter(|p| *p < 0) {
        return Err(Error::Invalid(format!("degree cap {p} must be non-negative")));
    }
    let (lo_l, lo_m): (Box<dyn Fn() -> i64>, Box<dyn Fn(i64) -> i64>) = match p {
        None => (Box::new(|| 2), Box::new(|_| 0)),
        Some(p) => (Box::new(move || 2.max(ell - 2 * p)), Box::new(move |lp| 0.max(2 * (ell - lp - p)))),
    };
    let mut out = Vec::new();
    for ellp in (lo_l()..=ell).filter(|lp| (ell - lp) % 2 == 0) {
        for mp in (lo_m(ellp)..=ell - ellp).filter(|mp| mp % 2 == 0) {
            let w = OperatorWord::from_powers(&[(NavOp::Dp, ((ell - ellp - mp) / 2) as usize), (NavOp::U, (mp / 2) as usize)]);
            out.push((ellp, mp, w));
        }
    }
    if ell % 2 == 1 && p.is_none_or(|p| p >= ell - 1) {
        out.push((1, 0, OperatorWord::from_powers(&[(NavOp::Dp, ((ell - 1) / 2) as usize)])));
    }
    Ok(out)
}

/// Multiplicities `(a, b, c)` in `V_k ≅ a L(λ) ⊕ b L(μ) ⊕ c N(λ)^∨` from
/// `dim M_{1,k−1}`, `dim M_{3,k−3}` and `dim M*_{3,k−3}`, solving
/// `a + c = dim M₁`, `b = dim M₃`, `b + c = dim M*₃`.
pub fn vk_multiplicities(dim_m1: u64, dim_m3: u64, dim_m3star: u64) -> Result<(u64, u64, u64)> {
    if dim_m3star < dim_m3 {
        return Err(Error::Infeasible {
            constraint: "c >= 0: dim M3 <= dim M*3",
            detail: format!("dim M3 = {dim_m3} > dim M*3 = {dim_m3star}"),
        });
    }
    let c = dim_m3star - dim_m3;
    if c > dim_m1 {
        return Err(Error::Infeasible {
            constraint: "a >= 0: dim M*3 <= dim M1 + dim M3",
            detail: format!("dim M*3 = {dim_m3star} > dim M1 + dim M3 = {}", dim_m1 + dim_m3),
        });
    }
    Ok((dim_m1 - c, dim_m3, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OperatorWord {
        s.parse().unwrap()
    }

    #[test]
    fn signatures() {
        let s = op_signature(&OperatorWord::identity(), 3, 1, 2).unwrap();
        assert_eq!(s, Signature { ell: 3, m: 1, p: 2, degree: 0 });
        assert_eq!(op_signature(&w("Ep"), 3, 1, 0).unwrap(), Signature { ell: 4, m: 1, p: 1, degree: 1 });
        for (r, s) in [(0, 1), (2, 1), (1, 3), (3, 0)] {
            let word = OperatorWord::from_powers(&[(NavOp::Dp, r), (NavOp::U, s)]);
            let (r, s) = (r as i64, s as i64);
            let sig = op_signature(&word, 5, 2 * s, 1).unwrap();
            assert_eq!(sig, Signature { ell: 5 + 2 * s + 2 * r, m: 0, p: 1 + 2 * r + s, degree: 2 * r + s });
        }
        assert!(op_signature(&w("U"), 3, 1, 0).is_err());
        assert!(op_signature(&w("L"), 3, 1, 4).is_err());
        assert!(op_signature(&w("P0m"), 3, 0, 0).is_err());
    }

    #[test]
    fn index_set_examples() {
        assert_eq!(index_set(4, 0, 2, 2), vec![w("U")]);
        assert_eq!(index_set(3, 2, 1, 0), vec![w("Xp,Dp")]);
        assert_eq!(index_set(0, 0, 0, 0), vec![OperatorWord::identity()]);
        for (l, m) in [(1, 0), (2, 3), (5, 4)] {
            assert_eq!(index_set(l, m, l, m), vec![OperatorWord::identity()]);
        }
        assert!(index_set(4, 2, 1, 0).is_empty());
        assert_eq!(index_set(4, 2, 1, 2), vec![w("Ep,Dp")]);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(1, 0), 0);
        assert_eq!(degree_bound(4, 3), 4);
        assert_eq!(degree_bound(0, 0), 0);
    }

    #[test]
    fn dimension_examples() {
        let mut dims = DimTable::new();
        assert_eq!(cusp_dimension(4, 0, &dims, None).unwrap().unresolved, ["S(2,0)", "S(2,2)", "S(4,0)"]);
        for lp in 1..=4 {
            for mp in 0..=(4 - lp) {
                dims.insert(lp, mp, DimKind::S, 0).unwrap();
            }
        }
        assert_eq!(cusp_dimension(4, 0, &dims, None).unwrap().total, Some(0));
        let mut only = DimTable::new();
        only.insert(2, 2, DimKind::S, 7).unwrap();
        only.insert(4, 0, DimKind::S, 0).unwrap();
        only.insert(2, 0, DimKind::S, 0).unwrap();
        assert_eq!(cusp_dimension(4, 0, &only, None).unwrap().total, Some(7));
        assert_eq!(cusp_dimension(4, 0, &only, Some(0)).unwrap().total, Some(0));
        let empty = DimTable::new();
        assert_eq!(noncusp_dimension(0, 0, &empty, None).unwrap().total, Some(1));
        assert_eq!(noncusp_dimension(0, 5, &empty, None).unwrap().total, Some(0));
        let b = noncusp_dimension(3, 0, &empty, None).unwrap();
        assert!(b.unresolved.contains(&"Mstar3(3,0)".to_string()));
    }

    #[test]
    fn dim_table_json() {
        let s = r#"{"dims":[{"ell":2,"m":2,"dim":3,"kind":"S"},{"ell":3,"m":1,"dim":1,"kind":"Mstar3"}]}"#;
        let t = DimTable::from_json_str(s).unwrap();
        assert_eq!(t.get(2, 2, DimKind::S), Some(3));
        assert_eq!(DimTable::from_json_str(&t.to_json().to_string()).unwrap(), t);
        assert!(DimTable::from_json_str(r#"{"dims":[{"ell":2,"m":2,"dim":-1,"kind":"S"}]}"#).is_err());
        assert!(DimTable::from_json_str(r#"{"dims":[{"ell":2,"m":2,"dim":1,"kind":"Mstar3"}]}"#).is_err());
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(scalar_decomposition(2, None).unwrap(), vec![(2, 0, OperatorWord::identity())]);
        assert_eq!(scalar_decomposition(3, None).unwrap(), vec![(3, 0, OperatorWord::identity()), (1, 0, w("Dp"))]);
        assert_eq!(scalar_decomposition(4, Some(0)).unwrap(), vec![(4, 0, OperatorWord::identity())]);
    }

    #[test]
    fn vk_examples() {
        assert_eq!(vk_multiplicities(5, 2, 2).unwrap(), (5, 2, 0));
        assert_eq!(vk_multiplicities(5, 2, 4).unwrap(), (3, 2, 2));
        assert!(matches!(vk_multiplicities(0, 2, 3), Err(Error::Infeasible { .. })));
        assert!(matches!(vk_multiplicities(3, 2, 1), Err(Error::Infeasible { .. })));
    }
}
