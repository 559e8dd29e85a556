//! Parabolic Verma modules `N(λ)` over `sp₄(ℂ)` and their irreducible quotients.
//!
//! `N(λ)` has the basis `X₊^α P₁₊^β P₀₊^γ N₋^δ w₀` with `0 ≤ δ ≤ k − ℓ`, where
//! `w₀` spans the lowest `K`-type's highest weight line and is killed by `p₋`
//! and `N₊`. The action of a basis symbol is computed by commuting it past the
//! `p₊` factors one at a time, so every result is exact.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{adjoint, bracket_coeffs, monomial_word, nav_operator, BasisSymbol, LieElement, Weight};
use crate::linalg::kernel;
use crate::scalar::{int, rat, Gq};
use crate::word::{NavOp, OperatorWord};

use BasisSymbol as S;

/// Exponents `(α, β, γ, δ)` of `X₊^α P₁₊^β P₀₊^γ N₋^δ w₀`.
pub type VermaMonomial = [u32; 4];

pub fn monomial_weight(lambda: Weight, m: &VermaMonomial) -> Weight {
    let [a, b, g, d] = m.map(i64::from);
    Weight::new(lambda.k + 2 * a + b - d, lambda.l + b + 2 * g + d)
}

/// A vector of `N(λ)` in the monomial basis; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaVector {
    pub lambda: Weight,
    terms: BTreeMap<VermaMonomial, Gq>,
}

impl VermaVector {
    pub fn zero(lambda: Weight) -> Self {
        VermaVector { lambda, terms: BTreeMap::new() }
    }

    /// The cyclic vector `w₀`.
    pub fn w0(lambda: Weight) -> Self {
        Self::monomial(lambda, [0; 4], Gq::one())
    }

    pub fn monomial(lambda: Weight, m: VermaMonomial, c: Gq) -> Self {
        let mut v = Self::zero(lambda);
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: VermaMonomial, c: Gq) {
        if c.is_zero() || i64::from(m[3]) > self.lambda.k - self.lambda.l {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Gq::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &VermaVector, c: &Gq) {
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut v = Self::zero(self.lambda);
        v.add_scaled(self, c);
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VermaMonomial, &Gq)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &VermaMonomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms, if the vector is a non-zero weight vector.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|m| monomial_weight(self.lambda, m));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// If `self = c·other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &VermaVector) -> Option<Gq> {
        let (m, x) = other.terms.iter().next()?;
        let c = self.coeff(m) / x.clone();
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})·[{},{},{},{}]", crate::scalar::display(c), m[0], m[1], m[2], m[3]))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `N(λ)` together with a cache of single-symbol actions on basis monomials.
pub struct VermaModule {
    pub lambda: Weight,
    cache: RefCell<HashMap<(BasisSymbol, VermaMonomial), VermaVector>>,
}

impl VermaModule {
    pub fn new(lambda: Weight) -> Result<Self> {
        if !lambda.is_dominant_for_k() {
            return Err(Error::Invalid(format!("weight {lambda} needs k ≥ ℓ")));
        }
        Ok(VermaModule { lambda, cache: RefCell::new(HashMap::new()) })
    }

    pub fn w0(&self) -> VermaVector {
        VermaVector::w0(self.lambda)
    }

    /// Monomials spanning the `μ`-weight space.
    pub fn weight_basis(&self, mu: Weight) -> Vec<VermaMonomial> {
        let (k, l) = (self.lambda.k, self.lambda.l);
        let mut out = Vec::new();
        for d in 0..=(k - l) {
            // μ − weight(N₋^δ w₀) must be a combination a(2,0) + b(1,1) + g(0,2).
            let (x, y) = (mu.k - (k - d), mu.l - (l + d));
            if x < 0 || y < 0 {
                continue;
            }
            for b in 0..=x.min(y) {
                if (x - b) % 2 == 0 && (y - b) % 2 == 0 {
                    out.push([((x - b) / 2) as u32, b as u32, ((y - b) / 2) as u32, d as u32]);
                }
            }
        }
        out.sort();
        out
    }

    /// Action of a basis symbol on a basis monomial.
    pub fn act_symbol(&self, s: BasisSymbol, m: VermaMonomial) -> VermaVector {
        if let Some(v) = self.cache.borrow().get(&(s, m)) {
            return v.clone();
        }
        let v = self.act_symbol_uncached(s, m);
        self.cache.borrow_mut().insert((s, m), v.clone());
        v
    }

    fn act_symbol_uncached(&self, s: BasisSymbol, m: VermaMonomial) -> VermaVector {
        let lam = self.lambda;
        let raise = |m: VermaMonomial, slot: usize| {
            let mut n = m;
            n[slot] += 1;
            VermaVector::monomial(lam, n, Gq::one())
        };
        // U(p₊) is commutative, so a p₊ symbol on the left just bumps its exponent.
        match s {
            S::Xp => return raise(m, 0),
            S::P1p => return raise(m, 1),
            S::P0p => return raise(m, 2),
            _ => {}
        }
        // Peel the leftmost p₊ factor X: Y·X·v′ = X·(Y·v′) + [Y, X]·v′.
        if let Some((slot, x)) = [(0, S::Xp), (1, S::P1p), (2, S::P0p)].into_iter().find(|&(k, _)| m[k] > 0) {
            let mut rest = m;
            rest[slot] -= 1;
            let inner = self.act_symbol(s, rest);
            let mut out = self.act_symbol_vec(x, &inner);
            for (t, c) in bracket_coeffs(s, x) {
                out.add_scaled(&self.act_symbol(*t, rest), c);
            }
            return out;
        }
        let d = m[3];
        match s {
            S::Nm => raise(m, 3),
            S::Z => VermaVector::monomial(lam, m, int(lam.k - i64::from(d))),
            S::Zp => VermaVector::monomial(lam, m, int(lam.l + i64::from(d))),
            // p₋ and N₊ kill w₀; commute them through the N₋ factors.
            _ if d == 0 => VermaVector::zero(lam),
            _ => {
                let rest = [0, 0, 0, d - 1];
                let inner = self.act_symbol(s, rest);
                let mut out = self.act_symbol_vec(S::Nm, &inner);
                for (t, c) in bracket_coeffs(s, S::Nm) {
                    out.add_scaled(&self.act_symbol(*t, rest), c);
                }
                out
            }
        }
    }

    pub fn act_symbol_vec(&self, s: BasisSymbol, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero(self.lambda);
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_symbol(s, *m), c);
        }
        out
    }

    /// Applies a product of symbols `s₁ s₂ … s_r` (rightmost acts first).
    pub fn act_word(&self, w: &[BasisSymbol], v: &VermaVector) -> VermaVector {
        w.iter().rev().fold(v.clone(), |acc, &s| self.act_symbol_vec(s, &acc))
    }

    pub fn act(&self, x: &LieElement, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero(self.lambda);
        for (m, c) in x.terms() {
            out.add_scaled(&self.act_word(&monomial_word(m), v), c);
        }
        out
    }

    /// Basis of the highest weight vectors of weight `μ`: the kernel of `N₊` on
    /// the `μ`-weight space.
    pub fn highest_weight_vectors(&self, mu: Weight) -> Vec<VermaVector> {
        let basis = self.weight_basis(mu);
        if basis.is_empty() {
            return Vec::new();
        }
        let images: Vec<VermaVector> = basis.iter().map(|&m| self.act_symbol(S::Np, m)).collect();
        let targets = self.weight_basis(mu.shift(1, -1));
        let rows: Vec<Vec<Gq>> = targets
            .iter()
            .map(|t| images.iter().map(|img| img.coeff(t)).collect())
            .collect();
        kernel(&rows, basis.len())
            .into_iter()
            .map(|x| {
                let mut v = VermaVector::zero(self.lambda);
                for (m, c) in basis.iter().zip(x) {
                    v.add_term(*m, c);
                }
                v
            })
            .collect()
    }

    /// One navigation step, with `m` read off the vector's weight `(ℓ+m, ℓ)`.
    pub fn nav_step(&self, op: NavOp, v: &VermaVector) -> VermaVector {
        match v.weight() {
            None => VermaVector::zero(self.lambda),
            Some(w) => {
                let m = w.k - w.l;
                if m < 0 {
                    return VermaVector::zero(self.lambda);
                }
                self.act(&nav_operator(op, m), v)
            }
        }
    }

    /// Applies a word right to left, rebinding `m` before each step.
    pub fn navigate_from(&self, word: &OperatorWord, v: &VermaVector) -> VermaVector {
        word.application_order().fold(v.clone(), |acc, op| self.nav_step(op, &acc))
    }

    pub fn navigate(&self, word: &OperatorWord) -> VermaVector {
        self.navigate_from(word, &self.w0())
    }

    /// `⟨u, v⟩` for the Hermitian contravariant form with `⟨w₀, w₀⟩ = 1`
    /// (linear in `u`, conjugate-linear in `v`).
    pub fn inner(&self, u: &VermaVector, v: &VermaVector) -> Gq {
        let mut acc = Gq::zero();
        for (m, a) in u.terms() {
            // ⟨b·w₀, v⟩ = ⟨w₀, b*·v⟩ where b* reverses the word and adjoints each letter.
            let mut x = v.clone();
            let word = [(S::Xp, m[0]), (S::P1p, m[1]), (S::P0p, m[2]), (S::Nm, m[3])];
            for (s, e) in word {
                for _ in 0..e {
                    let mut y = VermaVector::zero(self.lambda);
                    for (t, c) in adjoint(s) {
                        y.add_scaled(&self.act_symbol_vec(*t, &x), c);
                    }
                    x = y;
                }
            }
            acc = &acc + &(a * x.coeff(&[0; 4]).conj());
        }
        acc
    }
}

/// `Q(x, y)`: the number of ways to write `(x, y)` as a non-negative
/// combination of `(2,0)`, `(1,1)`, `(0,2)`.
pub fn q_count(x: i64, y: i64) -> u64 {
    if x >= 0 && y >= 0 && (x - y) % 2 == 0 {
        ((x.min(y) + 2) / 2) as u64
    } else {
        0
    }
}

/// Brute-force `Q` by enumeration.
pub fn q_count_oracle(x: i64, y: i64) -> u64 {
    if x < 0 || y < 0 {
        return 0;
    }
    let mut n = 0;
    for b in 0..=x.min(y) {
        if (x - b) % 2 == 0 && (y - b) % 2 == 0 {
            n += 1;
        }
    }
    n
}

/// `dim N(λ)_μ` via the layer sum over `N₋^n w₀`.
pub fn weight_multiplicity(lambda: Weight, mu: Weight) -> u64 {
    let (k, l) = (lambda.k, lambda.l);
    (0..=(k - l).max(-1)).map(|n| q_count(mu.k - k + n, mu.l - l - n)).sum()
}

/// `dim N(λ)_μ` by enumerating all monomials `(α,β,γ,δ)` in a box.
pub fn weight_multiplicity_oracle(lambda: Weight, mu: Weight) -> u64 {
    let (k, l) = (lambda.k, lambda.l);
    let bound = (mu.k - k).abs() + (mu.l - l).abs() + (k - l) + 2;
    let mut n = 0;
    for d in 0..=(k - l) {
        for a in 0..=bound {
            for b in 0..=bound {
                for g in 0..=bound {
                    let w = monomial_weight(lambda, &[a as u32, b as u32, g as u32, d as u32]);
                    if w == mu {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// Multiplicity of the `K`-type `ρ_μ` in `N(λ)`, closed form.
pub fn ktype_multiplicity_n(lambda: Weight, mu: Weight) -> u64 {
    let (k, l) = (lambda.k, lambda.l);
    let (x, y) = (mu.k, mu.l);
    if x < y || x < k || y < l || (x - y - (k - l)).rem_euclid(2) != 0 {
        return 0;
    }
    let base = (x - k).min(y - l);
    let v = if y <= k {
        (base + 2).div_euclid(2)
    } else {
        base.div_euclid(2) - (y - k - 1).div_euclid(2)
    };
    v.max(0) as u64
}

/// Multiplicity of `ρ_μ` from weight multiplicities: `m_μ − m_{μ+(1,−1)}`.
pub fn ktype_multiplicity_n_from_weights(lambda: Weight, mu: Weight) -> u64 {
    if mu.k < mu.l {
        return 0;
    }
    weight_multiplicity(lambda, mu) - weight_multiplicity(lambda, mu.shift(1, -1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionTag {
    A,
    B,
    C,
    D,
    IrreducibleWall,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionTag::A => "A",
            RegionTag::B => "B",
            RegionTag::C => "C",
            RegionTag::D => "D",
            RegionTag::IrreducibleWall => "IrreducibleWall",
        };
        f.write_str(s)
    }
}

pub fn region(lambda: Weight) -> RegionTag {
    let (k, l) = (lambda.k, lambda.l);
    if k <= 0 {
        RegionTag::A
    } else if k >= 2 && k + l <= 2 {
        RegionTag::B
    } else if l <= 1 && k + l >= 4 {
        RegionTag::C
    } else if l >= 3 {
        RegionTag::D
    } else {
        RegionTag::IrreducibleWall
    }
}

pub fn is_irreducible(lambda: Weight) -> bool {
    let (k, l) = (lambda.k, lambda.l);
    l >= 2 || k == 1 || k + l == 3
}

/// The weight of the irreducible submodule of `N(λ)` when `N(λ)` is reducible.
pub fn socle(lambda: Weight) -> Option<Weight> {
    let (k, l) = (lambda.k, lambda.l);
    match region(lambda) {
        RegionTag::A => Some(Weight::new(2 - k, l)),
        RegionTag::B => Some(Weight::new(3 - l, 3 - k)),
        RegionTag::C => Some(Weight::new(k, 4 - l)),
        RegionTag::D | RegionTag::IrreducibleWall => None,
    }
}

/// `w·λ = w(λ + ϱ) − ϱ` with `ϱ = (−1, −2)`, for `w` given as a product of the
/// simple reflections `s₁(x,y) = (y,x)` and `s₂(x,y) = (−x,y)`, rightmost first.
pub fn dot_action(word: &[u8], lambda: Weight) -> Weight {
    let (mut x, mut y) = (lambda.k - 1, lambda.l - 2);
    for &s in word.iter().rev() {
        (x, y) = match s {
            1 => (y, x),
            2 => (-x, y),
            _ => panic!("no simple reflection s{s}"),
        };
    }
    Weight::new(x + 1, y + 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModuleKind {
    N,
    L,
    NDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleLabel {
    pub kind: ModuleKind,
    pub weight: Weight,
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ModuleKind::N => "N",
            ModuleKind::L => "L",
            ModuleKind::NDual => "N^∨",
        };
        write!(f, "{k}({},{})", self.weight.k, self.weight.l)
    }
}

/// `[L(λ)]` if irreducible, else `[L(socle), L(λ)]` (submodule first).
pub fn composition_series(lambda: Weight) -> Vec<ModuleLabel> {
    let l = |weight| ModuleLabel { kind: ModuleKind::L, weight };
    match socle(lambda) {
        Some(s) => vec![l(s), l(lambda)],
        None => vec![l(lambda)],
    }
}

/// Multiplicity of `ρ_μ` in `L(λ)`, by peeling off socles region by region.
pub fn ktype_multiplicity_l(lambda: Weight, mu: Weight) -> u64 {
    let n = ktype_multiplicity_n(lambda, mu);
    match socle(lambda) {
        Some(s) => n - ktype_multiplicity_l(s, mu),
        None => n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitaryClass {
    pub square_integrable: bool,
    pub tempered: bool,
    pub unitarizable: bool,
}

pub fn unitary_class(lambda: Weight) -> UnitaryClass {
    let l = lambda.l;
    UnitaryClass {
        square_integrable: l >= 3,
        tempered: l >= 2,
        unitarizable: l >= 1 || (lambda.k, l) == (0, 0),
    }
}

/// Eigenvalue of the Casimir on `N(λ)`.
pub fn casimir_scalar(lambda: Weight) -> BigRational {
    let (k, l) = (lambda.k, lambda.l);
    rat(k * (k - 2) + l * (l - 4), 2)
}

pub fn highest_weight_vectors(lambda: Weight, mu: Weight) -> Result<Vec<VermaVector>> {
    Ok(VermaModule::new(lambda)?.highest_weight_vectors(mu))
}

pub fn navigate(word: &OperatorWord, lambda: Weight) -> Result<VermaVector> {
    Ok(VermaModule::new(lambda)?.navigate(word))
}

/// `⟨X w₀, X w₀⟩ / ⟨w₀, w₀⟩` for a word `X` over the raising operators.
pub fn petersson_constant(lambda: Weight, word: &OperatorWord) -> Result<BigRational> {
    if lambda.l <= 0 {
        return Err(Error::Invalid(format!("petersson constant needs ℓ ≥ 1, got {lambda}")));
    }
    if let Some(op) = word.0.iter().find(|op| !op.is_raising()) {
        return Err(Error::Invalid(format!("{op} is not a raising operator")));
    }
    let module = VermaModule::new(lambda)?;
    let v = module.navigate(word);
    let c = module.inner(&v, &v);
    if !c.im.is_zero() {
        return Err(Error::Consistency(format!("⟨v,v⟩ = {} is not real", crate::scalar::display(&c))));
    }
    Ok(c.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::casimir;

    fn w(k: i64, l: i64) -> Weight {
        Weight::new(k, l)
    }

    #[test]
    fn basic_action() {
        let n = VermaModule::new(w(4, 1)).unwrap();
        assert!(n.act_symbol(S::Np, [0; 4]).is_zero());
        let xw = n.act_symbol(S::Xp, [0; 4]);
        assert_eq!(n.act_symbol_vec(S::Z, &xw), xw.scale(&int(6)));
        assert!(n.act_symbol(S::Nm, [0, 0, 0, 3]).is_zero());
    }

    #[test]
    fn casimir_on_w0() {
        for (k, l) in [(3, 3), (4, 2), (0, 0), (5, -2)] {
            let n = VermaModule::new(w(k, l)).unwrap();
            let v = n.act(&casimir(), &n.w0());
            let c = crate::scalar::from_rat(casimir_scalar(w(k, l)));
            assert_eq!(v, n.w0().scale(&c), "{k},{l}");
        }
        assert_eq!(casimir_scalar(w(4, 2)), rat(2, 1));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(q_count(2, 2), 2);
        assert_eq!(q_count(1, 0), 0);
        assert_eq!(weight_multiplicity(w(3, 3), w(5, 3)), 1);
        assert_eq!(weight_multiplicity(w(3, 1), w(4, 2)), 2);
        assert_eq!(weight_multiplicity_oracle(w(3, 1), w(4, 2)), 2);
        assert_eq!(ktype_multiplicity_n(w(4, 2), w(4, 4)), 1);
        assert_eq!(ktype_multiplicity_n(w(3, 3), w(2, 2)), 0);
        assert_eq!(highest_weight_vectors(w(4, 2), w(4, 4)).unwrap().len(), 1);
    }

    #[test]
    fn regions_and_series() {
        assert_eq!(region(w(0, 0)), RegionTag::A);
        assert_eq!(region(w(3, 1)), RegionTag::C);
        assert_eq!(region(w(1, -5)), RegionTag::IrreducibleWall);
        assert_eq!(socle(w(0, 0)), Some(w(2, 0)));
        assert_eq!(socle(w(2, 0)), Some(w(3, 1)));
        assert_eq!(socle(w(3, 1)), Some(w(3, 3)));
        assert_eq!(dot_action(&[2], w(0, 0)), w(2, 0));
        assert_eq!(dot_action(&[2, 1, 2], w(2, 0)), w(3, 1));
        assert_eq!(dot_action(&[1, 2, 1], w(3, 1)), w(3, 3));
        assert_eq!(ktype_multiplicity_l(w(2, 0), w(3, 1)), 0);
        assert_eq!(ktype_multiplicity_l(w(3, 3), w(5, 5)), 1);
    }

    #[test]
    fn lemma_p0m_u() {
        // P₀₋ U w₀ = −(ℓ−1) m (m−1) w₀.
        for (l, m) in [(2, 2), (3, 4), (1, 3)] {
            let n = VermaModule::new(w(l + m, l)).unwrap();
            let v = n.navigate(&"P0m,U".parse().unwrap());
            assert_eq!(v, n.w0().scale(&int(-(l - 1) * m * (m - 1))));
        }
    }

    #[test]
    fn contravariant_form_examples() {
        assert_eq!(petersson_constant(w(4, 4), &OperatorWord::identity()).unwrap(), rat(1, 1));
        assert_eq!(petersson_constant(w(4, 4), &"Xp".parse().unwrap()).unwrap(), rat(4, 1));
        assert_eq!(petersson_constant(w(3, 3), &"U".parse().unwrap()).unwrap(), rat(0, 1));
        assert!(petersson_constant(w(2, 0), &OperatorWord::identity()).is_err());
    }
}
