//! Exact differential calculus on nearly holomorphic expansions.
//!
//! Each mode is handled separately: none of the operators mixes Fourier
//! indices. Within a mode, functions are polynomials in `r₀, r₁, r₂` whose
//! terms also carry an explicit power of `t = 2π`, so that transcendental
//! factors are tracked symbolically. The eight operators are applied with
//! that bookkeeping and then renormalized by `t^{−Δp}`; every surviving term
//! must then have `t`-power zero, which is checked rather than assumed.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{FourierIndex, NHMonomial, NearHolForm};
use crate::error::{Error, Result};
use crate::scalar::{from_rat, i, int, mul, mul_int, rat, Gq};
use crate::word::{NavOp, OperatorWord};

/// `r^abc · t^s`.
pub type TKey = (NHMonomial, i32);

/// A polynomial in `r₀, r₁, r₂` and `t^{±1}` with ℚ(i) coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly {
    terms: BTreeMap<TKey, Gq>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(abc: NHMonomial, s: i32, c: Gq) -> Self {
        let mut p = Self::zero();
        p.add_term(abc, s, c);
        p
    }

    pub fn add_term(&mut self, abc: NHMonomial, s: i32, c: Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((abc, s)).or_insert_with(Gq::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(abc, s));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TKey, &Gq)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &TPoly, c: &Gq) {
        for ((k, s), x) in &other.terms {
            self.add_term(*k, *s, mul(x, c));
        }
    }

    pub fn plus(&self, other: &TPoly) -> TPoly {
        let mut p = self.clone();
        p.add_scaled(other, &Gq::one());
        p
    }

    pub fn scale(&self, c: &Gq) -> TPoly {
        let mut p = TPoly::zero();
        p.add_scaled(self, c);
        p
    }

    /// Multiplies by `c · r^e · t^s`.
    pub fn mul_monomial(&self, e: NHMonomial, s: i32, c: &Gq) -> TPoly {
        let mut p = TPoly::zero();
        for ((k, ks), x) in &self.terms {
            p.add_term([k[0] + e[0], k[1] + e[1], k[2] + e[2]], ks + s, mul(x, c));
        }
        p
    }

    pub fn shift_t(&self, s: i32) -> TPoly {
        self.mul_monomial([0, 0, 0], s, &Gq::one())
    }

    fn map_monomials(&self, f: impl Fn(NHMonomial) -> Vec<(NHMonomial, i32, i64)>) -> TPoly {
        let mut p = TPoly::zero();
        for ((k, s), x) in &self.terms {
            for (nk, ds, c) in f(*k) {
                if c != 0 {
                    p.add_term(nk, s + ds, mul_int(x, c));
                }
            }
        }
        p
    }

    /// `∂/∂y`, from `∂r₀ = −t r₁²`, `∂r₁ = −t r₁r₂`, `∂r₂ = −t r₂²`.
    pub fn d_y(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| {
            let mut out = vec![];
            if a > 0 {
                out.push(([a - 1, b + 2, g], 1, -i64::from(a)));
            }
            out.push(([a, b, g + 1], 1, -i64::from(b + g)));
            out
        })
    }

    /// `∂/∂v`, from `∂r₀ = 2t r₀r₁`, `∂r₁ = t(r₀r₂ + r₁²)`, `∂r₂ = 2t r₁r₂`.
    pub fn d_v(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| {
            let mut out = vec![([a, b + 1, g], 1, i64::from(2 * a + b + 2 * g))];
            if b > 0 {
                out.push(([a + 1, b - 1, g + 1], 1, i64::from(b)));
            }
            out
        })
    }

    /// `∂/∂y′`, from `∂r₀ = −t r₀²`, `∂r₁ = −t r₀r₁`, `∂r₂ = −t r₁²`.
    pub fn d_yp(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| {
            let mut out = vec![];
            if g > 0 {
                out.push(([a, b + 2, g - 1], 1, -i64::from(g)));
            }
            out.push(([a + 1, b, g], 1, -i64::from(a + b)));
            out
        })
    }

    /// `∂̄₀`: `[α,β,γ] ↦ α[α−1,β,γ]` on unnormalized monomials.
    pub fn dbar0(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| if a > 0 { vec![([a - 1, b, g], -1, i64::from(a))] } else { vec![] })
    }

    /// `∂̄₁`: `[α,β,γ] ↦ β[α,β−1,γ]`.
    pub fn dbar1(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| if b > 0 { vec![([a, b - 1, g], -1, i64::from(b))] } else { vec![] })
    }

    /// `∂̄₂`: `[α,β,γ] ↦ γ[α,β,γ−1]`.
    pub fn dbar2(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| if g > 0 { vec![([a, b, g - 1], -1, i64::from(g))] } else { vec![] })
    }

    /// `∂̄₃`: `[α,β,γ] ↦ (α+β+γ)[α,β,γ]`.
    pub fn dbar3(&self) -> TPoly {
        self.map_monomials(|k| vec![(k, 0, i64::from(k[0] + k[1] + k[2]))])
    }

    /// The scalar `D₋`: `[α,β,γ] ↦ β(β−1)[α,β−2,γ] − 4αγ[α−1,β,γ−1]`.
    pub fn d_minus(&self) -> TPoly {
        self.map_monomials(|[a, b, g]| {
            let mut out = vec![];
            if b >= 2 {
                out.push(([a, b - 2, g], -2, i64::from(b * (b - 1))));
            }
            if a > 0 && g > 0 {
                out.push(([a - 1, b, g - 1], -2, -4 * i64::from(a * g)));
            }
            out
        })
    }
}

/// The holomorphic and antiholomorphic Wirtinger derivatives in the three
/// coordinates `τ, z, τ′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wirtinger {
    Tau,
    Z,
    TauP,
    TauBar,
    ZBar,
    TauPBar,
}

/// Exact derivative of `e(Q)·g` divided by `e(Q)`, using
/// `∂_τ = ½(∂_x − i∂_y)` and `∂_τ e(Q) = 2πi a e(Q)`.
pub fn wirtinger(q: &FourierIndex, g: &TPoly, w: Wirtinger) -> TPoly {
    let minus_half_i = Gq::new(rat(0, 1), rat(-1, 2));
    let half_i = Gq::new(rat(0, 1), rat(1, 2));
    let hol = |coef: &num_rational::BigRational, d: TPoly| {
        let mut p = g.mul_monomial([0, 0, 0], 1, &(i() * from_rat(coef.clone())));
        p.add_scaled(&d, &minus_half_i);
        p
    };
    match w {
        Wirtinger::Tau => hol(&q.a, g.d_y()),
        Wirtinger::Z => hol(&q.b, g.d_v()),
        Wirtinger::TauP => hol(&q.c, g.d_yp()),
        Wirtinger::TauBar => g.d_y().scale(&half_i),
        Wirtinger::ZBar => g.d_v().scale(&half_i),
        Wirtinger::TauPBar => g.d_yp().scale(&half_i),
    }
}

/// Multiplication by the rational functions of `y, v, y′` that appear in the
/// operator formulas.
#[derive(Clone, Copy, Debug)]
enum Factor {
    /// `y/Δ`
    R0,
    /// `v/Δ`
    R1,
    /// `y′/Δ`
    R2,
    /// `y^a v^b y′^c / Δ²` with `a + b + c = 2`.
    Quad(NHMonomial),
}

fn times(f: Factor, p: &TPoly) -> TPoly {
    let one = Gq::one();
    match f {
        Factor::R0 => p.mul_monomial([1, 0, 0], 1, &one),
        Factor::R1 => p.mul_monomial([0, 1, 0], 1, &one),
        Factor::R2 => p.mul_monomial([0, 0, 1], 1, &one),
        Factor::Quad(e) => p.mul_monomial(e, 2, &one),
    }
}

/// One Fourier mode of a form, as `W_m`-components with `t` bookkeeping.
struct ModeData<'a> {
    q: &'a FourierIndex,
    comps: &'a [TPoly],
    zero: TPoly,
    /// First derivatives, shared between neighbouring components.
    cache: RefCell<HashMap<(i64, Wirtinger), TPoly>>,
}

impl ModeData<'_> {
    fn f(&self, j: i64) -> &TPoly {
        usize::try_from(j).ok().and_then(|j| self.comps.get(j)).unwrap_or(&self.zero)
    }

    fn d(&self, j: i64, w: Wirtinger) -> TPoly {
        if let Some(p) = self.cache.borrow().get(&(j, w)) {
            return p.clone();
        }
        let p = wirtinger(self.q, self.f(j), w);
        self.cache.borrow_mut().insert((j, w), p.clone());
        p
    }

    fn dd(&self, j: i64, w1: Wirtinger, w2: Wirtinger) -> TPoly {
        wirtinger(self.q, &self.d(j, w1), w2)
    }
}

fn c(n: i64) -> Gq {
    int(n)
}

/// The unnormalized operator on one mode; returns `m₁ + 1` components.
fn apply_mode(op: NavOp, l: i64, m: i64, q: &FourierIndex, comps: &[TPoly]) -> Vec<TPoly> {
    use Wirtinger::*;
    let md = ModeData { q, comps, zero: TPoly::zero(), cache: RefCell::default() };
    let (_, dm, _) = op.shift();
    let m1 = m + dm;
    let two_i = &c(2) * &i();
    let four_i = &c(4) * &i();
    (0..=m1)
        .map(|j| {
            let mut g = TPoly::zero();
            match op {
                NavOp::P0m => {
                    g.add_scaled(&md.f(j - 2).dbar2(), &c(-1));
                    g.add_scaled(&md.f(j - 1).dbar1(), &c(-1));
                    g.add_scaled(&md.f(j).dbar0(), &c(-1));
                }
                NavOp::L => {
                    g.add_scaled(&md.f(j).dbar2(), &c(-(m - j) * (m - j - 1)));
                    g.add_scaled(&md.f(j + 1).dbar1(), &c((m - j - 1) * (j + 1)));
                    g.add_scaled(&md.f(j + 2).dbar0(), &c(-(j + 2) * (j + 1)));
                }
                NavOp::U => {
                    let a = times(Factor::R0, md.f(j)).scale(&c(l - 1)).plus(&md.d(j, TauP).scale(&two_i));
                    let b = times(Factor::R1, md.f(j + 1))
                        .scale(&c(2 * (l - 1)))
                        .plus(&md.d(j + 1, Z).scale(&-two_i.clone()));
                    let d = times(Factor::R2, md.f(j + 2)).scale(&c(l - 1)).plus(&md.d(j + 2, Tau).scale(&two_i));
                    g.add_scaled(&a, &c((m - j) * (m - j - 1)));
                    g.add_scaled(&b, &c((m - j - 1) * (j + 1)));
                    g.add_scaled(&d, &c((j + 2) * (j + 1)));
                }
                NavOp::Xp => {
                    let w = l + m;
                    let a = times(Factor::R0, md.f(j - 2)).scale(&c(w)).plus(&md.d(j - 2, TauP).scale(&two_i));
                    let b = times(Factor::R1, md.f(j - 1))
                        .scale(&c(2 * w))
                        .plus(&md.d(j - 1, Z).scale(&-two_i.clone()));
                    let d = times(Factor::R2, md.f(j)).scale(&c(w)).plus(&md.d(j, Tau).scale(&two_i));
                    g.add_scaled(&a, &Gq::one());
                    g.add_scaled(&b, &c(-1));
                    g.add_scaled(&d, &Gq::one());
                }
                NavOp::Ep => {
                    let w = 2 * l + m - 2;
                    let a = times(Factor::R0, md.f(j - 1)).scale(&c(w)).plus(&md.d(j - 1, TauP).scale(&four_i));
                    let b = times(Factor::R1, md.f(j)).scale(&c(-w)).plus(&md.d(j, Z).scale(&two_i));
                    let d = times(Factor::R2, md.f(j + 1)).scale(&c(w)).plus(&md.d(j + 1, Tau).scale(&four_i));
                    g.add_scaled(&a, &c(m - j + 1));
                    g.add_scaled(&b, &c(m - 2 * j));
                    g.add_scaled(&d, &c(-(j + 1)));
                }
                NavOp::Em => {
                    g.add_scaled(&md.f(j - 1).dbar2(), &c(2 * (m + 1 - j)));
                    g.add_scaled(&md.f(j).dbar1(), &c(m - 2 * j));
                    g.add_scaled(&md.f(j + 1).dbar0(), &c(-2 * (j + 1)));
                }
                NavOp::Dp => g = d_plus_component(&md, l, m, j),
                NavOp::Dm => g = md.f(j).d_minus(),
            }
            g
        })
        .collect()
}

fn d_plus_component(md: &ModeData<'_>, l: i64, m: i64, j: i64) -> TPoly {
    use Wirtinger::*;
    let four_i = &c(4) * &i();
    let mut g = TPoly::zero();

    // F_{j−2}
    g.add_scaled(&times(Factor::Quad([2, 0, 0]), md.f(j - 2)), &c((m - j + 1) * (m - j + 2)));

    // F_{j−1}
    let mut t = times(Factor::R0, &md.d(j - 1, Z));
    t.add_scaled(&times(Factor::R1, &md.d(j - 1, TauP)), &c(2));
    g.add_scaled(&t, &(&four_i * &c(m - j + 1)));
    g.add_scaled(&times(Factor::Quad([1, 1, 0]), md.f(j - 1)), &c(-2 * (m - 2 * j + 1) * (m - j + 1)));

    // F_j
    let fj = md.f(j);
    let cv = 4 * j * j + 4 * l * l - 4 * j * m + m * (m - 3) + l * (4 * m - 2);
    let cyy = 2 * (j * j - j * m - (2 * l - 1) * (l + m));
    g.add_scaled(&times(Factor::Quad([0, 2, 0]), fj), &c(cv));
    g.add_scaled(&times(Factor::Quad([1, 0, 1]), fj), &c(cyy));
    g.add_scaled(&md.dd(j, Tau, TauP), &c(16));
    g.add_scaled(&md.dd(j, Z, Z), &c(-4));
    let mut t = times(Factor::R0, &md.d(j, Tau)).scale(&c(2 * j + 2 * l - 1));
    t.add_scaled(&times(Factor::R1, &md.d(j, Z)), &c(m + 2 * l - 1));
    t.add_scaled(&times(Factor::R2, &md.d(j, TauP)), &c(2 * m - 2 * j + 2 * l - 1));
    g.add_scaled(&t, &-four_i.clone());

    // F_{j+1}
    let mut t = times(Factor::R1, &md.d(j + 1, Tau)).scale(&c(2));
    t.add_scaled(&times(Factor::R2, &md.d(j + 1, Z)), &Gq::one());
    g.add_scaled(&t, &(&four_i * &c(j + 1)));
    g.add_scaled(&times(Factor::Quad([0, 1, 1]), md.f(j + 1)), &c(2 * (m - 2 * j - 1) * (j + 1)));

    // F_{j+2}
    g.add_scaled(&times(Factor::Quad([0, 0, 2]), md.f(j + 2)), &c((j + 1) * (j + 2)));
    g
}

/// A form with `t` bookkeeping, used for intermediate results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TForm {
    pub ell: i64,
    pub m: i64,
    pub level: u64,
    pub modes: BTreeMap<FourierIndex, Vec<TPoly>>,
}

impl TForm {
    pub fn from_form(f: &NearHolForm) -> Self {
        let modes = f
            .modes()
            .iter()
            .map(|(q, terms)| {
                let mut comps = vec![TPoly::zero(); f.width()];
                for (abc, w) in terms {
                    for (p, x) in comps.iter_mut().zip(w) {
                        p.add_term(*abc, 0, x.clone());
                    }
                }
                (q.clone(), comps)
            })
            .collect();
        TForm { ell: f.ell, m: f.m, level: f.level, modes }
    }

    /// Converts back, requiring every term to have `t`-power zero.
    pub fn into_form(self) -> Result<NearHolForm> {
        let mut out = NearHolForm::zero(self.ell, self.m, self.level);
        let width = out.width();
        for (q, comps) in self.modes {
            let mut collected: BTreeMap<NHMonomial, Vec<Gq>> = BTreeMap::new();
            for (j, p) in comps.iter().enumerate() {
                for ((abc, s), x) in p.terms() {
                    if *s != 0 {
                        return Err(Error::Consistency(format!(
                            "term r^{abc:?} in mode {q} carries (2π)^{s} after normalization"
                        )));
                    }
                    collected.entry(*abc).or_insert_with(|| vec![Gq::zero(); width])[j] = x.clone();
                }
            }
            for (abc, w) in collected {
                out.add_term(q.clone(), abc, w)?;
            }
        }
        Ok(out)
    }

    /// Applies `w` componentwise to each mode.
    pub fn map_components(&self, f: impl Fn(&FourierIndex, &TPoly) -> TPoly) -> TForm {
        let modes = self
            .modes
            .iter()
            .map(|(q, comps)| (q.clone(), comps.iter().map(|p| f(q, p)).collect()))
            .collect();
        TForm { modes, ..self.clone() }
    }

    /// The operator without `(2π)` renormalization.
    pub fn apply_raw(&self, op: NavOp) -> TForm {
        let (dl, dm, _) = op.shift();
        let (ell, m) = (self.ell + dl, self.m + dm);
        let vanishes = self.m < 0 || (op.needs_m_ge_2() && self.m < 2);
        let modes = if vanishes {
            BTreeMap::new()
        } else {
            self.modes
                .iter()
                .map(|(q, comps)| (q.clone(), apply_mode(op, self.ell, self.m, q, comps)))
                .filter(|(_, comps)| comps.iter().any(|p| !p.is_zero()))
                .collect()
        };
        TForm { ell, m, level: self.level, modes }
    }
}

/// `(2π)^{−Δp} X F`, where `Δp` is the operator's degree shift; the result is
/// again expressed in the normalized monomials with ℚ(i) coefficients.
pub fn apply_operator(op: NavOp, f: &NearHolForm) -> Result<NearHolForm> {
    let (_, _, dp) = op.shift();
    let raw = TForm::from_form(f).apply_raw(op);
    let s = -(dp as i32);
    raw.map_components(|_, p| p.shift_t(s)).into_form()
}

/// Applies the word right to left.
pub fn apply_word(word: &OperatorWord, f: &NearHolForm) -> Result<NearHolForm> {
    word.application_order().try_fold(f.clone(), |acc, op| apply_operator(op, &acc))
}

#[derive(Clone, Debug, Serialize)]
pub struct HolomorphyWitness {
    pub operator: String,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolomorphyReport {
    pub holomorphic: bool,
    pub operator_verdict: bool,
    pub degree_verdict: bool,
    pub degree: u32,
    pub witnesses: Vec<HolomorphyWitness>,
}

impl HolomorphyReport {
    pub fn consistent(&self) -> bool {
        self.operator_verdict == self.degree_verdict
    }
}

/// The lowering operators whose joint kernel is exactly the holomorphic forms.
pub fn holomorphy_operators(m: i64) -> &'static [NavOp] {
    match m {
        0 => &[NavOp::P0m],
        1 => &[NavOp::P0m, NavOp::Em],
        _ => &[NavOp::P0m, NavOp::Em, NavOp::L],
    }
}

pub fn holomorphy_test(f: &NearHolForm) -> Result<HolomorphyReport> {
    let ops: &[NavOp] = if f.m < 0 { &[] } else { holomorphy_operators(f.m) };
    let mut witnesses = Vec::new();
    for &op in ops {
        witnesses.push(HolomorphyWitness { operator: op.token().into(), vanishes: apply_operator(op, f)?.is_zero() });
    }
    let operator_verdict = witnesses.iter().all(|w| w.vanishes);
    let degree_verdict = f.degree() == 0;
    Ok(HolomorphyReport {
        holomorphic: operator_verdict && degree_verdict,
        operator_verdict,
        degree_verdict,
        degree: f.degree(),
        witnesses,
    })
}

/// Membership in `M*_{3,m}`: degree at most one and `LF = E₋F = 0`.
pub fn mstar_test(f: &NearHolForm) -> Result<bool> {
    if f.ell != 3 {
        return Err(Error::Invalid(format!("M* membership is defined for ℓ = 3, got ℓ = {}", f.ell)));
    }
    Ok(f.degree() <= 1 && apply_operator(NavOp::L, f)?.is_zero() && apply_operator(NavOp::Em, f)?.is_zero())
}

/// Field automorphisms of ℚ(i) acting on coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Automorphism {
    Identity,
    Conjugation,
}

pub fn sigma_act(f: &NearHolForm, sigma: Automorphism) -> NearHolForm {
    let mut out = NearHolForm::zero(f.ell, f.m, f.level);
    for (q, terms) in f.modes() {
        for (abc, w) in terms {
            let w = match sigma {
                Automorphism::Identity => w.clone(),
                Automorphism::Conjugation => w.iter().map(|x| x.conj()).collect(),
            };
            // Weight and level are unchanged.
            let _ = out.add_term(q.clone(), *abc, w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(ell: i64, m: i64, q: FourierIndex, abc: NHMonomial, w: Vec<Gq>) -> NearHolForm {
        let mut f = NearHolForm::zero(ell, m, 1);
        f.add_term(q, abc, w).unwrap();
        f
    }

    #[test]
    fn x_plus_on_constant_mode() {
        let (l, a, b, cc) = (5, 1, 3, 2);
        let f = single(l, 0, FourierIndex::from_ints(a, b, cc), [0, 0, 0], vec![int(1)]);
        let g = apply_operator(NavOp::Xp, &f).unwrap();
        assert_eq!((g.ell, g.m), (l, 2));
        let t = &g.modes()[&FourierIndex::from_ints(a, b, cc)];
        assert_eq!(t[&[0, 0, 0]], vec![int(-2 * a), int(-2 * b), int(-2 * cc)]);
        assert_eq!(t[&[0, 0, 1]], vec![int(l), int(0), int(0)]);
        assert_eq!(t[&[0, 1, 0]], vec![int(0), int(-2 * l), int(0)]);
        assert_eq!(t[&[1, 0, 0]], vec![int(0), int(0), int(l)]);
    }

    #[test]
    fn lowering_kills_holomorphic() {
        let f = single(4, 2, FourierIndex::from_ints(1, 1, 1), [0, 0, 0], vec![int(1), int(2), int(3)]);
        for op in [NavOp::P0m, NavOp::L, NavOp::Em, NavOp::Dm] {
            assert!(apply_operator(op, &f).unwrap().is_zero(), "{op}");
        }
        let r = holomorphy_test(&f).unwrap();
        assert!(r.holomorphic && r.consistent());
    }

    #[test]
    fn r2_term_detected() {
        let f = single(4, 0, FourierIndex::from_ints(1, 0, 1), [0, 0, 1], vec![int(1)]);
        let r = holomorphy_test(&f).unwrap();
        assert!(!r.operator_verdict && !r.degree_verdict);
        let g = apply_operator(NavOp::P0m, &f).unwrap();
        assert_eq!((g.ell, g.m), (2, 2));
    }

    #[test]
    fn u_vanishes_below_two() {
        let f = single(4, 1, FourierIndex::from_ints(1, 0, 1), [0, 0, 0], vec![int(1), int(1)]);
        let g = apply_operator(NavOp::U, &f).unwrap();
        assert!(g.is_zero());
        assert_eq!((g.ell, g.m), (6, -1));
    }

    #[test]
    fn monomial_rules() {
        let p = TPoly::term([2, 3, 1], 0, int(1));
        assert_eq!(p.dbar0(), TPoly::term([1, 3, 1], -1, int(2)));
        assert_eq!(p.dbar3(), TPoly::term([2, 3, 1], 0, int(6)));
        let mut dm = TPoly::term([2, 1, 1], -2, int(6));
        dm.add_term([1, 3, 0], -2, int(-8));
        assert_eq!(p.d_minus(), dm);
    }

    #[test]
    fn mstar_requires_ell_three() {
        let f = single(4, 0, FourierIndex::from_ints(1, 0, 1), [0, 0, 0], vec![int(1)]);
        assert!(mstar_test(&f).is_err());
        let f = single(3, 0, FourierIndex::from_ints(1, 0, 1), [0, 0, 0], vec![int(1)]);
        assert!(mstar_test(&f).unwrap());
    }

    #[test]
    fn conjugation_involutive() {
        let f = single(3, 1, FourierIndex::from_ints(1, 0, 1), [1, 0, 0], vec![i(), int(2)]);
        let g = sigma_act(&f, Automorphism::Conjugation);
        assert_ne!(f, g);
        assert_eq!(sigma_act(&g, Automorphism::Conjugation), f);
    }
}
