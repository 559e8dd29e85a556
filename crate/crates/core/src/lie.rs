//! `sp₄(ℂ)` in the fixed ten-element basis, and its enveloping algebra in PBW form.
//!
//! Structure constants are never typed in: they are recovered once, by exact
//! linear solves, from the defining 4×4 matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::linalg::solve_columns;
use crate::scalar::{display, i, int, rat, Gq};
use crate::word::NavOp;

/// A basis element of `sp₄(ℂ)`. Declaration order is the PBW order:
/// `p₊` first, then the Cartan part, the rest of `k_ℂ`, and `p₋` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    Xp,
    P1p,
    P0p,
    Z,
    Zp,
    Np,
    Nm,
    Xm,
    P1m,
    P0m,
}

use BasisSymbol as S;

pub type Mat4 = [[Gq; 4]; 4];

/// An integral weight `(λ(Z), λ(Z′)) = (k, ℓ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Weight {
    pub k: i64,
    pub l: i64,
}

impl Weight {
    pub const fn new(k: i64, l: i64) -> Self {
        Weight { k, l }
    }

    /// `k ≥ ℓ`: the weight is the highest weight of a `K`-type.
    pub fn is_dominant_for_k(self) -> bool {
        self.k >= self.l
    }

    pub fn shift(self, dk: i64, dl: i64) -> Self {
        Weight::new(self.k + dk, self.l + dl)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

impl std::str::FromStr for Weight {
    type Err = crate::error::Error;

    /// Parses `k,l`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::Parse(format!("expected a pair \"a,b\", got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(Weight::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

impl BasisSymbol {
    pub const ALL: [BasisSymbol; 10] = [
        S::Xp,
        S::P1p,
        S::P0p,
        S::Z,
        S::Zp,
        S::Np,
        S::Nm,
        S::Xm,
        S::P1m,
        S::P0m,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            S::Xp => "X+",
            S::P1p => "P1+",
            S::P0p => "P0+",
            S::Z => "Z",
            S::Zp => "Z'",
            S::Np => "N+",
            S::Nm => "N-",
            S::Xm => "X-",
            S::P1m => "P1-",
            S::P0m => "P0-",
        }
    }

    /// CLI token: `Xp`, `P1m`, `Zp`, …
    pub fn token(self) -> &'static str {
        match self {
            S::Xp => "Xp",
            S::P1p => "P1p",
            S::P0p => "P0p",
            S::Z => "Z",
            S::Zp => "Zp",
            S::Np => "Np",
            S::Nm => "Nm",
            S::Xm => "Xm",
            S::P1m => "P1m",
            S::P0m => "P0m",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|x| x.token() == s)
    }

    /// Eigenvalues under `(ad Z, ad Z′)`.
    pub fn root(self) -> (i64, i64) {
        match self {
            S::Xp => (2, 0),
            S::Xm => (-2, 0),
            S::P0p => (0, 2),
            S::P0m => (0, -2),
            S::P1p => (1, 1),
            S::P1m => (-1, -1),
            S::Np => (1, -1),
            S::Nm => (-1, 1),
            S::Z | S::Zp => (0, 0),
        }
    }

    pub fn is_p_plus(self) -> bool {
        matches!(self, S::Xp | S::P1p | S::P0p)
    }

    pub fn is_p_minus(self) -> bool {
        matches!(self, S::Xm | S::P1m | S::P0m)
    }

    pub fn is_root_vector(self) -> bool {
        !matches!(self, S::Z | S::Zp)
    }

    /// The defining matrix, entries in ℚ(i).
    pub fn matrix(self) -> Mat4 {
        let half = || Gq::new(rat(1, 2), rat(0, 1));
        let neg_i = || -i();
        // Entries as (re, im) integer pairs, then scaled.
        let (e, scale): ([[(i64, i64); 4]; 4], Gq) = match self {
            S::Z => (
                [
                    [(0, 0), (0, 0), (1, 0), (0, 0)],
                    [(0, 0); 4],
                    [(-1, 0), (0, 0), (0, 0), (0, 0)],
                    [(0, 0); 4],
                ],
                neg_i(),
            ),
            S::Zp => (
                [
                    [(0, 0); 4],
                    [(0, 0), (0, 0), (0, 0), (1, 0)],
                    [(0, 0); 4],
                    [(0, 0), (-1, 0), (0, 0), (0, 0)],
                ],
                neg_i(),
            ),
            S::Np => (
                [
                    [(0, 0), (1, 0), (0, 0), (0, -1)],
                    [(-1, 0), (0, 0), (0, -1), (0, 0)],
                    [(0, 0), (0, 1), (0, 0), (1, 0)],
                    [(0, 1), (0, 0), (-1, 0), (0, 0)],
                ],
                half(),
            ),
            S::Nm => (
                [
                    [(0, 0), (1, 0), (0, 0), (0, 1)],
                    [(-1, 0), (0, 0), (0, 1), (0, 0)],
                    [(0, 0), (0, -1), (0, 0), (1, 0)],
                    [(0, -1), (0, 0), (-1, 0), (0, 0)],
                ],
                half(),
            ),
            S::Xp => (
                [
                    [(1, 0), (0, 0), (0, 1), (0, 0)],
                    [(0, 0); 4],
                    [(0, 1), (0, 0), (-1, 0), (0, 0)],
                    [(0, 0); 4],
                ],
                half(),
            ),
            S::Xm => (
                [
                    [(1, 0), (0, 0), (0, -1), (0, 0)],
                    [(0, 0); 4],
                    [(0, -1), (0, 0), (-1, 0), (0, 0)],
                    [(0, 0); 4],
                ],
                half(),
            ),
            S::P1p => (
                [
                    [(0, 0), (1, 0), (0, 0), (0, 1)],
                    [(1, 0), (0, 0), (0, 1), (0, 0)],
                    [(0, 0), (0, 1), (0, 0), (-1, 0)],
                    [(0, 1), (0, 0), (-1, 0), (0, 0)],
                ],
                half(),
            ),
            S::P1m => (
                [
                    [(0, 0), (1, 0), (0, 0), (0, -1)],
                    [(1, 0), (0, 0), (0, -1), (0, 0)],
                    [(0, 0), (0, -1), (0, 0), (-1, 0)],
                    [(0, -1), (0, 0), (-1, 0), (0, 0)],
                ],
                half(),
            ),
            S::P0p => (
                [
                    [(0, 0); 4],
                    [(0, 0), (1, 0), (0, 0), (0, 1)],
                    [(0, 0); 4],
                    [(0, 0), (0, 1), (0, 0), (-1, 0)],
                ],
                half(),
            ),
            S::P0m => (
                [
                    [(0, 0); 4],
                    [(0, 0), (1, 0), (0, 0), (0, -1)],
                    [(0, 0); 4],
                    [(0, 0), (0, -1), (0, 0), (-1, 0)],
                ],
                half(),
            ),
        };
        std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let (re, im) = e[r][c];
                &Gq::new(rat(re, 1), rat(im, 1)) * &scale
            })
        })
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| &a[r][k] * &b[k][c]).sum()))
}

pub fn mat_sub(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r][c] - &b[r][c]))
}

pub fn commutator(a: &Mat4, b: &Mat4) -> Mat4 {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

/// `J₂ = [[0, I₂], [−I₂, 0]]`.
pub fn j2() -> Mat4 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| match (r, c) {
            (0, 2) | (1, 3) => int(1),
            (2, 0) | (3, 1) => int(-1),
            _ => Gq::zero(),
        })
    })
}

/// Exact check of `ᵗM J₂ + J₂ M = 0`.
pub fn is_symplectic_algebra(m: &Mat4) -> bool {
    let j = j2();
    let mt: Mat4 = std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone()));
    let a = mat_mul(&mt, &j);
    let b = mat_mul(&j, m);
    (0..4).all(|r| (0..4).all(|c| (&a[r][c] + &b[r][c]).is_zero()))
}

/// Coordinates of a matrix in the ten-element basis, or `None` outside the span.
pub fn coordinates(m: &Mat4) -> Option<[Gq; 10]> {
    let flatten = |a: &Mat4| -> Vec<Gq> { a.iter().flatten().cloned().collect() };
    let cols: Vec<Vec<Gq>> = BasisSymbol::ALL.iter().map(|s| flatten(&s.matrix())).collect();
    let x = solve_columns(&cols, &flatten(m))?;
    Some(std::array::from_fn(|k| x[k].clone()))
}

/// A linear combination of basis symbols.
pub type LinearCombination = Vec<(BasisSymbol, Gq)>;

struct Tables {
    bracket: Vec<Vec<LinearCombination>>,
    adjoint: Vec<LinearCombination>,
}

fn sparse(c: [Gq; 10]) -> LinearCombination {
    BasisSymbol::ALL
        .iter()
        .zip(c)
        .filter(|(_, x)| !x.is_zero())
        .map(|(&s, x)| (s, x))
        .collect()
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mats: Vec<Mat4> = BasisSymbol::ALL.iter().map(|s| s.matrix()).collect();
        let bracket = (0..10)
            .map(|a| {
                (0..10)
                    .map(|b| {
                        let c = commutator(&mats[a], &mats[b]);
                        // The span is closed under brackets; failure here is a defect in the matrices.
                        sparse(coordinates(&c).expect("bracket left the span of the basis"))
                    })
                    .collect()
            })
            .collect();
        // Unitary adjoint: Y* = −Ȳ, complex conjugation taken relative to sp₄(ℝ).
        let adjoint = mats
            .iter()
            .map(|m| {
                let c: Mat4 = std::array::from_fn(|r| std::array::from_fn(|k| -m[r][k].conj()));
                sparse(coordinates(&c).expect("conjugate left the span of the basis"))
            })
            .collect();
        Tables { bracket, adjoint }
    })
}

/// `[x, y]` expanded in the basis (cached).
pub fn bracket_coeffs(x: BasisSymbol, y: BasisSymbol) -> &'static LinearCombination {
    &tables().bracket[x.index()][y.index()]
}

/// `[x, y]` as an enveloping-algebra element of degree ≤ 1.
pub fn bracket(x: BasisSymbol, y: BasisSymbol) -> LieElement {
    LieElement::from_linear(bracket_coeffs(x, y))
}

/// `Y*` for the anti-linear anti-involution `Y ↦ −Ȳ`, which makes the
/// contravariant form positive on unitarizable modules.
pub fn adjoint(x: BasisSymbol) -> &'static LinearCombination {
    &tables().adjoint[x.index()]
}

/// Exponent vector over the ten symbols in PBW order.
pub type PbwMonomial = [u8; 10];

pub fn monomial_word(m: &PbwMonomial) -> Vec<BasisSymbol> {
    BasisSymbol::ALL
        .iter()
        .zip(m)
        .flat_map(|(&s, &e)| std::iter::repeat_n(s, e as usize))
        .collect()
}

pub fn monomial_weight(m: &PbwMonomial) -> (i64, i64) {
    BasisSymbol::ALL.iter().zip(m).fold((0, 0), |(a, b), (s, &e)| {
        let (x, y) = s.root();
        (a + x * e as i64, b + y * e as i64)
    })
}

/// Element of `U(sp₄(ℂ))` in PBW normal form; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<PbwMonomial, Gq>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Gq::one())
    }

    pub fn scalar(c: Gq) -> Self {
        let mut e = Self::zero();
        e.add_term([0; 10], c);
        e
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        let mut m = [0; 10];
        m[s.index()] = 1;
        let mut e = Self::zero();
        e.add_term(m, Gq::one());
        e
    }

    pub fn from_linear(lc: &LinearCombination) -> Self {
        let mut e = Self::zero();
        for (s, c) in lc {
            let mut m = [0; 10];
            m[s.index()] = 1;
            e.add_term(m, c.clone());
        }
        e
    }

    /// Product of symbols, normal ordered.
    pub fn word(w: &[BasisSymbol]) -> Self {
        pbw_normal_form(w)
    }

    fn add_term(&mut self, m: PbwMonomial, c: Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Gq::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Gq)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn coeff_of_word(&self, w: &[BasisSymbol]) -> Gq {
        let mut m = [0u8; 10];
        for s in w {
            m[s.index()] += 1;
        }
        self.coeff(&m)
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

    pub fn scale(&self, c: &Gq) -> Self {
        let mut e = Self::zero();
        for (m, x) in &self.terms {
            e.add_term(*m, x * c);
        }
        e
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut e = self.clone();
        for (m, c) in &rhs.terms {
            e.add_term(*m, c.clone());
        }
        e
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&int(-1))
    }
}

impl Mul for &LieElement {
    type Output = LieElement;
    fn mul(self, rhs: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut w = monomial_word(ma);
                w.extend(monomial_word(mb));
                let c = ca * cb;
                for (m, x) in pbw_normal_form(&w).terms {
                    out.add_term(m, &x * &c);
                }
            }
        }
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let w = monomial_word(m);
                let body = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|s| s.name()).collect::<Vec<_>>().join("·")
                };
                format!("({})·{}", display(c), body)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Rewrites a word into PBW order by repeatedly replacing an adjacent
/// inversion `ab` (`a > b`) with `ba + [a, b]`. Normal forms are unique, so the
/// rewrite strategy does not affect the result.
pub fn pbw_normal_form(word: &[BasisSymbol]) -> LieElement {
    let mut out = LieElement::zero();
    let mut stack: Vec<(Vec<BasisSymbol>, Gq)> = vec![(word.to_vec(), Gq::one())];
    while let Some((w, c)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
            None => {
                let mut m = [0u8; 10];
                for s in &w {
                    m[s.index()] += 1;
                }
                out.add_term(m, c);
            }
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                for (s, x) in bracket_coeffs(w[k], w[k + 1]) {
                    let mut nw = Vec::with_capacity(w.len() - 1);
                    nw.extend_from_slice(&w[..k]);
                    nw.push(*s);
                    nw.extend_from_slice(&w[k + 2..]);
                    stack.push((nw, x * &c));
                }
                stack.push((swapped, c));
            }
        }
    }
    out
}

fn sym(s: BasisSymbol) -> LieElement {
    LieElement::symbol(s)
}

fn w2(a: BasisSymbol, b: BasisSymbol) -> LieElement {
    pbw_normal_form(&[a, b])
}

/// The Casimir element in its symmetric form.
pub fn casimir() -> LieElement {
    let h = Gq::new(rat(1, 2), rat(0, 1));
    let terms = [
        w2(S::Z, S::Z).scale(&h),
        w2(S::Zp, S::Zp).scale(&h),
        (&w2(S::Np, S::Nm) + &w2(S::Nm, S::Np)).scale(&-h.clone()),
        w2(S::Xp, S::Xm),
        w2(S::Xm, S::Xp),
        (&w2(S::P1p, S::P1m) + &w2(S::P1m, S::P1p)).scale(&h),
        w2(S::P0p, S::P0m),
        w2(S::P0m, S::P0p),
    ];
    terms.iter().fold(LieElement::zero(), |acc, t| &acc + t)
}

/// The same Casimir element, written with lowering operators on the right.
pub fn casimir_alternative() -> LieElement {
    let h = Gq::new(rat(1, 2), rat(0, 1));
    let terms = [
        w2(S::Z, S::Z).scale(&h),
        w2(S::Zp, S::Zp).scale(&h),
        sym(S::Z).scale(&int(-1)),
        sym(S::Zp).scale(&int(-2)),
        w2(S::Nm, S::Np).scale(&int(-1)),
        w2(S::Xp, S::Xm).scale(&int(2)),
        w2(S::P1p, S::P1m),
        w2(S::P0p, S::P0m).scale(&int(2)),
    ];
    terms.iter().fold(LieElement::zero(), |acc, t| &acc + t)
}

/// The navigation operator as an element of `U(g_ℂ)`, for a vector of weight
/// `(ℓ+m, ℓ)`. `U` and `L` are zero when `m < 2`.
pub fn nav_operator(op: NavOp, m: i64) -> LieElement {
    let c = |n: i64| int(n);
    match op {
        NavOp::P0m => sym(S::P0m),
        NavOp::Xp => sym(S::Xp),
        NavOp::L if m >= 2 => {
            let a = sym(S::Xm).scale(&c(m * (m - 1)));
            let b = w2(S::P1m, S::Nm).scale(&c(-(m - 1)));
            let d = pbw_normal_form(&[S::P0m, S::Nm, S::Nm]);
            &(&a + &b) + &d
        }
        NavOp::U if m >= 2 => {
            let a = sym(S::P0p).scale(&c(m * (m - 1)));
            let b = w2(S::P1p, S::Nm).scale(&c(m - 1));
            let d = pbw_normal_form(&[S::Xp, S::Nm, S::Nm]);
            &(&a + &b) + &d
        }
        NavOp::L | NavOp::U => LieElement::zero(),
        NavOp::Ep => &sym(S::P1p).scale(&c(m + 2)) + &w2(S::Nm, S::Xp).scale(&c(2)),
        NavOp::Em => &sym(S::P1m).scale(&c(m + 2)) - &w2(S::Nm, S::P0m).scale(&c(2)),
        NavOp::Dp => &w2(S::P1p, S::P1p) - &w2(S::Xp, S::P0p).scale(&c(4)),
        NavOp::Dm => &w2(S::P1m, S::P1m) - &w2(S::Xm, S::P0m).scale(&c(4)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_in_sp4() {
        for s in BasisSymbol::ALL {
            assert!(is_symplectic_algebra(&s.matrix()), "{s}");
        }
    }

    #[test]
    fn cartan_abelian_and_roots() {
        assert!(bracket(S::Z, S::Zp).is_zero());
        assert_eq!(bracket(S::Z, S::Xp), sym(S::Xp).scale(&int(2)));
        for s in BasisSymbol::ALL {
            let (a, b) = s.root();
            assert_eq!(bracket(S::Z, s), sym(s).scale(&int(a)), "{s}");
            assert_eq!(bracket(S::Zp, s), sym(s).scale(&int(b)), "{s}");
        }
    }

    #[test]
    fn compact_bracket() {
        // [N₊, N₋] = Z′ − Z, matching N₊ ↦ E₁₂, N₋ ↦ −E₂₁ in gl₂.
        assert_eq!(bracket(S::Np, S::Nm), &sym(S::Zp) - &sym(S::Z));
        assert_eq!(bracket(S::Xp, S::Xm), sym(S::Z));
    }

    #[test]
    fn ordered_words_untouched() {
        let e = pbw_normal_form(&[S::Xp, S::P1p]);
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff_of_word(&[S::Xp, S::P1p]), int(1));
    }

    #[test]
    fn reorder_n_minus_past_x_plus() {
        let e = pbw_normal_form(&[S::Nm, S::Xp]);
        let expected = &sym(S::Xp) * &sym(S::Nm);
        let correction = bracket(S::Nm, S::Xp);
        assert_eq!(e, &expected + &correction);
        assert_eq!(correction, sym(S::P1p).scale(&int(-1)));
    }

    #[test]
    fn casimir_forms_agree_and_central() {
        let c = casimir();
        assert_eq!(c, casimir_alternative());
        assert_eq!(c.coeff_of_word(&[S::Z, S::Z]), Gq::new(rat(1, 2), rat(0, 1)));
        for s in BasisSymbol::ALL {
            let x = sym(s);
            assert_eq!(&x * &c, &c * &x, "{s}");
        }
    }

    #[test]
    fn adjoint_pairs() {
        assert_eq!(adjoint(S::Xp), &vec![(S::Xm, int(-1))]);
        assert_eq!(adjoint(S::Np), &vec![(S::Nm, int(-1))]);
        assert_eq!(adjoint(S::Z), &vec![(S::Z, int(1))]);
    }

    #[test]
    fn nav_table_examples() {
        assert_eq!(nav_operator(NavOp::Dp, 7), nav_operator(NavOp::Dp, 0));
        assert!(nav_operator(NavOp::U, 1).is_zero());
        let ep = nav_operator(NavOp::Ep, 3);
        let lit = &sym(S::P1p).scale(&int(5)) + &(&sym(S::Nm) * &sym(S::Xp)).scale(&int(2));
        assert_eq!(ep, lit);
    }
}
