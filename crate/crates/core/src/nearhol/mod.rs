//! Nearly holomorphic `W_m`-valued Fourier expansions on the Siegel upper half
//! space of degree two, and the eight classical differential operators.
//!
//! A form is a finite sum over Fourier indices `Q = [[a, b/2], [b/2, c]]` of
//! `e^{2πi(aτ + bz + cτ′)}` times a `W_m`-valued polynomial in the normalized
//! variables `r₀ = y/(2πΔ)`, `r₁ = v/(2πΔ)`, `r₂ = y′/(2πΔ)`, `Δ = yy′ − v²`.
//! `W_m` is realised as homogeneous polynomials `Σ c_j S^{m−j} T^j`.

pub mod calculus;
pub mod json;
pub mod numeric;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Gq};

pub use calculus::{
    apply_operator, apply_word, holomorphy_test, mstar_test, sigma_act, Automorphism, HolomorphyReport,
};
pub use numeric::{eta_apply, eta_lie, evaluate, numcheck_rootvectors, NumcheckReport, SiegelPoint};

/// `Σ c_j S^{m−j} T^j`; the length is `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmVector<T> {
    pub coeffs: Vec<T>,
}

impl<T> WmVector<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        WmVector { coeffs }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Exponents `(α, β, γ)` of `r₀^α r₁^β r₂^γ`.
pub type NHMonomial = [u32; 3];

/// `Q = [[a, b/2], [b/2, c]]`, so that `Tr(QZ) = aτ + bz + cτ′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourierIndex {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl FourierIndex {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        FourierIndex { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        FourierIndex::new(r(a), r(b), r(c))
    }

    /// True when `N·a`, `N·b`, `N·c` are all integers.
    pub fn fits_level(&self, level: u64) -> bool {
        let n = BigInt::from(level);
        [&self.a, &self.b, &self.c].iter().all(|x| (*x * &n).is_integer())
    }

    /// `Q ≥ 0`: `a ≥ 0`, `c ≥ 0` and `4ac − b² ≥ 0`.
    pub fn is_semidefinite(&self) -> bool {
        let four = BigRational::from_integer(BigInt::from(4));
        !self.a.is_negative() && !self.c.is_negative() && !(four * &self.a * &self.c - &self.b * &self.b).is_negative()
    }
}

impl fmt::Display for FourierIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", format_rational(&self.a), format_rational(&self.b), format_rational(&self.c))
    }
}

/// Coefficients of one Fourier mode: nearly holomorphic monomial ↦ `W_m` vector.
pub type ModeTerms = BTreeMap<NHMonomial, Vec<Gq>>;

/// A truncated nearly holomorphic expansion of weight `det^ℓ sym^m`.
///
/// `m < 0` is allowed only for the zero form; it arises when `U` or `L` is
/// applied with `m < 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearHolForm {
    pub ell: i64,
    pub m: i64,
    pub level: u64,
    modes: BTreeMap<FourierIndex, ModeTerms>,
}

impl NearHolForm {
    pub fn zero(ell: i64, m: i64, level: u64) -> Self {
        NearHolForm { ell, m, level, modes: BTreeMap::new() }
    }

    /// Number of `W_m` components, `max(m + 1, 0)`.
    pub fn width(&self) -> usize {
        (self.m + 1).max(0) as usize
    }

    /// Adds `coeffs · r^abc · e(Q)`, merging with existing data and pruning zeros.
    pub fn add_term(&mut self, q: FourierIndex, abc: NHMonomial, coeffs: Vec<Gq>) -> Result<()> {
        if coeffs.len() != self.width() {
            return Err(Error::Invalid(format!(
                "W_m vector has length {} but m = {} needs {}",
                coeffs.len(),
                self.m,
                self.width()
            )));
        }
        if !q.fits_level(self.level) {
            return Err(Error::Invalid(format!("Fourier index {q} is not in (1/{})ℤ", self.level)));
        }
        let mode = self.modes.entry(q.clone()).or_default();
        let slot = mode.entry(abc).or_insert_with(|| vec![Gq::zero(); coeffs.len()]);
        for (s, c) in slot.iter_mut().zip(coeffs) {
            *s = &*s + &c;
        }
        if slot.iter().all(Zero::is_zero) {
            mode.remove(&abc);
        }
        if mode.is_empty() {
            self.modes.remove(&q);
        }
        Ok(())
    }

    pub fn modes(&self) -> &BTreeMap<FourierIndex, ModeTerms> {
        &self.modes
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Nearly holomorphic degree: the largest `α + β + γ` present (0 for the zero form).
    pub fn degree(&self) -> u32 {
        self.modes
            .values()
            .flat_map(|t| t.keys())
            .map(|k| k.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &FourierIndex> {
        self.modes.keys()
    }

    /// True when every coefficient lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.modes
            .values()
            .flat_map(|t| t.values())
            .flatten()
            .all(|c| c.im.is_zero())
    }

    /// True when every Fourier index is positive semidefinite (no poles at
    /// the standard cusp).
    pub fn has_semidefinite_support(&self) -> bool {
        self.modes.keys().all(FourierIndex::is_semidefinite)
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut out = NearHolForm::zero(self.ell, self.m, self.level);
        for (q, t) in &self.modes {
            for (k, v) in t {
                // Width is unchanged, so this cannot fail.
                let _ = out.add_term(q.clone(), *k, v.iter().map(|x| x * c).collect());
            }
        }
        out
    }

    /// `self + other`; both must have the same weight.
    pub fn add(&self, other: &NearHolForm) -> Result<Self> {
        if (self.ell, self.m) != (other.ell, other.m) {
            return Err(Error::Invalid(format!(
                "cannot add forms of weights ({},{}) and ({},{})",
                self.ell, self.m, other.ell, other.m
            )));
        }
        let level = lcm(self.level, other.level);
        let mut out = NearHolForm::zero(self.ell, self.m, level);
        for f in [self, other] {
            for (q, t) in &f.modes {
                for (k, v) in t {
                    out.add_term(q.clone(), *k, v.clone())?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NearHolForm) -> Result<Self> {
        self.add(&other.scale(&crate::scalar::int(-1)))
    }
}

/// Shape of a random test form; coefficients are Gaussian integers with
/// parts in `−coeff_bound..=coeff_bound` (purely rational unless `gaussian`).
#[derive(Clone, Copy, Debug)]
pub struct RandomFormSpec {
    pub modes: usize,
    pub terms_per_mode: usize,
    pub max_degree: u32,
    pub coeff_bound: i64,
    pub index_bound: i64,
    pub level: u64,
    pub semidefinite: bool,
    pub gaussian: bool,
}

impl Default for RandomFormSpec {
    fn default() -> Self {
        RandomFormSpec {
            modes: 2,
            terms_per_mode: 2,
            max_degree: 2,
            coeff_bound: 3,
            index_bound: 2,
            level: 1,
            semidefinite: false,
            gaussian: false,
        }
    }
}

/// A random truncated expansion of weight `(ℓ, m)` for property tests.
pub fn random_form<R: rand::Rng + ?Sized>(rng: &mut R, ell: i64, m: i64, spec: &RandomFormSpec) -> NearHolForm {
    let mut f = NearHolForm::zero(ell, m, spec.level);
    let n = spec.level as i64;
    let frac = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(n));
    let b = spec.index_bound * n;
    for _ in 0..spec.modes {
        let q = loop {
            let q = FourierIndex::new(
                frac(rng.random_range(-b..=b)),
                frac(rng.random_range(-b..=b)),
                frac(rng.random_range(-b..=b)),
            );
            if !spec.semidefinite || q.is_semidefinite() {
                break q;
            }
        };
        for _ in 0..spec.terms_per_mode {
            let d = spec.max_degree;
            let abc = loop {
                let abc = [rng.random_range(0..=d), rng.random_range(0..=d), rng.random_range(0..=d)];
                if abc.iter().sum::<u32>() <= d {
                    break abc;
                }
            };
            let c = spec.coeff_bound;
            let w = (0..f.width())
                .map(|_| {
                    let re = rng.random_range(-c..=c);
                    let im = if spec.gaussian { rng.random_range(-c..=c) } else { 0 };
                    crate::scalar::gq(crate::scalar::rat(re, 1), crate::scalar::rat(im, 1))
                })
                .collect();
            // Indices are drawn from (1/level)ℤ and widths match, so this cannot fail.
            let _ = f.add_term(q.clone(), abc, w);
        }
    }
    f
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn add_term_prunes() {
        let mut f = NearHolForm::zero(4, 1, 1);
        let q = FourierIndex::from_ints(1, 0, 1);
        f.add_term(q.clone(), [1, 0, 0], vec![int(1), int(2)]).unwrap();
        assert_eq!(f.degree(), 1);
        f.add_term(q, [1, 0, 0], vec![int(-1), int(-2)]).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 0);
    }

    #[test]
    fn level_and_width_checks() {
        let mut f = NearHolForm::zero(4, 0, 2);
        let half = FourierIndex::new(rat(1, 2), rat(0, 1), rat(1, 1));
        assert!(f.add_term(half.clone(), [0, 0, 0], vec![int(1)]).is_ok());
        assert!(f.add_term(half, [0, 0, 0], vec![int(1), int(1)]).is_err());
        let third = FourierIndex::new(rat(1, 3), rat(0, 1), rat(1, 1));
        assert!(f.add_term(third, [0, 0, 0], vec![int(1)]).is_err());
    }

    #[test]
    fn semidefinite() {
        assert!(FourierIndex::from_ints(1, 2, 1).is_semidefinite());
        assert!(!FourierIndex::from_ints(1, 3, 1).is_semidefinite());
        assert!(!FourierIndex::from_ints(-1, 0, 1).is_semidefinite());
    }
}
