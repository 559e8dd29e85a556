//! Floating-point evaluation of forms, the `GL₂` action on `W_m`, and a
//! finite-difference check of the root-vector action on functions on the group.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use super::calculus::{wirtinger, TForm, TPoly, Wirtinger};
use super::{FourierIndex, NearHolForm, WmVector};
use crate::error::{Error, Result};
use crate::lie::BasisSymbol;
use crate::scalar::to_c64;

/// A point `Z = [[τ, z], [z, τ′]]` of the Siegel upper half space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiegelPoint {
    pub tau: Complex64,
    pub z: Complex64,
    pub taup: Complex64,
}

impl SiegelPoint {
    pub fn new(tau: Complex64, z: Complex64, taup: Complex64) -> Result<Self> {
        let (y, v, yp) = (tau.im, z.im, taup.im);
        if !(y > 0.0 && yp > 0.0 && y * yp - v * v > 0.0) {
            return Err(Error::Invalid(format!(
                "point (τ={tau}, z={z}, τ′={taup}) is not in the upper half space"
            )));
        }
        Ok(SiegelPoint { tau, z, taup })
    }

    pub fn delta(&self) -> f64 {
        self.tau.im * self.taup.im - self.z.im * self.z.im
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.tau, self.z, self.z, self.taup)
    }

    /// `(r₀, r₁, r₂) = (y, v, y′) / (2πΔ)`.
    pub fn normalized_monomials(&self) -> [f64; 3] {
        let d = 2.0 * PI * self.delta();
        [self.tau.im / d, self.z.im / d, self.taup.im / d]
    }

    /// Parses `"τ,z,τ′"` with each entry a complex number such as `0.2+1.1i`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three comma-separated complex numbers, got {s:?}")));
        }
        let p = |t: &str| parse_complex(t);
        SiegelPoint::new(p(parts[0])?, p(parts[1])?, p(parts[2])?)
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('I', "i").replace('j', "i");
    let with_unit = if t.ends_with('i') && (t == "i" || t.ends_with("+i") || t.ends_with("-i")) {
        format!("{}1i", &t[..t.len() - 1])
    } else {
        t.clone()
    };
    with_unit.parse::<Complex64>().map_err(|_| Error::Parse(format!("malformed complex number {s:?}")))
}

fn mode_exponential(q: &FourierIndex, z: &SiegelPoint) -> Complex64 {
    let f = |x: &num_rational::BigRational| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN);
    let arg = z.tau * f(&q.a) + z.z * f(&q.b) + z.taup * f(&q.c);
    (Complex64::i() * 2.0 * PI * arg).exp()
}

fn eval_poly(p: &TPoly, r: &[f64; 3]) -> Complex64 {
    let mut acc = Complex64::zero();
    for ((abc, s), c) in p.terms() {
        let mono = r[0].powi(abc[0] as i32) * r[1].powi(abc[1] as i32) * r[2].powi(abc[2] as i32);
        acc += to_c64(c) * mono * (2.0 * PI).powi(*s);
    }
    acc
}

pub fn evaluate_tform(f: &TForm, z: &SiegelPoint) -> Vec<Complex64> {
    let width = (f.m + 1).max(0) as usize;
    let r = z.normalized_monomials();
    let mut out = vec![Complex64::zero(); width];
    for (q, comps) in &f.modes {
        let e = mode_exponential(q, z);
        for (o, p) in out.iter_mut().zip(comps) {
            *o += eval_poly(p, &r) * e;
        }
    }
    out
}

/// `F(Z)` as a vector of `W_m` coefficients.
pub fn evaluate(f: &NearHolForm, z: &SiegelPoint) -> WmVector<Complex64> {
    WmVector::new(evaluate_tform(&TForm::from_form(f), z))
}

/// `η_{ℓ,m}(g) P(S,T) = det(g)^ℓ P((S,T) g)` for `g = [[g₁₁, g₁₂], [g₂₁, g₂₂]]`.
pub fn eta_apply<T: Clone + Num>(g: [[T; 2]; 2], ell: i64, p: &[T]) -> Result<Vec<T>> {
    let det = g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone();
    if det.is_zero() {
        return Err(Error::Invalid("η is only defined on invertible matrices".into()));
    }
    let m = p.len().saturating_sub(1);
    // Homogeneous polynomials of degree d as coefficient vectors indexed by the T-exponent.
    let mul = |a: &[T], b: &[T]| {
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    };
    let s_img = [g[0][0].clone(), g[1][0].clone()];
    let t_img = [g[0][1].clone(), g[1][1].clone()];
    let mut out = vec![T::zero(); p.len()];
    for (j, c) in p.iter().enumerate() {
        let mut term = vec![c.clone()];
        for _ in 0..(m - j) {
            term = mul(&term, &s_img);
        }
        for _ in 0..j {
            term = mul(&term, &t_img);
        }
        for (o, x) in out.iter_mut().zip(term) {
            *o = o.clone() + x;
        }
    }
    let mut scale = T::one();
    let base = if ell >= 0 { det } else { T::one() / det };
    for _ in 0..ell.unsigned_abs() {
        scale = scale * base.clone();
    }
    Ok(out.into_iter().map(|x| x * scale.clone()).collect())
}

/// The derived action of `M ∈ gl₂(ℂ)`:
/// `ℓ tr(M) P + ∂_S P·(S M₁₁ + T M₂₁) + ∂_T P·(S M₁₂ + T M₂₂)`.
pub fn eta_lie<T: Clone + Num>(mm: [[T; 2]; 2], ell: i64, p: &[T]) -> Vec<T> {
    let m = p.len().saturating_sub(1);
    let n = |x: usize| small_int::<T>(x as i64);
    let tr = mm[0][0].clone() + mm[1][1].clone();
    let mut out: Vec<T> = p.iter().map(|c| small_int::<T>(ell) * tr.clone() * c.clone()).collect();
    for (j, c) in p.iter().enumerate() {
        let ds = n(m - j) * c.clone();
        let dt = n(j) * c.clone();
        out[j] = out[j].clone() + ds.clone() * mm[0][0].clone() + dt.clone() * mm[1][1].clone();
        if j < m {
            out[j + 1] = out[j + 1].clone() + ds * mm[1][0].clone();
        }
        if j > 0 {
            out[j - 1] = out[j - 1].clone() + dt * mm[0][1].clone();
        }
    }
    out
}

fn small_int<T: Clone + Num>(n: i64) -> T {
    let mut acc = T::zero();
    for _ in 0..n.unsigned_abs() {
        acc = acc + T::one();
    }
    if n < 0 {
        T::zero() - acc
    } else {
        acc
    }
}

fn as_array(g: &Matrix2<Complex64>) -> [[Complex64; 2]; 2] {
    [[g[(0, 0)], g[(0, 1)]], [g[(1, 0)], g[(1, 1)]]]
}

fn eta_c(g: &Matrix2<Complex64>, ell: i64, p: &[Complex64]) -> Result<Vec<Complex64>> {
    eta_apply(as_array(g), ell, p)
}

/// The Borel element `b_Z` with `b_Z⟨iI⟩ = Z`.
pub fn borel_element(z: &SiegelPoint) -> Matrix4<f64> {
    let (x, y, u, v, xp, yp) = (z.tau.re, z.tau.im, z.z.re, z.z.im, z.taup.re, z.taup.im);
    let a = (y - v * v / yp).sqrt();
    let b = yp.sqrt();
    #[rustfmt::skip]
    let n = Matrix4::new(
        1.0, 0.0, x, u,
        0.0, 1.0, u, xp,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    );
    #[rustfmt::skip]
    let k = Matrix4::new(
        1.0, v / yp, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, -v / yp, 1.0,
    );
    let d = Matrix4::from_diagonal(&nalgebra::Vector4::new(a, b, 1.0 / a, 1.0 / b));
    n * k * d
}

/// `D_Z = J(b_Z, iI)`.
pub fn d_z(z: &SiegelPoint) -> Matrix2<Complex64> {
    let (y, v, yp) = (z.tau.im, z.z.im, z.taup.im);
    let a = (y - v * v / yp).sqrt();
    let b = yp.sqrt();
    let c = |x: f64| Complex64::new(x, 0.0);
    Matrix2::new(c(1.0 / a), c(0.0), c(-v / (yp * a)), c(1.0 / b))
}

fn blocks(g: &Matrix4<f64>) -> [Matrix2<Complex64>; 4] {
    let blk = |r: usize, c: usize| {
        Matrix2::new(
            Complex64::new(g[(r, c)], 0.0),
            Complex64::new(g[(r, c + 1)], 0.0),
            Complex64::new(g[(r + 1, c)], 0.0),
            Complex64::new(g[(r + 1, c + 1)], 0.0),
        )
    };
    [blk(0, 0), blk(0, 2), blk(2, 0), blk(2, 2)]
}

/// `Φ̄(g) = η(J(g, iI))^{−1} F(g⟨iI⟩)`.
fn phi(f: &NearHolForm, g: &Matrix4<f64>) -> Result<Vec<Complex64>> {
    let [a, b, c, d] = blocks(g);
    let ii = Matrix2::identity() * Complex64::i();
    let j = c * ii + d;
    let jinv = j.try_inverse().ok_or_else(|| Error::Invalid("J(g, iI) is singular".into()))?;
    let w = (a * ii + b) * jinv;
    let w = (w + w.transpose()) * Complex64::new(0.5, 0.0);
    let p = SiegelPoint::new(w[(0, 0)], w[(0, 1)], w[(1, 1)])?;
    eta_c(&jinv, f.ell, &evaluate(f, &p).coeffs)
}

/// Left and right sides of the root-vector identity at one point.
#[derive(Clone, Debug, Serialize)]
pub struct NumcheckReport {
    pub symbol: String,
    pub step: f64,
    pub lhs: Vec<[f64; 2]>,
    pub rhs: Vec<[f64; 2]>,
    pub residual: f64,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn unit(r: usize, c: usize) -> Matrix2<Complex64> {
    let mut m = Matrix2::zeros();
    m[(r, c)] = Complex64::one();
    m
}

/// Compares `η(D_Z)(XΦ̄)(b_Z)`, obtained by central differences along
/// `b_Z exp(tA)` and `b_Z exp(tB)` for `X = A + iB`, with the closed form in
/// terms of `F` and its Wirtinger derivatives at `Z`.
pub fn numcheck_rootvectors(f: &NearHolForm, x: BasisSymbol, z: &SiegelPoint, h: f64) -> Result<NumcheckReport> {
    if !x.is_root_vector() {
        return Err(Error::Invalid(format!("{x} is not a root vector")));
    }
    if !(h > 0.0) {
        return Err(Error::Invalid(format!("step must be positive, got {h}")));
    }
    if f.m < 0 {
        return Err(Error::Invalid("numcheck needs m ≥ 0".into()));
    }
    let ell = f.ell;
    let mat = x.matrix();
    let a = Matrix4::from_fn(|r, c| to_c64(&mat[r][c]).re);
    let b = Matrix4::from_fn(|r, c| to_c64(&mat[r][c]).im);
    let bz = borel_element(z);
    let dz = d_z(z);

    let deriv = |dir: &Matrix4<f64>| -> Result<Vec<Complex64>> {
        let plus = phi(f, &(bz * (dir * h).exp()))?;
        let minus = phi(f, &(bz * (dir * -h).exp()))?;
        Ok(plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect())
    };
    let da = deriv(&a)?;
    let db = deriv(&b)?;
    let xphi: Vec<Complex64> = da.iter().zip(&db).map(|(p, q)| p + Complex64::i() * q).collect();
    let lhs = eta_c(&dz, ell, &xphi)?;

    let tf = TForm::from_form(f);
    let fz = evaluate_tform(&tf, z);
    let d = |w: Wirtinger| evaluate_tform(&tf.map_components(|q, p| wirtinger(q, p, w)), z);
    let conj = |mm: Matrix2<Complex64>| -> Result<Vec<Complex64>> {
        let dinv = dz.try_inverse().ok_or_else(|| Error::Invalid("degenerate D_Z".into()))?;
        let p = eta_c(&dinv, ell, &fz)?;
        let q = eta_lie(as_array(&mm), ell, &p);
        eta_c(&dz, ell, &q)
    };
    let (v, yp, delta) = (z.z.im, z.taup.im, z.delta());
    let two_i_over_yp = Complex64::new(0.0, 2.0 / yp);
    let sqrt_delta = delta.sqrt();
    let comb = |terms: &[(f64, Wirtinger)]| -> Vec<Complex64> {
        let mut acc = vec![Complex64::zero(); fz.len()];
        for (c, w) in terms {
            for (o, x) in acc.iter_mut().zip(d(*w)) {
                *o += x * *c;
            }
        }
        acc
    };
    let add = |p: Vec<Complex64>, q: Vec<Complex64>, s: Complex64| -> Vec<Complex64> {
        p.iter().zip(&q).map(|(a, b)| a + b * s).collect()
    };
    let zero = vec![Complex64::zero(); fz.len()];
    use Wirtinger::*;
    let rhs = match x {
        BasisSymbol::Np => conj(unit(1, 0))?,
        BasisSymbol::Nm => add(zero, conj(unit(0, 1))?, -Complex64::one()),
        BasisSymbol::P0p => add(
            conj(unit(1, 1))?,
            comb(&[(v * v, Tau), (v * yp, Z), (yp * yp, TauP)]),
            two_i_over_yp,
        ),
        BasisSymbol::P0m => add(zero, comb(&[(v * v, TauBar), (v * yp, ZBar), (yp * yp, TauPBar)]), -two_i_over_yp),
        BasisSymbol::P1p => add(
            conj(unit(0, 1) + unit(1, 0))?,
            comb(&[(2.0 * v, Tau), (yp, Z)]),
            two_i_over_yp * sqrt_delta,
        ),
        BasisSymbol::P1m => add(zero, comb(&[(2.0 * v, TauBar), (yp, ZBar)]), -two_i_over_yp * sqrt_delta),
        BasisSymbol::Xp => add(conj(unit(0, 0))?, comb(&[(delta, Tau)]), two_i_over_yp),
        BasisSymbol::Xm => add(zero, comb(&[(delta, TauBar)]), -two_i_over_yp),
        BasisSymbol::Z | BasisSymbol::Zp => unreachable!("rejected above"),
    };
    let diff: Vec<Complex64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let scale = norm(&rhs).max(norm(&fz));
    let residual = if scale == 0.0 { norm(&diff) } else { norm(&diff) / scale };
    let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect();
    Ok(NumcheckReport { symbol: x.token().into(), step: h, lhs: pairs(&lhs), rhs: pairs(&rhs), residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Gq};

    #[test]
    fn eta_identity_and_scalar() {
        let p = vec![int(1), int(2), int(3)];
        let id = [[int(1), int(0)], [int(0), int(1)]];
        assert_eq!(eta_apply(id, 3, &p).unwrap(), p);
        let t = [[int(2), int(0)], [int(0), int(2)]];
        assert_eq!(eta_apply(t, 3, &[int(5)]).unwrap(), vec![int(5 * 64)]);
        let sing = [[int(1), int(1)], [int(1), int(1)]];
        assert!(eta_apply(sing, 1, &p).is_err());
    }

    #[test]
    fn eta_lie_z_action() {
        // Z ↦ E₁₁ acts on S^{m−j}T^j by ℓ + m − j.
        let (ell, m) = (4, 3);
        let p: Vec<Gq> = (0..=m).map(|j| int(j + 1)).collect();
        let e11 = [[int(1), int(0)], [int(0), int(0)]];
        let out = eta_lie(e11, ell, &p);
        for j in 0..=m {
            assert_eq!(out[j as usize], &p[j as usize] * &int(ell + m - j));
        }
    }

    #[test]
    fn evaluate_holomorphic_mode() {
        let mut f = NearHolForm::zero(2, 0, 1);
        f.add_term(FourierIndex::from_ints(1, 0, 1), [0, 0, 0], vec![int(3)]).unwrap();
        let z = SiegelPoint::new(Complex64::i(), Complex64::zero(), Complex64::i()).unwrap();
        let v = evaluate(&f, &z).coeffs[0];
        assert!((v - 3.0 * (-4.0 * PI).exp()).norm() < 1e-15);
        let mut g = NearHolForm::zero(2, 0, 1);
        g.add_term(FourierIndex::new(rat(0, 1), rat(0, 1), rat(0, 1)), [0, 0, 1], vec![int(1)]).unwrap();
        assert!((evaluate(&g, &z).coeffs[0].re - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn point_parsing() {
        let p = SiegelPoint::parse("1.1i, 0.2+0.1i, 0.9i").unwrap();
        assert!((p.delta() - (1.1 * 0.9 - 0.01)).abs() < 1e-12);
        assert!(SiegelPoint::parse("-1i,0,1i").is_err());
        assert!(SiegelPoint::parse("i,0,i").is_ok());
    }

    #[test]
    fn borel_maps_base_point() {
        let z = SiegelPoint::parse("0.3+1.2i,0.1+0.2i,-0.4+0.8i").unwrap();
        let [a, b, c, d] = blocks(&borel_element(&z));
        let ii = Matrix2::identity() * Complex64::i();
        let w = (a * ii + b) * (c * ii + d).try_inverse().unwrap();
        assert!((w - z.matrix()).norm() < 1e-12);
        assert!((c * ii + d - d_z(&z)).norm() < 1e-12);
    }
}
