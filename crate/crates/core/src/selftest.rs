//! Randomised and exhaustive invariant suites covering every module. These
//! back the `selftest` command; each suite is deterministic given the seed.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lie::{self, bracket_coeffs, casimir, casimir_alternative, coordinates, BasisSymbol, LieElement, Weight};
use crate::nearhol::{
    apply_operator, apply_word, holomorphy_test, json, numcheck_rootvectors, random_form, sigma_act,
    Automorphism, RandomFormSpec, SiegelPoint,
};
use crate::scalar::{from_rat, int, Gq};
use crate::structure;
use crate::verma::{self, VermaModule};
use crate::word::{NavOp, OperatorWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Size {
    Small,
    Full,
}

impl std::str::FromStr for Size {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Size::Small),
            "full" => Ok(Size::Full),
            _ => Err(crate::Error::Parse(format!("unknown size {s:?}; expected small or full"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub size: Size,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

const MAX_REPORTED: usize = 8;

struct Check {
    cases: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Check {
    fn new() -> Self {
        Check { cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(msg());
            }
        }
    }
}

type SuiteFn = fn(&mut ChaCha8Rng, Size, &mut Check);

const SUITES: [(&str, SuiteFn); 12] = [
    ("lie_brackets", suite_lie),
    ("casimir", suite_casimir),
    ("multiplicities", suite_multiplicities),
    ("composition_series", suite_composition),
    ("navigation", suite_navigation),
    ("index_sets", suite_index_sets),
    ("calculus", suite_calculus),
    ("arithmeticity", suite_arithmeticity),
    ("classical_commutations", suite_commutations),
    ("root_vector_numerics", suite_numerics),
    ("json_round_trip", suite_json),
    ("vk_solver", suite_vk),
];

/// Runs every suite; suite `i` draws from its own stream derived from `seed`.
pub fn run(seed: u64, size: Size) -> SelftestReport {
    let mut suites = Vec::new();
    for (i, (name, f)) in SUITES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let start = Instant::now();
        let mut check = Check::new();
        f(&mut rng, size, &mut check);
        let mut failures = check.failures;
        if check.failed as usize > failures.len() {
            failures.push(format!("... {} failures in total", check.failed));
        }
        suites.push(SuiteResult {
            name,
            passed: check.failed == 0,
            cases: check.cases,
            failures,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    SelftestReport { seed, size, passed: suites.iter().all(|s| s.passed), suites }
}

fn pick(size: Size, small: i64, full: i64) -> i64 {
    match size {
        Size::Small => small,
        Size::Full => full,
    }
}

fn linear_bracket(a: &[(BasisSymbol, Gq)], b: &[(BasisSymbol, Gq)]) -> [Gq; 10] {
    let mut out: [Gq; 10] = Default::default();
    for (x, c) in a {
        for (y, d) in b {
            for (z, e) in bracket_coeffs(*x, *y) {
                out[z.index()] = &out[z.index()] + &(c * d * e);
            }
        }
    }
    out
}

fn sparse(v: [Gq; 10]) -> Vec<(BasisSymbol, Gq)> {
    BasisSymbol::ALL.iter().zip(v).filter(|(_, c)| *c != int(0)).map(|(s, c)| (*s, c)).collect()
}

fn suite_lie(_: &mut ChaCha8Rng, _: Size, c: &mut Check) {
    let one = int(1);
    for x in BasisSymbol::ALL {
        for y in BasisSymbol::ALL {
            let m = lie::commutator(&x.matrix(), &y.matrix());
            let coords = coordinates(&m);
            c.expect(coords.as_ref().map(|v| sparse(v.clone())) == Some(bracket_coeffs(x, y).clone()), || {
                format!("[{x},{y}] does not close on the basis")
            });
            let xy = linear_bracket(&[(x, one.clone())], &[(y, one.clone())]);
            let yx = linear_bracket(&[(y, one.clone())], &[(x, one.clone())]);
            c.expect(xy.iter().zip(&yx).all(|(a, b)| *a == -b), || format!("[{x},{y}] ≠ −[{y},{x}]"));
            for z in BasisSymbol::ALL {
                let s = |a: BasisSymbol, b: BasisSymbol, d: BasisSymbol| {
                    linear_bracket(&[(a, one.clone())], &sparse(linear_bracket(&[(b, one.clone())], &[(d, one.clone())])))
                };
                let (p, q, r) = (s(x, y, z), s(y, z, x), s(z, x, y));
                c.expect((0..10).all(|i| (&p[i] + &q[i] + &r[i]) == int(0)), || format!("Jacobi fails on ({x},{y},{z})"));
            }
        }
        let (rk, rl) = x.root();
        let want = |r: i64| sparse({
            let mut v: [Gq; 10] = Default::default();
            v[x.index()] = int(r);
            v
        });
        c.expect(*bracket_coeffs(BasisSymbol::Z, x) == want(rk), || format!("[Z,{x}] has the wrong weight"));
        c.expect(*bracket_coeffs(BasisSymbol::Zp, x) == want(rl), || format!("[Z′,{x}] has the wrong weight"));
    }
}

fn suite_casimir(_: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let omega = casimir();
    c.expect(omega == casimir_alternative(), || "the two Casimir expressions differ".into());
    for x in BasisSymbol::ALL {
        let s = LieElement::symbol(x);
        c.expect((&(&omega * &s) - &(&s * &omega)).is_zero(), || format!("Casimir does not commute with {x}"));
    }
    let r = pick(size, 6, 10);
    for k in -r..=r {
        for l in -r..=k.min(r) {
            let lambda = Weight::new(k, l);
            let n = VermaModule::new(lambda).expect("k ≥ ℓ");
            let w0 = n.w0();
            let got = n.act(&omega, &w0);
            c.expect(got == w0.scale(&from_rat(verma::casimir_scalar(lambda))), || format!("Casimir scalar wrong on N{lambda}"));
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng, gap: i64, reach: i64) -> (Weight, Weight) {
    let l = rng.random_range(-4..=6);
    let k = l + rng.random_range(0..=gap);
    let y = l + rng.random_range(0..=reach);
    let x = y.max(k) + rng.random_range(0..=reach);
    (Weight::new(k, l), Weight::new(x, y))
}

fn suite_multiplicities(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    for x in -3..=12 {
        for y in -3..=12 {
            c.expect(verma::q_count(x, y) == verma::q_count_oracle(x, y), || format!("Q({x},{y}) wrong"));
        }
    }
    let pairs = pick(size, 200, 600);
    for _ in 0..pairs {
        let (lambda, mu) = random_pair(rng, 8, 5);
        let closed = verma::weight_multiplicity(lambda, mu);
        c.expect(closed == verma::weight_multiplicity_oracle(lambda, mu), || format!("dim N{lambda}_{mu} disagrees with enumeration"));
        let n = verma::ktype_multiplicity_n(lambda, mu);
        c.expect(n == verma::ktype_multiplicity_n_from_weights(lambda, mu), || format!("K-type {mu} in N{lambda}: closed form vs weights"));
        if (mu.k - lambda.k) + (mu.l - lambda.l) <= pick(size, 6, 8) {
            let hw = verma::highest_weight_vectors(lambda, mu).map(|v| v.len() as u64).unwrap_or(u64::MAX);
            c.expect(n == hw, || format!("K-type {mu} in N{lambda}: closed form {n} vs kernel of N₊ {hw}"));
        }
    }
}

fn suite_composition(_: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let r = pick(size, 6, 8);
    for k in -r..=r {
        for l in -r..=k.min(r) {
            let lambda = Weight::new(k, l);
            let Some(s) = verma::socle(lambda) else { continue };
            let expect = match verma::region(lambda) {
                verma::RegionTag::A => Some(Weight::new(2 - k, l)),
                verma::RegionTag::B => Some(Weight::new(3 - l, 3 - k)),
                verma::RegionTag::C => Some(Weight::new(k, 4 - l)),
                _ => None,
            };
            c.expect(Some(s) == expect, || format!("socle of N{lambda} is {s}"));
            c.expect(verma::casimir_scalar(s) == verma::casimir_scalar(lambda), || format!("socle {s} has a different Casimir than {lambda}"));
            for x in l..l + 12 {
                for y in l..l + 12 {
                    if x < y {
                        continue;
                    }
                    let mu = Weight::new(x, y);
                    let total = verma::ktype_multiplicity_n(lambda, mu);
                    let split = verma::ktype_multiplicity_l(lambda, mu) + verma::ktype_multiplicity_l(s, mu);
                    c.expect(total == split, || format!("mult of {mu}: N{lambda} ≠ L{lambda} + L{s}"));
                }
            }
        }
    }
}

/// The four commuting pairs among the raising operators; the fifth identity,
/// `X₊U − UX₊ = (m+1)D₊`, is checked separately.
fn commutation_pairs() -> [(&'static str, &'static str); 4] {
    [("Xp,Ep", "Ep,Xp"), ("U,Ep", "Ep,U"), ("Dp,Ep", "Ep,Dp"), ("U,Dp", "Dp,U")]
}

fn w(s: &str) -> OperatorWord {
    s.parse().expect("static word")
}

fn suite_navigation(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    for ell in 1..=6 {
        for m in 0..=8 {
            let module = VermaModule::new(Weight::new(ell + m, ell)).expect("dominant");
            let mut wi = vec![module.w0()];
            for i in 0..m / 2 {
                let next = module.nav_step(NavOp::U, &wi[i as usize]);
                wi.push(next);
            }
            for i in 0..m / 2 {
                let lhs = module.nav_step(NavOp::P0m, &wi[(i + 1) as usize]);
                let coeff = -(i + 1) * (ell + i - 1) * (m - 2 * i) * (m - 2 * i - 1);
                c.expect(lhs == wi[i as usize].scale(&int(coeff)), || format!("P₀₋U^{} w₀ at ℓ={ell}, m={m}", i + 1));
            }
            if m % 2 == 0 && (ell != 1 || m == 0) {
                for beta in 0..=2 {
                    let word = OperatorWord::from_powers(&[
                        (NavOp::P0m, (m / 2) as usize),
                        (NavOp::Dm, beta),
                        (NavOp::Dp, beta),
                        (NavOp::U, (m / 2) as usize),
                    ]);
                    let r = module.navigate(&word).ratio_to(&module.w0());
                    c.expect(r.is_some_and(|r| r != int(0)), || format!("P₀₋^{{m/2}} D₋^{beta} D₊^{beta} U^{{m/2}} w₀ vanishes at ℓ={ell}, m={m}"));
                }
            }
        }
    }
    let samples = pick(size, 12, 40);
    for _ in 0..samples {
        let (lambda, mu) = random_pair(rng, 4, 3);
        let module = VermaModule::new(lambda).expect("k ≥ ℓ");
        for v in module.highest_weight_vectors(mu) {
            let m = mu.k - mu.l;
            for (a, b) in commutation_pairs() {
                let l = module.navigate_from(&w(a), &v);
                let r = module.navigate_from(&w(b), &v);
                c.expect(l == r, || format!("{a} ≠ {b} on a hw vector of weight {mu} in N{lambda}"));
            }
            let mut lhs = module.navigate_from(&w("Xp,U"), &v);
            lhs.add_scaled(&module.navigate_from(&w("U,Xp"), &v), &int(-1));
            let rhs = module.navigate_from(&w("Dp"), &v).scale(&int(m + 1));
            c.expect(lhs == rhs, || format!("X₊U − UX₊ ≠ (m+1)D₊ at weight {mu} in N{lambda}"));
        }
    }
}

fn suite_index_sets(_: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let top = pick(size, 14, 20);
    let mut attained = false;
    for ell in 1..=top {
        for m in 0..=(top - ell) {
            let bound = structure::degree_bound(ell, m);
            for lp in 1..=ell {
                for mp in 0..=(ell + m - lp) {
                    let words = structure::index_set(ell, m, lp, mp);
                    let mult = verma::ktype_multiplicity_l(Weight::new(lp + mp, lp), Weight::new(ell + m, ell));
                    c.expect(words.len() as u64 == mult, || format!("|X^({ell},{m})_({lp},{mp})| = {} but multiplicity {mult}", words.len()));
                    for wd in &words {
                        let ok = match structure::op_signature(wd, lp, mp, 0) {
                            Ok(s) => {
                                attained |= s.p == bound;
                                (s.ell, s.m) == (ell, m) && s.p <= bound
                            }
                            Err(_) => false,
                        };
                        c.expect(ok, || format!("word {wd} from ({lp},{mp}) misses ({ell},{m}) or exceeds degree {bound}"));
                    }
                }
            }
        }
    }
    c.expect(attained, || "the degree bound is never attained".into());
    for ell in 1..=top {
        let Ok(full) = structure::scalar_decomposition(ell, None) else {
            c.expect(false, || format!("scalar decomposition failed at ℓ={ell}"));
            continue;
        };
        let mut slice = Vec::new();
        for lp in 1..=ell {
            for mp in 0..=(ell - lp) {
                for wd in structure::index_set(ell, 0, lp, mp) {
                    slice.push((lp, mp, wd));
                }
            }
        }
        let mut sorted = full.clone();
        sorted.sort();
        slice.sort();
        c.expect(sorted == slice, || format!("scalar decomposition at ℓ={ell} differs from the m=0 slice"));
        for p in 0..=ell {
            let capped = structure::scalar_decomposition(ell, Some(p)).unwrap_or_default();
            let filtered: Vec<_> = full.iter().filter(|(_, _, wd)| wd.degree() <= p).cloned().collect();
            c.expect(capped == filtered, || format!("capped decomposition at ℓ={ell}, p={p}"));
        }
    }
}

fn suite_calculus(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let n = pick(size, 40, 100);
    let spec = RandomFormSpec::default();
    for i in 0..n {
        let (ell, m) = (rng.random_range(-2..=6), rng.random_range(0..=4));
        let mut f = random_form(rng, ell, m, &spec);
        if i % 4 == 0 {
            f = random_form(rng, ell, m, &RandomFormSpec { max_degree: 0, ..spec });
        }
        match holomorphy_test(&f) {
            Ok(r) => c.expect(r.consistent(), || format!("holomorphy criteria disagree on a form of degree {}", f.degree())),
            Err(e) => c.expect(false, || format!("holomorphy test failed: {e}")),
        }
        for op in NavOp::ALL {
            let g = match apply_operator(op, &f) {
                Ok(g) => g,
                Err(e) => {
                    c.expect(false, || format!("{op} failed: {e}"));
                    continue;
                }
            };
            let (dl, dm, dp) = op.shift();
            c.expect((g.ell, g.m) == (ell + dl, m + dm), || format!("{op} lands in the wrong weight"));
            c.expect(g.is_zero() || i64::from(g.degree()) <= i64::from(f.degree()) + dp, || format!("{op} raises the degree too far"));
            c.expect(g.support().all(|q| f.modes().contains_key(q)), || format!("{op} enlarges the support"));
        }
    }
}

fn suite_arithmeticity(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let n = pick(size, 10, 30);
    for _ in 0..n {
        let len = rng.random_range(0..=4);
        let word = OperatorWord((0..len).map(|_| NavOp::RAISING[rng.random_range(0..4)]).collect());
        let (ell, m) = (rng.random_range(1..=4), rng.random_range(0..=3));
        let f = random_form(rng, ell, m, &RandomFormSpec { max_degree: 1, ..Default::default() });
        let g = random_form(rng, ell, m, &RandomFormSpec { max_degree: 1, gaussian: true, ..Default::default() });
        match (apply_word(&word, &f), apply_word(&word, &g), apply_word(&word, &sigma_act(&g, Automorphism::Conjugation))) {
            (Ok(xf), Ok(xg), Ok(xsg)) => {
                c.expect(xf.is_rational(), || format!("{word} leaves the rationals"));
                c.expect(sigma_act(&xg, Automorphism::Conjugation) == xsg, || format!("{word} does not commute with conjugation"));
            }
            _ => c.expect(false, || format!("{word} failed to apply")),
        }
    }
}

fn suite_commutations(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let per = pick(size, 2, 10);
    let spec = RandomFormSpec { modes: 2, terms_per_mode: 2, max_degree: 1, ..Default::default() };
    for ell in 1..=5 {
        for m in 0..=5 {
            for _ in 0..per {
                let f = random_form(rng, ell, m, &spec);
                let ap = |s: &str| apply_word(&w(s), &f);
                for (a, b) in commutation_pairs() {
                    c.expect(matches!((ap(a), ap(b)), (Ok(x), Ok(y)) if x == y), || format!("{a} ≠ {b} at ({ell},{m})"));
                }
                let ok = match (ap("Xp,U"), ap("U,Xp"), ap("Dp")) {
                    (Ok(a), Ok(b), Ok(d)) => a.sub(&b).ok() == Some(d.scale(&int(m + 1))),
                    _ => false,
                };
                c.expect(ok, || format!("X₊U − UX₊ ≠ (m+1)D₊ at ({ell},{m})"));
            }
        }
    }
}

/// A random point with `y, y′ ∈ [0.8, 1.5]` and `|v| ≤ 0.3`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> SiegelPoint {
    let mut u = |a: f64, b: f64| rng.random_range(a..b);
    let tau = Complex64::new(u(-0.5, 0.5), u(0.8, 1.5));
    let z = Complex64::new(u(-0.5, 0.5), u(-0.3, 0.3));
    let taup = Complex64::new(u(-0.5, 0.5), u(0.8, 1.5));
    SiegelPoint::new(tau, z, taup).expect("sampling box lies in the upper half space")
}

fn suite_numerics(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    let n = pick(size, 8, 20);
    let spec = RandomFormSpec { modes: 2, terms_per_mode: 2, max_degree: 1, index_bound: 1, semidefinite: true, gaussian: true, ..Default::default() };
    let roots: Vec<BasisSymbol> = BasisSymbol::ALL.into_iter().filter(|s| s.is_root_vector()).collect();
    for _ in 0..n {
        let (ell, m) = (rng.random_range(1..=4), rng.random_range(0..=2));
        let f = random_form(rng, ell, m, &spec);
        let z = random_point(rng);
        let x = roots[rng.random_range(0..roots.len())];
        match (numcheck_rootvectors(&f, x, &z, 1e-4), numcheck_rootvectors(&f, x, &z, 5e-5)) {
            (Ok(a), Ok(b)) => {
                c.expect(a.residual < 1e-5, || format!("{x}: residual {:e}", a.residual));
                if a.residual > 1e-9 {
                    let ratio = a.residual / b.residual;
                    c.expect((2.5..=5.5).contains(&ratio), || format!("{x}: halving h changed the residual by {ratio:.2}"));
                }
            }
            _ => c.expect(false, || format!("numcheck failed for {x}")),
        }
    }
}

fn suite_json(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    for _ in 0..pick(size, 30, 100) {
        let spec = RandomFormSpec { level: rng.random_range(1..=4), gaussian: true, ..Default::default() };
        let (ell, m) = (rng.random_range(-2..=5), rng.random_range(0..=3));
        let f = random_form(rng, ell, m, &spec);
        let s = json::form_to_string(&f);
        let back = json::form_from_str(&s);
        c.expect(back.as_ref().ok() == Some(&f), || "parse ∘ emit is not the identity".into());
        c.expect(back.map(|g| json::form_to_string(&g) == s).unwrap_or(false), || "emit ∘ parse ∘ emit changed the text".into());
    }
}

fn suite_vk(rng: &mut ChaCha8Rng, size: Size, c: &mut Check) {
    for _ in 0..pick(size, 200, 1000) {
        let (d1, d3, ds): (u64, u64, u64) = (rng.random_range(0..6), rng.random_range(0..6), rng.random_range(0..12));
        let feasible = d3 <= ds && ds <= d1 + d3;
        match structure::vk_multiplicities(d1, d3, ds) {
            Ok((a, b, cc)) => c.expect(feasible && a + cc == d1 && b == d3 && b + cc == ds, || format!("({d1},{d3},{ds}) ↦ ({a},{b},{cc})")),
            Err(_) => c.expect(!feasible, || format!("feasible input ({d1},{d3},{ds}) rejected")),
        }
        if d3 == ds && d3 <= d1 + d3 {
            c.expect(matches!(structure::vk_multiplicities(d1, d3, ds), Ok((_, _, 0))), || "c ≠ 0 with dim M*₃ = dim M₃".into());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = run(7, Size::Small);
        for s in &r.suites {
            assert!(s.passed, "{}: {:?}", s.name, s.failures);
        }
    }
}
