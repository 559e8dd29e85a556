//! Benchmark fixtures shared by the criterion targets.

use sp4_core::nearhol::{FourierIndex, NearHolForm};
use sp4_core::scalar::int;

/// A deterministic form of weight `(ℓ, m)` with `modes` Fourier modes, each
/// carrying every monomial of degree at most `degree`.
pub fn sample_form(ell: i64, m: i64, modes: i64, degree: u32) -> NearHolForm {
    let mut f = NearHolForm::zero(ell, m, 1);
    for q in 0..modes {
        let index = FourierIndex::from_ints(q + 1, q - 1, 2 * q + 1);
        for a in 0..=degree {
            for b in 0..=degree - a {
                for c in 0..=degree - a - b {
                    let w = (0..=m).map(|j| int(1 + j + i64::from(a + 2 * b + 3 * c) - q)).collect();
                    f.add_term(index.clone(), [a, b, c], w).expect("width and level match");
                }
            }
        }
    }
    f
}
