//! Seeded samplers for parameter points inside each family's unitary domain.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Family, FamilySpec, Sign};
use crate::linalg::{r, C64};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Uniform angle in `[−π, π)`.
pub fn angle(rng: &mut SampleRng) -> f64 {
    uniform(rng, -PI, PI)
}

pub fn unit_circle(rng: &mut SampleRng) -> C64 {
    C64::from_polar(1.0, angle(rng))
}

pub fn sign(rng: &mut SampleRng) -> Sign {
    if rng.random::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Standard complex normal, used for random states.
pub fn complex_normal(rng: &mut SampleRng) -> C64 {
    // Box–Muller
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    let rad = (-2.0 * u1.ln()).sqrt();
    C64::from_polar(rad, 2.0 * PI * u2) * std::f64::consts::FRAC_1_SQRT_2
}

/// `t` away from the degenerate values `0, ±1` of the three-eigenvalue families.
/// `t` in `[−2, 3]` away from `t = 1`, where `b` has the eigenvalue 0.
fn eight2_t(rng: &mut SampleRng) -> f64 {
    loop {
        let t = uniform(rng, -2.0, 3.0);
        if (t - 1.0).abs() > 0.15 {
            return t;
        }
    }
}

fn generic_t(rng: &mut SampleRng) -> f64 {
    loop {
        let t = uniform(rng, 0.2, 2.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        if (t.abs() - 1.0).abs() > 0.15 {
            return t;
        }
    }
}

/// A random parameter point of `family` with real `t`, unit-modulus `q` for
/// the eight-vertex families and real `q = e^γ` for the six-vertex ones.
pub fn family_point(family: Family, rng: &mut SampleRng) -> FamilySpec {
    let base = FamilySpec::new(family).with_sign(sign(rng));
    match family {
        Family::SixNonStd | Family::SixStd => {
            let g = uniform(rng, 0.1, 1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            base.with_gamma(g)
        }
        Family::EightI | Family::BellPhi => base.with_phi(angle(rng)),
        Family::EightII => base.with_phi(angle(rng)).with_t(eight2_t(rng)),
        Family::EightIII | Family::EightIV => base.with_phi(angle(rng)).with_t(generic_t(rng)),
    }
}

/// A spectral parameter inside the unitary domain of `spec`.
pub fn domain_x(spec: &FamilySpec, rng: &mut SampleRng) -> C64 {
    let t = spec.t;
    match spec.family {
        Family::EightI | Family::BellPhi => r(uniform(rng, -3.0, 3.0)),
        Family::EightIII if t.im != 0.0 && t.re != 0.0 => {
            let tan_phi = t.im / t.re;
            let sec_phi = (1.0 + tan_phi * tan_phi).sqrt();
            C64::new(0.0, tan_phi) + C64::from_polar(sec_phi, angle(rng))
        }
        Family::EightIII | Family::EightIV if t.im != 0.0 => r(uniform(rng, -3.0, 3.0)),
        _ => unit_circle(rng),
    }
}

/// A generic complex spectral parameter for QYBE checks (no domain constraint).
pub fn generic_x(rng: &mut SampleRng) -> C64 {
    C64::from_polar(uniform(rng, 0.4, 2.0), angle(rng))
}
