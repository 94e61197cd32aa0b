//! Yang–Baxterization: two- and three-eigenvalue formulas, the closed-form
//! Ř(x) of every family, and the spectral-parameter views x, θ, u.

use serde::{Deserialize, Serialize};

use crate::catalog::{build_b, eigenvalues_of, Family, FamilySpec};
use crate::linalg::{annihilates, complex_pair, r, spectral_projectors, CMat, C64, ONE, ZERO};
use crate::{Error, Result};

/// How an angle θ maps to the multiplicative spectral parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaConvention {
    /// `x = e^{2iθ}` (six-vertex families).
    Half,
    /// `x = e^{iθ}` (eight-vertex types II–IV).
    Full,
    /// `x = tan θ` (type I and `b±(φ)`, real spectral line).
    Tangent,
}

impl ThetaConvention {
    pub fn for_family(f: Family) -> Self {
        match f {
            Family::SixNonStd | Family::SixStd => ThetaConvention::Half,
            Family::EightI | Family::BellPhi => ThetaConvention::Tangent,
            _ => ThetaConvention::Full,
        }
    }

    pub fn x_of(self, theta: f64) -> C64 {
        match self {
            ThetaConvention::Half => C64::from_polar(1.0, 2.0 * theta),
            ThetaConvention::Full => C64::from_polar(1.0, theta),
            ThetaConvention::Tangent => r(theta.tan()),
        }
    }

    /// `dx/dθ`.
    pub fn dx_dtheta(self, theta: f64) -> C64 {
        match self {
            ThetaConvention::Half => C64::new(0.0, 2.0) * C64::from_polar(1.0, 2.0 * theta),
            ThetaConvention::Full => C64::new(0.0, 1.0) * C64::from_polar(1.0, theta),
            ThetaConvention::Tangent => r(1.0 / theta.cos().powi(2)),
        }
    }

    pub fn theta_of(self, x: C64) -> Result<f64> {
        match self {
            ThetaConvention::Half | ThetaConvention::Full => {
                if (x.norm() - 1.0).abs() > 1e-9 {
                    return Err(Error::Domain(format!(
                        "θ view needs |x| = 1, got |x| = {}",
                        x.norm()
                    )));
                }
                let a = x.arg();
                Ok(if self == ThetaConvention::Half { a / 2.0 } else { a })
            }
            ThetaConvention::Tangent => {
                if x.im.abs() > 1e-9 * x.norm().max(1.0) {
                    return Err(Error::Domain("tangent θ view needs real x".into()));
                }
                Ok(x.re.atan())
            }
        }
    }
}

/// A spectral parameter given in one authoritative view.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralPoint {
    X(#[serde(with = "complex_pair")] C64),
    Theta {
        theta: f64,
        convention: ThetaConvention,
    },
    U(#[serde(with = "complex_pair")] C64),
}

/// Target view for [`reparam`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    X,
    Theta,
    U,
}

/// `u = (1 − x)/(1 + x)`.
pub fn u_of_x(x: C64) -> Result<C64> {
    if (x + ONE).norm() < 1e-14 {
        return Err(Error::Domain("u = (1-x)/(1+x) is undefined at x = -1".into()));
    }
    Ok((ONE - x) / (ONE + x))
}

/// `x = (1 − u)/(1 + u)`.
pub fn x_of_u(u: C64) -> Result<C64> {
    if (u + ONE).norm() < 1e-14 {
        return Err(Error::Domain("x = (1-u)/(1+u) is undefined at u = -1".into()));
    }
    Ok((ONE - u) / (ONE + u))
}

/// Rational composition `(u + v)/(1 + uv)`, the u-image of `x·y`.
pub fn u_compose(u: C64, v: C64) -> Result<C64> {
    let d = ONE + u * v;
    if d.norm() < 1e-14 {
        return Err(Error::Domain("1 + uv vanishes".into()));
    }
    Ok((u + v) / d)
}

impl SpectralPoint {
    pub fn theta(theta: f64, convention: ThetaConvention) -> Self {
        SpectralPoint::Theta { theta, convention }
    }

    pub fn x(&self) -> Result<C64> {
        let x = match *self {
            SpectralPoint::X(x) => x,
            SpectralPoint::Theta { theta, convention } => {
                if convention == ThetaConvention::Tangent && theta.cos().abs() < 1e-15 {
                    return Err(Error::Domain("x = tan θ diverges".into()));
                }
                convention.x_of(theta)
            }
            SpectralPoint::U(u) => x_of_u(u)?,
        };
        if !(x.re.is_finite() && x.im.is_finite()) {
            return Err(Error::NonFinite("spectral parameter".into()));
        }
        Ok(x)
    }

    pub fn u(&self) -> Result<C64> {
        match *self {
            SpectralPoint::U(u) => Ok(u),
            _ => u_of_x(self.x()?),
        }
    }

    /// The point at the complex-conjugate spectral parameter.
    pub fn conj(&self) -> SpectralPoint {
        match *self {
            SpectralPoint::X(x) => SpectralPoint::X(x.conj()),
            SpectralPoint::Theta { theta, convention } => match convention {
                ThetaConvention::Tangent => *self,
                _ => SpectralPoint::theta(-theta, convention),
            },
            SpectralPoint::U(u) => SpectralPoint::U(u.conj()),
        }
    }

    /// The point at `1/x`.
    pub fn inverse(&self) -> Result<SpectralPoint> {
        Ok(match *self {
            SpectralPoint::Theta {
                theta,
                convention: c @ (ThetaConvention::Half | ThetaConvention::Full),
            } => SpectralPoint::theta(-theta, c),
            SpectralPoint::U(u) => SpectralPoint::U(-u),
            _ => {
                let x = self.x()?;
                if x.norm() == 0.0 {
                    return Err(Error::Domain("1/x undefined at x = 0".into()));
                }
                SpectralPoint::X(ONE / x)
            }
        })
    }
}

/// Re-express a spectral point in another view.
pub fn reparam(p: &SpectralPoint, target: View, convention: ThetaConvention) -> Result<SpectralPoint> {
    Ok(match target {
        View::X => SpectralPoint::X(p.x()?),
        View::U => SpectralPoint::U(p.u()?),
        View::Theta => match *p {
            SpectralPoint::Theta { convention: c, .. } if c == convention => *p,
            _ => SpectralPoint::theta(convention.theta_of(p.x()?)?, convention),
        },
    })
}

/// Ordering of the three eigenvalues `{1+t, 1−t, t−1}` of the type III/IV b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigOrdering {
    /// `(1+t, 1−t, t−1)`
    First,
    /// `(1+t, t−1, 1−t)`
    Second,
    /// `(1−t, 1+t, t−1)`
    Third,
}

impl EigOrdering {
    pub fn arrange(self, t: C64) -> [C64; 3] {
        let (a, b, c) = (ONE + t, ONE - t, t - ONE);
        match self {
            EigOrdering::First => [a, b, c],
            EigOrdering::Second => [a, c, b],
            EigOrdering::Third => [b, a, c],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(EigOrdering::First),
            "second" => Ok(EigOrdering::Second),
            "third" => Ok(EigOrdering::Third),
            _ => Err(Error::InvalidParameter(format!(
                "unknown ordering '{s}' (expected first, second or third)"
            ))),
        }
    }
}

/// `Ř(x) = b + λ₁λ₂ x b⁻¹` for a b with two distinct eigenvalues.
pub fn yb_two(b: &CMat, l1: C64, l2: C64, x: C64) -> Result<CMat> {
    spectral_projectors(b, l1, l2)?;
    let binv = b.inverse()?;
    Ok(b + &binv.scale(l1 * l2 * x))
}

/// `Ř(x) = λ₁λ₃ x(x−1) b⁻¹ + (λ₁+λ₂+λ₃+λ₁λ₃/λ₂) x − (x−1) b`.
///
/// The formula is not QYBE-safe in general; callers check the residual.
pub fn yb_three(b: &CMat, l: [C64; 3], x: C64) -> Result<CMat> {
    let scale = l.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..3 {
        if l[i].norm() <= 1e-12 * scale {
            return Err(Error::InvalidParameter(format!("eigenvalue λ{} vanishes", i + 1)));
        }
        for j in i + 1..3 {
            if (l[i] - l[j]).norm() <= 1e-12 * scale {
                return Err(Error::DegenerateSpectrum(l[i].to_string(), l[j].to_string()));
            }
        }
    }
    annihilates(b, &l)?;
    let binv = b.inverse()?;
    let sum = l[0] + l[1] + l[2] + l[0] * l[2] / l[1];
    let id = CMat::identity(4);
    Ok(&(&binv.scale(l[0] * l[2] * x * (x - ONE)) + &id.scale(sum * x)) - &b.scale(x - ONE))
}

/// A built Ř-matrix and whether it is proportional to the identity
/// (a degenerate point for unitarity normalization).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RMatrix {
    pub r: CMat,
    pub degenerate: bool,
}

fn check_ordering(spec: &FamilySpec, ordering: Option<EigOrdering>) -> Result<()> {
    use EigOrdering::*;
    let ok = match (spec.family, ordering) {
        (_, None) => true,
        (Family::EightIII, Some(First | Second)) => true,
        (Family::EightIV, Some(Third)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "ordering {:?} does not apply to family {}",
            ordering.unwrap(),
            spec.family
        )))
    }
}

/// The closed-form Ř(x) of a family in its closed-form normalization.
///
/// Type III takes the first ordering by default (`b + x(1−t²)b⁻¹`); the
/// second ordering gives `b − x(1−t²)b⁻¹`. Type IV is the third ordering in
/// its `g₁, g₂` form. `b±(φ)` gives `b + x b⁻¹`, the type I matrix over √2.
pub fn build_r(spec: &FamilySpec, p: &SpectralPoint, ordering: Option<EigOrdering>) -> Result<RMatrix> {
    spec.validate()?;
    check_ordering(spec, ordering)?;
    let x = p.x()?;
    let r = closed_form(spec, x, ordering)?;
    let norm = r.frobenius_norm();
    let degenerate = norm == 0.0 || r.scalar_residual() <= 1e-12 * norm;
    Ok(RMatrix { r, degenerate })
}

fn closed_form(spec: &FamilySpec, x: C64, ordering: Option<EigOrdering>) -> Result<CMat> {
    let (q, t, s) = (spec.q, spec.t, r(spec.sign.value()));
    let qi = ONE / q;
    let o = ZERO;
    let (p, m) = (ONE + x, ONE - x);
    Ok(match spec.family {
        Family::SixNonStd | Family::SixStd => {
            let last = if spec.family == Family::SixNonStd {
                q * x - qi
            } else {
                q - qi * x
            };
            CMat::from_rows([
                [q - qi * x, o, o, o],
                [o, (q - qi) * x, m, o],
                [o, m, q - qi, o],
                [o, o, o, last],
            ])
        }
        Family::EightI => CMat::from_rows([
            [p, o, o, q * m],
            [o, p, s * m, o],
            [o, -s * m, p, o],
            [-qi * m, o, o, p],
        ]),
        Family::BellPhi => {
            let e1 = FamilySpec::new(Family::EightI)
                .with_phi(spec.phi)
                .with_sign(spec.sign);
            closed_form(&e1, x, None)?.scale_re(std::f64::consts::FRAC_1_SQRT_2)
        }
        Family::EightII => {
            let z = spec.z();
            CMat::from_rows([
                [2.0 - t * m, o, o, q * m],
                [o, p, s * z * m, o],
                [o, s * z * m, p, o],
                [qi * m, o, o, 2.0 * x + t * m],
            ])
        }
        Family::EightIII => match ordering {
            Some(EigOrdering::Second) => {
                let b = build_b(spec)?;
                let binv = b.inverse().map_err(|e| e.at(spec.describe()))?;
                &b - &binv.scale(x * (ONE - t * t))
            }
            _ => CMat::from_rows([
                [t * m, o, o, q * p],
                [o, p, s * t * m, o],
                [o, s * t * m, p, o],
                [qi * p, o, o, t * m],
            ]),
        },
        Family::EightIV => {
            let (g1, g2) = g_factors(t, x);
            CMat::from_rows([
                [t * p * g1, o, o, q * m * g1],
                [o, p * g2, s * t * m * g2, o],
                [o, s * t * m * g2, p * g2, o],
                [qi * m * g1, o, o, t * p * g1],
            ])
        }
    })
}

/// `g₁ = 1 + t + x(1−t)`, `g₂ = 1 + t − x(1−t)`.
pub fn g_factors(t: C64, x: C64) -> (C64, C64) {
    (ONE + t + x * (ONE - t), ONE + t - x * (ONE - t))
}

/// Ř(x) through the Yang–Baxterization formulas applied to `build_b(spec)`.
/// Two-eigenvalue families use [`yb_two`]; types III/IV use [`yb_three`] with
/// the given ordering (first for III, third for IV by default).
pub fn build_r_from_b(spec: &FamilySpec, x: C64, ordering: Option<EigOrdering>) -> Result<CMat> {
    check_ordering(spec, ordering)?;
    let b = build_b(spec)?;
    let at = |e: Error| e.at(spec.describe());
    if spec.family.is_three_eigenvalue() {
        let ord = ordering.unwrap_or(if spec.family == Family::EightIII {
            EigOrdering::First
        } else {
            EigOrdering::Third
        });
        yb_three(&b, ord.arrange(spec.t), x).map_err(at)
    } else {
        let ev = eigenvalues_of(spec)?;
        yb_two(&b, ev[0], ev[1], x).map_err(at)
    }
}

/// Six-vertex non-standard Ř in its trigonometric form
/// `2e^{iθ}[[sinh(γ−iθ),..],[.., e^{iθ}sinhγ, −i sinθ,..],..]` with `q = e^γ`, `x = e^{2iθ}`.
pub fn six_theta_form(gamma: f64, theta: f64) -> CMat {
    let i = C64::new(0.0, 1.0);
    let g = r(gamma);
    let th = r(theta);
    let e = C64::from_polar(1.0, theta);
    let sh = r(gamma.sinh());
    let o = ZERO;
    CMat::from_rows([
        [(g - i * th).sinh(), o, o, o],
        [o, e * sh, -i * theta.sin(), o],
        [o, -i * theta.sin(), e.conj() * sh, o],
        [o, o, o, (g + i * th).sinh()],
    ])
    .scale(e * 2.0)
}

/// `Ř±(θ) = cos θ b±(φ) + sin θ b±(φ)⁻¹`, unitary for real θ.
pub fn bell_theta_form(phi: f64, sign: crate::catalog::Sign, theta: f64) -> CMat {
    let b = crate::catalog::bell_b(phi, sign);
    &b.scale_re(theta.cos()) + &b.adjoint().scale_re(theta.sin())
}

/// Type IV in its normalized form `Ř/g₁`, whose middle block carries `g = g₂/g₁`.
pub fn eight4_g_form(spec: &FamilySpec, x: C64) -> Result<CMat> {
    let (g1, _) = g_factors(spec.t, x);
    if g1.norm() < 1e-14 {
        return Err(Error::Domain("g1 = 1 + t + x(1-t) vanishes".into()));
    }
    let full = build_r(&FamilySpec { family: Family::EightIV, ..*spec }, &SpectralPoint::X(x), None)?;
    Ok(full.r.scale(ONE / g1))
}

/// Ř in the rational variable `u = (1−x)/(1+x)`.
///
/// Eight-vertex types I–III are `Ř/(1+x)`, type IV is `Ř/(1+x)²`, `b±(φ)`
/// is `Ř/(1+x)` (the type I u-matrix over √2), and the six-vertex
/// families use `Ř/(1+x)` as well.
pub fn u_form(spec: &FamilySpec, u: C64, ordering: Option<EigOrdering>) -> Result<CMat> {
    spec.validate()?;
    check_ordering(spec, ordering)?;
    let (q, t, s) = (spec.q, spec.t, r(spec.sign.value()));
    let qi = ONE / q;
    let o = ZERO;
    Ok(match (spec.family, ordering) {
        (Family::EightI, _) => CMat::from_rows([
            [ONE, o, o, q * u],
            [o, ONE, s * u, o],
            [o, -s * u, ONE, o],
            [-qi * u, o, o, ONE],
        ]),
        (Family::BellPhi, _) => {
            let e1 = FamilySpec::new(Family::EightI)
                .with_phi(spec.phi)
                .with_sign(spec.sign);
            u_form(&e1, u, None)?.scale_re(std::f64::consts::FRAC_1_SQRT_2)
        }
        (Family::EightII, _) => {
            let z = spec.z();
            CMat::from_rows([
                [ONE + (ONE - t) * u, o, o, q * u],
                [o, ONE, s * z * u, o],
                [o, s * z * u, ONE, o],
                [qi * u, o, o, ONE + (t - ONE) * u],
            ])
        }
        (Family::EightIII, None | Some(EigOrdering::First)) => CMat::from_rows([
            [t * u, o, o, q],
            [o, ONE, s * t * u, o],
            [o, s * t * u, ONE, o],
            [qi, o, o, t * u],
        ]),
        (Family::EightIV, _) => {
            let a = ONE + t * u;
            let m = u + t;
            CMat::from_rows([
                [t * a, o, o, q * u * a],
                [o, m, s * t * u * m, o],
                [o, s * t * u * m, m, o],
                [qi * u * a, o, o, t * a],
            ])
        }
        _ => {
            let x = x_of_u(u)?;
            build_r(spec, &SpectralPoint::X(x), ordering)?
                .r
                .scale(ONE / (ONE + x))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Sign;
    use crate::linalg::{c, I};
    use crate::sampling;
    use proptest::prelude::*;

    fn spec_iii(t: f64, sign: Sign) -> FamilySpec {
        FamilySpec::new(Family::EightIII).with_t(t).with_phi(0.7).with_sign(sign)
    }

    #[test]
    fn yb_two_at_zero_is_b() {
        let spec = FamilySpec::new(Family::EightI).with_phi(0.4);
        let b = build_b(&spec).unwrap();
        let r0 = yb_two(&b, c(1.0, -1.0), c(1.0, 1.0), ZERO).unwrap();
        assert_eq!(r0, b);
    }

    #[test]
    fn eight1_yb_two_matches_closed_form() {
        for sign in [Sign::Plus, Sign::Minus] {
            let spec = FamilySpec::new(Family::EightI).with_q(c(0.6, 0.8)).with_sign(sign);
            let x = c(0.37, 0.0);
            let via_b = build_r_from_b(&spec, x, None).unwrap();
            let closed = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
            assert!(via_b.distance(&closed) < 1e-14);
        }
    }

    #[test]
    fn eight1_at_one_is_twice_identity() {
        let spec = FamilySpec::new(Family::EightI).with_phi(1.2);
        let rm = build_r(&spec, &SpectralPoint::X(ONE), None).unwrap();
        assert_eq!(rm.r, CMat::identity(4).scale_re(2.0));
        assert!(rm.degenerate);
    }

    #[test]
    fn six_nonstd_closed_form_entries() {
        let q = c(1.3, 0.2);
        let x = c(0.4, -0.9);
        let spec = FamilySpec::new(Family::SixNonStd).with_q(q);
        let rm = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
        let qi = ONE / q;
        assert_eq!(rm[(0, 0)], q - qi * x);
        assert_eq!(rm[(1, 1)], (q - qi) * x);
        assert_eq!(rm[(1, 2)], ONE - x);
        assert_eq!(rm[(2, 2)], q - qi);
        assert_eq!(rm[(3, 3)], q * x - qi);
        // Ř = b − x b⁻¹ since λ₁λ₂ = −1
        let via_b = build_r_from_b(&spec, x, None).unwrap();
        assert!(via_b.distance(&rm) < 1e-14);
    }

    #[test]
    fn six_theta_form_equals_closed_form() {
        let (g, th) = (0.5, 0.7);
        let spec = FamilySpec::new(Family::SixNonStd).with_gamma(g);
        let p = SpectralPoint::theta(th, ThetaConvention::Half);
        let rm = build_r(&spec, &p, None).unwrap().r;
        assert!(rm.distance(&six_theta_form(g, th)) < 1e-14);
    }

    #[test]
    fn eight2_closed_form_entries() {
        let spec = FamilySpec::new(Family::EightII).with_t(1.7).with_phi(0.3);
        let x = C64::from_polar(1.0, 0.8);
        let rm = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
        let (t, z) = (r(1.7), spec.z());
        assert_eq!(rm[(0, 0)], 2.0 - t * (ONE - x));
        assert_eq!(rm[(3, 3)], 2.0 * x + t * (ONE - x));
        assert_eq!(rm[(0, 3)], spec.q * (ONE - x));
        assert_eq!(rm[(1, 2)], z * (ONE - x));
        assert_eq!(rm[(1, 1)], ONE + x);
        assert!(build_r_from_b(&spec, x, None).unwrap().distance(&rm) < 1e-13);
    }

    #[test]
    fn first_ordering_collapses_to_two_eigenvalue_form() {
        for sign in [Sign::Plus, Sign::Minus] {
            let spec = spec_iii(2.3, sign);
            let b = build_b(&spec).unwrap();
            let x = c(0.3, 0.5);
            let l = EigOrdering::First.arrange(spec.t);
            assert!((l[0] + l[1] + l[2] + l[0] * l[2] / l[1]).norm() < 1e-14);
            let three = yb_three(&b, l, x).unwrap();
            let two = &b + &b.inverse().unwrap().scale(x * (ONE - spec.t * spec.t));
            assert!(three.distance(&two.scale(-(x - ONE))) < 1e-13);
            let closed = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
            assert!(closed.distance(&two) < 1e-13);
        }
    }

    #[test]
    fn second_ordering_flips_the_inverse_term() {
        let spec = spec_iii(-1.8, Sign::Plus);
        let b = build_b(&spec).unwrap();
        let x = c(-0.4, 0.9);
        let three = yb_three(&b, EigOrdering::Second.arrange(spec.t), x).unwrap();
        let two = &b - &b.inverse().unwrap().scale(x * (ONE - spec.t * spec.t));
        assert!(three.distance(&two.scale(-(x - ONE))) < 1e-13);
        let closed = build_r(&spec, &SpectralPoint::X(x), Some(EigOrdering::Second)).unwrap().r;
        assert!(closed.distance(&two) < 1e-13);
    }

    #[test]
    fn third_ordering_is_proportional_to_eight4() {
        for sign in [Sign::Plus, Sign::Minus] {
            let spec = FamilySpec::new(Family::EightIV).with_t(0.6).with_phi(-0.4).with_sign(sign);
            let x = C64::from_polar(1.0, 1.3);
            let three = build_r_from_b(&spec, x, None).unwrap();
            let closed = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
            let (_, resid) = three.proportionality(&closed);
            assert!(resid < 1e-13);
        }
    }

    #[test]
    fn yb_three_at_one_is_scalar() {
        let spec = FamilySpec::new(Family::EightIV).with_t(1.9);
        let b = build_b(&spec).unwrap();
        let l = EigOrdering::Third.arrange(spec.t);
        let r1 = yb_three(&b, l, ONE).unwrap();
        let sum = l[0] + l[1] + l[2] + l[0] * l[2] / l[1];
        assert!(r1.distance(&CMat::identity(4).scale(sum)) < 1e-13);
    }

    #[test]
    fn yb_three_rejects_bad_spectra() {
        let b = build_b(&FamilySpec::new(Family::EightIII).with_t(2.0)).unwrap();
        assert!(matches!(
            yb_three(&b, [r(3.0), ZERO, r(1.0)], ONE),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            yb_three(&b, [r(3.0), r(3.0), r(1.0)], ONE),
            Err(Error::DegenerateSpectrum(..))
        ));
        assert!(matches!(
            yb_three(&b, [r(3.0), r(2.0), r(5.0)], ONE),
            Err(Error::NotAnnihilated(_))
        ));
    }

    #[test]
    fn singular_b_names_parameter_point() {
        let spec = FamilySpec::new(Family::EightII).with_t(1.0);
        let err = build_r_from_b(&spec, r(0.5), None).unwrap_err();
        assert!(matches!(err, Error::Singular { .. }));
        assert!(err.to_string().contains("t=1"), "{err}");
    }

    #[test]
    fn ordering_validation() {
        let six = FamilySpec::new(Family::SixStd);
        let x = SpectralPoint::X(r(0.5));
        assert!(matches!(
            build_r(&six, &x, Some(EigOrdering::First)),
            Err(Error::Unsupported(_))
        ));
        let e4 = FamilySpec::new(Family::EightIV).with_t(2.0);
        assert!(build_r(&e4, &x, Some(EigOrdering::Third)).is_ok());
        assert!(build_r(&e4, &x, Some(EigOrdering::First)).is_err());
    }

    #[test]
    fn asymptotic_condition() {
        for f in [Family::SixNonStd, Family::SixStd, Family::EightI, Family::BellPhi] {
            let spec = FamilySpec::new(f).with_q(r(1.7)).with_phi(0.4);
            let spec = if f.is_six_vertex() { spec.with_gamma(0.3) } else { spec };
            let r0 = build_r(&spec, &SpectralPoint::X(ZERO), None).unwrap().r;
            assert!(r0.distance(&build_b(&spec).unwrap()) < 1e-12, "{f}");
        }
        for f in [Family::EightII, Family::EightIII, Family::EightIV] {
            let spec = FamilySpec::new(f).with_t(2.2).with_phi(0.4);
            let r0 = build_r(&spec, &SpectralPoint::X(ZERO), None).unwrap().r;
            let (_, resid) = r0.proportionality(&build_b(&spec).unwrap());
            assert!(resid < 1e-12, "{f}");
        }
    }

    #[test]
    fn u_forms_match_scaled_closed_forms() {
        let x = C64::from_polar(1.0, 0.9);
        let u = u_of_x(x).unwrap();
        for f in Family::ALL {
            let spec = FamilySpec::new(f).with_t(1.6).with_phi(0.5).with_sign(Sign::Minus);
            let spec = if f.is_six_vertex() { spec.with_gamma(0.4) } else { spec };
            let k = if f == Family::EightIV { 2 } else { 1 };
            let expect = build_r(&spec, &SpectralPoint::X(x), None)
                .unwrap()
                .r
                .scale(ONE / (ONE + x).powi(k));
            assert!(u_form(&spec, u, None).unwrap().distance(&expect) < 1e-13, "{f}");
        }
    }

    #[test]
    fn u_of_unit_circle_is_minus_i_tan_half_angle() {
        let th = 0.83;
        let u = u_of_x(C64::from_polar(1.0, th)).unwrap();
        assert!((u - (-I * (th / 2.0).tan())).norm() < 1e-15);
        // with x = e^{2iθ₁}: u = −i tan θ₁
        let u = u_of_x(C64::from_polar(1.0, 2.0 * th)).unwrap();
        assert!((u - (-I * th.tan())).norm() < 1e-14);
    }

    #[test]
    fn reparam_basics() {
        let one = SpectralPoint::X(ONE);
        assert_eq!(reparam(&one, View::U, ThetaConvention::Full).unwrap(), SpectralPoint::U(ZERO));
        assert!(matches!(
            reparam(&SpectralPoint::X(-ONE), View::U, ThetaConvention::Full),
            Err(Error::Domain(_))
        ));
        assert!(reparam(&SpectralPoint::X(r(2.0)), View::Theta, ThetaConvention::Half).is_err());
        let u = u_compose(u_of_x(r(0.5)).unwrap(), u_of_x(r(2.0)).unwrap()).unwrap();
        assert!(u.norm() < 1e-15);
        assert!((u_of_x(r(0.5)).unwrap() - r(1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn tangent_convention_matches_bell_theta_form() {
        let (phi, th) = (0.3, 0.6);
        for sign in [Sign::Plus, Sign::Minus] {
            let spec = FamilySpec::new(Family::BellPhi).with_phi(phi).with_sign(sign);
            let p = SpectralPoint::theta(th, ThetaConvention::Tangent);
            let rx = build_r(&spec, &p, None).unwrap().r;
            assert!(rx.scale_re(th.cos()).distance(&bell_theta_form(phi, sign, th)) < 1e-14);
        }
    }

    #[test]
    fn g_form_is_canonical_over_g1() {
        let spec = FamilySpec::new(Family::EightIV).with_t(0.4).with_phi(0.2);
        let x = C64::from_polar(1.0, 2.1);
        let gform = eight4_g_form(&spec, x).unwrap();
        let (g1, g2) = g_factors(spec.t, x);
        let g = g2 / g1;
        assert!((gform[(1, 1)] - (ONE + x) * g).norm() < 1e-14);
        assert!((gform[(0, 0)] - spec.t * (ONE + x)).norm() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn x_round_trips_through_views(a in -3.0f64..3.0, rad in 0.2f64..3.0) {
            let x = C64::from_polar(rad, a);
            prop_assume!((x + ONE).norm() > 1e-3);
            let p = SpectralPoint::X(x);
            let back = reparam(&reparam(&p, View::U, ThetaConvention::Full).unwrap(), View::X, ThetaConvention::Full).unwrap();
            prop_assert!((back.x().unwrap() - x).norm() < 1e-12 * (1.0 + rad));
            let unit = SpectralPoint::X(C64::from_polar(1.0, a));
            for conv in [ThetaConvention::Half, ThetaConvention::Full] {
                let th = reparam(&unit, View::Theta, conv).unwrap();
                prop_assert!((th.x().unwrap() - unit.x().unwrap()).norm() < 1e-13);
            }
        }

        #[test]
        fn u_composition_law(a in -3.0f64..3.0, ra in 0.3f64..3.0, b in -3.0f64..3.0, rb in 0.3f64..3.0) {
            let (x, y) = (C64::from_polar(ra, a), C64::from_polar(rb, b));
            prop_assume!((x + ONE).norm() > 1e-2 && (y + ONE).norm() > 1e-2 && (x * y + ONE).norm() > 1e-2);
            let lhs = u_of_x(x * y).unwrap();
            let rhs = u_compose(u_of_x(x).unwrap(), u_of_x(y).unwrap()).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
        }

        #[test]
        fn yb_two_is_affine_in_x(seed in any::<u64>(), fi in 0usize..4) {
            let fam = [Family::SixNonStd, Family::SixStd, Family::EightI, Family::EightII][fi];
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(fam, &mut rng);
            let b = build_b(&spec).unwrap();
            let ev = eigenvalues_of(&spec).unwrap();
            let (x1, x2) = (sampling::generic_x(&mut rng), sampling::generic_x(&mut rng));
            let f = |x| yb_two(&b, ev[0], ev[1], x).unwrap();
            let lhs = &f(x1) + &f(x2);
            let rhs = &f(x1 + x2) + &b;
            prop_assert!(lhs.distance(&rhs) < 1e-12 * (1.0 + lhs.max_abs()));
        }

        #[test]
        fn closed_forms_agree_with_baxterization(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let x = sampling::generic_x(&mut rng);
            let closed = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
            let via_b = build_r_from_b(&spec, x, None).unwrap();
            let (_, resid) = via_b.proportionality(&closed);
            prop_assert!(resid < 1e-11, "{} resid {}", spec.describe(), resid);
        }
    }
}
