//! Residual checks: QYBE in multiplicative, additive and rational form,
//! unitarity `Ř(x)Ř†(x̄) = ρ`, the closed-form normalization factors ρ, and
//! the inverse-unitarity scalar `Ř(x)Ř(x⁻¹)`.

use serde::Serialize;

use crate::baxterize::{build_r, g_factors, u_compose, u_form, EigOrdering, SpectralPoint, ThetaConvention};
use crate::catalog::{Family, FamilySpec, DOMAIN_TOL};
use crate::linalg::{complex_pair, kron2, r, CMat, C64, ONE};
use crate::sampling;
use crate::{Error, Result};

fn sites(r: &CMat) -> (CMat, CMat) {
    let id = CMat::identity(2);
    (kron2(r, &id), kron2(&id, r))
}

/// Rescales to `‖Ř‖_F = 2`, the norm of a 4×4 unitary.
fn unit_scale(r: &CMat) -> CMat {
    let n = r.frobenius_norm();
    if n > 0.0 && n.is_finite() {
        r.scale_re(2.0 / n)
    } else {
        r.clone()
    }
}

/// `‖Ř₁(a)Ř₂(m)Ř₁(b) − Ř₂(b)Ř₁(m)Ř₂(a)‖_F` for three already-built matrices.
///
/// The equation is invariant under `Ř(x) → f(x)Ř(x)`, so each factor is
/// first scaled to Frobenius norm 2; the residual does not depend on the
/// free normalization of the formula that produced it.
pub fn ybe_triple_residual(ra: &CMat, rm: &CMat, rb: &CMat) -> f64 {
    let (a1, a2) = sites(&unit_scale(ra));
    let (m1, m2) = sites(&unit_scale(rm));
    let (b1, b2) = sites(&unit_scale(rb));
    (&(&a1 * &m2) * &b1).distance(&(&(&b2 * &m1) * &a2))
}

/// Multiplicative QYBE `Ř₁(x)Ř₂(xy)Ř₁(y) = Ř₂(y)Ř₁(xy)Ř₂(x)`.
pub fn qybe_residual(f: &dyn Fn(C64) -> Result<CMat>, x: C64, y: C64) -> Result<f64> {
    Ok(ybe_triple_residual(&f(x)?, &f(x * y)?, &f(y)?))
}

/// Additive QYBE `Ř₁₂(θ₁)Ř₂₃(θ₁+θ₂)Ř₁₂(θ₂) = Ř₂₃(θ₂)Ř₁₂(θ₁+θ₂)Ř₂₃(θ₁)`.
pub fn qybe_residual_additive(f: &dyn Fn(f64) -> Result<CMat>, t1: f64, t2: f64) -> Result<f64> {
    Ok(ybe_triple_residual(&f(t1)?, &f(t1 + t2)?, &f(t2)?))
}

/// Rational QYBE `Ř₁₂(u)Ř₂₃(w)Ř₁₂(v) = Ř₂₃(v)Ř₁₂(w)Ř₂₃(u)`, `w = (u+v)/(1+uv)`.
pub fn qybe_residual_rational(f: &dyn Fn(C64) -> Result<CMat>, u: C64, v: C64) -> Result<f64> {
    let w = u_compose(u, v)?;
    Ok(ybe_triple_residual(&f(u)?, &f(w)?, &f(v)?))
}

/// Which form of the QYBE a scan exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parametrization {
    Multiplicative,
    Additive,
    Rational,
}

/// The point of a sample set attaining the largest residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SamplePoint {
    Pair {
        #[serde(with = "complex_pair")]
        x: C64,
        #[serde(with = "complex_pair")]
        y: C64,
    },
    Angles {
        theta1: f64,
        theta2: f64,
    },
    Rational {
        #[serde(with = "complex_pair")]
        u: C64,
        #[serde(with = "complex_pair")]
        v: C64,
    },
    Single {
        #[serde(with = "complex_pair")]
        x: C64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    pub worst_case: Option<SamplePoint>,
}

impl ResidualReport {
    fn from_samples(samples: Vec<(f64, SamplePoint, Option<f64>)>, tolerance: f64) -> Self {
        let n = samples.len();
        let worst = samples
            .into_iter()
            .max_by(|a, b| a.0.total_cmp(&b.0));
        let (residual, worst_case, rho) = match worst {
            Some((res, p, rho)) => (res, Some(p), rho),
            None => (0.0, None, None),
        };
        ResidualReport {
            residual,
            tolerance,
            pass: residual < tolerance,
            samples: n,
            rho,
            worst_case,
        }
    }
}

/// Ř as a function of the multiplicative spectral parameter.
pub fn multiplicative_builder(
    spec: FamilySpec,
    ordering: Option<EigOrdering>,
) -> impl Fn(C64) -> Result<CMat> {
    move |x| Ok(build_r(&spec, &SpectralPoint::X(x), ordering)?.r)
}

/// Ř as a function of θ, for families whose θ is additive (`x = e^{2iθ}` or `e^{iθ}`).
pub fn additive_builder(
    spec: FamilySpec,
    ordering: Option<EigOrdering>,
) -> Result<impl Fn(f64) -> Result<CMat>> {
    let conv = ThetaConvention::for_family(spec.family);
    if conv == ThetaConvention::Tangent {
        return Err(Error::Unsupported(format!(
            "{} uses x = tan θ, which is not additive in θ",
            spec.family
        )));
    }
    Ok(move |th| Ok(build_r(&spec, &SpectralPoint::theta(th, conv), ordering)?.r))
}

/// Ř as a function of `u = (1−x)/(1+x)`.
pub fn rational_builder(
    spec: FamilySpec,
    ordering: Option<EigOrdering>,
) -> impl Fn(C64) -> Result<CMat> {
    move |u| u_form(&spec, u, ordering)
}

/// QYBE residuals over `samples` seeded spectral-parameter pairs.
pub fn qybe_scan(
    spec: &FamilySpec,
    ordering: Option<EigOrdering>,
    param: Parametrization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ResidualReport> {
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(samples);
    match param {
        Parametrization::Multiplicative => {
            let f = multiplicative_builder(*spec, ordering);
            for _ in 0..samples {
                let (x, y) = (sampling::generic_x(&mut rng), sampling::generic_x(&mut rng));
                out.push((qybe_residual(&f, x, y)?, SamplePoint::Pair { x, y }, None));
            }
        }
        Parametrization::Additive => {
            let f = additive_builder(*spec, ordering)?;
            for _ in 0..samples {
                let (t1, t2) = (sampling::angle(&mut rng), sampling::angle(&mut rng));
                out.push((
                    qybe_residual_additive(&f, t1, t2)?,
                    SamplePoint::Angles { theta1: t1, theta2: t2 },
                    None,
                ));
            }
        }
        Parametrization::Rational => {
            let f = rational_builder(*spec, ordering);
            while out.len() < samples {
                let (x, y) = (sampling::generic_x(&mut rng), sampling::generic_x(&mut rng));
                let (Ok(u), Ok(v)) = (crate::baxterize::u_of_x(x), crate::baxterize::u_of_x(y)) else {
                    continue;
                };
                if (ONE + u * v).norm() < 1e-6 {
                    continue;
                }
                out.push((qybe_residual_rational(&f, u, v)?, SamplePoint::Rational { u, v }, None));
            }
        }
    }
    Ok(ResidualReport::from_samples(out, tol))
}

/// `ρ_est = Re Tr(Ř Ř†(x̄))/4` and the two-sided residual
/// `‖ŘŘ† − ρ‖ + ‖Ř†Ř − ρ‖`.
pub fn unitarity_residual(r: &CMat, rconj: &CMat) -> Result<(f64, f64)> {
    let prod = r * rconj;
    let rho = prod.trace().re / r.dim() as f64;
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::DegenerateNormalization(rho));
    }
    let id = CMat::identity(r.dim()).scale_re(rho);
    let residual = prod.distance(&id) + (rconj * r).distance(&id);
    Ok((rho, residual))
}

/// `Ř†(x̄)`, obtained by rebuilding the family at conjugated parameters and
/// the conjugated spectral point, then transposing.
pub fn conjugate_partner(spec: &FamilySpec, p: &SpectralPoint, ordering: Option<EigOrdering>) -> Result<CMat> {
    Ok(build_r(&spec.conjugated(), &p.conj(), ordering)?.r.transpose())
}

/// A closed-form normalization factor ρ.
///
/// `gauge` relates it to the raw `build_r` matrix: `ρ_est(build_r) = gauge·ρ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormFactor {
    pub rho: f64,
    pub gauge: f64,
    pub formula: &'static str,
    pub domain_note: String,
}

impl NormFactor {
    /// ρ of the raw `build_r` matrix.
    pub fn raw(&self) -> f64 {
        self.rho * self.gauge
    }
}

/// The closed-form ρ of `spec` at `p`, which must lie in the unitary domain.
pub fn rho_formula(spec: &FamilySpec, p: &SpectralPoint) -> Result<NormFactor> {
    let x = p.x()?;
    spec.check_unitary_domain(x)?;
    let xs = x + x.conj();
    let (t, t2) = (spec.t, spec.t.norm_sqr());
    let nf = |rho: f64, gauge: f64, formula, note: &str| {
        Ok(NormFactor {
            rho,
            gauge,
            formula,
            domain_note: note.to_string(),
        })
    };
    match spec.family {
        Family::SixNonStd | Family::SixStd => {
            if (x.norm() - 1.0).abs() <= DOMAIN_TOL {
                let gamma = spec.q.norm().ln();
                let theta = x.arg() / 2.0;
                let rho = gamma.sinh().powi(2) + theta.sin().powi(2);
                nf(rho, 4.0, "sinh^2(gamma) + sin^2(theta)", "x = e^{2i theta}, q = e^gamma real; raw matrix is 2e^{i theta} times the trigonometric form, gauge 4")
            } else {
                nf((ONE - x).norm_sqr(), 1.0, "|1 - x|^2", "q = +-1 branch, any x")
            }
        }
        Family::EightI => nf(2.0 * (1.0 + x.re * x.re), 1.0, "2(1 + x^2)", "x real, |q| = 1"),
        Family::BellPhi => nf(
            2.0 * (1.0 + x.re * x.re),
            0.5,
            "2(1 + x^2)",
            "x real; b(phi) + x b(phi)^{-1} is the type I matrix over sqrt 2, gauge 1/2",
        ),
        Family::EightII => {
            let z2 = spec.z().norm_sqr();
            let a = 2.0 * (1.0 + z2) + (1.0 - z2) * xs.re;
            let b = 4.0 + (t.re - 1.0).powi(2) * (2.0 - xs.re);
            if (a - b).abs() > 1e-10 * a.abs().max(1.0) {
                return Err(Error::Structural(format!("the two forms of rho disagree: {a} vs {b}")));
            }
            nf(b, 1.0, "4 + (t-1)^2 (2 - x - conj x)", "t real, |q| = 1, |x| = 1")
        }
        Family::EightIII => {
            if t.im.abs() <= DOMAIN_TOL * t.norm() {
                let rho = t.re * t.re * (2.0 - xs.re) + 2.0 + xs.re;
                nf(rho, 1.0, "t^2 (2 - x - conj x) + 2 + x + conj x", "t real, |q| = 1, |x| = 1")
            } else if t.re.abs() <= DOMAIN_TOL * t.norm() {
                Err(Error::Domain(
                    "the complex-t normalization needs cos(arg t) != 0; t is purely imaginary".into(),
                ))
            } else {
                let tan_phi = t.im / t.re;
                let dx = x - x.conj();
                let rho = C64::new(2.0 * (1.0 + t2), 0.0) - C64::new(0.0, tan_phi) * dx * (1.0 + t2)
                    + xs * (1.0 - t2);
                nf(
                    rho.re,
                    1.0,
                    "2(1+|t|^2) - i tan(phi)(x - conj x)(1+|t|^2) + (1-|t|^2)(x + conj x)",
                    "t = |t|e^{i phi}, x on the circle |x - i tan phi| = sec phi",
                )
            }
        }
        Family::EightIV => {
            let (g1, _) = g_factors(t, x);
            let gauge = g1.norm_sqr();
            let real_t = t.im.abs() <= DOMAIN_TOL * t.norm().max(1.0);
            let real_x = x.im.abs() <= DOMAIN_TOL * x.norm().max(1.0);
            let rho_real_t = || 2.0 * (1.0 + t.re * t.re) - (1.0 - t.re * t.re) * xs.re;
            let rho_imag_t = || (1.0 - x.re).powi(2) + t2 * (1.0 + x.re).powi(2);
            if real_t && real_x {
                let (a, b) = (rho_real_t(), rho_imag_t());
                if (a - b).abs() > 1e-10 * a.abs().max(1.0) {
                    return Err(Error::Structural(format!(
                        "real-t and imaginary-t normalizations disagree at the overlap: {a} vs {b}"
                    )));
                }
                nf(a, gauge, "|g2|^2 (both branches agree)", "t and x both real (x = +-1); gauge |g1|^2")
            } else if real_t {
                nf(rho_real_t(), gauge, "|g2|^2 = 2(1+t^2) - (1-t^2)(x + conj x)", "t real, |x| = 1; gauge |g1|^2")
            } else {
                nf(rho_imag_t(), gauge, "|g2|^2 = (1-x)^2 + |t|^2 (1+x)^2", "t imaginary, x real; gauge |g1|^2")
            }
        }
    }
}

/// Unitarity of one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitarityCheck {
    /// `Re Tr(ŘŘ†(x̄))/4` of the raw matrix.
    pub rho_est: f64,
    /// `‖ŘŘ†(x̄) − ρ‖ + ‖Ř†(x̄)Ř − ρ‖`.
    pub pair_residual: f64,
    /// `‖UU† − 1‖` with `U = ρ_est^{−1/2} Ř`.
    pub residual: f64,
    /// Checks that the conjugate rebuild equals the adjoint of the assembled matrix.
    pub rebuild_residual: f64,
}

pub fn unitarity_at(spec: &FamilySpec, p: &SpectralPoint, ordering: Option<EigOrdering>) -> Result<UnitarityCheck> {
    let r = build_r(spec, p, ordering)?.r;
    let rc = conjugate_partner(spec, p, ordering)?;
    let (rho_est, pair_residual) = unitarity_residual(&r, &rc)?;
    let u = r.scale_re(rho_est.sqrt().recip());
    Ok(UnitarityCheck {
        rho_est,
        pair_residual,
        residual: u.unitarity_residual(),
        rebuild_residual: rc.distance(&r.adjoint()) / r.frobenius_norm().max(f64::MIN_POSITIVE),
    })
}

/// Unitarity over `samples` seeded points of the family's domain, with the
/// measured ρ compared against the closed form (relative gap folded into
/// the residual).
pub fn unitarity_scan(
    spec: &FamilySpec,
    ordering: Option<EigOrdering>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ResidualReport> {
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = sampling::domain_x(spec, &mut rng);
        let p = SpectralPoint::X(x);
        let check = unitarity_at(spec, &p, ordering)?;
        let mut res = check.residual;
        if ordering.is_none() {
            let nf = rho_formula(spec, &p)?;
            res = res.max((check.rho_est - nf.raw()).abs() / check.rho_est);
        }
        out.push((res, SamplePoint::Single { x }, Some(check.rho_est)));
    }
    Ok(ResidualReport::from_samples(out, tol))
}

/// `s` with `Ř(x)Ř(x⁻¹) = s·1`.
pub fn inverse_unitarity(f: &dyn Fn(C64) -> Result<CMat>, x: C64) -> Result<C64> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let prod = &f(x)? * &f(ONE / x)?;
    let s = prod.trace() / 4.0;
    let off = prod.scalar_residual();
    if off > 1e-9 * prod.frobenius_norm().max(1.0) {
        return Err(Error::Structural(format!(
            "R(x)R(1/x) is not proportional to the identity (off-scalar part {off:e})"
        )));
    }
    Ok(s)
}

/// Closed form of `Ř(x)Ř(x⁻¹)` for the raw `build_r` matrix.
pub fn inverse_unitarity_closed(spec: &FamilySpec, x: C64) -> Result<C64> {
    spec.validate()?;
    let (q, t) = (spec.q, spec.t);
    let xs = x + ONE / x;
    Ok(match spec.family {
        Family::SixNonStd | Family::SixStd => q * q + ONE / (q * q) - xs,
        Family::EightI => xs * 2.0,
        Family::BellPhi => xs,
        Family::EightII => {
            let z2 = spec.z() * spec.z();
            (ONE + z2) * 2.0 + (ONE - z2) * xs
        }
        Family::EightIII => (ONE + t * t) * 2.0 + (ONE - t * t) * xs,
        Family::EightIV => {
            // the bracket is the g-form value; the g1g2 form carries g1(x)g1(1/x)
            let (g1x, _) = g_factors(t, x);
            let (g1i, _) = g_factors(t, ONE / x);
            g1x * g1i * ((ONE + t * t) * 2.0 + (t * t - ONE) * xs)
        }
    })
}

/// Inverse-unitarity scalar against ρ at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Compatibility {
    #[serde(with = "complex_pair")]
    pub inverse_scalar: C64,
    pub rho: f64,
    pub compatible: bool,
}

pub fn compatibility(spec: &FamilySpec, x: C64) -> Result<Compatibility> {
    let f = multiplicative_builder(*spec, None);
    let s = inverse_unitarity(&f, x)?;
    let check = unitarity_at(spec, &SpectralPoint::X(x), None)?;
    let rho = check.rho_est;
    Ok(Compatibility {
        inverse_scalar: s,
        rho,
        compatible: (s - r(rho)).norm() <= 1e-9 * rho.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baxterize::six_theta_form;
    use crate::catalog::{bell_b, Sign};
    use crate::linalg::c;
    use proptest::prelude::*;

    #[test]
    fn identity_builder_has_zero_residual() {
        let f = |_x: C64| Ok(CMat::identity(4));
        assert_eq!(qybe_residual(&f, c(0.3, 1.0), c(2.0, -1.0)).unwrap(), 0.0);
        let g = |_t: f64| Ok(CMat::identity(4));
        assert_eq!(qybe_residual_additive(&g, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn six_nonstd_unit_circle_qybe() {
        let spec = FamilySpec::new(Family::SixNonStd).with_gamma(0.3);
        let f = multiplicative_builder(spec, None);
        let mut rng = sampling::rng(7);
        for _ in 0..50 {
            let (x, y) = (sampling::unit_circle(&mut rng), sampling::unit_circle(&mut rng));
            assert!(qybe_residual(&f, x, y).unwrap() < 1e-10);
        }
    }

    #[test]
    fn eight1_real_line_qybe() {
        let spec = FamilySpec::new(Family::EightI).with_q(c(0.0, 1.0));
        let f = multiplicative_builder(spec, None);
        let mut rng = sampling::rng(8);
        for _ in 0..50 {
            let (x, y) = (sampling::uniform(&mut rng, 0.0, 2.0), sampling::uniform(&mut rng, 0.0, 2.0));
            assert!(qybe_residual(&f, r(x), r(y)).unwrap() < 1e-10);
        }
    }

    #[test]
    fn six_trig_form_additive_qybe() {
        let g = |th: f64| Ok(six_theta_form(0.45, th));
        let mut rng = sampling::rng(9);
        for _ in 0..50 {
            let (a, b) = (sampling::angle(&mut rng), sampling::angle(&mut rng));
            assert!(qybe_residual_additive(&g, a, b).unwrap() < 1e-10);
        }
    }

    #[test]
    fn eight1_rational_qybe() {
        let spec = FamilySpec::new(Family::EightI).with_phi(0.8).with_sign(Sign::Minus);
        let f = rational_builder(spec, None);
        let mut rng = sampling::rng(10);
        for _ in 0..50 {
            let (u, v) = (sampling::generic_x(&mut rng), sampling::generic_x(&mut rng));
            assert!(qybe_residual_rational(&f, u, v).unwrap() < 1e-10);
        }
    }

    #[test]
    fn broken_builder_is_detected() {
        let spec = FamilySpec::new(Family::EightII).with_t(0.7);
        let good = multiplicative_builder(spec, None);
        let bad = |x: C64| {
            let mut m = good(x)?;
            m[(0, 0)] += x * x;
            Ok(m)
        };
        assert!(qybe_residual(&bad, c(0.5, 0.2), c(1.1, -0.3)).unwrap() > 1e-3);
    }

    #[test]
    fn bell_b_is_unitary_with_rho_one() {
        let b = bell_b(0.4, Sign::Plus);
        let (rho, res) = unitarity_residual(&b, &b.adjoint()).unwrap();
        assert!((rho - 1.0).abs() < 1e-14 && res < 1e-12);
    }

    #[test]
    fn six_rho_has_gauge_four() {
        let (g, th) = (0.4, 0.6);
        let spec = FamilySpec::new(Family::SixNonStd).with_gamma(g);
        let p = SpectralPoint::theta(th, ThetaConvention::Half);
        let check = unitarity_at(&spec, &p, None).unwrap();
        let expect = 4.0 * (g.sinh().powi(2) + th.sin().powi(2));
        assert!((check.rho_est - expect).abs() < 1e-13);
        let nf = rho_formula(&spec, &p).unwrap();
        assert!((nf.raw() - expect).abs() < 1e-13);
        assert!(check.residual < 1e-13);
    }

    #[test]
    fn rho_closed_form_examples() {
        let six = FamilySpec::new(Family::SixNonStd).with_gamma(0.0);
        let p = SpectralPoint::theta(std::f64::consts::FRAC_PI_2, ThetaConvention::Half);
        assert!((rho_formula(&six, &p).unwrap().rho - 1.0).abs() < 1e-15);
        let e2 = FamilySpec::new(Family::EightII).with_t(1.0).with_phi(0.3);
        for th in [0.1, 1.0, 2.5] {
            let p = SpectralPoint::theta(th, ThetaConvention::Full);
            assert!((rho_formula(&e2, &p).unwrap().rho - 4.0).abs() < 1e-14);
        }
        let e4 = FamilySpec::new(Family::EightIV).with_t(2.0);
        let p = SpectralPoint::X(c(0.0, 1.0));
        assert!((rho_formula(&e4, &p).unwrap().rho - 10.0).abs() < 1e-14);
    }

    #[test]
    fn rho_formula_rejects_off_domain() {
        let six = FamilySpec::new(Family::SixNonStd).with_gamma(0.3);
        let err = rho_formula(&six, &SpectralPoint::X(r(2.0))).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("|x| must equal 1")));
        let e3 = FamilySpec::new(Family::EightIII).with_complex_t(c(0.0, 2.0));
        assert!(rho_formula(&e3, &SpectralPoint::X(r(0.5))).is_err());
    }

    #[test]
    fn eight2_rho_matches_measurement() {
        let spec = FamilySpec::new(Family::EightII).with_t(2.4).with_phi(-1.1);
        let p = SpectralPoint::X(C64::from_polar(1.0, 0.9));
        let check = unitarity_at(&spec, &p, None).unwrap();
        assert!((check.rho_est - rho_formula(&spec, &p).unwrap().raw()).abs() < 1e-12);
        assert!(check.pair_residual < 1e-11);
    }

    #[test]
    fn eight4_both_rho_branches() {
        // imaginary t, real x
        let spec = FamilySpec::new(Family::EightIV).with_complex_t(c(0.0, 0.8)).with_phi(0.5);
        let p = SpectralPoint::X(r(1.7));
        let check = unitarity_at(&spec, &p, None).unwrap();
        assert!(check.residual < 1e-12);
        assert!((check.rho_est - rho_formula(&spec, &p).unwrap().raw()).abs() < 1e-10 * check.rho_est);
        // overlap x = ±1 with real t
        let spec = FamilySpec::new(Family::EightIV).with_t(1.3);
        for x in [r(1.0), r(-1.0)] {
            let nf = rho_formula(&spec, &SpectralPoint::X(x)).unwrap();
            assert!(nf.formula.contains("both"));
        }
    }

    #[test]
    fn eight3_complex_t_circle() {
        let t = C64::from_polar(1.4, 0.35);
        let spec = FamilySpec::new(Family::EightIII).with_complex_t(t).with_phi(0.2);
        let mut rng = sampling::rng(3);
        for _ in 0..20 {
            let x = sampling::domain_x(&spec, &mut rng);
            let p = SpectralPoint::X(x);
            let check = unitarity_at(&spec, &p, None).unwrap();
            assert!(check.residual < 1e-10);
            assert!((check.rho_est - rho_formula(&spec, &p).unwrap().rho).abs() < 1e-10 * check.rho_est);
        }
    }

    #[test]
    fn six_off_domain_is_not_unitary() {
        let spec = FamilySpec::new(Family::SixNonStd).with_q(C64::from_polar(1.3, 0.4));
        let check = unitarity_at(&spec, &SpectralPoint::X(C64::from_polar(1.0, 0.8)), None).unwrap();
        assert!(check.residual > 1e-3);
    }

    #[test]
    fn inverse_unitarity_examples() {
        let e1 = multiplicative_builder(FamilySpec::new(Family::EightI).with_phi(0.3), None);
        assert!((inverse_unitarity(&e1, ONE).unwrap() - r(4.0)).norm() < 1e-14);
        let six = FamilySpec::new(Family::SixNonStd).with_gamma(0.3);
        let x = C64::from_polar(1.0, 0.5);
        let s = inverse_unitarity(&multiplicative_builder(six, None), x).unwrap();
        let expect = 2.0 * 0.6f64.cosh() - 2.0 * 0.5f64.cos();
        assert!((s - r(expect)).norm() < 1e-13);
        let e3 = multiplicative_builder(FamilySpec::new(Family::EightIII).with_t(1.0), None);
        assert!((inverse_unitarity(&e3, c(0.3, 0.8)).unwrap() - r(4.0)).norm() < 1e-13);
    }

    #[test]
    fn inverse_unitarity_rejects_non_scalar_product() {
        let f = |x: C64| Ok(CMat::diag(&[ONE, x, ONE, ONE]));
        assert!(matches!(inverse_unitarity(&f, r(0.0)), Err(Error::Domain(_))));
        let g = |x: C64| Ok(CMat::diag(&[ONE, x + ONE, ONE, ONE]));
        assert!(matches!(inverse_unitarity(&g, r(2.0)), Err(Error::Structural(_))));
    }

    #[test]
    fn compatibility_of_the_two_unitarity_conditions() {
        let x = C64::from_polar(1.0, 0.7);
        for (f, t) in [(Family::EightII, 1.8), (Family::EightIII, 0.6), (Family::EightIV, 2.2)] {
            let spec = FamilySpec::new(f).with_t(t).with_phi(0.3);
            assert!(compatibility(&spec, x).unwrap().compatible, "{f}");
        }
        let e1 = FamilySpec::new(Family::EightI).with_phi(0.3);
        let c2 = compatibility(&e1, r(2.0)).unwrap();
        assert!(!c2.compatible);
        assert!((c2.inverse_scalar - r(5.0)).norm() < 1e-13 && (c2.rho - 10.0).abs() < 1e-13);
        assert!(compatibility(&e1, ONE).unwrap().compatible);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn conjugate_rebuild_is_adjoint(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng)
                .with_q(sampling::generic_x(&mut rng))
                .with_complex_t(sampling::generic_x(&mut rng));
            let p = SpectralPoint::X(sampling::generic_x(&mut rng));
            let r = build_r(&spec, &p, None).unwrap().r;
            let rc = conjugate_partner(&spec, &p, None).unwrap();
            prop_assert!(rc.distance(&r.adjoint()) < 1e-12 * r.frobenius_norm());
        }

        #[test]
        fn normalized_r_is_unitary_on_domain(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let p = SpectralPoint::X(sampling::domain_x(&spec, &mut rng));
            let check = unitarity_at(&spec, &p, None).unwrap();
            prop_assert!(check.residual < 1e-10);
            let nf = rho_formula(&spec, &p).unwrap();
            prop_assert!((check.rho_est - nf.raw()).abs() < 1e-10 * check.rho_est);
        }

        #[test]
        fn inverse_unitarity_matches_closed_form(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let x = sampling::generic_x(&mut rng);
            let s = inverse_unitarity(&multiplicative_builder(spec, None), x).unwrap();
            let closed = inverse_unitarity_closed(&spec, x).unwrap();
            prop_assert!((s - closed).norm() < 1e-10 * (1.0 + closed.norm()));
        }

        #[test]
        fn qybe_holds_for_every_family(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let rep = qybe_scan(&spec, None, Parametrization::Multiplicative, 3, seed, 1e-9).unwrap();
            prop_assert!(rep.pass, "{} {:?}", spec.describe(), rep);
            let rep = qybe_scan(&spec, None, Parametrization::Rational, 3, seed, 1e-9).unwrap();
            prop_assert!(rep.pass, "{} {:?}", spec.describe(), rep);
        }
    }
}
