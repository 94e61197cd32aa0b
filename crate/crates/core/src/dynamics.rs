//! Hamiltonians `H = i ∂U U†` of the normalized families `U = ρ^{−1/2}Ř`,
//! by finite differences along the unitary curve and in closed form, plus
//! Pauli decompositions and time evolution.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::baxterize::{bell_theta_form, build_r, SpectralPoint};
use crate::catalog::{bell_b, Family, FamilySpec, Sign, DOMAIN_TOL};
use crate::linalg::{expm_hermitian, kron2, pauli, r, CMat, C64, I, ONE, ZERO};
use crate::{Error, Result};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;
/// Steps below this lose too many digits to cancellation.
pub const MIN_STEP: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    FiniteDifference,
    ClosedForm,
}

/// A Hamiltonian together with where it came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hamiltonian {
    pub h: CMat,
    pub source: Source,
    pub family: Family,
    pub describe: String,
    /// Curve parameter: θ for the circle families, the time `2θ` for type I.
    pub time: f64,
    pub hermiticity_residual: f64,
}

impl Hamiltonian {
    fn new(h: CMat, source: Source, spec: &FamilySpec, time: f64) -> Self {
        let hermiticity_residual = h.hermiticity_residual();
        Hamiltonian {
            h,
            source,
            family: spec.family,
            describe: spec.describe(),
            time,
            hermiticity_residual,
        }
    }
}

fn normalized(rm: &CMat) -> Result<CMat> {
    let rho = (rm * &rm.adjoint()).trace().re / rm.dim() as f64;
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::DegenerateNormalization(rho));
    }
    Ok(rm.scale_re(rho.sqrt().recip()))
}

/// `H = i (dU/ds) U†` with `U = ρ^{−1/2}Ř(s)`, using a central difference
/// with one Richardson step (`h` and `h/2`).
///
/// Fails with [`Error::NotHermitian`] when the curve leaves the unitary
/// domain, detected as `‖H − H†‖ > 10h² + 1e−10` (relative to `‖H‖`).
pub fn hamiltonian_fd(curve: &dyn Fn(f64) -> Result<CMat>, s: f64, h: f64) -> Result<CMat> {
    if !(h >= MIN_STEP) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step {h:e} is below {MIN_STEP:e}"
        )));
    }
    let u = |t: f64| normalized(&curve(t)?);
    let central = |h: f64| -> Result<CMat> { Ok((&u(s + h)? - &u(s - h)?).scale_re(0.5 / h)) };
    let (d1, d2) = (central(h)?, central(h / 2.0)?);
    let d = (&d2.scale_re(4.0) - &d1).scale_re(1.0 / 3.0);
    let ham = (&d * &u(s)?.adjoint()).scale(I);
    let herm = ham.hermiticity_residual();
    if herm > (10.0 * h * h + 1e-10) * ham.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    Ok(ham)
}

/// The unitary curve whose parameter is the family's time variable.
///
/// Six-vertex: `θ ↦ Ř(e^{2iθ})/(2e^{iθ})`. Types II–IV: `θ ↦ Ř(e^{iθ})`.
/// Type I and `b±(φ)`: `τ ↦ cos(τ/2) b±(φ) + sin(τ/2) b±(φ)⁻¹`, i.e.
/// `x = tan(τ/2)`, so that `τ = 2θ` is the time of `Ř±(θ) = e^{i(π/2−2θ)H±}`.
pub fn family_curve(spec: FamilySpec) -> impl Fn(f64) -> Result<CMat> {
    move |s: f64| match spec.family {
        Family::SixNonStd | Family::SixStd => {
            let e = C64::from_polar(1.0, s);
            Ok(build_r(&spec, &SpectralPoint::X(e * e), None)?.r.scale(ONE / (e * 2.0)))
        }
        Family::EightI | Family::BellPhi => Ok(bell_theta_form(spec.effective_phi(), spec.sign, s / 2.0)),
        _ => Ok(build_r(&spec, &SpectralPoint::X(C64::from_polar(1.0, s)), None)?.r),
    }
}

/// The curve `x ↦ Ř(x)` along the real spectral line.
pub fn real_x_curve(spec: FamilySpec) -> impl Fn(f64) -> Result<CMat> {
    move |x: f64| Ok(build_r(&spec, &SpectralPoint::X(r(x)), None)?.r)
}

/// The curve time of the family's θ.
pub fn time_of_theta(family: Family, theta: f64) -> f64 {
    match family {
        Family::EightI | Family::BellPhi => 2.0 * theta,
        _ => theta,
    }
}

fn check_theta_domain(spec: &FamilySpec) -> Result<()> {
    let (q, t) = (spec.q, spec.t);
    match spec.family {
        Family::SixNonStd | Family::SixStd => {
            if q.im.abs() > DOMAIN_TOL * q.norm() {
                return Err(Error::Domain("q must be real on the circle |x| = 1".into()));
            }
        }
        Family::EightI | Family::BellPhi => {}
        _ => {
            if (q.norm() - 1.0).abs() > DOMAIN_TOL {
                return Err(Error::Domain("|q| must equal 1".into()));
            }
            if t.im.abs() > DOMAIN_TOL * t.norm().max(1.0) {
                return Err(Error::Domain("t must be real on the circle |x| = 1".into()));
            }
        }
    }
    Ok(())
}

/// Finite-difference Hamiltonian of the family at θ (see [`family_curve`]).
pub fn hamiltonian_fd_theta(spec: &FamilySpec, theta: f64, h: f64) -> Result<Hamiltonian> {
    spec.validate()?;
    check_theta_domain(spec)?;
    let time = time_of_theta(spec.family, theta);
    let ham = hamiltonian_fd(&family_curve(*spec), time, h)?;
    Ok(Hamiltonian::new(ham, Source::FiniteDifference, spec, time))
}

fn sh_ch(q: C64) -> (f64, f64) {
    // sinh γ and cosh γ for q = ±e^γ
    let q = q.re;
    ((q - 1.0 / q) / 2.0, (q + 1.0 / q) / 2.0)
}

fn six_rho(q: C64, theta: f64) -> Result<f64> {
    let (sh, _) = sh_ch(q);
    let rho = theta.sin().powi(2) + sh * sh;
    if rho <= 1e-14 {
        return Err(Error::DegenerateNormalization(rho));
    }
    Ok(rho)
}

/// The six-vertex `H(θ)` with corner entries `c₀₀, c₃₃` times `sinhγ/ρ`.
fn six_matrix(q: C64, theta: f64, c00: f64, c33: f64) -> Result<CMat> {
    let rho = six_rho(q, theta)?;
    let (sh, _) = sh_ch(q);
    Ok(CMat::from_real_rows([
        [c00, 0.0, 0.0, 0.0],
        [0.0, -sh, 1.0, 0.0],
        [0.0, 1.0, sh, 0.0],
        [0.0, 0.0, 0.0, c33],
    ])
    .scale_re(sh / rho))
}

/// `½ σ_{n₁} ⊗ σ_{n₂}` etc. use the in-plane direction `(cos a, sin a)`.
pub fn sigma_in_plane(angle: f64) -> CMat {
    pauli::along([angle.cos(), angle.sin(), 0.0])
}

fn ladder_terms(q: C64, hop: C64) -> CMat {
    // q σ₊σ₊ + q⁻¹ σ₋σ₋ + hop (σ₊σ₋ + σ₋σ₊)
    let (sp, sm) = (pauli::sigma_plus(), pauli::sigma_minus());
    let a = &kron2(&sp, &sp).scale(q) + &kron2(&sm, &sm).scale(ONE / q);
    &a + &(&kron2(&sp, &sm) + &kron2(&sm, &sp)).scale(hop)
}

fn zz_sum() -> CMat {
    &kron2(&pauli::id2(), &pauli::sigma_z()) + &kron2(&pauli::sigma_z(), &pauli::id2())
}

/// Closed-form `H(θ)`.
///
/// Six-vertex corners are `sinhγ coshγ/ρ` times `(1, −1)` (non-standard)
/// or `(1, 1)` (standard); the variants with `coth γ` corners come
/// from [`hamiltonian_coth`]. Type I and `b±(φ)` give the
/// time-independent `H± = −(i/2) b±(φ)²`.
pub fn hamiltonian_closed(spec: &FamilySpec, theta: f64) -> Result<Hamiltonian> {
    spec.validate()?;
    check_theta_domain(spec)?;
    let (q, t) = (spec.q, spec.t.re);
    let s = spec.sign.value();
    let o = ZERO;
    let h = match spec.family {
        Family::SixNonStd => {
            let (_, ch) = sh_ch(q);
            six_matrix(q, theta, ch, -ch)?
        }
        Family::SixStd => {
            let (_, ch) = sh_ch(q);
            six_matrix(q, theta, ch, ch)?
        }
        Family::EightI | Family::BellPhi => h_pm(spec.effective_phi(), spec.sign),
        Family::EightII => {
            let z = spec.z().re;
            let rho = 4.0 + 4.0 * (t - 1.0).powi(2) * (theta / 2.0).sin().powi(2);
            let m = CMat::from_rows([
                [r(1.0 - t), o, o, q],
                [o, o, r(s * z), o],
                [o, r(s * z), o, o],
                [ONE / q, o, o, r(t - 1.0)],
            ]);
            &CMat::identity(4).scale_re(-0.5) + &m.scale_re(2.0 / rho)
        }
        Family::EightIII => {
            let rho = 4.0 + 4.0 * (t * t - 1.0) * (theta / 2.0).sin().powi(2);
            if rho <= 1e-14 {
                return Err(Error::DegenerateNormalization(rho));
            }
            let m = CMat::from_rows([
                [o, o, o, q],
                [o, o, r(s), o],
                [o, r(s), o, o],
                [ONE / q, o, o, o],
            ]);
            &CMat::identity(4).scale_re(-0.5) + &m.scale_re(2.0 * t / rho)
        }
        Family::EightIV => {
            let (c1, c2) = (2.0 * (1.0 + t * t), 2.0 * (1.0 - t * t) * theta.cos());
            let (g1, g2) = (c1 + c2, c1 - c2);
            let rho = g1 * g2;
            if rho.abs() <= 1e-14 {
                return Err(Error::DegenerateNormalization(rho));
            }
            let m = CMat::from_rows([
                [r(g2), o, o, q * g1],
                [o, r(g1), r(s * g2), o],
                [o, r(s * g2), r(g1), o],
                [r(g1) / q, o, o, r(g2)],
            ]);
            &CMat::identity(4).scale_re(-1.0) + &m.scale_re(2.0 * t / rho)
        }
    };
    Ok(Hamiltonian::new(h, Source::ClosedForm, spec, time_of_theta(spec.family, theta)))
}

/// The six-vertex Hamiltonians with `coth γ` in place of `cosh γ` in the
/// corners, which do not match finite differences. Other families return the closed form.
pub fn hamiltonian_coth(spec: &FamilySpec, theta: f64) -> Result<Hamiltonian> {
    let q = spec.q;
    let h = match spec.family {
        Family::SixNonStd | Family::SixStd => {
            check_theta_domain(spec)?;
            let (sh, ch) = sh_ch(q);
            let coth = ch / sh;
            let c33 = if spec.family == Family::SixNonStd { -coth } else { coth };
            six_matrix(q, theta, coth, c33)?
        }
        _ => return hamiltonian_closed(spec, theta),
    };
    Ok(Hamiltonian::new(h, Source::ClosedForm, spec, theta))
}

/// `H± = −(i/2) b±(φ)²`.
pub fn h_pm(phi: f64, sign: Sign) -> CMat {
    let b = bell_b(phi, sign);
    (&b * &b).scale(c_im(-0.5))
}

fn c_im(v: f64) -> C64 {
    C64::new(0.0, v)
}

/// `H±(x) = −(i/(1+x²)) b±²` along the real line.
pub fn h_pm_of_x(phi: f64, sign: Sign, x: f64) -> CMat {
    let b = bell_b(phi, sign);
    (&b * &b).scale(c_im(-1.0 / (1.0 + x * x)))
}

/// `n̂₁ = (cos((π+φ)/2), sin((π+φ)/2))`, `n̂₂ = (cos(φ/2), sin(φ/2))`:
/// `H₊ = ½σ_{n₁}⊗σ_{n₂}`, `H₋ = ½σ_{n₂}⊗σ_{n₁}`.
pub fn h_pm_n_form(phi: f64, sign: Sign) -> CMat {
    let n1 = sigma_in_plane((std::f64::consts::PI + phi) / 2.0);
    let n2 = sigma_in_plane(phi / 2.0);
    match sign {
        Sign::Plus => kron2(&n1, &n2).scale_re(0.5),
        Sign::Minus => kron2(&n2, &n1).scale_re(0.5),
    }
}

/// `H± = (i/2)(−e^{−iφ}σ₊σ₊ + e^{iφ}σ₋σ₋ ∓ σ₊σ₋ ± σ₋σ₊)`.
pub fn h_pm_ladder_form(phi: f64, sign: Sign) -> CMat {
    let (sp, sm) = (pauli::sigma_plus(), pauli::sigma_minus());
    let s = sign.value();
    let m = &(&kron2(&sp, &sp).scale(-C64::from_polar(1.0, -phi)) + &kron2(&sm, &sm).scale(C64::from_polar(1.0, phi)))
        + &(&kron2(&sp, &sm).scale_re(-s) + &kron2(&sm, &sp).scale_re(s));
    m.scale(c_im(0.5))
}

/// The θ = 0 Hamiltonians of types II–IV, assembled from Pauli terms.
pub fn hamiltonian_theta0(spec: &FamilySpec) -> Result<CMat> {
    spec.validate()?;
    check_theta_domain(spec)?;
    let (q, t) = (spec.q, spec.t.re);
    let s = spec.sign.value();
    let id = CMat::identity(4);
    match spec.family {
        Family::EightII => {
            let z = spec.z().re;
            Ok(&(&ladder_terms(q, r(s * z)).scale_re(0.5) - &id.scale_re(0.5)) + &zz_sum().scale_re((1.0 - t) / 4.0))
        }
        Family::EightIII => Ok(&id.scale_re(-0.5) + &ladder_terms(q, r(s)).scale_re(t / 2.0)),
        Family::EightIV => {
            let zz = kron2(&pauli::sigma_z(), &pauli::sigma_z());
            let (sp, sm) = (pauli::sigma_plus(), pauli::sigma_minus());
            let pair = &kron2(&sp, &sp).scale(q) + &kron2(&sm, &sm).scale(ONE / q);
            let hop = &kron2(&sp, &sm) + &kron2(&sm, &sp);
            let inner = &(&id.scale_re(t * t + 1.0) + &zz.scale_re(t * t - 1.0))
                + &(&pair.scale_re(2.0) + &hop.scale_re(2.0 * s * t * t));
            Ok(&id.scale_re(-1.0) + &inner.scale_re(1.0 / (4.0 * t)))
        }
        f => Err(Error::Unsupported(format!("no θ = 0 Hamiltonian for family {f}"))),
    }
}

/// The `t = 1` Hamiltonian `½[−1 + qσ₊σ₊ + q⁻¹σ₋σ₋ ± (σ₊σ₋ + σ₋σ₊)]`.
pub fn hamiltonian_t1(q: C64, sign: Sign) -> CMat {
    (&ladder_terms(q, r(sign.value())) - &CMat::identity(4)).scale_re(0.5)
}

/// The same `t = 1` Hamiltonian through in-plane directions with `q = e^{−iφ}`:
/// `H₊ = ½(−1 + σ_{n₁}⊗σ_{n₁})`, `H₋ = −½(1 + σ_{n₂}⊗σ_{n₂})` with
/// `n̂₁ = (cos φ/2, sin φ/2)`, `n̂₂ = (cos((π+φ)/2), sin((π+φ)/2))`.
pub fn hamiltonian_t1_n_form(phi: f64, sign: Sign) -> CMat {
    let id = CMat::identity(4);
    match sign {
        Sign::Plus => {
            let n1 = sigma_in_plane(phi / 2.0);
            (&kron2(&n1, &n1) - &id).scale_re(0.5)
        }
        Sign::Minus => {
            let n2 = sigma_in_plane((std::f64::consts::PI + phi) / 2.0);
            (&kron2(&n2, &n2) + &id).scale_re(-0.5)
        }
    }
}

/// The six-vertex Pauli form
/// `(sinhγ/2ρ)[k(1⊗σz + σz⊗1) + (σxσx + σyσy) + sinhγ(1⊗σz − σz⊗1)]`
/// with `k = cothγ` (coth variant) or `coshγ`; non-standard only.
pub fn six_pauli_form(q: C64, theta: f64, corner: f64) -> Result<CMat> {
    let rho = six_rho(q, theta)?;
    let (sh, _) = sh_ch(q);
    let (id, sx, sy, sz) = (pauli::id2(), pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z());
    let xx_yy = &kron2(&sx, &sx) + &kron2(&sy, &sy);
    let diff = &kron2(&id, &sz) - &kron2(&sz, &id);
    let inner = &(&zz_sum().scale_re(corner) + &xx_yy) + &diff.scale_re(sh);
    Ok(inner.scale_re(sh / (2.0 * rho)))
}

/// Pauli coefficients `c_{μν} = Tr(H σμ⊗σν)/4`, `μ, ν ∈ {1, x, y, z}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliDecomp {
    pub c: [[C64; 4]; 4],
}

impl PauliDecomp {
    pub fn key(mu: usize, nu: usize) -> String {
        [pauli::LABELS[mu], pauli::LABELS[nu]].iter().collect()
    }

    /// Coefficient by two-letter key such as `"zx"`.
    pub fn get(&self, key: &str) -> Option<C64> {
        let mut it = key.chars().map(|ch| pauli::LABELS.iter().position(|&l| l == ch));
        match (it.next().flatten(), it.next().flatten(), it.next()) {
            (Some(m), Some(n), None) => Some(self.c[m][n]),
            _ => None,
        }
    }

    pub fn reconstruct(&self) -> CMat {
        let mut h = CMat::zeros(4);
        for mu in 0..4 {
            for nu in 0..4 {
                h = &h + &kron2(&pauli::basis(mu), &pauli::basis(nu)).scale(self.c[mu][nu]);
            }
        }
        h
    }

    /// Keys of the coefficients with modulus above `tol`.
    pub fn support(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        for mu in 0..4 {
            for nu in 0..4 {
                if self.c[mu][nu].norm() > tol {
                    out.push(PauliDecomp::key(mu, nu));
                }
            }
        }
        out
    }
}

impl Serialize for PauliDecomp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [[C64; 4]; 4]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(16))?;
                for mu in 0..4 {
                    for nu in 0..4 {
                        let z = self.0[mu][nu];
                        m.serialize_entry(&PauliDecomp::key(mu, nu), &[z.re, z.im])?;
                    }
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("coeffs", &Coeffs(&self.c))?;
        m.end()
    }
}

pub fn pauli_decompose(h: &CMat) -> Result<PauliDecomp> {
    if h.dim() != 4 {
        return Err(Error::Dimension(format!("Pauli decomposition needs 4x4, got {0}x{0}", h.dim())));
    }
    let mut c = [[ZERO; 4]; 4];
    for (mu, row) in c.iter_mut().enumerate() {
        for (nu, v) in row.iter_mut().enumerate() {
            *v = (h * &kron2(&pauli::basis(mu), &pauli::basis(nu))).trace() / 4.0;
        }
    }
    Ok(PauliDecomp { c })
}

/// `U(θ) = e^{−iHθ}`.
pub fn evolve(h: &CMat, theta: f64) -> Result<CMat> {
    expm_hermitian(h, theta)
}

/// `‖Ř±(θ) − e^{i(π/2−2θ)H±}‖` for `Ř±(θ) = cos θ b± + sin θ b±⁻¹` (ρ = 1).
pub fn braiding_evolution_check(spec: &FamilySpec, theta: f64) -> Result<f64> {
    if !matches!(spec.family, Family::EightI | Family::BellPhi) {
        return Err(Error::Unsupported(format!(
            "the braiding evolution applies to eight1 and bell-phi, not {}",
            spec.family
        )));
    }
    let phi = spec.effective_phi();
    let rm = bell_theta_form(phi, spec.sign, theta);
    let u = evolve(&h_pm(phi, spec.sign), 2.0 * theta - std::f64::consts::FRAC_PI_2)?;
    Ok(rm.distance(&u))
}

/// `‖i dψ/ds − H ψ‖` for `ψ(s) = U(s)ψ₀` along the family curve, with
/// the closed-form `H` and a plain central difference (error O(h²)).
pub fn schrodinger_residual(spec: &FamilySpec, theta: f64, psi0: &[C64; 4], h: f64) -> Result<f64> {
    let curve = family_curve(*spec);
    let time = time_of_theta(spec.family, theta);
    let psi = |s: f64| -> Result<Vec<C64>> { Ok(normalized(&curve(s)?)?.apply(psi0)) };
    let (plus, minus, mid) = (psi(time + h)?, psi(time - h)?, psi(time)?);
    let ham = hamiltonian_closed(spec, theta)?.h;
    let hpsi = ham.apply(&mid);
    let res: f64 = (0..4)
        .map(|k| ((plus[k] - minus[k]) * I / (2.0 * h) - hpsi[k]).norm_sqr())
        .sum();
    Ok(res.sqrt())
}

/// Closed form against finite differences at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub describe: String,
    pub theta: f64,
    pub fd: CMat,
    pub closed: CMat,
    pub closed_residual: f64,
    pub coth_residual: f64,
    pub tolerance: f64,
    pub closed_agrees: bool,
    pub coth_agrees: bool,
}

/// Compares [`hamiltonian_closed`] and [`hamiltonian_coth`] against the
/// finite-difference Hamiltonian, which is authoritative.
pub fn crosscheck(spec: &FamilySpec, theta: f64, h: f64, tol: f64) -> Result<CrossCheck> {
    let fd = hamiltonian_fd_theta(spec, theta, h)?.h;
    let closed = hamiltonian_closed(spec, theta)?.h;
    let coth = hamiltonian_coth(spec, theta)?.h;
    let (cr, pr) = (fd.distance(&closed), fd.distance(&coth));
    Ok(CrossCheck {
        describe: spec.describe(),
        theta,
        fd,
        closed,
        closed_residual: cr,
        coth_residual: pr,
        tolerance: tol,
        closed_agrees: cr < tol,
        coth_agrees: pr < tol,
    })
}
