//! Two-qubit states, the concurrence determinant and entangling-gate
//! classification (a gate is universal iff it maps some product state to an
//! entangled one).

use serde::{Deserialize, Serialize};

use crate::baxterize::{u_form, SpectralPoint, ThetaConvention};
use crate::catalog::{Family, FamilySpec};
use crate::linalg::{c, complex_pair, r, CMat, C64, I, ONE, ZERO};
use crate::sampling;
use crate::{Error, Result};

/// `Σ a_ij |ij⟩` in basis order `00, 01, 10, 11`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitState {
    #[serde(with = "complex_pair")]
    pub a00: C64,
    #[serde(with = "complex_pair")]
    pub a01: C64,
    #[serde(with = "complex_pair")]
    pub a10: C64,
    #[serde(with = "complex_pair")]
    pub a11: C64,
}

impl TwoQubitState {
    pub fn new(a00: C64, a01: C64, a10: C64, a11: C64) -> Self {
        TwoQubitState { a00, a01, a10, a11 }
    }

    pub fn from_array(v: [C64; 4]) -> Self {
        TwoQubitState::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(&self) -> [C64; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    /// `|ij⟩`.
    pub fn basis(i: usize, j: usize) -> Self {
        let mut v = [ZERO; 4];
        v[2 * i + j] = ONE;
        TwoQubitState::from_array(v)
    }

    /// `(a|0⟩ + b|1⟩) ⊗ (c|0⟩ + d|1⟩)` from one-qubit amplitude pairs.
    pub fn product(first: [C64; 2], second: [C64; 2]) -> Self {
        ProductFactors {
            a: first[0],
            b: first[1],
            c: second[0],
            d: second[1],
        }
        .state()
    }

    pub fn norm(&self) -> f64 {
        self.to_array().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("the zero vector is not a state".into()));
        }
        Ok(self.scale(r(1.0 / n)))
    }

    pub fn scale(&self, s: C64) -> Self {
        TwoQubitState::from_array(self.to_array().map(|z| z * s))
    }

    /// The coefficient matrix `A = [[a00, a01], [a10, a11]]`.
    pub fn coefficient_matrix(&self) -> CMat {
        CMat::from_rows([[self.a00, self.a01], [self.a10, self.a11]])
    }
}

/// One-qubit factors of the product state `a00=ac, a01=ad, a10=bc, a11=bd`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductFactors {
    #[serde(with = "complex_pair")]
    pub a: C64,
    #[serde(with = "complex_pair")]
    pub b: C64,
    #[serde(with = "complex_pair")]
    pub c: C64,
    #[serde(with = "complex_pair")]
    pub d: C64,
}

impl ProductFactors {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        ProductFactors { a, b, c, d }
    }

    pub fn state(&self) -> TwoQubitState {
        let ProductFactors { a, b, c, d } = *self;
        TwoQubitState::new(a * c, a * d, b * c, b * d)
    }

    /// Both one-qubit factors rescaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n1 = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt();
        let n2 = (self.c.norm_sqr() + self.d.norm_sqr()).sqrt();
        if n1 == 0.0 || n2 == 0.0 {
            return Err(Error::InvalidParameter("a product factor is the zero vector".into()));
        }
        Ok(ProductFactors::new(self.a / n1, self.b / n1, self.c / n2, self.d / n2))
    }
}

/// `b_kl = Σ Ř^{kl}_{ij} a_ij`.
pub fn apply(rm: &CMat, psi: &TwoQubitState) -> Result<TwoQubitState> {
    if rm.dim() != 4 {
        return Err(Error::Dimension(format!("a two-qubit gate is 4x4, got {0}x{0}", rm.dim())));
    }
    let v = rm.apply(&psi.to_array());
    Ok(TwoQubitState::from_array([v[0], v[1], v[2], v[3]]))
}

/// `a00·a11 − a01·a10`; zero iff the state is a product.
pub fn concurrence_det(psi: &TwoQubitState) -> C64 {
    psi.a00 * psi.a11 - psi.a01 * psi.a10
}

/// The two-qubit gate that sends `|00⟩→a|00⟩, |01⟩→c|10⟩, |10⟩→d|01⟩, |11⟩→b|11⟩`.
pub fn phase_swap(a: C64, b: C64, c: C64, d: C64) -> CMat {
    let o = ZERO;
    CMat::from_rows([[a, o, o, o], [o, o, d, o], [o, c, o, o], [o, o, o, b]])
}

/// Coefficients of `Det(Ř·(α⊗β))` as a biquadratic form in the factors
/// `α = (a, b)`, `β = (c, d)`.
///
/// Entry `[i][j]` multiplies `a^{2−i} b^i · c^{2−j} d^j`. The gate is
/// non-entangling iff every coefficient vanishes.
pub fn biquadratic_form(rm: &CMat) -> Result<[[C64; 3]; 3]> {
    if rm.dim() != 4 {
        return Err(Error::Dimension(format!("a two-qubit gate is 4x4, got {0}x{0}", rm.dim())));
    }
    // Det(B) = B0 B3 − B1 B2 with B = R v and v_k = α_{k>>1} β_{k&1}
    let mut coeffs = [[ZERO; 3]; 3];
    for k in 0..4 {
        for l in 0..4 {
            let w = rm[(0, k)] * rm[(3, l)] - rm[(1, k)] * rm[(2, l)];
            coeffs[(k >> 1) + (l >> 1)][(k & 1) + (l & 1)] += w;
        }
    }
    Ok(coeffs)
}

/// The deterministic probe set: products of `|0⟩, |1⟩, |±⟩, |±i⟩`.
pub fn probe_states() -> Vec<TwoQubitState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let singles = [
        [ONE, ZERO],
        [ZERO, ONE],
        [r(h), r(h)],
        [r(h), r(-h)],
        [r(h), c(0.0, h)],
        [r(h), c(0.0, -h)],
    ];
    let mut out = Vec::with_capacity(36);
    for s1 in singles {
        for s2 in singles {
            out.push(TwoQubitState::product(s1, s2));
        }
    }
    out
}

/// A seeded random product state with unit-norm factors.
pub fn random_product(rng: &mut sampling::SampleRng) -> ProductFactors {
    loop {
        let f = ProductFactors::new(
            sampling::complex_normal(rng),
            sampling::complex_normal(rng),
            sampling::complex_normal(rng),
            sampling::complex_normal(rng),
        );
        if let Ok(n) = f.normalized() {
            return n;
        }
    }
}

/// A product state whose image under the gate has `|Det| > tol`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub state: TwoQubitState,
    #[serde(with = "complex_pair")]
    pub det: C64,
    /// Index in the search order: probe set first, then random samples.
    pub index: usize,
}

/// Searches the probe set and then `samples` seeded random products.
///
/// `rm` is used as given; callers wanting a scale-free tolerance pass the
/// normalized gate.
pub fn brylinski_witness(rm: &CMat, samples: usize, seed: u64, tol: f64) -> Result<Option<Witness>> {
    let check = |state: TwoQubitState, index: usize| -> Result<Option<Witness>> {
        let det = concurrence_det(&apply(rm, &state)?);
        Ok((det.norm() > tol).then_some(Witness { state, det, index }))
    };
    let probes = probe_states();
    for (i, s) in probes.iter().enumerate() {
        if let Some(w) = check(*s, i)? {
            return Ok(Some(w));
        }
    }
    let mut rng = sampling::rng(seed);
    for k in 0..samples {
        if let Some(w) = check(random_product(&mut rng).state(), probes.len() + k)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Entangling,
    NotEntangling,
    Unknown,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Entangling => "entangling",
            Classification::NotEntangling => "not_entangling",
            Classification::Unknown => "unknown",
        }
    }

    pub fn is_universal(self) -> bool {
        self == Classification::Entangling
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub classification: Classification,
    pub witness: Option<TwoQubitState>,
    /// `Det` at the witness, or the largest `|Det|` seen when there is none.
    #[serde(with = "complex_pair")]
    pub det: C64,
    /// Largest biquadratic coefficient of the normalized gate.
    pub form_norm: f64,
    pub unitarity_residual: f64,
    pub warning: Option<String>,
}

/// Classifies a gate after rescaling it to `Tr(ŘŘ†) = 4`.
///
/// `Entangling` needs a witness with `|Det| > tol`; `NotEntangling` needs
/// every coefficient of the determinant's biquadratic form to be below
/// `tol`, which shows no product state can become entangled.
pub fn classify(rm: &CMat, samples: usize, seed: u64, tol: f64) -> Result<ClassifyReport> {
    if rm.dim() != 4 {
        return Err(Error::Dimension(format!("a two-qubit gate is 4x4, got {0}x{0}", rm.dim())));
    }
    let rho = (rm * &rm.adjoint()).trace().re / 4.0;
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::DegenerateNormalization(rho));
    }
    let g = rm.scale_re(rho.sqrt().recip());
    let unitarity_residual = g.unitarity_residual();
    let warning = (unitarity_residual > 1e-8).then(|| {
        format!("gate is not unitary after normalization (residual {unitarity_residual:.3e})")
    });
    let form_norm = biquadratic_form(&g)?
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let witness = brylinski_witness(&g, samples, seed, tol)?;
    let (classification, witness, det) = match witness {
        Some(w) => (Classification::Entangling, Some(w.state), w.det),
        None => {
            let class = if form_norm <= tol {
                Classification::NotEntangling
            } else {
                Classification::Unknown
            };
            let det = probe_states()
                .iter()
                .map(|s| apply(&g, s).map(|b| concurrence_det(&b)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap_or(ZERO);
            (class, None, det)
        }
    };
    Ok(ClassifyReport {
        classification,
        witness,
        det,
        form_norm,
        unitarity_residual,
        warning,
    })
}

/// The matrix whose action the closed-form `Det(B)` of [`det_b_closed`]
/// describes: `Ř(x)/(2e^{iθ})` for the six-vertex families, the `u`-form
/// otherwise.
pub fn det_b_gauge(spec: &FamilySpec, p: &SpectralPoint) -> Result<CMat> {
    if spec.family.is_six_vertex() {
        let x = p.x()?;
        let rm = crate::baxterize::build_r(spec, &SpectralPoint::X(x), None)?.r;
        Ok(rm.scale(ONE / (x.sqrt() * 2.0)))
    } else {
        u_form(spec, p.u()?, None)
    }
}

/// Closed-form `Det(B)` for `B = Ř·(α⊗β)` on a product state.
pub fn det_b_closed(spec: &FamilySpec, p: &SpectralPoint, f: &ProductFactors) -> Result<C64> {
    spec.validate()?;
    let st = f.state();
    let (a00, a01, a10, a11) = (st.a00, st.a01, st.a10, st.a11);
    let (q, t) = (spec.q, spec.t);
    let qi = ONE / q;
    let s = r(spec.sign.value());
    match spec.family {
        Family::SixNonStd | Family::SixStd => {
            // x = e^{2iθ}: sinθ, e^{iθ}, sinhγ and sinh(γ−iθ) in terms of q and √x
            let x = p.x()?;
            let e = x.sqrt();
            let sin_th = (e - ONE / e) / (I * 2.0);
            let sinh_g = (q - qi) / 2.0;
            if spec.family == Family::SixNonStd {
                Ok(sin_th * (a00 * a11 * sin_th * 2.0 + I * (a01 * a01 * e + a10 * a10 / e) * sinh_g))
            } else {
                let sinh_gt = (q / e - e / q) / 2.0;
                let b00b11 = sinh_gt * sinh_gt * a00 * a11;
                let b01b10 = (sinh_g * sinh_g - sin_th * sin_th) * a01 * a10
                    - I * sin_th * sinh_g * (a01 * a01 * e + a10 * a10 / e);
                Ok(b00b11 - b01b10)
            }
        }
        Family::EightI | Family::BellPhi => {
            let u = p.u()?;
            let d = u * (q * a11 * a11 - qi * a00 * a00 + s * (a01 * a01 - a10 * a10));
            Ok(if spec.family == Family::BellPhi { d / 2.0 } else { d })
        }
        Family::EightII => {
            let u = p.u()?;
            let z = spec.z();
            let b00b11 = (ONE + (2.0 - z * z) * u * u) * a00 * a11
                + u * (qi * (ONE + (ONE - t) * u) * a00 * a00 + q * (ONE + (t - ONE) * u) * a11 * a11);
            let b01b10 = (ONE + z * z * u * u) * a01 * a10 + s * u * z * (a01 * a01 + a10 * a10);
            Ok(b00b11 - b01b10)
        }
        Family::EightIII => {
            let u = p.u()?;
            let b00b11 = (ONE + t * t * u * u) * a00 * a11 + u * t * (q * a11 * a11 + qi * a00 * a00);
            let b01b10 = (ONE + t * t * u * u) * a01 * a10 + s * u * t * (a01 * a01 + a10 * a10);
            Ok(b00b11 - b01b10)
        }
        Family::EightIV => {
            let u = p.u()?;
            let (p1, p2) = ((ONE + t * u) * (ONE + t * u), (u + t) * (u + t));
            let b00b11 = (t * t + u * u) * p1 * a00 * a11 + u * t * p1 * (qi * a00 * a00 + q * a11 * a11);
            let b01b10 = (ONE + t * t * u * u) * p2 * a01 * a10 + s * u * t * p2 * (a01 * a01 + a10 * a10);
            Ok(b00b11 - b01b10)
        }
    }
}

/// Outcome of [`nonentangling_locus_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusCheck {
    pub on_locus: bool,
    /// The factorized locus polynomial at the normalized factors.
    #[serde(with = "complex_pair")]
    pub locus_value: C64,
    /// `Det` of the output state, computed by applying the gate.
    #[serde(with = "complex_pair")]
    pub det: C64,
}

/// The factorized locus on which an otherwise entangling gate keeps a
/// product state unentangled.
///
/// Type I: `(d² ∓ q⁻¹c²)(qb² ± a²)`. Type III: `(a² ∓ qb²)(q⁻¹c² ∓ d²)`.
/// The locus test and the direct `Det` test must agree.
pub fn nonentangling_locus_check(
    spec: &FamilySpec,
    p: &SpectralPoint,
    f: &ProductFactors,
    tol: f64,
) -> Result<LocusCheck> {
    spec.validate()?;
    let u = p.u()?;
    let n = f.normalized()?;
    let (a, b, cc, d) = (n.a, n.b, n.c, n.d);
    let (q, t) = (spec.q, spec.t);
    let qi = ONE / q;
    let s = r(spec.sign.value());
    let (locus_value, lead) = match spec.family {
        Family::EightI => ((d * d - s * qi * cc * cc) * (q * b * b + s * a * a), u),
        Family::EightIII => ((a * a - s * q * b * b) * (qi * cc * cc - s * d * d), u * t),
        other => {
            return Err(Error::Unsupported(format!(
                "no non-entangling locus is known for family {other}"
            )))
        }
    };
    if lead.norm() <= tol {
        return Err(Error::Domain(format!(
            "the gate is not entangling at this point ({} = 0)",
            if spec.family == Family::EightI { "u" } else { "tu" }
        )));
    }
    let det = concurrence_det(&apply(&u_form(spec, u, None)?, &n.state())?);
    let on_locus = locus_value.norm() <= tol;
    let det_zero = det.norm() <= tol * lead.norm().max(1.0);
    if on_locus != det_zero {
        return Err(Error::Structural(format!(
            "locus value {:.3e} and output Det {:.3e} disagree",
            locus_value.norm(),
            det.norm()
        )));
    }
    Ok(LocusCheck {
        on_locus,
        locus_value,
        det,
    })
}

/// The six-vertex spectral point `x = e^{2iθ}`.
pub fn six_theta(theta: f64) -> SpectralPoint {
    SpectralPoint::theta(theta, ThetaConvention::Half)
}
