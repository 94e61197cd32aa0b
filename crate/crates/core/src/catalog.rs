//! Braid-group representations (BGR b-matrices) of the six- and
//! eight-vertex families, their eigenvalues and unitary domains, and the
//! eight-vertex braid constraint system.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use crate::linalg::annihilation_residual;
use crate::linalg::{c, complex_pair, kron2, r, CMat, C64, I, ONE, ZERO};
use crate::{Error, Result};

/// Relative tolerance for parameter-domain predicates (real/unit-modulus tests).
pub const DOMAIN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "six-nonstd")]
    SixNonStd,
    #[serde(rename = "six-std")]
    SixStd,
    #[serde(rename = "eight1")]
    EightI,
    #[serde(rename = "eight2")]
    EightII,
    #[serde(rename = "eight3")]
    EightIII,
    #[serde(rename = "eight4")]
    EightIV,
    #[serde(rename = "bell-phi")]
    BellPhi,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::SixNonStd,
        Family::SixStd,
        Family::EightI,
        Family::EightII,
        Family::EightIII,
        Family::EightIV,
        Family::BellPhi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SixNonStd => "six-nonstd",
            Family::SixStd => "six-std",
            Family::EightI => "eight1",
            Family::EightII => "eight2",
            Family::EightIII => "eight3",
            Family::EightIV => "eight4",
            Family::BellPhi => "bell-phi",
        }
    }

    pub fn is_six_vertex(self) -> bool {
        matches!(self, Family::SixNonStd | Family::SixStd)
    }

    /// Families whose b-matrix has three eigenvalues (b of the `w1/w5 = t` branch).
    pub fn is_three_eigenvalue(self) -> bool {
        matches!(self, Family::EightIII | Family::EightIV)
    }

    /// Whether the unitary domain puts x on the real line rather than the unit circle.
    pub fn real_spectral_line(self) -> bool {
        matches!(self, Family::EightI | Family::BellPhi)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::InvalidParameter(format!(
                    "unknown family '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// The ± branch of the eight-vertex b±.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(Error::InvalidParameter(format!(
                "unknown sign '{s}' (expected plus or minus)"
            ))),
        }
    }
}

/// A family together with its parameter point.
///
/// `q` is the deformation parameter (six-vertex, EightI-IV); `t` the
/// eight-vertex parameter of types II-IV (complex, since type III and IV
/// have unitary branches at non-real t); `phi` the phase of `b±(φ)`.
/// Parameters a family does not use are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(with = "complex_pair")]
    pub q: C64,
    #[serde(with = "complex_pair")]
    pub t: C64,
    pub phi: f64,
    pub sign: Sign,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            q: ONE,
            t: ONE,
            phi: 0.0,
            sign: Sign::Plus,
        }
    }

    pub fn with_q(mut self, q: C64) -> Self {
        self.q = q;
        self
    }

    /// `q = e^γ`.
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.q = r(gamma.exp());
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = r(t);
        self
    }

    pub fn with_complex_t(mut self, t: C64) -> Self {
        self.t = t;
        self
    }

    /// Sets `φ`, and `q = e^{−iφ}` so that eight-vertex families share the phase.
    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self.q = C64::from_polar(1.0, -phi);
        self
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// `γ = ln q` (principal branch), meaningful for the six-vertex families.
    pub fn gamma(&self) -> C64 {
        self.q.ln()
    }

    /// `z = +√(t² − 2t + 2)`, principal branch.
    pub fn z(&self) -> C64 {
        (self.t * self.t - 2.0 * self.t + 2.0).sqrt()
    }

    /// Phase of `b(φ)` used by `BellPhi`; for the other eight-vertex families
    /// the phase implied by `q = e^{−iφ}`.
    pub fn effective_phi(&self) -> f64 {
        match self.family {
            Family::BellPhi => self.phi,
            _ => -self.q.arg(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        if !finite(self.q) || !finite(self.t) || !self.phi.is_finite() {
            return Err(Error::NonFinite("family parameters".into()));
        }
        if self.family != Family::BellPhi && self.q.norm() == 0.0 {
            return Err(Error::Domain("q must be nonzero".into()));
        }
        Ok(())
    }

    /// Parameters with every complex quantity conjugated (`q̄`, `t̄`, `−φ`).
    pub fn conjugated(&self) -> FamilySpec {
        FamilySpec {
            q: self.q.conj(),
            t: self.t.conj(),
            phi: -self.phi,
            ..*self
        }
    }

    /// Human-readable parameter point for error messages.
    pub fn describe(&self) -> String {
        match self.family {
            Family::SixNonStd | Family::SixStd | Family::EightI => {
                format!("{} q={}", self.family, fmt_c(self.q))
            }
            Family::BellPhi => format!("{} phi={} sign={}", self.family, self.phi, self.sign.name()),
            _ => format!(
                "{} q={} t={} sign={}",
                self.family,
                fmt_c(self.q),
                fmt_c(self.t),
                self.sign.name()
            ),
        }
    }

    /// Checks that `x` lies in the family's unitary domain, naming the
    /// violated constraint otherwise.
    pub fn check_unitary_domain(&self, x: C64) -> Result<()> {
        self.validate()?;
        let q = self.q;
        let unit_q = (q.norm() - 1.0).abs() <= DOMAIN_TOL;
        let unit_x = (x.norm() - 1.0).abs() <= DOMAIN_TOL;
        let real_x = x.im.abs() <= DOMAIN_TOL * x.norm().max(1.0);
        let real_t = self.t.im.abs() <= DOMAIN_TOL * self.t.norm().max(1.0);
        let imag_t = self.t.re.abs() <= DOMAIN_TOL * self.t.norm().max(1.0);
        let fail = |msg: &str| Err(Error::Domain(format!("{}: {msg}", self.describe())));
        match self.family {
            Family::SixNonStd | Family::SixStd => {
                let real_q = q.im.abs() <= DOMAIN_TOL * q.norm();
                let q_pm1 = (q - ONE).norm() <= DOMAIN_TOL || (q + ONE).norm() <= DOMAIN_TOL;
                if q_pm1 {
                    Ok(())
                } else if !real_q {
                    fail("q must be real")
                } else if !unit_x {
                    fail("|x| must equal 1 (unless q = ±1)")
                } else {
                    Ok(())
                }
            }
            Family::EightI => {
                if !unit_q {
                    fail("|q| must equal 1")
                } else if !real_x {
                    fail("x must be real")
                } else {
                    Ok(())
                }
            }
            Family::BellPhi => {
                if !real_x {
                    fail("x must be real")
                } else {
                    Ok(())
                }
            }
            Family::EightII => {
                if !unit_q {
                    fail("|q| must equal 1")
                } else if !real_t {
                    fail("t must be real")
                } else if !unit_x {
                    fail("|x| must equal 1")
                } else {
                    Ok(())
                }
            }
            Family::EightIII => {
                if !unit_q {
                    fail("|q| must equal 1")
                } else if self.t.norm() == 0.0 {
                    fail("t must be nonzero")
                } else if imag_t {
                    if real_x {
                        Ok(())
                    } else {
                        fail("x must be real for purely imaginary t")
                    }
                } else {
                    // |x|² = 1 + 2 tanφ Im x, φ = arg t
                    let tan_phi = self.t.im / self.t.re;
                    let lhs = x.norm_sqr() - 1.0 - 2.0 * tan_phi * x.im;
                    if lhs.abs() <= DOMAIN_TOL * (1.0 + x.norm_sqr() + tan_phi.abs()) {
                        Ok(())
                    } else if real_t {
                        fail("|x| must equal 1 for real t")
                    } else {
                        fail("x must lie on the circle |x - i tan(arg t)| = sec(arg t)")
                    }
                }
            }
            Family::EightIV => {
                if !unit_q {
                    fail("|q| must equal 1")
                } else if real_t {
                    if unit_x || (real_x && imag_t) {
                        Ok(())
                    } else {
                        fail("|x| must equal 1 for real t")
                    }
                } else if imag_t {
                    if real_x {
                        Ok(())
                    } else {
                        fail("x must be real for purely imaginary t")
                    }
                } else {
                    fail("t must be real or purely imaginary")
                }
            }
        }
    }
}

pub(crate) fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// The b-matrix of the family, in its standard normalization.
pub fn build_b(spec: &FamilySpec) -> Result<CMat> {
    spec.validate()?;
    let (q, t, s) = (spec.q, spec.t, r(spec.sign.value()));
    let qi = ONE / q;
    let o = ZERO;
    let m = match spec.family {
        Family::SixNonStd => CMat::from_rows([
            [q, o, o, o],
            [o, o, ONE, o],
            [o, ONE, q - qi, o],
            [o, o, o, -qi],
        ]),
        Family::SixStd => CMat::from_rows([
            [q, o, o, o],
            [o, o, ONE, o],
            [o, ONE, q - qi, o],
            [o, o, o, q],
        ]),
        Family::EightI => CMat::from_rows([
            [ONE, o, o, q],
            [o, ONE, s, o],
            [o, -s, ONE, o],
            [-qi, o, o, ONE],
        ]),
        Family::EightII => {
            let z = spec.z();
            CMat::from_rows([
                [2.0 - t, o, o, q],
                [o, ONE, s * z, o],
                [o, s * z, ONE, o],
                [qi, o, o, t],
            ])
        }
        Family::EightIII | Family::EightIV => CMat::from_rows([
            [t, o, o, q],
            [o, ONE, s * t, o],
            [o, s * t, ONE, o],
            [qi, o, o, t],
        ]),
        Family::BellPhi => bell_b(spec.phi, spec.sign),
    };
    Ok(m)
}

/// `b±(φ)`, the unitary Bell-type BGR.
pub fn bell_b(phi: f64, sign: Sign) -> CMat {
    let s = r(sign.value());
    let e = C64::from_polar(1.0, -phi);
    let o = ZERO;
    CMat::from_rows([
        [ONE, o, o, e],
        [o, ONE, s, o],
        [o, -s, ONE, o],
        [-e.conj(), o, o, ONE],
    ])
    .scale_re(std::f64::consts::FRAC_1_SQRT_2)
}

/// Eigenvalues of `build_b(spec)` as listed for each family. For types III
/// and IV the list is `[1+t, 1−t, t−1]`, which may contain repeats.
pub fn eigenvalues_of(spec: &FamilySpec) -> Result<Vec<C64>> {
    spec.validate()?;
    let (q, t) = (spec.q, spec.t);
    Ok(match spec.family {
        Family::SixNonStd | Family::SixStd => vec![q, -ONE / q],
        Family::EightI => vec![ONE - I, ONE + I],
        Family::BellPhi => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            vec![c(h, -h), c(h, h)]
        }
        Family::EightII => {
            let z = spec.z();
            vec![ONE + z, ONE - z]
        }
        Family::EightIII | Family::EightIV => vec![ONE + t, ONE - t, t - ONE],
    })
}

/// Eigenvalue list with repeats removed (relative tolerance 1e-12).
pub fn distinct_eigenvalues(spec: &FamilySpec) -> Result<Vec<C64>> {
    let all = eigenvalues_of(spec)?;
    let scale = all.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut out: Vec<C64> = Vec::new();
    for l in all {
        if out.iter().all(|m| (m - l).norm() > 1e-12 * scale) {
            out.push(l);
        }
    }
    Ok(out)
}

/// `‖(b⊗1)(1⊗b)(b⊗1) − (1⊗b)(b⊗1)(1⊗b)‖_F` on the three-site space.
pub fn braid_residual(b: &CMat) -> f64 {
    assert_eq!(b.dim(), 4, "braid residual needs a 4x4 matrix");
    let id = CMat::identity(2);
    let b1 = kron2(b, &id);
    let b2 = kron2(&id, b);
    (&(&b1 * &b2) * &b1).distance(&(&(&b2 * &b1) * &b2))
}

/// The eight entries of the general eight-vertex ansatz
/// `[[w1,0,0,w7],[0,w5,w3,0],[0,w4,w6,0],[w8,0,0,w2]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoltzmannWeights {
    pub w: [[f64; 2]; 8],
}

/// Which branch of the braid constraint system the weights fall in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightBranch {
    /// `w3 = w4`: three independent equations plus `w5 = w6`.
    Symmetric,
    /// `w3 ≠ w4`: forces `w1 = w2 = w5 = w6`, `w1² = w3² = w4²`, `w3² + w7w8 = 0`.
    Antisymmetric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightResiduals {
    pub branch: WeightBranch,
    /// Labelled residuals; all vanish iff the weights solve the braid relation.
    pub residuals: Vec<(String, [f64; 2])>,
}

impl WeightResiduals {
    pub fn max_abs(&self) -> f64 {
        self.residuals
            .iter()
            .map(|(_, [re, im])| re.hypot(*im))
            .fold(0.0, f64::max)
    }
}

impl BoltzmannWeights {
    /// Weights `w1..w8`; all must be nonzero.
    pub fn new(w: [C64; 8]) -> Result<Self> {
        for (i, z) in w.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite(format!("w{}", i + 1)));
            }
            if z.norm() == 0.0 {
                return Err(Error::ZeroWeight(i + 1));
            }
        }
        Ok(BoltzmannWeights {
            w: w.map(|z| [z.re, z.im]),
        })
    }

    pub fn get(&self, i: usize) -> C64 {
        let [re, im] = self.w[i - 1];
        C64::new(re, im)
    }

    /// Reads the weights off a matrix of eight-vertex shape.
    pub fn from_matrix(b: &CMat) -> Result<Self> {
        if b.dim() != 4 {
            return Err(Error::Dimension("eight-vertex weights need a 4x4 matrix".into()));
        }
        let zero_pattern = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)];
        let off = zero_pattern
            .iter()
            .map(|&ij| b[ij].norm())
            .fold(0.0, f64::max);
        if off > 1e-12 * b.max_abs() {
            return Err(Error::Structural("matrix is not of eight-vertex shape".into()));
        }
        BoltzmannWeights::new([
            b[(0, 0)],
            b[(3, 3)],
            b[(1, 2)],
            b[(2, 1)],
            b[(1, 1)],
            b[(2, 2)],
            b[(0, 3)],
            b[(3, 0)],
        ])
    }

    pub fn to_matrix(&self) -> CMat {
        let w = |i| self.get(i);
        let o = ZERO;
        CMat::from_rows([
            [w(1), o, o, w(7)],
            [o, w(5), w(3), o],
            [o, w(4), w(6), o],
            [w(8), o, o, w(2)],
        ])
    }

    /// Residuals of the eight-vertex braid constraints, split by branch.
    pub fn eight_vertex_residuals(&self) -> WeightResiduals {
        let w = |i| self.get(i);
        let scale = (1..=8).map(|i| w(i).norm()).fold(0.0, f64::max);
        let symmetric = (w(3) - w(4)).norm() <= 1e-12 * scale;
        let mut res = vec![
            ("(w5-w6)w7w8".to_string(), (w(5) - w(6)) * w(7) * w(8)),
            ("(w3-w4)(w1-w5)w8".to_string(), (w(3) - w(4)) * (w(1) - w(5)) * w(8)),
            ("(w3-w4)(w2-w5)w7".to_string(), (w(3) - w(4)) * (w(2) - w(5)) * w(7)),
        ];
        let branch = if symmetric {
            res.extend([
                ("w5^2-w7w8".to_string(), w(5) * w(5) - w(7) * w(8)),
                (
                    "w1^2-w3^2-w1w5+w2w5".to_string(),
                    w(1) * w(1) - w(3) * w(3) - w(1) * w(5) + w(2) * w(5),
                ),
                (
                    "w2^2-w3^2+w1w5-w2w5".to_string(),
                    w(2) * w(2) - w(3) * w(3) + w(1) * w(5) - w(2) * w(5),
                ),
            ]);
            WeightBranch::Symmetric
        } else {
            res.extend([
                ("w1-w5".to_string(), w(1) - w(5)),
                ("w2-w5".to_string(), w(2) - w(5)),
                ("w1^2-w3^2".to_string(), w(1) * w(1) - w(3) * w(3)),
                ("w1^2-w4^2".to_string(), w(1) * w(1) - w(4) * w(4)),
                ("w3^2+w7w8".to_string(), w(3) * w(3) + w(7) * w(8)),
            ]);
            WeightBranch::Antisymmetric
        };
        WeightResiduals {
            branch,
            residuals: res.into_iter().map(|(k, z)| (k, [z.re, z.im])).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spectral_projectors, ONE};
    use crate::sampling;
    use proptest::prelude::*;

    fn c_close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!(matches!("eight5".parse::<Family>(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn six_nonstd_at_q_one() {
        let b = build_b(&FamilySpec::new(Family::SixNonStd)).unwrap();
        let expect = CMat::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]);
        assert_eq!(b, expect);
    }

    #[test]
    fn eight1_plus_entries() {
        let q = c(0.6, 0.8);
        let b = build_b(&FamilySpec::new(Family::EightI).with_q(q)).unwrap();
        let o = ZERO;
        let expect = CMat::from_rows([
            [ONE, o, o, q],
            [o, ONE, ONE, o],
            [o, -ONE, ONE, o],
            [-ONE / q, o, o, ONE],
        ]);
        assert!(b.distance(&expect) < 1e-15);
    }

    #[test]
    fn bell_phi_zero_minus_is_theorem_matrix() {
        let b = build_b(&FamilySpec::new(Family::BellPhi).with_sign(Sign::Minus)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = CMat::from_real_rows([
            [h, 0.0, 0.0, h],
            [0.0, h, -h, 0.0],
            [0.0, h, h, 0.0],
            [-h, 0.0, 0.0, h],
        ]);
        assert!(b.distance(&expect) < 1e-15);
    }

    #[test]
    fn q_zero_rejected() {
        let spec = FamilySpec::new(Family::SixStd).with_q(ZERO);
        assert!(matches!(build_b(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn listed_eigenvalues() {
        let q = r(2.0);
        let e = eigenvalues_of(&FamilySpec::new(Family::SixNonStd).with_q(q)).unwrap();
        assert_eq!(e, vec![q, r(-0.5)]);
        let e = eigenvalues_of(&FamilySpec::new(Family::EightI)).unwrap();
        assert_eq!(e, vec![c(1.0, -1.0), c(1.0, 1.0)]);
        let e = eigenvalues_of(&FamilySpec::new(Family::EightIII).with_t(3.0)).unwrap();
        assert_eq!(e, vec![r(4.0), r(-2.0), r(2.0)]);
    }

    #[test]
    fn eight3_at_t_one_collapses() {
        let spec = FamilySpec::new(Family::EightIII).with_t(1.0);
        assert_eq!(distinct_eigenvalues(&spec).unwrap(), vec![r(2.0), r(0.0)]);
        // t = −1 keeps three distinct values, one of them zero
        let spec = FamilySpec::new(Family::EightIII).with_t(-1.0);
        assert_eq!(distinct_eigenvalues(&spec).unwrap().len(), 3);
    }

    #[test]
    fn six_nonstd_projectors_match_closed_form() {
        let q = r(2.0);
        let b = build_b(&FamilySpec::new(Family::SixNonStd).with_q(q)).unwrap();
        let (p1, p2) = spectral_projectors(&b, q, -ONE / q).unwrap();
        let d = 1.0 + 4.0;
        let expect1 = CMat::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0 / d, 2.0 / d, 0.0],
            [0.0, 2.0 / d, 4.0 / d, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        let expect2 = CMat::from_real_rows([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 4.0 / d, -2.0 / d, 0.0],
            [0.0, -2.0 / d, 1.0 / d, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(p1.distance(&expect1) < 1e-15);
        assert!(p2.distance(&expect2) < 1e-15);
    }

    #[test]
    fn eight1_projectors_are_idempotent() {
        let b = build_b(&FamilySpec::new(Family::EightI)).unwrap();
        let (p1, p2) = spectral_projectors(&b, c(1.0, -1.0), c(1.0, 1.0)).unwrap();
        assert!((&p1 * &p1).distance(&p1) < 1e-14);
        assert!((&p2 * &p2).distance(&p2) < 1e-14);
        assert!((&p1 + &p2).distance(&CMat::identity(4)) < 1e-14);
    }

    #[test]
    fn six_nonstd_inverse_residual() {
        let b = build_b(&FamilySpec::new(Family::SixNonStd).with_q(r(2.0))).unwrap();
        let bi = b.inverse().unwrap();
        assert!((&b * &bi).distance(&CMat::identity(4)) < 1e-14);
    }

    #[test]
    fn eight1_inverse_from_cayley_hamilton() {
        // b² − 2b + 2 = 0, so b⁻¹ = (2 − b)/2
        let b = build_b(&FamilySpec::new(Family::EightI).with_q(c(0.6, 0.8))).unwrap();
        let expect = (&CMat::identity(4).scale_re(2.0) - &b).scale_re(0.5);
        assert!(b.inverse().unwrap().distance(&expect) < 1e-14);
    }

    #[test]
    fn braid_residual_identity_and_broken() {
        assert_eq!(braid_residual(&CMat::identity(4)), 0.0);
        let mut m = CMat::identity(4);
        m[(0, 1)] = ONE;
        m[(1, 2)] = ONE;
        assert!(braid_residual(&m) > 0.1);
    }

    #[test]
    fn eight2_weights_satisfy_constraints() {
        let spec = FamilySpec::new(Family::EightII).with_t(1.5);
        let w = BoltzmannWeights::from_matrix(&build_b(&spec).unwrap()).unwrap();
        let res = w.eight_vertex_residuals();
        assert_eq!(res.branch, WeightBranch::Symmetric);
        assert!(res.max_abs() < 1e-12, "{res:?}");
    }

    #[test]
    fn eight1_weights_take_antisymmetric_branch() {
        let w = BoltzmannWeights::new([ONE, ONE, ONE, -ONE, ONE, ONE, ONE, -ONE]).unwrap();
        let res = w.eight_vertex_residuals();
        assert_eq!(res.branch, WeightBranch::Antisymmetric);
        assert!(res.max_abs() < 1e-15);
        assert!(braid_residual(&w.to_matrix()) < 1e-14);
    }

    #[test]
    fn all_unit_weights_are_a_genuine_solution() {
        // The all-ones weights are EightIII at t = 1, q = 1: the symmetric
        // system vanishes and so does the braid residual.
        let w = BoltzmannWeights::new([ONE; 8]).unwrap();
        assert!(w.eight_vertex_residuals().max_abs() == 0.0);
        assert!(braid_residual(&w.to_matrix()) < 1e-15);
    }

    #[test]
    fn non_solution_weights_are_flagged_by_both_checks() {
        let mut w = [ONE; 8];
        w[1] = r(2.0);
        let w = BoltzmannWeights::new(w).unwrap();
        assert!(w.eight_vertex_residuals().max_abs() > 0.5);
        assert!(braid_residual(&w.to_matrix()) > 0.1);
    }

    #[test]
    fn zero_weight_rejected() {
        let mut w = [ONE; 8];
        w[4] = ZERO;
        assert_eq!(BoltzmannWeights::new(w), Err(Error::ZeroWeight(5)));
    }

    #[test]
    fn domain_predicates() {
        let six = FamilySpec::new(Family::SixNonStd).with_gamma(0.3);
        assert!(six.check_unitary_domain(C64::from_polar(1.0, 0.4)).is_ok());
        let err = six.check_unitary_domain(r(2.0)).unwrap_err();
        assert!(err.to_string().contains("|x| must equal 1"));
        let e1 = FamilySpec::new(Family::EightI).with_phi(0.3);
        assert!(e1.check_unitary_domain(r(2.0)).is_ok());
        assert!(e1.check_unitary_domain(I).is_err());
        let e3 = FamilySpec::new(Family::EightIII).with_complex_t(C64::from_polar(1.3, 0.4));
        let tan = 0.4f64.tan();
        let x = c(0.0, tan) + C64::from_polar(1.0 / 0.4f64.cos(), 1.1);
        assert!(e3.check_unitary_domain(x).is_ok());
        assert!(e3.check_unitary_domain(C64::from_polar(1.0, 1.1)).is_err());
        let e4 = FamilySpec::new(Family::EightIV).with_complex_t(c(0.0, 0.7));
        assert!(e4.check_unitary_domain(r(0.3)).is_ok());
        assert!(e4.check_unitary_domain(C64::from_polar(1.0, 1.0)).is_err());
    }

    #[test]
    fn conjugated_spec_conjugates_b() {
        for f in Family::ALL {
            let spec = FamilySpec::new(f)
                .with_q(c(0.3, 1.1))
                .with_complex_t(c(0.7, -0.2))
                .with_sign(Sign::Minus);
            let spec = FamilySpec { phi: 0.9, ..spec };
            let b = build_b(&spec).unwrap();
            let bc = build_b(&spec.conjugated()).unwrap();
            assert!(bc.distance(&b.conj()) < 1e-14, "{f}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn braid_relation_holds_across_catalog(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let b = build_b(&spec).unwrap();
            prop_assert!(braid_residual(&b) < 1e-11);
        }

        #[test]
        fn listed_eigenvalues_annihilate_b(seed in any::<u64>(), fi in 0usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let b = build_b(&spec).unwrap();
            let ev = distinct_eigenvalues(&spec).unwrap();
            prop_assert!(annihilation_residual(&b, &ev) < 1e-10);
        }

        #[test]
        fn bell_b_is_unitary(phi in -10.0f64..10.0, minus in any::<bool>()) {
            let sign = if minus { Sign::Minus } else { Sign::Plus };
            prop_assert!(bell_b(phi, sign).unitarity_residual() < 1e-12);
        }

        #[test]
        fn weights_round_trip(seed in any::<u64>(), fi in 2usize..7) {
            let mut rng = sampling::rng(seed);
            let spec = sampling::family_point(Family::ALL[fi], &mut rng);
            let b = build_b(&spec).unwrap();
            let w = BoltzmannWeights::from_matrix(&b).unwrap();
            prop_assert_eq!(w.to_matrix(), b.clone());
            let scale = b.max_abs().powi(2);
            prop_assert!(w.eight_vertex_residuals().max_abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn eigen_helper_sanity() {
        assert!(c_close(FamilySpec::new(Family::EightII).with_t(1.0).z(), ONE, 1e-15));
    }
}
