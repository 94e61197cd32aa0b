//! The acceptance battery: eleven criteria, each callable on its own and
//! all of them together as a deterministic JSON report.

use serde::Serialize;

use crate::baxterize::{
    build_r, build_r_from_b, six_theta_form, yb_three, EigOrdering, SpectralPoint, ThetaConvention,
};
use crate::catalog::{bell_b, braid_residual, build_b, Family, FamilySpec, Sign};
use crate::dynamics::{self, DEFAULT_STEP};
use crate::entangle::{self, Classification, ProductFactors};
use crate::gates;
use crate::linalg::{c, kron2, pauli, r, CMat, C64, ONE, ZERO};
use crate::sampling::{self, SampleRng};
use crate::verify::{self, Parametrization};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// Value must be below the tolerance.
    Below,
    /// Value must exceed the tolerance (deliberate failures).
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub expect: Expect,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl CriterionResult {
    fn new(id: u8, name: &str) -> Self {
        CriterionResult {
            id,
            name: name.into(),
            pass: true,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, value: f64, tolerance: f64, expect: Expect) {
        let pass = match expect {
            Expect::Below => value < tolerance,
            Expect::Above => value > tolerance,
        };
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
            expect,
            pass,
        });
    }

    fn below(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.push(name, value, tolerance, Expect::Below);
    }

    fn above(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.push(name, value, tolerance, Expect::Above);
    }

    /// A boolean outcome recorded as 0 (held) or 1 (violated).
    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.below(name, if ok { 0.0 } else { 1.0 }, 0.5);
    }

    /// Records an error as a failed check instead of aborting the battery.
    fn guard(&mut self, name: &str, res: Result<()>) {
        if let Err(e) = res {
            self.pass = false;
            self.checks.push(Check {
                name: format!("{name}: {e}"),
                value: f64::INFINITY,
                tolerance: 0.0,
                expect: Expect::Below,
                pass: false,
            });
        }
    }

    /// One-line summary for logs.
    pub fn summary(&self) -> String {
        let worst = self
            .checks
            .iter()
            .filter(|c| c.expect == Expect::Below)
            .map(|c| c.value)
            .fold(0.0, f64::max);
        format!(
            "criterion {:>2} {:<32} {} ({} checks, worst residual {:.3e})",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            worst
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

fn seeded(seed: u64, id: u64) -> SampleRng {
    sampling::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ id)
}

/// Family points with random complex `q` and `t` as well as domain points.
fn generic_point(f: Family, rng: &mut SampleRng) -> FamilySpec {
    let base = sampling::family_point(f, rng);
    if rng_bool(rng) {
        base.with_q(sampling::generic_x(rng)).with_complex_t(sampling::generic_x(rng) * 1.5)
    } else {
        base
    }
}

fn rng_bool(rng: &mut SampleRng) -> bool {
    sampling::uniform(rng, 0.0, 1.0) < 0.5
}

/// 1. Braid relation for every catalog family at 100 seeded points.
pub fn criterion_braid(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(1, "braid relation");
    let mut rng = seeded(seed, 1);
    for f in Family::ALL {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..100 {
                let spec = generic_point(f, &mut rng);
                worst = worst.max(braid_residual(&build_b(&spec)?));
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        cr.below(format!("{f}: max braid residual over 100 points"), worst, 1e-11);
    }
    cr
}

/// 2. QYBE in every applicable parametrization, 50 pairs each.
pub fn criterion_qybe(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(2, "quantum Yang-Baxter equation");
    let mut rng = seeded(seed, 2);
    let tol = 1e-9;
    for f in Family::ALL {
        let mut params = vec![Parametrization::Multiplicative, Parametrization::Rational];
        if ThetaConvention::for_family(f) != ThetaConvention::Tangent {
            params.push(Parametrization::Additive);
        }
        for param in params {
            let mut worst = 0.0f64;
            let res = (|| -> Result<()> {
                for _ in 0..10 {
                    let spec = sampling::family_point(f, &mut rng);
                    let rep = verify::qybe_scan(&spec, None, param, 5, rng_u64(&mut rng), tol)?;
                    worst = worst.max(rep.residual);
                }
                Ok(())
            })();
            cr.guard(&format!("{f} {param:?}"), res);
            cr.below(format!("{f}: {param:?} QYBE, 50 pairs"), worst, tol);
        }
    }
    // the Baxterization formulas themselves, applied to b
    let orderings: [(Family, Option<EigOrdering>); 8] = [
        (Family::SixNonStd, None),
        (Family::SixStd, None),
        (Family::EightI, None),
        (Family::EightII, None),
        (Family::EightIII, Some(EigOrdering::First)),
        (Family::EightIII, Some(EigOrdering::Second)),
        (Family::EightIV, Some(EigOrdering::Third)),
        (Family::BellPhi, None),
    ];
    for (f, ord) in orderings {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..50 {
                let spec = sampling::family_point(f, &mut rng);
                let builder = move |x: C64| build_r_from_b(&spec, x, ord);
                let (x, y) = (sampling::generic_x(&mut rng), sampling::generic_x(&mut rng));
                worst = worst.max(verify::qybe_residual(&builder, x, y)?);
            }
            Ok(())
        })();
        let label = match ord {
            Some(o) => format!("{f}: Baxterized b ({o:?} ordering)"),
            None => format!("{f}: Baxterized b"),
        };
        cr.guard(&label, res);
        cr.below(label, worst, tol);
    }
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let g = sampling::uniform(&mut rng, 0.1, 1.5);
        let f = move |th: f64| Ok(six_theta_form(g, th));
        let (a, b) = (sampling::angle(&mut rng), sampling::angle(&mut rng));
        worst = worst.max(verify::qybe_residual_additive(&f, a, b).unwrap_or(f64::INFINITY));
    }
    cr.below("six-nonstd trigonometric form: additive QYBE", worst, tol);
    cr
}

fn rng_u64(rng: &mut SampleRng) -> u64 {
    (sampling::uniform(rng, 0.0, 1.0) * 2f64.powi(53)) as u64
}

/// 3. `Ř(0) = b` and `Ř(1) ∝ 1` for the three-eigenvalue formula.
pub fn criterion_asymptotics(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(3, "asymptotic conditions");
    let mut rng = seeded(seed, 3);
    for f in Family::ALL {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..20 {
                let spec = sampling::family_point(f, &mut rng);
                let r0 = build_r(&spec, &SpectralPoint::X(ZERO), None)?.r;
                let b = build_b(&spec)?;
                let d = if f == Family::EightIV {
                    r0.proportionality(&b).1
                } else {
                    r0.distance(&b)
                };
                worst = worst.max(d);
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        let what = if f == Family::EightIV { "R(0) proportional to b" } else { "R(0) = b" };
        cr.below(format!("{f}: {what}"), worst, 1e-12);
    }
    for (f, ord) in [
        (Family::EightIII, EigOrdering::First),
        (Family::EightIII, EigOrdering::Second),
        (Family::EightIV, EigOrdering::Third),
    ] {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..20 {
                let spec = sampling::family_point(f, &mut rng);
                let l = ord.arrange(spec.t);
                let sum = l[0] + l[1] + l[2] + l[0] * l[2] / l[1];
                if sum.norm() < 1e-6 {
                    continue;
                }
                let r1 = yb_three(&build_b(&spec)?, l, ONE)?;
                worst = worst.max(r1.scalar_residual() / r1.frobenius_norm());
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        cr.below(format!("{f}: yb_three R(1) proportional to 1 ({ord:?})"), worst, 1e-12);
    }
    cr
}

/// The deliberately off-domain point of each family.
pub fn off_domain_point(f: Family) -> (FamilySpec, C64) {
    let spec = FamilySpec::new(f);
    match f {
        Family::SixNonStd | Family::SixStd => (spec.with_q(C64::new(0.4, 0.3).exp()), C64::from_polar(1.0, 0.8)),
        Family::EightI => (spec.with_phi(0.3), c(0.5, 0.5)),
        Family::BellPhi => (spec.with_phi(0.3), c(0.0, 0.5)),
        _ => (spec.with_phi(0.3).with_t(0.5), r(1.5)),
    }
}

/// 4. Unitarity on each domain, ρ against the closed forms, failure off-domain.
pub fn criterion_unitarity(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(4, "unitarity and normalization");
    let mut rng = seeded(seed, 4);
    let mut variants: Vec<(String, Box<dyn Fn(&mut SampleRng) -> FamilySpec>)> = Family::ALL
        .iter()
        .map(|&f| {
            let g: Box<dyn Fn(&mut SampleRng) -> FamilySpec> = Box::new(move |rng| sampling::family_point(f, rng));
            (f.name().to_string(), g)
        })
        .collect();
    variants.push((
        "eight3 complex t".into(),
        Box::new(|rng| {
            let base = sampling::family_point(Family::EightIII, rng);
            let t = C64::from_polar(sampling::uniform(rng, 0.3, 2.5), sampling::uniform(rng, -1.2, 1.2));
            base.with_complex_t(t)
        }),
    ));
    variants.push((
        "eight4 imaginary t".into(),
        Box::new(|rng| {
            let base = sampling::family_point(Family::EightIV, rng);
            base.with_complex_t(c(0.0, sampling::uniform(rng, 0.2, 2.5)))
        }),
    ));
    for (name, make) in &variants {
        let (mut worst_u, mut worst_rho) = (0.0f64, 0.0f64);
        let mut formulas = std::collections::BTreeSet::new();
        let res = (|| -> Result<()> {
            for _ in 0..100 {
                let spec = make(&mut rng);
                let p = SpectralPoint::X(sampling::domain_x(&spec, &mut rng));
                let check = verify::unitarity_at(&spec, &p, None)?;
                let nf = verify::rho_formula(&spec, &p)?;
                formulas.insert(nf.formula.to_string());
                worst_u = worst_u.max(check.residual);
                worst_rho = worst_rho.max((check.rho_est - nf.raw()).abs() / check.rho_est);
            }
            Ok(())
        })();
        cr.guard(name, res);
        cr.below(format!("{name}: unitarity residual, 100 domain points"), worst_u, 1e-10);
        cr.below(format!("{name}: relative gap to closed-form rho"), worst_rho, 1e-10);
        for fm in formulas {
            cr.notes.push(format!("{name}: rho = {fm}"));
        }
    }
    for f in Family::ALL {
        let (spec, x) = off_domain_point(f);
        let res = verify::unitarity_at(&spec, &SpectralPoint::X(x), None);
        match res {
            Ok(chk) => cr.above(format!("{f}: unitarity fails at off-domain x = {x}"), chk.residual, 1e-3),
            Err(e) => cr.guard(f.name(), Err(e)),
        }
        cr.holds(
            format!("{f}: domain guard rejects x = {x}"),
            spec.check_unitary_domain(x).is_err(),
        );
    }
    cr
}

/// 5. The inverse-unitarity scalar against ρ.
pub fn criterion_compatibility(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(5, "two unitarity conditions");
    let mut rng = seeded(seed, 5);
    for f in [Family::EightII, Family::EightIII, Family::EightIV] {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..20 {
                let spec = sampling::family_point(f, &mut rng);
                let x = sampling::unit_circle(&mut rng);
                let comp = verify::compatibility(&spec, x)?;
                worst = worst.max((comp.inverse_scalar - r(comp.rho)).norm() / comp.rho);
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        cr.below(format!("{f}: |R(x)R(1/x) - rho| / rho, real t, |x| = 1"), worst, 1e-10);
    }
    let e1 = FamilySpec::new(Family::EightI).with_phi(0.4);
    match verify::compatibility(&e1, r(2.0)) {
        Ok(comp) => {
            cr.above("eight1 at x = 2: |R(x)R(1/x) - rho|", (comp.inverse_scalar - r(comp.rho)).norm(), 1.0);
            cr.notes.push(format!(
                "eight1 at x = 2: inverse-unitarity scalar {} vs rho {}",
                comp.inverse_scalar.re, comp.rho
            ));
        }
        Err(e) => cr.guard("eight1", Err(e)),
    }
    match verify::compatibility(&e1, ONE) {
        Ok(comp) => cr.below("eight1 at x = 1: compatible", (comp.inverse_scalar - r(comp.rho)).norm(), 1e-12),
        Err(e) => cr.guard("eight1", Err(e)),
    }
    cr
}

fn classify_at(spec: &FamilySpec, x: C64, seed: u64) -> Result<Classification> {
    let rm = build_r(spec, &SpectralPoint::X(x), None)?.r;
    Ok(entangle::classify(&rm, 1000, seed, 1e-8)?.classification)
}

/// 6. Entangling classification and the closed-form `Det(B)`.
pub fn criterion_classification(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(6, "universality classification");
    let mut rng = seeded(seed, 6);
    // entangling points
    for f in Family::ALL {
        let res = (|| -> Result<()> {
            let mut ok = true;
            for _ in 0..5 {
                let spec = sampling::family_point(f, &mut rng);
                let x = sampling::domain_x(&spec, &mut rng);
                ok &= classify_at(&spec, x, seed)? == Classification::Entangling;
            }
            cr.holds(format!("{f}: witness found at 5 generic domain points"), ok);
            Ok(())
        })();
        cr.guard(f.name(), res);
    }
    // excluded points
    let e = |f| FamilySpec::new(f).with_phi(0.7);
    let excluded: Vec<(String, FamilySpec, C64)> = vec![
        ("six-nonstd at x = 1".into(), FamilySpec::new(Family::SixNonStd).with_gamma(0.6), ONE),
        ("six-std at x = 1".into(), FamilySpec::new(Family::SixStd).with_gamma(0.6), ONE),
        ("six-std at q = 1".into(), FamilySpec::new(Family::SixStd).with_q(ONE), C64::from_polar(1.0, 1.2)),
        ("eight1 at u = 0".into(), e(Family::EightI), ONE),
        ("eight2 at x = 1".into(), e(Family::EightII).with_t(2.3), ONE),
        ("eight3 at u = 0".into(), e(Family::EightIII).with_t(1.8), ONE),
        ("eight3 at t = 0".into(), e(Family::EightIII).with_t(0.0), C64::from_polar(1.0, 0.9)),
        ("eight4 at u = 0".into(), e(Family::EightIV).with_t(0.6), ONE),
        ("eight4 at t = 0".into(), e(Family::EightIV).with_t(0.0), C64::from_polar(1.0, 0.9)),
    ];
    for (name, spec, x) in &excluded {
        let res = (|| -> Result<()> {
            let class = classify_at(spec, *x, seed)?;
            cr.holds(format!("{name}: no witness, not entangling"), class == Classification::NotEntangling);
            let p = SpectralPoint::X(*x);
            let mut worst = 0.0f64;
            for _ in 0..20 {
                let fct = entangle::random_product(&mut rng);
                worst = worst.max(entangle::det_b_closed(spec, &p, &fct)?.norm());
            }
            cr.below(format!("{name}: closed-form Det(B) vanishes"), worst, 1e-12);
            Ok(())
        })();
        cr.guard(name, res);
    }
    // q = 1 contrast
    let res = (|| -> Result<()> {
        let x = C64::from_polar(1.0, 0.8);
        let non = classify_at(&FamilySpec::new(Family::SixNonStd).with_q(ONE), x, seed)?;
        cr.holds("six-nonstd at q = 1 remains entangling", non == Classification::Entangling);
        Ok(())
    })();
    cr.guard("q = 1 contrast", res);
    // closed-form Det(B) against apply + det
    for f in Family::ALL {
        let mut worst = 0.0f64;
        let res = (|| -> Result<()> {
            for _ in 0..20 {
                let spec = sampling::family_point(f, &mut rng);
                let p = SpectralPoint::X(sampling::domain_x(&spec, &mut rng));
                let fct = entangle::random_product(&mut rng);
                let gb = entangle::det_b_gauge(&spec, &p)?;
                let direct = entangle::concurrence_det(&entangle::apply(&gb, &fct.state())?);
                let closed = entangle::det_b_closed(&spec, &p, &fct)?;
                // Det is quadratic in B; compare at the scale of a unitary B
                let scale = (gb.frobenius_norm().powi(2) / 4.0).max(1.0);
                worst = worst.max((direct - closed).norm() / scale);
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        cr.below(format!("{f}: closed-form Det(B) vs apply+det, 20 points"), worst, 1e-12);
    }
    // non-entangling loci
    let res = (|| -> Result<()> {
        let p = SpectralPoint::X(r(0.4));
        let e1 = FamilySpec::new(Family::EightI).with_q(ONE);
        let on1 = ProductFactors::new(r(0.3), c(0.2, 0.5), r(0.8), r(0.8));
        cr.holds("eight1 locus d^2 = q^-1 c^2 keeps the product", entangle::nonentangling_locus_check(&e1, &p, &on1, 1e-10)?.on_locus);
        let e3 = FamilySpec::new(Family::EightIII).with_q(ONE).with_t(1.6);
        let on3 = ProductFactors::new(r(0.6), r(0.6), c(0.1, 0.9), r(0.4));
        cr.holds(
            "eight3 locus a = b keeps the product",
            entangle::nonentangling_locus_check(&e3, &SpectralPoint::X(c(0.6, 0.8)), &on3, 1e-10)?.on_locus,
        );
        let off = entangle::random_product(&mut rng);
        cr.holds("eight1 generic product is entangled", !entangle::nonentangling_locus_check(&e1, &p, &off, 1e-10)?.on_locus);
        Ok(())
    })();
    cr.guard("loci", res);
    cr
}

/// 7. Hamiltonians: FD Hermiticity, type I, θ = 0 and t = 1 forms, six-vertex crosscheck.
pub fn criterion_hamiltonians(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(7, "Hamiltonians");
    let mut rng = seeded(seed, 7);
    let fd_tol = 1e-7;
    for f in Family::ALL {
        let (mut herm, mut gap) = (0.0f64, 0.0f64);
        let res = (|| -> Result<()> {
            for _ in 0..10 {
                let spec = sampling::family_point(f, &mut rng);
                let th = sampling::uniform(&mut rng, -1.4, 1.4);
                let chk = dynamics::crosscheck(&spec, th, DEFAULT_STEP, fd_tol)?;
                herm = herm.max(chk.fd.hermiticity_residual());
                gap = gap.max(chk.closed_residual);
            }
            Ok(())
        })();
        cr.guard(f.name(), res);
        cr.below(format!("{f}: FD Hamiltonian Hermiticity"), herm, 1e-9);
        cr.below(format!("{f}: closed form vs FD"), gap, fd_tol);
    }
    // type I: −(i/2)b², the explicit matrix, θ-independence
    let res = (|| -> Result<()> {
        let (mut disp, mut indep, mut xform) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..10 {
            let phi = sampling::angle(&mut rng);
            let sign = sampling::sign(&mut rng);
            let s = sign.value();
            let e = C64::from_polar(1.0, phi);
            let explicit = CMat::from_rows([
                [ZERO, ZERO, ZERO, -e.conj()],
                [ZERO, ZERO, r(-s), ZERO],
                [ZERO, r(s), ZERO, ZERO],
                [e, ZERO, ZERO, ZERO],
            ])
            .scale(c(0.0, 0.5));
            let hp = dynamics::h_pm(phi, sign);
            disp = disp
                .max(hp.distance(&explicit))
                .max(dynamics::h_pm_n_form(phi, sign).distance(&hp))
                .max(dynamics::h_pm_ladder_form(phi, sign).distance(&hp));
            let spec = FamilySpec::new(Family::EightI).with_phi(phi).with_sign(sign);
            for th in [-1.0, 0.2, 0.9] {
                indep = indep.max(dynamics::hamiltonian_fd_theta(&spec, th, DEFAULT_STEP)?.h.distance(&hp));
            }
            for x in [0.5, 1.0, 2.0] {
                let fd = dynamics::hamiltonian_fd(&dynamics::real_x_curve(spec), x, DEFAULT_STEP)?;
                xform = xform.max(fd.distance(&dynamics::h_pm_of_x(phi, sign, x)));
            }
        }
        cr.below("eight1: H = -(i/2) b^2 = explicit matrix = n-vector and ladder forms", disp, 1e-12);
        cr.below("eight1: H(theta) is theta-independent (FD)", indep, fd_tol);
        cr.below("eight1: H(x) = -i b^2 / (1 + x^2) at x = 0.5, 1, 2 (FD)", xform, fd_tol);
        Ok(())
    })();
    cr.guard("eight1", res);
    // θ = 0 and t = 1 forms
    for f in [Family::EightII, Family::EightIII, Family::EightIV] {
        let res = (|| -> Result<()> {
            let (mut g0, mut g1) = (0.0f64, 0.0f64);
            for _ in 0..5 {
                let spec = sampling::family_point(f, &mut rng);
                let fd = dynamics::hamiltonian_fd_theta(&spec, 0.0, DEFAULT_STEP)?.h;
                g0 = g0.max(fd.distance(&dynamics::hamiltonian_theta0(&spec)?));
                let spec1 = spec.with_t(1.0);
                let h_t1 = dynamics::hamiltonian_t1(spec1.q, spec1.sign);
                let th = sampling::uniform(&mut rng, -1.4, 1.4);
                g1 = g1.max(dynamics::hamiltonian_fd_theta(&spec1, th, DEFAULT_STEP)?.h.distance(&h_t1));
                let nform = dynamics::hamiltonian_t1_n_form(spec1.effective_phi(), spec1.sign);
                g1 = g1.max(nform.distance(&h_t1));
            }
            cr.below(format!("{f}: theta = 0 form vs FD"), g0, fd_tol);
            cr.below(format!("{f}: t = 1 form vs FD"), g1, fd_tol);
            Ok(())
        })();
        cr.guard(f.name(), res);
    }
    // six-vertex corner coefficients
    for f in [Family::SixNonStd, Family::SixStd] {
        let res = (|| -> Result<()> {
            let spec = FamilySpec::new(f).with_gamma(0.5);
            let chk = dynamics::crosscheck(&spec, 0.3, DEFAULT_STEP, fd_tol)?;
            cr.below(format!("{f}: corrected closed form (cosh corners) vs FD"), chk.closed_residual, fd_tol);
            cr.notes.push(format!(
                "{f}: the coth-corner variant differs from FD by {:.6e} at gamma = 0.5, theta = 0.3; cosh corners are correct",
                chk.coth_residual
            ));
            Ok(())
        })();
        cr.guard(f.name(), res);
    }
    cr
}

/// 8. `Ř±(θ) = e^{i(π/2−2θ)H±}` and the CNOT-equivalent matrix as an evolution.
pub fn criterion_evolution(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(8, "evolution identities");
    let mut rng = seeded(seed, 8);
    let mut worst = 0.0f64;
    let res = (|| -> Result<()> {
        for _ in 0..50 {
            let spec = FamilySpec::new(Family::EightI)
                .with_phi(sampling::angle(&mut rng))
                .with_sign(sampling::sign(&mut rng));
            worst = worst.max(dynamics::braiding_evolution_check(&spec, sampling::angle(&mut rng))?);
        }
        let xy = kron2(&pauli::sigma_x(), &pauli::sigma_y());
        let r00 = crate::baxterize::bell_theta_form(0.0, Sign::Minus, 0.0);
        let ev = dynamics::evolve(&xy, -std::f64::consts::FRAC_PI_4)?;
        cr.below("R_-(0, 0) = e^{i pi/4 sigma_x sigma_y}", r00.distance(&ev), 1e-12);
        cr.below("R_-(0, 0) = matrix of the direct CNOT factorization", r00.distance(&gates::theorem1_r()), 1e-12);
        Ok(())
    })();
    cr.guard("evolution", res);
    cr.below("R(theta) = e^{i(pi/2 - 2 theta)H}, 50 (theta, phi) points", worst, 1e-10);
    cr
}

/// 9. The two CNOT constructions.
pub fn criterion_cnot(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(9, "CNOT synthesis");
    let mut rng = seeded(seed, 9);
    let t1 = gates::theorem1_decomposition();
    cr.below("direct factorization: M R N = CNOT (raw)", t1.residual, 1e-12);
    let res = (|| -> Result<()> {
        let mut worst = 0.0f64;
        let mut agree = 0.0f64;
        let mut phis = vec![0.0];
        phis.extend((0..9).map(|_| sampling::angle(&mut rng)));
        for phi in phis {
            let ev = gates::cnot_via_evolution(phi)?;
            worst = worst.max(ev.worst_residual());
            agree = agree.max(ev.product.distance(&t1.product));
        }
        cr.below("evolution route = CNOT (raw), 10 values of phi", worst, 1e-11);
        cr.below("evolution route agrees with the direct factorization", agree, 1e-11);
        let alt = gates::cnot_via_conjugation()?;
        cr.below("conjugation route = CNOT (raw)", alt.worst_residual(), 1e-11);
        let ev = gates::cnot_via_evolution(0.0)?;
        let wrong = ev.checks.iter().find(|c| c.diagnostic).map_or(f64::NAN, |c| c.residual);
        cr.notes.push(format!(
            "evolution route with diag(1, i) in place of P_up - i P_down misses CNOT by {wrong:.6}"
        ));
        Ok(())
    })();
    cr.guard("cnot", res);
    cr
}

/// 10. Bell basis from `b±(φ)`.
pub fn criterion_bell(seed: u64) -> CriterionResult {
    let mut cr = CriterionResult::new(10, "Bell basis");
    let mut rng = seeded(seed, 10);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut disp = 0.0f64;
    let mut phis = vec![0.0];
    phis.extend((0..9).map(|_| sampling::angle(&mut rng)));
    for phi in &phis {
        for sign in [Sign::Plus, Sign::Minus] {
            let s = sign.value();
            let e = C64::from_polar(1.0, *phi);
            let expect = [
                [ONE, ZERO, ZERO, -e],
                [ZERO, ONE, r(-s), ZERO],
                [ZERO, r(s), ONE, ZERO],
                [e.conj(), ZERO, ZERO, ONE],
            ];
            for (k, st) in gates::bell_basis(*phi, sign).iter().enumerate() {
                let d: f64 = st
                    .to_array()
                    .iter()
                    .zip(expect[k])
                    .map(|(a, b)| (a - b * h).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                disp = disp.max(d);
            }
        }
    }
    cr.below("b(phi) on |00>,|01>,|10>,|11> matches the explicit Bell states", disp, 1e-12);
    let (mut det, mut orth) = (0.0f64, 0.0f64);
    for sign in [Sign::Plus, Sign::Minus] {
        let states = gates::bell_basis(0.0, sign);
        for (i, a) in states.iter().enumerate() {
            det = det.max((entangle::concurrence_det(a).norm() - 0.5).abs());
            for (j, b) in states.iter().enumerate() {
                let ip: C64 = a.to_array().iter().zip(b.to_array()).map(|(x, y)| x.conj() * y).sum();
                let expect = if i == j { ONE } else { ZERO };
                orth = orth.max((ip - expect).norm());
            }
        }
    }
    cr.below("phi = 0: |Det| = 1/2 for all four states", det, 1e-12);
    cr.below("phi = 0: orthonormal", orth, 1e-12);
    let b0 = bell_b(0.0, Sign::Plus);
    cr.below("b(0) unitary", b0.unitarity_residual(), 1e-12);
    cr
}

/// Criteria 1–10.
pub fn run_core(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_braid(seed),
        criterion_qybe(seed),
        criterion_asymptotics(seed),
        criterion_unitarity(seed),
        criterion_compatibility(seed),
        criterion_classification(seed),
        criterion_hamiltonians(seed),
        criterion_evolution(seed),
        criterion_cnot(seed),
        criterion_bell(seed),
    ]
}

/// 11. Two in-process runs serialize to identical bytes.
pub fn criterion_determinism(seed: u64, first: &[CriterionResult]) -> Result<CriterionResult> {
    let mut cr = CriterionResult::new(11, "determinism");
    let a = serde_json::to_string(first).map_err(|e| Error::Structural(e.to_string()))?;
    let b = serde_json::to_string(&run_core(seed)).map_err(|e| Error::Structural(e.to_string()))?;
    cr.holds("two runs with the same seed give byte-identical JSON", a == b);
    cr.notes.push(format!("{} bytes compared", a.len()));
    Ok(cr)
}

pub fn run(seed: u64) -> Result<SuiteReport> {
    let mut criteria = run_core(seed);
    let det = criterion_determinism(seed, &criteria)?;
    criteria.push(det);
    let pass = criteria.iter().all(|c| c.pass);
    Ok(SuiteReport { seed, pass, criteria })
}
