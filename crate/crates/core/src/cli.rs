//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 when every check passes, 1 when a residual or
//! classification check fails, 2 on usage or domain errors.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::baxterize::{build_r, EigOrdering, SpectralPoint, ThetaConvention};
use crate::catalog::{self, Family, FamilySpec, Sign};
use crate::dynamics::{self, DEFAULT_STEP};
use crate::entangle::{self, Classification};
use crate::gates;
use crate::linalg::{c, C64};
use crate::sampling;
use crate::suite;
use crate::verify::{self, Parametrization, SamplePoint};
use crate::{Error, Result};

/// Tolerance used when comparing finite-difference Hamiltonians.
const FD_TOL: f64 = 1e-7;

#[derive(Parser, Debug)]
#[command(
    name = "yaxter",
    version,
    about = "Yang-Baxterized braid matrices as two-qubit gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Seed for every sampled point.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of sampled points per scan.
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Residual tolerance.
    #[arg(long, global = true, env = "YAXTER_TOL", default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The braid matrix b of a family.
    Catalog {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Emit the eigenvalues instead of the matrix.
        #[arg(long)]
        eigenvalues: bool,
        /// Emit the Boltzmann weights and eight-vertex braid residuals.
        #[arg(long, conflicts_with = "eigenvalues")]
        weights: bool,
    },
    /// The Yang-Baxterized R at one spectral point.
    Build {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum)]
        ordering: Option<OrderingArg>,
    },
    /// Residual checks.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Entangling classification of R at one spectral point.
    Classify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum)]
        ordering: Option<OrderingArg>,
        /// Random product probes after the fixed probe set.
        #[arg(long, default_value_t = 1000)]
        probes: usize,
        /// Exit 1 unless the classification matches.
        #[arg(long, value_enum)]
        expect: Option<ExpectClass>,
    },
    /// The Hamiltonian of the unitary curve through theta.
    Hamiltonian {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = Method::Fd)]
        method: Method,
        /// Finite-difference step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Compare the closed form against finite differences (exit 1 on mismatch).
        #[arg(long)]
        compare: bool,
    },
    /// Time evolution under the closed-form Hamiltonian.
    Evolve {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Evolution time s in U = exp(-i H s).
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        time: f64,
        /// Basis index 0..3 of the initial state for the Schrodinger check.
        #[arg(long, default_value_t = 0)]
        basis: usize,
    },
    /// CNOT synthesis.
    Cnot {
        #[arg(long, value_enum, default_value_t = Route::Theorem1)]
        route: Route,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        phi: f64,
    },
    /// The Bell basis produced by b(phi) from the computational basis.
    Bell {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value = "plus")]
        sign: String,
    },
    /// The full acceptance battery.
    Suite,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Braid relation of b.
    Braid {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Quantum Yang-Baxter equation over seeded pairs.
    Qybe {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum)]
        ordering: Option<OrderingArg>,
        #[arg(long, value_enum, default_value_t = ParamArg::Multiplicative)]
        param: ParamArg,
    },
    /// Unitarity at one point, or over seeded domain points.
    Unitarity {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum)]
        ordering: Option<OrderingArg>,
    },
    /// R(x)R(1/x) = s 1 against its closed form, and against rho on the domain.
    InverseUnitarity {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    First,
    Second,
    Third,
}

impl From<OrderingArg> for EigOrdering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::First => EigOrdering::First,
            OrderingArg::Second => EigOrdering::Second,
            OrderingArg::Third => EigOrdering::Third,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ParamArg {
    Multiplicative,
    Additive,
    Rational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Fd,
    Closed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Theorem1,
    Evolution,
    Conjugation,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExpectClass {
    Entangling,
    NotEntangling,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// six-nonstd, six-std, eight1, eight2, eight3, eight4 or bell-phi.
    #[arg(long)]
    family: String,
    /// Real q.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["q_re", "q_im", "gamma"])]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q_im: Option<f64>,
    /// q = e^gamma.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["q_re", "q_im"])]
    gamma: Option<f64>,
    /// Real t.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["t_re", "t_im"])]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_im: Option<f64>,
    /// Phase; for the eight-vertex families also sets q = e^{-i phi}.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// plus or minus.
    #[arg(long)]
    sign: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct PointArgs {
    /// Real x.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x_re", "x_im", "theta", "u_re", "u_im"])]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta", "u_re", "u_im"])]
    x_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta", "u_re", "u_im"])]
    x_im: Option<f64>,
    /// Angle, mapped to x by the family's convention.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u_re", "u_im"])]
    theta: Option<f64>,
    /// Rational parameter u = (1-x)/(1+x).
    #[arg(long, allow_hyphen_values = true)]
    u_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    u_im: Option<f64>,
}

fn complex_flag(re: Option<f64>, im: Option<f64>) -> Option<C64> {
    match (re, im) {
        (None, None) => None,
        (re, im) => Some(c(re.unwrap_or(0.0), im.unwrap_or(0.0))),
    }
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let family: Family = self.family.parse()?;
        let mut spec = FamilySpec::new(family);
        if let Some(phi) = self.phi {
            spec = spec.with_phi(phi);
        }
        if let Some(q) = self.q {
            spec = spec.with_q(c(q, 0.0));
        } else if let Some(g) = self.gamma {
            spec = spec.with_gamma(g);
        } else if let Some(q) = complex_flag(self.q_re, self.q_im) {
            spec = spec.with_q(q);
        }
        if let Some(t) = self.t {
            spec = spec.with_t(t);
        } else if let Some(t) = complex_flag(self.t_re, self.t_im) {
            spec = spec.with_complex_t(t);
        }
        if let Some(s) = &self.sign {
            spec = spec.with_sign(s.parse::<Sign>()?);
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl PointArgs {
    fn point(&self, family: Family) -> Option<SpectralPoint> {
        if let Some(x) = self.x {
            return Some(SpectralPoint::X(c(x, 0.0)));
        }
        if let Some(x) = complex_flag(self.x_re, self.x_im) {
            return Some(SpectralPoint::X(x));
        }
        if let Some(th) = self.theta {
            return Some(SpectralPoint::theta(th, ThetaConvention::for_family(family)));
        }
        complex_flag(self.u_re, self.u_im).map(SpectralPoint::U)
    }

    fn require(&self, family: Family) -> Result<SpectralPoint> {
        self.point(family).ok_or_else(|| {
            Error::InvalidParameter("a spectral point is required (--x, --x-re/--x-im, --theta or --u-re/--u-im)".into())
        })
    }
}

/// Result of one command: the JSON payload and whether its checks passed.
struct Outcome {
    value: Value,
    pass: bool,
}

impl Outcome {
    fn info(value: impl Serialize) -> Result<Self> {
        Ok(Outcome { value: to_value(value)?, pass: true })
    }

    fn checked(value: impl Serialize, pass: bool) -> Result<Self> {
        Ok(Outcome { value: to_value(value)?, pass })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Structural(format!("serialization failed: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = &cli.run;
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("--tol must be positive, got {}", cfg.tol)));
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("--samples must be positive".into()));
    }
    match &cli.command {
        Command::Catalog { fam, eigenvalues, weights } => {
            let spec = fam.spec()?;
            if *eigenvalues {
                let ev: Vec<[f64; 2]> = catalog::eigenvalues_of(&spec)?.iter().map(|z| [z.re, z.im]).collect();
                return Outcome::info(json!({ "family": spec.family, "eigenvalues": ev }));
            }
            let b = catalog::build_b(&spec)?;
            if *weights {
                let w = catalog::BoltzmannWeights::from_matrix(&b)?;
                let res = w.eight_vertex_residuals();
                let pass = res.max_abs() < cfg.tol * b.frobenius_norm().powi(3).max(1.0);
                return Outcome::checked(json!({ "weights": w, "residuals": res, "max_abs": res.max_abs() }), pass);
            }
            Outcome::info(b)
        }
        Command::Build { fam, point, ordering } => {
            let spec = fam.spec()?;
            let p = point.require(spec.family)?;
            let rm = build_r(&spec, &p, ordering.map(Into::into))?;
            if rm.degenerate {
                eprintln!("note: eigenvalues collapse at {}; the two-eigenvalue formula was used", spec.describe());
            }
            Outcome::info(rm.r)
        }
        Command::Check { what } => check(what, cfg),
        Command::Classify { fam, point, ordering, probes, expect } => {
            let spec = fam.spec()?;
            let p = point.require(spec.family)?;
            let rm = build_r(&spec, &p, ordering.map(Into::into))?.r;
            let report = entangle::classify(&rm, *probes, cfg.seed, cfg.tol)?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            let pass = match expect {
                None => true,
                Some(ExpectClass::Entangling) => report.classification == Classification::Entangling,
                Some(ExpectClass::NotEntangling) => report.classification == Classification::NotEntangling,
            };
            Outcome::checked(report, pass)
        }
        Command::Hamiltonian { fam, theta, method, step, compare } => {
            let spec = fam.spec()?;
            if !(*step > 0.0) {
                return Err(Error::InvalidParameter(format!("--step must be positive, got {step}")));
            }
            let ham = match method {
                Method::Fd => dynamics::hamiltonian_fd_theta(&spec, *theta, *step)?,
                Method::Closed => dynamics::hamiltonian_closed(&spec, *theta)?,
            };
            let pauli = dynamics::pauli_decompose(&ham.h)?;
            let support = pauli.support(cfg.tol);
            if *compare {
                let cc = dynamics::crosscheck(&spec, *theta, *step, FD_TOL)?;
                let pass = cc.closed_agrees;
                return Outcome::checked(
                    json!({ "hamiltonian": ham, "pauli": pauli, "support": support, "crosscheck": cc }),
                    pass,
                );
            }
            Outcome::info(json!({ "hamiltonian": ham, "pauli": pauli, "support": support }))
        }
        Command::Evolve { fam, theta, time, basis } => {
            let spec = fam.spec()?;
            if *basis > 3 {
                return Err(Error::InvalidParameter(format!("--basis must be in 0..=3, got {basis}")));
            }
            let ham = dynamics::hamiltonian_closed(&spec, *theta)?;
            let u = dynamics::evolve(&ham.h, *time)?;
            let mut psi0 = [C64::new(0.0, 0.0); 4];
            psi0[*basis] = C64::new(1.0, 0.0);
            let schrodinger = dynamics::schrodinger_residual(&spec, *theta, &psi0, DEFAULT_STEP)?;
            let braiding = match spec.family {
                Family::EightI | Family::BellPhi => Some(dynamics::braiding_evolution_check(&spec, *theta)?),
                _ => None,
            };
            let pass = schrodinger < FD_TOL && braiding.is_none_or(|b| b < cfg.tol);
            Outcome::checked(
                json!({
                    "hamiltonian": ham,
                    "time": time,
                    "u": u,
                    "schrodinger_residual": schrodinger,
                    "braiding_residual": braiding,
                    "pass": pass,
                }),
                pass,
            )
        }
        Command::Cnot { route, phi } => {
            let d = match route {
                Route::Theorem1 => gates::theorem1_decomposition(),
                Route::Evolution => gates::cnot_via_evolution(*phi)?,
                Route::Conjugation => gates::cnot_via_conjugation()?,
            };
            let worst = d.worst_residual();
            let pass = worst < cfg.tol;
            Outcome::checked(json!({ "decomposition": d, "worst_residual": worst, "pass": pass }), pass)
        }
        Command::Bell { phi, sign } => {
            let sign: Sign = sign.parse()?;
            let states = gates::bell_basis(*phi, sign);
            let dets: Vec<[f64; 2]> = states
                .iter()
                .map(|s| {
                    let d = entangle::concurrence_det(s);
                    [d.re, d.im]
                })
                .collect();
            Outcome::info(json!({ "phi": phi, "sign": sign, "states": states, "det": dets }))
        }
        Command::Suite => {
            let report = suite::run(cfg.seed)?;
            for cr in &report.criteria {
                eprintln!("{}", cr.summary());
            }
            let pass = report.pass;
            Outcome::checked(report, pass)
        }
    }
}

#[derive(Serialize)]
struct PointReport {
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    tolerance: f64,
    pass: bool,
    worst_case: Option<SamplePoint>,
}

fn check(what: &CheckCommand, cfg: &RunConfig) -> Result<Outcome> {
    match what {
        CheckCommand::Braid { fam } => {
            let spec = fam.spec()?;
            let b = catalog::build_b(&spec)?;
            let residual = catalog::braid_residual(&b);
            let pass = residual < cfg.tol;
            Outcome::checked(
                PointReport { residual, rho: None, tolerance: cfg.tol, pass, worst_case: None },
                pass,
            )
        }
        CheckCommand::Qybe { fam, ordering, param } => {
            let spec = fam.spec()?;
            let param = match param {
                ParamArg::Multiplicative => Parametrization::Multiplicative,
                ParamArg::Additive => Parametrization::Additive,
                ParamArg::Rational => Parametrization::Rational,
            };
            let rep = verify::qybe_scan(&spec, ordering.map(Into::into), param, cfg.samples, cfg.seed, cfg.tol)?;
            let pass = rep.pass;
            Outcome::checked(rep, pass)
        }
        CheckCommand::Unitarity { fam, point, ordering } => {
            let spec = fam.spec()?;
            let ord = ordering.map(Into::into);
            match point.point(spec.family) {
                Some(p) => {
                    let x = p.x()?;
                    spec.check_unitary_domain(x)?;
                    let chk = verify::unitarity_at(&spec, &p, ord)?;
                    let mut residual = chk.residual;
                    let mut rho = Some(chk.rho_est);
                    if ord.is_none() {
                        let nf = verify::rho_formula(&spec, &p)?;
                        residual = residual.max((chk.rho_est - nf.raw()).abs() / chk.rho_est);
                        rho = Some(nf.rho);
                        eprintln!("rho = {} ({}; gauge {})", nf.formula, nf.domain_note, nf.gauge);
                    }
                    let pass = residual < cfg.tol;
                    Outcome::checked(
                        PointReport { residual, rho, tolerance: cfg.tol, pass, worst_case: Some(SamplePoint::Single { x }) },
                        pass,
                    )
                }
                None => {
                    let x0 = sampling::domain_x(&spec, &mut sampling::rng(cfg.seed));
                    spec.check_unitary_domain(x0)?;
                    let rep = verify::unitarity_scan(&spec, ord, cfg.samples, cfg.seed, cfg.tol)?;
                    let pass = rep.pass;
                    Outcome::checked(rep, pass)
                }
            }
        }
        CheckCommand::InverseUnitarity { fam, point } => {
            let spec = fam.spec()?;
            let f = verify::multiplicative_builder(spec, None);
            let xs: Vec<C64> = match point.point(spec.family) {
                Some(p) => vec![p.x()?],
                None => {
                    let mut rng = sampling::rng(cfg.seed);
                    (0..cfg.samples).map(|_| sampling::generic_x(&mut rng)).collect()
                }
            };
            let mut worst = (0.0f64, xs[0]);
            for &x in &xs {
                let s = verify::inverse_unitarity(&f, x)?;
                let closed = verify::inverse_unitarity_closed(&spec, x)?;
                let gap = (s - closed).norm() / (1.0 + closed.norm());
                if gap >= worst.0 {
                    worst = (gap, x);
                }
            }
            let pass = worst.0 < cfg.tol;
            let mut value = to_value(PointReport {
                residual: worst.0,
                rho: None,
                tolerance: cfg.tol,
                pass,
                worst_case: Some(SamplePoint::Single { x: worst.1 }),
            })?;
            if let [x] = xs[..] {
                let s = verify::inverse_unitarity(&f, x)?;
                value["scalar"] = json!([s.re, s.im]);
                if spec.check_unitary_domain(x).is_ok() {
                    let comp = verify::compatibility(&spec, x)?;
                    value["rho"] = json!(comp.rho);
                    value["compatible"] = json!(comp.compatible);
                }
            }
            Ok(Outcome { value, pass })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Singular { .. } | Error::DegenerateSpectrum(..) | Error::DegenerateNormalization(_) | Error::NonFinite(_) => 2,
        e if e.is_usage() => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = match cli.run.output {
                Output::Json => serde_json::to_string(&out.value),
                Output::Pretty => serde_json::to_string_pretty(&out.value),
            };
            match text {
                Ok(t) => println!("{t}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            if out.pass {
                0
            } else {
                eprintln!("check failed (tolerance {:e})", cli.run.tol);
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> u8 {
        main_with_args(std::iter::once("yaxter").chain(args.iter().copied()))
    }

    #[test]
    fn off_domain_unitarity_is_a_usage_error() {
        let args = ["check", "unitarity", "--family", "six-nonstd", "--gamma", "0.3", "--x-re", "2", "--x-im", "0"];
        assert_eq!(code(&args), 2);
    }

    #[test]
    fn unknown_family_and_bad_flags() {
        assert_eq!(code(&["catalog", "--family", "nine"]), 2);
        assert_eq!(code(&["build", "--family", "eight1"]), 2);
        assert_eq!(code(&["check", "braid", "--family", "eight1", "--tol", "-1"]), 2);
        assert_eq!(code(&["build", "--family", "eight1", "--x", "1", "--theta", "0.2"]), 2);
    }

    #[test]
    fn commands_succeed() {
        assert_eq!(code(&["catalog", "--family", "eight1", "--q-re", "0.6", "--q-im", "0.8", "--sign", "plus"]), 0);
        assert_eq!(code(&["build", "--family", "six-nonstd", "--q", "1", "--x", "0"]), 0);
        assert_eq!(code(&["build", "--family", "eight3", "--t", "0.4", "--phi", "0.3", "--theta", "0.5", "--ordering", "second"]), 0);
        assert_eq!(code(&["check", "braid", "--family", "eight4", "--t", "0.7", "--phi", "1.1"]), 0);
        assert_eq!(code(&["check", "qybe", "--family", "eight2", "--t", "1.7", "--samples", "5"]), 0);
        assert_eq!(code(&["check", "unitarity", "--family", "six-std", "--gamma", "0.4", "--samples", "5"]), 0);
        assert_eq!(code(&["check", "inverse-unitarity", "--family", "eight3", "--t", "0.5", "--theta", "0.4"]), 0);
        assert_eq!(code(&["classify", "--family", "eight1", "--x", "1", "--expect", "not-entangling"]), 0);
        assert_eq!(code(&["classify", "--family", "six-nonstd", "--gamma", "0.5", "--theta", "0.3", "--expect", "not-entangling"]), 1);
        assert_eq!(code(&["hamiltonian", "--family", "six-nonstd", "--gamma", "0.5", "--theta", "0.3", "--compare"]), 0);
        assert_eq!(code(&["evolve", "--family", "eight1", "--phi", "0.3", "--theta", "-0.4"]), 0);
        assert_eq!(code(&["cnot", "--route", "evolution", "--phi", "0.5"]), 0);
        assert_eq!(code(&["bell", "--phi", "0.3", "--sign", "minus"]), 0);
    }

    #[test]
    fn qybe_additive_rejects_tangent_families() {
        assert_eq!(code(&["check", "qybe", "--family", "eight1", "--param", "additive"]), 2);
    }

    #[test]
    fn reparam_is_consistent_with_build() {
        let spec = FamilySpec::new(Family::EightII).with_t(1.4).with_phi(0.2);
        let x = C64::from_polar(1.0, 0.9);
        let u = crate::baxterize::u_of_x(x).unwrap();
        let a = build_r(&spec, &SpectralPoint::X(x), None).unwrap().r;
        let b = build_r(&spec, &SpectralPoint::U(u), None).unwrap().r;
        assert!(a.distance(&b) < 1e-12);
    }
}
