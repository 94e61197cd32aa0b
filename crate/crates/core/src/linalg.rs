//! Small dense complex matrices.
//!
//! Everything in this crate lives on `V⊗V` with `dim V = 2`, plus the
//! 8-dimensional triple product used by the braid relation and the QYBE,
//! so `CMat` is a row-major `Vec` with a runtime dimension in `{1, 2, 4, 8}`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub use num_complex::Complex64 as C64;

/// Largest dimension a `CMat` may have.
pub const MAX_DIM: usize = 8;

/// Default absolute tolerance on Frobenius norms.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `|det A| < SINGULAR_REL * max|A_ij|^n` is treated as singular.
pub const SINGULAR_REL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<C64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if matches!(dim, 1 | 2 | 4 | 8) {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "dimension {dim} is not one of 1, 2, 4, 8"
        )))
    }
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        debug_assert!(dim <= MAX_DIM);
        CMat {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = CMat::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Build from row-major entries. The entry count must be a perfect
    /// square of an admissible dimension and every entry finite.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries".into()));
        }
        Ok(CMat { dim, data })
    }

    /// Build from rows; panics on ragged input. Intended for literal
    /// matrices in constructors and tests.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        CMat::from_vec(N, data).expect("literal matrix")
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| r_(x))).collect();
        CMat::from_vec(N, data).expect("literal matrix")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMat {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> CMat {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> CMat {
        self.map(|z| z * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let n = self.dim;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> CMat {
        let n = self.dim;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> CMat {
        self.map(|z| z.conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm, scaled by the largest entry so tiny matrices do not underflow.
    pub fn frobenius_norm(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        m * self.data.iter().map(|z| (z / m).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &CMat) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖A − A†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.distance(&self.adjoint())
    }

    /// `‖A A† − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        self.matmul(&self.adjoint())
            .distance(&CMat::identity(self.dim))
    }

    /// Kronecker product, `(A⊗B)[i·n+k][j·n+l] = A[i][j]·B[k][l]`.
    pub fn tensor(&self, other: &CMat) -> Result<CMat> {
        let (m, n) = (self.dim, other.dim);
        let d = m * n;
        if d > MAX_DIM {
            return Err(Error::Dimension(format!(
                "tensor product of dims {m} and {n} exceeds {MAX_DIM}"
            )));
        }
        let mut out = CMat::zeros(d);
        for i in 0..m {
            for j in 0..m {
                let a = self[(i, j)];
                for k in 0..n {
                    for l in 0..n {
                        out[(i * n + k, j * n + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// LU factorisation with partial pivoting; returns `(det, inverse)`,
    /// with `inverse = None` when the pivot vanishes exactly.
    fn lu_inverse(&self) -> (C64, Option<CMat>) {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = CMat::identity(n).data;
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[pivot * n + col] == ZERO {
                return (ZERO, None);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    inv.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            let pinv = ONE / p;
            for j in 0..n {
                a[col * n + j] *= pinv;
                inv[col * n + j] *= pinv;
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a[row * n + col];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (av, iv) = (a[col * n + j], inv[col * n + j]);
                    a[row * n + j] -= f * av;
                    inv[row * n + j] -= f * iv;
                }
            }
        }
        (det, Some(CMat { dim: n, data: inv }))
    }

    pub fn det(&self) -> C64 {
        self.lu_inverse().0
    }

    /// Scale-aware singularity threshold `1e-12 · max|A_ij|^n`.
    pub fn singularity_threshold(&self) -> f64 {
        SINGULAR_REL * self.max_abs().powi(self.dim as i32)
    }

    pub fn inverse(&self) -> Result<CMat> {
        let (det, inv) = self.lu_inverse();
        let threshold = self.singularity_threshold();
        match inv {
            Some(inv) if det.norm() >= threshold && threshold > 0.0 => Ok(inv),
            _ => Err(Error::Singular {
                det: det.norm(),
                threshold,
                context: "matrix".into(),
            }),
        }
    }

    /// Fit `self ≈ s·reference` with `s` taken from the (0,0) entry of
    /// `reference` when nonzero, else its first nonzero entry in row-major
    /// order. Returns `(s, ‖self − s·reference‖_F / max(‖self‖_F, tiny))`.
    pub fn proportionality(&self, reference: &CMat) -> (C64, f64) {
        let scale = reference.max_abs();
        let k = reference
            .data
            .iter()
            .position(|z| z.norm() > 1e-12 * scale.max(f64::MIN_POSITIVE))
            .unwrap_or(0);
        let s = if reference.data[k] == ZERO {
            ZERO
        } else {
            self.data[k] / reference.data[k]
        };
        let resid = self.distance(&reference.scale(s));
        (s, resid / self.frobenius_norm().max(f64::MIN_POSITIVE))
    }

    /// `‖A − (tr A / n)·I‖_F`, the distance from the scalar matrices.
    pub fn scalar_residual(&self) -> f64 {
        let s = self.trace() / self.dim as f64;
        self.distance(&CMat::identity(self.dim).scale(s))
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    fn from_nalgebra(m: &DMatrix<C64>) -> CMat {
        let n = m.nrows();
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = m[(i, j)];
            }
        }
        out
    }
}

fn r_(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.map(|z| -z)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire form: `{"dim": n, "entries": [[[re, im], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct CMatWire {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let z = self[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        CMatWire {
            dim: self.dim,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CMatWire::deserialize(d)?;
        if wire.entries.len() != wire.dim || wire.entries.iter().any(|r| r.len() != wire.dim) {
            return Err(D::Error::custom(format!(
                "entries do not form a {0}x{0} matrix",
                wire.dim
            )));
        }
        let data = wire
            .entries
            .iter()
            .flat_map(|row| row.iter().map(|&[re, im]| C64::new(re, im)))
            .collect();
        CMat::from_vec(wire.dim, data).map_err(D::Error::custom)
    }
}

/// Serde helper serializing a complex scalar as `[re, im]`.
pub mod complex_pair {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

/// Spectral projectors of a matrix with exactly two distinct eigenvalues:
/// `P₁ = (b − λ₂)/(λ₁ − λ₂)`, `P₂ = (b − λ₁)/(λ₂ − λ₁)`.
pub fn spectral_projectors(b: &CMat, l1: C64, l2: C64) -> Result<(CMat, CMat)> {
    let scale = b.max_abs().max(1.0);
    if (l1 - l2).norm() <= 1e-12 * scale {
        return Err(Error::DegenerateSpectrum(l1.to_string(), l2.to_string()));
    }
    let id = CMat::identity(b.dim());
    let b1 = b - &id.scale(l1);
    let b2 = b - &id.scale(l2);
    let minpoly = (&b1 * &b2).frobenius_norm();
    if minpoly > DEFAULT_TOL * scale * scale {
        return Err(Error::NotAnnihilated(minpoly));
    }
    Ok((b2.scale(ONE / (l1 - l2)), b1.scale(ONE / (l2 - l1))))
}

/// `‖∏ᵢ (b − λᵢ I)‖_F`.
pub fn annihilation_residual(b: &CMat, eigenvalues: &[C64]) -> f64 {
    let id = CMat::identity(b.dim());
    eigenvalues
        .iter()
        .fold(id.clone(), |acc, &l| &acc * &(b - &id.scale(l)))
        .frobenius_norm()
}

/// Checks that the listed eigenvalues annihilate `b`, relative to the scale
/// of the product.
pub fn annihilates(b: &CMat, eigenvalues: &[C64]) -> Result<()> {
    let scale = eigenvalues
        .iter()
        .map(|l| b.max_abs() + l.norm())
        .product::<f64>()
        .max(1.0);
    let resid = annihilation_residual(b, eigenvalues);
    if resid > DEFAULT_TOL * scale {
        Err(Error::NotAnnihilated(resid))
    } else {
        Ok(())
    }
}

/// `e^{−iHθ}` for Hermitian `H`, through the eigendecomposition `H = V D V†`.
pub fn expm_hermitian(h: &CMat, theta: f64) -> Result<CMat> {
    let herm = h.hermiticity_residual();
    if herm > DEFAULT_TOL * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite("evolution time".into()));
    }
    let sym = (h + &h.adjoint()).scale_re(0.5);
    let eig = sym.to_nalgebra().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -l * theta)));
    Ok(CMat::from_nalgebra(&(v * phases * v.adjoint())))
}

/// Pauli and ladder matrices, basis `|0⟩, |1⟩`.
pub mod pauli {
    use super::{c, CMat};

    pub fn id2() -> CMat {
        CMat::identity(2)
    }

    pub fn sigma_x() -> CMat {
        CMat::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_y() -> CMat {
        CMat::from_rows([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn sigma_z() -> CMat {
        CMat::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }

    /// `σ₊ = (σx + iσy)/2`, the upper-right unit matrix.
    pub fn sigma_plus() -> CMat {
        CMat::from_real_rows([[0.0, 1.0], [0.0, 0.0]])
    }

    /// `σ₋ = (σx − iσy)/2`, the lower-left unit matrix.
    pub fn sigma_minus() -> CMat {
        CMat::from_real_rows([[0.0, 0.0], [1.0, 0.0]])
    }

    /// `P↑ = |0⟩⟨0|`.
    pub fn p_up() -> CMat {
        CMat::from_real_rows([[1.0, 0.0], [0.0, 0.0]])
    }

    /// `P↓ = |1⟩⟨1|`.
    pub fn p_down() -> CMat {
        CMat::from_real_rows([[0.0, 0.0], [0.0, 1.0]])
    }

    /// `σ·n̂` for a 3-vector `n̂`.
    pub fn along(n: [f64; 3]) -> CMat {
        &(&sigma_x().scale_re(n[0]) + &sigma_y().scale_re(n[1])) + &sigma_z().scale_re(n[2])
    }

    /// The basis `{1, σx, σy, σz}` indexed 0..4.
    pub fn basis(k: usize) -> CMat {
        match k {
            0 => id2(),
            1 => sigma_x(),
            2 => sigma_y(),
            3 => sigma_z(),
            _ => panic!("Pauli index {k} out of range"),
        }
    }

    pub const LABELS: [char; 4] = ['i', 'x', 'y', 'z'];
}

/// `A ⊗ B` for two one-qubit matrices; never fails.
pub fn kron2(a: &CMat, b: &CMat) -> CMat {
    assert!(a.dim() * b.dim() <= MAX_DIM);
    a.tensor(b).expect("dims checked")
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;

    fn assert_close(a: &CMat, b: &CMat, tol: f64) {
        let d = a.distance(b);
        assert!(d < tol, "distance {d:e} >= {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn identity_tensor_identity() {
        assert_eq!(kron2(&id2(), &id2()), CMat::identity(4));
    }

    #[test]
    fn sigma_plus_tensor_sigma_minus() {
        let m = kron2(&sigma_plus(), &sigma_minus());
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) { ONE } else { ZERO };
                assert_eq!(m[(i, j)], expect, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn sigma_z_tensor_sigma_z_matches_index_formula() {
        let z = sigma_z();
        let zz = kron2(&z, &z);
        // direct index oracle: (A⊗B)[i·2+k][j·2+l] = A[i][j]·B[k][l]
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert_eq!(zz[(i * 2 + k, j * 2 + l)], z[(i, j)] * z[(k, l)]);
                    }
                }
            }
        }
        assert_eq!(zz, CMat::diag(&[ONE, -ONE, -ONE, ONE]));
    }

    #[test]
    fn tensor_rejects_overflow() {
        let a = CMat::identity(4);
        assert!(matches!(a.tensor(&a), Err(Error::Dimension(_))));
        assert_eq!(a.tensor(&id2()).unwrap().dim(), 8);
    }

    #[test]
    fn from_vec_rejects_bad_shapes() {
        assert!(CMat::from_vec(3, vec![ZERO; 9]).is_err());
        assert!(CMat::from_vec(2, vec![ZERO; 3]).is_err());
        assert!(CMat::from_vec(2, vec![c(f64::NAN, 0.0), ZERO, ZERO, ZERO]).is_err());
    }

    #[test]
    fn frobenius_norm_zero_iff_zero() {
        assert_eq!(CMat::zeros(4).frobenius_norm(), 0.0);
        let mut m = CMat::zeros(4);
        m[(2, 3)] = c(0.0, 1e-300);
        assert!(m.frobenius_norm() > 0.0);
    }

    #[test]
    fn inverse_identity() {
        assert_eq!(CMat::identity(4).inverse().unwrap(), CMat::identity(4));
    }

    #[test]
    fn inverse_rejects_singular() {
        let m = CMat::from_real_rows([[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(m.inverse(), Err(Error::Singular { .. })));
        // nearly singular relative to scale
        let m = CMat::from_real_rows([[1e6, 1e6], [1e6, 1e6 + 1e-9]]);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn singular_error_names_point() {
        let e = CMat::zeros(2).inverse().unwrap_err().at("t=1");
        assert!(e.to_string().contains("t=1"));
    }

    #[test]
    fn diagonal_projectors() {
        let b = CMat::diag(&[ONE, -ONE, -ONE, ONE]);
        let (p1, p2) = spectral_projectors(&b, ONE, -ONE).unwrap();
        assert_eq!(p1, CMat::diag(&[ONE, ZERO, ZERO, ONE]));
        assert_eq!(p2, CMat::diag(&[ZERO, ONE, ONE, ZERO]));
    }

    #[test]
    fn projectors_reject_degenerate_and_wrong_spectrum() {
        let b = CMat::diag(&[ONE, -ONE, -ONE, ONE]);
        assert!(matches!(
            spectral_projectors(&b, ONE, ONE),
            Err(Error::DegenerateSpectrum(..))
        ));
        assert!(matches!(
            spectral_projectors(&b, ONE, r(2.0)),
            Err(Error::NotAnnihilated(_))
        ));
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let u = expm_hermitian(&CMat::zeros(4), 0.7).unwrap();
        assert_close(&u, &CMat::identity(4), 1e-15);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let h = kron2(&sigma_plus(), &id2());
        assert!(matches!(expm_hermitian(&h, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn expm_of_half_pauli_product() {
        // e^{-iθ σa⊗σb / 2} = cos(θ/2) I − i sin(θ/2) σa⊗σb
        let th = 0.83;
        let s = kron2(&sigma_x(), &sigma_y());
        let u = expm_hermitian(&s.scale_re(0.5), th).unwrap();
        let expect = &CMat::identity(4).scale_re((th / 2.0).cos()) - &s.scale(c(0.0, (th / 2.0).sin()));
        assert_close(&u, &expect, 1e-14);
    }

    #[test]
    fn json_round_trip_and_shape() {
        let m = kron2(&sigma_y(), &sigma_plus());
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"dim\":4,\"entries\":[[[0.0,0.0]"));
        let back: CMat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"dim":2,"entries":[[[1,0],[0,0]]]}"#;
        assert!(serde_json::from_str::<CMat>(bad).is_err());
    }

    #[test]
    fn proportionality_uses_first_nonzero_entry() {
        let mut m = CMat::zeros(4);
        m[(0, 3)] = c(2.0, 0.0);
        m[(3, 0)] = c(0.0, 1.0);
        let (s, resid) = m.scale(c(0.0, 3.0)).proportionality(&m);
        assert!((s - c(0.0, 3.0)).norm() < 1e-15);
        assert!(resid < 1e-15);
    }
}
