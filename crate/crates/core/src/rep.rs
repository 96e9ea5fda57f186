//! Matrix representations and the projection bispinor.
//!
//! Two faithful representations are built:
//!
//! * the complex 4×4 Dirac basis, `γ^0 = diag(1, 1, −1, −1)` and
//!   `γ^i = [[0, σ^i], [−σ^i, 0]]`, with reference bispinor `w = (1, 0, 0, 0)ᵀ`;
//! * a real 16×16 representation of ℂ ⊗ M₂(ℝ) ⊗ ℍ, where the outer ℂ factor
//!   carries the non-geometric unit `j` and `w₁₆ = a₁ ⊗ b₁ ⊗ c₁ = e₀`.
//!
//! Bispinor16 components are ordered `((a−1)·2 + (b−1))·4 + (c−1)`: the ℂ index
//! varies slowest and the quaternion index fastest.
//!
//! Lifting a Dirac spinor back to a multivector is not unique because `w`
//! projects `1` and `γ^0` onto the same component. [`spinor_to_multivector`]
//! returns the even-grade section, which is the one the field equations use
//! for a massless field; for massive fields the odd part is fixed by the
//! dynamics rather than by the spinor.

use std::sync::OnceLock;

use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix, SVector, Vector4};
use num_complex::Complex64;
use crate::blade::{BladeIndex, BladeTable, BLADE_COUNT};
use crate::complex::ComplexMultivector;
use crate::error::{Error, Result};
use crate::multivector::Multivector;

pub type CMatrix4 = Matrix4<Complex64>;
pub type RMatrix16 = SMatrix<f64, 16, 16>;

/// Index of `a₂ ⊗ b₁ ⊗ c₁` in a Bispinor16: the `j` partner of `w₁₆`.
pub const J_PARTNER_INDEX: usize = 8;

const EVEN_MASKS: [usize; 8] = [0, 3, 5, 6, 9, 10, 12, 15];

/// Four-component complex spinor in the Dirac basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bispinor4(pub Vector4<Complex64>);

/// Sixteen-component real spinor of the ℂ ⊗ M₂(ℝ) ⊗ ℍ representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bispinor16(pub SVector<f64, 16>);

impl Bispinor4 {
    pub fn new(c: [Complex64; 4]) -> Self {
        Bispinor4(Vector4::from(c))
    }

    /// The reference bispinor `w = (1, 0, 0, 0)ᵀ`.
    pub fn reference() -> Self {
        Bispinor4::new([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn max_abs_diff(&self, other: &Bispinor4) -> f64 {
        (self.0 - other.0).iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn conj(&self) -> Bispinor4 {
        Bispinor4(self.0.map(|c| c.conj()))
    }
}

impl Bispinor16 {
    /// `w₁₆ = a₁ ⊗ b₁ ⊗ c₁`.
    pub fn reference() -> Self {
        let mut v = SVector::<f64, 16>::zeros();
        v[0] = 1.0;
        Bispinor16(v)
    }

    /// Component index for 1-based tensor indices `(a, b, c)`.
    pub fn index_of(a: usize, b: usize, c: usize) -> usize {
        ((a - 1) * 2 + (b - 1)) * 4 + (c - 1)
    }
}

/// Which representation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorRep {
    Dirac4,
    Real16,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spinor {
    Dirac4(Bispinor4),
    Real16(Bispinor16),
}

/// Blade images in both representations, plus the `j` generator.
#[derive(Clone, Debug)]
pub struct RepTable {
    dirac4: [CMatrix4; BLADE_COUNT],
    real16: [RMatrix16; BLADE_COUNT],
    j16: RMatrix16,
    even_lift: SMatrix<f64, 8, 8>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli matrices.
fn sigma(i: usize) -> nalgebra::Matrix2<Complex64> {
    let (z, o, im) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match i {
        1 => nalgebra::Matrix2::new(z, o, o, z),
        2 => nalgebra::Matrix2::new(z, -im, im, z),
        3 => nalgebra::Matrix2::new(o, z, z, -o),
        _ => unreachable!("pauli index"),
    }
}

/// Dirac-basis gamma matrices `γ^μ`.
pub fn dirac_gamma(mu: usize) -> CMatrix4 {
    let mut m = CMatrix4::zeros();
    if mu == 0 {
        for k in 0..4 {
            m[(k, k)] = c(if k < 2 { 1.0 } else { -1.0 }, 0.0);
        }
        return m;
    }
    let s = sigma(mu);
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col + 2)] = s[(r, col)];
            m[(r + 2, col)] = -s[(r, col)];
        }
    }
    m
}

/// Basis of M₂(ℝ): index 0 is the identity, 1..=3 are `M₁, M₂, M₃`.
pub fn m2_basis(k: usize) -> Matrix2<f64> {
    match k {
        0 => Matrix2::identity(),
        1 => Matrix2::new(0.0, 1.0, 1.0, 0.0),
        2 => Matrix2::new(0.0, -1.0, 1.0, 0.0),
        3 => Matrix2::new(1.0, 0.0, 0.0, -1.0),
        _ => unreachable!("M2 basis index"),
    }
}

/// Real 4×4 quaternion units: index 0 is the identity, 1..=3 are `I₁, I₂, I₃`.
pub fn quaternion_basis(k: usize) -> Matrix4<f64> {
    match k {
        0 => Matrix4::identity(),
        1 => Matrix4::new(
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, -1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ),
        2 => Matrix4::new(
            0.0, 0.0, -1.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0,
        ),
        3 => Matrix4::new(
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0,
        ),
        _ => unreachable!("quaternion index"),
    }
}

/// The ℂ factor: `1` or `j = [[0, −1], [1, 0]]`.
pub fn complex_unit(j: bool) -> Matrix2<f64> {
    if j {
        Matrix2::new(0.0, -1.0, 1.0, 0.0)
    } else {
        Matrix2::identity()
    }
}

/// `a ⊗ b ⊗ c` as a 16×16 matrix.
pub fn kron3(a: &Matrix2<f64>, b: &Matrix2<f64>, q: &Matrix4<f64>) -> RMatrix16 {
    let da = DMatrix::from_column_slice(2, 2, a.as_slice());
    let db = DMatrix::from_column_slice(2, 2, b.as_slice());
    let dq = DMatrix::from_column_slice(4, 4, q.as_slice());
    let k = da.kronecker(&db.kronecker(&dq));
    RMatrix16::from_column_slice(k.as_slice())
}

/// Generator images `γ^0 ↦ M₃ ⊗ 1`, `γ^i ↦ M₁ ⊗ I_i` inside `1 ⊗ M₂(ℝ) ⊗ ℍ`.
pub fn real16_gamma(mu: usize) -> RMatrix16 {
    let one = complex_unit(false);
    if mu == 0 {
        kron3(&one, &m2_basis(3), &quaternion_basis(0))
    } else {
        kron3(&one, &m2_basis(1), &quaternion_basis(mu))
    }
}

fn blade_image<M>(b: BladeIndex, identity: M, gen: impl Fn(usize) -> M) -> M
where
    M: std::ops::Mul<Output = M> + Clone,
{
    b.factors().fold(identity, |acc, k| acc * gen(k))
}

impl RepTable {
    pub fn dirac4(&self, b: BladeIndex) -> &CMatrix4 {
        &self.dirac4[b.index()]
    }

    pub fn real16(&self, b: BladeIndex) -> &RMatrix16 {
        &self.real16[b.index()]
    }

    pub fn j_generator(&self) -> &RMatrix16 {
        &self.j16
    }

    /// Matrix of a real multivector in the Dirac basis.
    pub fn image4(&self, m: &Multivector) -> CMatrix4 {
        let mut out = CMatrix4::zeros();
        for b in BladeIndex::all() {
            let x = m.get(b);
            if x != 0.0 {
                out += self.dirac4[b.index()] * c(x, 0.0);
            }
        }
        out
    }

    /// Dirac-basis matrix of `re + j·im` with `j` identified with the matrix unit `i`.
    pub fn image4_complex(&self, m: &ComplexMultivector) -> CMatrix4 {
        self.image4(&m.re) + self.image4(&m.im) * c(0.0, 1.0)
    }

    /// Matrix of a real multivector in the real 16×16 representation.
    pub fn image16_real(&self, m: &Multivector) -> RMatrix16 {
        let mut out = RMatrix16::zeros();
        for b in BladeIndex::all() {
            let x = m.get(b);
            if x != 0.0 {
                out += self.real16[b.index()] * x;
            }
        }
        out
    }

    /// `1 ⊗ re + J ⊗ im`.
    pub fn image16(&self, m: &ComplexMultivector) -> RMatrix16 {
        self.image16_real(&m.re) + self.j16 * self.image16_real(&m.im)
    }
}

/// Builds both representations and checks them exhaustively: every basis
/// product must map to the matrix product, including sign, and every 16×16
/// image must be a signed permutation matrix.
pub fn build_rep_tables() -> Result<RepTable> {
    build_rep_tables_with(BladeTable::canonical())
}

pub(crate) fn build_rep_tables_with(table: &BladeTable) -> Result<RepTable> {
    let dirac4: [CMatrix4; BLADE_COUNT] = std::array::from_fn(|k| {
        blade_image(BladeIndex::new(k as u8).unwrap(), CMatrix4::identity(), dirac_gamma)
    });
    let real16: [RMatrix16; BLADE_COUNT] = std::array::from_fn(|k| {
        blade_image(BladeIndex::new(k as u8).unwrap(), RMatrix16::identity(), real16_gamma)
    });
    let j16 = kron3(&complex_unit(true), &m2_basis(0), &quaternion_basis(0));

    for a in BladeIndex::all() {
        for b in BladeIndex::all() {
            let s = table.sign(a, b);
            let ab = BladeIndex::new(a.mask() ^ b.mask()).unwrap();
            let lhs4 = dirac4[ab.index()] * c(s, 0.0);
            let rhs4 = dirac4[a.index()] * dirac4[b.index()];
            if lhs4 != rhs4 {
                return Err(Error::consistency(format!(
                    "Dirac-basis image of {a}·{b} does not match the blade table"
                )));
            }
            let lhs16 = real16[ab.index()] * s;
            let rhs16 = real16[a.index()] * real16[b.index()];
            if lhs16 != rhs16 {
                return Err(Error::consistency(format!(
                    "real 16×16 image of {a}·{b} does not match the blade table"
                )));
            }
        }
    }
    for (k, m) in real16.iter().chain(std::iter::once(&j16)).enumerate() {
        if !is_signed_permutation(m) {
            return Err(Error::consistency(format!(
                "16×16 image #{k} is not a signed permutation matrix"
            )));
        }
    }

    // Even multivectors act on w injectively: 8 real coefficients ↦ ℂ⁴.
    let mut lift = SMatrix::<f64, 8, 8>::zeros();
    for (col, &mask) in EVEN_MASKS.iter().enumerate() {
        let column = dirac4[mask].column(0);
        for r in 0..4 {
            lift[(2 * r, col)] = column[r].re;
            lift[(2 * r + 1, col)] = column[r].im;
        }
    }
    let even_lift = lift
        .try_inverse()
        .ok_or_else(|| Error::consistency("even blades do not span the spinor space"))?;

    Ok(RepTable {
        dirac4,
        real16,
        j16,
        even_lift,
    })
}

fn is_signed_permutation(m: &RMatrix16) -> bool {
    let entries_ok = m.iter().all(|&x| x == 0.0 || x == 1.0 || x == -1.0);
    let rows_ok = m.row_iter().all(|r| r.iter().filter(|x| **x != 0.0).count() == 1);
    let cols_ok = m.column_iter().all(|c| c.iter().filter(|x| **x != 0.0).count() == 1);
    entries_ok && rows_ok && cols_ok && (m.transpose() * m) == RMatrix16::identity()
}

/// The shared, validated representation table.
pub fn rep_table() -> &'static RepTable {
    static TABLE: OnceLock<RepTable> = OnceLock::new();
    TABLE.get_or_init(|| build_rep_tables().expect("representation tables must validate"))
}

/// `ψ = ψ_M w` in the chosen representation.
pub fn multivector_to_spinor(v: &ComplexMultivector, which: SpinorRep) -> Spinor {
    match which {
        SpinorRep::Dirac4 => Spinor::Dirac4(to_dirac4(v)),
        SpinorRep::Real16 => Spinor::Real16(to_real16(v)),
    }
}

/// Dirac spinor `ψ_M w` with `j ↦ i`.
pub fn to_dirac4(v: &ComplexMultivector) -> Bispinor4 {
    let m = rep_table().image4_complex(v);
    Bispinor4(m.column(0).into_owned())
}

pub fn to_real16(v: &ComplexMultivector) -> Bispinor16 {
    let m = rep_table().image16(v);
    Bispinor16(m.column(0).into_owned())
}

/// The even multivector `ψ_M` with `ψ_M w = s`.
pub fn spinor_to_multivector(s: &Bispinor4) -> ComplexMultivector {
    let mut rhs = SVector::<f64, 8>::zeros();
    for r in 0..4 {
        rhs[2 * r] = s.0[r].re;
        rhs[2 * r + 1] = s.0[r].im;
    }
    let x = rep_table().even_lift * rhs;
    let mut m = Multivector::zero();
    for (k, &mask) in EVEN_MASKS.iter().enumerate() {
        m.coeffs[mask] = x[k];
    }
    ComplexMultivector::real(m)
}

/// Right multiplication by `γ^2γ^1`, the geometric stand-in for `i` on `w`.
pub fn geometric_i_action(v: &ComplexMultivector) -> ComplexMultivector {
    v.right_mul_real(&Multivector::gammas(&[2, 1]))
}

/// Value of `ψ̄ M ψ`.
///
/// `value` is the `j`-real part and `j_part` the `j`-imaginary part. Each is a
/// complex number whose imaginary unit is the geometric `i` (the Dirac-basis
/// matrix unit, realised on `w` by `γ^2γ^1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichValue {
    pub value: Complex64,
    pub j_part: Complex64,
}

impl SandwichValue {
    pub fn max_abs_diff(&self, other: &SandwichValue) -> f64 {
        (self.value - other.value)
            .norm()
            .max((self.j_part - other.j_part).norm())
    }
}

/// The three independent evaluations of a bilinear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilinearPath {
    /// `w† X w` with the 4×4 Dirac matrices.
    DiracSandwich,
    /// `⟨X (1 + γ^0 − iγ^2γ^1 − iγ^2γ^1γ^0)⟩`.
    GradeProjection,
    /// `wᵀ X w` in the real 16×16 representation.
    Real16,
}

/// Maximum disagreement tolerated between the three paths.
pub const BILINEAR_AGREEMENT_TOL: f64 = 1e-10;

fn sandwich_operand(
    m: &ComplexMultivector,
    left: &ComplexMultivector,
    right: &ComplexMultivector,
) -> ComplexMultivector {
    let g0 = Multivector::gamma(0);
    left.adjoint_reverse().left_mul_real(&g0) * *m * *right
}

fn grade_projection_value(x: &Multivector) -> Complex64 {
    let g0 = Multivector::gamma(0);
    let g21 = Multivector::gammas(&[2, 1]);
    let projector = Multivector::one() + g0;
    let re = (*x * projector).scalar_part();
    let im = -(*x * g21 * projector).scalar_part();
    c(re, im)
}

/// Evaluates `γ^0 · rev(left)† · M · right` projected on `w` along one path.
pub fn bilinear_extract_via(
    path: BilinearPath,
    m: &ComplexMultivector,
    left: &ComplexMultivector,
    right: &ComplexMultivector,
) -> SandwichValue {
    let x = sandwich_operand(m, left, right);
    match path {
        BilinearPath::DiracSandwich => {
            let t = rep_table();
            SandwichValue {
                value: t.image4(&x.re)[(0, 0)],
                j_part: t.image4(&x.im)[(0, 0)],
            }
        }
        BilinearPath::GradeProjection => SandwichValue {
            value: grade_projection_value(&x.re),
            j_part: grade_projection_value(&x.im),
        },
        BilinearPath::Real16 => {
            let t = rep_table();
            let g21 = Multivector::gammas(&[2, 1]);
            let img = t.image16(&x);
            let img_i = t.image16(&x.right_mul_real(&g21));
            SandwichValue {
                value: c(img[(0, 0)], -img_i[(0, 0)]),
                j_part: c(img[(J_PARTNER_INDEX, 0)], -img_i[(J_PARTNER_INDEX, 0)]),
            }
        }
    }
}

/// `ψ̄ M ψ` computed along all three paths, which must agree.
pub fn bilinear_extract(
    m: &ComplexMultivector,
    left: &ComplexMultivector,
    right: &ComplexMultivector,
) -> Result<SandwichValue> {
    let a = bilinear_extract_via(BilinearPath::GradeProjection, m, left, right);
    let scale = 1.0 + a.value.norm().max(a.j_part.norm());
    for path in [BilinearPath::DiracSandwich, BilinearPath::Real16] {
        let b = bilinear_extract_via(path, m, left, right);
        let d = a.max_abs_diff(&b);
        if d > BILINEAR_AGREEMENT_TOL * scale {
            return Err(Error::consistency(format!(
                "bilinear paths disagree ({path:?} differs by {d:e})"
            )));
        }
    }
    Ok(a)
}

/// Unit-modulus `z` with `a = z·b`, if one exists to within `tol`.
pub fn phase_between(a: &Bispinor4, b: &Bispinor4, tol: f64) -> Option<Complex64> {
    let k = (0..4).find(|&k| b.0[k].norm() > tol)?;
    let z = a.0[k] / b.0[k];
    if (z.norm() - 1.0).abs() > tol {
        return None;
    }
    let scaled = Bispinor4(b.0 * z);
    (a.max_abs_diff(&scaled) <= tol).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(mu: usize) -> Multivector {
        Multivector::gamma(mu)
    }

    #[test]
    fn tables_build() {
        assert!(build_rep_tables().is_ok());
    }

    #[test]
    fn corrupted_blade_table_is_rejected() {
        let bad = BladeTable::canonical().with_flipped_sign(BladeIndex::vector(1), BladeIndex::vector(2));
        assert!(matches!(build_rep_tables_with(&bad), Err(Error::Consistency(_))));
    }

    #[test]
    fn gamma0_real16_image() {
        let expected = kron3(&complex_unit(false), &Matrix2::new(1.0, 0.0, 0.0, -1.0), &Matrix4::identity());
        assert_eq!(*rep_table().real16(BladeIndex::vector(0)), expected);
    }

    #[test]
    fn quaternion_and_m2_relations() {
        let (i1, i2, i3) = (quaternion_basis(1), quaternion_basis(2), quaternion_basis(3));
        assert_eq!(i1 * i2, i3);
        assert_eq!(i2 * i3, i1);
        assert_eq!(i3 * i1, i2);
        for q in [i1, i2, i3] {
            assert_eq!(q * q, -Matrix4::identity());
        }
        let (m1, m2, m3) = (m2_basis(1), m2_basis(2), m2_basis(3));
        assert_eq!(m1 * m1, Matrix2::identity());
        assert_eq!(m2 * m2, -Matrix2::identity());
        assert_eq!(m3 * m3, Matrix2::identity());
        assert_eq!(m1 * m2, m3);
        assert_eq!(m2 * m3, m1);
        assert_eq!(m3 * m1, -m2);
    }

    #[test]
    fn projection_relations_dirac4() {
        let w = Bispinor4::reference();
        let t = rep_table();
        let g0w = t.image4(&g(0)) * w.0;
        assert_eq!(g0w, w.0);
        let g21w = t.image4(&Multivector::gammas(&[2, 1])) * w.0;
        assert_eq!(g21w, w.0 * c(0.0, 1.0));
    }

    #[test]
    fn spinor_examples() {
        let one = ComplexMultivector::real(Multivector::one());
        assert_eq!(to_dirac4(&one), Bispinor4::reference());
        let two = ComplexMultivector::real(Multivector::scalar(2.0));
        assert_eq!(to_dirac4(&two).0[0], c(2.0, 0.0));
        let f12 = ComplexMultivector::real(Multivector::blade(BladeIndex::bivector(1, 2), 1.0));
        let s = to_dirac4(&f12);
        assert_eq!(s.components(), [c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let back = spinor_to_multivector(&s);
        assert!(back.max_abs_diff(&f12) < 1e-15);
        assert!(spinor_to_multivector(&Bispinor4::reference()).max_abs_diff(&one) < 1e-15);
    }

    #[test]
    fn geometric_i_squares_to_minus_one() {
        let v = ComplexMultivector::real(Multivector::one() + g(1) * g(3));
        let twice = geometric_i_action(&geometric_i_action(&v));
        assert!(twice.max_abs_diff(&(-v)) < 1e-15);
        let s = to_dirac4(&geometric_i_action(&ComplexMultivector::real(Multivector::one())));
        assert_eq!(s, Bispinor4(Bispinor4::reference().0 * c(0.0, 1.0)));
    }

    #[test]
    fn bilinear_examples() {
        let one = ComplexMultivector::real(Multivector::one());
        let v = bilinear_extract(&one, &one, &one).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
        let v0 = bilinear_extract(&ComplexMultivector::real(g(0)), &one, &one).unwrap();
        assert_eq!(v0.value, c(1.0, 0.0));
        let v1 = bilinear_extract(&ComplexMultivector::real(g(1)), &one, &one).unwrap();
        assert_eq!(v1.value, c(0.0, 0.0));
    }

    #[test]
    fn phase_between_detects_global_phase() {
        let w = Bispinor4::new([c(0.3, 0.1), c(-1.0, 0.5), c(0.0, 0.0), c(0.2, 0.0)]);
        let z = Complex64::from_polar(1.0, 0.7);
        let rotated = Bispinor4(w.0 * z);
        let found = phase_between(&rotated, &w, 1e-12).unwrap();
        assert!((found - z).norm() < 1e-12);
        let scaled = Bispinor4(w.0 * c(2.0, 0.0));
        assert!(phase_between(&scaled, &w, 1e-12).is_none());
    }
}
