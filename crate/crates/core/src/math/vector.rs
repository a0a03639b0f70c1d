use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// Real Cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Vec3::new(x, y, z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// Complex Cartesian 3-vector: field amplitudes, dipole moments and
/// (possibly elliptical) detector polarizations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl ComplexVec3 {
    pub const ZERO: ComplexVec3 = ComplexVec3 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
        z: Complex64::new(0.0, 0.0),
    };

    pub const fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { x, y, z }
    }

    pub fn from_real(v: Vec3) -> Self {
        Self::new(v.x.into(), v.y.into(), v.z.into())
    }

    pub fn components(self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    /// `sum_i conj(self_i) * other_i`.
    pub fn hdot(self, other: ComplexVec3) -> Complex64 {
        self.x.conj() * other.x + self.y.conj() * other.y + self.z.conj() * other.z
    }

    /// Bilinear product without conjugation.
    pub fn dot(self, other: ComplexVec3) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Componentwise cross product, no conjugation.
    pub fn cross(self, other: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn scale(self, c: Complex64) -> ComplexVec3 {
        ComplexVec3::new(self.x * c, self.y * c, self.z * c)
    }

    pub fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(self, other: ComplexVec3) -> f64 {
        let d = self - other;
        d.components()
            .iter()
            .map(|c| libm::sqrt(c.norm_sqr()))
            .fold(0.0, f64::max)
    }
}

impl From<Vec3> for ComplexVec3 {
    fn from(v: Vec3) -> Self {
        ComplexVec3::from_real(v)
    }
}

impl Add for ComplexVec3 {
    type Output = ComplexVec3;
    fn add(self, rhs: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for ComplexVec3 {
    fn add_assign(&mut self, rhs: ComplexVec3) {
        *self = *self + rhs;
    }
}

impl Sub for ComplexVec3 {
    type Output = ComplexVec3;
    fn sub(self, rhs: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for ComplexVec3 {
    type Output = ComplexVec3;
    fn mul(self, rhs: f64) -> ComplexVec3 {
        ComplexVec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Mul<Complex64> for ComplexVec3 {
    type Output = ComplexVec3;
    fn mul(self, rhs: Complex64) -> ComplexVec3 {
        self.scale(rhs)
    }
}

/// Hermitian inner product `sum_i conj(a_i) b_i`.
pub fn hermitian_dot(a: ComplexVec3, b: ComplexVec3) -> Complex64 {
    a.hdot(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_dot_examples() {
        let ex = ComplexVec3::from_real(Vec3::X);
        let ey = ComplexVec3::from_real(Vec3::Y);
        assert_eq!(hermitian_dot(ex, ex), c(1.0, 0.0));
        let ix = ComplexVec3::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(hermitian_dot(ix, ix), c(1.0, 0.0));
        assert_eq!(hermitian_dot(ex, ey), c(0.0, 0.0));
    }

    #[test]
    fn real_cross_is_right_handed() {
        assert_eq!(Vec3::X.cross(Vec3::Y), Vec3::Z);
        assert_eq!(Vec3::Y.cross(Vec3::Z), Vec3::X);
    }

    fn cvec() -> impl Strategy<Value = ComplexVec3> {
        proptest::array::uniform6(-10.0f64..10.0)
            .prop_map(|a| ComplexVec3::new(c(a[0], a[1]), c(a[2], a[3]), c(a[4], a[5])))
    }

    proptest! {
        #[test]
        fn self_product_is_real_nonnegative(a in cvec()) {
            let s = hermitian_dot(a, a);
            prop_assert_eq!(s.im, 0.0);
            prop_assert!(s.re >= 0.0);
        }

        #[test]
        fn self_cross_vanishes(a in cvec()) {
            prop_assert_eq!(a.cross(a), ComplexVec3::ZERO);
        }

        #[test]
        fn hermitian_dot_is_conjugate_symmetric(a in cvec(), b in cvec()) {
            let ab = hermitian_dot(a, b);
            let ba = hermitian_dot(b, a).conj();
            prop_assert!((ab - ba).norm_sqr() < 1e-20);
        }
    }
}
