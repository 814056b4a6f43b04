use crate::error::{Error, Result};
use crate::math;

use super::point::Point3;

/// Maximum allowed deviation of `R^T R` from identity, and of `det(R)`
/// from +1, for a matrix to count as a rotation.
const ROTATION_TOL: f64 = 1e-9;

/// Row-major 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Mat3 {
    m: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    #[inline]
    pub const fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Mat3 { m: rows }
    }

    #[inline]
    pub fn row(&self, i: usize) -> Point3 {
        Point3::new(self.m[i][0], self.m[i][1], self.m[i][2])
    }

    #[inline]
    pub fn col(&self, j: usize) -> Point3 {
        Point3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    #[inline]
    pub fn mul_vec(&self, v: Point3) -> Point3 {
        Point3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }

    pub fn mul_mat(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.row(i).dot(rhs.col(j));
            }
        }
        Mat3 { m: out }
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[j][i];
            }
        }
        Mat3 { m: out }
    }

    pub fn det(&self) -> f64 {
        self.row(0).dot(self.row(1).cross(self.row(2)))
    }

    /// Rotation about the +y axis. With y pointing down (rectified camera
    /// convention) this is the yaw used for object headings.
    pub fn rotation_y(angle: f64) -> Mat3 {
        let (s, c) = (math::sin(angle), math::cos(angle));
        Mat3::from_rows([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    }

    /// Largest absolute entry of `R^T R - I`.
    pub fn orthonormality_deviation(&self) -> f64 {
        let gram = self.transpose().mul_mat(self);
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max(math::abs(gram.m[i][j] - target));
            }
        }
        dev
    }

    /// Nearest-ish rotation by Gram-Schmidt on the rows. Intended to clean
    /// up calibration matrices that are orthonormal only to a few decimals.
    pub fn orthonormalized(&self) -> Result<Mat3> {
        let r0 = self.row(0);
        let n0 = r0.norm();
        if n0 < 1e-12 {
            return Err(Error::InvalidParameter("degenerate matrix row"));
        }
        let e0 = r0 * (1.0 / n0);
        let r1 = self.row(1) - e0 * self.row(1).dot(e0);
        let n1 = r1.norm();
        if n1 < 1e-12 {
            return Err(Error::InvalidParameter("degenerate matrix row"));
        }
        let e1 = r1 * (1.0 / n1);
        let e2 = e0.cross(e1);
        let out = Mat3::from_rows([[e0.x, e0.y, e0.z], [e1.x, e1.y, e1.z], [e2.x, e2.y, e2.z]]);
        // Forcing e2 = e0 x e1 fixes det(out) = +1; reject inputs that were
        // closer to a reflection than a rotation.
        if self.det() < 0.0 {
            return Err(Error::ImproperRotation { det: self.det() });
        }
        Ok(out)
    }
}

/// A proper rigid motion: `p -> R p + t`.
///
/// Construction validates that `R` is orthonormal with determinant +1, so a
/// held value can always be inverted exactly by transposition.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RigidTransform {
    rotation: Mat3,
    translation: Point3,
}

impl RigidTransform {
    pub fn new(rotation: Mat3, translation: Point3) -> Result<Self> {
        let dev = rotation.orthonormality_deviation();
        if dev > ROTATION_TOL {
            return Err(Error::NonOrthonormalRotation { deviation: dev });
        }
        let det = rotation.det();
        if math::abs(det - 1.0) > ROTATION_TOL {
            return Err(Error::ImproperRotation { det });
        }
        if !translation.is_finite() {
            return Err(Error::NonFinitePoint { index: 0 });
        }
        Ok(RigidTransform {
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        RigidTransform {
            rotation: Mat3::IDENTITY,
            translation: Point3::ORIGIN,
        }
    }

    pub fn from_translation(translation: Point3) -> Self {
        RigidTransform {
            rotation: Mat3::IDENTITY,
            translation,
        }
    }

    #[inline]
    pub fn rotation(&self) -> &Mat3 {
        &self.rotation
    }

    #[inline]
    pub fn translation(&self) -> Point3 {
        self.translation
    }

    #[inline]
    pub fn apply(&self, p: Point3) -> Point3 {
        self.rotation.mul_vec(p) + self.translation
    }

    /// Rotate a direction without translating it.
    #[inline]
    pub fn apply_dir(&self, d: Point3) -> Point3 {
        self.rotation.mul_vec(d)
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -rt.mul_vec(self.translation),
        }
    }

    /// `outer ∘ self`: applies `self` first, then `outer`.
    pub fn then(&self, outer: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: outer.rotation.mul_mat(&self.rotation),
            translation: outer.rotation.mul_vec(self.translation) + outer.translation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yaw(angle: f64) -> RigidTransform {
        RigidTransform::new(Mat3::rotation_y(angle), Point3::new(0.4, -1.2, 2.0)).unwrap()
    }

    #[test]
    fn rejects_non_orthonormal() {
        let m = Mat3::from_rows([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(
            RigidTransform::new(m, Point3::ORIGIN),
            Err(Error::NonOrthonormalRotation { .. })
        ));
    }

    #[test]
    fn rejects_reflection() {
        let m = Mat3::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(matches!(
            RigidTransform::new(m, Point3::ORIGIN),
            Err(Error::ImproperRotation { .. })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let t = yaw(0.83);
        let p = Point3::new(3.0, -2.0, 7.5);
        let back = t.inverse().apply(t.apply(p));
        assert!((back - p).norm() < 1e-12);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = yaw(0.3);
        let b = yaw(-1.1);
        let p = Point3::new(-4.0, 0.5, 12.0);
        let composed = a.then(&b).apply(p);
        let sequential = b.apply(a.apply(p));
        assert!((composed - sequential).norm() < 1e-12);
    }

    #[test]
    fn preserves_pairwise_distances() {
        let t = yaw(2.4);
        let a = Point3::new(1.0, 2.0, 3.0);
        let b = Point3::new(-2.0, 0.25, 9.0);
        let before = a.dist(b);
        let after = t.apply(a).dist(t.apply(b));
        assert!((before - after).abs() <= 1e-9 * before);
    }

    #[test]
    fn gram_schmidt_cleans_noisy_rotation() {
        let mut noisy = Mat3::rotation_y(0.7);
        let mut rows = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = noisy.get(i, j) + 1e-5 * ((i + 2 * j) as f64 - 2.0);
            }
        }
        noisy = Mat3::from_rows(rows);
        assert!(noisy.orthonormality_deviation() > ROTATION_TOL);
        let cleaned = noisy.orthonormalized().unwrap();
        assert!(cleaned.orthonormality_deviation() <= 1e-12);
        assert!((cleaned.det() - 1.0).abs() <= 1e-12);
    }
}
