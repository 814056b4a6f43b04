use crate::error::{Error, Result};

use super::point::Point3;
use super::transform::RigidTransform;

/// Continuous image coordinates, in pixels.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pixel {
    pub u: f64,
    pub v: f64,
}

impl Pixel {
    #[inline]
    pub const fn new(u: f64, v: f64) -> Self {
        Pixel { u, v }
    }
}

/// Pinhole intrinsics of one rectified camera.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CameraIntrinsics {
    f_u: f64,
    f_v: f64,
    c_u: f64,
    c_v: f64,
    width: u32,
    height: u32,
}

impl CameraIntrinsics {
    /// `f_u`/`f_v` are the horizontal/vertical focal lengths and
    /// `(c_u, c_v)` the principal point, all in pixels.
    pub fn new(f_u: f64, f_v: f64, c_u: f64, c_v: f64, width: u32, height: u32) -> Result<Self> {
        if !(f_u.is_finite() && f_v.is_finite() && f_u > 0.0 && f_v > 0.0) {
            return Err(Error::InvalidIntrinsics("focal lengths must be positive"));
        }
        if width == 0 || height == 0 {
            return Err(Error::InvalidIntrinsics("image dimensions must be nonzero"));
        }
        if !(c_u > 0.0 && c_u < width as f64 && c_v > 0.0 && c_v < height as f64) {
            return Err(Error::InvalidIntrinsics(
                "principal point must lie inside the image",
            ));
        }
        Ok(CameraIntrinsics {
            f_u,
            f_v,
            c_u,
            c_v,
            width,
            height,
        })
    }

    #[inline]
    pub fn f_u(&self) -> f64 {
        self.f_u
    }
    #[inline]
    pub fn f_v(&self) -> f64 {
        self.f_v
    }
    #[inline]
    pub fn c_u(&self) -> f64 {
        self.c_u
    }
    #[inline]
    pub fn c_v(&self) -> f64 {
        self.c_v
    }
    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }
    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }

    /// Perspective projection of a camera-frame point.
    ///
    /// Returns `None` for points at or behind the camera plane (`z <= 0`);
    /// points in front always produce a pixel, even one outside the image.
    #[inline]
    pub fn project(&self, p: Point3) -> Option<Pixel> {
        if p.z <= 0.0 {
            return None;
        }
        Some(Pixel::new(
            p.x * self.f_u / p.z + self.c_u,
            p.y * self.f_v / p.z + self.c_v,
        ))
    }

    /// Inverse of [`project`](Self::project) at a known depth.
    #[inline]
    pub fn unproject(&self, px: Pixel, depth: f64) -> Point3 {
        Point3::new(
            (px.u - self.c_u) * depth / self.f_u,
            (px.v - self.c_v) * depth / self.f_v,
            depth,
        )
    }
}

/// A rectified stereo pair: two cameras sharing focal length, separated by a
/// horizontal baseline `b` (meters), left camera at the frame origin.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StereoRig {
    left: CameraIntrinsics,
    right: CameraIntrinsics,
    baseline: f64,
}

impl StereoRig {
    pub fn new(left: CameraIntrinsics, right: CameraIntrinsics, baseline: f64) -> Result<Self> {
        if !(baseline.is_finite() && baseline > 0.0) {
            return Err(Error::InvalidRig("baseline must be positive"));
        }
        // A rectified pair shares its horizontal focal length.
        let rel = (left.f_u - right.f_u).abs() / left.f_u;
        if rel > 1e-6 {
            return Err(Error::InvalidRig(
                "rectified pair must share horizontal focal length",
            ));
        }
        Ok(StereoRig {
            left,
            right,
            baseline,
        })
    }

    /// Identical intrinsics on both cameras.
    pub fn symmetric(cam: CameraIntrinsics, baseline: f64) -> Result<Self> {
        StereoRig::new(cam, cam, baseline)
    }

    #[inline]
    pub fn left(&self) -> &CameraIntrinsics {
        &self.left
    }
    #[inline]
    pub fn right(&self) -> &CameraIntrinsics {
        &self.right
    }
    #[inline]
    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    /// Maps left-camera coordinates into right-camera coordinates.
    pub fn left_to_right(&self) -> RigidTransform {
        RigidTransform::from_translation(Point3::new(-self.baseline, 0.0, 0.0))
    }

    /// Maps right-camera coordinates into left-camera (common) coordinates.
    pub fn right_to_left(&self) -> RigidTransform {
        RigidTransform::from_translation(Point3::new(self.baseline, 0.0, 0.0))
    }

    /// Depth from a rectified disparity: `z = f_u * b / d`.
    #[inline]
    pub fn depth_from_disparity(&self, disparity: f64) -> f64 {
        self.left.f_u * self.baseline / disparity
    }

    /// Disparity a point at depth `z` would have: `d = f_u * b / z`.
    #[inline]
    pub fn disparity_from_depth(&self, depth: f64) -> f64 {
        self.left.f_u * self.baseline / depth
    }
}

/// Axis-aligned image-plane hull of a set of 3D corners, in pixels.
///
/// Corners are mapped into the camera frame by `to_cam` before projecting.
/// Corners at or behind the image plane are skipped; returns `None` when no
/// corner projects. The hull is not clamped to the image.
pub fn project_hull(
    corners: &[Point3],
    cam: &CameraIntrinsics,
    to_cam: &RigidTransform,
) -> Option<(f64, f64, f64, f64)> {
    let mut hull: Option<(f64, f64, f64, f64)> = None;
    for &corner in corners {
        if let Some(px) = cam.project(to_cam.apply(corner)) {
            hull = Some(match hull {
                None => (px.u, px.v, px.u, px.v),
                Some((u0, v0, u1, v1)) => (u0.min(px.u), v0.min(px.v), u1.max(px.u), v1.max(px.v)),
            });
        }
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cam() -> CameraIntrinsics {
        CameraIntrinsics::new(700.0, 700.0, 600.0, 180.0, 1242, 375).unwrap()
    }

    #[test]
    fn principal_ray_hits_principal_point() {
        let c = cam();
        let px = c.project(Point3::new(0.0, 0.0, 10.0)).unwrap();
        assert_eq!(px, Pixel::new(600.0, 180.0));
    }

    #[test]
    fn unit_offset_at_unit_depth() {
        let c = cam();
        let px = c.project(Point3::new(1.0, 0.0, 1.0)).unwrap();
        assert_eq!(px.u, 1300.0);
    }

    #[test]
    fn behind_camera_is_not_projected() {
        assert!(cam().project(Point3::new(0.0, 0.0, -1.0)).is_none());
        assert!(cam().project(Point3::new(0.3, 0.1, 0.0)).is_none());
    }

    #[test]
    fn unproject_inverts_project() {
        let c = cam();
        let p = Point3::new(-3.2, 1.7, 24.0);
        let px = c.project(p).unwrap();
        let back = c.unproject(px, p.z);
        assert!((back - p).norm() <= 1e-9 * p.norm());
    }

    #[test]
    fn rig_rejects_mismatched_focal_lengths() {
        let left = cam();
        let right = CameraIntrinsics::new(701.0, 700.0, 600.0, 180.0, 1242, 375).unwrap();
        assert!(StereoRig::new(left, right, 0.54).is_err());
    }

    #[test]
    fn rig_rejects_nonpositive_baseline() {
        assert!(StereoRig::symmetric(cam(), 0.0).is_err());
        assert!(StereoRig::symmetric(cam(), -0.5).is_err());
    }

    #[test]
    fn intrinsics_invariants_enforced() {
        assert!(CameraIntrinsics::new(0.0, 700.0, 600.0, 180.0, 1242, 375).is_err());
        assert!(CameraIntrinsics::new(700.0, 700.0, 1300.0, 180.0, 1242, 375).is_err());
        assert!(CameraIntrinsics::new(700.0, 700.0, 600.0, 400.0, 1242, 375).is_err());
    }

    #[test]
    fn stereo_translation_shifts_disparity() {
        let rig = StereoRig::symmetric(cam(), 0.54).unwrap();
        let p = Point3::new(1.1, -0.4, 9.0);
        let left_px = rig.left().project(p).unwrap();
        let right_px = rig.right().project(rig.left_to_right().apply(p)).unwrap();
        let disparity = left_px.u - right_px.u;
        let expected = rig.disparity_from_depth(9.0);
        assert!((disparity - expected).abs() < 1e-9);
        assert_eq!(left_px.v, right_px.v);
    }
}
