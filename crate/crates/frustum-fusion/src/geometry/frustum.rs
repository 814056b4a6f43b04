use alloc::vec::Vec;

use crate::cloud::Frame;
use crate::error::{Error, Result};

use super::bbox::BBox2D;
use super::camera::CameraIntrinsics;
use super::point::Point3;
use super::transform::RigidTransform;

/// Points within this distance of a plane count as inside. Keeps membership
/// deterministic for points lying numerically on a face.
pub const PLANE_INSIDE_EPS: f64 = 1e-12;

/// An oriented half-space: inside is `normal . p >= offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Plane {
    normal: Point3,
    offset: f64,
}

impl Plane {
    /// Normalizes `normal` (scaling `offset` to match).
    pub fn new(normal: Point3, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if !(len.is_finite() && len > 1e-12) {
            return Err(Error::DegeneratePlane);
        }
        Ok(Plane {
            normal: normal * (1.0 / len),
            offset: offset / len,
        })
    }

    #[inline]
    pub fn normal(&self) -> Point3 {
        self.normal
    }

    #[inline]
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Positive inside, negative outside, in meters.
    #[inline]
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Re-express the half-space after mapping the geometry by `t`.
    fn transformed(&self, t: &RigidTransform) -> Plane {
        // n.(R^T (p - tr)) >= d  <=>  (R n).p >= d + (R n).tr
        let normal = t.apply_dir(self.normal);
        Plane {
            normal,
            offset: self.offset + normal.dot(t.translation()),
        }
    }
}

/// The clipped viewing volume a 2D box induces through a camera: four side
/// planes through the camera center plus near and far depth planes, stored
/// in a declared coordinate frame.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Frustum {
    planes: Vec<Plane>,
    frame: Frame,
}

impl Frustum {
    /// Builds the frustum of `bbox` seen through `cam`, expressed in the
    /// frame reached by `cam_to_common` and tagged `frame`.
    ///
    /// The box is clamped to the image first; a box entirely outside the
    /// image is rejected. A point is inside the result iff its camera-frame
    /// depth lies in `[near, far]` and its projection falls inside the
    /// clamped box.
    pub fn from_bbox(
        bbox: &BBox2D,
        cam: &CameraIntrinsics,
        cam_to_common: &RigidTransform,
        near: f64,
        far: f64,
        frame: Frame,
    ) -> Result<Frustum> {
        if !(near.is_finite() && far.is_finite() && near > 0.0 && far > near) {
            return Err(Error::InvalidDepthRange { near, far });
        }
        let b = bbox.clamped_to_image(cam.width(), cam.height())?;
        if b.area() <= 0.0 {
            return Err(Error::DegenerateBox);
        }

        let (f_u, f_v, c_u, c_v) = (cam.f_u(), cam.f_v(), cam.c_u(), cam.c_v());
        // Side planes pass through the camera center: u >= u_min becomes
        // f_u*x + (c_u - u_min)*z >= 0 for z > 0, and so on.
        let planes = [
            Plane::new(Point3::new(f_u, 0.0, c_u - b.u_min()), 0.0)?,
            Plane::new(Point3::new(-f_u, 0.0, b.u_max() - c_u), 0.0)?,
            Plane::new(Point3::new(0.0, f_v, c_v - b.v_min()), 0.0)?,
            Plane::new(Point3::new(0.0, -f_v, b.v_max() - c_v), 0.0)?,
            Plane::new(Point3::new(0.0, 0.0, 1.0), near)?,
            Plane::new(Point3::new(0.0, 0.0, -1.0), -far)?,
        ];
        Ok(Frustum {
            planes: planes
                .iter()
                .map(|p| p.transformed(cam_to_common))
                .collect(),
            frame,
        })
    }

    #[inline]
    pub fn frame(&self) -> Frame {
        self.frame
    }

    #[inline]
    pub fn planes(&self) -> &[Plane] {
        &self.planes
    }

    /// True when `p` satisfies every half-space (within [`PLANE_INSIDE_EPS`]).
    #[inline]
    pub fn contains(&self, p: Point3) -> bool {
        self.planes
            .iter()
            .all(|plane| plane.signed_distance(p) >= -PLANE_INSIDE_EPS)
    }

    /// Smallest absolute distance from `p` to any face plane.
    pub fn boundary_distance(&self, p: Point3) -> f64 {
        self.planes
            .iter()
            .map(|plane| plane.signed_distance(p).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// The same volume after mapping all geometry by `t`, retagged `frame`.
    pub fn transformed(&self, t: &RigidTransform, frame: Frame) -> Frustum {
        Frustum {
            planes: self.planes.iter().map(|p| p.transformed(t)).collect(),
            frame,
        }
    }
}

/// The pair of frustums induced by one stereo detection, expressed in a
/// single common frame. Membership means "inside both".
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrustumIntersection {
    left: Frustum,
    right: Frustum,
}

impl FrustumIntersection {
    pub fn new(left: Frustum, right: Frustum) -> Result<Self> {
        if left.frame != right.frame {
            return Err(Error::FrameMismatch {
                expected: left.frame,
                actual: right.frame,
            });
        }
        Ok(FrustumIntersection { left, right })
    }

    #[inline]
    pub fn left(&self) -> &Frustum {
        &self.left
    }
    #[inline]
    pub fn right(&self) -> &Frustum {
        &self.right
    }
    #[inline]
    pub fn frame(&self) -> Frame {
        self.left.frame
    }

    /// True iff `p` lies inside both frustums.
    #[inline]
    pub fn contains(&self, p: Point3) -> bool {
        self.left.contains(p) && self.right.contains(p)
    }

    /// Smallest absolute distance from `p` to any face of either frustum.
    pub fn boundary_distance(&self, p: Point3) -> f64 {
        self.left
            .boundary_distance(p)
            .min(self.right.boundary_distance(p))
    }

    pub fn transformed(&self, t: &RigidTransform, frame: Frame) -> FrustumIntersection {
        FrustumIntersection {
            left: self.left.transformed(t, frame),
            right: self.right.transformed(t, frame),
        }
    }
}
