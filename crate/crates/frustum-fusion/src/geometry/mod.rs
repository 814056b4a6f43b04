//! Camera models, rigid transforms, 2D boxes and frustum membership tests.
//!
//! All geometry here is immutable after construction and every operation is
//! a pure function, so the types are freely shareable across threads.

mod bbox;
mod camera;
mod frustum;
mod obb;
mod point;
mod transform;

pub use bbox::{BBox2D, ClassLabel};
pub use camera::{project_hull, CameraIntrinsics, Pixel, StereoRig};
pub use frustum::{Frustum, FrustumIntersection, Plane, PLANE_INSIDE_EPS};
pub use obb::OrientedBox;
pub use point::Point3;
pub use transform::{Mat3, RigidTransform};
