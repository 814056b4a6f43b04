use crate::error::{Error, Result};
use crate::math;

use super::point::Point3;

/// A 3D box with arbitrary yaw about the frame's y axis.
///
/// `half_extents` are along the box's local x (length), y (height) and
/// z (width) axes. The camera-frame convention (y down, z forward) makes
/// yaw the heading of vehicles on a level ground plane.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrientedBox {
    center: Point3,
    half_extents: Point3,
    yaw: f64,
}

impl OrientedBox {
    pub fn new(center: Point3, half_extents: Point3, yaw: f64) -> Result<Self> {
        if !(center.is_finite() && half_extents.is_finite() && yaw.is_finite()) {
            return Err(Error::NonFinitePoint { index: 0 });
        }
        if half_extents.x <= 0.0 || half_extents.y <= 0.0 || half_extents.z <= 0.0 {
            return Err(Error::InvalidParameter("box half extents must be positive"));
        }
        Ok(OrientedBox {
            center,
            half_extents,
            yaw,
        })
    }

    #[inline]
    pub fn center(&self) -> Point3 {
        self.center
    }
    #[inline]
    pub fn half_extents(&self) -> Point3 {
        self.half_extents
    }
    #[inline]
    pub fn yaw(&self) -> f64 {
        self.yaw
    }

    #[inline]
    pub fn volume(&self) -> f64 {
        8.0 * self.half_extents.x * self.half_extents.y * self.half_extents.z
    }

    /// World coordinates of a local-frame point.
    #[inline]
    fn to_world(&self, local: Point3) -> Point3 {
        let (s, c) = (math::sin(self.yaw), math::cos(self.yaw));
        Point3::new(
            c * local.x + s * local.z + self.center.x,
            local.y + self.center.y,
            -s * local.x + c * local.z + self.center.z,
        )
    }

    /// Local coordinates of a world point.
    #[inline]
    fn to_local(&self, world: Point3) -> Point3 {
        let d = world - self.center;
        let (s, c) = (math::sin(self.yaw), math::cos(self.yaw));
        Point3::new(c * d.x - s * d.z, d.y, s * d.x + c * d.z)
    }

    pub fn corners(&self) -> [Point3; 8] {
        let h = self.half_extents;
        let mut out = [Point3::ORIGIN; 8];
        for (i, corner) in out.iter_mut().enumerate() {
            let sx = if i & 1 == 0 { -1.0 } else { 1.0 };
            let sy = if i & 2 == 0 { -1.0 } else { 1.0 };
            let sz = if i & 4 == 0 { -1.0 } else { 1.0 };
            *corner = self.to_world(Point3::new(sx * h.x, sy * h.y, sz * h.z));
        }
        out
    }

    /// Exact containment test; faces count as inside.
    pub fn contains(&self, p: Point3) -> bool {
        let l = self.to_local(p);
        let h = self.half_extents;
        l.x.abs() <= h.x && l.y.abs() <= h.y && l.z.abs() <= h.z
    }

    /// Slab intersection of the ray `origin + t * dir` with the box.
    ///
    /// Returns `(t_enter, t_exit)` when the ray hits, with `t_enter <=
    /// t_exit`; the interval is not clipped to positive `t`. `dir` need not
    /// be normalized.
    pub fn ray_intersection(&self, origin: Point3, dir: Point3) -> Option<(f64, f64)> {
        let o = self.to_local(origin);
        let d = self.to_local(origin + dir) - o;
        let h = self.half_extents;
        let mut t_enter = f64::NEG_INFINITY;
        let mut t_exit = f64::INFINITY;
        for axis in 0..3 {
            let (oc, dc, hc) = (o.axis(axis), d.axis(axis), h.axis(axis));
            if dc.abs() < 1e-15 {
                if oc.abs() > hc {
                    return None;
                }
                continue;
            }
            let t0 = (-hc - oc) / dc;
            let t1 = (hc - oc) / dc;
            let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
            t_enter = t_enter.max(lo);
            t_exit = t_exit.min(hi);
            if t_enter > t_exit {
                return None;
            }
        }
        Some((t_enter, t_exit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box_at(z: f64, yaw: f64) -> OrientedBox {
        OrientedBox::new(Point3::new(0.0, 0.0, z), Point3::new(1.0, 1.0, 1.0), yaw).unwrap()
    }

    #[test]
    fn contains_center_and_near_corners() {
        let b = unit_box_at(10.0, 0.4);
        assert!(b.contains(b.center()));
        for corner in b.corners() {
            // Just inside and just outside the corner.
            let inside = b.center() + (corner - b.center()) * 0.999;
            let outside = b.center() + (corner - b.center()) * 1.001;
            assert!(b.contains(inside));
            assert!(!b.contains(outside));
        }
        assert!(!b.contains(Point3::new(0.0, 2.01, 10.0)));
    }

    #[test]
    fn yaw_rotates_corners_in_xz() {
        let b = unit_box_at(0.0, core::f64::consts::FRAC_PI_4);
        let max_x = b
            .corners()
            .iter()
            .map(|c| c.x.abs())
            .fold(0.0f64, f64::max);
        // Unit cube rotated 45 degrees spans sqrt(2) in x.
        assert!((max_x - core::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn ray_hits_front_face() {
        let b = unit_box_at(10.0, 0.0);
        let (t0, t1) = b
            .ray_intersection(Point3::ORIGIN, Point3::new(0.0, 0.0, 1.0))
            .unwrap();
        assert!((t0 - 9.0).abs() < 1e-12);
        assert!((t1 - 11.0).abs() < 1e-12);
    }

    #[test]
    fn ray_misses_to_the_side() {
        let b = unit_box_at(10.0, 0.0);
        assert!(b
            .ray_intersection(Point3::ORIGIN, Point3::new(1.0, 0.0, 0.2))
            .is_none());
    }

    #[test]
    fn rejects_nonpositive_extent() {
        assert!(OrientedBox::new(Point3::ORIGIN, Point3::new(1.0, 0.0, 1.0), 0.0).is_err());
    }
}
