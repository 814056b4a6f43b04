//! Dense disparity maps and their back-projection into point clouds.
//!
//! A rectified disparity `d` at pixel `(u, v)` corresponds to the 3D point
//!
//! ```text
//! z = f_u * b / d
//! x = (u - c_u) * z / f_u
//! y = (v - c_v) * z / f_v
//! ```
//!
//! in the rectified left-camera frame. Conversion walks the map row-major,
//! so output order is deterministic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cloud::{CloudSource, Frame, PointCloud};
use crate::error::{Error, Result};
use crate::geometry::{Point3, StereoRig};
use crate::math;

/// Azimuth cells per full turn used by [`sparsify_like_lidar`]; roughly the
/// horizontal resolution of a spinning 64-beam unit.
pub const SPARSIFY_AZIMUTH_STEPS: u32 = 2048;

/// Per-pixel disparity with a validity mask, matching the left image size.
///
/// Values are in pixels and must be positive wherever the mask is set;
/// masked-out pixels are ignored entirely.
#[derive(Clone, Debug, PartialEq)]
pub struct DisparityMap {
    width: u32,
    height: u32,
    values: Vec<f64>,
    valid: Vec<bool>,
}

impl DisparityMap {
    /// Takes row-major `values` and `valid` of length `width * height`.
    pub fn new(width: u32, height: u32, values: Vec<f64>, valid: Vec<bool>) -> Result<Self> {
        let expected = width as usize * height as usize;
        if values.len() != expected || valid.len() != expected {
            return Err(Error::DimensionMismatch {
                expected: (width, height),
                actual: (values.len() as u32, valid.len() as u32),
            });
        }
        Ok(DisparityMap {
            width,
            height,
            values,
            valid,
        })
    }

    /// Builds a pseudo-disparity map from a metric depth map by inverting
    /// the depth equation per pixel. Depths must be positive where valid.
    pub fn from_depth(
        width: u32,
        height: u32,
        depths: &[f64],
        valid: Vec<bool>,
        rig: &StereoRig,
    ) -> Result<Self> {
        if depths.len() != width as usize * height as usize {
            return Err(Error::DimensionMismatch {
                expected: (width, height),
                actual: (depths.len() as u32, height),
            });
        }
        let mut values = Vec::with_capacity(depths.len());
        for (i, (&z, &ok)) in depths.iter().zip(&valid).enumerate() {
            if ok && !(z.is_finite() && z > 0.0) {
                return Err(Error::InvalidDisparity {
                    u: (i % width as usize) as u32,
                    v: (i / width as usize) as u32,
                });
            }
            values.push(if ok { rig.disparity_from_depth(z) } else { 0.0 });
        }
        DisparityMap::new(width, height, values, valid)
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }
    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }
    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    #[inline]
    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    #[inline]
    pub fn value(&self, u: u32, v: u32) -> f64 {
        self.values[v as usize * self.width as usize + u as usize]
    }

    #[inline]
    pub fn is_valid(&self, u: u32, v: u32) -> bool {
        self.valid[v as usize * self.width as usize + u as usize]
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&b| b).count()
    }
}

/// Back-projects every valid pixel into the rectified left-camera frame.
///
/// Pixels deeper than `max_depth`, and pixels more than `height_clip`
/// meters above the camera horizon (sky and overhangs), are dropped.
/// Output order is row-major over the surviving pixels; the cloud carries
/// no intensity channel.
pub fn disparity_to_cloud(
    disp: &DisparityMap,
    rig: &StereoRig,
    max_depth: f64,
    height_clip: f64,
) -> Result<PointCloud> {
    let cam = rig.left();
    if disp.width() != cam.width() || disp.height() != cam.height() {
        return Err(Error::DimensionMismatch {
            expected: (cam.width(), cam.height()),
            actual: (disp.width(), disp.height()),
        });
    }
    if !(max_depth.is_finite() && max_depth > 0.0) {
        return Err(Error::InvalidParameter("max_depth must be positive"));
    }
    if !height_clip.is_finite() {
        return Err(Error::InvalidParameter("height_clip must be finite"));
    }

    let (f_u, f_v, c_u, c_v) = (cam.f_u(), cam.f_v(), cam.c_u(), cam.c_v());
    let fb = f_u * rig.baseline();
    let mut points = Vec::new();
    for v in 0..disp.height() {
        for u in 0..disp.width() {
            if !disp.is_valid(u, v) {
                continue;
            }
            let d = disp.value(u, v);
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidDisparity { u, v });
            }
            let z = fb / d;
            if z > max_depth {
                continue;
            }
            let y = (v as f64 - c_v) * z / f_v;
            if y < -height_clip {
                continue;
            }
            let x = (u as f64 - c_u) * z / f_u;
            points.push(Point3::new(x, y, z));
        }
    }
    PointCloud::new(points, None, Frame::CameraRect, CloudSource::PseudoLidar)
}

/// Thins a dense pseudo-LiDAR cloud down to a ring pattern resembling a
/// spinning scanner with `beams` elevation lines.
///
/// Elevation is binned uniformly between the cloud's extreme elevations and
/// azimuth into [`SPARSIFY_AZIMUTH_STEPS`] cells; each occupied
/// (beam, azimuth) cell keeps the single point closest to the beam's center
/// elevation, ties resolving to the lowest input index. Output preserves
/// input order. Intended only for comparisons against ring-sampled baselines.
pub fn sparsify_like_lidar(cloud: &PointCloud, beams: u32) -> Result<PointCloud> {
    if beams == 0 {
        return Err(Error::ZeroBeams);
    }
    if cloud.source() != CloudSource::PseudoLidar {
        return Err(Error::WrongSource {
            expected: CloudSource::PseudoLidar,
            actual: cloud.source(),
        });
    }
    if cloud.is_empty() {
        return Ok(cloud.clone());
    }

    // Elevation/azimuth depend on which axis is "up" in the cloud's frame.
    let angles: Vec<(f64, f64)> = cloud
        .points()
        .iter()
        .map(|p| match cloud.frame() {
            Frame::CameraRect => (
                math::atan2(-p.y, math::sqrt(p.x * p.x + p.z * p.z)),
                math::atan2(p.x, p.z),
            ),
            Frame::Lidar => (
                math::atan2(p.z, math::sqrt(p.x * p.x + p.y * p.y)),
                math::atan2(p.y, p.x),
            ),
        })
        .collect();

    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(elev, _) in &angles {
        lo = lo.min(elev);
        hi = hi.max(elev);
    }
    let span = (hi - lo).max(1e-12);
    let beam_height = span / beams as f64;

    let mut keep: BTreeMap<(u32, u32), (f64, usize)> = BTreeMap::new();
    for (i, &(elev, azim)) in angles.iter().enumerate() {
        let beam = (math::floor((elev - lo) / beam_height) as i64).clamp(0, beams as i64 - 1);
        let az_cell = (math::floor(
            (azim + core::f64::consts::PI) / core::f64::consts::TAU
                * SPARSIFY_AZIMUTH_STEPS as f64,
        ) as i64)
            .clamp(0, SPARSIFY_AZIMUTH_STEPS as i64 - 1);
        let center = lo + (beam as f64 + 0.5) * beam_height;
        let score = math::abs(elev - center);
        keep.entry((beam as u32, az_cell as u32))
            .and_modify(|slot| {
                if score < slot.0 {
                    *slot = (score, i);
                }
            })
            .or_insert((score, i));
    }

    let mut indices: Vec<usize> = keep.values().map(|&(_, i)| i).collect();
    indices.sort_unstable();
    Ok(cloud.subset(&indices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CameraIntrinsics;
    use alloc::vec;

    fn rig(width: u32, height: u32) -> StereoRig {
        let cam = CameraIntrinsics::new(
            700.0,
            700.0,
            width as f64 / 2.0,
            height as f64 / 2.0,
            width,
            height,
        )
        .unwrap();
        StereoRig::symmetric(cam, 0.54).unwrap()
    }

    fn single_pixel_map(width: u32, height: u32, u: u32, v: u32, d: f64) -> DisparityMap {
        let n = (width * height) as usize;
        let mut values = vec![0.0; n];
        let mut valid = vec![false; n];
        let idx = (v * width + u) as usize;
        values[idx] = d;
        valid[idx] = true;
        DisparityMap::new(width, height, values, valid).unwrap()
    }

    #[test]
    fn depth_equation_hand_value() {
        // f_u * b = 700 * 0.54 = 378, so disparity 378 px sits at 1 m.
        let r = rig(64, 32);
        let map = single_pixel_map(64, 32, 10, 10, 378.0);
        let cloud = disparity_to_cloud(&map, &r, 80.0, 1.0).unwrap();
        assert_eq!(cloud.len(), 1);
        assert!((cloud.points()[0].z - 1.0).abs() < 1e-12);
    }

    #[test]
    fn principal_point_maps_to_optical_axis() {
        let r = rig(64, 32);
        let map = single_pixel_map(64, 32, 32, 16, 50.0);
        let cloud = disparity_to_cloud(&map, &r, 80.0, 10.0).unwrap();
        assert_eq!(cloud.points()[0].x, 0.0);
        assert_eq!(cloud.points()[0].y, 0.0);
    }

    #[test]
    fn constant_disparity_patch_is_constant_depth() {
        let r = rig(8, 8);
        let d = 700.0 * 0.54 / 20.0;
        let mut values = vec![0.0; 64];
        let mut valid = vec![false; 64];
        for v in 2..6u32 {
            for u in 2..6u32 {
                values[(v * 8 + u) as usize] = d;
                valid[(v * 8 + u) as usize] = true;
            }
        }
        let map = DisparityMap::new(8, 8, values, valid).unwrap();
        let cloud = disparity_to_cloud(&map, &r, 80.0, 100.0).unwrap();
        assert_eq!(cloud.len(), 16);
        for p in cloud.points() {
            assert!((p.z - 20.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let r = rig(64, 32);
        let map = single_pixel_map(32, 32, 1, 1, 100.0);
        assert!(matches!(
            disparity_to_cloud(&map, &r, 80.0, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_disparity_valid_pixel_is_a_mask_violation() {
        let r = rig(64, 32);
        let map = single_pixel_map(64, 32, 5, 6, 0.0);
        assert!(matches!(
            disparity_to_cloud(&map, &r, 80.0, 1.0),
            Err(Error::InvalidDisparity { u: 5, v: 6 })
        ));
    }

    #[test]
    fn max_depth_and_height_clip_drop_pixels() {
        let r = rig(64, 32);
        // Disparity for 100 m exceeds the 80 m cap.
        let deep = single_pixel_map(64, 32, 32, 16, 700.0 * 0.54 / 100.0);
        assert_eq!(disparity_to_cloud(&deep, &r, 80.0, 1.0).unwrap().len(), 0);
        // Top-row pixel at 30 m sits well above the horizon.
        let high = single_pixel_map(64, 32, 32, 0, 700.0 * 0.54 / 30.0);
        assert_eq!(disparity_to_cloud(&high, &r, 80.0, 0.2).unwrap().len(), 0);
        assert_eq!(disparity_to_cloud(&high, &r, 80.0, 10.0).unwrap().len(), 1);
    }

    #[test]
    fn doubling_disparity_halves_depth() {
        let r = rig(64, 32);
        for d in [1.5f64, 37.0, 200.0, 377.7] {
            let z1 = disparity_to_cloud(&single_pixel_map(64, 32, 3, 3, d), &r, 1e6, 1e6)
                .unwrap()
                .points()[0]
                .z;
            let z2 = disparity_to_cloud(&single_pixel_map(64, 32, 3, 3, 2.0 * d), &r, 1e6, 1e6)
                .unwrap()
                .points()[0]
                .z;
            assert!((z2 - z1 / 2.0).abs() <= 1e-12 * z1);
        }
    }

    #[test]
    fn output_size_counts_valid_unclipped_pixels() {
        let r = rig(16, 16);
        let mut values = vec![0.0; 256];
        let mut valid = vec![false; 256];
        // 12 valid pixels at 10 m, 3 beyond max depth.
        for i in 0..12usize {
            values[40 + i] = 700.0 * 0.54 / 10.0;
            valid[40 + i] = true;
        }
        for i in 0..3usize {
            values[100 + i] = 700.0 * 0.54 / 200.0;
            valid[100 + i] = true;
        }
        let map = DisparityMap::new(16, 16, values, valid).unwrap();
        let cloud = disparity_to_cloud(&map, &r, 80.0, 100.0).unwrap();
        assert_eq!(cloud.len(), 12);
    }

    #[test]
    fn back_projection_returns_source_pixel() {
        let r = rig(64, 32);
        let mut values = vec![0.0; 64 * 32];
        let mut valid = vec![false; 64 * 32];
        for v in 0..32u32 {
            for u in 0..64u32 {
                values[(v * 64 + u) as usize] = 20.0 + (u as f64) * 3.1 + (v as f64) * 0.7;
                valid[(v * 64 + u) as usize] = true;
            }
        }
        let map = DisparityMap::new(64, 32, values, valid).unwrap();
        let cloud = disparity_to_cloud(&map, &r, 1e9, 1e9).unwrap();
        assert_eq!(cloud.len(), 64 * 32);
        let mut i = 0;
        for v in 0..32u32 {
            for u in 0..64u32 {
                let px = r.left().project(cloud.points()[i]).unwrap();
                assert!((px.u - u as f64).abs() <= 1e-6);
                assert!((px.v - v as f64).abs() <= 1e-6);
                // Rectified disparity: the right-image column is shifted by
                // exactly the disparity value.
                let p_right = r.left_to_right().apply(cloud.points()[i]);
                let px_r = r.right().project(p_right).unwrap();
                assert!((px_r.u - (px.u - map.value(u, v))).abs() <= 1e-6);
                i += 1;
            }
        }
    }

    #[test]
    fn from_depth_inverts_depth_equation() {
        let r = rig(4, 4);
        let depths = vec![10.0; 16];
        let map = DisparityMap::from_depth(4, 4, &depths, vec![true; 16], &r).unwrap();
        let cloud = disparity_to_cloud(&map, &r, 80.0, 100.0).unwrap();
        for p in cloud.points() {
            assert!((p.z - 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sparsify_rejects_bad_inputs() {
        let pl = PointCloud::new(
            vec![Point3::new(0.0, 0.0, 5.0)],
            None,
            Frame::CameraRect,
            CloudSource::PseudoLidar,
        )
        .unwrap();
        assert!(matches!(sparsify_like_lidar(&pl, 0), Err(Error::ZeroBeams)));
        let lidar = PointCloud::new(
            vec![Point3::new(0.0, 0.0, 5.0)],
            None,
            Frame::Lidar,
            CloudSource::Lidar,
        )
        .unwrap();
        assert!(matches!(
            sparsify_like_lidar(&lidar, 64),
            Err(Error::WrongSource { .. })
        ));
    }

    #[test]
    fn sparsify_single_point_is_kept() {
        let pl = PointCloud::new(
            vec![Point3::new(0.4, -0.2, 9.0)],
            None,
            Frame::CameraRect,
            CloudSource::PseudoLidar,
        )
        .unwrap();
        let out = sparsify_like_lidar(&pl, 64).unwrap();
        assert_eq!(out.points(), pl.points());
    }

    #[test]
    fn sparsify_with_enough_beams_is_identity() {
        // Distinct elevations, one azimuth column each: every point owns a cell.
        let points: Vec<Point3> = (0..40)
            .map(|i| Point3::new(0.0, -0.05 * i as f64, 10.0))
            .collect();
        let pl = PointCloud::new(points, None, Frame::CameraRect, CloudSource::PseudoLidar).unwrap();
        let out = sparsify_like_lidar(&pl, 4000).unwrap();
        assert_eq!(out.len(), pl.len());
        assert_eq!(out.points(), pl.points());
    }

    #[test]
    fn sparsify_sphere_occupies_at_most_beam_count_bins() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let points: Vec<Point3> = (0..10_000)
            .map(|_| {
                // Uniform direction via normalized Gaussian triple.
                loop {
                    let p = Point3::new(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    );
                    let n = p.norm();
                    if n > 1e-3 {
                        break p * (10.0 / n);
                    }
                }
            })
            .collect();
        let pl = PointCloud::new(points, None, Frame::CameraRect, CloudSource::PseudoLidar).unwrap();
        let beams = 64u32;
        let out = sparsify_like_lidar(&pl, beams).unwrap();
        assert!(!out.is_empty());
        assert!(out.len() < pl.len());

        // Re-bin output elevations over the input's span: at most `beams`
        // occupied bins.
        let elev = |p: &Point3| math::atan2(-p.y, math::sqrt(p.x * p.x + p.z * p.z));
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in pl.points() {
            lo = lo.min(elev(p));
            hi = hi.max(elev(p));
        }
        let mut occupied = vec![false; beams as usize];
        for p in out.points() {
            let bin = (((elev(p) - lo) / (hi - lo) * beams as f64) as i64)
                .clamp(0, beams as i64 - 1) as usize;
            occupied[bin] = true;
        }
        assert!(occupied.iter().filter(|&&b| b).count() <= beams as usize);
    }
}
