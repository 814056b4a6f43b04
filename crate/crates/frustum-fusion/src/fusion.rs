//! Distance-threshold fusion of LiDAR and pseudo-LiDAR point clouds inside
//! stereo detection frustum intersections.
//!
//! For each stereo detection pair, both clouds are restricted to the
//! intersection of the two induced frustums. Every pseudo-LiDAR point in
//! the intersection whose nearest LiDAR neighbour (within the same
//! intersection) is at least `tau` meters away is appended to the LiDAR
//! points; closer ones are considered redundant with the existing scan.
//! Distances are compared against the fixed LiDAR set, not against points
//! appended along the way, so the result is independent of point order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cloud::{CloudSource, Frame, PointCloud};
use crate::error::{Error, Result};
use crate::geometry::{
    BBox2D, ClassLabel, Frustum, FrustumIntersection, Point3, RigidTransform, StereoRig,
};
use crate::spatial::KdIndex;

/// Default distance threshold (meters) when a class has no override.
pub const DEFAULT_TAU: f64 = 0.7;
/// Default near clip plane (meters).
pub const DEFAULT_NEAR: f64 = 0.5;
/// Default far clip plane (meters).
pub const DEFAULT_FAR: f64 = 80.0;

/// What the fused output should contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OutputMode {
    /// Only points inside detection frustum intersections (LiDAR points
    /// that fall in one, plus accepted pseudo-LiDAR points).
    FrustumOnly,
    /// The entire original LiDAR scan plus accepted pseudo-LiDAR points.
    FullScene,
}

/// Tunable parameters of the fusion pass.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FusionConfig {
    /// Distance threshold in meters; a pseudo-LiDAR point is added when its
    /// nearest LiDAR neighbour is at least this far away.
    pub tau: f64,
    /// Frustum near clip plane, meters.
    pub near: f64,
    /// Frustum far clip plane, meters.
    pub far: f64,
    pub output_mode: OutputMode,
    /// Reflectance assigned to added pseudo-LiDAR points, in `[0, 1]`.
    pub added_intensity: f32,
    /// Per-class `tau` overrides; classes not present fall back to `tau`.
    pub per_class_tau: BTreeMap<ClassLabel, f64>,
}

impl Default for FusionConfig {
    /// Defaults favour the best-performing thresholds per class: 0.6 m for
    /// cars, 0.9 m for cyclists, 0.7 m for pedestrians, 0.7 m otherwise.
    fn default() -> Self {
        let mut per_class_tau = BTreeMap::new();
        per_class_tau.insert(ClassLabel::Car, 0.6);
        per_class_tau.insert(ClassLabel::Cyclist, 0.9);
        per_class_tau.insert(ClassLabel::Pedestrian, 0.7);
        FusionConfig {
            tau: DEFAULT_TAU,
            near: DEFAULT_NEAR,
            far: DEFAULT_FAR,
            output_mode: OutputMode::FrustumOnly,
            added_intensity: 0.0,
            per_class_tau,
        }
    }
}

impl FusionConfig {
    /// One threshold for every class; other fields keep their defaults.
    pub fn uniform(tau: f64) -> Self {
        FusionConfig {
            tau,
            per_class_tau: BTreeMap::new(),
            ..FusionConfig::default()
        }
    }

    /// The threshold used for a detection of the given class.
    pub fn effective_tau(&self, class: ClassLabel) -> f64 {
        self.per_class_tau.get(&class).copied().unwrap_or(self.tau)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return Err(Error::InvalidConfig("tau must be >= 0"));
        }
        for (_, &t) in &self.per_class_tau {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidConfig("per-class tau must be >= 0"));
            }
        }
        if !(self.near.is_finite() && self.far.is_finite() && self.near > 0.0 && self.near < self.far)
        {
            return Err(Error::InvalidConfig("need 0 < near < far"));
        }
        if !(0.0..=1.0).contains(&self.added_intensity) {
            return Err(Error::InvalidConfig("added_intensity must be in [0, 1]"));
        }
        Ok(())
    }
}

/// One object's 2D boxes on the left and right images. Both boxes carry the
/// same class.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DetectionPair {
    left_box: BBox2D,
    right_box: BBox2D,
}

impl DetectionPair {
    pub fn new(left_box: BBox2D, right_box: BBox2D) -> Result<Self> {
        if left_box.class() != right_box.class() {
            return Err(Error::InvalidParameter(
                "detection pair must share one class label",
            ));
        }
        Ok(DetectionPair {
            left_box,
            right_box,
        })
    }

    #[inline]
    pub fn left_box(&self) -> &BBox2D {
        &self.left_box
    }
    #[inline]
    pub fn right_box(&self) -> &BBox2D {
        &self.right_box
    }
    #[inline]
    pub fn class(&self) -> ClassLabel {
        self.left_box.class()
    }

    /// Builds both frustums in the common (rectified left camera) frame.
    pub fn intersection(
        &self,
        rig: &StereoRig,
        near: f64,
        far: f64,
    ) -> Result<FrustumIntersection> {
        let left = Frustum::from_bbox(
            &self.left_box,
            rig.left(),
            &RigidTransform::identity(),
            near,
            far,
            Frame::CameraRect,
        )?;
        let right = Frustum::from_bbox(
            &self.right_box,
            rig.right(),
            &rig.right_to_left(),
            near,
            far,
            Frame::CameraRect,
        )?;
        FrustumIntersection::new(left, right)
    }
}

/// Counts for one detection processed by [`fuse_frame`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DetectionCounts {
    pub class: ClassLabel,
    pub tau: f64,
    pub lidar_in_intersection: usize,
    pub pl_in_intersection: usize,
    pub pl_added: usize,
}

/// Wall-clock stage timings in milliseconds. All zero when the crate is
/// built without `std`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageTimings {
    /// Moving input clouds into the common frame.
    pub transform_ms: f64,
    /// Frustum membership tests over both clouds.
    pub extract_ms: f64,
    /// Index builds plus nearest-neighbour thresholding.
    pub fuse_ms: f64,
    /// Output assembly and frame restoration.
    pub assemble_ms: f64,
    pub total_ms: f64,
}

/// Summary of one [`fuse_frame`] call.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FusionReport {
    pub per_detection: Vec<DetectionCounts>,
    /// Sums over `per_detection`; points inside overlapping intersections
    /// are counted once per detection here but deduplicated in the output.
    pub total_lidar_in_intersection: usize,
    pub total_pl_in_intersection: usize,
    pub total_pl_added: usize,
    /// Points in the fused output cloud after deduplication.
    pub output_points: usize,
    pub timings: StageTimings,
}

/// Restricts `cloud` to the points inside `fi`.
///
/// Returns the sub-cloud together with the surviving points' indices into
/// `cloud`, in their original order. The cloud must already be expressed in
/// the intersection's frame.
pub fn extract_intersection(
    cloud: &PointCloud,
    fi: &FrustumIntersection,
) -> Result<(PointCloud, Vec<usize>)> {
    if cloud.frame() != fi.frame() {
        return Err(Error::FrameMismatch {
            expected: fi.frame(),
            actual: cloud.frame(),
        });
    }
    let indices: Vec<usize> = cloud
        .points()
        .iter()
        .enumerate()
        .filter(|(_, &p)| fi.contains(p))
        .map(|(i, _)| i)
        .collect();
    Ok((cloud.subset(&indices), indices))
}

/// Core merge rule for one frustum intersection.
///
/// Returns the indices (into `pl_in`) of the pseudo-LiDAR points whose
/// minimum Euclidean distance to `lidar_in` is at least `tau`. Distances
/// are measured against `lidar_in` as given — the reference set does not
/// grow as points are accepted — so the added set is independent of the
/// order of `pl_in`. With an empty `lidar_in` every point qualifies (the
/// minimum distance over an empty set is infinite).
///
/// Comparison happens in the squared domain (`dist^2 >= tau^2`), which is
/// exact for non-negative `tau`.
pub fn fuse_single(lidar_in: &PointCloud, pl_in: &PointCloud, tau: f64) -> Vec<usize> {
    debug_assert_eq!(lidar_in.frame(), pl_in.frame());
    let index = KdIndex::build(lidar_in.points());
    let tau_sq = tau * tau;
    pl_in
        .points()
        .iter()
        .enumerate()
        .filter(|(_, &p)| index.min_squared_distance(p) >= tau_sq)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(feature = "std")]
struct StageClock(std::time::Instant);

#[cfg(feature = "std")]
impl StageClock {
    fn start() -> Self {
        StageClock(std::time::Instant::now())
    }
    fn lap(&mut self) -> f64 {
        let now = std::time::Instant::now();
        let ms = now.duration_since(self.0).as_secs_f64() * 1e3;
        self.0 = now;
        ms
    }
}

#[cfg(not(feature = "std"))]
struct StageClock;

#[cfg(not(feature = "std"))]
impl StageClock {
    fn start() -> Self {
        StageClock
    }
    fn lap(&mut self) -> f64 {
        0.0
    }
}

/// Runs the full fusion pass for one frame.
///
/// `lidar` and `pl` arrive in their native frames (`lidar_to_cam` maps the
/// LiDAR frame into the rectified camera frame). Each detection is
/// processed independently with its class threshold; the union of results
/// is deduplicated by source index so a point inside two overlapping
/// intersections appears once.
///
/// Output ordering is stable: LiDAR-sourced points first in their original
/// relative order, then accepted pseudo-LiDAR points in theirs. The cloud
/// comes back in the LiDAR cloud's native frame, tagged
/// [`CloudSource::Fused`]; LiDAR coordinates are carried through untouched
/// (never round-tripped through the camera frame), and added points take
/// `config.added_intensity` as reflectance.
pub fn fuse_frame(
    lidar: &PointCloud,
    pl: &PointCloud,
    detections: &[DetectionPair],
    rig: &StereoRig,
    lidar_to_cam: &RigidTransform,
    config: &FusionConfig,
) -> Result<(PointCloud, FusionReport)> {
    config.validate()?;
    let mut clock = StageClock::start();
    let mut timings = StageTimings::default();

    let lidar_common_storage;
    let lidar_common = match lidar.frame() {
        Frame::CameraRect => lidar,
        Frame::Lidar => {
            lidar_common_storage = lidar.transformed(lidar_to_cam, Frame::CameraRect);
            &lidar_common_storage
        }
    };
    let pl_common_storage;
    let pl_common = match pl.frame() {
        Frame::CameraRect => pl,
        Frame::Lidar => {
            pl_common_storage = pl.transformed(lidar_to_cam, Frame::CameraRect);
            &pl_common_storage
        }
    };
    timings.transform_ms = clock.lap();

    let mut report = FusionReport::default();
    let mut lidar_kept: BTreeSet<usize> = BTreeSet::new();
    let mut pl_added: BTreeSet<usize> = BTreeSet::new();

    for pair in detections {
        let fi = pair.intersection(rig, config.near, config.far)?;
        let mut stage = StageClock::start();
        let (lidar_in, lidar_idx) = extract_intersection(lidar_common, &fi)?;
        let (pl_in, pl_idx) = extract_intersection(pl_common, &fi)?;
        timings.extract_ms += stage.lap();

        let tau = config.effective_tau(pair.class());
        let added_local = fuse_single(&lidar_in, &pl_in, tau);
        timings.fuse_ms += stage.lap();

        report.per_detection.push(DetectionCounts {
            class: pair.class(),
            tau,
            lidar_in_intersection: lidar_idx.len(),
            pl_in_intersection: pl_idx.len(),
            pl_added: added_local.len(),
        });
        report.total_lidar_in_intersection += lidar_idx.len();
        report.total_pl_in_intersection += pl_idx.len();
        report.total_pl_added += added_local.len();

        lidar_kept.extend(lidar_idx);
        pl_added.extend(added_local.into_iter().map(|i| pl_idx[i]));
    }
    clock.lap();

    // Assemble in the LiDAR cloud's native frame. LiDAR points are copied
    // from the input verbatim; pseudo-LiDAR points are transformed at most
    // once.
    let out_frame = lidar.frame();
    let cam_to_lidar = lidar_to_cam.inverse();
    let lidar_indices: Vec<usize> = match config.output_mode {
        OutputMode::FrustumOnly => lidar_kept.into_iter().collect(),
        OutputMode::FullScene => (0..lidar.len()).collect(),
    };

    let mut points: Vec<Point3> = Vec::with_capacity(lidar_indices.len() + pl_added.len());
    let mut intensities: Vec<f32> = Vec::with_capacity(lidar_indices.len() + pl_added.len());
    for &i in &lidar_indices {
        points.push(lidar.points()[i]);
        intensities.push(lidar.intensity_or(i, 0.0));
    }
    for &i in &pl_added {
        let p = if pl.frame() == out_frame {
            pl.points()[i]
        } else if out_frame == Frame::CameraRect {
            pl_common.points()[i]
        } else {
            cam_to_lidar.apply(pl_common.points()[i])
        };
        points.push(p);
        intensities.push(config.added_intensity);
    }
    report.output_points = points.len();

    let fused = PointCloud::new(points, Some(intensities), out_frame, CloudSource::Fused)?;
    timings.assemble_ms = clock.lap();
    timings.total_ms =
        timings.transform_ms + timings.extract_ms + timings.fuse_ms + timings.assemble_ms;
    report.timings = timings;
    Ok((fused, report))
}
