//! Deterministic synthetic scenes for exercising the fusion pipeline
//! without real sensor data.
//!
//! A scene places a few boxes on a ground plane in front of a stereo rig,
//! ray-casts a ring-structured LiDAR scan against them, renders a dense
//! depth map from the left camera (with depth noise growing as z^2, the
//! way stereo error does), and derives stereo detection boxes by projecting
//! the ground-truth boxes into both images. Everything is a pure function
//! of `(seed, spec)`, so byte-identical regeneration is guaranteed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::cloud::{CloudSource, Frame, PointCloud};
use crate::error::{Error, Result};
use crate::fusion::DetectionPair;
use crate::geometry::{
    project_hull, BBox2D, CameraIntrinsics, ClassLabel, Mat3, OrientedBox, Point3, RigidTransform,
    StereoRig,
};
use crate::pseudolidar::{disparity_to_cloud, DisparityMap};

/// Default depth-noise growth constant `k` in `sigma_z = k * z^2`
/// (0.25 m of noise at 20 m).
pub const DEFAULT_NOISE_K: f64 = 0.000625;

/// Default clip used when back-projecting the rendered disparity map.
pub const DEFAULT_MAX_DEPTH: f64 = 80.0;
/// Default sky clip (meters above the camera horizon).
pub const DEFAULT_HEIGHT_CLIP: f64 = 1.0;

/// Beam elevation limits of the simulated scanner, radians.
const ELEV_MIN: f64 = -0.24;
const ELEV_MAX: f64 = 0.02;
/// Rays are ignored closer than this, meters.
const MIN_RANGE: f64 = 0.3;
/// Attempts to place one object before giving up.
const PLACEMENT_ATTEMPTS: usize = 64;
/// Minimum visible pixel area for a derived detection box.
const MIN_BOX_AREA_PX: f64 = 100.0;

/// Scene parameters. Parsed from and serialized to a `key=value` text
/// format (one pair per line, `#` comments allowed).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SceneSpec {
    pub image_width: u32,
    pub image_height: u32,
    /// Shared focal length, pixels; the principal point sits at the image
    /// center.
    pub focal: f64,
    /// Stereo baseline, meters.
    pub baseline: f64,
    pub cars: u32,
    pub cyclists: u32,
    pub pedestrians: u32,
    /// Object depth placement range, meters.
    pub z_min: f64,
    pub z_max: f64,
    /// Depth noise constant `k` in `sigma_z = k * z^2`.
    pub noise_k: f64,
    /// Scanner elevation lines.
    pub beams: u32,
    /// Scanner azimuth samples across the field of view.
    pub azimuth_steps: u32,
    /// Scanner horizontal field of view, degrees, centered on forward.
    pub fov_deg: f64,
    /// Camera height above the ground plane, meters.
    pub ground_y: f64,
    /// Depth-map sampling stride in pixels (1 = every pixel).
    pub pl_stride: u32,
    /// Maximum surface range for both sensors, meters.
    pub max_range: f64,
}

impl Default for SceneSpec {
    fn default() -> Self {
        SceneSpec {
            image_width: 640,
            image_height: 192,
            focal: 350.0,
            baseline: 0.54,
            cars: 2,
            cyclists: 1,
            pedestrians: 1,
            z_min: 8.0,
            z_max: 38.0,
            noise_k: DEFAULT_NOISE_K,
            beams: 24,
            azimuth_steps: 700,
            fov_deg: 90.0,
            ground_y: 1.6,
            pl_stride: 1,
            max_range: 70.0,
        }
    }
}

impl SceneSpec {
    pub fn validate(&self) -> Result<()> {
        let err = |what: &str| Err(Error::SceneSpec(String::from(what)));
        if self.image_width < 32 || self.image_height < 32 {
            return err("image must be at least 32x32");
        }
        if !(self.focal.is_finite() && self.focal > 0.0) {
            return err("focal must be positive");
        }
        if !(self.baseline.is_finite() && self.baseline > 0.0) {
            return err("baseline must be positive");
        }
        if !(self.z_min.is_finite() && self.z_min >= 1.0 && self.z_max > self.z_min) {
            return err("need 1 <= z_min < z_max");
        }
        if self.z_max > self.max_range {
            return err("z_max places objects beyond max_range");
        }
        if self.max_range > DEFAULT_MAX_DEPTH {
            return err("max_range exceeds the depth clip");
        }
        if !(self.noise_k.is_finite() && self.noise_k >= 0.0) {
            return err("noise_k must be >= 0");
        }
        if self.beams == 0 || self.azimuth_steps < 2 {
            return err("need beams >= 1 and azimuth_steps >= 2");
        }
        if !(self.fov_deg > 0.0 && self.fov_deg <= 180.0) {
            return err("fov_deg must be in (0, 180]");
        }
        if !(self.ground_y.is_finite() && self.ground_y > 0.0) {
            return err("ground_y must be positive (camera above ground)");
        }
        if self.pl_stride == 0 {
            return err("pl_stride must be >= 1");
        }
        Ok(())
    }

    /// Parses the `key=value` text form. Unknown keys and malformed values
    /// are errors; absent keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = SceneSpec::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::SceneSpec(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |key: &str| Error::SceneSpec(format!("line {}: bad value for {key}", lineno + 1));
            macro_rules! set {
                ($field:ident) => {
                    spec.$field = value.parse().map_err(|_| bad(key))?
                };
            }
            match key {
                "image_width" => set!(image_width),
                "image_height" => set!(image_height),
                "focal" => set!(focal),
                "baseline" => set!(baseline),
                "cars" => set!(cars),
                "cyclists" => set!(cyclists),
                "pedestrians" => set!(pedestrians),
                "z_min" => set!(z_min),
                "z_max" => set!(z_max),
                "noise_k" => set!(noise_k),
                "beams" => set!(beams),
                "azimuth_steps" => set!(azimuth_steps),
                "fov_deg" => set!(fov_deg),
                "ground_y" => set!(ground_y),
                "pl_stride" => set!(pl_stride),
                "max_range" => set!(max_range),
                _ => {
                    return Err(Error::SceneSpec(format!(
                        "line {}: unknown key `{key}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(spec)
    }

    /// The `key=value` text form accepted by [`SceneSpec::parse`].
    pub fn to_key_values(&self) -> String {
        format!(
            "image_width={}\nimage_height={}\nfocal={}\nbaseline={}\ncars={}\ncyclists={}\npedestrians={}\nz_min={}\nz_max={}\nnoise_k={}\nbeams={}\nazimuth_steps={}\nfov_deg={}\nground_y={}\npl_stride={}\nmax_range={}\n",
            self.image_width,
            self.image_height,
            self.focal,
            self.baseline,
            self.cars,
            self.cyclists,
            self.pedestrians,
            self.z_min,
            self.z_max,
            self.noise_k,
            self.beams,
            self.azimuth_steps,
            self.fov_deg,
            self.ground_y,
            self.pl_stride,
            self.max_range,
        )
    }

    pub fn rig(&self) -> Result<StereoRig> {
        let cam = CameraIntrinsics::new(
            self.focal,
            self.focal,
            self.image_width as f64 / 2.0,
            self.image_height as f64 / 2.0,
            self.image_width,
            self.image_height,
        )?;
        StereoRig::symmetric(cam, self.baseline)
    }
}

/// A ground-truth object: class plus oriented 3D box in the camera frame.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GtObject {
    pub class: ClassLabel,
    pub obb: OrientedBox,
}

/// A fully realized synthetic frame.
#[derive(Clone, Debug)]
pub struct SyntheticScene {
    pub spec: SceneSpec,
    pub rig: StereoRig,
    /// Maps LiDAR-frame coordinates into the rectified camera frame.
    pub lidar_to_cam: RigidTransform,
    /// Ground-truth boxes, camera frame.
    pub boxes: Vec<GtObject>,
    /// Detection pairs derived by projecting the boxes into both images.
    pub detections: Vec<DetectionPair>,
    /// Ring-sampled scan, LiDAR frame, with reflectances.
    pub lidar: PointCloud,
    /// Rendered disparity map (left camera).
    pub disparity: DisparityMap,
    /// Dense back-projection of `disparity`, camera frame.
    pub pl: PointCloud,
}

/// The fixed scanner-to-camera extrinsics used by synthetic scenes:
/// x_cam = -y_lidar, y_cam = -z_lidar, z_cam = x_lidar, plus a small
/// lever arm.
pub fn nominal_lidar_to_cam() -> RigidTransform {
    let rotation = Mat3::from_rows([[0.0, -1.0, 0.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0]]);
    RigidTransform::new(rotation, Point3::new(-0.003, -0.075, -0.272))
        .expect("fixed axis permutation is a rotation")
}

fn class_dims(class: ClassLabel) -> (f64, f64, f64) {
    // (length, width, height), meters.
    match class {
        ClassLabel::Car => (4.2, 1.8, 1.6),
        ClassLabel::Cyclist => (1.8, 0.6, 1.7),
        ClassLabel::Pedestrian => (0.65, 0.65, 1.75),
    }
}

/// Nearest forward surface hit by `origin + t*dir`, as `(t, box index)`,
/// with `usize::MAX` marking the ground plane.
fn cast_ray(
    origin: Point3,
    dir: Point3,
    boxes: &[GtObject],
    ground_y: f64,
    max_range: f64,
) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    if dir.y > 1e-9 {
        let t = (ground_y - origin.y) / dir.y;
        if t >= MIN_RANGE && t <= max_range {
            best = Some((t, usize::MAX));
        }
    }
    for (i, gt) in boxes.iter().enumerate() {
        if let Some((t_enter, t_exit)) = gt.obb.ray_intersection(origin, dir) {
            let t = if t_enter >= MIN_RANGE { t_enter } else { t_exit };
            if t >= MIN_RANGE && t <= max_range && best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, i));
            }
        }
    }
    best
}

/// Generates a scene. Deterministic for a fixed `(seed, spec)` pair.
pub fn generate_scene(seed: u64, spec: &SceneSpec) -> Result<SyntheticScene> {
    spec.validate()?;
    let rig = spec.rig()?;
    let cam = *rig.left();
    let lidar_to_cam = nominal_lidar_to_cam();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Object placement: sampled in depth then laterally, constrained so
    // the whole box projects inside both images with a margin.
    let mut boxes: Vec<GtObject> = Vec::new();
    let mut radii: Vec<f64> = Vec::new();
    let margin = 12.0;
    let classes = core::iter::empty()
        .chain(core::iter::repeat(ClassLabel::Car).take(spec.cars as usize))
        .chain(core::iter::repeat(ClassLabel::Cyclist).take(spec.cyclists as usize))
        .chain(core::iter::repeat(ClassLabel::Pedestrian).take(spec.pedestrians as usize));
    for (obj_index, class) in classes.enumerate() {
        let (l0, w0, h0) = class_dims(class);
        let l = l0 * rng.random_range(0.9..1.1);
        let w = w0 * rng.random_range(0.9..1.1);
        let h = h0 * rng.random_range(0.9..1.1);
        let r_xz = 0.5 * math_hypot(l, w);

        let mut placed = false;
        for _ in 0..PLACEMENT_ATTEMPTS {
            let z = rng.random_range(spec.z_min..spec.z_max);
            let x_lim = (z - r_xz) * (cam.c_u() - margin) / cam.f_u() - r_xz;
            if x_lim <= 0.2 {
                continue;
            }
            let x = rng.random_range(-x_lim..x_lim);
            let yaw = rng.random_range(-core::f64::consts::PI..core::f64::consts::PI);
            let center = Point3::new(x, spec.ground_y - h / 2.0, z);
            let obb = OrientedBox::new(center, Point3::new(l / 2.0, h / 2.0, w / 2.0), yaw)?;

            let clear = boxes.iter().zip(&radii).all(|(other, &r_other)| {
                let d = other.obb.center() - center;
                math_hypot(d.x, d.z) >= r_xz + r_other + 0.3
            });
            if !clear {
                continue;
            }
            // Both hulls must stay well inside the image so the detection
            // boxes cover the whole object.
            let corners = obb.corners();
            let ok_left = hull_within(&corners, &cam, &RigidTransform::identity(), margin);
            let ok_right = hull_within(&corners, &cam, &rig.left_to_right(), margin);
            if ok_left && ok_right {
                boxes.push(GtObject { class, obb });
                radii.push(r_xz);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::SceneSpec(format!(
                "could not place object {obj_index} ({class}) inside the viewing volume; relax z range or shrink counts"
            )));
        }
    }

    // Detection pairs from projected hulls.
    let mut detections = Vec::with_capacity(boxes.len());
    for gt in &boxes {
        let corners = gt.obb.corners();
        let left = bbox_from_corners(&corners, &cam, &RigidTransform::identity(), gt.class)
            .ok_or(Error::BehindCamera)?;
        let right = bbox_from_corners(&corners, rig.right(), &rig.left_to_right(), gt.class)
            .ok_or(Error::BehindCamera)?;
        detections.push(DetectionPair::new(left, right)?);
    }

    // Ring-sampled scan from the scanner origin.
    let origin = lidar_to_cam.translation();
    let fov = spec.fov_deg.to_radians();
    let mut lidar_points = Vec::new();
    let mut lidar_intensities = Vec::new();
    for beam in 0..spec.beams {
        let elev = if spec.beams == 1 {
            (ELEV_MIN + ELEV_MAX) / 2.0
        } else {
            ELEV_MIN + (ELEV_MAX - ELEV_MIN) * beam as f64 / (spec.beams - 1) as f64
        };
        for step in 0..spec.azimuth_steps {
            let azim = -fov / 2.0 + fov * step as f64 / (spec.azimuth_steps - 1) as f64;
            let dir_lidar = Point3::new(
                crate::math::cos(elev) * crate::math::cos(azim),
                crate::math::cos(elev) * crate::math::sin(azim),
                crate::math::sin(elev),
            );
            let dir = lidar_to_cam.apply_dir(dir_lidar);
            if let Some((t, hit)) = cast_ray(origin, dir, &boxes, spec.ground_y, spec.max_range) {
                let p = origin + dir * t;
                if p.z <= 0.05 {
                    continue;
                }
                lidar_points.push(p);
                lidar_intensities.push(if hit == usize::MAX {
                    rng.random_range(0.05..0.3) as f32
                } else {
                    rng.random_range(0.2..0.9) as f32
                });
            }
        }
    }
    let cam_to_lidar = lidar_to_cam.inverse();
    let lidar_points: Vec<Point3> = lidar_points
        .iter()
        .map(|&p| cam_to_lidar.apply(p))
        .collect();
    let lidar = PointCloud::new(
        lidar_points,
        Some(lidar_intensities),
        Frame::Lidar,
        CloudSource::Lidar,
    )?;

    // Dense left-camera depth render with z^2-scaled Gaussian noise,
    // stored as an f32-quantized disparity map.
    let (w, h) = (spec.image_width, spec.image_height);
    let mut values = alloc::vec![0.0f64; (w * h) as usize];
    let mut valid = alloc::vec![false; (w * h) as usize];
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    for v in (0..h).step_by(spec.pl_stride as usize) {
        for u in (0..w).step_by(spec.pl_stride as usize) {
            let dir = Point3::new(
                (u as f64 - cam.c_u()) / cam.f_u(),
                (v as f64 - cam.c_v()) / cam.f_v(),
                1.0,
            );
            // dir.z == 1, so the ray parameter is the metric depth.
            let Some((z, _)) = cast_ray(Point3::ORIGIN, dir, &boxes, spec.ground_y, spec.max_range)
            else {
                continue;
            };
            let sigma = spec.noise_k * z * z;
            let z_noisy = z + sigma * normal.sample(&mut rng);
            if z_noisy < 0.2 {
                continue;
            }
            let disparity = rig.disparity_from_depth(z_noisy) as f32;
            let idx = (v * w + u) as usize;
            values[idx] = disparity as f64;
            valid[idx] = true;
        }
    }
    let disparity = DisparityMap::new(w, h, values, valid)?;
    let pl = disparity_to_cloud(&disparity, &rig, DEFAULT_MAX_DEPTH, DEFAULT_HEIGHT_CLIP)?;

    Ok(SyntheticScene {
        spec: spec.clone(),
        rig,
        lidar_to_cam,
        boxes,
        detections,
        lidar,
        disparity,
        pl,
    })
}

fn math_hypot(a: f64, b: f64) -> f64 {
    crate::math::sqrt(a * a + b * b)
}

fn hull_within(
    corners: &[Point3],
    cam: &CameraIntrinsics,
    to_cam: &RigidTransform,
    margin: f64,
) -> bool {
    match project_hull(corners, cam, to_cam) {
        Some((u0, v0, u1, v1)) => {
            u0 >= margin
                && v0 >= margin
                && u1 <= cam.width() as f64 - margin
                && v1 <= cam.height() as f64 - margin
                && (u1 - u0) * (v1 - v0) >= MIN_BOX_AREA_PX
        }
        None => false,
    }
}

fn bbox_from_corners(
    corners: &[Point3],
    cam: &CameraIntrinsics,
    to_cam: &RigidTransform,
    class: ClassLabel,
) -> Option<BBox2D> {
    let (u0, v0, u1, v1) = project_hull(corners, cam, to_cam)?;
    BBox2D::new(u0, v0, u1, v1, class)
        .ok()
        .and_then(|b| b.clamped_to_image(cam.width(), cam.height()).ok())
        .filter(|b| b.area() >= MIN_BOX_AREA_PX)
}

/// Per-box occupancy of a cloud. `points_per_m3` is the count divided by
/// the box volume.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoxDensity {
    pub box_index: usize,
    pub class: ClassLabel,
    pub points_inside: usize,
    pub points_per_m3: f64,
}

/// Exact point-in-box counts for every ground-truth box. The cloud and the
/// boxes must share one coordinate frame.
pub fn density_metrics(cloud: &PointCloud, boxes: &[GtObject]) -> Vec<BoxDensity> {
    boxes
        .iter()
        .enumerate()
        .map(|(box_index, gt)| {
            let points_inside = cloud
                .points()
                .iter()
                .filter(|&&p| gt.obb.contains(p))
                .count();
            BoxDensity {
                box_index,
                class: gt.class,
                points_inside,
                points_per_m3: points_inside as f64 / gt.obb.volume(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn spec_text_round_trip() {
        let mut spec = SceneSpec::default();
        spec.cars = 5;
        spec.noise_k = 0.0;
        spec.fov_deg = 72.5;
        let parsed = SceneSpec::parse(&spec.to_key_values()).unwrap();
        assert_eq!(parsed, spec);
    }

    #[test]
    fn spec_parse_rejects_unknown_key() {
        let err = SceneSpec::parse("cars=2\nwheels=4\n").unwrap_err();
        assert!(matches!(err, Error::SceneSpec(_)));
    }

    #[test]
    fn spec_parse_accepts_comments_and_blanks() {
        let spec = SceneSpec::parse("# a scene\n\ncars = 3\n z_min = 10\n").unwrap();
        assert_eq!(spec.cars, 3);
        assert_eq!(spec.z_min, 10.0);
    }

    #[test]
    fn same_seed_means_same_scene() {
        let spec = SceneSpec::default();
        let a = generate_scene(123, &spec).unwrap();
        let b = generate_scene(123, &spec).unwrap();
        assert_eq!(a.lidar.points(), b.lidar.points());
        assert_eq!(a.lidar.intensities(), b.lidar.intensities());
        assert_eq!(a.pl.points(), b.pl.points());
        assert_eq!(a.disparity, b.disparity);
        assert_eq!(a.detections, b.detections);
        let c = generate_scene(124, &spec).unwrap();
        assert_ne!(a.lidar.points(), c.lidar.points());
    }

    #[test]
    fn zero_noise_points_lie_on_surfaces() {
        let mut spec = SceneSpec::default();
        spec.noise_k = 0.0;
        spec.pl_stride = 3;
        let scene = generate_scene(7, &spec).unwrap();
        assert!(!scene.pl.is_empty());
        let cam = scene.rig.left();
        for &p in scene.pl.points() {
            let px = cam.project(p).unwrap();
            let dir = Point3::new(
                (px.u - cam.c_u()) / cam.f_u(),
                (px.v - cam.c_v()) / cam.f_v(),
                1.0,
            );
            let (z_true, _) = cast_ray(
                Point3::ORIGIN,
                dir,
                &scene.boxes,
                spec.ground_y,
                spec.max_range,
            )
            .expect("pseudo-lidar point must come from a surface hit");
            // Only the f32 quantization of the stored disparity separates
            // the point from the exact surface.
            assert!(
                (p.z - z_true).abs() < 1e-3,
                "z={} vs cast {}",
                p.z,
                z_true
            );
        }
    }

    #[test]
    fn single_car_yields_nondegenerate_detections() {
        let mut spec = SceneSpec::default();
        spec.cars = 1;
        spec.cyclists = 0;
        spec.pedestrians = 0;
        spec.z_min = 19.0;
        spec.z_max = 21.0;
        let scene = generate_scene(42, &spec).unwrap();
        assert_eq!(scene.detections.len(), 1);
        let d = &scene.detections[0];
        assert!(d.left_box().area() > MIN_BOX_AREA_PX);
        assert!(d.right_box().area() > MIN_BOX_AREA_PX);
        // The right view of a forward object sits further left.
        assert!(d.right_box().u_min() < d.left_box().u_min());
    }

    #[test]
    fn impossible_spec_is_an_error() {
        let mut spec = SceneSpec::default();
        spec.z_min = 90.0;
        spec.z_max = 120.0;
        assert!(matches!(
            generate_scene(1, &spec),
            Err(Error::SceneSpec(_))
        ));
    }

    #[test]
    fn lidar_is_sparser_than_pl_inside_boxes() {
        let spec = SceneSpec::default();
        for seed in [1u64, 2, 3] {
            let scene = generate_scene(seed, &spec).unwrap();
            let lidar_cam = scene.lidar.transformed(&scene.lidar_to_cam, Frame::CameraRect);
            let lidar_density = density_metrics(&lidar_cam, &scene.boxes);
            let pl_density = density_metrics(&scene.pl, &scene.boxes);
            for (l, p) in lidar_density.iter().zip(&pl_density) {
                assert!(
                    l.points_inside <= p.points_inside,
                    "seed {seed} box {}: lidar {} > pl {}",
                    l.box_index,
                    l.points_inside,
                    p.points_inside
                );
            }
        }
    }

    #[test]
    fn density_metrics_examples() {
        let obb = OrientedBox::new(
            Point3::new(0.0, 0.0, 20.0),
            Point3::new(2.0, 1.0, 1.0),
            0.3,
        )
        .unwrap();
        let boxes = vec![GtObject {
            class: ClassLabel::Car,
            obb,
        }];
        let empty = PointCloud::empty(Frame::CameraRect, CloudSource::Lidar);
        assert_eq!(density_metrics(&empty, &boxes)[0].points_inside, 0);

        let at_center = PointCloud::new(
            vec![obb.center()],
            None,
            Frame::CameraRect,
            CloudSource::Lidar,
        )
        .unwrap();
        let d = density_metrics(&at_center, &boxes);
        assert_eq!(d[0].points_inside, 1);
        assert!((d[0].points_per_m3 - 1.0 / 16.0).abs() < 1e-12);
    }
}
