//! Readers and writers for the dataset artifacts the pipeline consumes.
//!
//! Three text/binary grammars live here:
//!
//! - **Scans**: packed little-endian `f32` quadruples `(x, y, z,
//!   reflectance)`, no header. Reading and writing round-trip bit-exactly.
//! - **Calibration**: text lines `KEY: v1 v2 ...` carrying the projection
//!   matrices `P0`-`P3` (3x4), the rectifying rotation `R0_rect` (3x3) and
//!   the scanner-to-camera transform `Tr_velo_to_cam` (3x4).
//! - **Labels**: one object per line, 15 whitespace-separated fields
//!   (class, truncation, occlusion, alpha, 2D box, 3D dimensions, location,
//!   heading).
//!
//! Conventions recovered from a calibration: the left camera intrinsics
//! come from `P2`, the right from `P3`, the baseline is
//! `(P2[0,3] - P3[0,3]) / f_u`, and LiDAR coordinates map into the
//! rectified camera frame through `R0_rect * Tr_velo_to_cam`.
//!
//! Labels carry 2D boxes for the left image only, so the right-image box of
//! a detection pair is synthesized by projecting the label's 3D box through
//! `P3` and taking the axis-aligned hull.

use std::fs;
use std::path::Path;

use frustum_fusion::fusion::DetectionPair;
use frustum_fusion::geometry::{
    BBox2D, CameraIntrinsics, ClassLabel, Mat3, OrientedBox, Pixel, Point3, RigidTransform,
    StereoRig,
};
use frustum_fusion::{CloudSource, Frame, PointCloud};
use thiserror::Error;

/// Bytes per scan record: four little-endian `f32`s.
pub const SCAN_RECORD_BYTES: usize = 16;

/// Minimum visible area (px^2) for a clamped detection box to be used.
pub const MIN_BOX_AREA_PX: f64 = 100.0;

#[derive(Debug, Error)]
pub enum KittiError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: truncated scan, {length} bytes is not a multiple of {SCAN_RECORD_BYTES} (stray data at byte offset {offset})")]
    TruncatedScan {
        path: String,
        length: usize,
        offset: usize,
    },
    #[error("{path}: scan record {index} holds a non-finite value")]
    NonFiniteRecord { path: String, index: usize },
    #[error("scan record {index} does not fit the 32-bit file format")]
    UnencodableRecord { index: usize },
    #[error("{path}: {key} absent")]
    MissingKey { path: String, key: &'static str },
    #[error("{path}: {key} has {got} values, expected {want}")]
    WrongValueCount {
        path: String,
        key: String,
        got: usize,
        want: usize,
    },
    #[error("{path}: {key} holds a non-numeric value")]
    BadNumber { path: String, key: String },
    #[error("{path}: R0_rect deviates from orthonormal by {deviation:.3e} (tolerance 1e-3)")]
    BadRectification { path: String, deviation: f64 },
    #[error("{path}: recovered baseline {baseline} is not positive")]
    BadBaseline { path: String, baseline: f64 },
    #[error("{path} line {line}: expected 15 fields, found {found}")]
    BadLabelFieldCount {
        path: String,
        line: usize,
        found: usize,
    },
    #[error("{path} line {line}: {what}")]
    BadLabelValue {
        path: String,
        line: usize,
        what: String,
    },
    #[error("label class {class} takes no part in fusion")]
    UnsupportedClass { class: String },
    #[error("3D box projects entirely behind the camera")]
    BehindCamera,
    #[error("derived box keeps less than {MIN_BOX_AREA_PX} px^2 visible")]
    BoxTooSmall,
    #[error(transparent)]
    Core(#[from] frustum_fusion::Error),
}

type Result<T, E = KittiError> = std::result::Result<T, E>;

fn io_err(path: &Path, source: std::io::Error) -> KittiError {
    KittiError::Io {
        path: path.display().to_string(),
        source,
    }
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

/// Decodes a packed scan buffer. `label` names the source in errors.
pub fn scan_from_bytes(bytes: &[u8], label: &str) -> Result<PointCloud> {
    if bytes.len() % SCAN_RECORD_BYTES != 0 {
        return Err(KittiError::TruncatedScan {
            path: label.to_string(),
            length: bytes.len(),
            offset: bytes.len() - bytes.len() % SCAN_RECORD_BYTES,
        });
    }
    let n = bytes.len() / SCAN_RECORD_BYTES;
    let mut points = Vec::with_capacity(n);
    let mut intensities = Vec::with_capacity(n);
    for (index, record) in bytes.chunks_exact(SCAN_RECORD_BYTES).enumerate() {
        let f = |i: usize| f32::from_le_bytes(record[4 * i..4 * i + 4].try_into().unwrap());
        let (x, y, z, r) = (f(0), f(1), f(2), f(3));
        if !(x.is_finite() && y.is_finite() && z.is_finite() && r.is_finite()) {
            return Err(KittiError::NonFiniteRecord {
                path: label.to_string(),
                index,
            });
        }
        points.push(Point3::new(x as f64, y as f64, z as f64));
        intensities.push(r);
    }
    Ok(PointCloud::new(points, Some(intensities), Frame::Lidar, CloudSource::Lidar)?)
}

/// Encodes a cloud as packed scan records. Coordinates are narrowed to
/// `f32`; points whose coordinates do not fit are rejected. A missing
/// intensity channel writes zero reflectance.
pub fn scan_to_bytes(cloud: &PointCloud) -> Result<Vec<u8>> {
    let mut bytes = Vec::with_capacity(cloud.len() * SCAN_RECORD_BYTES);
    for (index, p) in cloud.points().iter().enumerate() {
        let (x, y, z) = (p.x as f32, p.y as f32, p.z as f32);
        let r = cloud.intensity_or(index, 0.0);
        if !(x.is_finite() && y.is_finite() && z.is_finite() && r.is_finite()) {
            return Err(KittiError::UnencodableRecord { index });
        }
        bytes.extend_from_slice(&x.to_le_bytes());
        bytes.extend_from_slice(&y.to_le_bytes());
        bytes.extend_from_slice(&z.to_le_bytes());
        bytes.extend_from_slice(&r.to_le_bytes());
    }
    Ok(bytes)
}

/// Reads a binary scan; the cloud arrives in the LiDAR frame with its
/// reflectances.
pub fn read_velodyne_bin(path: &Path) -> Result<PointCloud> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    scan_from_bytes(&bytes, &path.display().to_string())
}

/// Writes a binary scan; the exact inverse of [`read_velodyne_bin`].
pub fn write_velodyne_bin(cloud: &PointCloud, path: &Path) -> Result<()> {
    fs::write(path, scan_to_bytes(cloud)?).map_err(|e| io_err(path, e))
}

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

/// The raw matrices of one calibration file.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibBundle {
    /// Projection matrices `P0`-`P3`, row-major 3x4.
    pub p: [[[f64; 4]; 3]; 4],
    /// Rectifying rotation `R0_rect`, row-major 3x3.
    pub r0: [[f64; 3]; 3],
    /// `Tr_velo_to_cam`, row-major 3x4.
    pub tr: [[f64; 4]; 3],
    source: String,
}

impl CalibBundle {
    /// Parses `KEY: values...` text. Unknown keys are ignored; the six
    /// required keys must be present with the right value counts.
    pub fn parse_str(text: &str, label: &str) -> Result<CalibBundle> {
        let mut bundle = CalibBundle {
            p: [[[0.0; 4]; 3]; 4],
            r0: [[0.0; 3]; 3],
            tr: [[0.0; 4]; 3],
            source: label.to_string(),
        };
        let mut seen = [false; 6];
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                continue;
            };
            let key = key.trim();
            let slot = match key {
                "P0" => 0,
                "P1" => 1,
                "P2" => 2,
                "P3" => 3,
                "R0_rect" => 4,
                "Tr_velo_to_cam" => 5,
                _ => continue,
            };
            let values = parse_floats(rest, label, key)?;
            let want = if slot == 4 { 9 } else { 12 };
            if values.len() != want {
                return Err(KittiError::WrongValueCount {
                    path: label.to_string(),
                    key: key.to_string(),
                    got: values.len(),
                    want,
                });
            }
            match slot {
                4 => {
                    for (i, v) in values.iter().enumerate() {
                        bundle.r0[i / 3][i % 3] = *v;
                    }
                }
                5 => {
                    for (i, v) in values.iter().enumerate() {
                        bundle.tr[i / 4][i % 4] = *v;
                    }
                }
                cam => {
                    for (i, v) in values.iter().enumerate() {
                        bundle.p[cam][i / 4][i % 4] = *v;
                    }
                }
            }
            seen[slot] = true;
        }
        const KEYS: [&str; 6] = ["P0", "P1", "P2", "P3", "R0_rect", "Tr_velo_to_cam"];
        for (slot, key) in KEYS.iter().enumerate() {
            if !seen[slot] {
                return Err(KittiError::MissingKey {
                    path: label.to_string(),
                    key,
                });
            }
        }
        Ok(bundle)
    }

    /// Builds the bundle a synthetic rig would serialize: `P2`/`P3` from
    /// the rig, identity rectification, `Tr` from the extrinsics.
    pub fn from_rig(rig: &StereoRig, lidar_to_cam: &RigidTransform) -> CalibBundle {
        let cam = rig.left();
        let mut p2 = [[0.0; 4]; 3];
        p2[0] = [cam.f_u(), 0.0, cam.c_u(), 0.0];
        p2[1] = [0.0, cam.f_v(), cam.c_v(), 0.0];
        p2[2] = [0.0, 0.0, 1.0, 0.0];
        let mut p3 = p2;
        p3[0][3] = -cam.f_u() * rig.baseline();

        let mut r0 = [[0.0; 3]; 3];
        for (i, row) in r0.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let mut tr = [[0.0; 4]; 3];
        for i in 0..3 {
            for j in 0..3 {
                tr[i][j] = lidar_to_cam.rotation().get(i, j);
            }
        }
        let t = lidar_to_cam.translation();
        tr[0][3] = t.x;
        tr[1][3] = t.y;
        tr[2][3] = t.z;

        CalibBundle {
            p: [p2, p2, p2, p3],
            r0,
            tr,
            source: String::from("synthetic"),
        }
    }

    /// The text form accepted by [`CalibBundle::parse_str`].
    pub fn to_text(&self) -> String {
        fn fmt_row(values: impl IntoIterator<Item = f64>) -> String {
            values
                .into_iter()
                .map(|v| format!("{v:.12e}"))
                .collect::<Vec<_>>()
                .join(" ")
        }
        let mut out = String::new();
        for (i, name) in ["P0", "P1", "P2", "P3"].iter().enumerate() {
            out.push_str(&format!(
                "{name}: {}\n",
                fmt_row(self.p[i].iter().flatten().copied())
            ));
        }
        out.push_str(&format!(
            "R0_rect: {}\n",
            fmt_row(self.r0.iter().flatten().copied())
        ));
        out.push_str(&format!(
            "Tr_velo_to_cam: {}\n",
            fmt_row(self.tr.iter().flatten().copied())
        ));
        out
    }

    /// Left/right intrinsics from `P2`/`P3` plus the recovered baseline.
    /// Image dimensions come from the caller (the scan format does not
    /// store them).
    pub fn stereo_rig(&self, width: u32, height: u32) -> Result<StereoRig> {
        let left = self.intrinsics_from(2, width, height)?;
        let right = self.intrinsics_from(3, width, height)?;
        let f_u = self.p[2][0][0];
        let baseline = (self.p[2][0][3] - self.p[3][0][3]) / f_u;
        if !(baseline.is_finite() && baseline > 0.0) {
            return Err(KittiError::BadBaseline {
                path: self.source.clone(),
                baseline,
            });
        }
        Ok(StereoRig::new(left, right, baseline)?)
    }

    fn intrinsics_from(&self, cam: usize, width: u32, height: u32) -> Result<CameraIntrinsics> {
        let p = &self.p[cam];
        Ok(CameraIntrinsics::new(
            p[0][0], p[1][1], p[0][2], p[1][2], width, height,
        )?)
    }

    /// The LiDAR-to-rectified-camera transform, `R0_rect * Tr_velo_to_cam`.
    ///
    /// `R0_rect` may be orthonormal only to calibration accuracy (1e-3);
    /// the composed rotation is re-orthonormalized before the strict
    /// rigid-transform check.
    pub fn lidar_to_cam(&self) -> Result<RigidTransform> {
        let r0 = Mat3::from_rows(self.r0);
        let deviation = r0.orthonormality_deviation();
        if deviation > 1e-3 {
            return Err(KittiError::BadRectification {
                path: self.source.clone(),
                deviation,
            });
        }
        let r_tr = Mat3::from_rows([
            [self.tr[0][0], self.tr[0][1], self.tr[0][2]],
            [self.tr[1][0], self.tr[1][1], self.tr[1][2]],
            [self.tr[2][0], self.tr[2][1], self.tr[2][2]],
        ]);
        let t_tr = Point3::new(self.tr[0][3], self.tr[1][3], self.tr[2][3]);
        let rotation = r0.mul_mat(&r_tr).orthonormalized()?;
        let translation = r0.mul_vec(t_tr);
        Ok(RigidTransform::new(rotation, translation)?)
    }

    /// Projects a rectified-frame point through the raw `P3` matrix.
    /// Returns `None` at or behind the image plane.
    pub fn project_p3(&self, p: Point3) -> Option<Pixel> {
        let row = |i: usize| {
            self.p[3][i][0] * p.x + self.p[3][i][1] * p.y + self.p[3][i][2] * p.z + self.p[3][i][3]
        };
        let w = row(2);
        if w <= 1e-6 {
            return None;
        }
        Some(Pixel::new(row(0) / w, row(1) / w))
    }
}

fn parse_floats(text: &str, path: &str, key: &str) -> Result<Vec<f64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| KittiError::BadNumber {
                path: path.to_string(),
                key: key.to_string(),
            })
        })
        .collect()
}

/// Reads and parses a calibration file.
pub fn parse_calib(path: &Path) -> Result<CalibBundle> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    CalibBundle::parse_str(&text, &path.display().to_string())
}

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

/// One 3D object annotation. `location` is the bottom-center of the box in
/// the rectified camera frame; `dimensions` are height, width, length.
#[derive(Clone, Debug, PartialEq)]
pub struct Label3D {
    pub class: String,
    pub truncation: f64,
    pub occlusion: i32,
    pub alpha: f64,
    /// Left-image 2D box: left, top, right, bottom (pixels).
    pub bbox: [f64; 4],
    /// Height, width, length (meters).
    pub dimensions: [f64; 3],
    /// Bottom-center of the 3D box, camera frame (meters).
    pub location: [f64; 3],
    /// Heading about the camera y axis (radians).
    pub rotation_y: f64,
}

impl Label3D {
    /// The fusion class, or `None` for categories fusion ignores.
    pub fn fusion_class(&self) -> Option<ClassLabel> {
        ClassLabel::parse(&self.class)
    }

    /// The annotated 3D box as an oriented box (center-referenced).
    pub fn obb(&self) -> Result<OrientedBox> {
        let [h, w, l] = self.dimensions;
        let [x, y, z] = self.location;
        // The location is the bottom face center; y points down.
        Ok(OrientedBox::new(
            Point3::new(x, y - h / 2.0, z),
            Point3::new(l / 2.0, h / 2.0, w / 2.0),
            self.rotation_y,
        )?)
    }

    /// Serializes as one label line.
    pub fn to_line(&self) -> String {
        format!(
            "{} {:.2} {} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6} {:.6}",
            self.class,
            self.truncation,
            self.occlusion,
            self.alpha,
            self.bbox[0],
            self.bbox[1],
            self.bbox[2],
            self.bbox[3],
            self.dimensions[0],
            self.dimensions[1],
            self.dimensions[2],
            self.location[0],
            self.location[1],
            self.location[2],
            self.rotation_y,
        )
    }
}

/// Parses label text: one object per 15-field line.
pub fn parse_labels_str(text: &str, label: &str) -> Result<Vec<Label3D>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 15 {
            return Err(KittiError::BadLabelFieldCount {
                path: label.to_string(),
                line: i + 1,
                found: fields.len(),
            });
        }
        let num = |idx: usize| -> Result<f64> {
            fields[idx].parse().map_err(|_| KittiError::BadLabelValue {
                path: label.to_string(),
                line: i + 1,
                what: format!("field {} is not a number", idx + 1),
            })
        };
        let parsed = Label3D {
            class: fields[0].to_string(),
            truncation: num(1)?,
            occlusion: num(2)? as i32,
            alpha: num(3)?,
            bbox: [num(4)?, num(5)?, num(6)?, num(7)?],
            dimensions: [num(8)?, num(9)?, num(10)?],
            location: [num(11)?, num(12)?, num(13)?],
            rotation_y: num(14)?,
        };
        if parsed.fusion_class().is_some()
            && parsed.dimensions.iter().any(|&d| !(d.is_finite() && d > 0.0))
        {
            return Err(KittiError::BadLabelValue {
                path: label.to_string(),
                line: i + 1,
                what: format!("{} has non-positive dimensions", parsed.class),
            });
        }
        out.push(parsed);
    }
    Ok(out)
}

/// Reads and parses a label file.
pub fn parse_labels(path: &Path) -> Result<Vec<Label3D>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_labels_str(&text, &path.display().to_string())
}

/// Synthesizes the right-image detection box of a label by projecting its
/// 3D box corners through `P3` and clamping the hull to the image.
///
/// Corners behind the camera are skipped; a label with no visible corner,
/// or whose clamped hull keeps under [`MIN_BOX_AREA_PX`], is rejected.
pub fn derive_right_bbox(
    label: &Label3D,
    calib: &CalibBundle,
    width: u32,
    height: u32,
) -> Result<BBox2D> {
    let class = label.fusion_class().ok_or_else(|| KittiError::UnsupportedClass {
        class: label.class.clone(),
    })?;
    let mut hull: Option<(f64, f64, f64, f64)> = None;
    for corner in label.obb()?.corners() {
        if let Some(px) = calib.project_p3(corner) {
            hull = Some(match hull {
                None => (px.u, px.v, px.u, px.v),
                Some((u0, v0, u1, v1)) => (u0.min(px.u), v0.min(px.v), u1.max(px.u), v1.max(px.v)),
            });
        }
    }
    let (u0, v0, u1, v1) = hull.ok_or(KittiError::BehindCamera)?;
    let bbox = BBox2D::new(u0, v0, u1, v1, class)?.clamped_to_image(width, height)?;
    if bbox.area() < MIN_BOX_AREA_PX {
        return Err(KittiError::BoxTooSmall);
    }
    Ok(bbox)
}

/// Builds detection pairs from labels: the annotated left box plus the
/// derived right box, both clamped. Labels that cannot produce a usable
/// pair are skipped with a warning string.
pub fn detection_pairs(
    labels: &[Label3D],
    calib: &CalibBundle,
    width: u32,
    height: u32,
) -> (Vec<DetectionPair>, Vec<String>) {
    let mut pairs = Vec::new();
    let mut warnings = Vec::new();
    for (i, label) in labels.iter().enumerate() {
        let Some(class) = label.fusion_class() else {
            continue;
        };
        let left = BBox2D::new(label.bbox[0], label.bbox[1], label.bbox[2], label.bbox[3], class)
            .and_then(|b| b.clamped_to_image(width, height));
        let left = match left {
            Ok(b) if b.area() >= MIN_BOX_AREA_PX => b,
            Ok(_) => {
                warnings.push(format!("label {i} ({class}): left box keeps under {MIN_BOX_AREA_PX} px^2, skipped"));
                continue;
            }
            Err(err) => {
                warnings.push(format!("label {i} ({class}): bad left box ({err}), skipped"));
                continue;
            }
        };
        let right = match derive_right_bbox(label, calib, width, height) {
            Ok(b) => b,
            Err(err) => {
                warnings.push(format!("label {i} ({class}): {err}, skipped"));
                continue;
            }
        };
        match DetectionPair::new(left, right) {
            Ok(pair) => pairs.push(pair),
            Err(err) => warnings.push(format!("label {i} ({class}): {err}, skipped")),
        }
    }
    (pairs, warnings)
}
