//! Line-delimited run manifests.
//!
//! A fusion run writes one JSON record per processed frame, echoing the
//! configuration and inputs and summarizing what fusion did, so threshold
//! sweeps can be analyzed without re-running. Records are ordered by frame
//! stem and every field except `timings_ms` is deterministic for fixed
//! inputs and flags.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use frustum_fusion::fusion::{FusionReport, StageTimings};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PerClassTauEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub car: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclist: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pedestrian: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConfigEcho {
    pub tau: f64,
    pub per_class_tau: PerClassTauEcho,
    pub near: f64,
    pub far: f64,
    pub mode: String,
    pub max_depth: f64,
    pub height_clip: f64,
    pub added_intensity: f32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InputsEcho {
    pub calib: String,
    pub lidar: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disparity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pl: Option<String>,
    pub labels: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DetectionRecord {
    pub class: String,
    pub tau: f64,
    pub lidar_in_intersection: usize,
    pub pl_in_intersection: usize,
    pub pl_added: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TotalsRecord {
    pub lidar_in_intersection: usize,
    pub pl_in_intersection: usize,
    pub pl_added: usize,
    pub output_points: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TimingsRecord {
    pub transform_ms: f64,
    pub extract_ms: f64,
    pub fuse_ms: f64,
    pub assemble_ms: f64,
    pub total_ms: f64,
}

impl From<StageTimings> for TimingsRecord {
    fn from(t: StageTimings) -> Self {
        TimingsRecord {
            transform_ms: t.transform_ms,
            extract_ms: t.extract_ms,
            fuse_ms: t.fuse_ms,
            assemble_ms: t.assemble_ms,
            total_ms: t.total_ms,
        }
    }
}

/// One frame's manifest line.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FrameRecord {
    pub stem: String,
    /// `"ok"` or `"error"`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub inputs: InputsEcho,
    pub config: ConfigEcho,
    /// Input cloud sizes (points).
    pub lidar_points: usize,
    pub pl_points: usize,
    pub detections: Vec<DetectionRecord>,
    pub totals: TotalsRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub version: String,
    /// Wall-clock stage timings; the only non-deterministic field.
    pub timings_ms: TimingsRecord,
}

impl FrameRecord {
    /// Folds a fusion report into an `"ok"` record skeleton.
    pub fn from_report(
        stem: String,
        inputs: InputsEcho,
        config: ConfigEcho,
        lidar_points: usize,
        pl_points: usize,
        report: &FusionReport,
        output: String,
    ) -> Self {
        FrameRecord {
            stem,
            status: "ok".to_string(),
            error: None,
            inputs,
            config,
            lidar_points,
            pl_points,
            detections: report
                .per_detection
                .iter()
                .map(|d| DetectionRecord {
                    class: d.class.name().to_string(),
                    tau: d.tau,
                    lidar_in_intersection: d.lidar_in_intersection,
                    pl_in_intersection: d.pl_in_intersection,
                    pl_added: d.pl_added,
                })
                .collect(),
            totals: TotalsRecord {
                lidar_in_intersection: report.total_lidar_in_intersection,
                pl_in_intersection: report.total_pl_in_intersection,
                pl_added: report.total_pl_added,
                output_points: report.output_points,
            },
            output: Some(output),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings_ms: report.timings.into(),
        }
    }

    /// A record for a frame that could not be processed.
    pub fn failed(stem: String, inputs: InputsEcho, config: ConfigEcho, error: String) -> Self {
        FrameRecord {
            stem,
            status: "error".to_string(),
            error: Some(error),
            inputs,
            config,
            lidar_points: 0,
            pl_points: 0,
            detections: Vec::new(),
            totals: TotalsRecord {
                lidar_in_intersection: 0,
                pl_in_intersection: 0,
                pl_added: 0,
                output_points: 0,
            },
            output: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings_ms: TimingsRecord {
                transform_ms: 0.0,
                extract_ms: 0.0,
                fuse_ms: 0.0,
                assemble_ms: 0.0,
                total_ms: 0.0,
            },
        }
    }
}

/// Serializes records as JSON lines.
pub fn to_jsonl(records: &[FrameRecord]) -> serde_json::Result<String> {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record)?);
        out.push('\n');
    }
    Ok(out)
}

/// Writes a manifest file, one JSON record per line.
pub fn write_manifest(path: &Path, records: &[FrameRecord]) -> anyhow::Result<()> {
    let body = to_jsonl(records)?;
    crate::write_atomic(path, body.as_bytes())?;
    Ok(())
}

/// Reads a manifest back (used by tests and sweep tooling).
pub fn read_manifest(path: &Path) -> anyhow::Result<Vec<FrameRecord>> {
    let file = fs::File::open(path)?;
    let mut records = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line)?);
    }
    Ok(records)
}
