//! Point-cloud container tagged with its coordinate frame and origin.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{Point3, RigidTransform};

/// Coordinate frames the pipeline moves points between.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Frame {
    /// Sensor-native LiDAR axes.
    Lidar,
    /// Rectified left-camera axes: x right, y down, z forward.
    CameraRect,
}

/// Where a cloud's points came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CloudSource {
    Lidar,
    PseudoLidar,
    Fused,
}

/// An ordered list of 3D points with optional per-point reflectance.
///
/// Intensities, when present, are unitless values in `[0, 1]` and always
/// parallel to `points`. Order is meaningful: downstream indices and output
/// files refer to it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<Point3>,
    intensities: Option<Vec<f32>>,
    frame: Frame,
    source: CloudSource,
}

impl PointCloud {
    pub fn new(
        points: Vec<Point3>,
        intensities: Option<Vec<f32>>,
        frame: Frame,
        source: CloudSource,
    ) -> Result<Self> {
        if let Some(int) = &intensities {
            if int.len() != points.len() {
                return Err(Error::MismatchedIntensities {
                    points: points.len(),
                    intensities: int.len(),
                });
            }
        }
        if let Some(bad) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinitePoint { index: bad });
        }
        Ok(PointCloud {
            points,
            intensities,
            frame,
            source,
        })
    }

    pub fn empty(frame: Frame, source: CloudSource) -> Self {
        PointCloud {
            points: Vec::new(),
            intensities: None,
            frame,
            source,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    #[inline]
    pub fn intensities(&self) -> Option<&[f32]> {
        self.intensities.as_deref()
    }

    #[inline]
    pub fn frame(&self) -> Frame {
        self.frame
    }

    #[inline]
    pub fn source(&self) -> CloudSource {
        self.source
    }

    /// Intensity of point `i`, or `default` when the channel is absent.
    #[inline]
    pub fn intensity_or(&self, i: usize, default: f32) -> f32 {
        self.intensities
            .as_ref()
            .map(|v| v[i])
            .unwrap_or(default)
    }

    /// Maps every point by `t` and retags the frame. Intensities and order
    /// are preserved.
    pub fn transformed(&self, t: &RigidTransform, frame: Frame) -> PointCloud {
        PointCloud {
            points: self.points.iter().map(|&p| t.apply(p)).collect(),
            intensities: self.intensities.clone(),
            frame,
            source: self.source,
        }
    }

    /// The sub-cloud at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointCloud {
        PointCloud {
            points: indices.iter().map(|&i| self.points[i]).collect(),
            intensities: self
                .intensities
                .as_ref()
                .map(|int| indices.iter().map(|&i| int[i]).collect()),
            frame: self.frame,
            source: self.source,
        }
    }
}
