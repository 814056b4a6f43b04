use alloc::string::String;
use core::fmt;

use crate::cloud::{CloudSource, Frame};

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by geometry construction, cloud validation and fusion.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Camera intrinsics violate their invariants (focal lengths positive,
    /// principal point strictly inside the image).
    InvalidIntrinsics(&'static str),
    /// Stereo rig invariants violated (positive baseline, matching focal
    /// lengths on a rectified pair).
    InvalidRig(&'static str),
    /// A rotation matrix is not orthonormal within tolerance.
    NonOrthonormalRotation { deviation: f64 },
    /// A rotation matrix has determinant -1 (reflection) or worse.
    ImproperRotation { det: f64 },
    /// 2D box with non-positive extent.
    DegenerateBox,
    /// 2D box lies entirely outside the image after clamping.
    BoxOutsideImage,
    /// Depth clip planes must satisfy `0 < near < far`.
    InvalidDepthRange { near: f64, far: f64 },
    /// A plane normal was too short to normalize.
    DegeneratePlane,
    /// Operation received a cloud or frustum in the wrong coordinate frame.
    FrameMismatch { expected: Frame, actual: Frame },
    /// Raster dimensions disagree (disparity map vs. camera image size).
    DimensionMismatch {
        expected: (u32, u32),
        actual: (u32, u32),
    },
    /// A pixel flagged valid carries a non-positive or non-finite disparity.
    InvalidDisparity { u: u32, v: u32 },
    /// Intensity channel length differs from the point count.
    MismatchedIntensities { points: usize, intensities: usize },
    /// A point has a non-finite coordinate.
    NonFinitePoint { index: usize },
    /// Parameter outside its documented domain.
    InvalidParameter(&'static str),
    /// Beam count of zero makes elevation binning meaningless.
    ZeroBeams,
    /// Cloud has the wrong `CloudSource` for this operation.
    WrongSource {
        expected: CloudSource,
        actual: CloudSource,
    },
    /// All box corners project behind the camera.
    BehindCamera,
    /// Invalid fusion configuration.
    InvalidConfig(&'static str),
    /// Scene specification could not be parsed or realized.
    SceneSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidIntrinsics(what) => write!(f, "invalid camera intrinsics: {what}"),
            Error::InvalidRig(what) => write!(f, "invalid stereo rig: {what}"),
            Error::NonOrthonormalRotation { deviation } => {
                write!(f, "rotation is not orthonormal (deviation {deviation:.3e})")
            }
            Error::ImproperRotation { det } => {
                write!(f, "rotation determinant is {det:.6}, expected +1")
            }
            Error::DegenerateBox => write!(f, "2D box has zero or negative area"),
            Error::BoxOutsideImage => write!(f, "2D box lies outside the image bounds"),
            Error::InvalidDepthRange { near, far } => {
                write!(f, "depth range must satisfy 0 < near < far, got [{near}, {far}]")
            }
            Error::DegeneratePlane => write!(f, "plane normal has near-zero length"),
            Error::FrameMismatch { expected, actual } => {
                write!(f, "expected cloud in {expected:?} frame, got {actual:?}")
            }
            Error::DimensionMismatch { expected, actual } => write!(
                f,
                "dimension mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, actual.0, actual.1
            ),
            Error::InvalidDisparity { u, v } => {
                write!(f, "pixel ({u}, {v}) is flagged valid but has no usable disparity")
            }
            Error::MismatchedIntensities { points, intensities } => write!(
                f,
                "{intensities} intensities for {points} points"
            ),
            Error::NonFinitePoint { index } => {
                write!(f, "point {index} has a non-finite coordinate")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::ZeroBeams => write!(f, "beam count must be at least 1"),
            Error::WrongSource { expected, actual } => {
                write!(f, "expected a {expected:?} cloud, got {actual:?}")
            }
            Error::BehindCamera => write!(f, "object lies entirely behind the camera"),
            Error::InvalidConfig(what) => write!(f, "invalid fusion config: {what}"),
            Error::SceneSpec(what) => write!(f, "scene spec: {what}"),
        }
    }
}

impl core::error::Error for Error {}
