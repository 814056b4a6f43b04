//! Fusing sparse LiDAR scans with dense stereo-derived point clouds.
//!
//! The pipeline implemented here takes a stereo disparity map, back-projects
//! it into a dense "pseudo-LiDAR" point cloud, restricts both that cloud and
//! the real LiDAR scan to the intersection of the viewing frustums induced by
//! a pair of 2D detections (one per stereo image), and then merges in exactly
//! those pseudo-LiDAR points whose nearest LiDAR neighbour is at least a
//! distance threshold `tau` away. The result is a LiDAR-formatted cloud that
//! is dense where the scan was sparse and free of background clutter.
//!
//! Modules:
//!
//! - [`geometry`]: camera models, rigid transforms, 2D boxes, frustums and
//!   oriented 3D boxes, with membership tests.
//! - [`cloud`]: point-cloud container tagged with coordinate frame and origin.
//! - [`pseudolidar`]: disparity maps and their conversion into point clouds.
//! - [`spatial`]: an exact nearest-neighbour kd-tree over 3D points.
//! - [`fusion`]: frustum extraction and the distance-threshold merge itself.
//! - [`synth`]: deterministic synthetic scenes for end-to-end verification.
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the default
//! `std` feature for embedded or wasm use. File formats, dataset parsing and
//! the command-line front-end live in the companion `frustum-fusion-cli`
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod cloud;
mod error;
pub mod fusion;
pub mod geometry;
mod math;
pub mod pseudolidar;
pub mod spatial;
pub mod synth;

pub use cloud::{CloudSource, Frame, PointCloud};
pub use error::{Error, Result};
pub use fusion::{
    fuse_frame, fuse_single, DetectionPair, FusionConfig, FusionReport, OutputMode,
};
pub use geometry::{
    BBox2D, CameraIntrinsics, ClassLabel, Frustum, FrustumIntersection, OrientedBox, Pixel,
    Point3, RigidTransform, StereoRig,
};
pub use pseudolidar::{disparity_to_cloud, sparsify_like_lidar, DisparityMap};
pub use spatial::KdIndex;
