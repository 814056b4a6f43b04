//! File formats, dataset parsing and run manifests for the frustum-fusion
//! pipeline. The algorithms themselves live in the `frustum-fusion` crate;
//! this crate owns everything that touches the filesystem.

use std::io::Write;
use std::path::Path;

pub mod disparity;
pub mod kitti;
pub mod manifest;

/// Writes a file atomically: the bytes land in a sibling temp file which is
/// renamed over the target, so concurrent readers never observe a partial
/// write.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
