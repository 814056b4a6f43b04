//! Disparity map file formats.
//!
//! Two on-disk forms are accepted, distinguished by their leading bytes:
//!
//! - **16-bit grayscale PNG**: pixel value / 256.0 is the disparity in
//!   pixels; a stored 0 marks an invalid pixel.
//! - **Raw float**: a 16-byte little-endian header — magic `"DSP1"`,
//!   `u32` width, `u32` height, `u32` reserved (zero) — followed by
//!   `width * height` row-major `f32` disparities. Values of exactly 0.0
//!   mark invalid pixels; negative or non-finite values are malformed.

use std::fs;
use std::path::Path;

use frustum_fusion::DisparityMap;
use image::DynamicImage;
use thiserror::Error;

/// Leading bytes of the raw float disparity format.
pub const RAW_DISPARITY_MAGIC: [u8; 4] = *b"DSP1";
const RAW_HEADER_BYTES: usize = 16;

#[derive(Debug, Error)]
pub enum DisparityError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Png {
        path: String,
        #[source]
        source: image::ImageError,
    },
    #[error("{path}: disparity images must be 16-bit single-channel")]
    NotSixteenBit { path: String },
    #[error("{path}: not a disparity file (unrecognized leading bytes)")]
    UnknownFormat { path: String },
    #[error("{path}: raw header truncated ({got} bytes)")]
    ShortHeader { path: String, got: usize },
    #[error("{path}: reserved header field must be zero")]
    BadReserved { path: String },
    #[error("{path}: payload holds {got} values for {width}x{height}")]
    WrongPayload {
        path: String,
        got: usize,
        width: u32,
        height: u32,
    },
    #[error("{path}: pixel ({u}, {v}) holds a negative or non-finite disparity")]
    BadValue { path: String, u: u32, v: u32 },
    #[error("map holds an unencodable value at ({u}, {v})")]
    Unencodable { u: u32, v: u32 },
    #[error(transparent)]
    Core(#[from] frustum_fusion::Error),
}

type Result<T, E = DisparityError> = std::result::Result<T, E>;

/// Decodes the raw float format from bytes. `label` names the source in
/// errors.
pub fn raw_from_bytes(bytes: &[u8], label: &str) -> Result<DisparityMap> {
    if bytes.len() < 4 || bytes[..4] != RAW_DISPARITY_MAGIC {
        return Err(DisparityError::UnknownFormat {
            path: label.to_string(),
        });
    }
    if bytes.len() < RAW_HEADER_BYTES {
        return Err(DisparityError::ShortHeader {
            path: label.to_string(),
            got: bytes.len(),
        });
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 * i..4 * i + 4].try_into().unwrap());
    let (width, height, reserved) = (word(1), word(2), word(3));
    if reserved != 0 {
        return Err(DisparityError::BadReserved {
            path: label.to_string(),
        });
    }
    let payload = &bytes[RAW_HEADER_BYTES..];
    let expected = width as usize * height as usize;
    if payload.len() != expected * 4 {
        return Err(DisparityError::WrongPayload {
            path: label.to_string(),
            got: payload.len() / 4,
            width,
            height,
        });
    }
    let mut values = Vec::with_capacity(expected);
    let mut valid = Vec::with_capacity(expected);
    for (i, chunk) in payload.chunks_exact(4).enumerate() {
        let raw = f32::from_le_bytes(chunk.try_into().unwrap());
        if !(raw.is_finite() && raw >= 0.0) {
            return Err(DisparityError::BadValue {
                path: label.to_string(),
                u: (i % width as usize) as u32,
                v: (i / width as usize) as u32,
            });
        }
        values.push(raw as f64);
        valid.push(raw > 0.0);
    }
    Ok(DisparityMap::new(width, height, values, valid)?)
}

/// Encodes the raw float format. Valid pixels must hold positive values
/// that survive the narrowing to `f32`; invalid pixels are stored as 0.0.
pub fn raw_to_bytes(map: &DisparityMap) -> Result<Vec<u8>> {
    let mut bytes = Vec::with_capacity(RAW_HEADER_BYTES + map.values().len() * 4);
    bytes.extend_from_slice(&RAW_DISPARITY_MAGIC);
    bytes.extend_from_slice(&map.width().to_le_bytes());
    bytes.extend_from_slice(&map.height().to_le_bytes());
    bytes.extend_from_slice(&0u32.to_le_bytes());
    for (i, (&value, &ok)) in map.values().iter().zip(map.valid_mask()).enumerate() {
        let stored = if ok { value as f32 } else { 0.0 };
        if !(stored.is_finite() && stored >= 0.0) || (ok && stored <= 0.0) {
            return Err(DisparityError::Unencodable {
                u: (i % map.width() as usize) as u32,
                v: (i / map.width() as usize) as u32,
            });
        }
        bytes.extend_from_slice(&stored.to_le_bytes());
    }
    Ok(bytes)
}

pub fn read_raw(path: &Path) -> Result<DisparityMap> {
    let bytes = fs::read(path).map_err(|e| DisparityError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    raw_from_bytes(&bytes, &path.display().to_string())
}

pub fn write_raw(map: &DisparityMap, path: &Path) -> Result<()> {
    fs::write(path, raw_to_bytes(map)?).map_err(|e| DisparityError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Reads a 16-bit grayscale PNG disparity image.
pub fn read_png(path: &Path) -> Result<DisparityMap> {
    let img = image::open(path).map_err(|e| DisparityError::Png {
        path: path.display().to_string(),
        source: e,
    })?;
    let DynamicImage::ImageLuma16(img) = img else {
        return Err(DisparityError::NotSixteenBit {
            path: path.display().to_string(),
        });
    };
    let (width, height) = (img.width(), img.height());
    let mut values = Vec::with_capacity((width * height) as usize);
    let mut valid = Vec::with_capacity((width * height) as usize);
    for px in img.pixels() {
        let raw = px.0[0];
        values.push(raw as f64 / 256.0);
        valid.push(raw > 0);
    }
    Ok(DisparityMap::new(width, height, values, valid)?)
}

/// Loads a disparity file of either supported format, sniffing the
/// leading bytes.
pub fn load(path: &Path) -> Result<DisparityMap> {
    const PNG_MAGIC: [u8; 4] = [0x89, b'P', b'N', b'G'];
    let bytes = fs::read(path).map_err(|e| DisparityError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    if bytes.len() >= 4 && bytes[..4] == PNG_MAGIC {
        read_png(path)
    } else if bytes.len() >= 4 && bytes[..4] == RAW_DISPARITY_MAGIC {
        raw_from_bytes(&bytes, &path.display().to_string())
    } else {
        Err(DisparityError::UnknownFormat {
            path: path.display().to_string(),
        })
    }
}
