use crate::error::{Error, Result};

use super::camera::Pixel;

/// Object categories handled by the fusion pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ClassLabel {
    Car,
    Cyclist,
    Pedestrian,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 3] = [ClassLabel::Car, ClassLabel::Cyclist, ClassLabel::Pedestrian];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Car => "Car",
            ClassLabel::Cyclist => "Cyclist",
            ClassLabel::Pedestrian => "Pedestrian",
        }
    }

    /// Case-insensitive parse; returns `None` for any other category.
    pub fn parse(s: &str) -> Option<ClassLabel> {
        match s {
            _ if s.eq_ignore_ascii_case("car") => Some(ClassLabel::Car),
            _ if s.eq_ignore_ascii_case("cyclist") => Some(ClassLabel::Cyclist),
            _ if s.eq_ignore_ascii_case("pedestrian") => Some(ClassLabel::Pedestrian),
            _ => None,
        }
    }
}

impl core::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// An axis-aligned 2D detection box in image coordinates, with its class.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BBox2D {
    u_min: f64,
    v_min: f64,
    u_max: f64,
    v_max: f64,
    class: ClassLabel,
}

impl BBox2D {
    pub fn new(u_min: f64, v_min: f64, u_max: f64, v_max: f64, class: ClassLabel) -> Result<Self> {
        let finite = u_min.is_finite() && v_min.is_finite() && u_max.is_finite() && v_max.is_finite();
        if !finite || u_min >= u_max || v_min >= v_max {
            return Err(Error::DegenerateBox);
        }
        Ok(BBox2D {
            u_min,
            v_min,
            u_max,
            v_max,
            class,
        })
    }

    #[inline]
    pub fn u_min(&self) -> f64 {
        self.u_min
    }
    #[inline]
    pub fn v_min(&self) -> f64 {
        self.v_min
    }
    #[inline]
    pub fn u_max(&self) -> f64 {
        self.u_max
    }
    #[inline]
    pub fn v_max(&self) -> f64 {
        self.v_max
    }
    #[inline]
    pub fn class(&self) -> ClassLabel {
        self.class
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.u_max - self.u_min
    }
    #[inline]
    pub fn height(&self) -> f64 {
        self.v_max - self.v_min
    }
    #[inline]
    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Inclusive containment; boundary pixels count as inside.
    #[inline]
    pub fn contains(&self, px: Pixel) -> bool {
        px.u >= self.u_min && px.u <= self.u_max && px.v >= self.v_min && px.v <= self.v_max
    }

    /// Clips the box to `[0, width] x [0, height]`.
    ///
    /// Fails with [`Error::BoxOutsideImage`] when nothing remains.
    pub fn clamped_to_image(&self, width: u32, height: u32) -> Result<BBox2D> {
        let u_min = self.u_min.max(0.0);
        let v_min = self.v_min.max(0.0);
        let u_max = self.u_max.min(width as f64);
        let v_max = self.v_max.min(height as f64);
        if u_min >= u_max || v_min >= v_max {
            return Err(Error::BoxOutsideImage);
        }
        BBox2D::new(u_min, v_min, u_max, v_max, self.class)
    }
}
