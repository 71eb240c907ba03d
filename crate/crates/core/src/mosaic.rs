//! Mosaic filter layouts and single-plane snapshot images.

use crate::error::{Error, Result};

/// An `n x n` repeating filter layout. `band_at(row, col)` is the band sampled
/// at tile position `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MosaicPattern {
    n: usize,
    band_at: Vec<usize>,
    // inverse of band_at: (row, col) of each band inside the tile
    position: Vec<(usize, usize)>,
}

impl MosaicPattern {
    /// `band_at` is the row-major `n x n` grid of band indices.
    pub fn new(n: usize, band_at: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                field: "pattern",
                reason: "tile size must be positive".into(),
            });
        }
        let bands = n * n;
        if band_at.len() != bands {
            return Err(Error::SizeMismatch {
                field: "pattern",
                expected: bands,
                found: band_at.len(),
            });
        }
        let mut position = vec![None; bands];
        for (i, &b) in band_at.iter().enumerate() {
            if b >= bands || position[b].is_some() {
                return Err(Error::InvalidParameter {
                    field: "pattern",
                    reason: format!("band indices must be a permutation of 0..{bands}"),
                });
            }
            position[b] = Some((i / n, i % n));
        }
        Ok(MosaicPattern {
            n,
            band_at,
            position: position.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Row-major layout `band_at[r][c] = r * n + c`.
    pub fn row_major(n: usize) -> Result<Self> {
        Self::new(n, (0..n * n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bands(&self) -> usize {
        self.n * self.n
    }

    pub fn band_at(&self, row: usize, col: usize) -> usize {
        self.band_at[row * self.n + col]
    }

    /// Band sampled at image pixel `(x, y)`.
    pub fn band_at_pixel(&self, x: usize, y: usize) -> usize {
        self.band_at(y % self.n, x % self.n)
    }

    /// Tile offset `(row, col)` of `band`.
    pub fn position_of(&self, band: usize) -> (usize, usize) {
        self.position[band]
    }

    pub fn layout(&self) -> &[usize] {
        &self.band_at
    }
}

/// A single-plane snapshot frame; each pixel carries one band.
#[derive(Debug, Clone, PartialEq)]
pub struct MosaicImage {
    width: usize,
    height: usize,
    data: Vec<f32>,
    pattern: MosaicPattern,
}

impl MosaicImage {
    pub fn new(
        width: usize,
        height: usize,
        data: Vec<f32>,
        pattern: MosaicPattern,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                field: "width/height",
                reason: format!("mosaic must be non-empty, got {width}x{height}"),
            });
        }
        if data.len() != width * height {
            return Err(Error::SizeMismatch {
                field: "data",
                expected: width * height,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite() || *v < 0.0) {
            let v = data[index];
            return Err(if v.is_finite() {
                Error::InvalidParameter {
                    field: "data",
                    reason: format!("negative sample {v} at index {index}"),
                }
            } else {
                Error::NonFinite {
                    field: "data",
                    index,
                }
            });
        }
        Ok(MosaicImage {
            width,
            height,
            data,
            pattern,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn pattern(&self) -> &MosaicPattern {
        &self.pattern
    }

    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_must_be_a_permutation() {
        assert!(MosaicPattern::new(2, vec![0, 1, 1, 3]).is_err());
        assert!(MosaicPattern::new(2, vec![0, 1, 2, 4]).is_err());
        assert!(MosaicPattern::new(2, vec![0, 1, 2]).is_err());
        let p = MosaicPattern::new(2, vec![3, 1, 0, 2]).unwrap();
        assert_eq!(p.position_of(3), (0, 0));
        assert_eq!(p.position_of(2), (1, 1));
        assert_eq!(p.band_at_pixel(5, 4), 1);
    }

    #[test]
    fn mosaic_rejects_negative_samples() {
        let p = MosaicPattern::row_major(2).unwrap();
        assert!(MosaicImage::new(2, 2, vec![0.0, -0.1, 0.0, 0.0], p.clone()).is_err());
        assert!(MosaicImage::new(2, 2, vec![0.0, f32::INFINITY, 0.0, 0.0], p).is_err());
    }
}
