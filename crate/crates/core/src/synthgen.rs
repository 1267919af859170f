//! Synthetic chromatogram-like images built from 2D Gaussian blobs.
//!
//! Blob centers use 1-based pixel coordinates: `cx ∈ [1, W]`, `cy ∈ [1, H]`,
//! and pixel `(px, py)` is stored at row `py − 1`, column `px − 1` of the
//! rendered [`Image`].
//!
//! Every seeded operation draws from its own ChaCha8 stream keyed by
//! purpose, so one master seed can drive centers, widths, amplitudes, noise
//! and extra peaks without the draws of one purpose shifting another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::spectral::Image;

/// A single 2D Gaussian peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blob {
    pub cx: f64,
    pub cy: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub amplitude: f64,
}

impl Blob {
    fn validate(&self, width: usize, height: usize) -> Result<()> {
        let in_range = |v: f64, hi: usize| v.is_finite() && (1.0..=hi as f64).contains(&v);
        if !in_range(self.cx, width) {
            return Err(Error::Domain {
                value: self.cx,
                bound: width as f64,
            });
        }
        if !in_range(self.cy, height) {
            return Err(Error::Domain {
                value: self.cy,
                bound: height as f64,
            });
        }
        for (name, v) in [
            ("sigma_x", self.sigma_x),
            ("sigma_y", self.sigma_y),
            ("amplitude", self.amplitude),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(format!(
                    "blob {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Ordered blobs on a `width × height` canvas. A blob's identity is its index.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobSet {
    blobs: Vec<Blob>,
    width: usize,
    height: usize,
}

impl BlobSet {
    pub fn new(blobs: Vec<Blob>, width: usize, height: usize) -> Result<Self> {
        if width < 1 || height < 1 {
            return Err(Error::param(format!(
                "canvas must be nonempty, got {width}x{height}"
            )));
        }
        for blob in &blobs {
            blob.validate(width, height)?;
        }
        Ok(Self {
            blobs,
            width,
            height,
        })
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            blobs: Vec::new(),
            width,
            height,
        }
    }

    pub fn blobs(&self) -> &[Blob] {
        &self.blobs
    }

    pub fn len(&self) -> usize {
        self.blobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blobs.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Blobs of `self` followed by blobs of `other`. Canvases must agree.
    pub fn concat(&self, other: &BlobSet) -> Result<BlobSet> {
        if (self.width, self.height) != (other.width, other.height) {
            return Err(Error::DimensionMismatch(format!(
                "canvas {}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )));
        }
        let mut blobs = self.blobs.clone();
        blobs.extend_from_slice(&other.blobs);
        Ok(BlobSet {
            blobs,
            width: self.width,
            height: self.height,
        })
    }
}

/// Closed interval `[low, high]` with a positive lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub const fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !(self.low.is_finite() && self.high.is_finite())
            || self.low <= 0.0
            || self.low > self.high
        {
            return Err(Error::param(format!(
                "{name} range [{}, {}] must satisfy 0 < low <= high",
                self.low, self.high
            )));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        rng.random_range(self.low..=self.high)
    }
}

/// Width and amplitude laws for sampled blobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobRanges {
    pub sigma: Interval,
    pub amplitude: Interval,
}

impl Default for BlobRanges {
    fn default() -> Self {
        Self {
            sigma: Interval::new(3.0, 8.0),
            amplitude: Interval::new(0.5, 1.0),
        }
    }
}

impl BlobRanges {
    fn validate(&self) -> Result<()> {
        self.sigma.validate("sigma")?;
        self.amplitude.validate("amplitude")
    }
}

/// Blending factor between the identity (`0`) and the full logarithmic map (`1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionParams {
    alpha: f64,
}

impl DistortionParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::param(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// RNG stream identifiers, one per sampling purpose.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
enum Stream {
    Centers = 1,
    Sigmas = 2,
    Amplitudes = 3,
    Noise = 4,
    ExtraCenters = 5,
    ExtraSigmas = 6,
    ExtraAmplitudes = 7,
}

fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

fn sample_blobs(
    count: usize,
    width: usize,
    height: usize,
    ranges: &BlobRanges,
    mut centers: ChaCha8Rng,
    mut sigmas: ChaCha8Rng,
    mut amplitudes: ChaCha8Rng,
) -> Vec<Blob> {
    let (w, h) = (width as f64, height as f64);
    (0..count)
        .map(|_| Blob {
            cx: centers.random_range(1.0..=w),
            cy: centers.random_range(1.0..=h),
            sigma_x: ranges.sigma.sample(&mut sigmas),
            sigma_y: ranges.sigma.sample(&mut sigmas),
            amplitude: ranges.amplitude.sample(&mut amplitudes),
        })
        .collect()
}

fn check_sampling(count: usize, width: usize, height: usize, ranges: &BlobRanges) -> Result<()> {
    if count == 0 {
        return Err(Error::param("blob count must be at least 1"));
    }
    if width < 8 || height < 8 {
        return Err(Error::param(format!(
            "canvas must be at least 8x8, got {width}x{height}"
        )));
    }
    ranges.validate()
}

/// Draws `count` blobs with centers uniform on `[1, W] × [1, H]` and
/// widths/amplitudes uniform on their ranges. Blobs may overlap.
pub fn generate_blobs(
    count: usize,
    width: usize,
    height: usize,
    seed: u64,
    ranges: &BlobRanges,
) -> Result<BlobSet> {
    check_sampling(count, width, height, ranges)?;
    let blobs = sample_blobs(
        count,
        width,
        height,
        ranges,
        stream_rng(seed, Stream::Centers),
        stream_rng(seed, Stream::Sigmas),
        stream_rng(seed, Stream::Amplitudes),
    );
    Ok(BlobSet {
        blobs,
        width,
        height,
    })
}

/// Appends `count` freshly drawn blobs; the existing blobs are untouched.
pub fn add_extra_blobs(
    blobs: &BlobSet,
    count: usize,
    seed: u64,
    ranges: &BlobRanges,
) -> Result<BlobSet> {
    check_sampling(count, blobs.width, blobs.height, ranges)?;
    let extra = sample_blobs(
        count,
        blobs.width,
        blobs.height,
        ranges,
        stream_rng(seed, Stream::ExtraCenters),
        stream_rng(seed, Stream::ExtraSigmas),
        stream_rng(seed, Stream::ExtraAmplitudes),
    );
    let mut out = blobs.clone();
    out.blobs.extend(extra);
    Ok(out)
}

/// Renders the additive sum of all blobs, evaluated at integer pixel
/// coordinates with no truncation window.
pub fn render(blobs: &BlobSet) -> Image {
    let (w, h) = (blobs.width, blobs.height);
    let mut data = vec![0.0; w * h];
    let mut gx = vec![0.0; w];
    let mut gy = vec![0.0; h];
    for blob in &blobs.blobs {
        // The Gaussian is separable: amplitude · g(x) · g(y).
        for (i, g) in gx.iter_mut().enumerate() {
            let d = (i + 1) as f64 - blob.cx;
            *g = (-d * d / (2.0 * blob.sigma_x * blob.sigma_x)).exp();
        }
        for (i, g) in gy.iter_mut().enumerate() {
            let d = (i + 1) as f64 - blob.cy;
            *g = blob.amplitude * (-d * d / (2.0 * blob.sigma_y * blob.sigma_y)).exp();
        }
        for (row, &vy) in data.chunks_mut(w).zip(&gy) {
            for (px, &vx) in row.iter_mut().zip(&gx) {
                *px += vy * vx;
            }
        }
    }
    Image::from_parts_unchecked(w, h, data)
}

/// One axis of the blended logarithmic map:
/// `(1 − α)·v + α·(1 + (n − 1)·ln v / ln n)`.
pub fn log_distort_coord(value: f64, alpha: f64, extent: usize) -> Result<f64> {
    if extent < 2 {
        return Err(Error::param(format!(
            "axis extent must exceed 1, got {extent}"
        )));
    }
    let n = extent as f64;
    if !(1.0..=n).contains(&value) {
        return Err(Error::Domain { value, bound: n });
    }
    let log_mapped = 1.0 + (n - 1.0) * value.ln() / n.ln();
    let blended = (1.0 - alpha) * value + alpha * log_mapped;
    Ok(blended.clamp(1.0, n))
}

/// Applies the logarithmic distortion to both coordinates of a point.
pub fn log_distort_point(
    x: f64,
    y: f64,
    params: &DistortionParams,
    width: usize,
    height: usize,
) -> Result<(f64, f64)> {
    Ok((
        log_distort_coord(x, params.alpha, width)?,
        log_distort_coord(y, params.alpha, height)?,
    ))
}

/// Moves every blob center through [`log_distort_point`]; widths and
/// amplitudes are kept.
pub fn distort_blobs(blobs: &BlobSet, params: &DistortionParams) -> Result<BlobSet> {
    let moved = blobs
        .blobs
        .iter()
        .map(|b| {
            let (cx, cy) = log_distort_point(b.cx, b.cy, params, blobs.width, blobs.height)?;
            Ok(Blob { cx, cy, ..*b })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlobSet {
        blobs: moved,
        width: blobs.width,
        height: blobs.height,
    })
}

/// Scales both widths of every blob by `factor`.
pub fn widen(blobs: &BlobSet, factor: f64) -> Result<BlobSet> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::param(format!(
            "widen factor must be positive, got {factor}"
        )));
    }
    let widened = blobs
        .blobs
        .iter()
        .map(|b| Blob {
            sigma_x: b.sigma_x * factor,
            sigma_y: b.sigma_y * factor,
            ..*b
        })
        .collect();
    Ok(BlobSet {
        blobs: widened,
        width: blobs.width,
        height: blobs.height,
    })
}

/// Adds i.i.d. zero-mean Gaussian noise with standard deviation
/// `fraction × max(image)` (taken on the clean image).
pub fn add_noise(image: &Image, fraction: f64, seed: u64) -> Result<Image> {
    if !(fraction.is_finite() && fraction >= 0.0) {
        return Err(Error::param(format!(
            "noise fraction must be >= 0, got {fraction}"
        )));
    }
    let sigma = fraction * image.max().max(0.0);
    if sigma == 0.0 {
        return Ok(image.clone());
    }
    let mut rng = stream_rng(seed, Stream::Noise);
    let data = image
        .as_slice()
        .iter()
        .map(|&v| {
            let z: f64 = rng.sample(StandardNormal);
            v + sigma * z
        })
        .collect();
    Image::new(image.width(), image.height(), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob(cx: f64, cy: f64, sigma: f64, amplitude: f64) -> Blob {
        Blob {
            cx,
            cy,
            sigma_x: sigma,
            sigma_y: sigma,
            amplitude,
        }
    }

    #[test]
    fn generates_in_bounds_and_deterministically() {
        let ranges = BlobRanges::default();
        let set = generate_blobs(20, 256, 256, 42, &ranges).unwrap();
        assert_eq!(set.len(), 20);
        for b in set.blobs() {
            assert!((1.0..=256.0).contains(&b.cx) && (1.0..=256.0).contains(&b.cy));
            assert!((3.0..=8.0).contains(&b.sigma_x) && (3.0..=8.0).contains(&b.sigma_y));
            assert!((0.5..=1.0).contains(&b.amplitude));
        }
        let a = generate_blobs(20, 64, 48, 7, &ranges).unwrap();
        let b = generate_blobs(20, 64, 48, 7, &ranges).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_blobs(20, 64, 48, 8, &ranges).unwrap());
    }

    #[test]
    fn degenerate_ranges_force_values() {
        let ranges = BlobRanges {
            sigma: Interval::new(1.0, 1.0),
            amplitude: Interval::new(1.0, 1.0),
        };
        let set = generate_blobs(1, 8, 8, 0, &ranges).unwrap();
        let b = set.blobs()[0];
        assert_eq!((b.sigma_x, b.sigma_y, b.amplitude), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_bad_sampling_parameters() {
        let ok = BlobRanges::default();
        assert!(generate_blobs(0, 16, 16, 1, &ok).is_err());
        assert!(generate_blobs(1, 4, 16, 1, &ok).is_err());
        let inverted = BlobRanges {
            sigma: Interval::new(5.0, 2.0),
            ..ok
        };
        assert!(matches!(
            generate_blobs(1, 16, 16, 1, &inverted),
            Err(Error::Parameter(_))
        ));
        let nonpositive = BlobRanges {
            amplitude: Interval::new(0.0, 1.0),
            ..ok
        };
        assert!(generate_blobs(1, 16, 16, 1, &nonpositive).is_err());
    }

    #[test]
    fn render_evaluates_gaussians() {
        assert!(render(&BlobSet::empty(8, 8))
            .as_slice()
            .iter()
            .all(|&v| v == 0.0));

        let single = BlobSet::new(vec![blob(5.0, 5.0, 1.0, 2.0)], 9, 9).unwrap();
        let img = render(&single);
        assert_eq!(img.get(4, 4), 2.0);
        // one pixel right of center: 2·exp(−1/2)
        assert!((img.get(4, 5) - 2.0 * (-0.5f64).exp()).abs() < 1e-15);

        let twin = BlobSet::new(vec![blob(5.0, 5.0, 1.0, 1.0); 2], 9, 9).unwrap();
        assert_eq!(render(&twin).get(4, 4), 2.0);
    }

    #[test]
    fn distortion_examples() {
        let p = DistortionParams::new(0.5).unwrap();
        assert_eq!(log_distort_coord(1.0, 0.5, 256).unwrap(), 1.0);
        assert!((log_distort_coord(256.0, 0.5, 256).unwrap() - 256.0).abs() < 1e-12);
        assert!((log_distort_coord(16.0, 0.5, 256).unwrap() - 72.25).abs() < 1e-12);
        assert_eq!(log_distort_coord(37.5, 0.0, 256).unwrap(), 37.5);
        let (x, y) = log_distort_point(16.0, 64.0, &p, 256, 256).unwrap();
        assert!((x - 72.25).abs() < 1e-12 && (y - 128.125).abs() < 1e-12);
    }

    #[test]
    fn distortion_rejects_out_of_domain() {
        assert!(matches!(
            log_distort_coord(0.5, 0.5, 256),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            log_distort_coord(256.5, 0.5, 256),
            Err(Error::Domain { .. })
        ));
        assert!(log_distort_coord(1.0, 0.5, 1).is_err());
        assert!(DistortionParams::new(1.5).is_err());
        assert!(DistortionParams::new(-0.1).is_err());
    }

    #[test]
    fn distort_blobs_moves_centers_only() {
        let set = BlobSet::new(
            vec![
                blob(16.0, 1.0, 4.0, 0.7),
                blob(64.0, 1.0, 5.0, 0.9),
                blob(1.0, 1.0, 2.0, 1.0),
            ],
            256,
            256,
        )
        .unwrap();
        let out = distort_blobs(&set, &DistortionParams::new(0.5).unwrap()).unwrap();
        let b = out.blobs();
        assert!((b[0].cx - 72.25).abs() < 1e-12);
        assert!((b[1].cx - 128.125).abs() < 1e-12);
        assert_eq!((b[2].cx, b[2].cy), (1.0, 1.0));
        for (before, after) in set.blobs().iter().zip(b) {
            assert_eq!(
                (before.sigma_x, before.sigma_y, before.amplitude),
                (after.sigma_x, after.sigma_y, after.amplitude)
            );
        }
        let same = distort_blobs(&set, &DistortionParams::new(0.0).unwrap()).unwrap();
        assert_eq!(same, set);
    }

    #[test]
    fn widen_scales_sigmas() {
        let set = BlobSet::new(vec![blob(10.0, 10.0, 4.0, 1.0)], 32, 32).unwrap();
        let wide = widen(&set, 1.5).unwrap();
        assert_eq!(wide.blobs()[0].sigma_x, 6.0);
        assert_eq!(wide.blobs()[0].sigma_y, 6.0);
        assert_eq!(widen(&set, 1.0).unwrap(), set);
        let back = widen(&widen(&set, 2.0).unwrap(), 0.5).unwrap();
        assert!((back.blobs()[0].sigma_x - 4.0).abs() < 1e-12);
        assert!(widen(&set, 0.0).is_err());
        assert!(widen(&set, -1.0).is_err());
    }

    #[test]
    fn extra_blobs_append_without_touching_originals() {
        let ranges = BlobRanges::default();
        let base = generate_blobs(20, 128, 128, 3, &ranges).unwrap();
        let more = add_extra_blobs(&base, 3, 3, &ranges).unwrap();
        assert_eq!(more.len(), 23);
        assert_eq!(&more.blobs()[..20], base.blobs());
        assert_eq!(more, add_extra_blobs(&base, 3, 3, &ranges).unwrap());
        // extras come from their own streams, not a continuation of the base draws
        assert_ne!(
            more.blobs()[20],
            generate_blobs(21, 128, 128, 3, &ranges).unwrap().blobs()[20]
        );

        let forced = BlobRanges {
            sigma: Interval::new(2.0, 2.0),
            amplitude: Interval::new(0.5, 0.5),
        };
        let one = add_extra_blobs(&base, 1, 9, &forced).unwrap();
        let b = one.blobs()[20];
        assert_eq!((b.sigma_x, b.sigma_y, b.amplitude), (2.0, 2.0, 0.5));
        assert!(add_extra_blobs(&base, 0, 9, &forced).is_err());
    }

    #[test]
    fn noise_properties() {
        let img = render(&generate_blobs(20, 64, 64, 1, &BlobRanges::default()).unwrap());
        assert_eq!(add_noise(&img, 0.0, 5).unwrap(), img);
        let zero = Image::zeros(16, 16);
        assert_eq!(add_noise(&zero, 0.3, 5).unwrap(), zero);
        assert!(add_noise(&img, -0.1, 5).is_err());
        assert_eq!(
            add_noise(&img, 0.1, 5).unwrap(),
            add_noise(&img, 0.1, 5).unwrap()
        );
    }

    #[test]
    fn blobset_validates_bounds() {
        assert!(matches!(
            BlobSet::new(vec![blob(0.5, 3.0, 1.0, 1.0)], 8, 8),
            Err(Error::Domain { .. })
        ));
        assert!(BlobSet::new(vec![blob(3.0, 9.0, 1.0, 1.0)], 8, 8).is_err());
        assert!(BlobSet::new(vec![blob(3.0, 3.0, 0.0, 1.0)], 8, 8).is_err());
        assert!(BlobSet::new(vec![blob(3.0, 3.0, 1.0, -1.0)], 8, 8).is_err());
    }
}
