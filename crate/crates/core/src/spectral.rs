//! Unitary two-dimensional DFT and the grid/vector plumbing around it.
//!
//! Grids are stored row-major: element `(row, col)` lives at
//! `row * width + col`. Rows run along the height axis, columns along the
//! width axis.
//!
//! The forward transform is `F_H · X · F_Wᴴ` where both DFT matrices carry
//! a `1/√n` factor, so forward and inverse are both unitary and spectral
//! energy equals spatial energy.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Real-valued intensity grid in the spatial domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {width}x{height} image",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("non-finite pixel at index {i}")));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major pixel values.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.width)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Checks the size constraints of the alignment pipeline: both
    /// dimensions even and at least 8.
    pub fn check_alignable(&self) -> Result<()> {
        for (name, n) in [("width", self.width), ("height", self.height)] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::param(format!(
                    "image {name} must be even and >= 8, got {n}"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }
}

/// Frequency ordering of a [`Spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Zero frequency at index `(0, 0)`, as produced by the FFT.
    Natural,
    /// Zero frequency at `(height / 2, width / 2)`.
    Centered,
}

/// Complex coefficient grid in the frequency domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
    layout: Layout,
}

impl Spectrum {
    pub fn new(width: usize, height: usize, data: Vec<Complex64>, layout: Layout) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param(format!(
                "spectrum dimensions must be positive, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {width}x{height} spectrum",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
            layout,
        })
    }

    pub fn zeros(width: usize, height: usize, layout: Layout) -> Self {
        Self {
            width,
            height,
            data: vec![Complex64::new(0.0, 0.0); width * height],
            layout,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.width + col]
    }

    /// Sum of squared magnitudes.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }

    fn expect_layout(&self, expected: Layout) -> Result<()> {
        if self.layout != expected {
            return Err(Error::Layout {
                expected,
                found: self.layout,
            });
        }
        Ok(())
    }
}

/// Complex grid returned by the inverse transform.
///
/// An aligned spectrum is generally not Hermitian, so its inverse carries an
/// imaginary part that callers either discard or report.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn real_part(&self) -> Image {
        Image::from_parts_unchecked(
            self.width,
            self.height,
            self.data.iter().map(|c| c.re).collect(),
        )
    }

    pub fn max_abs_real(&self) -> f64 {
        self.data.iter().map(|c| c.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.data.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }
}

/// Dense complex vector, the operand of the Procrustes stage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::param("complex vector must be nonempty"));
        }
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::param("complex vector has non-finite entries"));
        }
        Ok(Self(data))
    }

    pub fn from_real(data: &[f64]) -> Result<Self> {
        Self::new(data.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Hermitian inner product `selfᴴ · other`.
    pub fn hdot(&self, other: &ComplexVector) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> ComplexVector {
        ComplexVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &ComplexVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub(crate) fn from_vec_unchecked(data: Vec<Complex64>) -> Self {
        Self(data)
    }
}

struct Plans {
    rows: Arc<dyn Fft<f64>>,
    cols: Arc<dyn Fft<f64>>,
}

impl Plans {
    fn new(width: usize, height: usize, direction: FftDirection) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            rows: planner.plan_fft(width, direction),
            cols: planner.plan_fft(height, direction),
        }
    }
}

/// Row pass then column pass, followed by the `1/√(WH)` scaling.
fn transform_in_place(
    data: &mut [Complex64],
    width: usize,
    height: usize,
    direction: FftDirection,
) {
    let plans = Plans::new(width, height, direction);
    for row in data.chunks_mut(width) {
        plans.rows.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); height];
    for col in 0..width {
        for (row, slot) in column.iter_mut().enumerate() {
            *slot = data[row * width + col];
        }
        plans.cols.process(&mut column);
        for (row, value) in column.iter().enumerate() {
            data[row * width + col] = *value;
        }
    }
    let scale = 1.0 / ((width * height) as f64).sqrt();
    for c in data.iter_mut() {
        *c *= scale;
    }
}

/// Forward unitary 2D DFT. The result is in natural layout.
pub fn dft2_forward(image: &Image) -> Spectrum {
    let mut data: Vec<Complex64> = image.data.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_in_place(&mut data, image.width, image.height, FftDirection::Forward);
    Spectrum {
        width: image.width,
        height: image.height,
        data,
        layout: Layout::Natural,
    }
}

/// Inverse unitary 2D DFT. Requires natural layout.
pub fn dft2_inverse(spectrum: &Spectrum) -> Result<ComplexGrid> {
    spectrum.expect_layout(Layout::Natural)?;
    let mut data = spectrum.data.clone();
    transform_in_place(
        &mut data,
        spectrum.width,
        spectrum.height,
        FftDirection::Inverse,
    );
    Ok(ComplexGrid {
        width: spectrum.width,
        height: spectrum.height,
        data,
    })
}

fn check_even(width: usize, height: usize) -> Result<()> {
    if !width.is_multiple_of(2) || !height.is_multiple_of(2) {
        return Err(Error::param(format!(
            "centering needs even dimensions, got {width}x{height}"
        )));
    }
    Ok(())
}

fn half_shift(spectrum: &Spectrum, layout: Layout) -> Spectrum {
    let (w, h) = (spectrum.width, spectrum.height);
    let mut data = vec![Complex64::new(0.0, 0.0); w * h];
    for row in 0..h {
        let dst_row = (row + h / 2) % h;
        for col in 0..w {
            data[dst_row * w + (col + w / 2) % w] = spectrum.data[row * w + col];
        }
    }
    Spectrum {
        width: w,
        height: h,
        data,
        layout,
    }
}

/// Moves the zero frequency from `(0, 0)` to `(height/2, width/2)`.
pub fn center(spectrum: &Spectrum) -> Result<Spectrum> {
    spectrum.expect_layout(Layout::Natural)?;
    check_even(spectrum.width, spectrum.height)?;
    Ok(half_shift(spectrum, Layout::Centered))
}

/// Inverse of [`center`].
pub fn uncenter(spectrum: &Spectrum) -> Result<Spectrum> {
    spectrum.expect_layout(Layout::Centered)?;
    check_even(spectrum.width, spectrum.height)?;
    Ok(half_shift(spectrum, Layout::Natural))
}

fn check_block(name: &str, block: usize, full: usize) -> Result<()> {
    if block == 0 || !block.is_multiple_of(2) {
        return Err(Error::param(format!(
            "{name} must be even and positive, got {block}"
        )));
    }
    if block > full {
        return Err(Error::param(format!(
            "{name} {block} exceeds the available {full} bins"
        )));
    }
    Ok(())
}

/// Keeps the centered `keep_h × keep_w` block of lowest frequencies.
pub fn downsample(spectrum: &Spectrum, keep_w: usize, keep_h: usize) -> Result<Spectrum> {
    spectrum.expect_layout(Layout::Centered)?;
    check_block("keep width", keep_w, spectrum.width)?;
    check_block("keep height", keep_h, spectrum.height)?;
    let row0 = (spectrum.height - keep_h) / 2;
    let col0 = (spectrum.width - keep_w) / 2;
    let data = (row0..row0 + keep_h)
        .flat_map(|row| {
            let start = row * spectrum.width + col0;
            spectrum.data[start..start + keep_w].iter().copied()
        })
        .collect();
    Ok(Spectrum {
        width: keep_w,
        height: keep_h,
        data,
        layout: Layout::Centered,
    })
}

/// Embeds a centered block in a zero grid of the target size.
///
/// `downsample(&upsample_zero_pad(s, w, h)?, s.width(), s.height())` returns
/// `s` unchanged.
pub fn upsample_zero_pad(
    spectrum: &Spectrum,
    target_w: usize,
    target_h: usize,
) -> Result<Spectrum> {
    spectrum.expect_layout(Layout::Centered)?;
    check_block("target width", target_w, usize::MAX)?;
    check_block("target height", target_h, usize::MAX)?;
    if target_w < spectrum.width || target_h < spectrum.height {
        return Err(Error::param(format!(
            "target {target_w}x{target_h} is smaller than the {}x{} block",
            spectrum.width, spectrum.height
        )));
    }
    let mut out = Spectrum::zeros(target_w, target_h, Layout::Centered);
    let row0 = (target_h - spectrum.height) / 2;
    let col0 = (target_w - spectrum.width) / 2;
    for (r, src) in spectrum.data.chunks(spectrum.width).enumerate() {
        let start = (row0 + r) * target_w + col0;
        out.data[start..start + spectrum.width].copy_from_slice(src);
    }
    Ok(out)
}

/// Column-major linearization of a spectrum.
pub fn vectorize(spectrum: &Spectrum) -> ComplexVector {
    let (w, h) = (spectrum.width, spectrum.height);
    let data = (0..w)
        .flat_map(|col| (0..h).map(move |row| row * w + col))
        .map(|i| spectrum.data[i])
        .collect();
    ComplexVector::from_vec_unchecked(data)
}

/// Inverse of [`vectorize`].
pub fn fold(
    vector: &ComplexVector,
    width: usize,
    height: usize,
    layout: Layout,
) -> Result<Spectrum> {
    if vector.len() != width * height {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} cannot fold into {width}x{height}",
            vector.len()
        )));
    }
    let mut data = vec![Complex64::new(0.0, 0.0); width * height];
    for (i, value) in vector.as_slice().iter().enumerate() {
        let (col, row) = (i / height, i % height);
        data[row * width + col] = *value;
    }
    Spectrum::new(width, height, data, layout)
}
