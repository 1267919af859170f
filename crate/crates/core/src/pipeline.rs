//! End-to-end FFT-Procrustes alignment and the four-variant benchmark.

use crate::error::{Error, Result};
use crate::metrics::cosine_correlation;
use crate::procrustes::{solve_rotation, OperatorMode};
use crate::spectral::{self, Image, Layout};
use crate::synthgen::{self, BlobRanges, BlobSet, DistortionParams};

/// Frequency-domain crop and operator choice for [`align`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignConfig {
    /// Reduction in total coefficient count. `4` keeps an `(H/2) × (W/2)` block.
    pub downsample_total_factor: f64,
    /// Explicit block width, overriding the factor on that axis.
    pub keep_w: Option<usize>,
    /// Explicit block height, overriding the factor on that axis.
    pub keep_h: Option<usize>,
    /// Build the dense `Ω` through a full SVD instead of the rank-1 form.
    pub explicit_operator: bool,
}

impl Default for AlignConfig {
    fn default() -> Self {
        Self {
            downsample_total_factor: 4.0,
            keep_w: None,
            keep_h: None,
            explicit_operator: false,
        }
    }
}

impl AlignConfig {
    /// Resolves the retained `(keep_w, keep_h)` block for an image size.
    ///
    /// The total factor is split evenly over both axes and each side is
    /// rounded to the nearest even bin count.
    pub fn keep_dims(&self, width: usize, height: usize) -> Result<(usize, usize)> {
        let f = self.downsample_total_factor;
        if !(f.is_finite() && f >= 1.0) {
            return Err(Error::param(format!(
                "downsample factor must be >= 1, got {f}"
            )));
        }
        let per_axis = f.sqrt();
        let from_factor =
            |n: usize| (2.0 * (n as f64 / (2.0 * per_axis)).round()).max(2.0) as usize;
        let keep_w = self.keep_w.unwrap_or_else(|| from_factor(width));
        let keep_h = self.keep_h.unwrap_or_else(|| from_factor(height));
        for (name, keep, full) in [
            ("keep width", keep_w, width),
            ("keep height", keep_h, height),
        ] {
            if keep == 0 || keep % 2 != 0 || keep > full {
                return Err(Error::param(format!(
                    "{name} must be even and in [2, {full}], got {keep}"
                )));
            }
        }
        Ok((keep_w, keep_h))
    }

    fn operator_mode(&self) -> OperatorMode {
        if self.explicit_operator {
            OperatorMode::ExplicitDense
        } else {
            OperatorMode::ImplicitRank1
        }
    }
}

/// Output of [`align`].
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    /// Real part of the reconstructed image.
    pub aligned: Image,
    /// Cosine correlation against the full-resolution target.
    pub cosine_vs_target: f64,
    /// `‖x_d‖ / ‖x_t‖` over the retained coefficients.
    pub scale: f64,
    /// `‖Ω·x_d − x_t‖` over the retained coefficients.
    pub residual: f64,
    /// Largest discarded imaginary magnitude.
    pub imag_residue: f64,
    /// Largest real magnitude of the reconstruction, for scaling `imag_residue`.
    pub max_abs_real: f64,
    /// Length of the vectors handed to the Procrustes stage.
    pub vector_length: usize,
    pub keep_w: usize,
    pub keep_h: usize,
}

/// Aligns `distorted` onto `target`.
///
/// Both images go through a unitary 2D DFT, are centered and cropped to the
/// configured low-frequency block, and are vectorized. The Procrustes
/// operator mapping the distorted vector onto the target vector is applied,
/// and the result is folded, zero-padded to full size, uncentered and
/// inverted. The real part of that grid is the aligned image.
pub fn align(target: &Image, distorted: &Image, config: &AlignConfig) -> Result<AlignmentResult> {
    if (target.width(), target.height()) != (distorted.width(), distorted.height()) {
        return Err(Error::DimensionMismatch(format!(
            "target is {}x{}, distorted is {}x{}",
            target.width(),
            target.height(),
            distorted.width(),
            distorted.height()
        )));
    }
    target.check_alignable()?;
    if target.norm() == 0.0 {
        return Err(Error::Degenerate("target image is all zero".into()));
    }
    if distorted.norm() == 0.0 {
        return Err(Error::Degenerate("distorted image is all zero".into()));
    }
    let (width, height) = (target.width(), target.height());
    let (keep_w, keep_h) = config.keep_dims(width, height)?;

    let reduce = |image: &Image| -> Result<_> {
        let centered = spectral::center(&spectral::dft2_forward(image))?;
        Ok(spectral::vectorize(&spectral::downsample(
            &centered, keep_w, keep_h,
        )?))
    };
    let x_t = reduce(target)?;
    let x_d = reduce(distorted)?;

    let operator = solve_rotation(&x_d, &x_t, config.operator_mode())?;
    let x_hat = operator.apply(&x_d)?;

    let block = spectral::fold(&x_hat, keep_w, keep_h, Layout::Centered)?;
    let full = spectral::uncenter(&spectral::upsample_zero_pad(&block, width, height)?)?;
    let grid = spectral::dft2_inverse(&full)?;
    let aligned = grid.real_part();

    Ok(AlignmentResult {
        cosine_vs_target: cosine_correlation(aligned.as_slice(), target.as_slice())?,
        scale: x_d.norm() / x_t.norm(),
        residual: x_hat.distance(&x_t),
        imag_residue: grid.max_abs_imag(),
        max_abs_real: grid.max_abs_real(),
        vector_length: x_t.len(),
        keep_w,
        keep_h,
        aligned,
    })
}

/// Parameters of the synthetic benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub width: usize,
    pub height: usize,
    pub n_blobs: usize,
    pub alpha: f64,
    pub master_seed: u64,
    pub noise_fraction: f64,
    pub extra_peaks: usize,
    pub widen_factor: f64,
    pub ranges: BlobRanges,
    pub align: AlignConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            width: 256,
            height: 256,
            n_blobs: 20,
            alpha: 0.5,
            master_seed: 42,
            noise_fraction: 0.10,
            extra_peaks: 3,
            widen_factor: 1.5,
            ranges: BlobRanges::default(),
            align: AlignConfig::default(),
        }
    }
}

/// The four perturbations of the distorted image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    NoNoise,
    WithNoise,
    ExtraPeaks,
    Wider,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::NoNoise,
        Variant::WithNoise,
        Variant::ExtraPeaks,
        Variant::Wider,
    ];

    /// Row label in the correlation table.
    pub fn label(self) -> &'static str {
        match self {
            Variant::NoNoise => "No Noise",
            Variant::WithNoise => "With Noise",
            Variant::ExtraPeaks => "+ Extra Peaks",
            Variant::Wider => "Wider",
        }
    }

    /// Short identifier for file names.
    pub fn slug(self) -> &'static str {
        match self {
            Variant::NoNoise => "no_noise",
            Variant::WithNoise => "with_noise",
            Variant::ExtraPeaks => "extra_peaks",
            Variant::Wider => "wider",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantOutcome {
    pub variant: Variant,
    /// The distorted image fed to [`align`].
    pub shifted: Image,
    pub result: AlignmentResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub target_blobs: BlobSet,
    pub distorted_blobs: BlobSet,
    pub target: Image,
    /// Cosine of the target with itself.
    pub self_cosine: f64,
    pub variants: Vec<VariantOutcome>,
}

impl ExperimentReport {
    /// `(label, cosine)` rows, starting with `Original (self)`.
    pub fn table(&self) -> Vec<(&'static str, f64)> {
        std::iter::once(("Original (self)", self.self_cosine))
            .chain(
                self.variants
                    .iter()
                    .map(|v| (v.variant.label(), v.result.cosine_vs_target)),
            )
            .collect()
    }

    pub fn variant(&self, which: Variant) -> Option<&VariantOutcome> {
        self.variants.iter().find(|v| v.variant == which)
    }
}

/// Target image and the four distorted variants, before alignment.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub target_blobs: BlobSet,
    /// Target blobs after the logarithmic distortion.
    pub distorted_blobs: BlobSet,
    /// Distorted blobs plus the extra peaks.
    pub extra_blobs: BlobSet,
    pub target: Image,
    pub shifted: Vec<(Variant, Image)>,
}

/// Samples the target blobs, distorts them and renders the four variants.
///
/// Every random draw derives from `config.master_seed` through purpose-keyed
/// streams, so the variants are reproducible independently of each other.
pub fn build_dataset(config: &ExperimentConfig) -> Result<Dataset> {
    let seed = config.master_seed;
    let params = DistortionParams::new(config.alpha)?;
    let target_blobs = synthgen::generate_blobs(
        config.n_blobs,
        config.width,
        config.height,
        seed,
        &config.ranges,
    )?;
    let target = synthgen::render(&target_blobs);
    let distorted_blobs = synthgen::distort_blobs(&target_blobs, &params)?;
    let base = synthgen::render(&distorted_blobs);

    let extra_blobs = if config.extra_peaks == 0 {
        distorted_blobs.clone()
    } else {
        synthgen::add_extra_blobs(&distorted_blobs, config.extra_peaks, seed, &config.ranges)?
    };
    let shifted = vec![
        (Variant::NoNoise, base.clone()),
        (
            Variant::WithNoise,
            synthgen::add_noise(&base, config.noise_fraction, seed)?,
        ),
        (Variant::ExtraPeaks, synthgen::render(&extra_blobs)),
        (
            Variant::Wider,
            synthgen::render(&synthgen::widen(&distorted_blobs, config.widen_factor)?),
        ),
    ];
    Ok(Dataset {
        target_blobs,
        distorted_blobs,
        extra_blobs,
        target,
        shifted,
    })
}

/// Builds the dataset and aligns each variant to the target.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let Dataset {
        target_blobs,
        distorted_blobs,
        target,
        shifted,
        ..
    } = build_dataset(config)?;

    let variants = shifted
        .into_iter()
        .map(|(variant, shifted)| {
            let result = align(&target, &shifted, &config.align)?;
            Ok(VariantOutcome {
                variant,
                shifted,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        config: *config,
        self_cosine: cosine_correlation(target.as_slice(), target.as_slice())?,
        target_blobs,
        distorted_blobs,
        target,
        variants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthgen::{generate_blobs, render};

    #[test]
    fn keep_dims_from_factor() {
        let cfg = AlignConfig::default();
        assert_eq!(cfg.keep_dims(256, 256).unwrap(), (128, 128));
        assert_eq!(cfg.keep_dims(64, 32).unwrap(), (32, 16));
        let one = AlignConfig {
            downsample_total_factor: 1.0,
            ..cfg
        };
        assert_eq!(one.keep_dims(48, 16).unwrap(), (48, 16));
        let over = AlignConfig {
            keep_w: Some(20),
            ..cfg
        };
        assert_eq!(over.keep_dims(32, 32).unwrap(), (20, 16));
        assert!(AlignConfig {
            keep_w: Some(7),
            ..cfg
        }
        .keep_dims(32, 32)
        .is_err());
        assert!(AlignConfig {
            keep_h: Some(40),
            ..cfg
        }
        .keep_dims(32, 32)
        .is_err());
        assert!(AlignConfig {
            downsample_total_factor: 0.5,
            ..cfg
        }
        .keep_dims(32, 32)
        .is_err());
    }

    #[test]
    fn align_rejects_bad_inputs() {
        let img = render(&generate_blobs(5, 32, 32, 1, &BlobRanges::default()).unwrap());
        let other = Image::zeros(32, 16);
        assert!(matches!(
            align(&img, &other, &AlignConfig::default()),
            Err(Error::DimensionMismatch(_))
        ));
        let zero = Image::zeros(32, 32);
        assert!(matches!(
            align(&img, &zero, &AlignConfig::default()),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            align(&zero, &img, &AlignConfig::default()),
            Err(Error::Degenerate(_))
        ));
        let small = Image::zeros(6, 6);
        assert!(matches!(
            align(&small, &small, &AlignConfig::default()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn self_alignment_has_unit_scale() {
        let img = render(&generate_blobs(20, 256, 256, 42, &BlobRanges::default()).unwrap());
        let r = align(&img, &img, &AlignConfig::default()).unwrap();
        assert!((r.scale - 1.0).abs() < 1e-12);
        assert!(r.residual < 1e-9);
        assert!(r.cosine_vs_target > 0.999, "{}", r.cosine_vs_target);
        assert_eq!((r.keep_w, r.keep_h, r.vector_length), (128, 128, 16384));
    }

    #[test]
    fn experiment_table_labels() {
        let cfg = ExperimentConfig {
            width: 64,
            height: 64,
            n_blobs: 6,
            ..ExperimentConfig::default()
        };
        let report = run_experiment(&cfg).unwrap();
        let labels: Vec<_> = report.table().into_iter().map(|(l, _)| l).collect();
        assert_eq!(
            labels,
            [
                "Original (self)",
                "No Noise",
                "With Noise",
                "+ Extra Peaks",
                "Wider"
            ]
        );
        assert_eq!(
            report.variant(Variant::ExtraPeaks).unwrap().variant,
            Variant::ExtraPeaks
        );
    }
}
