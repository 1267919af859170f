//! Frequency-domain alignment of two-dimensional separations images.
//!
//! A distorted image is mapped onto a target by transforming both into the
//! Fourier domain, keeping a centered low-frequency block, and solving a
//! complex orthogonal Procrustes problem between the two vectorized spectra.
//! The aligned spectrum is folded, zero-padded and inverted back into an
//! image.
//!
//! The crate is organised by stage:
//!
//! - [`synthgen`]: Gaussian-blob test images, logarithmic coordinate
//!   distortion and the perturbations used in the benchmark.
//! - [`spectral`]: unitary 2D DFT, centering, low-frequency crop and
//!   zero-pad, vectorize/fold.
//! - [`procrustes`]: complex orthogonal Procrustes, implicit rank-1 and
//!   dense forms.
//! - [`metrics`]: cosine correlation and RMSE.
//! - [`pipeline`]: the end-to-end alignment and the four-variant experiment.
//! - [`cli`]: file formats and the `fftp` command-line harness.

pub mod cli;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod procrustes;
pub mod spectral;
pub mod synthgen;

pub use error::{Error, Result};
pub use metrics::{cosine_correlation, rmse, MetricReport};
pub use pipeline::{
    align, build_dataset, run_experiment, AlignConfig, AlignmentResult, Dataset, ExperimentConfig,
    ExperimentReport, Variant,
};
pub use procrustes::{solve_rotation, solve_rotation_real, OperatorMode, RotationOperator};
pub use spectral::{ComplexGrid, ComplexVector, Image, Layout, Spectrum};
pub use synthgen::{Blob, BlobRanges, BlobSet, DistortionParams, Interval};
