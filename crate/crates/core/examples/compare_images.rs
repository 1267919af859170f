//! Cosine correlation and RMSE between images, including the scale
//! invariance of the cosine.
//!
//! ```text
//! cargo run --example compare_images -- [first.csv second.csv]
//! ```

use std::path::Path;

use fft_procrustes::cli::io::read_matrix_csv;
use fft_procrustes::metrics::{cosine_correlation, rmse};
use fft_procrustes::synthgen::{add_noise, generate_blobs, render, BlobRanges};

fn report(name: &str, a: &[f64], b: &[f64]) -> fft_procrustes::Result<()> {
    println!(
        "{name:<22} cosine {:.6}  rmse {:.4e}",
        cosine_correlation(a, b)?,
        rmse(a, b)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [a, b] = args.as_slice() {
        let (a, b) = (
            read_matrix_csv(Path::new(a))?,
            read_matrix_csv(Path::new(b))?,
        );
        report("files", a.as_slice(), b.as_slice())?;
        return Ok(());
    }
    let image = render(&generate_blobs(20, 128, 128, 3, &BlobRanges::default())?);
    let doubled: Vec<f64> = image.as_slice().iter().map(|v| 2.0 * v).collect();
    let noisy = add_noise(&image, 0.1, 3)?;
    let other = render(&generate_blobs(20, 128, 128, 4, &BlobRanges::default())?);
    report("self", image.as_slice(), image.as_slice())?;
    report("scaled by 2", image.as_slice(), &doubled)?;
    report("10% noise", image.as_slice(), noisy.as_slice())?;
    report("unrelated blobs", image.as_slice(), other.as_slice())?;
    Ok(())
}
