//! Forward and inverse unitary 2D DFT of a rendered image, the centered
//! layout, and the share of energy kept by low-frequency crops.
//!
//! ```text
//! cargo run --example spectral_roundtrip
//! ```

use fft_procrustes::spectral::{self, Layout};
use fft_procrustes::synthgen::{generate_blobs, render, BlobRanges};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let image = render(&generate_blobs(20, 256, 256, 42, &BlobRanges::default())?);
    let spectrum = spectral::dft2_forward(&image);
    let back = spectral::dft2_inverse(&spectrum)?;

    let round_trip = back
        .as_slice()
        .iter()
        .zip(image.as_slice())
        .map(|(z, x)| (z - x).norm())
        .fold(0.0, f64::max);
    let energy = spectrum.energy();
    println!("round trip max error  {round_trip:.3e}");
    println!(
        "Parseval mismatch     {:.3e}",
        (energy - image.norm().powi(2)).abs() / energy
    );

    let centered = spectral::center(&spectrum)?;
    assert_eq!(centered.layout(), Layout::Centered);
    println!("DC coefficient        {:.4}", centered.get(128, 128).re);

    println!(
        "\n{:>6} {:>12} {:>14}",
        "keep", "coefficients", "energy kept"
    );
    for keep in [16, 32, 64, 128, 256] {
        let block = spectral::downsample(&centered, keep, keep)?;
        println!(
            "{keep:>6} {:>12} {:>13.6}%",
            keep * keep,
            100.0 * block.energy() / energy
        );
    }

    let block = spectral::downsample(&centered, 128, 128)?;
    let restored = spectral::dft2_inverse(&spectral::uncenter(&spectral::upsample_zero_pad(
        &block, 256, 256,
    )?)?)?;
    let lowpass = restored.real_part();
    let err = lowpass
        .as_slice()
        .iter()
        .zip(image.as_slice())
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt();
    println!(
        "\nlow-pass (128x128 block) relative error {:.3e}",
        err / image.norm()
    );
    Ok(())
}
