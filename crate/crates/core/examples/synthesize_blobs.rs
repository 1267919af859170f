//! Samples Gaussian blobs, renders them and optionally writes the image as
//! matrix CSV plus a 16-bit PNG.
//!
//! ```text
//! cargo run --example synthesize_blobs -- [count] [seed] [out_dir]
//! ```

use std::path::PathBuf;

use fft_procrustes::cli::io::OutputDir;
use fft_procrustes::synthgen::{generate_blobs, render, BlobRanges};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(42);
    let out_dir: Option<PathBuf> = args.next().map(PathBuf::from);

    let blobs = generate_blobs(count, 256, 256, seed, &BlobRanges::default())?;
    println!(
        "{:>8} {:>8} {:>8} {:>8} {:>9}",
        "cx", "cy", "sigma_x", "sigma_y", "amplitude"
    );
    for b in blobs.blobs().iter().take(5) {
        println!(
            "{:>8.2} {:>8.2} {:>8.3} {:>8.3} {:>9.3}",
            b.cx, b.cy, b.sigma_x, b.sigma_y, b.amplitude
        );
    }
    if blobs.len() > 5 {
        println!("... {} more", blobs.len() - 5);
    }

    let image = render(&blobs);
    println!(
        "rendered {}x{}: min {:.3e}, max {:.4}, norm {:.4}",
        image.width(),
        image.height(),
        image.min(),
        image.max(),
        image.norm()
    );

    if let Some(dir) = out_dir {
        let mut out = OutputDir::create(&dir)?;
        out.write_matrix("blobs.csv", &image)?;
        out.write_png("blobs.png", &image)?;
        for f in out.files() {
            println!(
                "wrote {} ({} bytes, sha256 {})",
                f.name,
                f.bytes,
                &f.sha256[..16]
            );
        }
    }
    Ok(())
}
