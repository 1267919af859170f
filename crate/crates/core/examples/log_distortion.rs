//! Tabulates the blended logarithmic coordinate map for several blending
//! factors and shows how it moves blob centers.
//!
//! ```text
//! cargo run --example log_distortion -- [extent]
//! ```

use fft_procrustes::synthgen::{
    distort_blobs, generate_blobs, log_distort_coord, BlobRanges, DistortionParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let extent: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(256);
    let alphas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let n = extent as f64;

    print!("{:>8}", "x");
    for a in alphas {
        print!(" {:>10}", format!("a={a}"));
    }
    println!();
    for x in [1.0, 2.0, n / 16.0, n / 4.0, n / 2.0, 3.0 * n / 4.0, n] {
        print!("{x:>8.2}");
        for a in alphas {
            print!(" {:>10.3}", log_distort_coord(x, a, extent)?);
        }
        println!();
    }

    let blobs = generate_blobs(5, extent, extent, 7, &BlobRanges::default())?;
    let moved = distort_blobs(&blobs, &DistortionParams::new(0.5)?)?;
    println!("\nblob centers under alpha = 0.5:");
    for (b, m) in blobs.blobs().iter().zip(moved.blobs()) {
        println!(
            "({:7.2}, {:7.2}) -> ({:7.2}, {:7.2})",
            b.cx, b.cy, m.cx, m.cy
        );
    }
    Ok(())
}
