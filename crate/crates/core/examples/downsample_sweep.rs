//! Sweeps the retained frequency block and reports the cosine correlation
//! of each aligned variant.
//!
//! ```text
//! cargo run --release --example downsample_sweep
//! ```

use fft_procrustes::pipeline::{align, build_dataset, AlignConfig, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = build_dataset(&ExperimentConfig::default())?;
    print!("{:>6}", "keep");
    for (variant, _) in &data.shifted {
        print!(" {:>14}", variant.label());
    }
    println!();
    for keep in [16, 32, 64, 128, 192, 256] {
        let config = AlignConfig {
            keep_w: Some(keep),
            keep_h: Some(keep),
            ..AlignConfig::default()
        };
        print!("{keep:>6}");
        for (_, shifted) in &data.shifted {
            print!(
                " {:>14.6}",
                align(&data.target, shifted, &config)?.cosine_vs_target
            );
        }
        println!();
    }
    Ok(())
}
