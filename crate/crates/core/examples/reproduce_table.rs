//! Runs the four-variant benchmark with default parameters and prints the
//! cosine-correlation table plus the per-variant diagnostics.
//!
//! ```text
//! cargo run --release --example reproduce_table -- [seed]
//! ```

use fft_procrustes::{run_experiment, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(42);
    let config = ExperimentConfig {
        master_seed: seed,
        ..ExperimentConfig::default()
    };
    let report = run_experiment(&config)?;

    println!("{:<18} {:>8}", "Variant", "Cosine");
    for (label, cosine) in report.table() {
        println!("{label:<18} {cosine:>8.4}");
    }
    println!();
    println!(
        "{:<18} {:>12} {:>12} {:>12} {:>14}",
        "variant", "cosine", "scale", "residual", "imag residue"
    );
    for v in &report.variants {
        let r = &v.result;
        println!(
            "{:<18} {:>12.8} {:>12.6} {:>12.4e} {:>14.3e}",
            v.variant.label(),
            r.cosine_vs_target,
            r.scale,
            r.residual,
            r.imag_residue
        );
    }
    Ok(())
}
