mod common;

use common::*;
use fft_procrustes::spectral::{self, ComplexVector, Image, Layout, Spectrum};
use num_complex::Complex64;
use proptest::prelude::*;

fn random_image(seed: u64, width: usize, height: usize) -> Image {
    Image::new(width, height, random_real(&mut rng(seed), width * height)).unwrap()
}

#[test]
fn matches_direct_double_sum() {
    let img = random_image(1, 8, 6);
    let fast = spectral::dft2_forward(&img);
    let direct = dft2_double_sum(img.as_slice(), 8, 6);
    assert!(max_abs_diff(fast.as_slice(), &direct) < 1e-12);
}

#[test]
fn separable_against_dft_matrices_256() {
    let img = random_image(2, 256, 256);
    let fast = spectral::dft2_forward(&img);
    let naive = dft2_naive(&to_complex(img.as_slice()), 256, 256, false);
    assert!(max_abs_diff(fast.as_slice(), &naive) <= 1e-10);
}

#[test]
fn round_trip_and_parseval_256() {
    let img = random_image(3, 256, 256);
    let spec = spectral::dft2_forward(&img);
    let back = spectral::dft2_inverse(&spec).unwrap();
    let err = back
        .as_slice()
        .iter()
        .zip(img.as_slice())
        .map(|(c, v)| (c - Complex64::new(*v, 0.0)).norm())
        .fold(0.0, f64::max);
    assert!(err <= 1e-10, "{err}");
    let spatial: f64 = img.as_slice().iter().map(|v| v * v).sum();
    assert!(((spatial - spec.energy()) / spatial).abs() <= 1e-10);
}

#[test]
fn conjugate_symmetry_for_real_input() {
    let (w, h) = (32, 16);
    let spec = spectral::dft2_forward(&random_image(4, w, h));
    for k in 0..h {
        for l in 0..w {
            let mirror = spec.get((h - k) % h, (w - l) % w).conj();
            assert!((spec.get(k, l) - mirror).norm() <= 1e-10);
        }
    }
}

#[test]
fn inverse_of_centered_block_pipeline_is_low_pass() {
    // crop-and-pad through the crate equals the band-limited oracle
    let (w, h, kw, kh) = (16, 12, 8, 6);
    let img = random_image(5, w, h);
    let centered = spectral::center(&spectral::dft2_forward(&img)).unwrap();
    let block = spectral::downsample(&centered, kw, kh).unwrap();
    let padded = spectral::uncenter(&spectral::upsample_zero_pad(&block, w, h).unwrap()).unwrap();
    let recon = spectral::dft2_inverse(&padded).unwrap().real_part();
    let (band_norm, oracle) = lowpass_oracle(img.as_slice(), w, h, kw, kh);
    assert!((block.energy().sqrt() - band_norm).abs() < 1e-12);
    assert!(diff_norm(recon.as_slice(), &oracle) < 1e-12);
}

fn spectrum_strategy() -> impl Strategy<Value = Spectrum> {
    (1usize..6, 1usize..6).prop_flat_map(|(hw, hh)| {
        let (w, h) = (2 * hw, 2 * hh);
        prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), w * h).prop_map(move |vals| {
            let data = vals
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            Spectrum::new(w, h, data, Layout::Natural).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn centering_round_trips(spec in spectrum_strategy()) {
        let centered = spectral::center(&spec).unwrap();
        prop_assert_eq!(spectral::uncenter(&centered).unwrap(), spec);
    }

    #[test]
    fn fold_inverts_vectorize(spec in spectrum_strategy()) {
        let v = spectral::vectorize(&spec);
        prop_assert_eq!(v.len(), spec.width() * spec.height());
        prop_assert_eq!(spectral::fold(&v, spec.width(), spec.height(), Layout::Natural).unwrap(), spec);
    }

    #[test]
    fn crop_never_gains_energy_and_pad_is_undone(spec in spectrum_strategy(), kw in 1usize..6, kh in 1usize..6) {
        let centered = spectral::center(&spec).unwrap();
        let (kw, kh) = ((2 * kw).min(spec.width()), (2 * kh).min(spec.height()));
        let block = spectral::downsample(&centered, kw, kh).unwrap();
        prop_assert!(block.energy() <= centered.energy() + 1e-12);
        let padded = spectral::upsample_zero_pad(&block, spec.width(), spec.height()).unwrap();
        prop_assert_eq!(spectral::downsample(&padded, kw, kh).unwrap(), block);
    }
}

#[test]
fn complex_vector_helpers() {
    let a = ComplexVector::new(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]).unwrap();
    assert_eq!(a.norm(), 5.0);
    assert_eq!(a.hdot(&a), Complex64::new(25.0, 0.0));
    assert_eq!(a.distance(&a), 0.0);
}
