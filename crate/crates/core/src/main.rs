fn main() {
    std::process::exit(fft_procrustes::cli::main());
}
