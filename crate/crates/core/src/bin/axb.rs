fn main() {
    std::process::exit(axb_kernels::report::cli::main());
}
