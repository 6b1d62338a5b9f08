fn main() {
    std::process::exit(homotopy_radar_cli::main_with_args(std::env::args_os()));
}
