fn main() {
    std::process::exit(hullmaps::cli::run(std::env::args_os()));
}
