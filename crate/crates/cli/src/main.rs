fn main() {
    std::process::exit(cubeiso::cli::run(std::env::args_os()));
}
