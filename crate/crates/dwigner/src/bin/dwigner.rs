fn main() {
    std::process::exit(dwigner::cli::run() as i32);
}
