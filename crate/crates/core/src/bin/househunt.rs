fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(househunt::cli::dispatch(&args));
}
