fn main() {
    std::process::exit(ped::cli::main());
}
