fn main() {
    std::process::exit(cyclocns_cli::run(std::env::args_os()));
}
