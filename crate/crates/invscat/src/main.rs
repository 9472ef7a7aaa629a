fn main() {
    std::process::exit(invscat::io::run_cli(std::env::args().skip(1).collect()));
}
