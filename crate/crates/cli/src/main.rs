fn main() {
    std::process::exit(hecke_lab::main_with_args(std::env::args_os()));
}
