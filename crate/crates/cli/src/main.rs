use std::process::exit;

fn main() {
    exit(wshift_cli::run(std::env::args_os()));
}
