use std::process::exit;

fn main() {
    exit(gpso_bench::cli_run(std::env::args_os()));
}
