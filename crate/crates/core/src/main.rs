use std::process::ExitCode;

fn main() -> ExitCode {
    dkp_s3::cli::run(std::env::args_os())
}
