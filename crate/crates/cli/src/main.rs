use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(kakeya_cli::config::SEED_ENV).ok();
    let code = kakeya_cli::run(
        std::env::args_os(),
        seed.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
