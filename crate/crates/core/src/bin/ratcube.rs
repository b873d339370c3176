use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = ratcube::cli::run(std::env::args(), &mut out, &mut err);
    if out.flush().is_err() {
        std::process::exit(ratcube::cli::EXIT_INTERNAL);
    }
    std::process::exit(code);
}
