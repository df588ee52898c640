use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let outcome = symquad::cli::run(&args);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    if !outcome.stderr.is_empty() {
        let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    }
    let _ = stdout.flush();
    std::process::exit(outcome.code);
}
