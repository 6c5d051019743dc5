use std::io::Write;

fn main() {
    let threads = std::env::var("RSC_THREADS").ok();
    let outcome = rsc::run(std::env::args_os(), threads.as_deref());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    std::io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    std::process::exit(outcome.code);
}
