use seifert_rt_cli::{run, LibraryEvaluator};
use std::io::Write;

fn main() {
    let out = run(std::env::args_os(), &LibraryEvaluator);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
