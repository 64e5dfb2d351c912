use std::io::Write;

use clap::Parser;
use vertex_algebroid::cli::{execute, Args};

fn main() {
    let args = Args::parse();
    let (out, code) = execute(&args);
    let mut stream: Box<dyn Write> = if code >= 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = stream.write_all(out.as_bytes());
    std::process::exit(code);
}
