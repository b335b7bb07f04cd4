use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use polydefect_cli::{run, Args, CliConfig, EXIT_MALFORMED};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED as u8 } else { 0 });
        }
    };
    let config = CliConfig::from(args);
    let mut input = Vec::new();
    if config.command.reads_input() {
        let read = match &config.input_path {
            Some(path) => std::fs::read(path).map(|bytes| input = bytes),
            None => std::io::stdin().read_to_end(&mut input).map(|_| ()),
        };
        if let Err(e) = read {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    }
    let (code, out) = run(&config, &input);
    if code == 0 {
        let _ = std::io::stdout().write_all(&out);
    } else {
        let _ = std::io::stderr().write_all(&out);
    }
    ExitCode::from(code as u8)
}
