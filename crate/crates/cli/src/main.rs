use ggr_cli::{run, Io};
use std::io;

fn main() {
    let (mut stdin, mut stdout, mut stderr) = (io::stdin(), io::stdout(), io::stderr());
    let code = run(std::env::args_os(), &mut Io { stdin: &mut stdin, stdout: &mut stdout, stderr: &mut stderr });
    std::process::exit(code);
}
