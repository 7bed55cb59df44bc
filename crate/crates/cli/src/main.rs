use std::io::Write;

fn main() {
    let run = fano_cli::run(std::env::args_os());
    print!("{}", run.stdout);
    if !run.stderr.is_empty() {
        eprintln!("{}", run.stderr);
    }
    let _ = std::io::stdout().flush();
    std::process::exit(run.code);
}
