use std::io::Write;

fn main() {
    let out = reidemeister::cli::run(std::env::args().skip(1));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
