use std::io;

fn main() {
    let code = koszul_sdepth::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
