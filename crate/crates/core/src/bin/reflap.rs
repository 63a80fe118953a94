fn main() {
    let code = reflap::cli::main_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(i32::from(code));
}
