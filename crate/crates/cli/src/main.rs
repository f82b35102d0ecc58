fn main() {
    let (out, code) = iwalab_cli::run(std::env::args_os());
    if !out.is_empty() {
        if code == 2 {
            eprint!("{out}");
        } else {
            print!("{out}");
        }
    }
    std::process::exit(code);
}
