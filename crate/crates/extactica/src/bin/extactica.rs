fn main() {
    std::process::exit(extactica::cli::run(std::env::args_os()));
}
