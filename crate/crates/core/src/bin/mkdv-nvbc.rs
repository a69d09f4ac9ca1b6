fn main() {
    std::process::exit(mkdv_nvbc::cli::dispatch(std::env::args_os()));
}
