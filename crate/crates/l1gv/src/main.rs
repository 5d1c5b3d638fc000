fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GV_LOG_LEVEL", "warn")).init();
    let code = l1gv::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
