use std::io;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SCHED_LOG", "error")).init();
    let status = flowsched::cli::run(std::env::args_os(), &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(status);
}
