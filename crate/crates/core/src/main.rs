use clap::Parser;
use toric_gw::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let (code, text) = run(&cli);
    if code == 0 {
        print!("{text}");
    } else {
        eprintln!("error: {text}");
    }
    std::process::exit(code);
}
