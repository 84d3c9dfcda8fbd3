use clap::Parser;
use slelong_cli::{finish, init_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = init_threads()
        .and_then(|()| run(&cli))
        .and_then(|outcome| finish(&cli, &outcome))
        .unwrap_or_else(|e| {
            eprintln!("error: {e}");
            2
        });
    std::process::exit(code);
}
