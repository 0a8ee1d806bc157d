use clap::Parser;

fn main() {
    let cli = nicolai_cli::Cli::parse();
    let outcome = nicolai_cli::execute(cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.exit);
}
