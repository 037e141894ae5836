use clap::Parser;
use walkup_cli::Cli;

fn main() {
    let cli = Cli::parse();
    let code = cli.run(&mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
