use clap::Parser;

fn main() {
    let cli = channel_order::cli::Cli::parse();
    std::process::exit(channel_order::cli::run(cli));
}
