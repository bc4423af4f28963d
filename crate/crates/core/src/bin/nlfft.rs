use clap::Parser;

fn main() {
    nlfft::cli::init_logging();
    let cli = nlfft::cli::Cli::parse();
    std::process::exit(nlfft::cli::run(cli));
}
