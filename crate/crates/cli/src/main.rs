use clap::Parser;

fn main() {
    let cli = match agroline::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() {
                agroline::EXIT_INPUT
            } else {
                agroline::EXIT_OK
            });
        }
    };
    std::process::exit(agroline::run(cli));
}
