use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use sparse_maxcut::cli::{self, Cli};
use sparse_maxcut::Error;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();

    let result = cli::workers_from_env().and_then(|workers| {
        if let Some(k) = workers {
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .expect("global pool is configured once");
        }
        let stdout = std::io::stdout();
        cli::run(cli, &mut stdout.lock())
    });

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::to_string_pretty(&cli::error_json(&e)).expect("serializable");
            let _ = writeln!(io::stdout(), "{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
