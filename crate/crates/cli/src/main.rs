mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;
use leavitt_wreath::scalar::{Gf, Q};

use args::{Cli, FieldChoice};
use run::{execute, Failure, Outcome};

macro_rules! dispatch_prime {
    ($p:expr, $cmd:expr, $seed:expr; $($q:literal)*) => {
        match $p {
            $($q => execute::<Gf<$q>>($cmd, $seed),)*
            other => unreachable!("prime {other} passed validation"),
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldChoice::Rational => execute::<Q>(&cli.command, cli.seed),
        FieldChoice::Prime(p) => dispatch_prime!(p, &cli.command, cli.seed;
            2 3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97 101 65537),
    };
    match result {
        Ok(Outcome { text, passed }) => {
            println!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Property(msg)) => {
            println!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
