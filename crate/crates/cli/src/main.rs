//! Process shell around the command handlers: argument parsing, the
//! wall-clock watchdog, panic containment, and the exit-code contract.
//!
//! Exit codes: 0 = computed (whatever the mathematical verdict), 1 = usage
//! or input error, 2 = resource guard tripped (pairs, degree, or wall
//! clock), 3 = internal invariant breached.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::Parser;
use symlab_cli::commands::{run, Cli};
use symlab_core::EngineError;

fn exit_code(err: &EngineError) -> i32 {
    match err {
        EngineError::Resource { .. } => 2,
        EngineError::Invariant(_) => 3,
        _ => 1,
    }
}

fn panic_text(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".to_string()
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let timeout = cli.globals.timeout_seconds;
    let (tx, rx) = mpsc::channel();
    let worker = thread::Builder::new()
        .name("symlab-worker".to_string())
        .spawn(move || {
            let outcome = catch_unwind(AssertUnwindSafe(|| run(&cli)));
            let _ = tx.send(outcome);
        });
    if worker.is_err() {
        eprintln!("error: could not start worker thread");
        return 3;
    }

    let received = if timeout == 0 {
        rx.recv().map_err(|_| mpsc::RecvTimeoutError::Disconnected)
    } else {
        rx.recv_timeout(Duration::from_secs(timeout))
    };

    match received {
        Err(mpsc::RecvTimeoutError::Timeout) => {
            eprintln!("error: resource guard exceeded (wall clock over {timeout} s)");
            2
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => {
            eprintln!("error: internal invariant breached (worker vanished)");
            3
        }
        Ok(Err(payload)) => {
            eprintln!("error: internal invariant breached: {}", panic_text(payload));
            3
        }
        Ok(Ok(Ok(output))) => {
            print!("{output}");
            0
        }
        Ok(Ok(Err(e))) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
