//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::process::{Command, ExitCode};

use qcat::suite::run_suite;

const SEED: u64 = 0;

fn suite_stdout() -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(["suite", "--seed", &SEED.to_string()])
        .env_remove("QCAT_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn determinism() -> (bool, String) {
    match (suite_stdout(), suite_stdout()) {
        (Ok((a, ca)), Ok((b, cb))) => {
            let same = a == b && !a.is_empty();
            (
                same && ca == Some(0) && cb == Some(0),
                format!(
                    "two `qcat suite` runs: {} bytes each, {}, exit codes {:?}/{:?}",
                    a.len(),
                    if same { "byte-identical" } else { "different" },
                    ca,
                    cb
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => (false, format!("could not run qcat: {e}")),
    }
}

fn main() -> ExitCode {
    let report = run_suite(SEED);
    let mut all = true;
    for c in &report.criteria {
        println!("{}", c.line());
        all &= c.passed;
    }
    let (ok, detail) = determinism();
    println!("{} [9] determinism: {}", if ok { "PASS" } else { "FAIL" }, detail);
    all &= ok;
    if all {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
