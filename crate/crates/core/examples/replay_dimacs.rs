// Byte-identical DIMACS regeneration and log verification.

use std::error::Error;
use std::path::Path;

use veritrans::pipeline::{replay, replay_log, sha256_hex};

pub fn run() -> Result<(), Box<dyn Error>> {
    let first = replay("(a -> b) & (b -> c)")?;
    let second = replay("(a => b) && (b => c)")?;
    assert_eq!(first, second);
    println!("{}", sha256_hex(&first));
    print!("{}", String::from_utf8(first)?);

    let log = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/replay_log.jsonl");
    let report = replay_log(&log)?;
    println!("{} logged formulas, {} mismatches", report.checked, report.mismatches.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
