// Drive a sweep from a scenario file and write the records as CSV.

use schrodet::experiments::{run_sweep, write_records, Scenario};

pub fn run_example() -> schrodet::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ff_third.scn");
    let mut s = Scenario::from_file(path)?;
    s.n_set = "100..112".parse()?;
    let records = run_sweep(&s)?;
    let mut buf = Vec::new();
    write_records(&records, s.format, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
