mod common;

use schrodet::experiments::{run_sweep, sweep, write_csv, Scenario};
use schrodet::AsymptoticPrediction;

const SCENARIO: &str = "\
piece [-0.25, 1/pi]: 3.3 + x^2/2 + sin(3*x)
piece [1/pi, 1.25]: 3.5 - x
jump at 1/pi side right
n = 10..400 step 3
";

fn csv_bytes() -> Vec<u8> {
    let s = Scenario::parse(SCENARIO).unwrap();
    let mut buf = Vec::new();
    write_csv(&run_sweep(&s).unwrap(), &mut buf).unwrap();
    buf
}

#[test]
fn repeated_sweeps_are_byte_identical() {
    let first = csv_bytes();
    for _ in 0..3 {
        assert_eq!(csv_bytes(), first);
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let f = common::ff2();
    let p = AsymptoticPrediction::new(&f).unwrap();
    let ns: Vec<usize> = (10..=3000).step_by(23).collect();
    let serial = sweep(&f, &p, &ns, false).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let parallel = pool.install(|| sweep(&f, &p, &ns, true).unwrap());
    assert_eq!(serial, parallel);
    assert!(serial.windows(2).all(|w| w[0].n < w[1].n));
    assert!(serial.iter().all(|r| r.ratio > 0.0));
}
