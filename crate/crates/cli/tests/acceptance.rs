use std::io::Write;

use cubeiso::acceptance::{run_all, Config};

// The perimeter-equality statement with global isometries is false already at
// n=2, m=3; the column-wise characterization is what holds.
const KNOWN_FALSE_CHECK: &str = "equality only for isometric images";

#[test]
fn acceptance_criteria() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = Config { jobs, ..Config::default() };
    // written past the test harness capture so the lines land in the log
    let reports = run_all(&cfg, |rep| {
        let _ = writeln!(std::io::stdout(), "{}", rep.line());
    });
    assert_eq!(reports.len(), 10);
    for rep in &reports {
        if rep.id == 5 {
            let failed: Vec<&str> = rep.failed_checks().map(|c| c.name.as_str()).collect();
            assert_eq!(failed, vec![KNOWN_FALSE_CHECK], "{}", rep.line());
            let fail = rep.failed_checks().next().unwrap();
            assert!(fail.detail.contains("n=2 m=3 cells [2, 6] along axis 0"), "{}", fail.detail);
        } else {
            assert!(rep.passed(), "{}", rep.line());
        }
    }
}
