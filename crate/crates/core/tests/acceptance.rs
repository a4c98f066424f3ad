//! End-to-end acceptance run: one line per criterion, failing the test if
//! any criterion does (run with `-- --nocapture` to see the lines live).

use oba::harness::verify;

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for (index, name, outcome) in verify::run_all() {
        match outcome {
            Ok(()) => println!("criterion {index:2} ({name}): pass"),
            Err(reason) => {
                println!("criterion {index:2} ({name}): FAIL - {reason}");
                failed.push(index);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
