//! Recomputes the published bouquet, range and c1 tables and prints one
//! line per check.

use sascone::emit::{emit, Format};
use sascone::replay::replay_tables;

fn main() {
    let report = replay_tables();
    print!("{}", emit(&report, Format::Text));
    if !report.all_passed() {
        eprint!("{}", report.diff());
        std::process::exit(4);
    }
}
