//! Inputs shared by the benchmarks.

use std::sync::Arc;

use burnside_core::report::parse_descriptor;
use burnside_core::Group;

/// Groups large enough to show scaling, smallest first.
pub const BENCH_GROUPS: &[&str] = &["D8", "C2xC2xC2", "D16", "SD16", "D32", "SD32", "Q32"];

pub fn bench_groups() -> Vec<(&'static str, Arc<Group>)> {
    BENCH_GROUPS.iter().map(|d| (*d, Arc::new(parse_descriptor(d).expect("bench descriptor")))).collect()
}
