//! Fuzzes the resolution document parser and, when a document parses,
//! drives the downstream pipeline (solve, construct) to shake out panics
//! and unchecked arithmetic on hostile graphs.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((graph, pair)) = mfplumb::format::parse_resolution(text) else {
        return;
    };
    let Ok(solved) = mfplumb::resolution::solve_multiplicities(&graph, &pair) else {
        return;
    };
    let _ = mfplumb::construct::build_plumbing(&graph, &solved);
});
