//! Fuzzes the plumbing document parser and, when a document parses, runs
//! the calculus moves on it to exercise blow-downs on arbitrary graphs.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((mut graph, mut sys, _)) = mfplumb::format::parse_plumbing(text) else {
        return;
    };
    let _ = mfplumb::calculus::normalize(&mut graph, sys.as_mut());
});
