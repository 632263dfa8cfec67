#![no_main]

use libfuzzer_sys::fuzz_target;
use toriclat::QRange;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(range) = QRange::parse(text) else { return };
    assert_eq!(QRange::parse(&range.to_string()).unwrap(), range);
    for l in range.lattices().take(64) {
        assert!(l.q() % 2 == 1 && l.q() >= 5);
    }
});
