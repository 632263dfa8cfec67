#![no_main]

use libfuzzer_sys::fuzz_target;
use toriclat::interleaver::PermutationFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = PermutationFile::parse(text) else { return };
    let edges = file.stream_to_edge();
    assert_eq!(edges.len(), file.map.len());
    let _ = file.check_blocks();
});
