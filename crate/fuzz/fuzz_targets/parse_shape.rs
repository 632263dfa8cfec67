#![no_main]

use libfuzzer_sys::fuzz_target;
use toriclat::tessellation::check_fundamental_region;
use toriclat::{codewords, Polyomino, TorusLattice};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(shape) = Polyomino::parse(text) else { return };
    let reparsed = Polyomino::parse(&shape.to_shape_file()).expect("serialized shape reparses");
    assert_eq!(reparsed, shape);
    let q = shape.area() as u32;
    if q % 2 == 1 && (5..=101).contains(&q) {
        let l = TorusLattice::new(q).unwrap();
        let _ = check_fundamental_region(&codewords(l), &shape);
    }
});
