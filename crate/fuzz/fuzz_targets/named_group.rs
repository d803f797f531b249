#![no_main]

use fibercheck::scenario::parse_named_group;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = parse_named_group(s) {
            g.verify_axioms().expect("named groups are groups");
        }
    }
});
