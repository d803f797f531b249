#![no_main]

use fibercheck::group::{parse_cycles, Perm};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_cycles(s);
    if let Ok(p) = Perm::parse(s, None) {
        // printing and reparsing gives the same permutation
        let again = Perm::parse(&p.to_string(), Some(p.degree())).expect("printed form parses");
        assert_eq!(again, p);
    }
});
