#![no_main]

use fibercheck::group::FiniteGroup;
use libfuzzer_sys::fuzz_target;

// First byte is the order (at most 16), then the table row by row, one byte per entry.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 17;
    if rest.len() < n * n {
        return;
    }
    let table = (0..n).map(|i| rest[i * n..(i + 1) * n].iter().map(|&b| b as usize).collect()).collect();
    if let Ok(g) = FiniteGroup::from_table(table, None) {
        assert_eq!(g.order(), n);
        g.verify_axioms().expect("accepted tables satisfy the axioms");
    }
});
