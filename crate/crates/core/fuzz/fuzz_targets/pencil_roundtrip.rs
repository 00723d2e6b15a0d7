#![no_main]

use dissipative_pencil::io::{format_pencil, parse_pencil};
use libfuzzer_sys::fuzz_target;

// Anything that parses must print and reparse to the same bits.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_pencil(text) else { return };
    let printed = format_pencil(&p);
    let q = parse_pencil(&printed).expect("printed pencil reparses");
    let bits = |m: &dissipative_pencil::CMatrix| -> Vec<(u64, u64)> {
        m.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
    };
    assert_eq!(bits(p.e()), bits(q.e()));
    assert_eq!(bits(p.a()), bits(q.a()));
    assert_eq!(printed, format_pencil(&q));
});
