#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use miniversal::field::Field;
use miniversal::poly::{parse_poly, variables, Variables};

fn vars() -> &'static Variables {
    static VARS: OnceLock<Variables> = OnceLock::new();
    VARS.get_or_init(|| variables(&["x", "y", "z"]).unwrap())
}

// First byte picks the field so modular reduction paths get exercised too;
// the rest is the polynomial text.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let field = match sel {
        b'1' => Field::prime(2).unwrap(),
        b'2' => Field::prime(7).unwrap(),
        _ => Field::Q,
    };
    if let Ok(p) = parse_poly(text, vars(), field) {
        let shown = p.to_string();
        let back = parse_poly(&shown, vars(), field).expect("display output parses");
        assert_eq!(back, p, "display round-trip changed the polynomial");
        assert_eq!(back.to_string(), shown, "display is not a fixed point");
    }
});
