#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use miniversal::artin::QuotientAlgebra;
use miniversal::deform::parse_assignments;
use miniversal::field::Field;
use miniversal::poly::{parse_poly, variables};

fn base() -> &'static QuotientAlgebra {
    static BASE: OnceLock<QuotientAlgebra> = OnceLock::new();
    BASE.get_or_init(|| {
        let vs = variables(&["t"]).unwrap();
        let gen = parse_poly("t^3", &vs, Field::Q).unwrap();
        QuotientAlgebra::new(vs, Field::Q, &[gen]).unwrap()
    })
}

fuzz_target!(|data: &str| {
    let specs: Vec<String> = data.split(',').map(str::to_owned).collect();
    let params = ["t1".to_string(), "t2".to_string()];
    if let Ok(coords) = parse_assignments(&specs, &params, base()) {
        assert_eq!(coords.len(), params.len());
        for v in &coords {
            assert_eq!(v.len(), base().dim(), "coordinates match the base dimension");
        }
    }
});
