#![no_main]

use libfuzzer_sys::fuzz_target;
use thurwitz::exactmath::MultiPoly;

fuzz_target!(|data: &str| {
    if let Ok(p) = MultiPoly::parse_json(data) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(MultiPoly::parse_json(&text).unwrap(), p);
    }
});
