#![no_main]

use libfuzzer_sys::fuzz_target;
use thurwitz::symgroup::{parse_end_conditions, parse_start_conditions};

fuzz_target!(|data: &str| {
    if let Ok(start) = parse_start_conditions(data) {
        let text = start.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        assert_eq!(parse_start_conditions(&text).unwrap(), start);
    }
    if let Ok(end) = parse_end_conditions(data) {
        let text = end.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        assert_eq!(parse_end_conditions(&text).unwrap(), end);
    }
});
