#![no_main]

use libfuzzer_sys::fuzz_target;
use thurwitz::symgroup::parse_partition;

fuzz_target!(|data: &str| {
    if let Ok(parts) = parse_partition(data) {
        assert!(parts.iter().all(|&p| p > 0));
        let text = parts.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_partition(&text).unwrap(), parts);
    }
});
