#![no_main]

use libfuzzer_sys::fuzz_target;
use thurwitz::chambers::{classify_point, Chamber};

fuzz_target!(|data: &str| {
    if let Ok(c) = Chamber::parse_sample(data) {
        assert_eq!(c.sample_mu.iter().sum::<i64>(), c.sample_nu.iter().sum::<i64>());
        let again = classify_point(&c.sample_mu, &c.sample_nu).unwrap();
        assert!(again.same_chamber(&c));
    }
});
