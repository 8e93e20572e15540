#![no_main]

use libfuzzer_sys::fuzz_target;
use thurwitz::symgroup::Permutation;

fuzz_target!(|input: (u8, &str)| {
    let (d, s) = input;
    let d = d as usize % 16;
    if let Ok((perm, cycles)) = Permutation::parse_cycles(s, d) {
        assert_eq!(perm.degree(), d);
        assert_eq!(Permutation::from_cycles(d, &cycles).unwrap(), perm);
        assert_eq!(perm.compose(&perm.inverse()), Permutation::identity(d));
    }
});
