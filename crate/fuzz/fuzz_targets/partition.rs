#![no_main]

use libfuzzer_sys::fuzz_target;
use modclust::io::{parse_partition, write_partition};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let n = usize::from(n);
    if let Ok(c) = parse_partition(text, n) {
        assert_eq!(c.n(), n);
        let again = parse_partition(&write_partition(&c), n).expect("written partition parses");
        assert_eq!(again, c);
    }
});
