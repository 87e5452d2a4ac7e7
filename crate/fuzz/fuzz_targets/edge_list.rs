#![no_main]

use libfuzzer_sys::fuzz_target;
use modclust::io::{parse_edge_list, write_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(loaded) = parse_edge_list(text) {
        let g = loaded.graph;
        let again = parse_edge_list(&write_edge_list(&g)).expect("written edge list parses");
        assert_eq!(again.graph.n(), g.n());
        assert_eq!(again.graph.edge_count(), g.edge_count());
        let sum: f64 = g.degrees().iter().sum();
        assert!((sum - 2.0 * g.total_weight()).abs() <= 1e-9 * sum.max(1.0));
    }
});
