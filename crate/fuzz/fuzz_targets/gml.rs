#![no_main]

use libfuzzer_sys::fuzz_target;
use modclust::io::parse_gml;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(loaded) = parse_gml(text) {
        let g = loaded.graph;
        for (u, v, w) in g.edges() {
            assert!(u < g.n() && v < g.n());
            assert!(w > 0.0 && w.is_finite());
        }
    }
});
