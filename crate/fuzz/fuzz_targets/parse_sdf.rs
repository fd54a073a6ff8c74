#![no_main]

use libfuzzer_sys::fuzz_target;
use superalg_core::sdf;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = sdf::from_json(text) {
        // Anything accepted must serialize and re-read to the same document.
        let out = sdf::to_json(&a);
        let b = sdf::from_json(&out).expect("serialized SDF parses");
        assert_eq!(sdf::to_json(&b), out);
    }
});
