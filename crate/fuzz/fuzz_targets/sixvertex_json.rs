#![no_main]
use libfuzzer_sys::fuzz_target;
use sixvertex::SixVertexConfig;

fuzz_target!(|data: &[u8]| {
    if data.len() > 16 * 1024 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = SixVertexConfig::from_json(s) {
            let _ = sixvertex::height_field(&c);
        }
    }
});
