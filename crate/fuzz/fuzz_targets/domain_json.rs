#![no_main]
use libfuzzer_sys::fuzz_target;
use lozengemod::TriDomain;

fuzz_target!(|data: &[u8]| {
    if data.len() > 16 * 1024 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = TriDomain::from_json(s) {
            // Cheap structural checks only; counting tilings is exponential.
            if d.len() <= 64 {
                let _ = lozengemod::is_tileable(&d);
                let _ = lozengemod::strong_boundary_ok(&d);
            }
        }
    }
});
