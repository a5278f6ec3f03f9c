#![no_main]
use libfuzzer_sys::fuzz_target;
use lozengemod::{LozengeTiling, TriDomain};

fuzz_target!(|data: &[u8]| {
    if data.len() > 1024 {
        return;
    }
    let Some((&sel, label)) = data.split_first() else { return };
    let name = ["hex1", "hex3", "hex6"][usize::from(sel % 3)];
    let d = TriDomain::named(name).expect("built-in domain");
    let s = 1 + (sel >> 2) % 2;
    let _ = LozengeTiling::from_label(&d, s, label);
});
