#![no_main]
use fredkin1d::SpinChain;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Some((&s, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(c) = SpinChain::parse(text, s % 10) {
        // Printing and re-parsing must round-trip.
        let again = SpinChain::parse(&c.to_string(), s % 10).expect("display output parses");
        assert_eq!(again, c);
    }
    let _ = text.parse::<SpinChain>();
    let _ = SpinChain::from_label(rest, s % 10);
});
