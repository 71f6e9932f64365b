#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = fpvac::config::parse_scenario(text) {
        let margin = fpvac::feasibility::thermalization_margin(&s).unwrap();
        assert!(!margin.is_nan());
    }
});
