#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = fpvac::export::read_coefficients(data) {
        for row in &rows {
            row.validate().unwrap();
        }
    }
});
