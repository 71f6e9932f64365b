#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = fpvac::config::RunConfig::parse(text) {
        let doc = fpvac::config::parse_document(text).expect("a valid run file is a valid document");
        if cfg.vacuum.is_some() {
            let _: fpvac::config::VacuumConfig =
                fpvac::config::resolve_section(&doc, "vacuum", Default::default()).unwrap();
        }
    }
});
