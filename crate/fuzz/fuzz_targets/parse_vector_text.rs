#![no_main]
use libfuzzer_sys::fuzz_target;
use reidemeister::exactlin::parse_vector_text;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_vector_text(s);
    }
});
