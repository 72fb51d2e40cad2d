#![no_main]
use libfuzzer_sys::fuzz_target;
use reidemeister::exactlin::{parse_matrix, parse_matrix_text};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix_text(s) {
            let again = parse_matrix_text(&m.to_string()).expect("display output reparses");
            assert_eq!(m, again);
        }
        let _ = parse_matrix(s);
    }
});
