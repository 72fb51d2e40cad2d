#![no_main]
use libfuzzer_sys::fuzz_target;
use reidemeister::groups::AutomorphismSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(spec) = AutomorphismSpec::from_json_str(s) {
            let _ = spec.verify_automorphism();
        }
    }
});
