#![no_main]
use libfuzzer_sys::fuzz_target;

// One argument per line; the bound is pinned low so each run stays cheap.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let mut args: Vec<&str> = s.lines().collect();
        if args.first() == Some(&"oracle") {
            return;
        }
        args.extend(["--bound", "50"]);
        let out = reidemeister::cli::run(args);
        assert!(matches!(out.code, 0 | 1 | 2));
    }
});
