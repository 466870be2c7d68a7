#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(session) = chiwb::parse::parse_session(text) {
        let printed = session.to_string();
        let again = chiwb::parse::parse_session(&printed).unwrap();
        assert!(session.commands().eq(again.commands()), "{printed}");
    }
});
