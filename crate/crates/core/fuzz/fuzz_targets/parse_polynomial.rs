#![no_main]

use chiwb::{Error, Field, Fp, Rational, Ring};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = chiwb::parse::parse_expr(text);
    let qq = Ring::simple(Field::Rationals, &["x", "y", "z"]).unwrap();
    let _ = chiwb::parse::parse_polynomial::<Rational>(text, &qq);
    let ff = Ring::simple(Field::Prime(32003), &["x", "y", "z"]).unwrap();
    if let Ok(f) = chiwb::parse::parse_polynomial::<Fp>(text, &ff) {
        // printing must give text the parser accepts again, unless the
        // expansion is past the parser's length limit
        match chiwb::parse::parse_polynomial::<Fp>(&f.to_string(), &ff) {
            Ok(back) => assert_eq!(back, f),
            Err(Error::Syntax { msg, .. }) if msg == "expression too long" => {}
            Err(e) => panic!("{f}: {e}"),
        }
    }
});
