#![no_main]

use libfuzzer_sys::fuzz_target;
use skelsig::signatures::Signature;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sig) = text.parse::<Signature>() {
        let again: Signature = sig.to_string().parse().expect("display form parses");
        assert_eq!(again, sig);
    }
});
