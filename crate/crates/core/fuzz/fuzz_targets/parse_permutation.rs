#![no_main]

use libfuzzer_sys::fuzz_target;
use skelsig::group_kernel::Perm;

// first byte is the degree, the rest is cycle notation
fuzz_target!(|data: &[u8]| {
    let Some((&degree, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(p) = Perm::parse(degree as usize, text) {
        assert_eq!(p.degree(), degree as usize);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(Perm::from_cycles(p.degree(), &p.cycles()).ok(), Some(p));
    }
});
