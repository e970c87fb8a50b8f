#![no_main]

use libfuzzer_sys::fuzz_target;
use skelsig::group_kernel::Catalog;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(catalog) = Catalog::parse(text) {
        for entry in catalog.entries() {
            assert_eq!(entry.group().order(), entry.order());
        }
    }
});
