#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use skelsig::atlas::KAtlas;
use skelsig::group_kernel::Catalog;

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::load_default().expect("built-in catalog"))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok(atlas) = KAtlas::from_json(text, catalog()) {
        assert!(atlas.violations().is_empty());
        let again = KAtlas::from_json(&atlas.to_json(), catalog()).expect("re-emitted atlas loads");
        assert_eq!(again, atlas);
    }
});
