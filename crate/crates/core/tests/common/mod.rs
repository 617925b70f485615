#![allow(dead_code)]

use std::path::PathBuf;

use cliffcodes::catalog::{load_bundle, GroupBundle};
use cliffcodes::clifford::{Classification, CliffordCode, CliffordContext};
use cliffcodes::repn::UnitaryRep;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn bundle(name: &str) -> GroupBundle {
    load_bundle(&fixture(name)).unwrap()
}

pub fn context(name: &str) -> CliffordContext {
    let group = bundle(name).default_group().unwrap();
    CliffordContext::new(UnitaryRep::new(group)).unwrap()
}

pub struct Analysed {
    pub ctx: CliffordContext,
    pub codes: Vec<CliffordCode>,
    pub classified: Vec<Classification>,
}

pub fn analysed(name: &str) -> Analysed {
    let ctx = context(name);
    let codes = ctx.enumerate_codes().unwrap();
    let classified = ctx.classify_all(&codes).unwrap();
    Analysed {
        ctx,
        codes,
        classified,
    }
}
