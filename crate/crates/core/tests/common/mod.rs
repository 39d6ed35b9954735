#![allow(dead_code)]

use std::path::PathBuf;

use milnorkit_core::diagram::parse_pd;
use milnorkit_core::LinkDiagram;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(name: &str) -> LinkDiagram {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
    parse_pd(&text).unwrap()
}

pub const CORPUS: [&str; 6] = ["hopf", "hopf4", "borromean", "whitehead", "unlink2", "unlink3"];
