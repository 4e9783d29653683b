//! Rewrites the bundled seed corpus in canonical form.

use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/seed.ontology.json");
    let text = std::fs::read_to_string(&path).expect("read seed corpus");
    let registry = ontology_core::parse_corpus(&text).expect("parse seed corpus");
    std::fs::write(&path, registry.to_json()).expect("write seed corpus");
    println!("{} entries written to {}", registry.len(), path.display());
}
