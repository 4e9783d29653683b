//! Regenerates `tests/fixtures/synthetic9`: nine trace CSVs and a corpus.

#[path = "../tests/common/synthetic.rs"]
mod synthetic;

use std::fs;
use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synthetic9");
    let traces_dir = dir.join("traces");
    let _ = fs::remove_dir_all(&traces_dir);
    fs::create_dir_all(&traces_dir).expect("create fixture dir");
    for (id, csv) in synthetic::traces() {
        fs::write(traces_dir.join(ontology_core::trace_file_name(&id)), csv).expect("write trace");
    }
    fs::write(dir.join("corpus.ontology.json"), synthetic::corpus()).expect("write corpus");
    println!("fixture written to {}", dir.display());
}
