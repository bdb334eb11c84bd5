#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use lensrack::{parse_diagram, parse_rack, Convention, LensDiagram, RackTable};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn sorted_files(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(ext))
        .collect();
    v.sort();
    v
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn rack(name: &str) -> RackTable {
    let text = fs::read_to_string(fixtures().join("racks").join(format!("{name}.rack"))).unwrap();
    parse_rack(&text, Convention::RowActedOn).unwrap()
}

pub fn diagram(rel: &str) -> LensDiagram {
    let text = fs::read_to_string(fixtures().join(rel)).unwrap();
    parse_diagram(&text).unwrap()
}

/// All racks in `fixtures/racks`, by name.
pub fn all_racks() -> Vec<(String, RackTable)> {
    sorted_files(&fixtures().join("racks"), "rack")
        .into_iter()
        .map(|p| {
            let t = parse_rack(&fs::read_to_string(&p).unwrap(), Convention::RowActedOn).unwrap();
            (stem(&p), t)
        })
        .collect()
}

/// The diagram corpus in `fixtures/diagrams`, by name.
pub fn corpus() -> Vec<(String, LensDiagram)> {
    sorted_files(&fixtures().join("diagrams"), "diag")
        .into_iter()
        .map(|p| (stem(&p), parse_diagram(&fs::read_to_string(&p).unwrap()).unwrap()))
        .collect()
}

/// Every `n x n` table with entries in `1..=n` that validates.
pub fn naive_rack_count(n: usize) -> usize {
    let cells = n * n;
    let mut m = vec![1i64; cells];
    let mut count = 0;
    loop {
        let rows: Vec<Vec<i64>> = m.chunks(n).map(|r| r.to_vec()).collect();
        if lensrack::validate_rack(&rows).is_ok() {
            count += 1;
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if m[i] < n as i64 {
                m[i] += 1;
                break;
            }
            m[i] = 1;
        }
    }
}

/// Writes `text` under the test scratch directory and returns its path.
pub fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("lensrack-tests");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}
