//! CSV renderings of a lattice: generators, successors, and the order matrix.
//!
//! Concepts are labelled `C1..Cn` in lectic order. Multiple names in one
//! cell are separated by single spaces.

use crate::lattice::ConceptLattice;

pub fn concept_label(i: usize) -> String {
    format!("C{}", i + 1)
}

fn write_csv(records: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

/// `concept,tuples,constraints`: object and attribute generators per concept.
pub fn generators_csv(lat: &ConceptLattice) -> String {
    let ctx = lat.context();
    let mut rows = vec![vec![
        "concept".into(),
        "tuples".into(),
        "constraints".into(),
    ]];
    for i in 0..lat.len() {
        let objs: Vec<&str> = lat
            .object_generators(i)
            .into_iter()
            .map(|g| ctx.objects().name(g))
            .collect();
        let attrs: Vec<&str> = lat
            .attribute_generators(i)
            .into_iter()
            .map(|m| ctx.attributes().name(m))
            .collect();
        rows.push(vec![concept_label(i), objs.join(" "), attrs.join(" ")]);
    }
    write_csv(rows)
}

/// `concept,successors`: upper covers per concept.
pub fn successors_csv(lat: &ConceptLattice) -> String {
    let mut rows = vec![vec!["concept".into(), "successors".into()]];
    for i in 0..lat.len() {
        let ups: Vec<String> = lat
            .upper_covers(i)
            .iter()
            .map(|&j| concept_label(j))
            .collect();
        rows.push(vec![concept_label(i), ups.join(" ")]);
    }
    write_csv(rows)
}

/// Row `i`, column `j` is `X` when `C_i <= C_j`.
pub fn order_csv(lat: &ConceptLattice) -> String {
    let n = lat.len();
    let mut header = vec!["concept".to_string()];
    header.extend((0..n).map(concept_label));
    let mut rows = vec![header];
    for i in 0..n {
        let mut row = vec![concept_label(i)];
        row.extend((0..n).map(|j| {
            if lat.leq(i, j) {
                "X".into()
            } else {
                String::new()
            }
        }));
        rows.push(row);
    }
    write_csv(rows)
}
