//! JSON morphism documents.
//!
//! Either per-sort value maps (`target value -> source value` for each source
//! sort) or explicit per-arity tables:
//!
//! ```json
//! {
//!   "sortMap": {"a": "x"},
//!   "source": [{"name": "a", "values": ["f", "t"]}],
//!   "target": [{"name": "x", "values": ["0", "1"]}],
//!   "valueMaps": {"a": {"0": "f", "1": "t"}}
//! }
//! ```
//!
//! Tables are `{"arity": [...source sorts], "entries": [[[target values over
//! f(arity)], [source values over arity]], ...]}`, values in the listed sort
//! order for the source side and in target sort order for the target side.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::network::{build_domain, json_error, SortDoc};
use crate::error::{Error, Result};
use crate::flow::{DomainMorphism, Family};
use crate::relation::{Arity, SortedDomain};

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    #[serde(rename = "sortMap")]
    sort_map: BTreeMap<String, String>,
    source: Vec<SortDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tables: Option<Vec<TableDoc>>,
    target: Vec<SortDoc>,
    #[serde(rename = "valueMaps", skip_serializing_if = "Option::is_none", default)]
    value_maps: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    arity: Vec<String>,
    entries: Vec<(Vec<String>, Vec<String>)>,
}

fn sorts_out(dom: &SortedDomain) -> Vec<SortDoc> {
    (0..dom.num_sorts())
        .map(|a| {
            let p = dom.values(a);
            SortDoc {
                name: dom.sort_name(a).to_string(),
                order: p
                    .strict_pairs()
                    .into_iter()
                    .map(|(lo, hi)| (p.name(lo).to_string(), p.name(hi).to_string()))
                    .collect(),
                values: p.names().to_vec(),
            }
        })
        .collect()
}

pub fn parse_morphism(text: &str) -> Result<DomainMorphism> {
    let doc: MorphismDoc = serde_json::from_str(text).map_err(json_error)?;
    let source = build_domain(&doc.source, "sorts").map_err(|e| relocate(e, "source"))?;
    let target = build_domain(&doc.target, "sorts").map_err(|e| relocate(e, "target"))?;

    let mut sort_map = vec![usize::MAX; source.num_sorts()];
    for (a, b) in &doc.sort_map {
        let ai = source
            .sort_index(a)
            .map_err(|e| Error::parse("sortMap", e.to_string()))?;
        sort_map[ai] = target
            .sort_index(b)
            .map_err(|e| Error::parse(format!("sortMap.{a}"), e.to_string()))?;
    }
    if let Some(a) = sort_map.iter().position(|&b| b == usize::MAX) {
        return Err(Error::parse(
            "sortMap",
            format!("no image for source sort {}", source.sort_name(a)),
        ));
    }

    let family = match (doc.value_maps, doc.tables) {
        (Some(maps), None) => {
            let mut out = vec![Vec::new(); source.num_sorts()];
            for (a, entries) in &maps {
                let here = format!("valueMaps.{a}");
                let ai = source
                    .sort_index(a)
                    .map_err(|e| Error::parse(&here, e.to_string()))?;
                let b = sort_map[ai];
                let mut m = vec![usize::MAX; target.values(b).len()];
                for (from, to) in entries {
                    let fi = target
                        .value_index(b, from)
                        .map_err(|e| Error::parse(&here, e.to_string()))?;
                    m[fi] = source
                        .value_index(ai, to)
                        .map_err(|e| Error::parse(&here, e.to_string()))?;
                }
                if m.contains(&usize::MAX) {
                    return Err(Error::parse(here, "value map is not total"));
                }
                out[ai] = m;
            }
            if let Some(a) = out
                .iter()
                .enumerate()
                .position(|(a, m)| m.len() != target.values(sort_map[a]).len())
            {
                return Err(Error::parse(
                    "valueMaps",
                    format!("missing value map for sort {}", source.sort_name(a)),
                ));
            }
            Family::Componentwise(out)
        }
        (None, Some(tables)) => {
            let mut out = BTreeMap::new();
            for (ti, t) in tables.iter().enumerate() {
                let here = format!("tables[{ti}]");
                let u = source
                    .arity_of(&t.arity)
                    .map_err(|e| Error::parse(&here, e.to_string()))?;
                if u.len() != t.arity.len() {
                    return Err(Error::parse(here, "repeated sort in arity"));
                }
                let listed: Vec<usize> = t
                    .arity
                    .iter()
                    .map(|s| source.sort_index(s).expect("checked above"))
                    .collect();
                let fu = image_arity(&sort_map, &u);
                let mut table: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                for (ei, (ys, xs)) in t.entries.iter().enumerate() {
                    let at = format!("{here}.entries[{ei}]");
                    if ys.len() != fu.len() || xs.len() != u.len() {
                        return Err(Error::parse(at, "entry does not match the arity"));
                    }
                    let y = fu
                        .sorts()
                        .iter()
                        .zip(ys)
                        .map(|(&b, v)| target.value_index(b, v))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| Error::parse(&at, e.to_string()))?;
                    let mut x = vec![0; u.len()];
                    for (&a, v) in listed.iter().zip(xs) {
                        let pos = u.sorts().binary_search(&a).expect("listed sort in arity");
                        x[pos] = source
                            .value_index(a, v)
                            .map_err(|e| Error::parse(&at, e.to_string()))?;
                    }
                    if table.insert(y, x).is_some() {
                        return Err(Error::parse(at, "duplicate entry"));
                    }
                }
                out.insert(u, table);
            }
            Family::Explicit(out)
        }
        _ => {
            return Err(Error::parse(
                "document",
                "exactly one of `valueMaps` or `tables` is required",
            ))
        }
    };
    DomainMorphism::new(source, target, sort_map, family)
}

fn relocate(e: Error, prefix: &str) -> Error {
    match e {
        Error::Parse { location, message } => Error::parse(format!("{prefix}.{location}"), message),
        other => other,
    }
}

fn image_arity(sort_map: &[usize], u: &Arity) -> Arity {
    Arity::new(u.sorts().iter().map(|&a| sort_map[a]))
}

/// Canonical JSON for a morphism. Projection families have no table form
/// here and are rejected.
pub fn emit_morphism(m: &DomainMorphism) -> Result<String> {
    let source = m.source();
    let target = m.target();
    let sort_map = (0..source.num_sorts())
        .map(|a| {
            (
                source.sort_name(a).to_string(),
                target.sort_name(m.sort_map()[a]).to_string(),
            )
        })
        .collect();
    let (value_maps, tables) = match m.family() {
        Family::Componentwise(maps) => {
            let vm = maps
                .iter()
                .enumerate()
                .map(|(a, map)| {
                    let b = m.sort_map()[a];
                    let entries = map
                        .iter()
                        .enumerate()
                        .map(|(from, &to)| {
                            (
                                target.values(b).name(from).to_string(),
                                source.values(a).name(to).to_string(),
                            )
                        })
                        .collect();
                    (source.sort_name(a).to_string(), entries)
                })
                .collect();
            (Some(vm), None)
        }
        Family::Explicit(tabs) => {
            let docs = tabs
                .iter()
                .map(|(u, table)| {
                    let fu = m.image_arity(u);
                    let mut entries: Vec<(&Vec<usize>, &Vec<usize>)> = table.iter().collect();
                    entries.sort();
                    TableDoc {
                        arity: u
                            .sorts()
                            .iter()
                            .map(|&a| source.sort_name(a).to_string())
                            .collect(),
                        entries: entries
                            .into_iter()
                            .map(|(y, x)| {
                                (
                                    fu.sorts()
                                        .iter()
                                        .zip(y)
                                        .map(|(&b, &v)| target.values(b).name(v).to_string())
                                        .collect(),
                                    u.sorts()
                                        .iter()
                                        .zip(x)
                                        .map(|(&a, &v)| source.values(a).name(v).to_string())
                                        .collect(),
                                )
                            })
                            .collect(),
                    }
                })
                .collect();
            (None, Some(docs))
        }
        Family::Projection => {
            return Err(Error::input("projection morphisms have no document form"));
        }
    };
    let doc = MorphismDoc {
        sort_map,
        source: sorts_out(source),
        tables,
        target: sorts_out(target),
        value_maps,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    Ok(text)
}
