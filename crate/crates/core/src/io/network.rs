//! JSON network documents.
//!
//! ```json
//! {
//!   "constraints": [
//!     {"name": "e1", "scheme": ["a1"], "tuples": [["f"]]}
//!   ],
//!   "preorder": [["e2", "e1"]],
//!   "sorts": [
//!     {"name": "a1", "order": [["f", "t"]], "values": ["f", "t"]}
//!   ]
//! }
//! ```
//!
//! `preorder` pairs read `lower <= upper`; `order` pairs likewise on values.
//! Both are optional. A scheme may list its sorts in any order, tuples follow
//! that order. Emission is canonical: keys sorted, schemes and tuples in the
//! domain's sort order, tuples lexicographic, and orders written as the
//! non-reflexive pairs of their closure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{DistributedRelation, Signature};
use crate::order::Poset;
use crate::relation::{Relation, SortedDomain};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Close every relation downward instead of reporting it.
    pub complete_down: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    constraints: Vec<ConstraintDoc>,
    #[serde(default)]
    preorder: Vec<(String, String)>,
    sorts: Vec<SortDoc>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SortDoc {
    pub(crate) name: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub(crate) order: Vec<(String, String)>,
    pub(crate) values: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintDoc {
    name: String,
    scheme: Vec<String>,
    tuples: Vec<Vec<String>>,
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::parse(
        format!("line {}, column {}", e.line(), e.column()),
        e.to_string(),
    )
}

pub(crate) fn build_domain(sorts: &[SortDoc], path: &str) -> Result<SortedDomain> {
    let mut entries = Vec::with_capacity(sorts.len());
    for (i, s) in sorts.iter().enumerate() {
        let values = Poset::from_named_pairs(s.values.iter().cloned(), &s.order)
            .map_err(|e| Error::parse(format!("{path}[{i}]"), e.to_string()))?;
        entries.push((s.name.clone(), values));
    }
    SortedDomain::new(entries).map_err(|e| Error::parse(path, e.to_string()))
}

/// Reads a document into a distributed relation without validating it.
pub fn parse_network(text: &str, opts: ParseOptions) -> Result<DistributedRelation> {
    let doc: NetworkDoc = serde_json::from_str(text).map_err(json_error)?;
    let dom = build_domain(&doc.sorts, "sorts")?;

    let mut names = Vec::with_capacity(doc.constraints.len());
    let mut schemes = Vec::with_capacity(doc.constraints.len());
    let mut relations = Vec::with_capacity(doc.constraints.len());
    for (ci, c) in doc.constraints.iter().enumerate() {
        let here = format!("constraints[{ci}]");
        let listed = c
            .scheme
            .iter()
            .map(|s| dom.sort_index(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::parse(format!("{here}.scheme"), e.to_string()))?;
        let arity = dom
            .arity_of(&c.scheme)
            .map_err(|e| Error::parse(format!("{here}.scheme"), e.to_string()))?;
        if arity.len() != listed.len() {
            return Err(Error::parse(
                format!("{here}.scheme"),
                "repeated sort in scheme",
            ));
        }
        // Where each listed sort lands in canonical order.
        let slot: Vec<usize> = listed
            .iter()
            .map(|s| {
                arity
                    .sorts()
                    .binary_search(s)
                    .expect("listed sort is in arity")
            })
            .collect();
        let mut tuples = Vec::with_capacity(c.tuples.len());
        for (ti, t) in c.tuples.iter().enumerate() {
            if t.len() != listed.len() {
                return Err(Error::parse(
                    format!("{here}.tuples[{ti}]"),
                    format!(
                        "tuple has {} values but scheme of {} has {} sorts",
                        t.len(),
                        c.name,
                        listed.len()
                    ),
                ));
            }
            let mut values = vec![0; t.len()];
            for ((&sort, &pos), v) in listed.iter().zip(&slot).zip(t) {
                values[pos] = dom
                    .value_index(sort, v)
                    .map_err(|e| Error::parse(format!("{here}.tuples[{ti}]"), e.to_string()))?;
            }
            tuples.push(values);
        }
        let mut rel = Relation::new(arity.clone(), tuples)?;
        if opts.complete_down {
            rel = dom.close_below(&rel);
        }
        names.push(c.name.clone());
        schemes.push(arity);
        relations.push(rel);
    }
    let constraints = Poset::from_named_pairs(names, &doc.preorder)
        .map_err(|e| Error::parse("preorder", e.to_string()))?;
    DistributedRelation::new(dom, Signature::new(constraints, schemes)?, relations)
}

/// Parses and validates; violations come back as [`Error::Invalid`].
pub fn load_network(text: &str, opts: ParseOptions) -> Result<DistributedRelation> {
    let net = parse_network(text, opts)?;
    let report = net.validate();
    if report.is_empty() {
        Ok(net)
    } else {
        Err(Error::Invalid(
            report.iter().map(ToString::to_string).collect(),
        ))
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn quoted_list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<String> = items.into_iter().map(quote).collect();
    format!("[{}]", parts.join(", "))
}

fn pair_list(p: &Poset) -> String {
    let parts: Vec<String> = p
        .strict_pairs()
        .into_iter()
        .map(|(lo, hi)| quoted_list([p.name(lo), p.name(hi)]))
        .collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn emit_sorts(dom: &SortedDomain, indent: &str) -> String {
    let lines: Vec<String> = (0..dom.num_sorts())
        .map(|a| {
            let values = dom.values(a);
            let order = if values.is_discrete() {
                String::new()
            } else {
                format!(", \"order\": {}", pair_list(values))
            };
            format!(
                "{indent}{{\"name\": {}{order}, \"values\": {}}}",
                quote(dom.sort_name(a)),
                quoted_list(values.names().iter().map(String::as_str))
            )
        })
        .collect();
    lines.join(",\n")
}

/// Canonical JSON text for a distributed relation.
pub fn emit_network(r: &DistributedRelation) -> String {
    let dom = r.domain();
    let sig = r.signature();
    let mut out = String::from("{\n  \"constraints\": [");
    let constraints: Vec<String> = (0..sig.len())
        .map(|e| {
            let scheme = sig.scheme(e);
            let tuples: Vec<String> = r
                .relation(e)
                .iter()
                .map(|t| {
                    quoted_list(
                        scheme
                            .sorts()
                            .iter()
                            .zip(t)
                            .map(|(&a, &v)| dom.values(a).name(v)),
                    )
                })
                .collect();
            format!(
                "    {{\"name\": {}, \"scheme\": {}, \"tuples\": [{}]}}",
                quote(sig.name(e)),
                quoted_list(scheme.sorts().iter().map(|&a| dom.sort_name(a))),
                tuples.join(", ")
            )
        })
        .collect();
    if !constraints.is_empty() {
        out.push('\n');
        out.push_str(&constraints.join(",\n"));
        out.push_str("\n  ");
    }
    out.push_str("],\n");
    if !sig.is_discrete() {
        out.push_str(&format!(
            "  \"preorder\": {},\n",
            pair_list(sig.constraints())
        ));
    }
    out.push_str("  \"sorts\": [");
    if dom.num_sorts() > 0 {
        out.push('\n');
        out.push_str(&emit_sorts(dom, "    "));
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}
