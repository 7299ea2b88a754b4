#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use conlat::io::{load_network, parse_context, ParseOptions};
use conlat::{
    Arity, Cap, DistributedRelation, FormalContext, Poset, Relation, Signature, SortedDomain,
};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn network_fixture(name: &str) -> DistributedRelation {
    load_network(&fixture(name), ParseOptions::default()).unwrap()
}

pub fn table1() -> DistributedRelation {
    network_fixture("table1.json")
}

pub fn table3() -> DistributedRelation {
    network_fixture("table3.json")
}

pub fn table2_verbatim() -> FormalContext {
    parse_context(&fixture("table2.cxt")).unwrap()
}

/// Rows of a CSV fixture, header dropped.
pub fn csv_rows(name: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(fixture_path(name)).unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

pub fn words(cell: &str) -> BTreeSet<String> {
    cell.split_whitespace().map(str::to_string).collect()
}

pub fn cap() -> Cap {
    Cap::default()
}

// ---------------------------------------------------------------------------
// Brute-force oracles. These deliberately avoid the library's own projection,
// join and closure code and work straight from value indices.

/// Every full tuple, last sort varying fastest.
pub fn brute_full_tuples(dom: &SortedDomain) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for a in 0..dom.num_sorts() {
        let n = dom.values(a).len();
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn brute_satisfies(r: &DistributedRelation, x: &[usize], e: usize) -> bool {
    let proj: Vec<usize> = r
        .signature()
        .scheme(e)
        .sorts()
        .iter()
        .map(|&a| x[a])
        .collect();
    r.relation(e).iter().any(|t| *t == proj)
}

pub fn brute_solutions(r: &DistributedRelation) -> BTreeSet<Vec<usize>> {
    brute_full_tuples(r.domain())
        .into_iter()
        .filter(|x| (0..r.signature().len()).all(|e| brute_satisfies(r, x, e)))
        .collect()
}

/// Per constraint, the projections of the brute-force solutions.
pub fn brute_interior(r: &DistributedRelation) -> Vec<BTreeSet<Vec<usize>>> {
    let sols = brute_solutions(r);
    (0..r.signature().len())
        .map(|e| {
            let scheme = r.signature().scheme(e).sorts().to_vec();
            sols.iter()
                .map(|x| scheme.iter().map(|&a| x[a]).collect())
                .collect()
        })
        .collect()
}

/// All concepts of a context by closing every attribute subset.
pub fn brute_concepts(ctx: &FormalContext) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let ng = ctx.num_objects();
    let nm = ctx.num_attributes();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << nm) {
        let extent: Vec<usize> = (0..ng)
            .filter(|&g| (0..nm).all(|m| mask & (1 << m) == 0 || ctx.has(g, m)))
            .collect();
        let intent: Vec<usize> = (0..nm)
            .filter(|&m| extent.iter().all(|&g| ctx.has(g, m)))
            .collect();
        out.insert((extent, intent));
    }
    out
}

pub fn bits(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(members);
    s
}

// ---------------------------------------------------------------------------
// Random inputs.

pub const MAX_SORTS: usize = 4;
pub const MAX_VALUES: usize = 3;
pub const MAX_CONSTRAINTS: usize = 5;
const MAX_POWER: usize = 27;

/// Raw material for a random network; see [`NetSpec::network`].
#[derive(Debug, Clone)]
pub struct NetSpec {
    /// Value count per sort, and whether the values form a chain.
    pub sorts: Vec<(usize, bool)>,
    /// Scheme bit mask (reduced to a nonempty subset) and tuple membership bits.
    pub constraints: Vec<(u32, Vec<bool>)>,
    /// Replace relations by the interior before choosing a preorder.
    pub tighten: bool,
    /// Which holding containment candidates become preorder pairs.
    pub preorder_bits: Vec<bool>,
}

pub fn domain_of(sorts: &[(usize, bool)]) -> SortedDomain {
    SortedDomain::new(sorts.iter().enumerate().map(|(a, &(n, chain))| {
        let names: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let pairs: Vec<(usize, usize)> = if chain {
            (1..n).map(|v| (v - 1, v)).collect()
        } else {
            vec![]
        };
        (
            format!("a{}", a + 1),
            Poset::from_pairs(names, &pairs).unwrap(),
        )
    }))
    .unwrap()
}

impl NetSpec {
    /// A network of constraints: discrete signature, relations closed below.
    pub fn network(&self) -> DistributedRelation {
        let dom = domain_of(&self.sorts);
        let n = dom.num_sorts();
        let mut schemes = Vec::new();
        let mut relations = Vec::new();
        for (mask, member) in &self.constraints {
            let mask = (*mask as usize % ((1 << n) - 1)) + 1;
            let scheme = Arity::new((0..n).filter(|a| mask & (1 << a) != 0));
            let tuples = dom
                .power_iter(&scheme)
                .zip(member)
                .filter(|(_, &keep)| keep)
                .map(|(t, _)| t);
            let rel = Relation::new(scheme.clone(), tuples).unwrap();
            relations.push(dom.close_below(&rel));
            schemes.push(scheme);
        }
        let names: Vec<String> = (0..schemes.len()).map(|e| format!("e{}", e + 1)).collect();
        let sig = Signature::new(Poset::discrete(names).unwrap(), schemes).unwrap();
        let r = DistributedRelation::new(dom, sig, relations).unwrap();
        assert!(r.validate().is_empty(), "{:?}", r.validate());
        r
    }

    /// A distributed relation whose preorder is a random set of the
    /// projective containments that hold.
    pub fn distributed(&self) -> DistributedRelation {
        let mut r = self.network();
        if self.tighten {
            r = conlat::interior(&r, cap()).unwrap();
        }
        let pairs: Vec<(usize, usize)> = r
            .containment_candidates()
            .into_iter()
            .filter(|c| c.holds)
            .zip(self.preorder_bits.iter().cycle())
            .filter(|(_, &keep)| keep)
            .map(|(c, _)| (c.lower, c.upper))
            .collect();
        let sig = r.signature();
        let names = sig.constraints().names().to_vec();
        let sig = Signature::new(
            Poset::from_pairs(names, &pairs).unwrap(),
            sig.schemes().to_vec(),
        )
        .unwrap();
        let out =
            DistributedRelation::new(r.domain().clone(), sig, r.relations().to_vec()).unwrap();
        assert!(out.validate().is_empty(), "{:?}", out.validate());
        out
    }
}

pub fn net_spec() -> impl Strategy<Value = NetSpec> {
    (
        prop::collection::vec((1..=MAX_VALUES, prop::bool::weighted(0.3)), 1..=MAX_SORTS),
        prop::collection::vec(
            (
                any::<u32>(),
                prop::collection::vec(prop::bool::weighted(0.4), MAX_POWER),
            ),
            1..=MAX_CONSTRAINTS,
        ),
        any::<bool>(),
        prop::collection::vec(any::<bool>(), 1..=20),
    )
        .prop_map(|(sorts, constraints, tighten, preorder_bits)| NetSpec {
            sorts,
            constraints,
            tighten,
            preorder_bits,
        })
}

pub fn arb_network() -> impl Strategy<Value = DistributedRelation> {
    net_spec().prop_map(|s| s.network())
}

pub fn arb_distributed() -> impl Strategy<Value = DistributedRelation> {
    net_spec().prop_map(|s| s.distributed())
}

/// A discrete context with up to 8 objects and 6 attributes.
pub fn arb_context() -> impl Strategy<Value = FormalContext> {
    (0..=8usize, 0..=6usize)
        .prop_flat_map(|(ng, nm)| {
            (
                Just(ng),
                Just(nm),
                prop::collection::vec(any::<bool>(), ng * nm),
            )
        })
        .prop_map(|(ng, nm, cells)| {
            let pairs: Vec<(usize, usize)> = (0..ng)
                .flat_map(|g| (0..nm).map(move |m| (g, m)))
                .zip(&cells)
                .filter(|(_, &c)| c)
                .map(|(p, _)| p)
                .collect();
            FormalContext::new(
                Poset::discrete((0..ng).map(|g| format!("g{g}"))).unwrap(),
                Poset::discrete((0..nm).map(|m| format!("m{m}"))).unwrap(),
                pairs,
            )
            .unwrap()
        })
}

/// A context, an object subset and an attribute subset.
pub fn arb_context_with_sets() -> impl Strategy<Value = (FormalContext, FixedBitSet, FixedBitSet)> {
    arb_context().prop_flat_map(|ctx| {
        let ng = ctx.num_objects();
        let nm = ctx.num_attributes();
        (
            Just(ctx),
            prop::collection::vec(any::<bool>(), ng),
            prop::collection::vec(any::<bool>(), nm),
        )
            .prop_map(move |(ctx, gs, ms)| {
                let objs = bits(
                    ng,
                    gs.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                );
                let attrs = bits(
                    nm,
                    ms.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                );
                (ctx, objs, attrs)
            })
    })
}

/// A network together with a random set of full tuples.
pub fn arb_network_with_candidates() -> impl Strategy<Value = (DistributedRelation, Relation)> {
    (
        arb_network(),
        prop::collection::vec(prop::bool::weighted(0.3), 81),
    )
        .prop_map(|(r, bits)| {
            let dom = r.domain();
            let full = dom.full_arity();
            let p = Relation::new(
                full.clone(),
                dom.power_iter(&full)
                    .zip(&bits)
                    .filter(|(_, &b)| b)
                    .map(|(t, _)| t),
            )
            .unwrap();
            (r, p)
        })
}

pub mod props;
