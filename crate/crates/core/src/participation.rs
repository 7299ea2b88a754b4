//! Emphasized suborders of a concept lattice and the participation context.
//!
//! An emphasized suborder is a set `P` of concepts whose inclusion `ι` has a
//! right adjoint `ι⊣`: every concept `c` has a greatest member below it. The
//! participation context relates `g` to `m` when some member sits between the
//! object concept `γ(g)` and the attribute concept `μ(m)`.
//!
//! `γ` and `μ` follow the usual reading: `γ(g) = ({g}'', {g}')` and
//! `μ(m) = ({m}', {m}'')`.

use fixedbitset::FixedBitSet;

use crate::context::{Concept, FormalContext};
use crate::error::{Cap, Error, Result};
use crate::lattice::ConceptLattice;
use crate::network::full_power_poset;
use crate::order::Poset;
use crate::relation::{Relation, SortedDomain};

pub fn object_concept(lat: &ConceptLattice, object: &str) -> Result<Concept> {
    let g = lat
        .context()
        .objects()
        .index_of(object)
        .ok_or_else(|| Error::UnknownName {
            kind: "object",
            name: object.to_string(),
        })?;
    Ok(lat.concept(lat.object_concept(g)).clone())
}

pub fn attribute_concept(lat: &ConceptLattice, attribute: &str) -> Result<Concept> {
    let m = lat
        .context()
        .attributes()
        .index_of(attribute)
        .ok_or_else(|| Error::UnknownName {
            kind: "attribute",
            name: attribute.to_string(),
        })?;
    Ok(lat.concept(lat.attribute_concept(m)).clone())
}

#[derive(Debug, Clone)]
pub struct SubLattice<'a> {
    lattice: &'a ConceptLattice,
    members: FixedBitSet,
    /// For each concept, the greatest member below it.
    coadjoint: Vec<usize>,
}

impl<'a> SubLattice<'a> {
    /// Accepts `members` only if every concept has a greatest member below it.
    pub fn from_members(lattice: &'a ConceptLattice, members: &[usize]) -> Result<Self> {
        let n = lattice.len();
        let mut set = FixedBitSet::with_capacity(n);
        for &p in members {
            if p >= n {
                return Err(Error::input(format!("no concept with index {p}")));
            }
            set.insert(p);
        }
        let mut coadjoint = Vec::with_capacity(n);
        for c in 0..n {
            let below: Vec<usize> = set.ones().filter(|&p| lattice.leq(p, c)).collect();
            let top = below
                .iter()
                .copied()
                .find(|&q| below.iter().all(|&p| lattice.leq(p, q)));
            match top {
                Some(q) => coadjoint.push(q),
                None => {
                    return Err(Error::input(format!(
                        "members have no greatest element below concept {}",
                        c + 1
                    )))
                }
            }
        }
        Ok(SubLattice {
            lattice,
            members: set,
            coadjoint,
        })
    }

    /// The whole lattice, with identity adjoints.
    pub fn full(lattice: &'a ConceptLattice) -> Self {
        let n = lattice.len();
        let mut members = FixedBitSet::with_capacity(n);
        members.insert_range(..);
        SubLattice {
            lattice,
            members,
            coadjoint: (0..n).collect(),
        }
    }

    /// `↓c`, with `ι⊣(d) = c ∧ d`.
    pub fn principal_ideal(lattice: &'a ConceptLattice, c: usize) -> Result<Self> {
        if c >= lattice.len() {
            return Err(Error::input(format!("no concept with index {c}")));
        }
        let mut members = FixedBitSet::with_capacity(lattice.len());
        for d in 0..lattice.len() {
            if lattice.leq(d, c) {
                members.insert(d);
            }
        }
        let coadjoint = (0..lattice.len())
            .map(|d| lattice.meet(&[c, d]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubLattice {
            lattice,
            members,
            coadjoint,
        })
    }

    pub fn lattice(&self) -> &ConceptLattice {
        self.lattice
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.members.contains(c)
    }

    /// Greatest member below concept `c`.
    pub fn coadjoint(&self, c: usize) -> usize {
        self.coadjoint[c]
    }

    /// `(p, c)` pairs where `ι(p) <= c` and `p <= ι⊣(c)` disagree.
    pub fn adjointness_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in self.members.ones() {
            for c in 0..self.lattice.len() {
                if self.lattice.leq(p, c) != self.lattice.leq(p, self.coadjoint[c]) {
                    out.push((p, c));
                }
            }
        }
        out
    }
}

/// `g I_P m` iff some member `p` has `γ(g) <= p <= μ(m)`.
pub fn participation_context(
    ctx: &FormalContext,
    lat: &ConceptLattice,
    sub: &SubLattice<'_>,
) -> Result<FormalContext> {
    if lat.context() != ctx {
        return Err(Error::input("lattice was not built from this context"));
    }
    if !std::ptr::eq(sub.lattice, lat) && sub.lattice.context() != ctx {
        return Err(Error::input("suborder belongs to a different lattice"));
    }
    let gammas: Vec<usize> = (0..ctx.num_objects())
        .map(|g| lat.object_concept(g))
        .collect();
    let mus: Vec<usize> = (0..ctx.num_attributes())
        .map(|m| lat.attribute_concept(m))
        .collect();
    let members = sub.members();
    let rows = gammas
        .iter()
        .map(|&gamma| {
            let mut row = FixedBitSet::with_capacity(ctx.num_attributes());
            let reachable: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&p| lat.leq(gamma, p))
                .collect();
            for (m, &mu) in mus.iter().enumerate() {
                if reachable.iter().any(|&p| lat.leq(p, mu)) {
                    row.insert(m);
                }
            }
            row
        })
        .collect();
    Ok(ctx.with_incidence(rows))
}

/// Full tuples against constraints, `x I e` iff `x ∈ P`.
pub fn solution_indicator_context(
    dom: &SortedDomain,
    p: &Relation,
    constraints: &Poset,
    cap: Cap,
) -> Result<FormalContext> {
    if p.arity() != &dom.full_arity() {
        return Err(Error::input("indicator set must have the full arity"));
    }
    let (objects, tuples) = full_power_poset(dom, cap)?;
    let mut all = FixedBitSet::with_capacity(constraints.len());
    all.insert_range(..);
    let rows = tuples
        .iter()
        .map(|t| {
            if p.contains(t) {
                all.clone()
            } else {
                FixedBitSet::with_capacity(constraints.len())
            }
        })
        .collect();
    Ok(FormalContext::from_rows(objects, constraints.clone(), rows))
}
