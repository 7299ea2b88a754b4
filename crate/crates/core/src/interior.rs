//! Solution sets, projection of candidate solution sets, and the relational
//! interior `π(Π R)`.
//!
//! `Π` and `π` form a Galois connection between sets of full tuples and
//! distributed relations over a fixed signature: `π P <= R` iff `P ⊆ Π R`.
//! The interior is the smallest distributed relation with the same solution
//! set, and it satisfies every projective containment its schemes allow.

use crate::error::{Cap, Error, Result};
use crate::network::{DistributedRelation, Signature};
use crate::relation::{project_values, Relation, SortedDomain, Tuple};

/// Full tuples satisfying every constraint (`Π R`).
///
/// Enumerates `D^N` and filters; there is no search.
pub fn solution_set(r: &DistributedRelation, cap: Cap) -> Result<Relation> {
    let dom = r.domain();
    let full = dom.full_arity();
    cap.check(dom.power_size(&full), "solution set")?;
    let sig = r.signature();
    let positions: Vec<Vec<usize>> = sig
        .schemes()
        .iter()
        .map(|s| s.positions_in(&full))
        .collect();
    let mut out = Relation::empty(full.clone());
    for x in dom.power_iter(&full) {
        let ok = positions
            .iter()
            .zip(r.relations())
            .all(|(pos, rel)| rel.contains(&project_values(&x, pos)));
        if ok {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Projects a set of full tuples onto every scheme of `sig` (`π P`).
pub fn project_solution(
    dom: &SortedDomain,
    p: &Relation,
    sig: &Signature,
) -> Result<DistributedRelation> {
    if p.arity() != &dom.full_arity() {
        return Err(Error::input(
            "candidate solution set must have the full arity",
        ));
    }
    let relations = sig
        .schemes()
        .iter()
        .map(|s| p.project(s))
        .collect::<Result<Vec<_>>>()?;
    DistributedRelation::new(dom.clone(), sig.clone(), relations)
}

/// `π(Π R)`.
pub fn interior(r: &DistributedRelation, cap: Cap) -> Result<DistributedRelation> {
    project_solution(r.domain(), &solution_set(r, cap)?, r.signature())
}

/// Same solution set. Both relations must share domain and signature.
pub fn equivalent(r: &DistributedRelation, s: &DistributedRelation, cap: Cap) -> Result<bool> {
    if r.signature() != s.signature() || r.domain() != s.domain() {
        return Err(Error::input(
            "equivalence needs identical signatures and domains",
        ));
    }
    Ok(solution_set(r, cap)? == solution_set(s, cap)?)
}

/// Per constraint, the tuples that take part in no solution (`R_e \ R°_e`).
pub fn isolated_tuples(r: &DistributedRelation, cap: Cap) -> Result<Vec<Relation>> {
    let inner = interior(r, cap)?;
    r.relations()
        .iter()
        .zip(inner.relations())
        .map(|(a, b)| a.difference(b))
        .collect()
}

/// Whether a full tuple is a solution.
pub fn is_solution(r: &DistributedRelation, x: &Tuple) -> bool {
    (0..r.signature().len()).all(|e| r.satisfies(x, e))
}
