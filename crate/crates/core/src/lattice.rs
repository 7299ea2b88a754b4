//! Concept lattices: lectic enumeration, order, covers, meets and joins.
//!
//! Concepts are indexed in lectic order of their intents: an intent is read
//! as a binary number over the attribute list with the first attribute as the
//! most significant bit, and concepts are sorted by ascending value. The top
//! concept (smallest intent) therefore comes first and the order matrix is
//! lower triangular.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::context::{Concept, FormalContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    /// `above[i]` holds every `j` with `c_i <= c_j`.
    above: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    by_intent: HashMap<FixedBitSet, usize>,
}

/// The lectically next closed intent after `current`, if any.
///
/// `A (+) i = hull((A ∩ {0..i}) ∪ {i})`; the successor is `A (+) i` for the
/// largest `i ∉ A` whose new elements all lie at or after `i`.
fn next_intent(ctx: &FormalContext, current: &FixedBitSet) -> Option<FixedBitSet> {
    let n = ctx.num_attributes();
    let mut prefix = current.clone();
    for i in (0..n).rev() {
        if prefix.contains(i) {
            prefix.set(i, false);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let hull = ctx.intent_hull(&candidate);
        // New elements relative to `current` must not precede `i`.
        let earliest_new = hull.difference(current).next();
        if earliest_new.is_none_or(|j| j >= i) {
            return Some(hull);
        }
    }
    None
}

/// All concept intents of `ctx` in lectic order.
pub fn lectic_intents(ctx: &FormalContext) -> Vec<FixedBitSet> {
    let first = ctx.intent_hull(&FixedBitSet::with_capacity(ctx.num_attributes()));
    let mut out = vec![first];
    while let Some(next) = next_intent(ctx, out.last().expect("nonempty")) {
        out.push(next);
    }
    out
}

impl ConceptLattice {
    pub fn build(context: FormalContext) -> Self {
        let concepts: Vec<Concept> = lectic_intents(&context)
            .into_iter()
            .map(|intent| Concept {
                extent: context.derive_extent(&intent),
                intent,
            })
            .collect();
        let n = concepts.len();
        let above: Vec<FixedBitSet> = concepts
            .iter()
            .map(|ci| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, cj) in concepts.iter().enumerate() {
                    if cj.intent.is_subset(&ci.intent) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let upper_covers: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut strict = above[i].clone();
                strict.set(i, false);
                let mut indirect = FixedBitSet::with_capacity(n);
                for k in strict.ones() {
                    let mut beyond = above[k].clone();
                    beyond.set(k, false);
                    indirect.union_with(&beyond);
                }
                strict.difference(&indirect).collect()
            })
            .collect();
        let mut lower_covers = vec![Vec::new(); n];
        for (i, ups) in upper_covers.iter().enumerate() {
            for &j in ups {
                lower_covers[j].push(i);
            }
        }
        let by_intent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.clone(), i))
            .collect();
        ConceptLattice {
            context,
            concepts,
            above,
            upper_covers,
            lower_covers,
            by_intent,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn top(&self) -> usize {
        0
    }

    pub fn bottom(&self) -> usize {
        self.concepts.len() - 1
    }

    /// `c_i <= c_j` (`c_i` is more specific).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// Immediate successors (concepts directly above `i`), ascending.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        self.by_intent
            .get(&c.intent)
            .copied()
            .filter(|&i| self.concepts[i].extent == c.extent)
    }

    pub fn index_of_intent(&self, intent: &FixedBitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    fn require(&self, c: &Concept) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::input("concept is not a member of this lattice"))
    }

    fn check_indices(&self, cs: &[usize]) -> Result<()> {
        if cs.is_empty() {
            return Err(Error::input("meet/join of an empty family"));
        }
        if let Some(&bad) = cs.iter().find(|&&i| i >= self.len()) {
            return Err(Error::input(format!("no concept with index {bad}")));
        }
        Ok(())
    }

    /// Greatest lower bound: intersect extents, re-derive the intent.
    pub fn meet(&self, cs: &[usize]) -> Result<usize> {
        self.check_indices(cs)?;
        let mut extent = self.concepts[cs[0]].extent.clone();
        for &i in &cs[1..] {
            extent.intersect_with(&self.concepts[i].extent);
        }
        let intent = self.context.derive_intent(&extent);
        Ok(self.by_intent[&intent])
    }

    /// Least upper bound: intersect intents.
    pub fn join(&self, cs: &[usize]) -> Result<usize> {
        self.check_indices(cs)?;
        let mut intent = self.concepts[cs[0]].intent.clone();
        for &i in &cs[1..] {
            intent.intersect_with(&self.concepts[i].intent);
        }
        // Intersections of intents are intents.
        Ok(self.by_intent[&intent])
    }

    pub fn concept_meet(&self, cs: &[Concept]) -> Result<Concept> {
        let idx = cs
            .iter()
            .map(|c| self.require(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.concepts[self.meet(&idx)?].clone())
    }

    pub fn concept_join(&self, cs: &[Concept]) -> Result<Concept> {
        let idx = cs
            .iter()
            .map(|c| self.require(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.concepts[self.join(&idx)?].clone())
    }

    /// Index of the smallest concept whose extent contains object `g`.
    pub fn object_concept(&self, g: usize) -> usize {
        self.by_intent[self.context.row(g)]
    }

    /// Index of the largest concept whose intent contains attribute `m`.
    pub fn attribute_concept(&self, m: usize) -> usize {
        let mut single = FixedBitSet::with_capacity(self.context.num_attributes());
        single.insert(m);
        self.by_intent[&self.context.intent_hull(&single)]
    }

    /// Objects whose object concept is `i` (the concept's tuple generators).
    pub fn object_generators(&self, i: usize) -> Vec<usize> {
        (0..self.context.num_objects())
            .filter(|&g| self.object_concept(g) == i)
            .collect()
    }

    /// Attributes whose attribute concept is `i`.
    pub fn attribute_generators(&self, i: usize) -> Vec<usize> {
        (0..self.context.num_attributes())
            .filter(|&m| self.attribute_concept(m) == i)
            .collect()
    }
}
