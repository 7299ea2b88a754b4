//! Order-theoretic formal contexts and their derivation operators.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::order::Poset;

/// Objects, attributes, and an incidence relation between them.
///
/// Incidence is kept both row-wise (object -> attributes) and column-wise
/// (attribute -> objects) so that either derivation is a run of bit
/// intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Poset,
    attributes: Poset,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
}

/// An extent/intent pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextViolation {
    /// Two distinct objects (or attributes) that are below each other.
    Antisymmetry {
        side: &'static str,
        a: String,
        b: String,
    },
    /// `lower <= upper` among objects, `upper` has `attribute`, `lower` does not.
    NotClosedDown {
        lower: String,
        upper: String,
        attribute: String,
    },
    /// `lower <= upper` among attributes, `object` has `lower` but not `upper`.
    NotClosedUp {
        object: String,
        lower: String,
        upper: String,
    },
}

impl fmt::Display for ContextViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextViolation::Antisymmetry { side, a, b } => {
                write!(f, "{side} order is not antisymmetric: {a} <= {b} <= {a}")
            }
            ContextViolation::NotClosedDown {
                lower,
                upper,
                attribute,
            } => write!(
                f,
                "object {lower} <= {upper} and {upper} has {attribute}, but {lower} does not"
            ),
            ContextViolation::NotClosedUp {
                object,
                lower,
                upper,
            } => write!(
                f,
                "attribute {lower} <= {upper} and {object} has {lower}, but not {upper}"
            ),
        }
    }
}

fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

impl FormalContext {
    /// Builds a context from `(object, attribute)` index pairs.
    pub fn new(
        objects: Poset,
        attributes: Poset,
        incidence: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let (ng, nm) = (objects.len(), attributes.len());
        let mut rows = vec![FixedBitSet::with_capacity(nm); ng];
        for (g, m) in incidence {
            if g >= ng || m >= nm {
                return Err(Error::input(format!(
                    "incidence pair ({g}, {m}) out of range for a {ng}x{nm} context"
                )));
            }
            rows[g].insert(m);
        }
        Ok(Self::from_rows(objects, attributes, rows))
    }

    pub(crate) fn from_rows(objects: Poset, attributes: Poset, rows: Vec<FixedBitSet>) -> Self {
        let nm = attributes.len();
        let mut cols = vec![FixedBitSet::with_capacity(objects.len()); nm];
        for (g, row) in rows.iter().enumerate() {
            for m in row.ones() {
                cols[m].insert(g);
            }
        }
        FormalContext {
            objects,
            attributes,
            rows,
            cols,
        }
    }

    pub fn objects(&self) -> &Poset {
        &self.objects
    }

    pub fn attributes(&self) -> &Poset {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn has(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Attributes of object `g`.
    pub fn row(&self, g: usize) -> &FixedBitSet {
        &self.rows[g]
    }

    /// Objects having attribute `m`.
    pub fn column(&self, m: usize) -> &FixedBitSet {
        &self.cols[m]
    }

    pub fn incidence_pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.ones().map(move |m| (g, m)))
            .collect()
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn all_objects(&self) -> FixedBitSet {
        full_set(self.num_objects())
    }

    pub fn all_attributes(&self) -> FixedBitSet {
        full_set(self.num_attributes())
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        let mut s = FixedBitSet::with_capacity(self.num_objects());
        for n in names {
            let i = self
                .objects
                .index_of(n.as_ref())
                .ok_or_else(|| Error::UnknownName {
                    kind: "object",
                    name: n.as_ref().to_string(),
                })?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        let mut s = FixedBitSet::with_capacity(self.num_attributes());
        for n in names {
            let i = self
                .attributes
                .index_of(n.as_ref())
                .ok_or_else(|| Error::UnknownName {
                    kind: "attribute",
                    name: n.as_ref().to_string(),
                })?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn object_names(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|i| self.objects.name(i)).collect()
    }

    pub fn attribute_names(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|i| self.attributes.name(i)).collect()
    }

    /// Attributes shared by every object in `objs`.
    pub fn derive_intent(&self, objs: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_attributes();
        for g in objs.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// Objects having every attribute in `attrs`.
    pub fn derive_extent(&self, attrs: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_objects();
        for m in attrs.ones() {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    pub fn extent_closure(&self, objs: &FixedBitSet) -> FixedBitSet {
        self.derive_extent(&self.derive_intent(objs))
    }

    /// `attrs''`. Enlarging as a set operator; read against the reversed
    /// attribute-set order it is an interior operator.
    pub fn intent_hull(&self, attrs: &FixedBitSet) -> FixedBitSet {
        self.derive_intent(&self.derive_extent(attrs))
    }

    pub fn concept_of_objects(&self, objs: &FixedBitSet) -> Concept {
        let intent = self.derive_intent(objs);
        Concept {
            extent: self.derive_extent(&intent),
            intent,
        }
    }

    pub fn concept_of_attributes(&self, attrs: &FixedBitSet) -> Concept {
        let extent = self.derive_extent(attrs);
        Concept {
            intent: self.derive_intent(&extent),
            extent,
        }
    }

    pub fn is_concept(&self, c: &Concept) -> bool {
        self.derive_intent(&c.extent) == c.intent && self.derive_extent(&c.intent) == c.extent
    }

    /// Checks antisymmetry of both orders and that incidence is closed
    /// downward in objects and upward in attributes.
    pub fn validate(&self) -> Vec<ContextViolation> {
        let mut out = Vec::new();
        for (side, p) in [("object", &self.objects), ("attribute", &self.attributes)] {
            for (a, b) in p.antisymmetry_violations() {
                out.push(ContextViolation::Antisymmetry {
                    side,
                    a: p.name(a).to_string(),
                    b: p.name(b).to_string(),
                });
            }
        }
        for (lo, hi) in self.objects.strict_pairs() {
            for m in self.rows[hi].difference(&self.rows[lo]) {
                out.push(ContextViolation::NotClosedDown {
                    lower: self.objects.name(lo).to_string(),
                    upper: self.objects.name(hi).to_string(),
                    attribute: self.attributes.name(m).to_string(),
                });
            }
        }
        for (lo, hi) in self.attributes.strict_pairs() {
            for g in self.cols[lo].difference(&self.cols[hi]) {
                out.push(ContextViolation::NotClosedUp {
                    object: self.objects.name(g).to_string(),
                    lower: self.attributes.name(lo).to_string(),
                    upper: self.attributes.name(hi).to_string(),
                });
            }
        }
        out
    }

    /// Same objects and attributes, incidence replaced.
    pub(crate) fn with_incidence(&self, rows: Vec<FixedBitSet>) -> Self {
        Self::from_rows(self.objects.clone(), self.attributes.clone(), rows)
    }

    /// Pointwise incidence inclusion for contexts over the same objects and attributes.
    pub fn incidence_subset_of(&self, other: &FormalContext) -> bool {
        self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }
}

/// A monotone map between object posets, `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectMap {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl ObjectMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::input(format!(
                "object map has {} entries for {} source objects",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.len()) {
            return Err(Error::input(format!(
                "object map target index {bad} out of range"
            )));
        }
        if let Some((a, b)) = source.monotone_violation(&target, |i| map[i]) {
            return Err(Error::input(format!(
                "object map is not monotone: {} <= {} but {} is not below {}",
                source.name(a),
                source.name(b),
                target.name(map[a]),
                target.name(map[b])
            )));
        }
        Ok(ObjectMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(objects: Poset) -> Self {
        let map = (0..objects.len()).collect();
        ObjectMap {
            source: objects.clone(),
            target: objects,
            map,
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }
}

/// Existential image: `(g1, m)` holds iff some `g2` with `phi(g2) = g1` has `m`.
pub fn context_direct_image(phi: &ObjectMap, ctx: &FormalContext) -> Result<FormalContext> {
    if ctx.objects() != phi.source() {
        return Err(Error::input(
            "direct image: context objects differ from the map's source",
        ));
    }
    let nm = ctx.num_attributes();
    let mut rows = vec![FixedBitSet::with_capacity(nm); phi.target().len()];
    for g2 in 0..ctx.num_objects() {
        rows[phi.apply(g2)].union_with(ctx.row(g2));
    }
    Ok(FormalContext::from_rows(
        phi.target().clone(),
        ctx.attributes().clone(),
        rows,
    ))
}

/// Pullback: `(g2, m)` holds iff `(phi(g2), m)` does.
pub fn context_inverse_image(phi: &ObjectMap, ctx: &FormalContext) -> Result<FormalContext> {
    if ctx.objects() != phi.target() {
        return Err(Error::input(
            "inverse image: context objects differ from the map's target",
        ));
    }
    let rows = (0..phi.source().len())
        .map(|g2| ctx.row(phi.apply(g2)).clone())
        .collect();
    Ok(FormalContext::from_rows(
        phi.source().clone(),
        ctx.attributes().clone(),
        rows,
    ))
}
