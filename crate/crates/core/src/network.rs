//! Signatures, distributed relations (networks of constraints when the
//! signature is discrete), satisfaction and satisfaction contexts.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::context::FormalContext;
use crate::error::{product_size, Cap, Error, Result};
use crate::order::Poset;
use crate::relation::{
    project_values, projective_containment, Arity, Relation, SortedDomain, Tuple,
};

/// Constraint names with a preorder and a scheme per constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    constraints: Poset,
    schemes: Vec<Arity>,
}

impl Signature {
    pub fn new(constraints: Poset, schemes: Vec<Arity>) -> Result<Self> {
        if constraints.len() != schemes.len() {
            return Err(Error::input(format!(
                "{} constraints but {} schemes",
                constraints.len(),
                schemes.len()
            )));
        }
        Ok(Signature {
            constraints,
            schemes,
        })
    }

    /// Discrete signature: a hypergraph on the sorts.
    pub fn discrete<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, Arity)>,
    ) -> Result<Self> {
        let (names, schemes): (Vec<String>, Vec<Arity>) =
            entries.into_iter().map(|(n, a)| (n.into(), a)).unzip();
        Signature::new(Poset::discrete(names)?, schemes)
    }

    pub fn constraints(&self) -> &Poset {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.schemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemes.is_empty()
    }

    pub fn name(&self, e: usize) -> &str {
        self.constraints.name(e)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.constraints
            .index_of(name)
            .ok_or_else(|| Error::UnknownName {
                kind: "constraint",
                name: name.to_string(),
            })
    }

    pub fn scheme(&self, e: usize) -> &Arity {
        &self.schemes[e]
    }

    pub fn schemes(&self) -> &[Arity] {
        &self.schemes
    }

    pub fn is_discrete(&self) -> bool {
        self.constraints.is_discrete()
    }

    /// Pairs `e1 <= e2` whose schemes do not satisfy `τ(e1) ⊇ τ(e2)`.
    pub fn scheme_monotonicity_violations(&self) -> Vec<(usize, usize)> {
        self.constraints
            .strict_pairs()
            .into_iter()
            .filter(|&(lo, hi)| !self.schemes[hi].is_subset(&self.schemes[lo]))
            .collect()
    }
}

/// A sorted domain, a signature, and one relation per constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributedRelation {
    domain: SortedDomain,
    signature: Signature,
    relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkViolation {
    SchemeMismatch {
        constraint: String,
        expected: String,
        found: String,
    },
    ValueOutOfRange {
        constraint: String,
        tuple: String,
    },
    NotClosedBelow {
        constraint: String,
        present: String,
        missing: String,
    },
    SchemeNotMonotone {
        lower: String,
        upper: String,
    },
    ContainmentFails {
        lower: String,
        upper: String,
    },
}

impl fmt::Display for NetworkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkViolation::SchemeMismatch {
                constraint,
                expected,
                found,
            } => write!(
                f,
                "constraint {constraint}: relation has arity {found}, scheme is {expected}"
            ),
            NetworkViolation::ValueOutOfRange { constraint, tuple } => {
                write!(
                    f,
                    "constraint {constraint}: tuple {tuple} has values outside the domain"
                )
            }
            NetworkViolation::NotClosedBelow {
                constraint,
                present,
                missing,
            } => write!(
                f,
                "constraint {constraint}: {present} is present but {missing} below it is not"
            ),
            NetworkViolation::SchemeNotMonotone { lower, upper } => write!(
                f,
                "{lower} <= {upper} but the scheme of {upper} is not inside that of {lower}"
            ),
            NetworkViolation::ContainmentFails { lower, upper } => write!(
                f,
                "{lower} <= {upper} but R_{lower} does not project into R_{upper}"
            ),
        }
    }
}

/// Which tuples become objects of a satisfaction context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleMode {
    /// Only full tuples `D^N`.
    Full,
    /// Tuples of every arity, ordered by projection.
    All,
}

/// A scheme-compatible projective containment condition `lower <= upper`
/// together with whether it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCandidate {
    pub lower: usize,
    pub upper: usize,
    pub holds: bool,
}

impl DistributedRelation {
    /// Assembles a distributed relation. Only the constraint count is checked
    /// here; everything else is reported by [`DistributedRelation::validate`].
    pub fn new(
        domain: SortedDomain,
        signature: Signature,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::input(format!(
                "{} relations for {} constraints",
                relations.len(),
                signature.len()
            )));
        }
        Ok(DistributedRelation {
            domain,
            signature,
            relations,
        })
    }

    pub fn domain(&self) -> &SortedDomain {
        &self.domain
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, e: usize) -> &Relation {
        &self.relations[e]
    }

    pub fn relation_named(&self, name: &str) -> Result<&Relation> {
        Ok(&self.relations[self.signature.index_of(name)?])
    }

    pub fn total_tuples(&self) -> usize {
        self.relations.iter().map(Relation::len).sum()
    }

    /// Replaces the relations, keeping domain and signature.
    pub fn with_relations(&self, relations: Vec<Relation>) -> Result<Self> {
        DistributedRelation::new(self.domain.clone(), self.signature.clone(), relations)
    }

    /// Pointwise inclusion against a relation over the same signature.
    pub fn pointwise_leq(&self, other: &DistributedRelation) -> bool {
        self.signature == other.signature
            && self
                .relations
                .iter()
                .zip(&other.relations)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn validate(&self) -> Vec<NetworkViolation> {
        let mut out = Vec::new();
        let sig = &self.signature;
        let dom = &self.domain;
        let mut well_formed = vec![true; sig.len()];
        for (e, rel) in self.relations.iter().enumerate() {
            let name = sig.name(e).to_string();
            let scheme = sig.scheme(e);
            if scheme.sorts().iter().any(|&a| a >= dom.num_sorts()) || rel.arity() != scheme {
                well_formed[e] = false;
                out.push(NetworkViolation::SchemeMismatch {
                    constraint: name,
                    expected: render_arity_lossy(dom, scheme),
                    found: render_arity_lossy(dom, rel.arity()),
                });
                continue;
            }
            let bad = rel.iter().find(|t| {
                t.iter()
                    .zip(scheme.sorts())
                    .any(|(&v, &a)| v >= dom.values(a).len())
            });
            if let Some(t) = bad {
                well_formed[e] = false;
                out.push(NetworkViolation::ValueOutOfRange {
                    constraint: name,
                    tuple: format!("{t:?}"),
                });
                continue;
            }
            for (present, missing) in dom.closed_below_violations(rel) {
                out.push(NetworkViolation::NotClosedBelow {
                    constraint: name.clone(),
                    present: dom.render_values(scheme, &present),
                    missing: dom.render_values(scheme, &missing),
                });
            }
        }
        for (lo, hi) in sig.constraints().strict_pairs() {
            let (lower, upper) = (sig.name(lo).to_string(), sig.name(hi).to_string());
            if !sig.scheme(hi).is_subset(sig.scheme(lo)) {
                out.push(NetworkViolation::SchemeNotMonotone { lower, upper });
            } else if well_formed[lo]
                && well_formed[hi]
                && !projective_containment(&self.relations[lo], &self.relations[hi])
            {
                out.push(NetworkViolation::ContainmentFails { lower, upper });
            }
        }
        out
    }

    /// Whether tuple `x` satisfies constraint `e`: its arity covers the
    /// scheme and its projection lies in the relation.
    pub fn satisfies(&self, x: &Tuple, e: usize) -> bool {
        let scheme = self.signature.scheme(e);
        scheme.is_subset(&x.arity)
            && self.relations[e]
                .contains(&project_values(&x.values, &scheme.positions_in(&x.arity)))
    }

    pub fn satisfies_named(&self, x: &Tuple, constraint: &str) -> Result<bool> {
        Ok(self.satisfies(x, self.signature.index_of(constraint)?))
    }

    /// Every pair of distinct constraints `(lower, upper)` with
    /// `τ(upper) ⊆ τ(lower)`, and whether `R_lower:τ(lower) <= R_upper:τ(upper)`.
    pub fn containment_candidates(&self) -> Vec<ContainmentCandidate> {
        let n = self.signature.len();
        let mut out = Vec::new();
        for lower in 0..n {
            for upper in 0..n {
                if lower != upper
                    && self
                        .signature
                        .scheme(upper)
                        .is_subset(self.signature.scheme(lower))
                {
                    out.push(ContainmentCandidate {
                        lower,
                        upper,
                        holds: projective_containment(
                            &self.relations[lower],
                            &self.relations[upper],
                        ),
                    });
                }
            }
        }
        out
    }
}

fn render_arity_lossy(dom: &SortedDomain, u: &Arity) -> String {
    let parts: Vec<String> = u
        .sorts()
        .iter()
        .map(|&a| {
            if a < dom.num_sorts() {
                dom.sort_name(a).to_string()
            } else {
                format!("#{a}")
            }
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Product order on the full power `D^N`, or the discrete order when every
/// sort is discrete. Objects are named `(v1,...,vn)` in lexicographic order.
pub(crate) fn full_power_poset(dom: &SortedDomain, cap: Cap) -> Result<(Poset, Vec<Vec<usize>>)> {
    let full = dom.full_arity();
    cap.check(dom.power_size(&full), "full tuple power")?;
    let tuples: Vec<Vec<usize>> = dom.power_iter(&full).collect();
    let names: Vec<String> = tuples.iter().map(|t| dom.render_values(&full, t)).collect();
    let poset = if dom.is_discrete() {
        Poset::discrete(names)?
    } else {
        Poset::from_leq_fn(names, |i, j| dom.values_leq(&full, &tuples[i], &tuples[j]))?
    };
    Ok((poset, tuples))
}

/// The formal context of tuples against constraints under satisfaction.
///
/// In [`TupleMode::Full`] the objects are the full tuples. In
/// [`TupleMode::All`] they are the tuples of every arity `U ⊆ N`, including
/// the empty tuple, ordered by projection.
pub fn satisfaction_context(
    r: &DistributedRelation,
    mode: TupleMode,
    cap: Cap,
) -> Result<FormalContext> {
    let dom = r.domain();
    let sig = r.signature();
    let (objects, tuples) = match mode {
        TupleMode::Full => {
            let (poset, values) = full_power_poset(dom, cap)?;
            let full = dom.full_arity();
            let tuples: Vec<Tuple> = values
                .into_iter()
                .map(|v| Tuple {
                    arity: full.clone(),
                    values: v,
                })
                .collect();
            (poset, tuples)
        }
        TupleMode::All => {
            let n = dom.num_sorts();
            if n >= usize::BITS as usize {
                return Err(Error::Capacity {
                    what: "all-tuples context".into(),
                    needed: usize::MAX,
                    cap: cap.0,
                });
            }
            let total = product_size((0..n).map(|a| dom.values(a).len() + 1));
            cap.check(total, "all-tuples context")?;
            let mut tuples = Vec::with_capacity(total);
            for mask in 0..(1usize << n) {
                let arity = Arity::new((0..n).filter(|a| mask & (1 << a) != 0));
                for values in dom.power_iter(&arity) {
                    tuples.push(Tuple {
                        arity: arity.clone(),
                        values,
                    });
                }
            }
            let names: Vec<String> = tuples.iter().map(|t| dom.render_tagged(t)).collect();
            let poset = Poset::from_leq_fn(names, |i, j| {
                crate::relation::tuple_leq(&tuples[i], &tuples[j])
            })?;
            (poset, tuples)
        }
    };
    let rows = tuples
        .iter()
        .map(|t| {
            let mut row = FixedBitSet::with_capacity(sig.len());
            for e in 0..sig.len() {
                if r.satisfies(t, e) {
                    row.insert(e);
                }
            }
            row
        })
        .collect();
    Ok(FormalContext::from_rows(
        objects,
        sig.constraints().clone(),
        rows,
    ))
}

/// Name of the single sort used when a context is read as a distributed relation.
pub const SINGLE_SORT: &str = "G";

/// A context as a single-sorted distributed relation: objects become the
/// values of one sort, each attribute a unary constraint holding its column.
pub fn as_single_sorted(ctx: &FormalContext) -> DistributedRelation {
    let domain = SortedDomain::new([(SINGLE_SORT, ctx.objects().clone())])
        .expect("one sort has no duplicate names");
    let unary = domain.full_arity();
    let schemes = vec![unary.clone(); ctx.num_attributes()];
    let signature = Signature::new(ctx.attributes().clone(), schemes).expect("lengths agree");
    let relations = (0..ctx.num_attributes())
        .map(|m| {
            Relation::new(unary.clone(), ctx.column(m).ones().map(|g| vec![g]))
                .expect("unary tuples")
        })
        .collect();
    DistributedRelation::new(domain, signature, relations).expect("lengths agree")
}

/// Inverse of [`as_single_sorted`]. Requires one sort and every scheme equal to it.
pub fn to_context(r: &DistributedRelation) -> Result<FormalContext> {
    let dom = r.domain();
    if dom.num_sorts() != 1 {
        return Err(Error::input(format!(
            "a context needs a single-sorted relation, found {} sorts",
            dom.num_sorts()
        )));
    }
    let full = dom.full_arity();
    let sig = r.signature();
    if let Some(e) = (0..sig.len()).find(|&e| sig.scheme(e) != &full) {
        return Err(Error::input(format!(
            "constraint {} does not have the unary scheme",
            sig.name(e)
        )));
    }
    let objects = dom.values(0).clone();
    let pairs = (0..sig.len()).flat_map(|e| r.relation(e).iter().map(move |t| (t[0], e)));
    FormalContext::new(objects, sig.constraints().clone(), pairs)
}
