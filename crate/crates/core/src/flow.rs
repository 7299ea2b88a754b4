//! Morphisms of sorted domains and the direct/inverse images they induce on
//! distributed relations.
//!
//! A morphism `(f, φ): (N1, D1) -> (N2, D2)` maps sorts forward and values
//! backward: for each arity `U ⊆ N1` there is a monotone
//! `φ_U: D2^{f U} -> D1^U`. Families are evaluated lazily, one arity at a
//! time, so only the arities a network actually uses are ever touched.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Cap, Error, Result};
use crate::network::{full_power_poset, DistributedRelation, Signature};
use crate::order::Poset;
use crate::relation::{project_values, Arity, Relation, SortedDomain};

type Graph = (Vec<usize>, Vec<usize>);

/// Largest preimage of a scheme whose subsets the direct image enumerates.
pub const MAX_PREIMAGE_SORTS: usize = 20;

/// Largest source sort count for which naturality is checked on every pair of arities.
const EXHAUSTIVE_NATURALITY_SORTS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// One value map per source sort `a`, `D2_{f(a)} -> D1_a`; `φ_U` is their product.
    Componentwise(Vec<Vec<usize>>),
    /// Declared tables `D2^{fU} -> D1^U` for a finite list of arities.
    Explicit(BTreeMap<Arity, HashMap<Vec<usize>, Vec<usize>>>),
    /// `φ_U = π_{N,U}` on the full power (target is `D^N` as one sort).
    Projection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainMorphism {
    source: SortedDomain,
    target: SortedDomain,
    sort_map: Vec<usize>,
    family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    Malformed(String),
    NotMonotone {
        arity: String,
        lower: String,
        upper: String,
    },
    NotNatural {
        larger: String,
        smaller: String,
        witness: String,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::Malformed(m) => f.write_str(m),
            MorphismViolation::NotMonotone {
                arity,
                lower,
                upper,
            } => write!(
                f,
                "φ_{arity} is not monotone: {lower} <= {upper} but images are not"
            ),
            MorphismViolation::NotNatural {
                larger,
                smaller,
                witness,
            } => write!(
                f,
                "naturality square ({larger}, {smaller}) fails at {witness}"
            ),
        }
    }
}

impl DomainMorphism {
    pub fn new(
        source: SortedDomain,
        target: SortedDomain,
        sort_map: Vec<usize>,
        family: Family,
    ) -> Result<Self> {
        if sort_map.len() != source.num_sorts() {
            return Err(Error::input(format!(
                "sort map has {} entries for {} source sorts",
                sort_map.len(),
                source.num_sorts()
            )));
        }
        if sort_map.iter().any(|&b| b >= target.num_sorts()) {
            return Err(Error::input("sort map points outside the target sorts"));
        }
        Ok(DomainMorphism {
            source,
            target,
            sort_map,
            family,
        })
    }

    pub fn identity(dom: &SortedDomain) -> Self {
        let maps = (0..dom.num_sorts())
            .map(|a| (0..dom.values(a).len()).collect())
            .collect();
        DomainMorphism {
            source: dom.clone(),
            target: dom.clone(),
            sort_map: (0..dom.num_sorts()).collect(),
            family: Family::Componentwise(maps),
        }
    }

    pub fn source(&self) -> &SortedDomain {
        &self.source
    }

    pub fn target(&self) -> &SortedDomain {
        &self.target
    }

    pub fn sort_map(&self) -> &[usize] {
        &self.sort_map
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `f(U)`, an arity over the target sorts.
    pub fn image_arity(&self, u: &Arity) -> Arity {
        Arity::new(u.sorts().iter().map(|&a| self.sort_map[a]))
    }

    /// `φ_U(y)` for `y ∈ D2^{f U}`.
    pub fn apply(&self, u: &Arity, y: &[usize]) -> Result<Vec<usize>> {
        match &self.family {
            Family::Componentwise(maps) => {
                let fu = self.image_arity(u);
                u.sorts()
                    .iter()
                    .map(|&a| {
                        let pos = fu
                            .sorts()
                            .binary_search(&self.sort_map[a])
                            .expect("f(a) lies in f(U)");
                        maps[a].get(y[pos]).copied().ok_or_else(|| {
                            Error::input(format!(
                                "value map for sort {} is partial",
                                self.source.sort_name(a)
                            ))
                        })
                    })
                    .collect()
            }
            Family::Explicit(tables) => {
                let table = tables.get(u).ok_or_else(|| {
                    Error::input(format!(
                        "morphism declares no map for arity {}",
                        self.source.render_arity(u)
                    ))
                })?;
                table.get(y).cloned().ok_or_else(|| {
                    Error::input(format!(
                        "map for arity {} has no entry for {}",
                        self.source.render_arity(u),
                        self.target.render_values(&self.image_arity(u), y)
                    ))
                })
            }
            Family::Projection => {
                if u.is_empty() {
                    return Ok(Vec::new());
                }
                let full = self.source.full_tuple_at(y[0]);
                Ok(project_values(
                    &full,
                    &u.positions_in(&self.source.full_arity()),
                ))
            }
        }
    }

    /// Arities whose maps [`DomainMorphism::validate`] inspects.
    fn checked_arities(&self) -> Vec<Arity> {
        let n = self.source.num_sorts();
        match &self.family {
            Family::Explicit(tables) => tables.keys().cloned().collect(),
            _ if n <= EXHAUSTIVE_NATURALITY_SORTS => (0..1usize << n)
                .map(|mask| Arity::new((0..n).filter(|a| mask & (1 << a) != 0)))
                .collect(),
            _ => {
                let mut v = vec![Arity::empty(), self.source.full_arity()];
                v.extend((0..n).map(|a| Arity::new([a])));
                v
            }
        }
    }

    /// Checks each inspected `φ_U` is total and monotone, and that every
    /// square `φ_V ; π_{VU} = π_{fV,fU} ; φ_U` commutes pointwise.
    pub fn validate(&self, cap: Cap) -> Vec<MorphismViolation> {
        let mut out = Vec::new();
        if let Family::Componentwise(maps) = &self.family {
            for (a, m) in maps.iter().enumerate() {
                let from = self.target.values(self.sort_map[a]);
                let to = self.source.values(a);
                if m.len() != from.len() || m.iter().any(|&v| v >= to.len()) {
                    out.push(MorphismViolation::Malformed(format!(
                        "value map for sort {} is not a total map {} -> {}",
                        self.source.sort_name(a),
                        from.len(),
                        to.len()
                    )));
                }
            }
            if maps.len() != self.source.num_sorts() {
                out.push(MorphismViolation::Malformed(format!(
                    "{} value maps for {} source sorts",
                    maps.len(),
                    self.source.num_sorts()
                )));
            }
            if !out.is_empty() {
                return out;
            }
        }

        let arities = self.checked_arities();
        // Per arity, the graph of φ_U as (target tuple, source tuple) pairs.
        let mut evaluated: Vec<Option<Vec<Graph>>> = Vec::new();
        for u in &arities {
            let fu = self.image_arity(u);
            if cap
                .check(self.target.power_size(&fu), "morphism validation")
                .is_err()
            {
                out.push(MorphismViolation::Malformed(format!(
                    "arity {} is too large to validate",
                    self.source.render_arity(u)
                )));
                evaluated.push(None);
                continue;
            }
            let mut graph = Vec::new();
            let mut ok = true;
            for y in self.target.power_iter(&fu) {
                match self.apply(u, &y) {
                    Ok(x)
                        if x.len() == u.len()
                            && x.iter()
                                .zip(u.sorts())
                                .all(|(&v, &a)| v < self.source.values(a).len()) =>
                    {
                        graph.push((y, x))
                    }
                    Ok(_) => {
                        out.push(MorphismViolation::Malformed(format!(
                            "map for arity {} yields a value outside the domain",
                            self.source.render_arity(u)
                        )));
                        ok = false;
                        break;
                    }
                    Err(e) => {
                        out.push(MorphismViolation::Malformed(e.to_string()));
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                if let Some(v) = self.monotone_violation(u, &fu, &graph) {
                    out.push(v);
                }
                evaluated.push(Some(graph));
            } else {
                evaluated.push(None);
            }
        }

        for (vi, v) in arities.iter().enumerate() {
            let Some(graph_v) = &evaluated[vi] else {
                continue;
            };
            let fv = self.image_arity(v);
            for (ui, u) in arities.iter().enumerate() {
                if ui == vi || !u.is_subset(v) {
                    continue;
                }
                let Some(graph_u) = &evaluated[ui] else {
                    continue;
                };
                let fu = self.image_arity(u);
                let lookup_u: HashMap<&Vec<usize>, &Vec<usize>> =
                    graph_u.iter().map(|(y, x)| (y, x)).collect();
                let pos_u_in_v = u.positions_in(v);
                let pos_fu_in_fv = fu.positions_in(&fv);
                for (y, x) in graph_v {
                    let left = project_values(x, &pos_u_in_v);
                    let right = lookup_u.get(&project_values(y, &pos_fu_in_fv));
                    if right.map(|r| **r != left).unwrap_or(true) {
                        out.push(MorphismViolation::NotNatural {
                            larger: self.source.render_arity(v),
                            smaller: self.source.render_arity(u),
                            witness: self.target.render_values(&fv, y),
                        });
                        break;
                    }
                }
            }
        }
        out
    }

    fn monotone_violation(
        &self,
        u: &Arity,
        fu: &Arity,
        graph: &[(Vec<usize>, Vec<usize>)],
    ) -> Option<MorphismViolation> {
        // Product order is generated by single-coordinate steps.
        let lookup: HashMap<&Vec<usize>, &Vec<usize>> = graph.iter().map(|(y, x)| (y, x)).collect();
        for (y, x) in graph {
            for (pos, &b) in fu.sorts().iter().enumerate() {
                for lower in self.target.values(b).strictly_below(y[pos]) {
                    let mut y_lo = y.clone();
                    y_lo[pos] = lower;
                    if let Some(x_lo) = lookup.get(&y_lo) {
                        if !self.source.values_leq(u, x_lo, x) {
                            return Some(MorphismViolation::NotMonotone {
                                arity: self.source.render_arity(u),
                                lower: self.target.render_values(fu, &y_lo),
                                upper: self.target.render_values(fu, y),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// `g ∘ self` for two componentwise morphisms `self: A -> B`, `g: B -> C`.
    pub fn then(&self, g: &DomainMorphism) -> Result<DomainMorphism> {
        if self.target != g.source {
            return Err(Error::input(
                "morphisms do not compose: target and source differ",
            ));
        }
        let (Family::Componentwise(first), Family::Componentwise(second)) =
            (&self.family, &g.family)
        else {
            return Err(Error::input(
                "composition is only provided for componentwise morphisms",
            ));
        };
        let sort_map = self.sort_map.iter().map(|&b| g.sort_map[b]).collect();
        let maps = first
            .iter()
            .enumerate()
            .map(|(a, m)| second[self.sort_map[a]].iter().map(|&v| m[v]).collect())
            .collect();
        DomainMorphism::new(
            self.source.clone(),
            g.target.clone(),
            sort_map,
            Family::Componentwise(maps),
        )
    }
}

/// Name of the single sort of the projection morphism's target.
pub const FULL_POWER_SORT: &str = "N";

/// `π_{N,D}: (N, D) -> (1, D^N)` with `φ_U = π_{N,U}`.
pub fn projection_morphism(dom: &SortedDomain, cap: Cap) -> Result<DomainMorphism> {
    let (power, _) = full_power_poset(dom, cap)?;
    let target = SortedDomain::new([(FULL_POWER_SORT, power)])?;
    DomainMorphism::new(
        dom.clone(),
        target,
        vec![0; dom.num_sorts()],
        Family::Projection,
    )
}

fn require_domain(expected: &SortedDomain, found: &SortedDomain, what: &str) -> Result<()> {
    if expected != found {
        return Err(Error::input(format!(
            "{what}: the relation's domain differs from the morphism's"
        )));
    }
    Ok(())
}

/// Renders a direct-image constraint `(e, U)`.
pub fn paired_name(dom: &SortedDomain, e: &str, u: &Arity) -> String {
    format!("({e},{})", dom.render_arity(u))
}

/// Pushes a relation over the target domain back to the source domain.
///
/// Constraints are the pairs `(e2, U)` with `f(U) = τ2(e2)`; the relation at
/// `(e2, U)` is the image `φ_U(R2_{e2})`. The pairs are ordered by `e2`, then
/// by `U` as a bit mask over the preimage sorts, and preordered by
/// `(e, U) <= (e', U')` iff `e <= e'` and `U ⊇ U'`.
pub fn direct_image(
    m: &DomainMorphism,
    r2: &DistributedRelation,
    cap: Cap,
) -> Result<DistributedRelation> {
    require_domain(&m.target, r2.domain(), "direct image")?;
    let sig2 = r2.signature();
    let mut entries: Vec<(usize, Arity)> = Vec::new();
    for e2 in 0..sig2.len() {
        let scheme = sig2.scheme(e2);
        let preimage: Vec<usize> = (0..m.source.num_sorts())
            .filter(|&a| scheme.contains(m.sort_map[a]))
            .collect();
        if preimage.len() > MAX_PREIMAGE_SORTS {
            return Err(Error::Capacity {
                what: format!("preimage subsets of constraint {}", sig2.name(e2)),
                needed: 1 << preimage.len().min(usize::BITS as usize - 1),
                cap: 1 << MAX_PREIMAGE_SORTS,
            });
        }
        for mask in 0..(1usize << preimage.len()) {
            let u = Arity::new(
                preimage
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &a)| a),
            );
            if &m.image_arity(&u) == scheme {
                entries.push((e2, u));
            }
        }
    }

    let names: Vec<String> = entries
        .iter()
        .map(|(e2, u)| paired_name(&m.source, sig2.name(*e2), u))
        .collect();
    let mut pairs = Vec::new();
    for (i, (ei, ui)) in entries.iter().enumerate() {
        for (j, (ej, uj)) in entries.iter().enumerate() {
            if i != j && sig2.constraints().leq(*ei, *ej) && uj.is_subset(ui) {
                pairs.push((i, j));
            }
        }
    }
    let constraints = Poset::from_pairs(names, &pairs)?;
    let mut relations = Vec::with_capacity(entries.len());
    for (e2, u) in &entries {
        let mut rel = Relation::empty(u.clone());
        for y in r2.relation(*e2).iter() {
            rel.insert(m.apply(u, y)?);
            cap.check(rel.len(), "direct image")?;
        }
        relations.push(rel);
    }
    let schemes = entries.into_iter().map(|(_, u)| u).collect();
    DistributedRelation::new(
        m.source.clone(),
        Signature::new(constraints, schemes)?,
        relations,
    )
}

/// Pulls a relation over the source domain forward to the target domain:
/// same constraints, schemes `f(τ1(e))`, relations `φ^{-1}(R1_e)`.
pub fn inverse_image(
    m: &DomainMorphism,
    r1: &DistributedRelation,
    cap: Cap,
) -> Result<DistributedRelation> {
    require_domain(&m.source, r1.domain(), "inverse image")?;
    let sig1 = r1.signature();
    let mut schemes = Vec::with_capacity(sig1.len());
    let mut relations = Vec::with_capacity(sig1.len());
    for e in 0..sig1.len() {
        let u = sig1.scheme(e);
        let fu = m.image_arity(u);
        cap.check(m.target.power_size(&fu), "inverse image")?;
        let mut rel = Relation::empty(fu.clone());
        for y in m.target.power_iter(&fu) {
            if r1.relation(e).contains(&m.apply(u, &y)?) {
                rel.insert(y);
            }
        }
        schemes.push(fu);
        relations.push(rel);
    }
    DistributedRelation::new(
        m.target.clone(),
        Signature::new(sig1.constraints().clone(), schemes)?,
        relations,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bools(sorts: &[&str]) -> SortedDomain {
        SortedDomain::uniform(sorts, &["f", "t"]).unwrap()
    }

    fn sample_network(dom: &SortedDomain) -> DistributedRelation {
        let u = dom.arity_of(&["a", "b"]).unwrap();
        let sig =
            Signature::discrete([("c", u.clone()), ("d", dom.arity_of(&["a"]).unwrap())]).unwrap();
        DistributedRelation::new(
            dom.clone(),
            sig,
            vec![
                Relation::new(u, [vec![0, 1], vec![1, 1]]).unwrap(),
                Relation::new(dom.arity_of(&["a"]).unwrap(), [vec![0]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_valid_and_inert() {
        let dom = bools(&["a", "b"]);
        let id = DomainMorphism::identity(&dom);
        assert!(id.validate(Cap::default()).is_empty());
        let net = sample_network(&dom);
        assert_eq!(inverse_image(&id, &net, Cap::default()).unwrap(), net);
        let direct = direct_image(&id, &net, Cap::default()).unwrap();
        assert_eq!(direct.signature().len(), 2);
        assert_eq!(direct.signature().name(0), "(c,{a,b})");
        assert_eq!(direct.relations(), net.relations());
    }

    #[test]
    fn corrupted_square_is_reported() {
        let dom = bools(&["a"]);
        let full = dom.full_arity();
        let mut tables = BTreeMap::new();
        tables.insert(Arity::empty(), HashMap::from([(vec![], vec![])]));
        // A constant map on the only nonempty arity is still natural.
        tables.insert(
            full.clone(),
            HashMap::from([(vec![0], vec![0]), (vec![1], vec![0])]),
        );
        let ok = DomainMorphism::new(dom.clone(), dom.clone(), vec![0], Family::Explicit(tables))
            .unwrap();
        assert!(ok.validate(Cap::default()).is_empty());

        // Identity on {a,b} but constant on {a}: the square for {a} ⊆ {a,b} breaks.
        let two = bools(&["a", "b"]);
        let mut t2 = BTreeMap::new();
        t2.insert(
            two.full_arity(),
            two.power_iter(&two.full_arity())
                .map(|y| (y.clone(), y))
                .collect::<HashMap<_, _>>(),
        );
        let bad_a: HashMap<Vec<usize>, Vec<usize>> =
            HashMap::from([(vec![0], vec![0]), (vec![1], vec![0])]);
        t2.insert(two.arity_of(&["a"]).unwrap(), bad_a);
        let bad = DomainMorphism::new(two.clone(), two, vec![0, 1], Family::Explicit(t2)).unwrap();
        let report = bad.validate(Cap::default());
        assert_eq!(report.len(), 1);
        match &report[0] {
            MorphismViolation::NotNatural {
                larger,
                smaller,
                witness,
            } => {
                assert_eq!(larger, "{a,b}");
                assert_eq!(smaller, "{a}");
                assert!(witness.starts_with("(t,"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_arity_is_an_input_error() {
        let dom = bools(&["a"]);
        let m = DomainMorphism::new(
            dom.clone(),
            dom.clone(),
            vec![0],
            Family::Explicit(BTreeMap::new()),
        )
        .unwrap();
        let sig = Signature::discrete([("c", dom.full_arity())]).unwrap();
        let net =
            DistributedRelation::new(dom.clone(), sig, vec![Relation::empty(dom.full_arity())])
                .unwrap();
        assert!(matches!(
            inverse_image(&m, &net, Cap::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn projection_morphism_shapes() {
        let dom = bools(&["a", "b", "c"]);
        let p = projection_morphism(&dom, Cap::default()).unwrap();
        assert_eq!(p.target().values(0).len(), 8);
        assert!(p.validate(Cap::default()).is_empty());
        assert_eq!(p.apply(&Arity::empty(), &[]).unwrap(), Vec::<usize>::new());
        let single = bools(&["a"]);
        let p1 = projection_morphism(&single, Cap::default()).unwrap();
        for v in 0..2 {
            assert_eq!(p1.apply(&single.full_arity(), &[v]).unwrap(), vec![v]);
        }
        assert!(projection_morphism(&dom, Cap(7)).is_err());
    }

    #[test]
    fn injective_sort_map_gives_one_pair_per_constraint() {
        let src = bools(&["a"]);
        let tgt = bools(&["x", "y"]);
        let m = DomainMorphism::new(
            src.clone(),
            tgt.clone(),
            vec![1],
            Family::Componentwise(vec![vec![0, 1]]),
        )
        .unwrap();
        let sig = Signature::discrete([
            ("c", tgt.arity_of(&["y"]).unwrap()),
            ("d", tgt.full_arity()),
        ])
        .unwrap();
        let net = DistributedRelation::new(
            tgt.clone(),
            sig,
            vec![
                Relation::new(tgt.arity_of(&["y"]).unwrap(), [vec![1]]).unwrap(),
                Relation::empty(tgt.full_arity()),
            ],
        )
        .unwrap();
        let img = direct_image(&m, &net, Cap::default()).unwrap();
        // `d` has scheme {x,y}, which is not f of any subset of {a}.
        assert_eq!(img.signature().len(), 1);
        assert_eq!(img.signature().name(0), "(c,{a})");
        assert!(img.relation(0).contains(&[1]));
    }

    #[test]
    fn composition_of_identities() {
        let dom = bools(&["a", "b"]);
        let id = DomainMorphism::identity(&dom);
        assert_eq!(id.then(&id).unwrap(), id);
    }
}
