//! Property checks shared by the property tests and the acceptance runner.
//! Each takes one generated case and fails with a description of the witness.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use conlat::{
    context_direct_image, context_inverse_image, inverse_image, natural_join, project_solution,
    projection_morphism, projective_containment, satisfaction_context, solution_set, to_context,
    Arity, ConceptLattice, ContextViolation, DistributedRelation, FormalContext, ObjectMap, Poset,
    Relation, SubLattice, TupleMode,
};

use super::*;

pub const CASES: u32 = 1000;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn is_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.is_subset(b)
}

// (a) -----------------------------------------------------------------------

/// `ψ ⊆ φ′ ⟺ φ ⊆ ψ′`, plus the closure laws on both sides.
pub fn galois_law(
    (ctx, objs, attrs): (FormalContext, FixedBitSet, FixedBitSet),
) -> Result<(), TestCaseError> {
    let phi_d = ctx.derive_intent(&objs);
    let psi_d = ctx.derive_extent(&attrs);
    prop_assert_eq!(is_subset(&attrs, &phi_d), is_subset(&objs, &psi_d));

    let ext = ctx.extent_closure(&objs);
    prop_assert!(is_subset(&objs, &ext), "extent closure is not extensive");
    prop_assert_eq!(ctx.extent_closure(&ext), ext.clone());
    let hull = ctx.intent_hull(&attrs);
    prop_assert!(is_subset(&attrs, &hull), "intent hull is not extensive");
    prop_assert_eq!(ctx.intent_hull(&hull), hull);
    // φ′ = φ′′′
    prop_assert_eq!(ctx.derive_intent(&ext), phi_d);
    Ok(())
}

/// The lattice holds exactly the brute-force concepts, in strictly
/// increasing lectic order of intents, with a correct cover relation.
pub fn lattice_matches_oracle(ctx: FormalContext) -> Result<(), TestCaseError> {
    let lat = ConceptLattice::build(ctx.clone());
    let got: BTreeSet<(Vec<usize>, Vec<usize>)> = lat
        .concepts()
        .iter()
        .map(|c| (c.extent.ones().collect(), c.intent.ones().collect()))
        .collect();
    prop_assert_eq!(got.len(), lat.len(), "duplicate concepts");
    prop_assert_eq!(&got, &brute_concepts(&ctx));

    let nm = ctx.num_attributes();
    let code = |i: usize| -> u64 {
        lat.concept(i)
            .intent
            .ones()
            .map(|m| 1u64 << (nm - 1 - m))
            .sum()
    };
    for i in 1..lat.len() {
        prop_assert!(code(i - 1) < code(i), "not in lectic order at {}", i);
    }
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            let ext_le = lat.concept(i).extent.is_subset(&lat.concept(j).extent);
            prop_assert_eq!(lat.leq(i, j), ext_le);
            if lat.leq(i, j) {
                prop_assert!(j <= i, "order matrix is not lower triangular");
            }
            let strictly = i != j && ext_le;
            let between =
                (0..lat.len()).any(|k| k != i && k != j && lat.leq(i, k) && lat.leq(k, j));
            prop_assert_eq!(lat.upper_covers(i).contains(&j), strictly && !between);
        }
    }
    Ok(())
}

// (b) -----------------------------------------------------------------------

/// `π P <= R ⟺ P ⊆ Π R`, `P ⊆ Π π P`, and `π Π R <= R`.
pub fn projection_solution_adjunction(
    (r, p): (DistributedRelation, Relation),
) -> Result<(), TestCaseError> {
    let dom = r.domain();
    let pi_p = project_solution(dom, &p, r.signature()).unwrap();
    let big_pi_r = solution_set(&r, cap()).unwrap();
    prop_assert_eq!(pi_p.pointwise_leq(&r), p.is_subset(&big_pi_r));

    let unit = solution_set(&pi_p, cap()).unwrap();
    prop_assert!(p.is_subset(&unit), "P is not below Π π P");
    let counit = project_solution(dom, &big_pi_r, r.signature()).unwrap();
    prop_assert!(counit.pointwise_leq(&r), "π Π R is not below R");

    let oracle: BTreeSet<Vec<usize>> = big_pi_r.iter().cloned().collect();
    prop_assert_eq!(oracle, brute_solutions(&r));
    Ok(())
}

// (c) -----------------------------------------------------------------------

/// The interior is idempotent, keeps the solution set, matches the oracle,
/// and no tuple of it can be dropped without losing a solution.
pub fn interior_laws(r: DistributedRelation) -> Result<(), TestCaseError> {
    let inner = conlat::interior(&r, cap()).unwrap();
    prop_assert_eq!(&conlat::interior(&inner, cap()).unwrap(), &inner);
    prop_assert!(inner.pointwise_leq(&r));

    let sols = brute_solutions(&r);
    prop_assert_eq!(&brute_solutions(&inner), &sols);
    prop_assert!(conlat::equivalent(&r, &inner, cap()).unwrap());

    let oracle = brute_interior(&r);
    for (e, want) in oracle.iter().enumerate() {
        let got: BTreeSet<Vec<usize>> = inner.relation(e).iter().cloned().collect();
        prop_assert_eq!(&got, want, "constraint {}", e);
    }

    for e in 0..inner.signature().len() {
        for t in inner.relation(e).iter() {
            let mut rels = inner.relations().to_vec();
            let smaller: Vec<Vec<usize>> = rels[e].iter().filter(|u| *u != t).cloned().collect();
            rels[e] = Relation::new(rels[e].arity().clone(), smaller).unwrap();
            let thinner = inner.with_relations(rels).unwrap();
            prop_assert!(
                brute_solutions(&thinner).len() < sols.len(),
                "dropping {:?} from constraint {} keeps every solution",
                t,
                e
            );
        }
    }
    Ok(())
}

// (d) -----------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ImageCase {
    pub ctx: FormalContext,
    pub map: ObjectMap,
    pub other: FormalContext,
}

pub fn arb_image_case() -> impl Strategy<Value = ImageCase> {
    (arb_context(), 1..=5usize).prop_flat_map(|(ctx, k)| {
        let ng = ctx.num_objects();
        let nm = ctx.num_attributes();
        (
            Just(ctx),
            Just(k),
            prop::collection::vec(0..k, ng),
            prop::collection::vec(any::<bool>(), k * nm),
        )
            .prop_map(|(ctx, k, map, cells)| {
                let nm = ctx.num_attributes();
                let target = Poset::discrete((0..k).map(|i| format!("h{i}"))).unwrap();
                let pairs: Vec<(usize, usize)> = (0..k * nm)
                    .filter(|&i| cells[i])
                    .map(|i| (i / nm, i % nm))
                    .collect();
                let other =
                    FormalContext::new(target.clone(), ctx.attributes().clone(), pairs).unwrap();
                let map = ObjectMap::new(ctx.objects().clone(), target, map).unwrap();
                ImageCase { ctx, map, other }
            })
    })
}

/// Direct image is left adjoint to inverse image on incidences.
pub fn context_image_laws(c: ImageCase) -> Result<(), TestCaseError> {
    let direct = context_direct_image(&c.map, &c.ctx).unwrap();
    let back = context_inverse_image(&c.map, &direct).unwrap();
    prop_assert!(c.ctx.incidence_subset_of(&back), "unit fails");
    let pulled = context_inverse_image(&c.map, &c.other).unwrap();
    let pushed = context_direct_image(&c.map, &pulled).unwrap();
    prop_assert!(pushed.incidence_subset_of(&c.other), "counit fails");
    prop_assert_eq!(
        direct.incidence_subset_of(&c.other),
        c.ctx.incidence_subset_of(&pulled)
    );
    Ok(())
}

// (e) -----------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct JoinCase {
    pub r: DistributedRelation,
    /// Extra sorts added to the union arity for the probe relation.
    pub extra: u32,
    pub probe_bits: Vec<bool>,
}

pub fn arb_join_case() -> impl Strategy<Value = JoinCase> {
    (
        arb_network(),
        any::<u32>(),
        prop::collection::vec(prop::bool::weighted(0.5), 81),
    )
        .prop_map(|(r, extra, probe_bits)| JoinCase {
            r,
            extra,
            probe_bits,
        })
}

fn project_onto(t: &[usize], from: &Arity, onto: &Arity) -> Vec<usize> {
    onto.sorts()
        .iter()
        .map(|a| t[from.sorts().iter().position(|b| b == a).unwrap()])
        .collect()
}

/// The join is below every input, equals the brute-force join, and any
/// relation below every input is below the join.
pub fn join_is_infimum(c: JoinCase) -> Result<(), TestCaseError> {
    let dom = c.r.domain();
    let rels: Vec<&Relation> = c.r.relations().iter().collect();
    let join = natural_join(&rels, cap()).unwrap();
    let union = rels
        .iter()
        .fold(Arity::empty(), |acc, r| acc.union(r.arity()));
    prop_assert_eq!(join.arity(), &union);
    for r in &rels {
        prop_assert!(projective_containment(&join, r));
    }
    let below_all = |t: &[usize], over: &Arity| {
        rels.iter()
            .all(|r| r.contains(&project_onto(t, over, r.arity())))
    };
    let oracle: BTreeSet<Vec<usize>> = brute_power(dom, &union)
        .into_iter()
        .filter(|t| below_all(t, &union))
        .collect();
    let got: BTreeSet<Vec<usize>> = join.iter().cloned().collect();
    prop_assert_eq!(got, oracle);

    let n = dom.num_sorts();
    let wider = union.union(&Arity::new((0..n).filter(|a| c.extra & (1 << a) != 0)));
    let probe_all: Vec<Vec<usize>> = brute_power(dom, &wider)
        .into_iter()
        .zip(c.probe_bits.iter().cycle())
        .filter(|(_, &b)| b)
        .map(|(t, _)| t)
        .collect();
    let fitted: Vec<Vec<usize>> = probe_all
        .iter()
        .filter(|t| join.contains(&project_onto(t, &wider, &union)))
        .cloned()
        .collect();
    for probe in [probe_all, fitted] {
        let s = Relation::new(wider.clone(), probe).unwrap();
        let under_each = rels.iter().all(|r| projective_containment(&s, r));
        prop_assert_eq!(under_each, projective_containment(&s, &join));
    }
    Ok(())
}

/// Tuples over `u` by odometer, independent of the library's iterator.
pub fn brute_power(dom: &SortedDomain, u: &Arity) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &a in u.sorts() {
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

// (f) -----------------------------------------------------------------------

/// Satisfaction is closed downward in the tuple order and upward in the
/// constraint preorder, in both tuple modes; full-mode incidence matches
/// the oracle.
pub fn satisfaction_respects_orders(r: DistributedRelation) -> Result<(), TestCaseError> {
    let sig = r.signature();
    for mode in [TupleMode::Full, TupleMode::All] {
        let ctx = satisfaction_context(&r, mode, cap()).unwrap();
        // Constraint preorders may have cycles; only the closure conditions matter here.
        let broken: Vec<_> = ctx
            .validate()
            .into_iter()
            .filter(|v| !matches!(v, ContextViolation::Antisymmetry { .. }))
            .collect();
        prop_assert!(broken.is_empty(), "{:?}", broken);
        let objects = ctx.objects();
        for x in 0..ctx.num_objects() {
            for e in 0..sig.len() {
                if !ctx.has(x, e) {
                    continue;
                }
                for y in 0..ctx.num_objects() {
                    if objects.leq(y, x) {
                        prop_assert!(
                            ctx.has(y, e),
                            "{} <= {} but only the latter satisfies {}",
                            objects.name(y),
                            objects.name(x),
                            sig.name(e)
                        );
                    }
                }
                for f in 0..sig.len() {
                    if sig.constraints().leq(e, f) {
                        prop_assert!(
                            ctx.has(x, f),
                            "{} satisfies {} but not {}",
                            objects.name(x),
                            sig.name(e),
                            sig.name(f)
                        );
                    }
                }
            }
        }
        if matches!(mode, TupleMode::Full) {
            let tuples = brute_full_tuples(r.domain());
            prop_assert_eq!(tuples.len(), ctx.num_objects());
            for (x, t) in tuples.iter().enumerate() {
                for e in 0..sig.len() {
                    prop_assert_eq!(ctx.has(x, e), brute_satisfies(&r, t, e));
                }
            }
        }
    }
    Ok(())
}

// Projection identity and participation ---------------------------------------------------

/// The inverse image along the projection morphism, read as a context, is
/// the satisfaction context.
pub fn projection_identity_holds(r: &DistributedRelation) -> Result<(), TestCaseError> {
    let m = projection_morphism(r.domain(), cap()).unwrap();
    prop_assert!(m.validate(cap()).is_empty());
    let lifted = inverse_image(&m, r, cap()).unwrap();
    let via_morphism = to_context(&lifted).unwrap();
    let direct = satisfaction_context(r, TupleMode::Full, cap()).unwrap();
    prop_assert_eq!(via_morphism, direct);
    Ok(())
}

/// With every concept emphasized, participation is the original incidence.
pub fn full_participation_is_identity(ctx: FormalContext) -> Result<(), TestCaseError> {
    let lat = ConceptLattice::build(ctx.clone());
    let full = SubLattice::full(&lat);
    prop_assert!(full.adjointness_failures().is_empty());
    prop_assert_eq!(
        conlat::participation_context(&ctx, &lat, &full).unwrap(),
        ctx
    );
    Ok(())
}

/// Every principal ideal is an emphasized suborder, and its participation
/// context sits inside the original.
pub fn ideals_are_emphasized(ctx: FormalContext) -> Result<(), TestCaseError> {
    let lat = ConceptLattice::build(ctx.clone());
    for c in 0..lat.len() {
        let ideal = SubLattice::principal_ideal(&lat, c).unwrap();
        prop_assert!(ideal.adjointness_failures().is_empty());
        let members = ideal.members();
        prop_assert!(SubLattice::from_members(&lat, &members).is_ok());
        let cp = conlat::participation_context(&ctx, &lat, &ideal).unwrap();
        prop_assert!(cp.incidence_subset_of(&ctx));
    }
    Ok(())
}

pub fn satisfaction_of(r: DistributedRelation) -> FormalContext {
    satisfaction_context(&r, TupleMode::Full, cap()).unwrap()
}
