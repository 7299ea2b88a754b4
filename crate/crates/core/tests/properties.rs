mod common;

use proptest::prelude::*;

use common::props::{self, CASES};
use common::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn derivations_form_a_galois_connection(case in arb_context_with_sets()) {
        props::galois_law(case)?;
    }

    #[test]
    fn lattice_agrees_with_brute_force(ctx in arb_context()) {
        props::lattice_matches_oracle(ctx)?;
    }

    #[test]
    fn satisfaction_lattice_agrees_with_brute_force(r in arb_distributed()) {
        props::lattice_matches_oracle(props::satisfaction_of(r))?;
    }

    #[test]
    fn projection_is_left_adjoint_to_solution(case in arb_network_with_candidates()) {
        props::projection_solution_adjunction(case)?;
    }

    #[test]
    fn interior_is_idempotent_equivalent_and_minimal(r in arb_network()) {
        props::interior_laws(r)?;
    }

    #[test]
    fn context_images_are_adjoint(case in props::arb_image_case()) {
        props::context_image_laws(case)?;
    }

    #[test]
    fn natural_join_is_the_infimum(case in props::arb_join_case()) {
        props::join_is_infimum(case)?;
    }

    #[test]
    fn satisfaction_respects_tuple_and_constraint_orders(r in arb_distributed()) {
        props::satisfaction_respects_orders(r)?;
    }
}
