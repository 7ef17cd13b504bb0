mod common;

use common::*;
use depind::decide::validity;
use depind::generate::{random_formula, seeded_rng};
use depind::kripke_semantics::{det_check, truth_function, Evaluator};
use depind::proof_system::{instantiate_axiom, match_axiom, schema, Arity, AxiomId, AxiomSystemId, Substitution};
use depind::team_semantics::{eval_team, SplitStrategy, TeamEvaluator};
use depind::{parse, Formula, Fragment, SdModel, Symbol, World};
use proptest::prelude::*;

fn pqr() -> Vec<Symbol> {
    ["p", "q", "r"].iter().map(|s| Symbol::from(*s)).collect()
}

fn formula(seed: u64, fr: Fragment, size: usize) -> Formula {
    random_formula(&mut seeded_rng(seed), fr, &pqr(), size)
}

/// The model over {p,q,r} whose worlds are the set bits of `mask`.
fn model(mask: u8) -> SdModel {
    let worlds = (0..8u32).filter(|w| mask >> w & 1 == 1).map(World).collect();
    SdModel::new(sig(&["p", "q", "r"]), worlds).unwrap()
}

const ALL_FRAGMENTS: [Fragment; 8] = Fragment::ALL;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity(seed: u64, which in 0..ALL_FRAGMENTS.len()) {
        let fr = ALL_FRAGMENTS[which];
        let phi = formula(seed, fr, 10);
        let back = parse(&phi.to_string(), fr).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn extra_symbols_do_not_matter(seed: u64, mask: u8, which in 0..3usize) {
        let fr = [Fragment::LD, Fragment::LI, Fragment::LU][which];
        let phi = formula(seed, fr, 8);
        let m = model(mask);
        let wide = m.widen(&sig(&["p", "q", "r", "s"])).unwrap();
        prop_assert_eq!(Evaluator::new(&m).eval(&phi).to_vec(), Evaluator::new(&wide).eval(&phi).to_vec());
    }

    #[test]
    fn partition_splits_agree_on_downward_closed_formulas(seed: u64, mask: u8) {
        let phi = formula(seed, Fragment::TEAM_D, 8);
        let m = model(mask);
        let general = eval_team(&m, &phi, Fragment::TEAM_D, SplitStrategy::General).unwrap();
        let partition = eval_team(&m, &phi, Fragment::TEAM_D, SplitStrategy::Partition).unwrap();
        prop_assert_eq!(general, partition);
        prop_assert_eq!(general, team_full(&m, &phi));
    }

    #[test]
    fn empty_team_satisfies_everything(seed: u64, mask: u8, independence: bool) {
        let fr = if independence { Fragment::TEAM_I } else { Fragment::TEAM_D };
        let phi = formula(seed, fr, 8);
        let m = model(mask);
        let mut ev = TeamEvaluator::new(&m, SplitStrategy::General).unwrap();
        prop_assert!(ev.sat(&phi, 0));
    }

    #[test]
    fn team_evaluator_matches_reference_on_every_subteam(seed: u64, mask: u8, team_bits: u8) {
        let phi = formula(seed, Fragment::TEAM_I, 7);
        let m = model(mask);
        let n = m.len();
        let bits = u32::from(team_bits) & ((1u32 << n) - 1);
        let members: Vec<usize> = (0..n).filter(|w| bits >> w & 1 == 1).collect();
        let mut ev = TeamEvaluator::new(&m, SplitStrategy::General).unwrap();
        prop_assert_eq!(ev.sat(&phi, bits), team(&m, &members, &phi));
    }

    #[test]
    fn kripke_evaluator_matches_reference(seed: u64, mask: u8, which in 0..4usize) {
        let fr = [Fragment::LD, Fragment::LI, Fragment::LU, Fragment::LD_REL][which];
        let phi = formula(seed, fr, 9);
        let m = model(mask);
        prop_assert_eq!(Evaluator::new(&m).eval(&phi).to_vec(), kripke(&m, &phi));
    }

    #[test]
    fn global_operators_are_constant(seed: u64, mask: u8) {
        let body = formula(seed, Fragment::LD, 6);
        let m = model(mask);
        for phi in [Formula::constancy(body.clone()), Formula::ubox(body.clone()), Formula::dep(vec![body.clone()], Formula::prop("p"))] {
            let v = Evaluator::new(&m).eval(&phi).to_vec();
            prop_assert!(v.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn det_check_matches_dependence_atom(seeds: [u64; 3], mask: u8) {
        let m = model(mask);
        let fs: Vec<Formula> = seeds.iter().map(|s| formula(*s, Fragment::LC, 5)).collect();
        let premises: Vec<_> = fs[..2].iter().map(|f| truth_function(&m, f)).collect();
        let target = truth_function(&m, &fs[2]);
        let atom = Formula::dep(fs[..2].to_vec(), fs[2].clone());
        let expected = m.is_empty() || kripke(&m, &atom)[0];
        prop_assert_eq!(det_check(&premises, &target).unwrap(), expected);
    }

    #[test]
    fn necessitation_and_equivalence_rules_preserve_validity(seed: u64) {
        let phi = formula(seed, Fragment::LC, 6);
        if validity(&phi, Fragment::LC).unwrap().result {
            prop_assert!(validity(&Formula::constancy(phi.clone()), Fragment::LC).unwrap().result);
        }
        let eqc = Formula::iff(Formula::constancy(phi.clone()), Formula::constancy(Formula::not(phi)));
        prop_assert!(validity(&eqc, Fragment::LC).unwrap().result);
    }

    #[test]
    fn axiom_instances_match_back(seed: u64, which in 0..AxiomId::ALL.len(), k in 1..3usize, m in 0..2usize, n in 1..3usize) {
        let id = AxiomId::ALL[which];
        let system = *AxiomSystemId::ALL.iter().find(|s| s.axioms().contains(&id)).unwrap();
        let arity = match id {
            AxiomId::AxDk => Arity::k(k),
            AxiomId::AxIkmn => Arity::kmn(k, m, n),
            _ => Arity::default(),
        };
        let names = schema(id, arity).unwrap().metavars;
        let mut rng = seeded_rng(seed);
        let sub: Substitution = names
            .into_iter()
            .map(|v| (v, random_formula(&mut rng, system.fragment(), &pqr(), 3)))
            .collect();
        let instance = instantiate_axiom(system, id, &sub, arity).unwrap();
        let (got_arity, got_sub) = match_axiom(id, &instance).expect("instance matches its schema");
        prop_assert_eq!(got_arity, arity);
        prop_assert_eq!(got_sub, sub);
    }
}
