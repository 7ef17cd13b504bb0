//! Brute-force decision procedures over all models of a small signature.
//!
//! Every procedure enumerates the models over the symbols the formulas
//! mention (the reserved `_t` excluded; it is false everywhere). The
//! Kripke-style languages are local, so this decides validity outright.
//! For the team fragments the same restriction is an assumption, checked
//! by the integration tests.
//!
//! Scans walk [`ModelSpace`] indices in order and report the first
//! failure, so countermodels are reproducible. A [`Decider`] with more
//! than one job splits the index range into contiguous chunks on scoped
//! threads and keeps the lowest-index hit.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::generate::enumerate_formulas;
use crate::kripke_semantics::Evaluator;
use crate::models::{restrict, ModelSpace, SdModel, Signature, World, MAX_MODEL_SIGNATURE};
use crate::syntax::{props_of, validate_fragment, Formula, Fragment, RESERVED};
use crate::team_semantics::{SplitStrategy, TeamEvaluator};

/// Largest signature accepted by [`defining_formula`].
pub const MAX_CLASS_SIGNATURE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub result: bool,
    /// Countermodel for an invalid or inequivalent verdict, model for a
    /// satisfiable one. The world index is absent for team verdicts.
    pub witness: Option<(SdModel, Option<usize>)>,
}

impl Verdict {
    fn holds() -> Verdict {
        Verdict { result: true, witness: None }
    }

    fn fails(w: Option<(SdModel, Option<usize>)>) -> Verdict {
        Verdict { result: false, witness: w }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBudget {
    pub signature: Signature,
    pub max_size: usize,
}

impl EnumBudget {
    pub fn new(signature: Signature, max_size: usize) -> Result<EnumBudget> {
        if signature.len() > MAX_MODEL_SIGNATURE {
            return Err(Error::Guard(format!(
                "budget signature has {} symbols, limit is {MAX_MODEL_SIGNATURE}",
                signature.len()
            )));
        }
        if max_size == 0 || signature.is_empty() {
            return Err(Error::Precondition("budget needs a symbol and a positive size".into()));
        }
        Ok(EnumBudget { signature, max_size })
    }
}

/// Enumeration signature for a group of formulas.
pub fn signature_of(formulas: &[&Formula]) -> Signature {
    let mut set = BTreeSet::new();
    for f in formulas {
        set.extend(f.props());
    }
    set.remove(RESERVED);
    Signature::from_sorted_set(set)
}

fn validate(phi: &Formula, fragment: Fragment) -> Result<()> {
    validate_fragment(phi, fragment).map_err(|violations| Error::Fragment { fragment, violations })
}

/// Narrowest strategy that is exact for `phi`: partitions suffice for
/// downward-closed formulas and allow larger teams.
fn strategy_for(phi: &Formula) -> SplitStrategy {
    if validate_fragment(phi, Fragment::TEAM_D).is_ok() {
        SplitStrategy::Partition
    } else {
        SplitStrategy::General
    }
}

fn team_sat(w: &SdModel, phi: &Formula) -> Result<bool> {
    let mut ev = TeamEvaluator::new(w, strategy_for(phi))?;
    let team = ev.full_team();
    Ok(ev.sat(phi, team))
}

/// Runs the scans; `jobs` is the number of worker threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decider {
    pub jobs: usize,
}

impl Default for Decider {
    fn default() -> Self {
        Decider { jobs: 1 }
    }
}

type Hit<T> = Result<Option<T>>;

impl Decider {
    pub fn new(jobs: usize) -> Decider {
        Decider { jobs: jobs.max(1) }
    }

    /// Smallest `i < count` for which `probe(i)` is a hit or an error.
    pub fn find_first<T, F>(&self, count: usize, probe: F) -> Result<Option<(usize, T)>>
    where
        T: Send,
        F: Fn(usize) -> Hit<T> + Sync,
    {
        let jobs = self.jobs.clamp(1, count.max(1));
        if jobs == 1 {
            for i in 0..count {
                if let Some(t) = probe(i)? {
                    return Ok(Some((i, t)));
                }
            }
            return Ok(None);
        }
        let best = AtomicUsize::new(usize::MAX);
        let chunk = count.div_ceil(jobs);
        let found: Vec<(usize, Hit<T>)> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let (probe, best) = (&probe, &best);
                    s.spawn(move || {
                        for i in j * chunk..((j + 1) * chunk).min(count) {
                            if i >= best.load(Ordering::Relaxed) {
                                break;
                            }
                            match probe(i) {
                                Ok(None) => {}
                                other => {
                                    best.fetch_min(i, Ordering::Relaxed);
                                    return Some((i, other));
                                }
                            }
                        }
                        None
                    })
                })
                .collect();
            handles.into_iter().filter_map(|h| h.join().expect("scan worker panicked")).collect()
        });
        match found.into_iter().min_by_key(|(i, _)| *i) {
            None => Ok(None),
            Some((i, hit)) => Ok(hit?.map(|t| (i, t))),
        }
    }

    /// `W ⊨ φ` for every model over the symbols of `φ`. Team fragments are
    /// forwarded to [`Decider::team_validity`].
    pub fn validity(&self, phi: &Formula, fragment: Fragment) -> Result<Verdict> {
        if fragment.is_team() {
            return self.team_validity(phi, fragment);
        }
        validate(phi, fragment)?;
        let space = ModelSpace::new(&signature_of(&[phi]))?;
        let hit = self.find_first(space.count(), |i| {
            let w = space.model(i);
            let v = Evaluator::new(&w).eval(phi);
            Ok(v.first_zero().map(|world| (w, Some(world))))
        })?;
        Ok(hit.map_or_else(Verdict::holds, |(_, w)| Verdict::fails(Some(w))))
    }

    pub fn team_validity(&self, phi: &Formula, fragment: Fragment) -> Result<Verdict> {
        if !fragment.is_team() {
            return Err(Error::Unsupported(format!("{fragment} is not a team fragment")));
        }
        validate(phi, fragment)?;
        let space = ModelSpace::new(&signature_of(&[phi]))?;
        let hit = self.find_first(space.count(), |i| {
            let w = space.model(i);
            Ok((!team_sat(&w, phi)?).then_some(w))
        })?;
        Ok(hit.map_or_else(Verdict::holds, |(_, w)| Verdict::fails(Some((w, None)))))
    }

    /// Some nonempty model (and world, for the Kripke-style languages)
    /// satisfies `φ`.
    pub fn satisfiable(&self, phi: &Formula, fragment: Fragment) -> Result<Verdict> {
        validate(phi, fragment)?;
        let space = ModelSpace::new(&signature_of(&[phi]))?;
        let hit = self.find_first(space.count(), |i| {
            let w = space.model(i);
            if w.is_empty() {
                return Ok(None);
            }
            if fragment.is_team() {
                return Ok(team_sat(&w, phi)?.then_some((w, None)));
            }
            let first = Evaluator::new(&w).eval(phi).iter_ones().next();
            Ok(first.map(|world| (w, Some(world))))
        })?;
        Ok(match hit {
            Some((_, w)) => Verdict { result: true, witness: Some(w) },
            None => Verdict { result: false, witness: None },
        })
    }

    /// Pointwise equivalence for the Kripke-style languages, model-wise
    /// equivalence for the team fragments.
    pub fn equivalent(&self, phi: &Formula, psi: &Formula, fragment: Fragment) -> Result<Verdict> {
        validate(phi, fragment)?;
        validate(psi, fragment)?;
        let space = ModelSpace::new(&signature_of(&[phi, psi]))?;
        let hit = self.find_first(space.count(), |i| {
            let w = space.model(i);
            if fragment.is_team() {
                return Ok((team_sat(&w, phi)? != team_sat(&w, psi)?).then_some((w, None)));
            }
            let mut ev = Evaluator::new(&w);
            let (a, b) = (ev.eval(phi), ev.eval(psi));
            let differs = (0..w.len()).find(|&k| a.get(k) != b.get(k));
            Ok(differs.map(|world| (w, Some(world))))
        })?;
        Ok(hit.map_or_else(Verdict::holds, |(_, w)| Verdict::fails(Some(w))))
    }

    /// `W ⊩ φ_team` iff `W ⊨ ψ_kripke` on every model.
    pub fn team_vs_kripke(&self, phi_team: &Formula, psi_kripke: &Formula) -> Result<Verdict> {
        let sig = signature_of(&[phi_team, psi_kripke]);
        self.team_vs_kripke_on(phi_team, psi_kripke, &sig)
    }

    fn team_vs_kripke_on(&self, phi: &Formula, psi: &Formula, sig: &Signature) -> Result<Verdict> {
        validate(phi, Fragment::TEAM_I).or_else(|_| validate(phi, Fragment::TEAM_D))?;
        let space = ModelSpace::new(sig)?;
        let hit = self.find_first(space.count(), |i| {
            let w = space.model(i);
            let differs = team_sat(&w, phi)? != Evaluator::new(&w).eval(psi).all();
            Ok(differs.then_some(w))
        })?;
        Ok(hit.map_or_else(Verdict::holds, |(_, w)| Verdict::fails(Some((w, None)))))
    }

    /// First formula of `source` within `budget` that is team/global
    /// equivalent to `target`, if any. Only the independence fragment is
    /// supported as a source.
    pub fn inexpressibility_scan(
        &self,
        target: &Formula,
        budget: &EnumBudget,
        source: Fragment,
    ) -> Result<Option<Formula>> {
        if source != Fragment::TEAM_I {
            return Err(Error::Unsupported(format!("inexpressibility scans take source fragment i, not {source}")));
        }
        validate(target, Fragment::LD)?;
        let sig = budget.signature.union(&signature_of(&[target]));
        ModelSpace::new(&sig)?;
        let corpus = enumerate_formulas(source, budget.signature.symbols(), budget.max_size)?;
        let serial = Decider::default();
        let hit = self.find_first(corpus.len(), |i| {
            Ok(serial.team_vs_kripke_on(&corpus[i], target, &sig)?.result.then_some(()))
        })?;
        Ok(hit.map(|(i, ())| corpus[i].clone()))
    }
}

pub fn validity(phi: &Formula, fragment: Fragment) -> Result<Verdict> {
    Decider::default().validity(phi, fragment)
}

pub fn team_validity(phi: &Formula, fragment: Fragment) -> Result<Verdict> {
    Decider::default().team_validity(phi, fragment)
}

pub fn satisfiable(phi: &Formula, fragment: Fragment) -> Result<Verdict> {
    Decider::default().satisfiable(phi, fragment)
}

pub fn equivalent(phi: &Formula, psi: &Formula, fragment: Fragment) -> Result<Verdict> {
    Decider::default().equivalent(phi, psi, fragment)
}

pub fn team_vs_kripke(phi_team: &Formula, psi_kripke: &Formula) -> Result<Verdict> {
    Decider::default().team_vs_kripke(phi_team, psi_kripke)
}

pub fn inexpressibility_scan(target: &Formula, budget: &EnumBudget, source: Fragment) -> Result<Option<Formula>> {
    Decider::default().inexpressibility_scan(target, budget, source)
}

/// The full conjunction of literals over `phi` true at `w`; `#T` if `phi`
/// is empty.
fn world_type(w: World, phi: &Signature) -> Formula {
    Formula::conj_all(phi.symbols().iter().enumerate().map(|(i, s)| {
        let p = Formula::sym(s);
        if w.get(i) {
            p
        } else {
            Formula::not(p)
        }
    }))
}

/// `<u>χ1 & … & <u>χn & [u](χ1 | … | χn)` over the distinct `Φ`-types of
/// `W`'s worlds, in the order the worlds are listed.
pub fn characteristic_formula(w: &SdModel, phi: &Signature) -> Result<Formula> {
    if w.is_empty() {
        return Err(Error::Precondition("characteristic formulas need a nonempty model".into()));
    }
    phi.check_width(MAX_MODEL_SIGNATURE)?;
    let r = restrict(w, phi)?;
    let mut seen = BTreeSet::new();
    let types: Vec<Formula> = r.worlds().iter().filter(|x| seen.insert(x.0)).map(|x| world_type(*x, phi)).collect();
    let diamonds = types.iter().map(|t| Formula::diamond_u(t.clone()));
    let boxed = Formula::box_u(Formula::disj_all(types.iter().cloned()));
    Ok(Formula::conj_all(diamonds.chain([boxed])))
}

/// Disjunction of the characteristic formulas of the nonempty members, up to
/// `Φ`-equivalence, in first-occurrence order; `#F` when only the empty
/// model is listed. The class must contain the empty model.
pub fn defining_formula(models: &[SdModel], phi: &Signature) -> Result<Formula> {
    phi.check_width(MAX_CLASS_SIGNATURE)?;
    if !models.iter().any(SdModel::is_empty) {
        return Err(Error::Precondition("the class must contain the empty model".into()));
    }
    let mut seen = Vec::new();
    let mut disjuncts = Vec::new();
    for m in models.iter().filter(|m| !m.is_empty()) {
        let r = restrict(m, phi)?;
        if seen.contains(&r) {
            continue;
        }
        disjuncts.push(characteristic_formula(&r, phi)?);
        seen.push(r);
    }
    Ok(Formula::disj_all(disjuncts))
}

/// Whether `U ⊩ φ` implies `U' ⊩ φ` for `U = {{p}, {}}` and `U' = {{}}`.
pub fn transfer_check(phi: &Formula) -> Result<bool> {
    validate(phi, Fragment::TEAM_I)?;
    let sig = Signature::new(["p"])?.union(&props_of(phi));
    let u = SdModel::new(sig.clone(), vec![World::from_true(&sig, &["p"])?, World(0)])?;
    let u_prime = SdModel::new(sig, vec![World(0)])?;
    Ok(!team_sat(&u, phi)? || team_sat(&u_prime, phi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke_semantics::eval_global;
    use crate::models::{enumerate_models, full_model, phi_equivalent};
    use crate::syntax::parse;

    fn f(s: &str, fr: Fragment) -> Formula {
        parse(s, fr).unwrap()
    }

    fn sig(names: &[&str]) -> Signature {
        Signature::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(validity(&f("C p <-> C ~p", Fragment::LC), Fragment::LC).unwrap().result);
        assert!(validity(&f("D(p, p, p; p)", Fragment::LD), Fragment::LD).unwrap().result);
        let v = validity(&f("D(p;q) | D(p;q)", Fragment::LD), Fragment::LD).unwrap();
        assert!(!v.result);
        let (w, world) = v.witness.unwrap();
        assert!(world.is_some());
        assert!(!eval_global(&w, &f("D(p;q)", Fragment::LD), Fragment::LD).unwrap());
        let full = full_model(&sig(&["p", "q"])).unwrap();
        assert!(!eval_global(&full, &f("D(p;q) | D(p;q)", Fragment::LD), Fragment::LD).unwrap());
    }

    #[test]
    fn team_validity_examples() {
        for s in ["D(p;q) | D(p;q)", "D(p;q) | D(r;q)"] {
            assert!(team_validity(&f(s, Fragment::TEAM_D), Fragment::TEAM_D).unwrap().result, "{s}");
        }
        let v = team_validity(&f("p", Fragment::TEAM_D), Fragment::TEAM_D).unwrap();
        assert!(!v.result);
        assert_eq!(v.witness.as_ref().unwrap().1, None);
        let u = SdModel::from_sets(&["p"], &[&[], &["p"]]).unwrap();
        assert!(!team_sat(&u, &f("p", Fragment::TEAM_D)).unwrap());
    }

    #[test]
    fn satisfiable_examples() {
        let v = satisfiable(&f("~C p", Fragment::LC), Fragment::LC).unwrap();
        assert!(v.result);
        assert_eq!(v.witness.unwrap().0, full_model(&sig(&["p"])).unwrap());
        assert_eq!(satisfiable(&f("p & ~p", Fragment::LC), Fragment::LC).unwrap(), Verdict::fails(None));
        assert!(satisfiable(&f("I(p;;p)", Fragment::LI), Fragment::LI).unwrap().result);
    }

    #[test]
    fn equivalence_examples() {
        let c = f("C p", Fragment::LC);
        let boxes = Formula::or(Formula::box_u(Formula::prop("p")), Formula::box_u(Formula::not(Formula::prop("p"))));
        assert!(equivalent(&c, &boxes, Fragment::LC).unwrap().result);
        let v = equivalent(&c, &Formula::prop("p"), Fragment::LC).unwrap();
        let (w, k) = v.witness.unwrap();
        let mut ev = Evaluator::new(&w);
        assert_ne!(ev.eval(&c).get(k.unwrap()), ev.eval(&Formula::prop("p")).get(k.unwrap()));
    }

    #[test]
    fn team_vs_kripke_examples() {
        let d = f("D(p;q)", Fragment::TEAM_D);
        assert!(team_vs_kripke(&d, &d).unwrap().result);
        let both = f("D(p;q) | D(p;q)", Fragment::TEAM_D);
        assert!(!team_vs_kripke(&both, &both).unwrap().result);
    }

    #[test]
    fn parallel_scans_agree_with_serial() {
        let phi = f("D(p, q; r) | C (p -> r)", Fragment::LD);
        let serial = Decider::new(1).validity(&phi, Fragment::LD).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(Decider::new(jobs).validity(&phi, Fragment::LD).unwrap(), serial);
        }
    }

    #[test]
    fn characteristic_examples() {
        let p = sig(&["p"]);
        let w = SdModel::from_sets(&["p"], &[&["p"], &[]]).unwrap();
        let expected = f("<u>p & <u>~p & [u](p | ~p)", Fragment::LC);
        assert_eq!(characteristic_formula(&w, &p).unwrap(), expected);
        let one = SdModel::from_sets(&["p"], &[&["p"]]).unwrap();
        assert_eq!(characteristic_formula(&one, &p).unwrap(), f("<u>p & [u]p", Fragment::LC));
        assert!(characteristic_formula(&SdModel::empty(p), &sig(&["p"])).is_err());
    }

    #[test]
    fn defining_examples() {
        let p = sig(&["p"]);
        let all: Vec<SdModel> = enumerate_models(&p).unwrap().collect();
        let delta = defining_formula(&all, &p).unwrap();
        assert!(validity(&delta, Fragment::LC).unwrap().result);
        assert_eq!(defining_formula(&[SdModel::empty(p.clone())], &p).unwrap(), Formula::bot());
        let one = SdModel::from_sets(&["p"], &[&["p"]]).unwrap();
        let class = [SdModel::empty(p.clone()), one.clone()];
        assert_eq!(defining_formula(&class, &p).unwrap(), characteristic_formula(&one, &p).unwrap());
        assert!(defining_formula(std::slice::from_ref(&one), &p).is_err());
        for m in enumerate_models(&p).unwrap() {
            let expected = m.is_empty() || phi_equivalent(&m, &one, &p).unwrap();
            assert_eq!(
                eval_global(&m, &characteristic_formula(&one, &p).unwrap(), Fragment::LC).unwrap() || m.is_empty(),
                expected
            );
        }
    }

    #[test]
    fn inexpressibility_examples() {
        let budget = EnumBudget::new(sig(&["p"]), 4).unwrap();
        let target = f("p & C p", Fragment::LD);
        assert_eq!(inexpressibility_scan(&target, &budget, Fragment::TEAM_I).unwrap(), Some(Formula::prop("p")));
        assert!(inexpressibility_scan(&f("C p", Fragment::LD), &budget, Fragment::TEAM_D).is_err());
        assert_eq!(inexpressibility_scan(&f("~C p", Fragment::LD), &budget, Fragment::TEAM_I).unwrap(), None);
    }

    #[test]
    fn transfer_examples() {
        for s in ["I(p;;q)", "~p", "q | ~q", "p"] {
            assert!(transfer_check(&f(s, Fragment::TEAM_I)).unwrap(), "{s}");
        }
    }
}
