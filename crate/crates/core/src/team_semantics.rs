//! Team satisfaction `W ⊩ φ` for the logics D and I.
//!
//! Teams are bitmasks over the world indices of a model. Every call keeps a
//! memo keyed by (node, team), so each subformula is decided at most once
//! per subteam.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::kripke_semantics::{determined, independent, Evaluator};
use crate::models::{ModelSpace, SdModel, Signature};
use crate::syntax::{validate_fragment, Formula, Fragment, Node};

/// Team-size limit when disjunction may split into overlapping subteams.
pub const MAX_GENERAL_TEAM: usize = 14;
/// Team-size limit for disjoint splits.
pub const MAX_PARTITION_TEAM: usize = 20;
/// Signature limit for the exhaustive scans in this module.
pub const MAX_SCAN_SIGNATURE: usize = 3;

/// How `φ | ψ` splits a team.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitStrategy {
    /// Each world goes left, right, or both: `3^|T|` splits.
    General,
    /// Each world goes left or right: `2^|T|` splits. Sound only for
    /// downward-closed formulas, so it is refused outside TEAM_D.
    Partition,
}

/// Reusable team evaluator over one model.
pub struct TeamEvaluator<'m> {
    model: &'m SdModel,
    strategy: SplitStrategy,
    props: HashMap<String, Bits>,
    memo: HashMap<(usize, u32), bool>,
    keep: HashMap<usize, Formula>,
}

impl<'m> TeamEvaluator<'m> {
    /// Fails if the model is larger than the strategy's team-size limit.
    pub fn new(model: &'m SdModel, strategy: SplitStrategy) -> Result<Self> {
        let limit = match strategy {
            SplitStrategy::General => MAX_GENERAL_TEAM,
            SplitStrategy::Partition => MAX_PARTITION_TEAM,
        };
        if model.len() > limit {
            return Err(Error::Guard(format!(
                "team of {} worlds, limit is {limit} for {strategy:?} splits",
                model.len()
            )));
        }
        Ok(TeamEvaluator { model, strategy, props: HashMap::new(), memo: HashMap::new(), keep: HashMap::new() })
    }

    pub fn full_team(&self) -> u32 {
        ((1u64 << self.model.len()) - 1) as u32
    }

    /// Does the subteam `team` (bitmask over world indices) satisfy `f`?
    /// `f` must already be validated.
    pub fn sat(&mut self, f: &Formula, team: u32) -> bool {
        if team == 0 {
            return true;
        }
        if let Some(&v) = self.memo.get(&(f.id(), team)) {
            return v;
        }
        let v = match f.node() {
            Node::Prop(s) => team & !self.prop_mask(s) == 0,
            Node::Not(a) => match a.node() {
                Node::Prop(s) => team & self.prop_mask(s) == 0,
                // ~D holds only in the empty team, handled above.
                _ => false,
            },
            Node::And(a, b) => self.sat(a, team) && self.sat(b, team),
            Node::Or(a, b) => self.split(a, b, team),
            Node::Dep { premises, conclusion } => {
                let ps = self.vectors(premises);
                let c = self.vectors(std::slice::from_ref(conclusion)).pop().unwrap();
                determined(&ps, &c, members(team))
            }
            Node::Indep { left, conditions, right } => {
                let (l, m, r) = (self.vectors(left), self.vectors(conditions), self.vectors(right));
                independent(&l, &m, &r, members(team))
            }
            _ => unreachable!("team evaluation of an unvalidated formula"),
        };
        self.keep.entry(f.id()).or_insert_with(|| f.clone());
        self.memo.insert((f.id(), team), v);
        v
    }

    fn split(&mut self, a: &Formula, b: &Formula, team: u32) -> bool {
        let mut u = team;
        loop {
            if self.sat(a, u) {
                let rest = team & !u;
                match self.strategy {
                    SplitStrategy::Partition => {
                        if self.sat(b, rest) {
                            return true;
                        }
                    }
                    SplitStrategy::General => {
                        // V must cover team \ U and may also take any part of U.
                        let mut s = u;
                        loop {
                            if self.sat(b, rest | s) {
                                return true;
                            }
                            if s == 0 {
                                break;
                            }
                            s = (s - 1) & u;
                        }
                    }
                }
            }
            if u == 0 {
                return false;
            }
            u = (u - 1) & team;
        }
    }

    fn prop_mask(&mut self, s: &str) -> u32 {
        let b = self.prop_bits(s);
        b.iter_ones().fold(0, |acc, i| acc | 1 << i)
    }

    fn prop_bits(&mut self, s: &str) -> Bits {
        if let Some(b) = self.props.get(s) {
            return b.clone();
        }
        let b = self.model.prop_bits(s);
        self.props.insert(s.to_string(), b.clone());
        b
    }

    fn vectors(&mut self, fs: &[Formula]) -> Vec<Bits> {
        fs.iter().map(|f| self.prop_bits(f.as_prop().expect("team atoms take symbols"))).collect()
    }
}

fn members(team: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| team >> i & 1 == 1)
}

fn check(phi: &Formula, fragment: Fragment, strategy: SplitStrategy) -> Result<()> {
    if !fragment.is_team() {
        return Err(Error::Unsupported(format!("{fragment} is not a team fragment")));
    }
    validate_fragment(phi, fragment).map_err(|violations| Error::Fragment { fragment, violations })?;
    if strategy == SplitStrategy::Partition && validate_fragment(phi, Fragment::TEAM_D).is_err() {
        return Err(Error::Unsupported("partition splits need a formula of the downward-closed fragment d".into()));
    }
    Ok(())
}

pub fn eval_team(w: &SdModel, phi: &Formula, fragment: Fragment, strategy: SplitStrategy) -> Result<bool> {
    check(phi, fragment, strategy)?;
    let mut ev = TeamEvaluator::new(w, strategy)?;
    let team = ev.full_team();
    Ok(ev.sat(phi, team))
}

/// Team fragment that accepts `phi`, preferring the narrowest.
pub fn team_fragment_of(phi: &Formula) -> Result<Fragment> {
    [Fragment::PL_NNF, Fragment::TEAM_D, Fragment::TEAM_I]
        .into_iter()
        .find(|f| validate_fragment(phi, *f).is_ok())
        .ok_or_else(|| {
            let violations = validate_fragment(phi, Fragment::TEAM_I).unwrap_err();
            Error::Fragment { fragment: Fragment::TEAM_I, violations }
        })
}

fn scan_space(phi: &Signature) -> Result<ModelSpace> {
    phi.check_width(MAX_SCAN_SIGNATURE)?;
    ModelSpace::new(phi)
}

/// Team satisfaction agrees with world-by-world satisfaction on every model
/// over `sig`.
pub fn flatness_check(phi: &Formula, sig: &Signature) -> Result<bool> {
    check(phi, Fragment::PL_NNF, SplitStrategy::General)?;
    for w in scan_space(sig)?.iter() {
        let mut ev = TeamEvaluator::new(&w, SplitStrategy::General)?;
        let team = ev.full_team();
        if ev.sat(phi, team) != Evaluator::new(&w).eval(phi).all() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every pair `(W, U)` with `U ⊂ W`, `W ⊩ φ` and `U ⊮ φ`, in model order
/// then subteam-bitmask order.
pub fn downward_closure_witnesses(phi: &Formula, sig: &Signature) -> Result<Vec<(SdModel, SdModel)>> {
    collect_witnesses(phi, sig, usize::MAX)
}

/// The first pair of [`downward_closure_witnesses`], if any.
pub fn downward_closure_scan(phi: &Formula, sig: &Signature) -> Result<Option<(SdModel, SdModel)>> {
    Ok(collect_witnesses(phi, sig, 1)?.pop())
}

fn collect_witnesses(phi: &Formula, sig: &Signature, limit: usize) -> Result<Vec<(SdModel, SdModel)>> {
    let fragment = team_fragment_of(phi)?;
    check(phi, fragment, SplitStrategy::General)?;
    let mut out = Vec::new();
    for w in scan_space(sig)?.iter() {
        let mut ev = TeamEvaluator::new(&w, SplitStrategy::General)?;
        let full = ev.full_team();
        if !ev.sat(phi, full) {
            continue;
        }
        for u in 0..full {
            if u & !full == 0 && !ev.sat(phi, u) {
                out.push((w.clone(), w.subteam(u as u64)));
                if out.len() == limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
