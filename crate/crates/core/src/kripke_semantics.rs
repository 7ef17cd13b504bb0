//! Pointed satisfaction `W, w ⊨ φ` for LC, LD, LD_REL, LI and LU.
//!
//! `D`, `I`, `D^θ` and `[U]` do not depend on the point, so the evaluator
//! computes a whole truth vector per node, bottom-up, and caches it by node
//! identity.

use std::collections::{BTreeMap, HashMap, HashSet};

use smallvec::SmallVec;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::models::SdModel;
use crate::syntax::{validate_fragment, Formula, Fragment, Node};

/// Per-world truth values of a formula in a model, in world order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthVector {
    pub model: SdModel,
    pub formula: Formula,
    pub values: Vec<bool>,
}

/// A table for the function that witnesses determinacy. Tuples that no
/// world realizes map to `default`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminacyWitness {
    pub table: BTreeMap<Vec<bool>, bool>,
    pub default: bool,
}

impl DeterminacyWitness {
    pub fn apply(&self, tuple: &[bool]) -> bool {
        self.table.get(tuple).copied().unwrap_or(self.default)
    }
}

/// Whole-model evaluator. Keeps a clone of every cached node so node
/// addresses cannot be recycled while the cache is alive.
pub struct Evaluator<'m> {
    model: &'m SdModel,
    memo: HashMap<usize, (Formula, Bits)>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m SdModel) -> Self {
        Evaluator { model, memo: HashMap::new() }
    }

    pub fn eval(&mut self, f: &Formula) -> Bits {
        if let Some((_, b)) = self.memo.get(&f.id()) {
            return b.clone();
        }
        let n = self.model.len();
        let out = match f.node() {
            Node::Prop(s) => self.model.prop_bits(s),
            Node::Not(a) => self.eval(a).not(),
            Node::Implies(a, b) => self.eval(a).implies(&self.eval(b)),
            Node::And(a, b) => {
                let x = self.eval(a);
                x.and(&self.eval(b))
            }
            Node::Or(a, b) => {
                let x = self.eval(a);
                x.or(&self.eval(b))
            }
            Node::Dep { premises, conclusion } => {
                let ps = self.eval_all(premises);
                let c = self.eval(conclusion);
                constant(n, determined(&ps, &c, 0..n))
            }
            Node::RelDep { condition, premises, conclusion } => {
                let dom = self.eval(condition);
                let ps = self.eval_all(premises);
                let c = self.eval(conclusion);
                constant(n, determined(&ps, &c, dom.iter_ones()))
            }
            Node::Indep { left, conditions, right } => {
                let l = self.eval_all(left);
                let m = self.eval_all(conditions);
                let r = self.eval_all(right);
                constant(n, independent(&l, &m, &r, 0..n))
            }
            Node::UBox(a) => {
                let x = self.eval(a);
                constant(n, x.all())
            }
        };
        self.memo.insert(f.id(), (f.clone(), out.clone()));
        out
    }

    fn eval_all(&mut self, fs: &[Formula]) -> Vec<Bits> {
        fs.iter().map(|f| self.eval(f)).collect()
    }
}

fn constant(n: usize, v: bool) -> Bits {
    if v {
        Bits::ones(n)
    } else {
        Bits::zeros(n)
    }
}

pub(crate) type Key = SmallVec<[u64; 1]>;

pub(crate) fn key(vecs: &[Bits], i: usize) -> Key {
    let mut k: Key = SmallVec::from_elem(0, vecs.len().div_ceil(64).max(1));
    for (j, v) in vecs.iter().enumerate() {
        if v.get(i) {
            k[j / 64] |= 1 << (j % 64);
        }
    }
    k
}

/// Within `domain`, do equal premise tuples force equal targets?
/// Groups worlds by premise tuple instead of comparing all pairs.
pub(crate) fn determined(premises: &[Bits], target: &Bits, domain: impl Iterator<Item = usize>) -> bool {
    let mut seen: HashMap<Key, bool> = HashMap::new();
    for i in domain {
        let t = target.get(i);
        if *seen.entry(key(premises, i)).or_insert(t) != t {
            return false;
        }
    }
    true
}

/// Within `domain`, and within each class of equal condition tuples, every
/// left tuple must co-occur with every right tuple.
pub(crate) fn independent(left: &[Bits], cond: &[Bits], right: &[Bits], domain: impl Iterator<Item = usize>) -> bool {
    #[derive(Default)]
    struct Class {
        ls: HashSet<Key>,
        rs: HashSet<Key>,
        pairs: HashSet<(Key, Key)>,
    }
    let mut classes: HashMap<Key, Class> = HashMap::new();
    for i in domain {
        let c = classes.entry(key(cond, i)).or_default();
        let (l, r) = (key(left, i), key(right, i));
        c.ls.insert(l.clone());
        c.rs.insert(r.clone());
        c.pairs.insert((l, r));
    }
    classes.values().all(|c| c.pairs.len() == c.ls.len() * c.rs.len())
}

fn check(phi: &Formula, fragment: Fragment) -> Result<()> {
    if fragment.is_team() {
        return Err(Error::Unsupported(format!("{fragment} is a team fragment; use eval_team")));
    }
    validate_fragment(phi, fragment).map_err(|violations| Error::Fragment { fragment, violations })
}

pub fn eval_kripke(w: &SdModel, world: usize, phi: &Formula, fragment: Fragment) -> Result<bool> {
    check(phi, fragment)?;
    w.world(world)?;
    Ok(Evaluator::new(w).eval(phi).get(world))
}

/// True iff `φ` holds at every world; vacuously true on the empty model.
pub fn eval_global(w: &SdModel, phi: &Formula, fragment: Fragment) -> Result<bool> {
    check(phi, fragment)?;
    Ok(Evaluator::new(w).eval(phi).all())
}

pub fn truth_function(w: &SdModel, phi: &Formula) -> TruthVector {
    TruthVector { model: w.clone(), formula: phi.clone(), values: Evaluator::new(w).eval(phi).to_vec() }
}

fn same_model(premises: &[TruthVector], target: &TruthVector) -> Result<()> {
    let m = &target.model;
    if premises.iter().any(|p| p.model.signature() != m.signature() || p.model.worlds() != m.worlds()) {
        return Err(Error::ModelMismatch);
    }
    Ok(())
}

/// Condition Det, checked pairwise over all worlds.
pub fn det_check(premises: &[TruthVector], target: &TruthVector) -> Result<bool> {
    same_model(premises, target)?;
    let n = target.values.len();
    for a in 0..n {
        for b in a + 1..n {
            let agree = premises.iter().all(|p| p.values[a] == p.values[b]);
            if agree && target.values[a] != target.values[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn det_witness(premises: &[TruthVector], target: &TruthVector) -> Result<Option<DeterminacyWitness>> {
    if !det_check(premises, target)? {
        return Ok(None);
    }
    let mut table = BTreeMap::new();
    for i in 0..target.values.len() {
        let tuple: Vec<bool> = premises.iter().map(|p| p.values[i]).collect();
        table.insert(tuple, target.values[i]);
    }
    Ok(Some(DeterminacyWitness { table, default: false }))
}
