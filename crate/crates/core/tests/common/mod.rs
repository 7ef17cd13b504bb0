//! Reference evaluators written straight from the truth definitions.
//!
//! Nothing here calls into the library's evaluators; only the formula and
//! model data types are shared. Everything is pairwise and unmemoized
//! except the Kripke truth vectors, which are cached per node so that
//! translation outputs with shared subtrees stay tractable.

#![allow(dead_code)]

use std::collections::HashMap;

use depind::{Formula, Node, SdModel, Signature, World};

pub fn sig(names: &[&str]) -> Signature {
    Signature::new(names.iter().copied()).unwrap()
}

/// Every model over `sig`, by subset of the `2^n` assignments.
pub fn all_models(sig: &Signature) -> Vec<SdModel> {
    let n = sig.len();
    let assignments = 1u32 << n;
    (0..1u64 << assignments)
        .map(|mask| {
            let worlds = (0..assignments).filter(|a| mask >> a & 1 == 1).map(World).collect();
            SdModel::new(sig.clone(), worlds).unwrap()
        })
        .collect()
}

pub fn value(m: &SdModel, w: usize, name: &str) -> bool {
    match m.signature().position(name) {
        Some(i) => m.worlds()[w].0 >> i & 1 == 1,
        None => false,
    }
}

/// Pointwise truth of `f` at every world of `m`.
pub fn kripke(m: &SdModel, f: &Formula) -> Vec<bool> {
    Kripke { m, memo: HashMap::new() }.vec(f)
}

pub fn kripke_global(m: &SdModel, f: &Formula) -> bool {
    kripke(m, f).into_iter().all(|b| b)
}

struct Kripke<'a> {
    m: &'a SdModel,
    memo: HashMap<*const Node, (Formula, Vec<bool>)>,
}

impl Kripke<'_> {
    fn vec(&mut self, f: &Formula) -> Vec<bool> {
        let key: *const Node = f.node();
        if let Some((_, v)) = self.memo.get(&key) {
            return v.clone();
        }
        let n = self.m.len();
        let v = match f.node() {
            Node::Prop(s) => (0..n).map(|w| value(self.m, w, s)).collect(),
            Node::Not(a) => self.vec(a).into_iter().map(|b| !b).collect(),
            Node::And(a, b) => zip(self.vec(a), self.vec(b), |x, y| x && y),
            Node::Or(a, b) => zip(self.vec(a), self.vec(b), |x, y| x || y),
            Node::Implies(a, b) => zip(self.vec(a), self.vec(b), |x, y| !x || y),
            Node::UBox(a) => vec![self.vec(a).iter().all(|b| *b); n],
            Node::Dep { premises, conclusion } => {
                let ps: Vec<Vec<bool>> = premises.iter().map(|p| self.vec(p)).collect();
                let c = self.vec(conclusion);
                vec![determines(&ps, &c, &vec![true; n]); n]
            }
            Node::RelDep { condition, premises, conclusion } => {
                let t = self.vec(condition);
                let ps: Vec<Vec<bool>> = premises.iter().map(|p| self.vec(p)).collect();
                let c = self.vec(conclusion);
                vec![determines(&ps, &c, &t); n]
            }
            Node::Indep { left, conditions, right } => {
                let l: Vec<Vec<bool>> = left.iter().map(|p| self.vec(p)).collect();
                let c: Vec<Vec<bool>> = conditions.iter().map(|p| self.vec(p)).collect();
                let r: Vec<Vec<bool>> = right.iter().map(|p| self.vec(p)).collect();
                let worlds: Vec<usize> = (0..n).collect();
                vec![independent(&l, &c, &r, &worlds); n]
            }
        };
        self.memo.insert(key, (f.clone(), v.clone()));
        v
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

fn agree(cols: &[Vec<bool>], u: usize, v: usize) -> bool {
    cols.iter().all(|c| c[u] == c[v])
}

/// Any two worlds inside `domain` that agree on the premises agree on the
/// conclusion.
fn determines(premises: &[Vec<bool>], conclusion: &[bool], domain: &[bool]) -> bool {
    let n = conclusion.len();
    for u in 0..n {
        for v in 0..n {
            if domain[u] && domain[v] && agree(premises, u, v) && conclusion[u] != conclusion[v] {
                return false;
            }
        }
    }
    true
}

/// For all `u, v` agreeing on the conditions some `w` agrees with `u` on
/// the conditions and the left tuple and with `v` on the right tuple.
fn independent(l: &[Vec<bool>], c: &[Vec<bool>], r: &[Vec<bool>], team: &[usize]) -> bool {
    team.iter().all(|&u| {
        team.iter()
            .all(|&v| !agree(c, u, v) || team.iter().any(|&w| agree(c, w, u) && agree(l, w, u) && agree(r, w, v)))
    })
}

/// `team ⊩ f`, with `team` a list of world indices of `m`.
pub fn team(m: &SdModel, t: &[usize], f: &Formula) -> bool {
    let props = |fs: &[Formula]| -> Vec<Vec<bool>> {
        fs.iter()
            .map(|p| {
                let name = p.as_prop().expect("team atoms take symbols");
                (0..m.len()).map(|w| value(m, w, name)).collect()
            })
            .collect()
    };
    match f.node() {
        Node::Prop(s) => t.iter().all(|&w| value(m, w, s)),
        Node::Not(a) => match a.node() {
            Node::Prop(s) => t.iter().all(|&w| !value(m, w, s)),
            Node::Dep { .. } => t.is_empty(),
            _ => panic!("not a team formula: {f}"),
        },
        Node::And(a, b) => team(m, t, a) && team(m, t, b),
        Node::Or(a, b) => {
            // each world goes left, right, or both
            let total = 3usize.pow(t.len() as u32);
            (0..total).any(|mut code| {
                let (mut u, mut v) = (Vec::new(), Vec::new());
                for &w in t {
                    match code % 3 {
                        0 => u.push(w),
                        1 => v.push(w),
                        _ => {
                            u.push(w);
                            v.push(w);
                        }
                    }
                    code /= 3;
                }
                team(m, &u, a) && team(m, &v, b)
            })
        }
        Node::Dep { premises, conclusion } => {
            let ps = props(premises);
            let c = &props(std::slice::from_ref(conclusion))[0];
            let inside: Vec<bool> = (0..m.len()).map(|w| t.contains(&w)).collect();
            determines(&ps, c, &inside)
        }
        Node::Indep { left, conditions, right } => independent(&props(left), &props(conditions), &props(right), t),
        _ => panic!("not a team formula: {f}"),
    }
}

pub fn team_full(m: &SdModel, f: &Formula) -> bool {
    let all: Vec<usize> = (0..m.len()).collect();
    team(m, &all, f)
}

/// Same truth value at every world of every model over `sig`.
pub fn pointwise_equivalent(a: &Formula, b: &Formula, sig: &Signature) -> Option<SdModel> {
    all_models(sig).into_iter().find(|m| kripke(m, a) != kripke(m, b))
}

/// Same restriction to `phi`, compared as sets of assignments.
pub fn same_on(a: &SdModel, b: &SdModel, phi: &Signature) -> bool {
    let project = |m: &SdModel| -> std::collections::BTreeSet<Vec<bool>> {
        (0..m.len()).map(|w| phi.symbols().iter().map(|s| value(m, w, s)).collect()).collect()
    };
    project(a) == project(b)
}
