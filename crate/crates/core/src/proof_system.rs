//! Hilbert-style axiom systems, schema matching and derivation checking.
//!
//! Propositional reasoning is a single `taut` justification checked by a
//! truth table over the propositional skeleton, in which every maximal
//! `C`, `D`, `I` or `[U]` subterm is an opaque atom. A "by PL" step from
//! earlier lines is written as a `taut` implication followed by `mp`.
//!
//! Schema metavariables are symbols starting with `$`, a spelling the
//! parser never produces, so they cannot clash with object symbols.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::decide::{signature_of, Decider};
use crate::error::{Error, Result};
use crate::syntax::{parse, subst, validate_fragment, Formula, Fragment, Node, Symbol};
use crate::translations::{dep_expansion, indep_expansion, Diamond};

/// Most distinct skeleton atoms the tautology oracle tabulates.
pub const MAX_SKELETON_ATOMS: usize = 20;
/// Widest per-line signature [`soundness_audit`] accepts.
pub const MAX_AUDIT_SIGNATURE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomSystemId {
    AXC,
    AXLD,
    AXLI,
    S5U,
}

impl AxiomSystemId {
    pub const ALL: [AxiomSystemId; 4] =
        [AxiomSystemId::AXC, AxiomSystemId::AXLD, AxiomSystemId::AXLI, AxiomSystemId::S5U];

    /// Fragment every line of a derivation must belong to.
    pub fn fragment(self) -> Fragment {
        match self {
            AxiomSystemId::AXC => Fragment::LC,
            AxiomSystemId::AXLD => Fragment::LD,
            AxiomSystemId::AXLI => Fragment::LI,
            AxiomSystemId::S5U => Fragment::LU,
        }
    }

    pub fn axioms(self) -> &'static [AxiomId] {
        use AxiomId::*;
        match self {
            AxiomSystemId::AXC => &[Ax1C, Ax2C, Ax3C, Ax4C, Ax5C],
            AxiomSystemId::AXLD => &[Ax1C, Ax2C, Ax3C, Ax4C, Ax5C, AxDk],
            AxiomSystemId::AXLI => &[Ax1I, Ax2I, Ax3I, Ax4I, Ax5I, AxIkmn],
            AxiomSystemId::S5U => &[Ax1U, Ax2U, Ax3U],
        }
    }

    pub fn allows(self, rule: Rule) -> bool {
        use AxiomSystemId::*;
        match rule {
            Rule::Taut | Rule::Mp | Rule::Ax => true,
            Rule::Eqc | Rule::Necc => matches!(self, AXC | AXLD),
            Rule::Eqi => self == AXLI,
            Rule::Necu => self == S5U,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomSystemId::AXC => "AXC",
            AxiomSystemId::AXLD => "AXLD",
            AxiomSystemId::AXLI => "AXLI",
            AxiomSystemId::S5U => "S5U",
        }
    }
}

impl fmt::Display for AxiomSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSystemId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AxiomSystemId::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown axiom system `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    Ax1C,
    Ax2C,
    Ax3C,
    Ax4C,
    Ax5C,
    Ax1U,
    Ax2U,
    Ax3U,
    AxDk,
    Ax1I,
    Ax2I,
    Ax3I,
    Ax4I,
    Ax5I,
    AxIkmn,
}

impl AxiomId {
    pub const ALL: [AxiomId; 15] = {
        use AxiomId::*;
        [Ax1C, Ax2C, Ax3C, Ax4C, Ax5C, Ax1U, Ax2U, Ax3U, AxDk, Ax1I, Ax2I, Ax3I, Ax4I, Ax5I, AxIkmn]
    };

    pub fn is_parametric(self) -> bool {
        matches!(self, AxiomId::AxDk | AxiomId::AxIkmn)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for AxiomId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown axiom `{s}`")))
    }
}

/// Justification kinds, used for per-system rule tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Ax,
    Taut,
    Mp,
    Eqc,
    Eqi,
    Necu,
    Necc,
}

/// Arity parameters of `AxDk` (`k`) and `AxIkmn` (`k`, `m`, `n`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Arity {
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
}

impl Arity {
    pub fn k(k: usize) -> Arity {
        Arity { k: Some(k), ..Arity::default() }
    }

    pub fn kmn(k: usize, m: usize, n: usize) -> Arity {
        Arity { k: Some(k), m: Some(m), n: Some(n) }
    }

    fn is_empty(&self) -> bool {
        *self == Arity::default()
    }
}

pub type Substitution = BTreeMap<String, Formula>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub id: AxiomId,
    pub arity: Arity,
    /// The axiom with metavariables `$name` in place of schema letters.
    pub shape: Formula,
    /// Metavariable names without the `$`, in binding order.
    pub metavars: Vec<String>,
}

fn mv(name: &str) -> Formula {
    Formula::prop(&format!("${name}"))
}

fn indexed(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// `φ I φ` with no conditions.
fn self_indep(a: Formula) -> Formula {
    Formula::indep(vec![a.clone()], Vec::new(), vec![a])
}

/// The schema of `id`; parametric axioms need their arity.
pub fn schema(id: AxiomId, arity: Arity) -> Result<Schema> {
    use AxiomId::*;
    let (phi, psi) = (mv("phi"), mv("psi"));
    let c = Formula::constancy;
    let fixed = |shape: Formula, names: &[&str]| -> Result<Schema> {
        if !arity.is_empty() {
            return Err(Error::Precondition(format!("{id} takes no arity parameters")));
        }
        Ok(Schema { id, arity, shape, metavars: names.iter().map(|s| s.to_string()).collect() })
    };
    match id {
        Ax1C => fixed(c(Formula::top()), &[]),
        Ax2C => fixed(Formula::iff(c(phi.clone()), c(Formula::not(phi))), &["phi"]),
        Ax3C => fixed(c(Formula::and(phi.clone(), c(phi))), &["phi"]),
        Ax4C => fixed(
            Formula::implies(Formula::and(c(phi.clone()), c(psi.clone())), c(Formula::and(phi, psi))),
            &["phi", "psi"],
        ),
        Ax5C => fixed(
            Formula::implies(
                Formula::and(Formula::and(phi.clone(), c(phi.clone())), c(Formula::implies(phi, psi.clone()))),
                c(psi),
            ),
            &["phi", "psi"],
        ),
        Ax1U => fixed(
            Formula::implies(
                Formula::ubox(Formula::implies(phi.clone(), psi.clone())),
                Formula::implies(Formula::ubox(phi), Formula::ubox(psi)),
            ),
            &["phi", "psi"],
        ),
        Ax2U => fixed(Formula::implies(Formula::ubox(phi.clone()), phi), &["phi"]),
        Ax3U => {
            let d = Formula::udiamond(phi);
            fixed(Formula::implies(d.clone(), Formula::ubox(d)), &["phi"])
        }
        Ax1I => fixed(self_indep(Formula::top()), &[]),
        Ax2I => fixed(Formula::iff(self_indep(phi.clone()), self_indep(Formula::not(phi))), &["phi"]),
        Ax3I => fixed(self_indep(Formula::and(phi.clone(), self_indep(phi))), &["phi"]),
        Ax4I => fixed(
            Formula::implies(
                Formula::and(self_indep(phi.clone()), self_indep(psi.clone())),
                self_indep(Formula::and(phi, psi)),
            ),
            &["phi", "psi"],
        ),
        Ax5I => fixed(
            Formula::implies(
                Formula::and(
                    Formula::and(phi.clone(), self_indep(phi.clone())),
                    self_indep(Formula::implies(phi, psi.clone())),
                ),
                self_indep(psi),
            ),
            &["phi", "psi"],
        ),
        AxDk => {
            let k = match arity {
                Arity { k: Some(k), m: None, n: None } if k >= 1 => k,
                _ => return Err(Error::Precondition("AxDk needs k >= 1 and nothing else".into())),
            };
            let mut metavars = indexed("phi", k);
            let premises: Vec<Formula> = metavars.iter().map(|s| mv(s)).collect();
            metavars.push("psi".into());
            let lhs = Formula::dep(premises.clone(), psi.clone());
            Ok(Schema { id, arity, shape: Formula::iff(lhs, dep_expansion(&premises, &psi)?), metavars })
        }
        AxIkmn => {
            let (k, m, n) = match arity {
                Arity { k: Some(k), m: Some(m), n: Some(n) } if k >= 1 && n >= 1 => (k, m, n),
                _ => return Err(Error::Precondition("AxIkmn needs k >= 1, m >= 0 and n >= 1".into())),
            };
            let (ls, ts, rs) = (indexed("phi", k), indexed("theta", m), indexed("psi", n));
            let vars = |v: &[String]| v.iter().map(|s| mv(s)).collect::<Vec<_>>();
            let (l, t, r) = (vars(&ls), vars(&ts), vars(&rs));
            let lhs = Formula::indep(l.clone(), t.clone(), r.clone());
            let shape = Formula::iff(lhs, indep_expansion(&l, &t, &r, Diamond::UPrime)?);
            Ok(Schema { id, arity, shape, metavars: [ls, ts, rs].concat() })
        }
    }
}

/// Arity of a parametric axiom, read off the counts of indexed bindings.
fn infer_arity(id: AxiomId, sub: &Substitution) -> Arity {
    let count = |prefix: &str| (1..).take_while(|i| sub.contains_key(&format!("{prefix}{i}"))).count();
    match id {
        AxiomId::AxDk => Arity::k(count("phi")),
        AxiomId::AxIkmn => Arity::kmn(count("phi"), count("theta"), count("psi")),
        _ => Arity::default(),
    }
}

/// The axiom instance for `sub`. Parametric axioms take their arity from
/// `arity` when given, else from the indexed bindings.
pub fn instantiate_axiom(system: AxiomSystemId, id: AxiomId, sub: &Substitution, arity: Arity) -> Result<Formula> {
    if !system.axioms().contains(&id) {
        return Err(Error::Precondition(format!("{id} is not an axiom of {system}")));
    }
    let arity = if id.is_parametric() && arity.is_empty() { infer_arity(id, sub) } else { arity };
    let s = schema(id, arity)?;
    if let Some(missing) = s.metavars.iter().find(|v| !sub.contains_key(*v)) {
        return Err(Error::Precondition(format!("{id} needs a binding for {missing}")));
    }
    if let Some(extra) = sub.keys().find(|k| !s.metavars.contains(k)) {
        return Err(Error::Precondition(format!("{id} has no schema letter {extra}")));
    }
    let binding: BTreeMap<Symbol, Formula> =
        sub.iter().map(|(k, v)| (Symbol::from(format!("${k}").as_str()), v.clone())).collect();
    Ok(subst(&s.shape, &binding))
}

/// The substitution that turns `schema` into `formula`, if there is one.
pub fn match_schema(schema: &Schema, formula: &Formula) -> Option<Substitution> {
    let mut out = BTreeMap::new();
    unify(&schema.shape, formula, &mut out).then(|| out.into_iter().map(|(k, v)| (k[1..].to_string(), v)).collect())
}

/// Matches `formula` against axiom `id`, reading the arity of a parametric
/// axiom off its left-hand side.
pub fn match_axiom(id: AxiomId, formula: &Formula) -> Option<(Arity, Substitution)> {
    let arity = if id.is_parametric() {
        let (lhs, _) = formula.as_iff()?;
        match (id, lhs.node()) {
            (AxiomId::AxDk, Node::Dep { premises, .. }) => Arity::k(premises.len()),
            (AxiomId::AxIkmn, Node::Indep { left, conditions, right }) => {
                Arity::kmn(left.len(), conditions.len(), right.len())
            }
            _ => return None,
        }
    } else {
        Arity::default()
    };
    let s = schema(id, arity).ok()?;
    match_schema(&s, formula).map(|sub| (arity, sub))
}

fn unify(pattern: &Formula, f: &Formula, out: &mut BTreeMap<String, Formula>) -> bool {
    fn lists(a: &[Formula], b: &[Formula], out: &mut BTreeMap<String, Formula>) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| unify(x, y, out))
    }
    match (pattern.node(), f.node()) {
        (Node::Prop(v), _) if v.starts_with('$') => match out.get(&**v) {
            Some(bound) => bound == f,
            None => {
                out.insert(v.to_string(), f.clone());
                true
            }
        },
        (Node::Prop(a), Node::Prop(b)) => a == b,
        (Node::Not(a), Node::Not(b)) | (Node::UBox(a), Node::UBox(b)) => unify(a, b, out),
        (Node::Implies(a, b), Node::Implies(c, d))
        | (Node::And(a, b), Node::And(c, d))
        | (Node::Or(a, b), Node::Or(c, d)) => unify(a, c, out) && unify(b, d, out),
        (Node::Dep { premises: p, conclusion: c }, Node::Dep { premises: q, conclusion: d }) => {
            lists(p, q, out) && unify(c, d, out)
        }
        (Node::Indep { left: l1, conditions: c1, right: r1 }, Node::Indep { left: l2, conditions: c2, right: r2 }) => {
            lists(l1, l2, out) && lists(c1, c2, out) && lists(r1, r2, out)
        }
        (
            Node::RelDep { condition: t1, premises: p1, conclusion: c1 },
            Node::RelDep { condition: t2, premises: p2, conclusion: c2 },
        ) => unify(t1, t2, out) && lists(p1, p2, out) && unify(c1, c2, out),
        _ => false,
    }
}

/// Whether `φ` is a tautology of its propositional skeleton.
pub fn taut_oracle(phi: &Formula) -> Result<bool> {
    let mut atoms: HashMap<Formula, usize> = HashMap::new();
    collect_atoms(phi, &mut atoms);
    let n = atoms.len();
    if n > MAX_SKELETON_ATOMS {
        return Err(Error::Guard(format!("skeleton has {n} atoms, limit is {MAX_SKELETON_ATOMS}")));
    }
    let rows = 1usize << n;
    let columns: Vec<Bits> = (0..n).map(|i| Bits::from_fn(rows, |r| r >> i & 1 == 1)).collect();
    Ok(skeleton_eval(phi, &atoms, &columns).all())
}

fn collect_atoms(f: &Formula, atoms: &mut HashMap<Formula, usize>) {
    match f.node() {
        Node::Not(a) => collect_atoms(a, atoms),
        Node::Implies(a, b) | Node::And(a, b) | Node::Or(a, b) => {
            collect_atoms(a, atoms);
            collect_atoms(b, atoms);
        }
        _ => {
            let next = atoms.len();
            atoms.entry(f.clone()).or_insert(next);
        }
    }
}

fn skeleton_eval(f: &Formula, atoms: &HashMap<Formula, usize>, columns: &[Bits]) -> Bits {
    let go = |g: &Formula| skeleton_eval(g, atoms, columns);
    match f.node() {
        Node::Not(a) => go(a).not(),
        Node::Implies(a, b) => go(a).implies(&go(b)),
        Node::And(a, b) => go(a).and(&go(b)),
        Node::Or(a, b) => go(a).or(&go(b)),
        _ => columns[atoms[f]].clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        id: AxiomId,
        arity: Arity,
        bindings: Substitution,
    },
    Taut,
    Mp(usize, usize),
    Eqc(usize),
    Eqi(usize),
    Necu(usize),
    /// Derived rule: from `φ` infer `C φ`, checked by expanding it into
    /// the underlying seven-line derivation.
    Necc(usize),
}

impl Justification {
    pub fn rule(&self) -> Rule {
        match self {
            Justification::Axiom { .. } => Rule::Ax,
            Justification::Taut => Rule::Taut,
            Justification::Mp(..) => Rule::Mp,
            Justification::Eqc(_) => Rule::Eqc,
            Justification::Eqi(_) => Rule::Eqi,
            Justification::Necu(_) => Rule::Necu,
            Justification::Necc(_) => Rule::Necc,
        }
    }

    pub fn references(&self) -> Vec<usize> {
        match *self {
            Justification::Axiom { .. } | Justification::Taut => vec![],
            Justification::Mp(i, j) => vec![i, j],
            Justification::Eqc(i) | Justification::Eqi(i) | Justification::Necu(i) | Justification::Necc(i) => vec![i],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { id, arity, bindings } => {
                write!(f, "ax {id}")?;
                for (name, v) in [("k", arity.k), ("m", arity.m), ("n", arity.n)] {
                    if let Some(v) = v {
                        write!(f, " {name}={v}")?;
                    }
                }
                for (name, v) in bindings {
                    write!(f, " {name}={v}")?;
                }
                Ok(())
            }
            Justification::Taut => f.write_str("taut"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Eqc(i) => write!(f, "eqc {i}"),
            Justification::Eqi(i) => write!(f, "eqi {i}"),
            Justification::Necu(i) => write!(f, "necu {i}"),
            Justification::Necc(i) => write!(f, "necc {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLine {
    pub index: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub system: AxiomSystemId,
    /// When present, the last line must be exactly this formula.
    pub theorem: Option<Formula>,
    pub lines: Vec<DerivationLine>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ProofError {
    pub line: usize,
    pub reason: String,
}

fn reject<T>(line: usize, reason: impl Into<String>) -> std::result::Result<T, ProofError> {
    Err(ProofError { line, reason: reason.into() })
}

/// Checks every line in order, then the declared theorem.
pub fn check_derivation(d: &Derivation) -> std::result::Result<(), ProofError> {
    let mut known = BTreeMap::new();
    check_lines(d.system, &mut known, &d.lines)?;
    let Some(last) = d.lines.last() else {
        return reject(0, "empty derivation");
    };
    if let Some(t) = &d.theorem {
        if &last.formula != t {
            return reject(last.index, format!("derives {} but the theorem is {t}", last.formula));
        }
    }
    Ok(())
}

fn check_lines(
    system: AxiomSystemId,
    known: &mut BTreeMap<usize, Formula>,
    lines: &[DerivationLine],
) -> std::result::Result<(), ProofError> {
    for line in lines {
        let at = line.index;
        if known.keys().next_back().is_some_and(|&last| last >= at) {
            return reject(at, "line numbers must increase");
        }
        if let Err(v) = validate_fragment(&line.formula, system.fragment()) {
            let e = Error::Fragment { fragment: system.fragment(), violations: v };
            return reject(at, e.to_string());
        }
        let rule = line.justification.rule();
        if !system.allows(rule) {
            return reject(at, format!("{rule:?} is not a rule of {system}"));
        }
        let mut premises = Vec::new();
        for r in line.justification.references() {
            match known.get(&r) {
                Some(f) if r < at => premises.push(f.clone()),
                _ => return reject(at, format!("{r} is not an earlier line")),
            }
        }
        check_step(system, line, &premises)?;
        known.insert(at, line.formula.clone());
    }
    Ok(())
}

fn check_step(
    system: AxiomSystemId,
    line: &DerivationLine,
    premises: &[Formula],
) -> std::result::Result<(), ProofError> {
    let (at, f) = (line.index, &line.formula);
    match &line.justification {
        Justification::Taut => match taut_oracle(f) {
            Ok(true) => Ok(()),
            Ok(false) => reject(at, "not a propositional tautology"),
            Err(e) => reject(at, e.to_string()),
        },
        Justification::Axiom { id, arity, bindings } => {
            if !system.axioms().contains(id) {
                return reject(at, format!("{id} is not an axiom of {system}"));
            }
            if bindings.is_empty() && arity.is_empty() {
                return match match_axiom(*id, f) {
                    Some(_) => Ok(()),
                    None => reject(at, format!("not an instance of {id}")),
                };
            }
            match instantiate_axiom(system, *id, bindings, *arity) {
                Ok(inst) if &inst == f => Ok(()),
                Ok(inst) => reject(at, format!("{id} with these bindings is {inst}")),
                Err(e) => reject(at, e.to_string()),
            }
        }
        Justification::Mp(..) => {
            let (a, b) = (&premises[0], &premises[1]);
            let fits =
                |minor: &Formula, major: &Formula| matches!(major.node(), Node::Implies(x, y) if x == minor && y == f);
            if fits(a, b) || fits(b, a) {
                Ok(())
            } else {
                reject(at, "neither premise is an implication from the other to this line")
            }
        }
        Justification::Eqc(_) | Justification::Eqi(_) => {
            let Some((x, y)) = premises[0].as_iff() else {
                return reject(at, "premise is not a biconditional");
            };
            let wrap =
                if matches!(line.justification, Justification::Eqc(_)) { Formula::constancy } else { self_indep };
            if *f == Formula::iff(wrap(x.clone()), wrap(y.clone())) {
                Ok(())
            } else {
                reject(at, "does not wrap both sides of the premise")
            }
        }
        Justification::Necu(_) => {
            if *f == Formula::ubox(premises[0].clone()) {
                Ok(())
            } else {
                reject(at, "expected [U] applied to the premise")
            }
        }
        Justification::Necc(_) => {
            if *f != Formula::constancy(premises[0].clone()) {
                return reject(at, "expected C applied to the premise");
            }
            let mut inner = BTreeMap::from([(0, premises[0].clone())]);
            check_lines(system, &mut inner, &necc_expansion(&premises[0]))
                .or_else(|e| reject(at, format!("necc expansion, step {}: {}", e.line, e.reason)))
        }
    }
}

/// The derivation behind `necc`: from `φ` at line 0, `φ <-> #T` by PL,
/// `C φ <-> C #T` by EQC, then `C φ` from `C #T` by PL.
pub fn necc_expansion(phi: &Formula) -> Vec<DerivationLine> {
    let top = Formula::top();
    let c = Formula::constancy;
    let to_top = Formula::iff(phi.clone(), top.clone());
    let eq = Formula::iff(c(phi.clone()), c(top.clone()));
    let back = Formula::implies(c(top.clone()), c(phi.clone()));
    let steps = [
        (Formula::implies(phi.clone(), to_top.clone()), Justification::Taut),
        (to_top, Justification::Mp(1, 0)),
        (eq.clone(), Justification::Eqc(2)),
        (c(top), Justification::Axiom { id: AxiomId::Ax1C, arity: Arity::default(), bindings: BTreeMap::new() }),
        (Formula::implies(eq, back.clone()), Justification::Taut),
        (back, Justification::Mp(5, 3)),
        (c(phi.clone()), Justification::Mp(6, 4)),
    ];
    steps
        .into_iter()
        .enumerate()
        .map(|(i, (formula, justification))| DerivationLine { index: i + 1, formula, justification })
        .collect()
}

/// Every line of `d` is valid. A failure means the checker accepted
/// something it should not have.
pub fn soundness_audit(d: &Derivation) -> std::result::Result<(), ProofError> {
    let decider = Decider::default();
    for line in &d.lines {
        let sig = signature_of(&[&line.formula]);
        if sig.len() > MAX_AUDIT_SIGNATURE {
            return reject(line.index, format!("signature {sig} is wider than {MAX_AUDIT_SIGNATURE} symbols"));
        }
        match decider.validity(&line.formula, d.system.fragment()) {
            Ok(v) if v.result => {}
            Ok(v) => {
                let (w, at) = v.witness.expect("invalid verdicts carry a witness");
                return reject(line.index, format!("not valid: fails at world {} of {w}", at.unwrap_or(0)));
            }
            Err(e) => return reject(line.index, e.to_string()),
        }
    }
    Ok(())
}

const KEYWORDS: [&str; 7] = ["ax", "taut", "mp", "eqc", "eqi", "necu", "necc"];

/// Parses the `.prf` format:
///
/// ```text
/// system AXC
/// theorem C (p -> p)          % optional
/// 1: (p -> p)      taut
/// 2: C (p -> p)    necc 1
/// ```
///
/// Lines starting with `%` are comments. A line's formula ends at the
/// first justification keyword after which the rest parses.
pub fn parse_prf(text: &str) -> Result<Derivation> {
    let mut system = None;
    let mut theorem = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fail = |msg: String| Error::Format { line: no, msg };
        let Some(sys) = system else {
            let name = line.strip_prefix("system").ok_or_else(|| fail("expected `system <name>`".into()))?;
            system = Some(name.trim().parse::<AxiomSystemId>().map_err(|e| fail(e.to_string()))?);
            continue;
        };
        let fragment = AxiomSystemId::fragment(sys);
        if let Some(t) = line.strip_prefix("theorem ") {
            if theorem.is_some() || !lines.is_empty() {
                return Err(fail("`theorem` must come once, before the first line".into()));
            }
            theorem = Some(parse(strip_comment(t), fragment).map_err(|e| fail(e.to_string()))?);
            continue;
        }
        let (label, rest) =
            line.split_once(':').ok_or_else(|| fail("expected `<n>: <formula> <justification>`".into()))?;
        let index: usize = label.trim().parse().map_err(|_| fail(format!("bad line number `{}`", label.trim())))?;
        let (formula, justification) = split_line(rest, fragment).map_err(fail)?;
        lines.push(DerivationLine { index, formula, justification });
    }
    let system = system.ok_or_else(|| Error::Format { line: 0, msg: "missing `system` header".into() })?;
    Ok(Derivation { system, theorem, lines })
}

fn strip_comment(s: &str) -> &str {
    s.split_once('%').map_or(s, |(a, _)| a).trim()
}

/// Byte offsets and text of the whitespace-separated tokens of `s`.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain([(s.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn split_line(rest: &str, fragment: Fragment) -> std::result::Result<(Formula, Justification), String> {
    let rest = strip_comment(rest);
    let mut last_err = "no justification found".to_string();
    for (at, tok) in tokens(rest) {
        if !KEYWORDS.contains(&tok) || at == 0 {
            continue;
        }
        let formula = match parse(rest[..at].trim(), fragment) {
            Ok(f) => f,
            Err(e) => {
                last_err = e.to_string();
                continue;
            }
        };
        match parse_justification(&rest[at..], fragment) {
            Ok(j) => return Ok((formula, j)),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn parse_justification(s: &str, fragment: Fragment) -> std::result::Result<Justification, String> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let num = |t: Option<&&str>| -> std::result::Result<usize, String> {
        t.and_then(|t| t.parse().ok()).ok_or_else(|| format!("`{}` needs line numbers", toks[0]))
    };
    let arity_of = |n: usize| {
        if toks.len() != n + 1 {
            Err(format!("`{}` takes {n} line number(s)", toks[0]))
        } else {
            Ok(())
        }
    };
    Ok(match toks[0] {
        "taut" => {
            arity_of(0)?;
            Justification::Taut
        }
        "mp" => {
            arity_of(2)?;
            Justification::Mp(num(toks.get(1))?, num(toks.get(2))?)
        }
        "eqc" | "eqi" | "necu" | "necc" => {
            arity_of(1)?;
            let i = num(toks.get(1))?;
            match toks[0] {
                "eqc" => Justification::Eqc(i),
                "eqi" => Justification::Eqi(i),
                "necu" => Justification::Necu(i),
                _ => Justification::Necc(i),
            }
        }
        "ax" => {
            let id: AxiomId =
                toks.get(1).ok_or("`ax` needs an axiom name")?.parse().map_err(|e: Error| e.to_string())?;
            let body = s.trim_start()[2..].trim_start();
            let body = body[toks[1].len()..].trim();
            let (arity, bindings) = parse_bindings(body, fragment)?;
            Justification::Axiom { id, arity, bindings }
        }
        other => return Err(format!("unknown justification `{other}`")),
    })
}

fn binding_name(tok: &str) -> Option<&str> {
    let (name, _) = tok.split_once('=')?;
    let mut chars = name.chars();
    (chars.next()?.is_ascii_lowercase() && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())).then_some(name)
}

/// `name=<formula>` bindings, each running until the next `name=` token;
/// `k`, `m` and `n` take numbers.
fn parse_bindings(body: &str, fragment: Fragment) -> std::result::Result<(Arity, Substitution), String> {
    let starts: Vec<usize> =
        tokens(body).into_iter().filter(|(_, t)| binding_name(t).is_some()).map(|(i, _)| i).collect();
    if !body.is_empty() && starts.first() != Some(&0) {
        return Err(format!("expected `name=<formula>` bindings, found `{body}`"));
    }
    let mut arity = Arity::default();
    let mut sub = BTreeMap::new();
    for (n, &start) in starts.iter().enumerate() {
        let end = starts.get(n + 1).copied().unwrap_or(body.len());
        let (name, value) = body[start..end].split_once('=').expect("binding token has `=`");
        let value = value.trim();
        let slot = match name {
            "k" => Some(&mut arity.k),
            "m" => Some(&mut arity.m),
            "n" => Some(&mut arity.n),
            _ => None,
        };
        if let Some(slot) = slot {
            *slot = Some(value.parse().map_err(|_| format!("`{name}` needs a number"))?);
            continue;
        }
        let f = parse(value, fragment).map_err(|e| format!("binding {name}: {e}"))?;
        if sub.insert(name.to_string(), f).is_some() {
            return Err(format!("binding {name} given twice"));
        }
    }
    Ok((arity, sub))
}

/// Renders `d` in the `.prf` format, justifications aligned.
pub fn print_prf(d: &Derivation) -> String {
    let mut out = format!("system {}\n", d.system);
    if let Some(t) = &d.theorem {
        out.push_str(&format!("theorem {t}\n"));
    }
    let rendered: Vec<(String, String)> =
        d.lines.iter().map(|l| (format!("{}: {}", l.index, l.formula), l.justification.to_string())).collect();
    let width = rendered.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
    for (a, b) in rendered {
        out.push_str(&format!("{a:<width$}  {b}\n"));
    }
    out
}

/// The derivations shipped with the crate, by file stem.
pub const CORPUS: [(&str, &str); 6] = [
    ("necc_p_implies_p", include_str!("../data/proofs/necc_p_implies_p.prf")),
    ("necc_expanded", include_str!("../data/proofs/necc_expanded.prf")),
    ("ax1u_circ", include_str!("../data/proofs/ax1u_circ.prf")),
    ("ax2u_circ", include_str!("../data/proofs/ax2u_circ.prf")),
    ("ax3u_circ", include_str!("../data/proofs/ax3u_circ.prf")),
    ("star_c_p", include_str!("../data/proofs/star_c_p.prf")),
];

pub fn corpus() -> Result<Vec<(&'static str, Derivation)>> {
    CORPUS.iter().map(|(name, text)| Ok((*name, parse_prf(text)?))).collect()
}

/// Variants of `d` that drop one line, or swap the justifications of two
/// lines whose justifications differ.
pub fn mutants(d: &Derivation) -> Vec<(String, Derivation)> {
    let mut out = Vec::new();
    for i in 0..d.lines.len() {
        let mut m = d.clone();
        let gone = m.lines.remove(i);
        out.push((format!("drop line {}", gone.index), m));
    }
    for i in 0..d.lines.len() {
        for j in i + 1..d.lines.len() {
            if d.lines[i].justification == d.lines[j].justification {
                continue;
            }
            let mut m = d.clone();
            let tmp = m.lines[i].justification.clone();
            m.lines[i].justification = m.lines[j].justification.clone();
            m.lines[j].justification = tmp;
            out.push((format!("swap justifications of lines {} and {}", d.lines[i].index, d.lines[j].index), m));
        }
    }
    out
}
