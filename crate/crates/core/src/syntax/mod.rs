//! Formula trees shared by every language in the crate.
//!
//! A [`Formula`] is a cheap handle onto an immutable node; clones share
//! structure, and evaluators memoize on node identity so that translated
//! formulas with heavy sharing stay tractable.

mod fragment;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

pub use fragment::{validate_fragment, Fragment, Violation};
pub use parse::parse;

/// A proposition symbol. Compared by exact string equality.
pub type Symbol = Arc<str>;

/// Symbol used to spell out `#T` and `#F`; never accepted in user input.
pub const RESERVED: &str = "_t";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(Arc<Node>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Prop(Symbol),
    Not(Formula),
    Implies(Formula, Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    /// `D(premises; conclusion)`; with no premises this is `C conclusion`.
    Dep {
        premises: Vec<Formula>,
        conclusion: Formula,
    },
    Indep {
        left: Vec<Formula>,
        conditions: Vec<Formula>,
        right: Vec<Formula>,
    },
    /// `D^{condition}(premises; conclusion)`.
    RelDep {
        condition: Formula,
        premises: Vec<Formula>,
        conclusion: Formula,
    },
    UBox(Formula),
}

impl Deref for Formula {
    type Target = Node;
    fn deref(&self) -> &Node {
        &self.0
    }
}

impl From<Node> for Formula {
    fn from(n: Node) -> Self {
        Formula(Arc::new(n))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Formula {
    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Identity of the underlying node, stable while the formula is alive.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn prop(name: &str) -> Formula {
        Node::Prop(Symbol::from(name)).into()
    }

    pub fn sym(s: &Symbol) -> Formula {
        Node::Prop(s.clone()).into()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Node::Not(a).into()
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Node::Implies(a, b).into()
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Node::And(a, b).into()
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Node::Or(a, b).into()
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn dep(premises: Vec<Formula>, conclusion: Formula) -> Formula {
        Node::Dep { premises, conclusion }.into()
    }

    pub fn constancy(a: Formula) -> Formula {
        Formula::dep(Vec::new(), a)
    }

    pub fn indep(left: Vec<Formula>, conditions: Vec<Formula>, right: Vec<Formula>) -> Formula {
        Node::Indep { left, conditions, right }.into()
    }

    pub fn reldep(condition: Formula, premises: Vec<Formula>, conclusion: Formula) -> Formula {
        Node::RelDep { condition, premises, conclusion }.into()
    }

    pub fn ubox(a: Formula) -> Formula {
        Node::UBox(a).into()
    }

    /// `<U>a`, i.e. `~[U]~a`.
    pub fn udiamond(a: Formula) -> Formula {
        Formula::not(Formula::ubox(Formula::not(a)))
    }

    /// `[u]a`, i.e. `a & C a`.
    pub fn box_u(a: Formula) -> Formula {
        Formula::and(a.clone(), Formula::constancy(a))
    }

    /// `<u>a`, i.e. `~[u]~a`.
    pub fn diamond_u(a: Formula) -> Formula {
        Formula::not(Formula::box_u(Formula::not(a)))
    }

    /// `[u']a`, i.e. `a & I(a;;a)`.
    pub fn box_u_prime(a: Formula) -> Formula {
        Formula::and(a.clone(), Formula::indep(vec![a.clone()], Vec::new(), vec![a]))
    }

    /// `<u'>a`, i.e. `~[u']~a`.
    pub fn diamond_u_prime(a: Formula) -> Formula {
        Formula::not(Formula::box_u_prime(Formula::not(a)))
    }

    /// `#T`, spelled `(_t | ~_t)`.
    pub fn top() -> Formula {
        let t = Formula::prop(RESERVED);
        Formula::or(t.clone(), Formula::not(t))
    }

    /// `#F`, spelled `(_t & ~_t)`.
    pub fn bot() -> Formula {
        let t = Formula::prop(RESERVED);
        Formula::and(t.clone(), Formula::not(t))
    }

    /// Left-nested conjunction; `#T` when empty.
    pub fn conj_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; `#F` when empty.
    pub fn disj_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::bot)
    }

    pub fn is_top(&self) -> bool {
        matches!(self.node(), Node::Or(a, b) if is_reserved(a) && matches!(b.node(), Node::Not(c) if is_reserved(c)))
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.node(), Node::And(a, b) if is_reserved(a) && matches!(b.node(), Node::Not(c) if is_reserved(c)))
    }

    /// Recognizes the desugared biconditional `(a -> b) & (b -> a)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        if let Node::And(l, r) = self.node() {
            if let (Node::Implies(a, b), Node::Implies(c, d)) = (l.node(), r.node()) {
                if a == d && b == c {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn as_prop(&self) -> Option<&Symbol> {
        match self.node() {
            Node::Prop(s) => Some(s),
            _ => None,
        }
    }

    /// Immediate subformulas, in printing order.
    pub fn children(&self) -> Vec<&Formula> {
        match self.node() {
            Node::Prop(_) => vec![],
            Node::Not(a) | Node::UBox(a) => vec![a],
            Node::Implies(a, b) | Node::And(a, b) | Node::Or(a, b) => vec![a, b],
            Node::Dep { premises, conclusion } => premises.iter().chain([conclusion]).collect(),
            Node::Indep { left, conditions, right } => left.iter().chain(conditions).chain(right).collect(),
            Node::RelDep { condition, premises, conclusion } => {
                [condition].into_iter().chain(premises).chain([conclusion]).collect()
            }
        }
    }

    /// Rebuilds this node with every immediate child replaced by `f(child)`.
    pub fn map_children<E>(&self, mut f: impl FnMut(&Formula) -> Result<Formula, E>) -> Result<Formula, E> {
        fn list<E>(v: &[Formula], f: &mut impl FnMut(&Formula) -> Result<Formula, E>) -> Result<Vec<Formula>, E> {
            v.iter().map(f).collect()
        }
        Ok(match self.node() {
            Node::Prop(_) => return Ok(self.clone()),
            Node::Not(a) => Node::Not(f(a)?),
            Node::UBox(a) => Node::UBox(f(a)?),
            Node::Implies(a, b) => Node::Implies(f(a)?, f(b)?),
            Node::And(a, b) => Node::And(f(a)?, f(b)?),
            Node::Or(a, b) => Node::Or(f(a)?, f(b)?),
            Node::Dep { premises, conclusion } => {
                let premises = list(premises, &mut f)?;
                Node::Dep { premises, conclusion: f(conclusion)? }
            }
            Node::Indep { left, conditions, right } => Node::Indep {
                left: list(left, &mut f)?,
                conditions: list(conditions, &mut f)?,
                right: list(right, &mut f)?,
            },
            Node::RelDep { condition, premises, conclusion } => {
                let condition = f(condition)?;
                let premises = list(premises, &mut f)?;
                Node::RelDep { condition, premises, conclusion: f(conclusion)? }
            }
        }
        .into())
    }

    /// Number of nodes in the tree. Shared subtrees count once per occurrence.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn props(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.node() {
                Node::Prop(s) => {
                    out.insert(s.clone());
                }
                _ => stack.extend(f.children()),
            }
        }
        out
    }
}

fn is_reserved(f: &Formula) -> bool {
    matches!(f.node(), Node::Prop(s) if &**s == RESERVED)
}

/// The sorted set of symbols in `φ`, including `_t` when `#T`/`#F` occur.
pub fn props_of(phi: &Formula) -> crate::models::Signature {
    crate::models::Signature::from_sorted_set(phi.props())
}

/// Simultaneous uniform substitution; unbound symbols stay fixed.
pub fn subst(theta: &Formula, binding: &BTreeMap<Symbol, Formula>) -> Formula {
    fn go(f: &Formula, b: &BTreeMap<Symbol, Formula>) -> Formula {
        match f.node() {
            Node::Prop(s) => b.get(s).cloned().unwrap_or_else(|| f.clone()),
            _ => f.map_children(|c| Ok::<_, ()>(go(c, b))).unwrap(),
        }
    }
    if binding.is_empty() {
        return theta.clone();
    }
    go(theta, binding)
}

/// Replaces every `D` node with more than `k` premises by `#F`.
pub fn bot_substitute(phi: &Formula, k: usize) -> Formula {
    let inner = phi.map_children(|c| Ok::<_, ()>(bot_substitute(c, k))).unwrap();
    match inner.node() {
        Node::Dep { premises, .. } if premises.len() > k => Formula::bot(),
        _ => inner,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

pub use print::print;

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn subst_examples() {
        let c = parse("C q1", Fragment::LC).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::from("q1"), parse("p & q", Fragment::LC).unwrap());
        assert_eq!(subst(&c, &b), parse("C (p & q)", Fragment::LC).unwrap());
        assert_eq!(subst(&c, &BTreeMap::new()), c);

        let imp = parse("q1 -> q2", Fragment::LC).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::from("q1"), parse("~p", Fragment::LC).unwrap());
        b.insert(Symbol::from("q2"), p("q"));
        assert_eq!(subst(&imp, &b), parse("~p -> q", Fragment::LC).unwrap());
    }

    #[test]
    fn subst_is_simultaneous() {
        let f = parse("p -> q", Fragment::LC).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::from("p"), p("q"));
        b.insert(Symbol::from("q"), p("p"));
        assert_eq!(subst(&f, &b), parse("q -> p", Fragment::LC).unwrap());
    }

    #[test]
    fn bot_substitute_examples() {
        let ld = |s| parse(s, Fragment::LD).unwrap();
        assert_eq!(bot_substitute(&ld("D(p,p;p)"), 1), Formula::bot());
        assert_eq!(bot_substitute(&ld("D(p;q)"), 1), ld("D(p;q)"));
        assert_eq!(bot_substitute(&ld("C D(p,q;r)"), 1), ld("C #F"));
        let once = bot_substitute(&ld("D(D(p,q;r), p; q) & C D(p;q)"), 1);
        assert_eq!(bot_substitute(&once, 1), once);
    }

    #[test]
    fn props_examples() {
        let names =
            |s: &str, fr| props_of(&parse(s, fr).unwrap()).symbols().iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(names("D(p;q)", Fragment::LD), ["p", "q"]);
        assert_eq!(names("C #T", Fragment::LC), ["_t"]);
        assert_eq!(names("p", Fragment::LC), ["p"]);
    }

    #[test]
    fn top_and_bot_are_recognized() {
        assert!(Formula::top().is_top());
        assert!(Formula::bot().is_bot());
        assert!(!p("p").is_top());
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(parse("I(p;;q)", Fragment::LI).unwrap().size(), 3);
        assert_eq!(parse("~p & C q", Fragment::LC).unwrap().size(), 5);
    }
}
