//! Translations between the languages, plus the expansions of `D` and `I`
//! into the constancy language.
//!
//! Every family of conjuncts or disjuncts is built in the canonical
//! normal-form order, so outputs are reproducible byte for byte.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::normal_forms::{dnf_over, split_pairs, types_over, TypeNormalForm};
use crate::syntax::{props_of, validate_fragment, Formula, Fragment, Node};

fn require(phi: &Formula, fragment: Fragment) -> Result<()> {
    validate_fragment(phi, fragment).map_err(|violations| Error::Fragment { fragment, violations })
}

/// Bottom-up rewrite. `f` receives the original node and the node rebuilt
/// from already-rewritten children. Shared input nodes are rewritten once.
fn rewrite(phi: &Formula, f: &mut dyn FnMut(&Formula, Formula) -> Result<Formula>) -> Result<Formula> {
    fn go(
        phi: &Formula,
        f: &mut dyn FnMut(&Formula, Formula) -> Result<Formula>,
        memo: &mut HashMap<usize, Formula>,
    ) -> Result<Formula> {
        if let Some(done) = memo.get(&phi.id()) {
            return Ok(done.clone());
        }
        let rebuilt = phi.map_children(|c| go(c, f, memo))?;
        let out = f(phi, rebuilt)?;
        memo.insert(phi.id(), out.clone());
        Ok(out)
    }
    go(phi, f, &mut HashMap::new())
}

/// Which universal diamond the independence expansion uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diamond {
    /// `<u>a = ~((~a) & C ~a)`, in LC.
    U,
    /// `<u'>a = ~((~a) & I(~a;;~a))`, in LI.
    UPrime,
}

impl Diamond {
    fn apply(self, a: Formula) -> Formula {
        match self {
            Diamond::U => Formula::diamond_u(a),
            Diamond::UPrime => Formula::diamond_u_prime(a),
        }
    }
}

/// `∨_{χ ∈ DNF(premises)} [u](χ <-> conclusion)`.
pub fn dep_expansion(premises: &[Formula], conclusion: &Formula) -> Result<Formula> {
    Ok(Formula::disj_all(dnf_over(premises)?.map(|chi| Formula::box_u(Formula::iff(chi.render(), conclusion.clone())))))
}

/// `∧_{(a,t,b)} ((<>(t & a) & <>(t & b)) -> <>(t & a & b))` over the types
/// `a` of `left`, `t` of `conditions` and `b` of `right`, in that nesting.
pub fn indep_expansion(
    left: &[Formula],
    conditions: &[Formula],
    right: &[Formula],
    diamond: Diamond,
) -> Result<Formula> {
    let (ls, cs, rs) = (types_over(left)?, types_over(conditions)?, types_over(right)?);
    let mut conjuncts = Vec::with_capacity(ls.len() * cs.len() * rs.len());
    for a in &ls {
        let a = a.render();
        for t in &cs {
            let t = t.render();
            let ta = Formula::and(t.clone(), a.clone());
            for b in &rs {
                let b = b.render();
                let lhs = Formula::and(diamond.apply(ta.clone()), diamond.apply(Formula::and(t.clone(), b.clone())));
                conjuncts.push(Formula::implies(lhs, diamond.apply(Formula::and(ta.clone(), b))));
            }
        }
    }
    Ok(Formula::conj_all(conjuncts))
}

pub fn expand_dep(phi: &Formula) -> Result<Formula> {
    match phi.node() {
        Node::Dep { premises, conclusion } => dep_expansion(premises, conclusion),
        _ => Err(Error::Precondition(format!("expand_dep needs a D node, got {phi}"))),
    }
}

/// The independence expansion with the LC diamond `<u>`.
pub fn expand_indep(phi: &Formula) -> Result<Formula> {
    match phi.node() {
        Node::Indep { left, conditions, right } => indep_expansion(left, conditions, right, Diamond::U),
        _ => Err(Error::Precondition(format!("expand_indep needs an I node, got {phi}"))),
    }
}

/// LD to LI: `D(φs; ψ)` becomes `I(ψ; φs; ψ)`, so `C ψ` becomes `I(ψ;;ψ)`.
pub fn t_ld_to_li(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LD)?;
    rewrite(phi, &mut |_, f| {
        Ok(match f.node() {
            Node::Dep { premises, conclusion } => {
                Formula::indep(vec![conclusion.clone()], premises.clone(), vec![conclusion.clone()])
            }
            _ => f,
        })
    })
}

/// TEAM_D to TEAM_I: `D(ps; q)` becomes `I(q; ps; q)`. Negated `D` atoms
/// have no image.
pub fn tprime_d_to_i(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::TEAM_D)?;
    rewrite(phi, &mut |orig, f| match f.node() {
        Node::Not(_) if matches!(orig.node(), Node::Not(a) if matches!(a.node(), Node::Dep { .. })) => {
            Err(Error::Unsupported(format!("negated dependence atom {orig} has no independence counterpart")))
        }
        Node::Dep { premises, conclusion } => {
            Ok(Formula::indep(vec![conclusion.clone()], premises.clone(), vec![conclusion.clone()]))
        }
        _ => Ok(f),
    })
}

/// LI to LD (in fact LC): each `I` node becomes its `<u>` expansion.
pub fn s_li_to_ld(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LI)?;
    rewrite(phi, &mut |_, f| match f.node() {
        Node::Indep { left, conditions, right } => indep_expansion(left, conditions, right, Diamond::U),
        _ => Ok(f),
    })
}

/// TEAM_I to LD: `t_χ(φ)` with `χ` the disjunction of all types over the
/// symbols of `φ`. A team satisfies `φ` iff the output holds globally.
///
/// The output tree is exponential in the number of symbols and in the
/// nesting of disjunctions; identical subterms are shared.
pub fn tchi_i_to_ld(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::TEAM_I)?;
    let base: Arc<[Formula]> = props_of(phi).symbols().iter().map(Formula::sym).collect();
    let chi = TypeNormalForm::full(base)?;
    TChi::default().t(&chi, phi)
}

#[derive(Default)]
struct TChi {
    rendered: HashMap<u64, Formula>,
    done: HashMap<(u64, usize), Formula>,
}

impl TChi {
    fn render(&mut self, chi: &TypeNormalForm) -> Formula {
        self.rendered.entry(chi.disjuncts).or_insert_with(|| chi.render()).clone()
    }

    fn t(&mut self, chi: &TypeNormalForm, phi: &Formula) -> Result<Formula> {
        let key = (chi.disjuncts, phi.id());
        if let Some(f) = self.done.get(&key) {
            return Ok(f.clone());
        }
        let c = self.render(chi);
        let out = match phi.node() {
            Node::Prop(_) => Formula::box_u(Formula::implies(c, phi.clone())),
            Node::Not(_) => Formula::box_u(Formula::implies(c, phi.clone())),
            Node::And(a, b) => Formula::and(self.t(chi, a)?, self.t(chi, b)?),
            Node::Or(a, b) => {
                let mut disjuncts = Vec::new();
                for pair in split_pairs(chi) {
                    disjuncts.push(Formula::and(self.t(&pair.left, a)?, self.t(&pair.right, b)?));
                }
                Formula::disj_all(disjuncts)
            }
            Node::Indep { left, conditions, right } => {
                let (ls, cs, rs) = (types_over(left)?, types_over(conditions)?, types_over(right)?);
                let mut conjuncts = Vec::new();
                for a in &ls {
                    let a = a.render();
                    for m in &cs {
                        let cm = Formula::and(c.clone(), m.render());
                        let cma = Formula::and(cm.clone(), a.clone());
                        for b in &rs {
                            let b = b.render();
                            let lhs = Formula::and(
                                Formula::diamond_u(cma.clone()),
                                Formula::diamond_u(Formula::and(cm.clone(), b.clone())),
                            );
                            conjuncts.push(Formula::implies(lhs, Formula::diamond_u(Formula::and(cma.clone(), b))));
                        }
                    }
                }
                Formula::conj_all(conjuncts)
            }
            _ => unreachable!("validated as TEAM_I"),
        };
        self.done.insert(key, out.clone());
        Ok(out)
    }
}

/// LC to LU: `C φ` becomes `[U]φ | [U]~φ`.
pub fn plus_lc_to_lu(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LC)?;
    rewrite(phi, &mut |_, f| {
        Ok(match f.node() {
            Node::Dep { conclusion, .. } => {
                Formula::or(Formula::ubox(conclusion.clone()), Formula::ubox(Formula::not(conclusion.clone())))
            }
            _ => f,
        })
    })
}

/// LU to LC: `[U]φ` becomes `φ & C φ`.
pub fn circ_lu_to_lc(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LU)?;
    rewrite(phi, &mut |_, f| {
        Ok(match f.node() {
            Node::UBox(a) => Formula::box_u(a.clone()),
            _ => f,
        })
    })
}

/// LC to LC: `C φ` becomes `(φ & C φ) | (~φ & C ~φ)`. Equal to `circ` after
/// `plus`.
pub fn star_lc_to_lc(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LC)?;
    rewrite(phi, &mut |_, f| {
        Ok(match f.node() {
            Node::Dep { conclusion, .. } => {
                Formula::or(Formula::box_u(conclusion.clone()), Formula::box_u(Formula::not(conclusion.clone())))
            }
            _ => f,
        })
    })
}

/// LD to LC: `D` nodes with premises become their type-normal-form
/// expansion over the translated premises; `C` stays.
pub fn tr_ld_to_lc(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LD)?;
    rewrite(phi, &mut |_, f| match f.node() {
        Node::Dep { premises, conclusion } if !premises.is_empty() => dep_expansion(premises, conclusion),
        _ => Ok(f),
    })
}

/// LD_REL to LD: peel premises off `D^θ` from the right, then use
/// `C^θ φ = [u](θ -> φ) | [u](θ -> ~φ)`.
pub fn reldep_eliminate(phi: &Formula) -> Result<Formula> {
    require(phi, Fragment::LD_REL)?;
    fn rel(theta: &Formula, premises: &[Formula], concl: &Formula) -> Formula {
        match premises.split_last() {
            None => Formula::or(
                Formula::box_u(Formula::implies(theta.clone(), concl.clone())),
                Formula::box_u(Formula::implies(theta.clone(), Formula::not(concl.clone()))),
            ),
            Some((last, init)) => Formula::and(
                rel(&Formula::and(theta.clone(), last.clone()), init, concl),
                rel(&Formula::and(theta.clone(), Formula::not(last.clone())), init, concl),
            ),
        }
    }
    rewrite(phi, &mut |_, f| {
        Ok(match f.node() {
            Node::RelDep { condition, premises, conclusion } => rel(condition, premises, conclusion),
            _ => f,
        })
    })
}

/// Language tags for composite translation paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lang {
    D,
    I,
    Ld,
    Li,
    Lc,
    Lu,
    LdRel,
}

impl Lang {
    pub const ALL: [Lang; 7] = [Lang::D, Lang::I, Lang::Ld, Lang::Li, Lang::Lc, Lang::Lu, Lang::LdRel];

    pub fn fragment(self) -> Fragment {
        match self {
            Lang::D => Fragment::TEAM_D,
            Lang::I => Fragment::TEAM_I,
            Lang::Ld => Fragment::LD,
            Lang::Li => Fragment::LI,
            Lang::Lc => Fragment::LC,
            Lang::Lu => Fragment::LU,
            Lang::LdRel => Fragment::LD_REL,
        }
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.fragment().name())
    }
}

impl FromStr for Lang {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Lang::ALL
            .into_iter()
            .find(|l| l.fragment().name() == s)
            .ok_or_else(|| format!("unknown language `{s}` (expected one of d, i, ld, li, lc, lu, ld-rel)"))
    }
}

type Step = fn(&Formula) -> Result<Formula>;

fn include_lc(phi: &Formula) -> Result<Formula> {
    Ok(phi.clone())
}

/// Direct translations. `lc -> ld` is the inclusion.
const EDGES: [(Lang, Lang, &str, Step); 9] = [
    (Lang::D, Lang::I, "t'", tprime_d_to_i),
    (Lang::I, Lang::Ld, "t_chi", tchi_i_to_ld),
    (Lang::Ld, Lang::Li, "t", t_ld_to_li),
    (Lang::Li, Lang::Ld, "s", s_li_to_ld),
    (Lang::Ld, Lang::Lc, "tr", tr_ld_to_lc),
    (Lang::Lc, Lang::Lu, "plus", plus_lc_to_lu),
    (Lang::Lu, Lang::Lc, "circ", circ_lu_to_lc),
    (Lang::LdRel, Lang::Ld, "reldep", reldep_eliminate),
    (Lang::Lc, Lang::Ld, "inclusion", include_lc),
];

/// Shortest chain of direct translations from `from` to `to`, by name.
pub fn translation_path(from: Lang, to: Lang) -> Result<Vec<&'static str>> {
    Ok(path(from, to)?.into_iter().map(|i| EDGES[i].2).collect())
}

fn path(from: Lang, to: Lang) -> Result<Vec<usize>> {
    let mut prev: HashMap<Lang, Option<usize>> = HashMap::from([(from, None)]);
    let mut frontier = vec![from];
    while !frontier.is_empty() && !prev.contains_key(&to) {
        let mut next = Vec::new();
        for l in frontier {
            for (i, e) in EDGES.iter().enumerate() {
                if e.0 == l && !prev.contains_key(&e.1) {
                    prev.insert(e.1, Some(i));
                    next.push(e.1);
                }
            }
        }
        frontier = next;
    }
    if !prev.contains_key(&to) {
        return Err(Error::Unsupported(format!("no translation from {from} to {to}")));
    }
    let mut out = Vec::new();
    let mut at = to;
    while let Some(Some(i)) = prev.get(&at) {
        out.push(*i);
        at = EDGES[*i].0;
    }
    out.reverse();
    Ok(out)
}

/// Runs the composite translation from `from` to `to`. The input is first
/// checked against `from`.
pub fn translate(phi: &Formula, from: Lang, to: Lang) -> Result<Formula> {
    require(phi, from.fragment())?;
    let mut f = phi.clone();
    for i in path(from, to)? {
        f = (EDGES[i].3)(&f)?;
    }
    Ok(f)
}
