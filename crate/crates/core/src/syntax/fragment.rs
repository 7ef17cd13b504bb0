use std::fmt;
use std::str::FromStr;

use super::{Formula, Node};

#[allow(non_camel_case_types, clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fragment {
    /// Propositional formulas in negation normal form (team reading).
    PL_NNF,
    /// Team logic D: literals, `D`/`~D` over symbols, `&`, `|`.
    TEAM_D,
    /// Team logic I: literals, un-negated `I` over symbols, `&`, `|`.
    TEAM_I,
    LC,
    LD,
    LD_REL,
    LI,
    LU,
}

impl Fragment {
    pub const ALL: [Fragment; 8] = [
        Fragment::PL_NNF,
        Fragment::TEAM_D,
        Fragment::TEAM_I,
        Fragment::LC,
        Fragment::LD,
        Fragment::LD_REL,
        Fragment::LI,
        Fragment::LU,
    ];

    pub fn is_team(self) -> bool {
        matches!(self, Fragment::PL_NNF | Fragment::TEAM_D | Fragment::TEAM_I)
    }

    pub fn name(self) -> &'static str {
        match self {
            Fragment::PL_NNF => "pl",
            Fragment::TEAM_D => "d",
            Fragment::TEAM_I => "i",
            Fragment::LC => "lc",
            Fragment::LD => "ld",
            Fragment::LD_REL => "ld-rel",
            Fragment::LI => "li",
            Fragment::LU => "lu",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fragment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Fragment::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fragment `{s}` (expected one of pl, d, i, lc, ld, ld-rel, li, lu)"))
    }
}

/// One broken fragment rule, naming the offending subterm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subterm: String,
    pub rule: &'static str,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.subterm, self.rule)
    }
}

pub fn validate_fragment(phi: &Formula, fragment: Fragment) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if fragment.is_team() {
        team(phi, fragment, &mut out);
    } else {
        kripke(phi, fragment, &mut out);
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn violation(out: &mut Vec<Violation>, f: &Formula, rule: &'static str) {
    out.push(Violation { subterm: f.to_string(), rule });
}

fn all_symbols(fs: &[Formula]) -> bool {
    fs.iter().all(|f| f.as_prop().is_some())
}

fn team(f: &Formula, fragment: Fragment, out: &mut Vec<Violation>) {
    match f.node() {
        Node::Prop(_) => {}
        Node::Not(a) => match a.node() {
            Node::Prop(_) => {}
            Node::Dep { .. } if fragment == Fragment::TEAM_D => team(a, fragment, out),
            Node::Indep { .. } => violation(out, f, "independence atoms may not occur negated"),
            _ => violation(out, f, "negation only in front of atoms"),
        },
        Node::And(a, b) | Node::Or(a, b) => {
            team(a, fragment, out);
            team(b, fragment, out);
        }
        Node::Dep { premises, conclusion } if fragment == Fragment::TEAM_D => {
            if !all_symbols(premises) || conclusion.as_prop().is_none() {
                violation(out, f, "dependence atoms take proposition symbols only");
            }
        }
        Node::Indep { left, conditions, right } if fragment == Fragment::TEAM_I => {
            if !all_symbols(left) || !all_symbols(conditions) || !all_symbols(right) {
                violation(out, f, "independence atoms take proposition symbols only");
            }
        }
        Node::Implies(..) => violation(out, f, "implication is not a team connective"),
        _ => violation(out, f, "operator not in this team fragment"),
    }
}

fn kripke(f: &Formula, fragment: Fragment, out: &mut Vec<Violation>) {
    let ok = match f.node() {
        Node::Prop(_) | Node::Not(_) | Node::Implies(..) | Node::And(..) | Node::Or(..) => true,
        Node::Dep { premises, .. } => match fragment {
            Fragment::LC => premises.is_empty(),
            Fragment::LD | Fragment::LD_REL => true,
            _ => false,
        },
        Node::Indep { .. } => fragment == Fragment::LI,
        Node::RelDep { .. } => fragment == Fragment::LD_REL,
        Node::UBox(_) => fragment == Fragment::LU,
    };
    if !ok {
        let rule = match f.node() {
            Node::Dep { premises, .. } if premises.is_empty() => "C is not part of this language",
            Node::Dep { .. } => "dependence with premises needs ld",
            Node::Indep { .. } => "independence needs li",
            Node::RelDep { .. } => "relativised dependence needs ld-rel",
            _ => "[U] needs lu",
        };
        violation(out, f, rule);
    }
    for c in f.children() {
        kripke(c, fragment, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::parse_unchecked;

    fn ok(s: &str, fr: Fragment) -> bool {
        validate_fragment(&parse_unchecked(s).unwrap(), fr).is_ok()
    }

    #[test]
    fn examples() {
        assert!(ok("D(p;q)", Fragment::TEAM_D));
        assert!(!ok("D(p | q; r)", Fragment::TEAM_D));
        assert!(ok("D(p | q; r)", Fragment::LD));
    }

    #[test]
    fn team_fragments() {
        assert!(ok("~D(p;q) | ~p & C q", Fragment::TEAM_D));
        assert!(!ok("~I(p;;q)", Fragment::TEAM_I));
        assert!(ok("I(p, q; r; q) | ~p", Fragment::TEAM_I));
        assert!(!ok("p -> q", Fragment::PL_NNF));
        assert!(!ok("~(p & q)", Fragment::PL_NNF));
        assert!(ok("#T & #F", Fragment::PL_NNF));
        assert!(!ok("I(p;;q)", Fragment::TEAM_D));
    }

    #[test]
    fn kripke_fragments() {
        assert!(ok("C (p -> C q)", Fragment::LC));
        assert!(!ok("D(p;q)", Fragment::LC));
        assert!(!ok("I(p;;q)", Fragment::LD));
        assert!(!ok("~I(p & C p;;q)", Fragment::LI));
        assert!(ok("~I(p & q;;q)", Fragment::LI));
        assert!(ok("D^{p}(q;r)", Fragment::LD_REL));
        assert!(!ok("D^{p}(q;r)", Fragment::LD));
        assert!(ok("<U>p -> [U]<U>p", Fragment::LU));
        assert!(!ok("[u]p", Fragment::LU));
    }

    #[test]
    fn names_round_trip() {
        for f in Fragment::ALL {
            assert_eq!(f.name().parse::<Fragment>().unwrap(), f);
        }
    }
}
