//! Types over a list of formulas, type normal forms, and split pairs.
//!
//! Ordering is canonical throughout: a type is identified by its polarity
//! bitmask (bit `i` set iff `base[i]` occurs un-negated) and types are listed
//! by ascending bitmask. A normal form is a set of such bitmasks, stored as a
//! bitmask over type indices, so `dnf_over` counts through them in order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kripke_semantics::eval_kripke;
use crate::models::SdModel;
use crate::syntax::{Formula, Fragment};

/// Largest base whose normal forms fit in a `u64` set of types.
pub const MAX_TYPE_BASE: usize = 6;
/// Largest base for which all normal forms are enumerated.
pub const MAX_DNF_BASE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeConjunction {
    pub base: Arc<[Formula]>,
    pub polarity: u32,
}

impl TypeConjunction {
    /// `ψ1 & … & ψk`, left-nested; `#T` for the empty base.
    pub fn render(&self) -> Formula {
        Formula::conj_all(self.base.iter().enumerate().map(|(i, f)| {
            if self.polarity >> i & 1 == 1 {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeNormalForm {
    pub base: Arc<[Formula]>,
    /// Bit `t` set iff the type with polarity `t` is a disjunct.
    pub disjuncts: u64,
}

impl TypeNormalForm {
    pub fn new(base: Arc<[Formula]>, disjuncts: u64) -> Result<TypeNormalForm> {
        guard(base.len(), MAX_TYPE_BASE)?;
        Ok(TypeNormalForm { base, disjuncts })
    }

    /// The normal form whose disjuncts are all types over `base`.
    pub fn full(base: Arc<[Formula]>) -> Result<TypeNormalForm> {
        guard(base.len(), MAX_TYPE_BASE)?;
        let n = 1u32 << base.len();
        let mask = if n == 64 { !0 } else { (1u64 << n) - 1 };
        Ok(TypeNormalForm { base, disjuncts: mask })
    }

    pub fn polarities(&self) -> impl Iterator<Item = u32> + '_ {
        (0..64u32).filter(|t| self.disjuncts >> t & 1 == 1)
    }

    pub fn types(&self) -> Vec<TypeConjunction> {
        self.polarities().map(|polarity| TypeConjunction { base: self.base.clone(), polarity }).collect()
    }

    pub fn len(&self) -> usize {
        self.disjuncts.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts == 0
    }

    /// Disjunction of the selected types in ascending order; `#F` if none.
    pub fn render(&self) -> Formula {
        Formula::disj_all(self.types().iter().map(TypeConjunction::render))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub left: TypeNormalForm,
    pub right: TypeNormalForm,
}

fn guard(k: usize, max: usize) -> Result<()> {
    if k > max {
        return Err(Error::Guard(format!("type base of {k} formulas, limit is {max}")));
    }
    Ok(())
}

/// All `2^k` types over `base`, by ascending polarity; `[#T]` for `[]`.
pub fn types_over(base: &[Formula]) -> Result<Vec<TypeConjunction>> {
    guard(base.len(), MAX_TYPE_BASE)?;
    let base: Arc<[Formula]> = base.into();
    Ok((0..1u32 << base.len()).map(|polarity| TypeConjunction { base: base.clone(), polarity }).collect())
}

/// All `2^(2^k)` type normal forms over `base`; `⊥` (no disjuncts) first.
pub fn dnf_over(base: &[Formula]) -> Result<impl Iterator<Item = TypeNormalForm>> {
    guard(base.len(), MAX_DNF_BASE)?;
    let base: Arc<[Formula]> = base.into();
    let count = 1u64 << (1u32 << base.len());
    Ok((0..count).map(move |disjuncts| TypeNormalForm { base: base.clone(), disjuncts }))
}

/// Every `(α, β)` whose disjunct sets cover `χ`'s: each disjunct goes
/// left-only, right-only, or both, so there are `3^n` pairs. The lowest
/// disjunct is the fastest-varying digit, with the digits 0, 1 and 2
/// meaning left-only, right-only and both.
pub fn split_pairs(chi: &TypeNormalForm) -> Vec<SplitPair> {
    let members: Vec<u32> = chi.polarities().collect();
    let total = 3usize.pow(members.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let (mut l, mut r, mut c) = (0u64, 0u64, code);
        for &t in &members {
            match c % 3 {
                0 => l |= 1 << t,
                1 => r |= 1 << t,
                _ => {
                    l |= 1 << t;
                    r |= 1 << t;
                }
            }
            c /= 3;
        }
        out.push(SplitPair {
            left: TypeNormalForm { base: chi.base.clone(), disjuncts: l },
            right: TypeNormalForm { base: chi.base.clone(), disjuncts: r },
        });
    }
    out
}

/// The unique type over `base` true at world `w` of `model`.
pub fn type_of_world(model: &SdModel, w: usize, base: &[Formula], fragment: Fragment) -> Result<TypeConjunction> {
    guard(base.len(), MAX_TYPE_BASE)?;
    let mut polarity = 0;
    for (i, f) in base.iter().enumerate() {
        if eval_kripke(model, w, f, fragment)? {
            polarity |= 1 << i;
        }
    }
    if base.is_empty() {
        model.world(w)?;
    }
    Ok(TypeConjunction { base: base.into(), polarity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{full_model, Signature};
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s, Fragment::LD).unwrap()
    }

    #[test]
    fn types_examples() {
        let t = types_over(&[]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].render(), Formula::top());
        let t = types_over(&[f("p")]).unwrap();
        assert_eq!(t.iter().map(|x| x.render()).collect::<Vec<_>>(), [f("~p"), f("p")]);
        assert_eq!(types_over(&[f("p"), f("q")]).unwrap().len(), 4);
        assert_eq!(types_over(&[f("p"), f("q")]).unwrap()[2].render(), f("~p & q"));
    }

    #[test]
    fn dnf_examples() {
        let d: Vec<Formula> = dnf_over(&[]).unwrap().map(|x| x.render()).collect();
        assert_eq!(d, [Formula::bot(), Formula::top()]);
        assert_eq!(dnf_over(&[f("p")]).unwrap().count(), 4);
        assert_eq!(dnf_over(&[f("p"), f("q")]).unwrap().count(), 16);
        let d: Vec<Formula> = dnf_over(&[f("p")]).unwrap().map(|x| x.render()).collect();
        assert_eq!(d, [f("#F"), f("~p"), f("p"), f("~p | p")]);
        assert!(dnf_over(&[f("p"), f("q"), f("r"), f("s"), f("t")]).is_err());
    }

    #[test]
    fn split_examples() {
        let base: Arc<[Formula]> = vec![f("p")].into();
        let chi = TypeNormalForm::full(base.clone()).unwrap();
        let pairs = split_pairs(&chi);
        assert_eq!(pairs.len(), 9);
        for p in &pairs {
            assert_eq!(p.left.disjuncts | p.right.disjuncts, chi.disjuncts);
        }
        let bot = TypeNormalForm::new(base.clone(), 0).unwrap();
        assert_eq!(split_pairs(&bot), vec![SplitPair { left: bot.clone(), right: bot.clone() }]);
        let one = TypeNormalForm::new(base, 0b10).unwrap();
        assert_eq!(split_pairs(&one).len(), 3);
    }

    #[test]
    fn type_of_world_examples() {
        let full = full_model(&Signature::new(["p", "q"]).unwrap()).unwrap();
        let t = type_of_world(&full, 1, &[f("p"), f("q")], Fragment::LD).unwrap();
        assert_eq!(t.render(), f("p & ~q"));
        assert_eq!(type_of_world(&full, 1, &[], Fragment::LD).unwrap().render(), Formula::top());
        let m = SdModel::from_sets(&["p", "q"], &[&["p", "q"]]).unwrap();
        assert_eq!(type_of_world(&m, 0, &[f("p & q")], Fragment::LD).unwrap().render(), f("p & q"));
    }
}
