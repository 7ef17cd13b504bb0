//! Exhaustive and seeded-random formula generation per fragment.
//!
//! Size is the node count of [`Formula::size`]. Exhaustive enumeration
//! lists formulas by size, then by constructor in the order
//! symbol, `~`, `->`, `&`, `|`, `D`/`C`, `I`, `D^θ`, `[U]`; the children
//! follow the same order recursively.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Fragment, Symbol};

/// Most premises a generated `D` term gets, keeping `dnf_over` cheap.
const MAX_GEN_PREMISES: usize = 3;

/// Deterministic generator for the random corpora.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All formulas of `fragment` over `sig` with at most `max_size` nodes.
pub fn enumerate_formulas(fragment: Fragment, sig: &[Symbol], max_size: usize) -> Result<Vec<Formula>> {
    if sig.is_empty() {
        return Err(Error::Precondition("formula enumeration needs at least one symbol".into()));
    }
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        let level = level(fragment, sig, s, &by_size);
        by_size[s] = level;
    }
    Ok(by_size.into_iter().flatten().collect())
}

fn level(fragment: Fragment, sig: &[Symbol], s: usize, by_size: &[Vec<Formula>]) -> Vec<Formula> {
    let props: Vec<Formula> = sig.iter().map(Formula::sym).collect();
    let mut out = Vec::new();
    if s == 1 {
        return props;
    }
    let team = fragment.is_team();
    // Negation.
    if team {
        if s == 2 {
            out.extend(props.iter().map(|p| Formula::not(p.clone())));
        }
        if fragment == Fragment::TEAM_D && s >= 3 {
            out.extend(symbol_dep_atoms(&props, s - 1).into_iter().map(Formula::not));
        }
    } else {
        out.extend(by_size[s - 1].iter().map(|a| Formula::not(a.clone())));
    }
    // Binary connectives.
    let ctors: &[fn(Formula, Formula) -> Formula] =
        if team { &[Formula::and, Formula::or] } else { &[Formula::implies, Formula::and, Formula::or] };
    for ctor in ctors {
        for a_size in 1..s.saturating_sub(1) {
            let b_size = s - 1 - a_size;
            for a in &by_size[a_size] {
                for b in &by_size[b_size] {
                    out.push(ctor(a.clone(), b.clone()));
                }
            }
        }
    }
    // Dependence.
    match fragment {
        Fragment::TEAM_D => out.extend(symbol_dep_atoms(&props, s)),
        Fragment::LC => out.extend(by_size[s - 1].iter().map(|a| Formula::constancy(a.clone()))),
        Fragment::LD | Fragment::LD_REL => {
            for c_size in 1..s {
                for premises in sequences(s - 1 - c_size, 0, by_size) {
                    for c in &by_size[c_size] {
                        out.push(Formula::dep(premises.clone(), c.clone()));
                    }
                }
            }
        }
        _ => {}
    }
    // Independence.
    match fragment {
        Fragment::TEAM_I => {
            let pool = props_only(&props, by_size.len());
            out.extend(indep_terms(s, &pool));
        }
        Fragment::LI => out.extend(indep_terms(s, by_size)),
        _ => {}
    }
    if fragment == Fragment::LD_REL {
        for theta_size in 1..s {
            for c_size in 1..s - theta_size {
                for premises in sequences(s - 1 - theta_size - c_size, 0, by_size) {
                    for theta in &by_size[theta_size] {
                        for c in &by_size[c_size] {
                            out.push(Formula::reldep(theta.clone(), premises.clone(), c.clone()));
                        }
                    }
                }
            }
        }
    }
    if fragment == Fragment::LU {
        out.extend(by_size[s - 1].iter().map(|a| Formula::ubox(a.clone())));
    }
    out
}

/// A by-size pool that only contains the symbols, at size 1.
fn props_only(props: &[Formula], len: usize) -> Vec<Vec<Formula>> {
    let mut pool = vec![Vec::new(); len.max(2)];
    pool[1] = props.to_vec();
    pool
}

/// `D(p1..pk; q)` over symbols with `k + 2 == s`.
fn symbol_dep_atoms(props: &[Formula], s: usize) -> Vec<Formula> {
    if s < 2 {
        return Vec::new();
    }
    let pool = props_only(props, s);
    let mut out = Vec::new();
    for premises in sequences(s - 2, 0, &pool) {
        for q in props {
            out.push(Formula::dep(premises.clone(), q.clone()));
        }
    }
    out
}

fn indep_terms(s: usize, pool: &[Vec<Formula>]) -> Vec<Formula> {
    let mut out = Vec::new();
    let budget = s - 1;
    for l_size in 1..budget {
        for c_size in 0..budget - l_size {
            let r_size = budget - l_size - c_size;
            for l in sequences(l_size, 1, pool) {
                for c in sequences(c_size, 0, pool) {
                    for r in sequences(r_size, 1, pool) {
                        out.push(Formula::indep(l.clone(), c.clone(), r));
                    }
                }
            }
        }
    }
    out
}

/// Sequences of pool formulas whose sizes sum to exactly `total`, with at
/// least `min_len` items.
fn sequences(total: usize, min_len: usize, pool: &[Vec<Formula>]) -> Vec<Vec<Formula>> {
    if total == 0 {
        return if min_len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.min(pool.len() - 1) {
        let rest = sequences(total - first, min_len.saturating_sub(1), pool);
        if rest.is_empty() {
            continue;
        }
        for f in &pool[first] {
            for r in &rest {
                let mut v = Vec::with_capacity(r.len() + 1);
                v.push(f.clone());
                v.extend(r.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// A random formula of `fragment` over `sig` with between 1 and `max_size`
/// nodes; the target size is drawn uniformly.
pub fn random_formula<R: Rng>(rng: &mut R, fragment: Fragment, sig: &[Symbol], max_size: usize) -> Formula {
    assert!(!sig.is_empty() && max_size >= 1);
    let size = rng.gen_range(1..=max_size);
    exact(rng, fragment, sig, size)
}

fn exact<R: Rng>(rng: &mut R, fragment: Fragment, sig: &[Symbol], s: usize) -> Formula {
    let prop = |rng: &mut R| Formula::sym(sig.choose(rng).unwrap());
    if s == 1 {
        return prop(rng);
    }
    #[derive(Clone, Copy)]
    enum K {
        Not,
        Lit,
        Bin,
        C,
        Dep,
        NegAtom,
        Atom,
        Indep,
        Rel,
        Box,
    }
    let mut options = Vec::new();
    let team = fragment.is_team();
    if team {
        if s == 2 {
            options.push(K::Lit);
        }
        if s >= 3 {
            options.push(K::Bin);
        }
        if fragment == Fragment::TEAM_D && s - 2 <= MAX_GEN_PREMISES {
            options.push(K::Atom);
        }
        if fragment == Fragment::TEAM_D && s >= 3 && s - 3 <= MAX_GEN_PREMISES {
            options.push(K::NegAtom);
        }
        if fragment == Fragment::TEAM_I && s >= 3 {
            options.push(K::Indep);
        }
    } else {
        options.push(K::Not);
        if s >= 3 {
            options.push(K::Bin);
        }
        match fragment {
            Fragment::LC => options.push(K::C),
            Fragment::LD | Fragment::LD_REL => {
                options.push(K::C);
                if s >= 3 {
                    options.push(K::Dep);
                }
                if fragment == Fragment::LD_REL && s >= 3 {
                    options.push(K::Rel);
                }
            }
            Fragment::LI if s >= 3 => options.push(K::Indep),
            Fragment::LU => options.push(K::Box),
            _ => {}
        }
    }
    let sub = |rng: &mut R, n: usize| exact(rng, fragment, sig, n);
    match *options.choose(rng).expect("some constructor fits") {
        K::Lit => Formula::not(prop(rng)),
        K::Not => Formula::not(sub(rng, s - 1)),
        K::C => Formula::constancy(sub(rng, s - 1)),
        K::Box => Formula::ubox(sub(rng, s - 1)),
        K::Bin => {
            let a = rng.gen_range(1..s - 1);
            let (x, y) = (sub(rng, a), sub(rng, s - 1 - a));
            match rng.gen_range(0..if team { 2 } else { 3 }) {
                0 => Formula::and(x, y),
                1 => Formula::or(x, y),
                _ => Formula::implies(x, y),
            }
        }
        K::Atom => Formula::dep((0..s - 2).map(|_| prop(rng)).collect(), prop(rng)),
        K::NegAtom => Formula::not(Formula::dep((0..s - 3).map(|_| prop(rng)).collect(), prop(rng))),
        K::Dep => {
            let k = rng.gen_range(1..=(s - 2).min(MAX_GEN_PREMISES));
            let parts = composition(rng, s - 1, k + 1);
            let premises = parts[..k].iter().map(|&n| sub(rng, n)).collect();
            Formula::dep(premises, sub(rng, parts[k]))
        }
        K::Rel => {
            let k = rng.gen_range(0..=(s - 3).min(MAX_GEN_PREMISES));
            let parts = composition(rng, s - 1, k + 2);
            let theta = sub(rng, parts[0]);
            let premises = parts[1..=k].iter().map(|&n| sub(rng, n)).collect();
            Formula::reldep(theta, premises, sub(rng, parts[k + 1]))
        }
        K::Indep => {
            let items = rng.gen_range(2..=(s - 1).min(4));
            let l = rng.gen_range(1..items);
            let c = rng.gen_range(0..items - l);
            let r = items - l - c;
            let sizes = if team { vec![1; items] } else { composition(rng, s - 1, items) };
            let mut fs: Vec<Formula> = sizes.iter().map(|&n| if team { prop(rng) } else { sub(rng, n) }).collect();
            let right = fs.split_off(l + c);
            let cond = fs.split_off(l);
            debug_assert_eq!(right.len(), r);
            Formula::indep(fs, cond, right)
        }
    }
}

/// Random split of `total` into `parts` positive summands.
fn composition<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    debug_assert!(parts >= 1 && parts <= total);
    let mut cuts: Vec<usize> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - prev);
        prev = c;
    }
    out
}
