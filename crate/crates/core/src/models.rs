//! State-description models: finite signatures, worlds as bitmasks, and the
//! `.sdm` text format.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::syntax::{Symbol, RESERVED};

/// Widest signature over which worlds are materialized.
pub const MAX_WORLD_SIGNATURE: usize = 16;
/// Widest signature over which all models are enumerated (2^(2^4) of them).
pub const MAX_MODEL_SIGNATURE: usize = 4;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Symbol>);

impl Signature {
    /// Sorted, deduplicated signature. Names must be valid proposition symbols.
    pub fn new<I, S>(names: I) -> Result<Signature>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            let valid = n.as_bytes().first().is_some_and(u8::is_ascii_lowercase)
                && n.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
            if !valid && n != RESERVED {
                return Err(Error::UnknownSymbol(n.to_string()));
            }
            set.insert(Symbol::from(n));
        }
        let sig = Signature(set.into_iter().collect());
        sig.check_width(MAX_WORLD_SIGNATURE)?;
        Ok(sig)
    }

    pub(crate) fn from_sorted_set(set: BTreeSet<Symbol>) -> Signature {
        Signature(set.into_iter().collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|s| (**s).cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.0.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature::from_sorted_set(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn without(&self, name: &str) -> Signature {
        Signature(self.0.iter().filter(|s| &***s != name).cloned().collect())
    }

    pub(crate) fn check_width(&self, max: usize) -> Result<()> {
        if self.len() > max {
            return Err(Error::Guard(format!("signature has {} symbols, limit is {max}", self.len())));
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// An assignment; bit `i` is the value of the `i`-th signature symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(pub u32);

impl World {
    pub fn get(self, pos: usize) -> bool {
        self.0 >> pos & 1 == 1
    }

    pub fn from_true(sig: &Signature, names: &[&str]) -> Result<World> {
        let mut bits = 0;
        for n in names {
            let pos = sig.position(n).ok_or_else(|| Error::UnknownSymbol(n.to_string()))?;
            bits |= 1 << pos;
        }
        Ok(World(bits))
    }

    pub fn true_symbols(self, sig: &Signature) -> Vec<Symbol> {
        sig.symbols().iter().enumerate().filter(|(i, _)| self.get(*i)).map(|(_, s)| s.clone()).collect()
    }
}

/// A set of worlds over a signature. Worlds keep their insertion order
/// (which fixes world indices) but equality is set equality.
#[derive(Debug, Clone, Eq)]
pub struct SdModel {
    signature: Signature,
    worlds: Vec<World>,
}

impl PartialEq for SdModel {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.sorted_worlds() == other.sorted_worlds()
    }
}

impl std::hash::Hash for SdModel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.signature.hash(state);
        self.sorted_worlds().hash(state);
    }
}

impl SdModel {
    pub fn new(signature: Signature, worlds: Vec<World>) -> Result<SdModel> {
        signature.check_width(MAX_WORLD_SIGNATURE)?;
        let width_mask = if signature.len() == 32 { !0 } else { (1u32 << signature.len()) - 1 };
        let mut seen = BTreeSet::new();
        for w in &worlds {
            if w.0 & !width_mask != 0 {
                return Err(Error::Precondition(format!("world {:#b} sets bits beyond the signature", w.0)));
            }
            if !seen.insert(*w) {
                return Err(Error::DuplicateWorld(world_text(&signature, *w)));
            }
        }
        Ok(SdModel { signature, worlds })
    }

    pub fn empty(signature: Signature) -> SdModel {
        SdModel { signature, worlds: Vec::new() }
    }

    /// Convenience constructor from lists of true symbols, e.g.
    /// `from_sets(&["p", "q"], &[&["p", "q"], &[]])`.
    pub fn from_sets(signature: &[&str], worlds: &[&[&str]]) -> Result<SdModel> {
        let sig = Signature::new(signature)?;
        let ws = worlds.iter().map(|w| World::from_true(&sig, w)).collect::<Result<Vec<_>>>()?;
        SdModel::new(sig, ws)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn world(&self, i: usize) -> Result<World> {
        self.worlds.get(i).copied().ok_or(Error::InvalidWorld { index: i, len: self.worlds.len() })
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn sorted_worlds(&self) -> Vec<World> {
        let mut v = self.worlds.clone();
        v.sort();
        v
    }

    /// Truth of `name` at world `i`; symbols outside the signature are false.
    pub fn value(&self, i: usize, name: &str) -> bool {
        self.signature.position(name).is_some_and(|pos| self.worlds[i].get(pos))
    }

    /// The set of worlds where `name` is true.
    pub fn prop_bits(&self, name: &str) -> Bits {
        match self.signature.position(name) {
            Some(pos) => Bits::from_fn(self.len(), |i| self.worlds[i].get(pos)),
            None => Bits::zeros(self.len()),
        }
    }

    /// The submodel on the world indices whose bits are set in `team`.
    pub fn subteam(&self, team: u64) -> SdModel {
        let worlds = self.worlds.iter().enumerate().filter(|(i, _)| team >> i & 1 == 1).map(|(_, w)| *w).collect();
        SdModel { signature: self.signature.clone(), worlds }
    }

    /// Same worlds over a wider signature; new symbols are false everywhere.
    pub fn widen(&self, wider: &Signature) -> Result<SdModel> {
        if !self.signature.is_subset(wider) {
            return Err(Error::Precondition(format!("{} is not contained in {wider}", self.signature)));
        }
        let map: Vec<usize> = self.signature.symbols().iter().map(|s| wider.position(s).unwrap()).collect();
        let worlds = self
            .worlds
            .iter()
            .map(|w| World(map.iter().enumerate().filter(|(i, _)| w.get(*i)).fold(0, |acc, (_, &to)| acc | 1 << to)))
            .collect();
        SdModel::new(wider.clone(), worlds)
    }

    pub fn world_text(&self, i: usize) -> String {
        world_text(&self.signature, self.worlds[i])
    }
}

fn world_text(sig: &Signature, w: World) -> String {
    format!("{{{}}}", w.true_symbols(sig).join(","))
}

impl fmt::Display for SdModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.worlds.iter().map(|w| world_text(&self.signature, *w)).collect();
        write!(f, "{{{}}}", ws.join(","))
    }
}

/// Projects every world onto `phi`, collapsing duplicates (first occurrence wins).
pub fn restrict(w: &SdModel, phi: &Signature) -> Result<SdModel> {
    if let Some(s) = phi.symbols().iter().find(|s| !w.signature.contains(s)) {
        return Err(Error::UnknownSymbol(s.to_string()));
    }
    let map: Vec<usize> = phi.symbols().iter().map(|s| w.signature.position(s).unwrap()).collect();
    let mut seen = BTreeSet::new();
    let mut worlds = Vec::new();
    for world in &w.worlds {
        let bits = map.iter().enumerate().filter(|(_, &from)| world.get(from)).fold(0, |acc, (i, _)| acc | 1 << i);
        if seen.insert(bits) {
            worlds.push(World(bits));
        }
    }
    SdModel::new(phi.clone(), worlds)
}

pub fn phi_equivalent(w1: &SdModel, w2: &SdModel, phi: &Signature) -> Result<bool> {
    Ok(restrict(w1, phi)? == restrict(w2, phi)?)
}

pub fn enumerate_worlds(phi: &Signature) -> Result<Vec<World>> {
    phi.check_width(MAX_WORLD_SIGNATURE)?;
    Ok((0..1u32 << phi.len()).map(World).collect())
}

pub fn full_model(phi: &Signature) -> Result<SdModel> {
    SdModel::new(phi.clone(), enumerate_worlds(phi)?)
}

/// Every model over a small signature, indexed by subset bitmask of
/// `enumerate_worlds`. Index ranges can be scanned independently.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    signature: Signature,
}

impl ModelSpace {
    pub fn new(phi: &Signature) -> Result<ModelSpace> {
        phi.check_width(MAX_MODEL_SIGNATURE)?;
        Ok(ModelSpace { signature: phi.clone() })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn count(&self) -> usize {
        1 << (1 << self.signature.len())
    }

    pub fn model(&self, index: usize) -> SdModel {
        let worlds = (0..1u32 << self.signature.len()).filter(|w| index >> w & 1 == 1).map(World).collect();
        SdModel { signature: self.signature.clone(), worlds }
    }

    pub fn iter(&self) -> impl Iterator<Item = SdModel> + '_ {
        (0..self.count()).map(|i| self.model(i))
    }
}

/// All models over `phi`, empty model first, in subset-bitmask order.
pub fn enumerate_models(phi: &Signature) -> Result<impl Iterator<Item = SdModel>> {
    let space = ModelSpace::new(phi)?;
    Ok((0..space.count()).map(move |i| space.model(i)))
}

/// Parses the `.sdm` format:
///
/// ```text
/// sig p q r
/// w p q      # p and q true
/// w -        # all false
/// ```
pub fn parse_sdm(text: &str) -> Result<SdModel> {
    let mut sig: Option<Signature> = None;
    let mut worlds = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let err = |msg: String| Error::Format { line: line_no, msg };
        match toks.next() {
            Some("sig") => {
                if sig.is_some() {
                    return Err(err("second `sig` line".into()));
                }
                let names: Vec<&str> = toks.collect();
                if names.contains(&RESERVED) {
                    return Err(err("the symbol `_t` is reserved".into()));
                }
                sig = Some(Signature::new(&names).map_err(|e| err(e.to_string()))?);
            }
            Some("w") => {
                let s = sig.as_ref().ok_or_else(|| err("`w` before `sig`".into()))?;
                let names: Vec<&str> = toks.filter(|t| *t != "-").collect();
                let w = World::from_true(s, &names).map_err(|e| err(e.to_string()))?;
                if !seen.insert(w) {
                    return Err(err(format!("duplicate world {}", world_text(s, w))));
                }
                worlds.push(w);
            }
            Some(other) => return Err(err(format!("expected `sig` or `w`, found `{other}`"))),
            None => unreachable!(),
        }
    }
    let sig = sig.ok_or(Error::Format { line: 0, msg: "missing `sig` line".into() })?;
    SdModel::new(sig, worlds)
}

pub fn to_sdm(w: &SdModel) -> String {
    let mut out = String::from("sig");
    for s in w.signature.symbols() {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
    for world in &w.worlds {
        let names = world.true_symbols(&w.signature);
        if names.is_empty() {
            out.push_str("w -\n");
        } else {
            out.push_str(&format!("w {}\n", names.join(" ")));
        }
    }
    out
}
