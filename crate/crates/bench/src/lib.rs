//! Shared fixtures for the criterion benchmarks.

use depind::{parse, Formula, Fragment, SdModel, Signature, World};

/// The first `n` assignments over {p,q,r,s}, as a model.
pub fn model(n: usize) -> SdModel {
    let sig = Signature::new(["p", "q", "r", "s"]).unwrap();
    SdModel::new(sig, (0..n as u32).map(World).collect()).unwrap()
}

pub fn formula(text: &str, fragment: Fragment) -> Formula {
    parse(text, fragment).unwrap()
}
