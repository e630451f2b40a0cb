#![allow(dead_code)]

use chamber_iso::bitset::ChamberSet;
use chamber_iso::instance::Instance;
use chamber_iso::scalar::rational;
use chamber_iso::{Arrangement, Hyperplane, Sign, SignVector};

pub fn line(a: i64, b: i64, c: i64) -> Hyperplane {
    Hyperplane::new(vec![rational(a, 1), rational(b, 1)], rational(c, 1)).unwrap()
}

/// `y = 1`, `y = x`, `y = -x`: a triangle with apex at the origin.
pub fn three_lines() -> Arrangement {
    Arrangement::new(2, vec![line(0, 1, 1), line(-1, 1, 0), line(1, 1, 0)]).unwrap()
}

pub fn sv(s: &str) -> SignVector {
    let signs: Vec<Sign> = s
        .chars()
        .map(|c| match c {
            '+' => Sign::Pos,
            '-' => Sign::Neg,
            _ => Sign::Zero,
        })
        .collect();
    SignVector::from_signs(&signs)
}

/// The triangle plus the chambers across its sides on the first two lines.
pub fn triangle_set(inst: &Instance) -> ChamberSet {
    let ids = ["-++", "+++", "--+"].map(|s| inst.graph.index_of(&sv(s)).expect("chamber exists"));
    ChamberSet::from_indices(inst.chamber_count(), ids)
}

pub fn binom_sum(n: u64, d: u64) -> u128 {
    chamber_iso::bounds::binom_prefix(n, d)
}
