//! Weights of an irreducible representation by saturation.
//!
//! `lambda` is a weight of `V(omega)` iff `omega - lambda` lies in the root
//! lattice and the dominant conjugate `mu` of `lambda` satisfies
//! `omega - mu` in the non-negative span of the simple roots. Every weight
//! other than `omega` is reached from a weight above it by subtracting a
//! simple root, so a breadth-first walk downward from `omega` finds them all.

use std::collections::{HashSet, VecDeque};

use num_traits::Signed;

use super::{RootSystem, Weight};

pub(super) fn is_weight_of(rs: &RootSystem, omega: &Weight, lambda: &Weight) -> bool {
    let Some(diff) = rs.simple_root_coords(&omega.sub(lambda).0) else {
        return false;
    };
    if !diff.iter().all(|c| c.is_integer()) {
        return false;
    }
    let (mu, _) = rs.dominant_representative(lambda, rs.simple_roots());
    match rs.simple_root_coords(&omega.sub(&mu).0) {
        Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
        None => false,
    }
}

pub(super) fn saturate(rs: &RootSystem, omega: &Weight) -> HashSet<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(omega.clone());
    queue.push_back(omega.clone());
    while let Some(lam) = queue.pop_front() {
        for a in rs.simple_roots() {
            let next = Weight(crate::rational::sub(&lam.0, a));
            if !seen.contains(&next) && is_weight_of(rs, omega, &next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}
