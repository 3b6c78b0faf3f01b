//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use alcove::{EllContext, ExtAffineElement, Family, RootSystemSpec, Weight};

pub fn ctx(family: Family, rank: usize, ell: i64) -> EllContext {
    EllContext::from_spec(RootSystemSpec::new(family, rank).unwrap(), ell).unwrap()
}

/// Truncated Clebsch–Gordan rule for rank 1 at level `ℓ`.
pub fn cg(ell: i64, a: i64, b: i64, c: i64) -> u64 {
    let upper = (a + b).min(2 * (ell - 2) - a - b);
    u64::from((a - b).abs() <= c && c <= upper && (a + b + c) % 2 == 0)
}

/// Word lengths in the Cayley graph of `W_aff` on `s0..sn`, up to `max`.
pub fn bfs_lengths(ctx: &EllContext, max: usize) -> HashMap<ExtAffineElement, usize> {
    let gens: Vec<ExtAffineElement> = (0..=ctx.rank()).map(|i| ctx.generator(i).unwrap().clone()).collect();
    let mut dist = HashMap::from([(ctx.identity(), 0usize)]);
    let mut queue = VecDeque::from([ctx.identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == max {
            continue;
        }
        for g in &gens {
            let y = x.mul(g);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Dominant weights with Weyl dimension at most `limit`, by direct product
/// formula over positive roots.
pub fn small_dominant(ctx: &EllContext, limit: u128, box_size: i64) -> Vec<Weight> {
    let rs = ctx.rootsystem();
    let n = rs.rank();
    let rho = rs.rho();
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    loop {
        let lam = Weight(coords.clone());
        let shifted = &lam + &rho;
        let mut num = 1f64;
        for r in rs.positive_roots() {
            num *= r.pair(&shifted) as f64 / r.pair(&rho) as f64;
        }
        if num.round() as u128 <= limit {
            out.push(lam);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            coords[i] += 1;
            if coords[i] <= box_size {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}
