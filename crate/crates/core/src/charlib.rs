//! Characters of Weyl modules: Freudenthal multiplicities, the Weyl
//! dimension formula and classical tensor decomposition by Brauer–Klimyk.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// Tables above this Weyl dimension are refused.
pub const MAX_WEYL_DIM: u128 = 10_000_000;

/// Formal integer combination of Weyl characters, keyed by highest weight.
pub type CharacterVector = BTreeMap<Weight, i64>;

/// Dominant weight multiplicities of `Δ(λ)`.
#[derive(Debug)]
pub struct WeightMultiplicityTable {
    pub highest: Weight,
    pub mults: BTreeMap<Weight, u64>,
    all: OnceLock<Vec<(Weight, u64)>>,
}

impl WeightMultiplicityTable {
    /// Multiplicity at an arbitrary weight, through its dominant conjugate.
    pub fn mult_at(&self, rs: &RootSystem, eta: &Weight) -> u64 {
        let (dom, _) = rs.dominant_with_sign(eta);
        self.mults.get(&dom).copied().unwrap_or(0)
    }

    /// Every weight of `Δ(λ)` with its multiplicity, sorted.
    pub fn all_weights(&self, rs: &RootSystem) -> &[(Weight, u64)] {
        self.all.get_or_init(|| {
            let mut out: Vec<(Weight, u64)> = self
                .mults
                .iter()
                .flat_map(|(mu, &m)| rs.orbit(mu).into_iter().map(move |eta| (eta, m)))
                .collect();
            out.sort();
            out
        })
    }

    pub fn total_dimension(&self, rs: &RootSystem) -> u128 {
        self.mults.iter().map(|(mu, &m)| u128::from(m) * rs.orbit(mu).len() as u128).sum()
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Π_{β>0} (λ+ρ, β^∨) / (ρ, β^∨)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let shifted = lambda + &rs.rho();
    let (mut num, mut den) = (1u128, 1u128);
    for r in rs.positive_roots() {
        let a = r.pair(&shifted) as u128;
        let b = r.pair(&rs.rho()) as u128;
        num = num.checked_mul(a).ok_or(Error::Overflow("weyl dimension"))?;
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

/// Dominant `μ ≤ λ`, in order of increasing depth `height(λ − μ)`, with the
/// simple-root coordinates of `λ − μ`.
pub fn dominant_below_with_depth(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Weight, Vec<i64>)>> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let n = rs.rank();
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut out = vec![(lambda.clone(), vec![0; n])];
    let mut queue = VecDeque::from([(lambda.clone(), vec![0i64; n])]);
    while let Some((mu, depth)) = queue.pop_front() {
        for r in rs.positive_roots() {
            let nu = &mu - &r.root;
            if !nu.is_dominant() || seen.contains(&nu) {
                continue;
            }
            seen.insert(nu.clone());
            let d: Vec<i64> = depth.iter().zip(&r.simple_coeffs).map(|(a, b)| a + b).collect();
            out.push((nu.clone(), d.clone()));
            queue.push_back((nu, d));
        }
    }
    out.sort_by(|a, b| a.1.iter().sum::<i64>().cmp(&b.1.iter().sum::<i64>()).then_with(|| b.0.cmp(&a.0)));
    Ok(out)
}

pub fn dominant_below(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    Ok(dominant_below_with_depth(rs, lambda)?.into_iter().map(|(w, _)| w).collect())
}

/// Freudenthal's recursion,
/// `m(μ) · ((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)) = 2 Σ_{β>0} Σ_{k≥1} m(μ+kβ) (μ+kβ, β)`,
/// in the integer normalisation where `2(Σ c_i α_i, ν) = Σ c_i ν_i D_i`.
pub fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiplicityTable> {
    let dim = match weyl_dim(rs, lambda) {
        Err(Error::Overflow(_)) => u128::MAX,
        r => r?,
    };
    if dim > MAX_WEYL_DIM {
        return Err(Error::TooLarge { weight: lambda.clone(), dim, limit: MAX_WEYL_DIM });
    }
    let below = dominant_below_with_depth(rs, lambda)?;
    let two_rho = rs.rho().scale(2);
    let mut mults: HashMap<Weight, u64> = HashMap::with_capacity(below.len());
    mults.insert(lambda.clone(), 1);
    let lookup = |mults: &HashMap<Weight, u64>, w: &Weight| -> Option<u64> {
        let (dom, _) = rs.dominant_with_sign(w);
        // anything outside the saturated set has multiplicity zero
        mults.get(&dom).copied().or_else(|| (!rs.dominates(lambda, &dom)).then_some(0))
    };
    for (mu, depth) in below.iter().skip(1) {
        // (λ+ρ)² − (μ+ρ)² = (λ−μ, λ+μ+2ρ)
        let denom = rs.root_form2(depth, &(&(lambda + mu) + &two_rho));
        let mut numer: i128 = 0;
        for r in rs.positive_roots() {
            // (μ + kβ, β) scaled by two is pair(μ + kβ, β^∨) · |β|²
            let mut k = 1;
            loop {
                let nu = mu + &r.root.scale(k);
                let m = lookup(&mults, &nu).unwrap_or(0);
                if m == 0 {
                    break;
                }
                numer += i128::from(m) * i128::from(r.pair(&nu) * r.norm);
                k += 1;
            }
        }
        // twice the scaled identity on both sides
        let value = 2 * numer / i128::from(denom);
        debug_assert_eq!(2 * numer % i128::from(denom), 0);
        mults.insert(mu.clone(), value as u64);
    }
    let mults: BTreeMap<Weight, u64> = mults.into_iter().filter(|(_, m)| *m > 0).collect();
    Ok(WeightMultiplicityTable { highest: lambda.clone(), mults, all: OnceLock::new() })
}

/// Memoised Freudenthal tables for one root system.
#[derive(Debug, Default)]
pub struct CharacterCache {
    tables: RwLock<HashMap<Weight, Arc<WeightMultiplicityTable>>>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, rs: &RootSystem, lambda: &Weight) -> Result<Arc<WeightMultiplicityTable>> {
        if let Some(t) = self.tables.read().expect("cache lock").get(lambda) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(freudenthal(rs, lambda)?);
        let mut guard = self.tables.write().expect("cache lock");
        Ok(Arc::clone(guard.entry(lambda.clone()).or_insert(table)))
    }
}

/// `ch Δ(λ) · ch Δ(μ)` expanded in Weyl characters.
pub fn klimyk_tensor(rs: &RootSystem, table: &WeightMultiplicityTable, mu: &Weight) -> Result<CharacterVector> {
    rs.check_weight(mu)?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.clone()));
    }
    let shift = mu + &rs.rho();
    let rho = rs.rho();
    let mut out = CharacterVector::new();
    for (eta, m) in table.all_weights(rs) {
        let v = eta + &shift;
        let (dom, sign) = rs.dominant_with_sign(&v);
        if dom.coords().contains(&0) {
            continue;
        }
        *out.entry(&dom - &rho).or_insert(0) += i64::from(sign) * *m as i64;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `Σ_τ N_τ · dim Δ(τ)`.
pub fn character_dimension(rs: &RootSystem, chi: &CharacterVector) -> Result<i128> {
    chi.iter().try_fold(0i128, |acc, (tau, &n)| Ok(acc + i128::from(n) * weyl_dim(rs, tau)? as i128))
}
