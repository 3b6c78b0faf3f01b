//! Verlinde fusion coefficients `c_{λ,μ}^ν` for weights in the fundamental
//! alcove, by two independent formulas, plus the full fusion table and its
//! JSON cache format.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affweyl::EllContext;
use crate::charlib::{klimyk_tensor, CharacterCache};
use crate::error::{Error, Result};
use crate::rootsys::{Family, Weight};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "ALCOVE_CACHE";

/// Fusion rules at one `(root system, ℓ)`.
#[derive(Debug)]
pub struct Verlinde {
    ctx: EllContext,
    chars: CharacterCache,
    weights: Vec<Weight>,
}

fn accumulate(acc: &mut HashMap<Weight, i128>, nu: Weight, delta: i128) -> Result<()> {
    let slot = acc.entry(nu).or_insert(0);
    *slot = slot.checked_add(delta).ok_or(Error::Overflow("fusion coefficient"))?;
    Ok(())
}

fn finish(acc: HashMap<Weight, i128>, what: &str) -> Result<BTreeMap<Weight, u64>> {
    let mut out = BTreeMap::new();
    for (nu, c) in acc {
        match c {
            0 => {}
            c if c < 0 => return Err(Error::Counterexample(format!("negative {what} coefficient {c} at {nu}"))),
            c => {
                out.insert(nu, u64::try_from(c).map_err(|_| Error::Overflow("fusion coefficient"))?);
            }
        }
    }
    Ok(out)
}

impl Verlinde {
    pub fn new(ctx: EllContext) -> Self {
        let weights = ctx.fundamental_alcove_weights();
        Self { ctx, chars: CharacterCache::new(), weights }
    }

    pub fn ctx(&self) -> &EllContext {
        &self.ctx
    }

    pub fn characters(&self) -> &CharacterCache {
        &self.chars
    }

    /// `C_fund ∩ X`, sorted lexicographically.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    fn check_alcove(&self, w: &Weight) -> Result<()> {
        self.ctx.rootsystem().check_weight(w)?;
        if self.ctx.in_fundamental_alcove(w) {
            Ok(())
        } else {
            Err(Error::NotInFundamentalAlcove(w.clone()))
        }
    }

    /// `T(ν)` is negligible iff `ν ∉ C_fund`.
    pub fn negligible(&self, nu: &Weight) -> Result<bool> {
        self.ctx.rootsystem().check_weight(nu)?;
        if !nu.is_dominant() {
            return Err(Error::NotDominant(nu.clone()));
        }
        Ok(!self.ctx.in_fundamental_alcove(nu))
    }

    /// `c_{λ,μ}^ν = Σ_{x ∈ W_aff} (−1)^{ℓ(x)} dim Δ(λ)_{x·ν − μ}`, summed over
    /// the weights `η` of `Δ(λ)` by reducing `η + μ`.
    pub fn fusion_row(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_alcove(lambda)?;
        self.check_alcove(mu)?;
        let rs = self.ctx.rootsystem();
        let table = self.chars.get(rs, lambda)?;
        let mut acc: HashMap<Weight, i128> = HashMap::new();
        for (eta, m) in table.all_weights(rs) {
            if let Some((nu, sign)) = self.ctx.reduce_fast(&(eta + mu)) {
                accumulate(&mut acc, nu, i128::from(sign) * i128::from(*m))?;
            }
        }
        finish(acc, "fusion")
    }

    pub fn fusion_coeff(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        self.check_alcove(nu)?;
        Ok(self.fusion_row(lambda, mu)?.get(nu).copied().unwrap_or(0))
    }

    /// Classical decomposition by Brauer–Klimyk, then each Weyl factor is
    /// reduced to the fundamental alcove with its sign.
    pub fn fusion_row_racah(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_alcove(lambda)?;
        self.check_alcove(mu)?;
        let rs = self.ctx.rootsystem();
        let table = self.chars.get(rs, lambda)?;
        let mut acc: HashMap<Weight, i128> = HashMap::new();
        for (tau, n) in klimyk_tensor(rs, &table, mu)? {
            if let Some((nu, sign)) = self.ctx.reduce_fast(&tau) {
                accumulate(&mut acc, nu, i128::from(sign) * i128::from(n))?;
            }
        }
        finish(acc, "racah")
    }

    pub fn fusion_coeff_racah(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        self.check_alcove(nu)?;
        Ok(self.fusion_row_racah(lambda, mu)?.get(nu).copied().unwrap_or(0))
    }

    /// `ν = dom(w₀λ + μ)` lies in `C_fund` and `c_{λ,μ}^ν ≥ 1`.
    pub fn verify_nonvanishing(&self, lambda: &Weight, mu: &Weight) -> Result<(Weight, u64)> {
        let rs = self.ctx.rootsystem();
        let (nu, _) = rs.dominant_representative(&(&rs.w0_image(lambda) + mu));
        if !self.ctx.in_fundamental_alcove(&nu) {
            return Err(Error::Counterexample(format!("dom(w0 {lambda} + {mu}) = {nu} is outside C_fund")));
        }
        let c = self.fusion_row(lambda, mu)?.get(&nu).copied().unwrap_or(0);
        if c == 0 {
            return Err(Error::Counterexample(format!("c_({lambda}),({mu})^({nu}) = 0")));
        }
        Ok((nu, c))
    }

    /// All rows, computed in parallel over unordered pairs.
    pub fn build_table(&self) -> Result<FusionTable> {
        let n = self.weights.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let rows: Vec<((usize, usize), BTreeMap<Weight, u64>)> = pairs
            .par_iter()
            .map(|&(i, j)| Ok(((i, j), self.fusion_row(&self.weights[i], &self.weights[j])?)))
            .collect::<Result<_>>()?;
        let index: HashMap<&Weight, usize> = self.weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut coeffs = vec![0u64; n * n * n];
        for ((i, j), row) in rows {
            for (nu, c) in row {
                let k = index[&nu];
                coeffs[(i * n + j) * n + k] = c;
                coeffs[(j * n + i) * n + k] = c;
            }
        }
        let spec = self.ctx.rootsystem().spec();
        Ok(FusionTable {
            family: spec.family,
            rank: spec.rank,
            ell: self.ctx.ell(),
            weights: self.weights.clone(),
            coeffs,
        })
    }
}

/// Dense table of `c_{λ,μ}^ν` over `C_fund ∩ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    pub family: Family,
    pub rank: usize,
    pub ell: i64,
    weights: Vec<Weight>,
    coeffs: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct TableOut {
    n: Weight,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    l: Weight,
    m: Weight,
    out: Vec<TableOut>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    family: Family,
    rank: usize,
    ell: i64,
    entries: Vec<TableEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl FusionTable {
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.weights.binary_search(w).ok()
    }

    /// Coefficient by weight indices.
    pub fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.weights.len();
        self.coeffs[(i * n + j) * n + k]
    }

    pub fn get(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Option<u64> {
        Some(self.c(self.index_of(lambda)?, self.index_of(mu)?, self.index_of(nu)?))
    }

    pub fn row(&self, lambda: &Weight, mu: &Weight) -> Option<BTreeMap<Weight, u64>> {
        let (i, j) = (self.index_of(lambda)?, self.index_of(mu)?);
        Some(
            self.weights
                .iter()
                .enumerate()
                .filter_map(|(k, nu)| {
                    let c = self.c(i, j, k);
                    (c > 0).then(|| (nu.clone(), c))
                })
                .collect(),
        )
    }

    pub fn file_name(&self) -> String {
        format!("{}{}_ell{}.json", self.family, self.rank, self.ell)
    }

    fn to_file(&self) -> TableFile {
        let n = self.weights.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let out = (0..n)
                    .filter(|&k| self.c(i, j, k) > 0)
                    .map(|k| TableOut { n: self.weights[k].clone(), c: self.c(i, j, k) })
                    .collect();
                entries.push(TableEntry { l: self.weights[i].clone(), m: self.weights[j].clone(), out });
            }
        }
        TableFile { family: self.family, rank: self.rank, ell: self.ell, entries, digest: None }
    }

    /// Hex SHA-256 of the compact serialisation without the digest field.
    pub fn digest(&self) -> String {
        let body = serde_json::to_vec(&self.to_file()).expect("table serialises");
        sha256_hex(&body)
    }

    pub fn to_json(&self) -> String {
        let mut file = self.to_file();
        let body = serde_json::to_vec(&file).expect("table serialises");
        file.digest = Some(sha256_hex(&body));
        serde_json::to_string(&file).expect("table serialises")
    }

    /// Parses a cache file and checks its digest.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut file: TableFile = serde_json::from_str(text)?;
        let stored = file.digest.take();
        let computed = sha256_hex(&serde_json::to_vec(&file)?);
        if let Some(stored) = stored {
            if stored != computed {
                return Err(Error::DigestMismatch { stored, computed });
            }
        }
        let mut weights: Vec<Weight> = file.entries.iter().map(|e| e.l.clone()).collect();
        weights.sort();
        weights.dedup();
        let n = weights.len();
        let mut coeffs = vec![0u64; n * n * n];
        let idx = |w: &Weight| {
            weights.binary_search(w).map_err(|_| Error::Precondition(format!("weight {w} is not a table row")))
        };
        for e in &file.entries {
            let (i, j) = (idx(&e.l)?, idx(&e.m)?);
            for o in &e.out {
                coeffs[(i * n + j) * n + idx(&o.n)?] = o.c;
            }
        }
        Ok(Self { family: file.family, rank: file.rank, ell: file.ell, weights, coeffs })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    fn meta(&self) -> String {
        format!("{}{} ell={}", self.family, self.rank, self.ell)
    }
}

/// Cache path for an engine inside `dir`.
pub fn cache_path(engine: &Verlinde, dir: &Path) -> PathBuf {
    let spec = engine.ctx().rootsystem().spec();
    dir.join(format!("{}{}_ell{}.json", spec.family, spec.rank, engine.ctx().ell()))
}

/// Loads the cached table for `engine` from `dir`, or builds and writes it.
/// Cache files are written once and never overwritten.
pub fn load_or_build(engine: &Verlinde, dir: &Path) -> Result<FusionTable> {
    let path = cache_path(engine, dir);
    if path.exists() {
        let table = FusionTable::load(&path)?;
        let spec = engine.ctx().rootsystem().spec();
        if (table.family, table.rank, table.ell) != (spec.family, spec.rank, engine.ctx().ell()) {
            return Err(Error::TableMismatch {
                expected: format!("{}{} ell={}", spec.family, spec.rank, engine.ctx().ell()),
                found: table.meta(),
            });
        }
        return Ok(table);
    }
    let table = engine.build_table()?;
    table.save(&path)?;
    Ok(table)
}

/// Rebuilds the table and compares it against the cached copy.
pub fn verify_cache(engine: &Verlinde, dir: &Path) -> Result<FusionTable> {
    let cached = FusionTable::load(&cache_path(engine, dir))?;
    let fresh = engine.build_table()?;
    let (stored, computed) = (cached.digest(), fresh.digest());
    if stored != computed {
        return Err(Error::DigestMismatch { stored, computed });
    }
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystemSpec;

    fn engine(f: Family, n: usize, ell: i64) -> Verlinde {
        Verlinde::new(EllContext::from_spec(RootSystemSpec::new(f, n).unwrap(), ell).unwrap())
    }

    fn w<const N: usize>(v: [i64; N]) -> Weight {
        Weight::from(v)
    }

    #[test]
    fn negligible_examples() {
        let v = engine(Family::A, 2, 5);
        assert!(!v.negligible(&w([1, 1])).unwrap());
        assert!(v.negligible(&w([2, 1])).unwrap());
        assert!(v.negligible(&w([3, 0])).unwrap());
        assert!(v.negligible(&w([-1, 0])).is_err());
    }

    #[test]
    fn unit_coefficient() {
        let v = engine(Family::A, 2, 5);
        assert_eq!(v.fusion_coeff(&w([0, 0]), &w([0, 0]), &w([0, 0])).unwrap(), 1);
        assert_eq!(v.fusion_coeff_racah(&w([0, 0]), &w([0, 0]), &w([0, 0])).unwrap(), 1);
    }

    #[test]
    fn rank_one_examples() {
        let v = engine(Family::A, 1, 5);
        assert_eq!(v.fusion_coeff(&w([3]), &w([3]), &w([0])).unwrap(), 1);
        assert_eq!(v.fusion_coeff(&w([3]), &w([3]), &w([2])).unwrap(), 0);
        assert_eq!(v.fusion_row(&w([1]), &w([1])).unwrap(), BTreeMap::from([(w([0]), 1), (w([2]), 1)]));
        let (nu, c) = v.verify_nonvanishing(&w([3]), &w([2])).unwrap();
        assert_eq!(nu, w([1]));
        assert!(c >= 1);
    }

    #[test]
    fn a2_row() {
        let v = engine(Family::A, 2, 5);
        let expected = BTreeMap::from([(w([0, 0]), 1), (w([1, 1]), 1)]);
        assert_eq!(v.fusion_row(&w([1, 1]), &w([1, 1])).unwrap(), expected);
        assert_eq!(v.fusion_row_racah(&w([1, 1]), &w([1, 1])).unwrap(), expected);
        let (nu, c) = v.verify_nonvanishing(&w([1, 1]), &w([1, 1])).unwrap();
        assert_eq!((nu, c), (w([0, 0]), 1));
        assert!(v.fusion_row(&w([2, 1]), &w([0, 0])).is_err());
    }

    #[test]
    fn table_round_trips_through_json() {
        let v = engine(Family::A, 2, 5);
        let t = v.build_table().unwrap();
        assert_eq!(t.weights().len(), 6);
        for mu in t.weights() {
            assert_eq!(t.row(&w([0, 0]), mu).unwrap(), BTreeMap::from([(mu.clone(), 1)]));
        }
        let json = t.to_json();
        assert!(json.starts_with(r#"{"family":"A","rank":2,"ell":5,"entries":[{"l":[0,0],"m":[0,0],"out":[{"n":[0,0],"c":1}]}"#));
        let back = FusionTable::from_json(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), json);
        let tampered = json.replacen(r#""c":1"#, r#""c":7"#, 1);
        assert!(tampered != json);
        assert!(matches!(FusionTable::from_json(&tampered), Err(Error::DigestMismatch { .. })));
    }

    #[test]
    fn cache_is_write_once_and_verifiable() {
        let dir = tempfile::tempdir().unwrap();
        let v = engine(Family::A, 1, 5);
        let a = load_or_build(&v, dir.path()).unwrap();
        assert!(dir.path().join("A1_ell5.json").exists());
        let b = load_or_build(&v, dir.path()).unwrap();
        assert_eq!(a, b);
        verify_cache(&v, dir.path()).unwrap();
        let other = engine(Family::A, 1, 7);
        fs::copy(dir.path().join("A1_ell5.json"), dir.path().join("A1_ell7.json")).unwrap();
        assert!(matches!(load_or_build(&other, dir.path()), Err(Error::TableMismatch { .. })));
    }
}
