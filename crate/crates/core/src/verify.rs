//! Brute-force lemma suites over a built fusion table and rule set.
//!
//! Each suite stops at its first counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affweyl::{EllContext, Word};
use crate::error::Result;
use crate::fusion::{FusionTable, Verlinde};
use crate::regquot::{linkage_class_of, omega_twist, Factor, LabelKind, PrincipalFusionRule, RegEngine, RegObject};
use crate::rootsys::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked),
            Some(c) => write!(f, "FAIL {}: {c}", self.name),
        }
    }
}

struct Suite {
    name: &'static str,
    checked: u64,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0 }
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) -> Option<SuiteReport> {
        self.checked += 1;
        (!ok).then(|| SuiteReport { name: self.name, checked: self.checked, failure: Some(counterexample()) })
    }

    fn done(self) -> SuiteReport {
        SuiteReport { name: self.name, checked: self.checked, failure: None }
    }
}

macro_rules! ensure {
    ($suite:expr, $ok:expr, $($fmt:tt)+) => {
        if let Some(r) = $suite.check($ok, || format!($($fmt)+)) {
            return r;
        }
    };
}

fn triple(l: &Weight, m: &Weight, n: &Weight) -> String {
    format!("lambda={l} mu={m} nu={n}")
}

/// `c_{λ,ω·0}^ν = [ν = ω·λ]` and `c_{ω·λ,ω′·μ}^{ωω′·ν} = c_{λ,μ}^ν`.
pub fn omega_equivariance(ctx: &EllContext, table: &FusionTable) -> SuiteReport {
    let mut s = Suite::new("omega-equivariance");
    let ws = table.weights();
    let omegas = ctx.omega_group();
    for om in omegas {
        for l in ws {
            let target = ctx.dot_act(&om.elem, l);
            for n in ws {
                let c = table.get(l, &om.image_of_zero, n).unwrap_or(u64::MAX);
                let want = u64::from(*n == target);
                ensure!(s, c == want, "{} expected {want} got {c}", triple(l, &om.image_of_zero, n));
            }
        }
    }
    for a in omegas {
        for b in omegas {
            let ab = &omegas[ctx.omega_mul(a.index, b.index)].elem;
            for l in ws {
                let al = ctx.dot_act(&a.elem, l);
                for m in ws {
                    let bm = ctx.dot_act(&b.elem, m);
                    for n in ws {
                        let abn = ctx.dot_act(ab, n);
                        let lhs = table.get(&al, &bm, &abn);
                        let rhs = table.get(l, m, n);
                        ensure!(s, lhs.is_some() && lhs == rhs, "{} twisted by ({}, {})", triple(l, m, n), a.index, b.index);
                    }
                }
            }
        }
    }
    s.done()
}

/// Every pair in `C_fund` has some `ν` with `c_{λ,μ}^ν ≠ 0`.
pub fn nonvanishing(table: &FusionTable) -> SuiteReport {
    let mut s = Suite::new("nonvanishing");
    let ws = table.weights();
    for l in ws {
        for m in ws {
            let ok = table.row(l, m).is_some_and(|r| r.values().any(|&c| c > 0));
            ensure!(s, ok, "lambda={l} mu={m} has an empty row");
        }
    }
    s.done()
}

/// Commutativity, unit and associativity of the fusion ring.
pub fn ring_axioms(table: &FusionTable) -> SuiteReport {
    let mut s = Suite::new("fusion-ring-axioms");
    let n = table.weights().len();
    let zero = table.index_of(&Weight::zero(table.rank)).expect("0 lies in the fundamental alcove");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let w = table.weights();
                ensure!(s, table.c(i, j, k) == table.c(j, i, k), "{} not commutative", triple(&w[i], &w[j], &w[k]));
                ensure!(s, table.c(zero, i, k) == u64::from(i == k), "{} unit fails", triple(&w[zero], &w[i], &w[k]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs: u128 = (0..n).map(|k| table.c(a, b, k) as u128 * table.c(k, c, d) as u128).sum();
                    let rhs: u128 = (0..n).map(|k| table.c(b, c, k) as u128 * table.c(a, k, d) as u128).sum();
                    let w = table.weights();
                    ensure!(s, lhs == rhs, "({},{},{}) -> {} not associative: {lhs} vs {rhs}", w[a], w[b], w[c], w[d]);
                }
            }
        }
    }
    s.done()
}

/// Table entries agree with the Racah–Speiser formula.
pub fn two_formula_agreement(engine: &Verlinde, table: &FusionTable) -> Result<SuiteReport> {
    let mut s = Suite::new("two-formula-agreement");
    let ws = table.weights();
    for l in ws {
        for m in ws {
            let racah = engine.fusion_row_racah(l, m)?;
            for n in ws {
                let a = table.get(l, m, n).unwrap_or(0);
                let b = racah.get(n).copied().unwrap_or(0);
                if let Some(r) = s.check(a == b, || format!("{} table {a} racah {b}", triple(l, m, n))) {
                    return Ok(r);
                }
            }
        }
    }
    Ok(s.done())
}

/// Base word pairs exercised by the regular-part suites: every seeded row
/// plus unit rows `(x, e)` for `ℓ(x) ≤ 2`.
pub fn rule_pairs(ctx: &EllContext, rules: &PrincipalFusionRule) -> Vec<(Word, Word)> {
    let mut pairs: Vec<(Word, Word)> = rules.rows.iter().filter(|r| r.min_ell.is_none_or(|m| ctx.ell() >= m)).map(|r| (r.x.clone(), r.y.clone())).collect();
    for x in ctx.enumerate_dominant(2) {
        pairs.push((ctx.factor(&x).0, Word::default()));
    }
    pairs
}

fn blocks_by_class(ctx: &EllContext, obj: &RegObject) -> Result<BTreeMap<Weight, RegObject>> {
    let mut blocks: BTreeMap<Weight, RegObject> = BTreeMap::new();
    for (l, m) in obj.iter() {
        let class = match (&l.kind, l.slot()) {
            (LabelKind::Custom(_), Some(s)) => s.clone(),
            _ => ctx.reduce_to_closure(&l.highest_weight(ctx)?).1,
        };
        blocks.entry(class).or_default().add(l.clone(), m);
    }
    Ok(blocks)
}

/// Ω-twist coherence, blockwise linkage and multiset symmetry of
/// `regpart_tensor` over all rule pairs, slots and Ω pairs.
pub fn regquot_coherence(engine: &RegEngine<'_>, table: &FusionTable) -> Result<SuiteReport> {
    let ctx = engine.ctx();
    let mut s = Suite::new("regpart-coherence");
    let omegas = ctx.omega_group().len();
    for (x, y) in rule_pairs(ctx, engine.rules()) {
        for l in table.weights() {
            for m in table.weights() {
                let plain = engine.regpart_tensor(&Factor::simple(x.clone(), l.clone(), 0), &Factor::simple(y.clone(), m.clone(), 0))?;
                let row = table.row(l, m).unwrap_or_default();
                for a in 0..omegas {
                    for b in 0..omegas {
                        let fa = Factor::simple(x.clone(), l.clone(), a);
                        let fb = Factor::simple(y.clone(), m.clone(), b);
                        let out = engine.regpart_tensor(&fa, &fb)?;
                        let ab = ctx.omega_mul(a, b);
                        let twisted = omega_twist(&plain, ab, ctx)?;
                        let ctxt = || format!("x={x} y={y} lambda={l} mu={m} omega=({a},{b})");
                        if let Some(r) = s.check(out == twisted, || format!("{}: twist mismatch", ctxt())) {
                            return Ok(r);
                        }
                        let swapped = engine.regpart_tensor(&fb, &fa)?;
                        if let Some(r) = s.check(out == swapped, || format!("{}: not symmetric", ctxt())) {
                            return Ok(r);
                        }
                        let blocks = blocks_by_class(ctx, &out)?;
                        let om = &ctx.omega_group()[ab].elem;
                        let expected: BTreeSet<Weight> = row.iter().filter(|(_, &c)| c > 0).map(|(n, _)| ctx.dot_act(om, n)).collect();
                        let found: BTreeSet<Weight> = blocks.keys().cloned().collect();
                        if let Some(r) = s.check(found == expected, || format!("{}: blocks {found:?} expected {expected:?}", ctxt())) {
                            return Ok(r);
                        }
                        for (class, block) in &blocks {
                            let ok = linkage_class_of(block, ctx).is_ok_and(|c| c == *class);
                            if let Some(r) = s.check(ok, || format!("{}: block {class} fails linkage", ctxt())) {
                                return Ok(r);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s.done())
}

/// All suites for one `(root system, ℓ)`; regular-part suites run when
/// rules are supplied.
pub fn run_all(engine: &Verlinde, table: &FusionTable, rules: Option<&PrincipalFusionRule>) -> Result<Vec<SuiteReport>> {
    let ctx = engine.ctx();
    let mut out = vec![
        omega_equivariance(ctx, table),
        nonvanishing(table),
        ring_axioms(table),
        two_formula_agreement(engine, table)?,
    ];
    if let Some(rules) = rules {
        let reg = RegEngine::new(ctx, rules, table)?;
        out.push(regquot_coherence(&reg, table)?);
    }
    Ok(out)
}
