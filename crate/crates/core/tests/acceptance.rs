//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use alcove::charlib::{character_dimension, freudenthal, klimyk_tensor, weyl_dim};
use alcove::fusion::{load_or_build, verify_cache, FusionTable, Verlinde};
use alcove::regquot::{builtin_a2_rules, linkage_class_of, Factor, LabelKind, ObjLabel, RegEngine, RegObject};
use alcove::tiltprofile::gfd_tensor;
use alcove::verify::{nonvanishing, omega_equivariance, regquot_coherence, ring_axioms};
use alcove::{EllContext, ExtAffineElement, Family, ReductionResult, Weight, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bfs_lengths, cg, ctx, small_dominant};

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2?}, limit {:.0?}", t, limit))
    }
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn tables_1_2() -> Vec<(EllContext, FusionTable)> {
    let specs = [
        (Family::A, 1, 3),
        (Family::A, 1, 5),
        (Family::A, 1, 7),
        (Family::A, 2, 5),
        (Family::A, 2, 7),
        (Family::B, 2, 5),
        (Family::G, 2, 7),
    ];
    specs
        .iter()
        .map(|&(f, r, l)| {
            let c = ctx(f, r, l);
            let t = Verlinde::new(c.clone()).build_table().unwrap();
            (c, t)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for ell in [3, 5, 7] {
        let engine = Verlinde::new(ctx(Family::A, 1, ell));
        for a in 0..=ell - 2 {
            for b in 0..=ell - 2 {
                for c in 0..=ell - 2 {
                    let got = engine.fusion_coeff(&Weight(vec![a]), &Weight(vec![b]), &Weight(vec![c])).map_err(|e| e.to_string())?;
                    let want = cg(ell, a, b, c);
                    if got != want {
                        return Err(format!("ell={ell} ({a},{b},{c}): got {got}, rule gives {want}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{checked} triples in {:.2?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (f, r, l) in [(Family::A, 2, 5), (Family::A, 2, 7), (Family::B, 2, 5), (Family::G, 2, 7)] {
        let engine = Verlinde::new(ctx(f, r, l));
        let ws = engine.weights().to_vec();
        for a in &ws {
            for b in &ws {
                let alcove = engine.fusion_row(a, b).map_err(|e| e.to_string())?;
                let racah = engine.fusion_row_racah(a, b).map_err(|e| e.to_string())?;
                for n in &ws {
                    let (x, y) = (alcove.get(n).copied().unwrap_or(0), racah.get(n).copied().unwrap_or(0));
                    if x != y {
                        return Err(format!("{f}{r} ell={l} ({a};{b};{n}): {x} vs {y}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} triples in {:.2?}", start.elapsed()))
}

fn criterion_3(tables: &[(EllContext, FusionTable)]) -> Outcome {
    let mut checks = 0;
    for (c, t) in tables {
        for r in [omega_equivariance(c, t), nonvanishing(t), ring_axioms(t)] {
            if let Some(f) = &r.failure {
                return Err(format!("{} ell={}: {}: {f}", c.rootsystem().spec(), c.ell(), r.name));
            }
            checks += r.checked;
        }
    }
    Ok(format!("{checks} checks over {} tables", tables.len()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let c = ctx(Family::A, 2, 5);
    let table = Verlinde::new(c.clone()).build_table().map_err(|e| e.to_string())?;
    let eng = RegEngine::new(&c, &builtin_a2_rules(), &table).map_err(|e| e.to_string())?;
    let ws = table.weights().to_vec();
    let mut pairs = 0;
    let check_linkage = |out: &RegObject, row: &BTreeMap<Weight, u64>| -> Result<(), String> {
        for nu in row.keys() {
            let block = RegObject::from_labels(out.iter().map(|(l, _)| l.clone()).filter(|l| {
                let hw = l.highest_weight(&c).unwrap();
                match l.kind {
                    LabelKind::Custom(_) => l.weight == *nu,
                    _ => c.reduce_to_closure(&hw).1 == *nu,
                }
            }));
            match linkage_class_of(&block, &c) {
                Ok(cl) if cl == *nu => {}
                other => return Err(format!("block {nu}: {other:?}")),
            }
        }
        Ok(())
    };
    for (i, l) in ws.iter().enumerate() {
        for m in &ws[i..] {
            pairs += 1;
            let row = table.row(l, m).unwrap();
            let s0 = |w: &Weight| Factor::simple(word("s0"), w.clone(), 0);
            let out = eng.regpart_tensor(&s0(l), &s0(m)).map_err(|e| e.to_string())?;
            let mut want = RegObject::new();
            for (nu, &k) in &row {
                want.add(ObjLabel::custom("M", Word::default(), nu.clone()), k);
                want.add(ObjLabel::simple(Word::default(), nu.clone()), k);
            }
            if out != want {
                return Err(format!("(s0;{l}) x (s0;{m}): {out} != {want}"));
            }
            check_linkage(&out, &row)?;

            let hw = |o: &RegObject| -> BTreeMap<Weight, u64> {
                o.iter().map(|(lab, k)| (lab.highest_weight(&c).unwrap(), k)).collect()
            };
            let f = |w: &str, lam: &Weight| Factor::simple(word(w), lam.clone(), 0);
            let out = eng.regpart_tensor(&f("s0s1", l), &f("s0s2", m)).map_err(|e| e.to_string())?;
            let lah = Weight(vec![5, 5]);
            let mut want = BTreeMap::new();
            for (nu, &k) in &row {
                *want.entry(nu + &lah).or_insert(0) += k;
                *want.entry(nu.clone()).or_insert(0) += k;
            }
            if hw(&out) != want {
                return Err(format!("(s0s1;{l}) x (s0s2;{m}): {out}"));
            }
            check_linkage(&out, &row)?;

            let out = eng.regpart_tensor(&f("s0s1", l), &f("s0s1", m)).map_err(|e| e.to_string())?;
            let (a, b) = (c.from_word(&word("s0s1s2s0")).unwrap(), c.from_word(&word("s0s2")).unwrap());
            let mut want = BTreeMap::new();
            for (nu, &k) in &row {
                *want.entry(c.dot_act(&a, nu)).or_insert(0) += k;
                *want.entry(c.dot_act(&b, nu)).or_insert(0) += k;
            }
            if hw(&out) != want {
                return Err(format!("(s0s1;{l}) x (s0s1;{m}): {out}"));
            }
            check_linkage(&out, &row)?;
        }
    }
    let l1 = ObjLabel::from_highest_weight(&c, LabelKind::Simple, &Weight(vec![5, 0])).unwrap();
    let l2 = ObjLabel::from_highest_weight(&c, LabelKind::Simple, &Weight(vec![0, 5])).unwrap();
    let prod = eng.regpart_of_labels(&[l1, l2]).map_err(|e| e.to_string())?;
    let tops: Vec<Weight> = prod.iter().map(|(l, _)| l.highest_weight(&c).unwrap()).collect();
    if tops != vec![Weight(vec![0, 0]), Weight(vec![5, 5])] {
        return Err(format!("L(5,0) x L(0,5) gives {prod}"));
    }
    if pairs != 21 {
        return Err(format!("{pairs} unordered pairs, expected 21"));
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{pairs} pairs x 3 rules in {:.2?}", start.elapsed()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for (f, r) in [(Family::A, 2), (Family::B, 2)] {
        let h = ctx(f, r, 10).rootsystem().coxeter_number();
        for ell in [h, h + 2] {
            let c = ctx(f, r, ell);
            let lengths = bfs_lengths(&c, 5);
            for (x, &len) in &lengths {
                for lam in c.fundamental_alcove_weights() {
                    let tau = c.dot_act(x, &lam);
                    match c.reduce(&tau).map_err(|e| e.to_string())? {
                        ReductionResult::Regular { x: y, lambda, sign, length, .. } => {
                            if y != *x || lambda != lam || length != len || i64::from(sign) != (-1i64).pow(len as u32) {
                                return Err(format!("{f}{r} ell={ell}: {tau} reduced badly"));
                            }
                        }
                        ReductionResult::Singular { .. } => return Err(format!("{tau} reported singular")),
                    }
                    checks += 1;
                }
            }
        }
    }
    for (f, r) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::G, 2)] {
        let c = ctx(f, r, 7);
        for (x, &len) in &bfs_lengths(&c, 6) {
            if c.length(x) != len || c.sign(x).map_err(|e| e.to_string())? != if len % 2 == 0 { 1 } else { -1 } {
                return Err(format!("{f}{r}: length {} vs BFS {len}", c.length(x)));
            }
            checks += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checks} checks in {:.2?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let c = ctx(Family::A, 2, 5);
    let zero = Weight(vec![0, 0]);
    let (x, _) = c.weight_to_xlambda_at(&Weight(vec![5, 5]), &zero).map_err(|e| e.to_string())?;
    let t_ah = c.from_word(&word("s0s1s2s1")).unwrap();
    if c.length(&x) != 4 || c.omega_of(&x).index != 0 || x != t_ah {
        return Err(format!("ell alpha_h reduced to {}", c.describe(&x)));
    }
    if x != ExtAffineElement::translation(Weight(vec![1, 1])) {
        return Err("s0s1s2s1 is not the translation by alpha_h".into());
    }
    let (y, _) = c.weight_to_xlambda_at(&Weight(vec![5, 0]), &zero).map_err(|e| e.to_string())?;
    let om = c.omega_of(&y);
    if c.length(&y) != 2 || om.index == 0 {
        return Err(format!("ell varpi_1 reduced to {}", c.describe(&y)));
    }
    let (yw, _) = c.factor(&y);
    if yw.to_string() != "s0s2" || y != ExtAffineElement::translation(Weight(vec![1, 0])) {
        return Err(format!("ell varpi_1 factor is {}", c.describe(&y)));
    }
    let gen = c.omega_group().iter().find(|o| o.elem.gamma == Weight(vec![1, 0])).ok_or("no Omega element with translation part varpi_1")?;
    if gen.image_of_zero != Weight(vec![2, 0]) {
        return Err(format!("omega.0 = {}", gen.image_of_zero));
    }
    Ok(format!("ell alpha_h = {}.0, ell varpi_1 = {}.0, omega.0 = {}", c.describe(&x), c.describe(&y), gen.image_of_zero))
}

fn criterion_7() -> Outcome {
    let c = ctx(Family::A, 2, 5);
    let bfs = bfs_lengths(&c, 4);
    let xs: Vec<ExtAffineElement> = c.enumerate_dominant(4);
    let alcove = c.fundamental_alcove_weights();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let n = rng.gen_range(1..=4);
        let mut labels = Vec::new();
        let mut expected = 0;
        for _ in 0..n {
            let x = &xs[rng.gen_range(0..xs.len())];
            let om = &c.omega_group()[rng.gen_range(0..c.omega_group().len())].elem;
            let lam = &alcove[rng.gen_range(0..alcove.len())];
            let kind = if rng.gen_bool(0.5) { LabelKind::Simple } else { LabelKind::Weyl };
            labels.push(ObjLabel::canonical(&c, kind, &x.mul(om), lam).map_err(|e| e.to_string())?);
            expected += bfs[x];
        }
        let got = gfd_tensor(&c, &labels).map_err(|e| e.to_string())?;
        if got.gfd != expected || !got.strongly_regular {
            return Err(format!("trial {trial}: gfd {} expected {expected}", got.gfd));
        }
        let mut rev = labels.clone();
        rev.reverse();
        if gfd_tensor(&c, &rev).map_err(|e| e.to_string())? != got {
            return Err(format!("trial {trial}: not permutation invariant"));
        }
    }
    let table = Verlinde::new(c.clone()).build_table().map_err(|e| e.to_string())?;
    let eng = RegEngine::new(&c, &builtin_a2_rules(), &table).map_err(|e| e.to_string())?;
    let rep = regquot_coherence(&eng, &table).map_err(|e| e.to_string())?;
    match rep.failure {
        Some(f) => Err(f),
        None => Ok(format!("200 lists; coherence {} checks", rep.checked)),
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (f, r) in [(Family::A, 2), (Family::B, 2)] {
        let c = ctx(f, r, 7);
        let rs = c.rootsystem();
        for lam in small_dominant(&c, 10_000, 150) {
            let table = freudenthal(rs, &lam).map_err(|e| e.to_string())?;
            let d = weyl_dim(rs, &lam).map_err(|e| e.to_string())?;
            if table.total_dimension(rs) != d {
                return Err(format!("{f}{r} {lam}: Freudenthal {} vs {d}", table.total_dimension(rs)));
            }
            count += 1;
        }
        let alcove = c.fundamental_alcove_weights();
        for a in &alcove {
            let ta = freudenthal(rs, a).map_err(|e| e.to_string())?;
            for b in &alcove {
                let chi = klimyk_tensor(rs, &ta, b).map_err(|e| e.to_string())?;
                let lhs = character_dimension(rs, &chi).map_err(|e| e.to_string())?;
                let rhs = (weyl_dim(rs, a).unwrap() * weyl_dim(rs, b).unwrap()) as i128;
                if lhs != rhs || chi.values().any(|&n| n < 0) {
                    return Err(format!("{f}{r} Klimyk {a} x {b}: {lhs} vs {rhs}"));
                }
                count += 1;
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{count} checks in {:.2?}", start.elapsed()))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let c = ctx(Family::A, 2, 13);
    let n = c.fundamental_alcove_weights().len();
    let start = Instant::now();
    let cold = load_or_build(&Verlinde::new(c.clone()), dir.path()).map_err(|e| e.to_string())?;
    let cold_t = start.elapsed();
    let start = Instant::now();
    let warm = load_or_build(&Verlinde::new(c.clone()), dir.path()).map_err(|e| e.to_string())?;
    let warm_t = start.elapsed();
    let bytes_cold = cold.to_json();
    if bytes_cold != warm.to_json() || cold.digest() != warm.digest() {
        return Err("cached table differs from cold build".into());
    }
    verify_cache(&Verlinde::new(c), dir.path()).map_err(|e| e.to_string())?;
    if cold_t > Duration::from_secs(60) || warm_t > Duration::from_secs(1) {
        return Err(format!("cold {cold_t:.2?}, cached {warm_t:.2?}"));
    }
    Ok(format!("{n} weights; cold {cold_t:.2?}, cached {warm_t:.2?}, digest {}", &cold.digest()[..16]))
}

fn main() {
    let tables = tables_1_2();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3(&tables)),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
