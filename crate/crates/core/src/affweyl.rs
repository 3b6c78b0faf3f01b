//! The extended affine Weyl group `W_ext = X ⋊ W_fin` acting on weights by the
//! ℓ-dilated dot action, together with alcove geometry: separating-wall
//! length, reduction to the fundamental alcove and the length-zero subgroup Ω.
//!
//! Generators are numbered `s0` (the affine reflection in the wall
//! `(x + ρ, α_h^∨) = ℓ`, with `α_h` the highest short root) and `s1..sn`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{FiniteWeylElement, RootSystem, RootSystemSpec, Weight};

/// `t_γ w`, acting by `x·λ = ℓγ + w(λ + ρ) − ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElement {
    pub gamma: Weight,
    pub w: FiniteWeylElement,
}

impl ExtAffineElement {
    pub fn translation(gamma: Weight) -> Self {
        let n = gamma.rank();
        Self { gamma, w: FiniteWeylElement::identity(n) }
    }

    /// `(t_γ w)(t_δ v) = t_{γ + w(δ)} wv`.
    pub fn mul(&self, other: &Self) -> Self {
        Self { gamma: &self.gamma + &self.w.apply(&other.gamma), w: self.w.compose(&other.w) }
    }

    pub fn inverse(&self) -> Self {
        let winv = self.w.inverse();
        Self { gamma: -winv.apply(&self.gamma), w: winv }
    }

    pub fn is_identity(&self) -> bool {
        self.gamma.is_zero() && self.w.is_identity()
    }
}

/// A word in the generators `s0..sn`; the empty word is written `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for g in &self.0 {
            write!(f, "s{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::default());
        }
        let bytes = s.as_bytes();
        if bytes.is_empty() || bytes.len() % 2 != 0 {
            return Err(Error::Precondition(format!("malformed word {s:?}")));
        }
        bytes
            .chunks(2)
            .map(|c| match c {
                [b's', d] if d.is_ascii_digit() => Ok(usize::from(d - b'0')),
                _ => Err(Error::Precondition(format!("malformed word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Result of reducing a weight into the fundamental alcove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionResult {
    /// `τ` lies on the wall `H_{β,m}`, `β` the lowest such positive-root index.
    Singular { beta: usize, m: i64 },
    /// `τ = x·λ` with `x ∈ W_aff`, `λ ∈ C_fund`; `word` is a reduced word for `x`.
    Regular { x: ExtAffineElement, lambda: Weight, sign: i8, length: usize, word: Word },
}

impl ReductionResult {
    pub fn is_singular(&self) -> bool {
        matches!(self, ReductionResult::Singular { .. })
    }
}

/// A length-zero element of `W_ext`; these permute the walls of `C_fund`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub index: usize,
    pub elem: ExtAffineElement,
    /// Canonical label of the class of `gamma` in `X / ZΦ`.
    pub class_label: Vec<i64>,
    /// `ω·0`.
    pub image_of_zero: Weight,
}

#[derive(Clone, Debug)]
pub struct EllContext {
    rs: RootSystem,
    ell: i64,
    alpha_h: Weight,
    alpha_h_coroot: Vec<i64>,
    generators: Vec<ExtAffineElement>,
    omega: Vec<OmegaElement>,
}

impl EllContext {
    pub fn new(rs: RootSystem, ell: i64) -> Result<Self> {
        let h = rs.coxeter_number();
        if ell < h {
            return Err(Error::EllTooSmall { ell, h });
        }
        let hs = rs.highest_short_root();
        let alpha_h = hs.root.clone();
        let alpha_h_coroot = hs.coroot.clone();
        let mut generators = vec![ExtAffineElement {
            gamma: alpha_h.clone(),
            w: rs.root_reflection(rs.highest_short_root_index()).clone(),
        }];
        for i in 0..rs.rank() {
            generators.push(ExtAffineElement { gamma: rs.zero(), w: rs.simple_reflection(i).clone() });
        }
        let mut ctx = Self { rs, ell, alpha_h, alpha_h_coroot, generators, omega: Vec::new() };
        ctx.omega = ctx.build_omega();
        Ok(ctx)
    }

    pub fn from_spec(spec: RootSystemSpec, ell: i64) -> Result<Self> {
        Self::new(RootSystem::build(spec)?, ell)
    }

    pub fn rootsystem(&self) -> &RootSystem {
        &self.rs
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> ExtAffineElement {
        ExtAffineElement::translation(self.rs.zero())
    }

    /// `s0` for `i = 0`, the simple reflection `s_i` otherwise.
    pub fn generator(&self, i: usize) -> Result<&ExtAffineElement> {
        self.generators.get(i).ok_or(Error::GeneratorIndex { index: i, rank: self.rank() })
    }

    pub fn from_word(&self, word: &Word) -> Result<ExtAffineElement> {
        let mut x = self.identity();
        for &g in &word.0 {
            x = x.mul(self.generator(g)?);
        }
        Ok(x)
    }

    pub fn dot_act(&self, x: &ExtAffineElement, lambda: &Weight) -> Weight {
        let rho = self.rs.rho();
        &(&x.gamma.scale(self.ell) + &x.w.apply(&(lambda + &rho))) - &rho
    }

    /// Lowest-index positive root `β` and level `m` with `λ ∈ H_{β,m}`.
    pub fn is_singular(&self, lambda: &Weight) -> Option<(usize, i64)> {
        let y = lambda + &self.rs.rho();
        self.rs.positive_roots().iter().enumerate().find_map(|(i, r)| {
            let p = r.pair(&y);
            (p.rem_euclid(self.ell) == 0).then_some((i, p.div_euclid(self.ell)))
        })
    }

    /// Strictly inside `C_fund`.
    pub fn in_fundamental_alcove(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank() && lambda.coords().iter().all(|&c| c >= 0) && self.top_pairing(lambda) < self.ell
    }

    /// In the closure of `C_fund`.
    pub fn in_alcove_closure(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank() && lambda.coords().iter().all(|&c| c >= -1) && self.top_pairing(lambda) <= self.ell
    }

    /// `(λ + ρ, α_h^∨)`; every positive coroot pairing of a dominant-shifted
    /// weight is bounded by this one.
    fn top_pairing(&self, lambda: &Weight) -> i64 {
        self.alpha_h_coroot.iter().zip(lambda.coords()).map(|(c, x)| c * (x + 1)).sum()
    }

    /// `C_fund ∩ X`, sorted lexicographically.
    pub fn fundamental_alcove_weights(&self) -> Vec<Weight> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        // pairing with α_h^∨ bounds every coordinate by ℓ − h
        let bound = self.ell - self.rs.coxeter_number();
        loop {
            let w = Weight(cur.clone());
            if self.in_fundamental_alcove(&w) {
                out.push(w);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn is_affine(&self, x: &ExtAffineElement) -> bool {
        self.rs.in_root_lattice(&x.gamma)
    }

    /// `h·(γ, β^∨) + (wρ, β^∨)` for every positive root; the image of the
    /// interior point `(ℓ/h − 1)ρ` pairs with `β^∨` to `ℓ/h` times this.
    fn scaled_pairings(&self, x: &ExtAffineElement) -> impl Iterator<Item = i64> + '_ {
        let h = self.rs.coxeter_number();
        let wrho = x.w.apply(&self.rs.rho());
        let v = &x.gamma.scale(h) + &wrho;
        self.rs.positive_roots().iter().map(move |r| r.pair(&v))
    }

    /// Number of hyperplanes `H_{β,m}` separating `C_fund` from `x·C_fund`.
    pub fn length(&self, x: &ExtAffineElement) -> usize {
        let h = self.rs.coxeter_number();
        self.scaled_pairings(x).map(|n| n.div_euclid(h).unsigned_abs() as usize).sum()
    }

    pub fn sign(&self, x: &ExtAffineElement) -> Result<i8> {
        if self.is_affine(x) {
            Ok(x.w.det())
        } else {
            Err(Error::NotAffine)
        }
    }

    /// `x·C_fund` lies in the dominant chamber.
    pub fn is_dominant_element(&self, x: &ExtAffineElement) -> bool {
        let h = self.rs.coxeter_number();
        let wrho = x.w.apply(&self.rs.rho());
        x.gamma.coords().iter().zip(wrho.coords()).all(|(g, r)| h * g + r > 0)
    }

    /// Walks `y = τ + ρ` towards `C_fund` by reflecting in walls of `C_fund`
    /// that separate it from `y`. Each step is a left descent, so the applied
    /// generators form a reduced word. Points on walls are left in place, so
    /// the walk ends in the closure of `C_fund`.
    fn walk(&self, tau: &Weight, mut on_step: impl FnMut(usize)) -> Weight {
        let mut y = tau + &self.rs.rho();
        loop {
            if let Some(i) = y.coords().iter().position(|&c| c < 0) {
                let a = y.0[i];
                let root = self.rs.simple_root(i);
                for (c, r) in y.0.iter_mut().zip(root.coords()) {
                    *c -= a * r;
                }
                on_step(i + 1);
                continue;
            }
            let p: i64 = self.alpha_h_coroot.iter().zip(y.coords()).map(|(c, x)| c * x).sum();
            if p > self.ell {
                let k = p - self.ell;
                for (c, r) in y.0.iter_mut().zip(self.alpha_h.coords()) {
                    *c -= k * r;
                }
                on_step(0);
                continue;
            }
            return &y - &self.rs.rho();
        }
    }

    pub fn reduce(&self, tau: &Weight) -> Result<ReductionResult> {
        self.rs.check_weight(tau)?;
        if let Some((beta, m)) = self.is_singular(tau) {
            return Ok(ReductionResult::Singular { beta, m });
        }
        let mut word = Vec::new();
        let lambda = self.walk(tau, |g| word.push(g));
        let word = Word(word);
        let x = self.from_word(&word)?;
        let length = word.len();
        let sign = if length % 2 == 0 { 1 } else { -1 };
        Ok(ReductionResult::Regular { x, lambda, sign, length, word })
    }

    /// `(λ, sign)` for regular `τ`, `None` for singular `τ`; no group
    /// element is tracked.
    pub fn reduce_fast(&self, tau: &Weight) -> Option<(Weight, i8)> {
        let mut sign = 1i8;
        let lambda = self.walk(tau, |_| sign = -sign);
        self.in_fundamental_alcove(&lambda).then_some((lambda, sign))
    }

    /// The unique point of `W_aff·τ` in the closure of `C_fund`, with a
    /// reduced word for an element carrying it to `τ`.
    pub fn reduce_to_closure(&self, tau: &Weight) -> (Word, Weight) {
        let mut word = Vec::new();
        let lambda = self.walk(tau, |g| word.push(g));
        (Word(word), lambda)
    }

    fn build_omega(&self) -> Vec<OmegaElement> {
        let n = self.rank();
        let f = self.rs.fundamental_group_order() as usize;
        // one representative per class, found among sums of fundamental weights
        let mut reps: Vec<(Vec<i64>, Weight)> = vec![(self.rs.coset_label(&self.rs.zero()), self.rs.zero())];
        let mut queue = VecDeque::from([self.rs.zero()]);
        let mut seen = HashSet::from([self.rs.zero()]);
        while reps.len() < f {
            let Some(g) = queue.pop_front() else { break };
            for i in 0..n {
                let next = &g + &Weight::fundamental(n, i);
                if !seen.insert(next.clone()) {
                    continue;
                }
                let label = self.rs.coset_label(&next);
                if !reps.iter().any(|(l, _)| *l == label) {
                    reps.push((label, next.clone()));
                }
                queue.push_back(next);
            }
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        reps.into_iter()
            .enumerate()
            .map(|(index, (class_label, gamma))| {
                let t = ExtAffineElement::translation(gamma.clone());
                let target = gamma.scale(self.ell);
                let (word, image_of_zero) = self.reduce_to_closure(&target);
                let xp = self.from_word(&word).expect("generated words are valid");
                let elem = xp.inverse().mul(&t);
                debug_assert_eq!(self.length(&elem), 0);
                OmegaElement { index, elem, class_label, image_of_zero }
            })
            .collect()
    }

    /// Ω, identity first, the rest ordered by class label.
    pub fn omega_group(&self) -> &[OmegaElement] {
        &self.omega
    }

    pub fn omega_by_class(&self, label: &[i64]) -> &OmegaElement {
        self.omega.iter().find(|o| o.class_label == label).expect("every class has an Ω element")
    }

    /// `ω_x`: the Ω element in the class of `γ` for `x = t_γ w`.
    pub fn omega_of(&self, x: &ExtAffineElement) -> &OmegaElement {
        self.omega_by_class(&self.rs.coset_label(&x.gamma))
    }

    /// Index of `ω_a ω_b`.
    pub fn omega_mul(&self, a: usize, b: usize) -> usize {
        let g = &self.omega[a].elem.gamma + &self.omega[b].elem.gamma;
        self.omega_by_class(&self.rs.coset_label(&g)).index
    }

    pub fn omega_inverse(&self, a: usize) -> usize {
        let g = -&self.omega[a].elem.gamma;
        self.omega_by_class(&self.rs.coset_label(&g)).index
    }

    /// `x = x_aff · ω_x` with a reduced word for `x_aff`.
    pub fn factor(&self, x: &ExtAffineElement) -> (Word, usize) {
        let om = self.omega_of(x);
        let xa = x.mul(&om.elem.inverse());
        let (word, _) = self.reduce_to_closure(&self.dot_act(&xa, &self.rs.zero()));
        (word, om.index)
    }

    /// Word form, with a trailing `ω<k>` when the Ω part is nontrivial.
    pub fn describe(&self, x: &ExtAffineElement) -> String {
        let (word, om) = self.factor(x);
        match (word.is_empty(), om) {
            (_, 0) => word.to_string(),
            (true, k) => format!("ω{k}"),
            (false, k) => format!("{word}ω{k}"),
        }
    }

    /// `W_aff⁺` up to length `max_len`, in BFS order over words with the
    /// generator order `s0, s1, …`.
    pub fn enumerate_dominant(&self, max_len: usize) -> Vec<ExtAffineElement> {
        let mut out = vec![self.identity()];
        let mut seen = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.generators {
                    let y = x.mul(g);
                    if self.is_dominant_element(&y) && self.length(&y) == len && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// `W_ext⁺ = W_aff⁺ · Ω` up to length `max_len`.
    pub fn enumerate_dominant_ext(&self, max_len: usize) -> Vec<ExtAffineElement> {
        self.enumerate_dominant(max_len)
            .into_iter()
            .flat_map(|x| self.omega.iter().map(move |o| x.mul(&o.elem)).collect::<Vec<_>>())
            .collect()
    }

    /// `τ = x·λ` with `x ∈ W_aff⁺`, `λ ∈ C_fund ∩ X`.
    pub fn weight_to_xlambda(&self, tau: &Weight) -> Result<(ExtAffineElement, Weight)> {
        self.rs.check_weight(tau)?;
        if !tau.is_dominant() {
            return Err(Error::NotDominant(tau.clone()));
        }
        match self.reduce(tau)? {
            ReductionResult::Singular { beta, m } => Err(Error::Singular { weight: tau.clone(), beta, m }),
            ReductionResult::Regular { x, lambda, .. } => Ok((x, lambda)),
        }
    }

    /// `τ = x·base` with `x ∈ W_ext⁺`; requires `τ` to lie in the
    /// `W_ext`-orbit of `base ∈ C_fund`.
    pub fn weight_to_xlambda_at(&self, tau: &Weight, base: &Weight) -> Result<(ExtAffineElement, Weight)> {
        if !self.in_fundamental_alcove(base) {
            return Err(Error::NotInFundamentalAlcove(base.clone()));
        }
        let (x, lambda) = self.weight_to_xlambda(tau)?;
        let om = self
            .omega
            .iter()
            .find(|o| self.dot_act(&o.elem, base) == lambda)
            .ok_or_else(|| Error::Precondition(format!("{tau} is not linked to {base}")))?;
        Ok((x.mul(&om.elem), base.clone()))
    }
}
