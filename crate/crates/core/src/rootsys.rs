//! Root-system data for every simple type, in fundamental-weight
//! coordinates.
//!
//! Weights are integer vectors `λ = Σ λ_i ϖ_i`, so `λ_i = (λ, α_i^∨)`. All
//! geometry goes through coroot pairings; the scalar product is never
//! materialised except as the integer normalisation `norms` used by the
//! Freudenthal recursion.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CosetLabeler, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank { family, rank })
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Dominant means `(λ, α_i^∨) ≥ 0` for every simple coroot.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// An element of the finite Weyl group, stored as its integer matrix on
/// fundamental-weight coordinates together with the inverse matrix.
#[derive(Clone, Debug)]
pub struct FiniteWeylElement {
    n: usize,
    mat: Vec<i64>,
    inv: Vec<i64>,
    det: i8,
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for FiniteWeylElement {}

impl Hash for FiniteWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl PartialOrd for FiniteWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteWeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&other.mat)
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

impl FiniteWeylElement {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        Self { n, inv: mat.clone(), mat, det: 1 }
    }

    /// The reflection `x ↦ x − (x, β^∨) β`; an involution.
    fn reflection(root: &Weight, coroot: &[i64]) -> Self {
        let n = root.rank();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                mat[i * n + j] = i64::from(i == j) - root.0[i] * coroot[j];
            }
        }
        Self { n, inv: mat.clone(), mat, det: -1 }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn det(&self) -> i8 {
        self.det
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            mat: mat_mul(self.n, &self.mat, &other.mat),
            inv: mat_mul(self.n, &other.inv, &self.inv),
            det: self.det * other.det,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, mat: self.inv.clone(), inv: self.mat.clone(), det: self.det }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.n;
        Weight((0..n).map(|i| (0..n).map(|j| self.mat[i * n + j] * w.0[j]).sum()).collect())
    }
}

/// A positive root with its cached coroot expansion.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    /// The root in fundamental-weight coordinates.
    pub root: Weight,
    /// Expansion over the simple roots.
    pub simple_coeffs: Vec<i64>,
    /// Expansion of the coroot over the simple coroots; pairing a weight with
    /// the coroot is the dot product with this vector.
    pub coroot: Vec<i64>,
    /// Squared length in the normalisation where short roots have norm 1
    /// (in simply laced types all roots have norm 1).
    pub norm: i64,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }

    pub fn pair(&self, w: &Weight) -> i64 {
        self.coroot.iter().zip(&w.0).map(|(c, x)| c * x).sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    cartan: IntMatrix,
    norms: Vec<i64>,
    positive_roots: Vec<PositiveRoot>,
    highest_root: usize,
    highest_short_root: usize,
    coxeter_number: i64,
    simple_reflections: Vec<FiniteWeylElement>,
    root_reflections: Vec<FiniteWeylElement>,
    w0: FiniteWeylElement,
    cosets: CosetLabeler,
    /// adjugate of the transposed Cartan matrix, for root-lattice coordinates
    adj_ct: IntMatrix,
    det: i64,
}

fn cartan_matrix(spec: RootSystemSpec) -> IntMatrix {
    let n = spec.rank;
    let mut c = IntMatrix::identity(n);
    for i in 0..n {
        c[(i, i)] = 2;
    }
    let link = |c: &mut IntMatrix, i: usize, j: usize| {
        c[(i, j)] = -1;
        c[(j, i)] = -1;
    };
    match spec.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..n.saturating_sub(1) {
                link(&mut c, i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
    }
    // entry (i, j) is (α_i, α_j^∨)
    match spec.family {
        Family::B => c[(n - 2, n - 1)] = -2,
        Family::C => c[(n - 1, n - 2)] = -2,
        Family::F => c[(1, 2)] = -2,
        Family::G => c[(1, 0)] = -3,
        _ => {}
    }
    c
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Squared lengths `D_i` of the simple roots, normalised to coprime integers.
/// They satisfy `C_ij D_j = C_ji D_i`.
fn symmetrizer(c: &IntMatrix) -> Vec<i64> {
    let n = c.rows();
    // rationals as (num, den)
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    d[0] = Some((1, 1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (p, q) = d[i].unwrap();
        for j in 0..n {
            if j != i && c[(i, j)] != 0 && d[j].is_none() {
                let (mut num, mut den) = (p * c[(j, i)], q * c[(i, j)]);
                if den < 0 {
                    num = -num;
                    den = -den;
                }
                let g = gcd(num, den);
                d[j] = Some((num / g, den / g));
                queue.push_back(j);
            }
        }
    }
    let l = d.iter().fold(1, |acc, x| {
        let den = x.unwrap().1;
        acc / gcd(acc, den) * den
    });
    let ints: Vec<i64> = d.iter().map(|x| x.unwrap().0 * (l / x.unwrap().1)).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
    ints.into_iter().map(|x| x / g).collect()
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = 1;
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[(r, c)]).collect())
                .collect();
            let minor = IntMatrix::from_rows(&minor_rows).det();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[(j, i)] = sign * minor;
        }
    }
    adj
}

impl RootSystem {
    pub fn build(spec: RootSystemSpec) -> Result<Self> {
        let spec = RootSystemSpec::new(spec.family, spec.rank)?;
        let n = spec.rank;
        let cartan = cartan_matrix(spec);
        let norms = symmetrizer(&cartan);
        let min_norm = *norms.iter().min().unwrap();
        let norms: Vec<i64> = norms.iter().map(|d| d / min_norm).collect();

        let simple_root = |i: usize| Weight((0..n).map(|j| cartan[(i, j)]).collect());
        let to_weight = |coeffs: &[i64]| {
            let mut w = Weight::zero(n);
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    w += &simple_root(i).scale(c);
                }
            }
            w
        };

        // reflection closure on simple-root coefficient vectors
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            let w = to_weight(&c);
            for i in 0..n {
                // s_i(β) = β − (β, α_i^∨) α_i
                let mut r = c.clone();
                r[i] -= w.0[i];
                if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut coeff_list: Vec<Vec<i64>> = seen.into_iter().collect();
        coeff_list.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));

        let positive_roots: Vec<PositiveRoot> = coeff_list
            .into_iter()
            .map(|c| {
                // 2|β|² = Σ c_i c_j C_ij D_j
                let mut twice_norm = 0;
                for i in 0..n {
                    for j in 0..n {
                        twice_norm += c[i] * c[j] * cartan[(i, j)] * norms[j];
                    }
                }
                let norm = twice_norm / 2;
                let coroot = (0..n).map(|i| c[i] * norms[i] / norm).collect();
                PositiveRoot { root: to_weight(&c), simple_coeffs: c, coroot, norm }
            })
            .collect();

        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height())
            .map(|(i, _)| i)
            .unwrap();
        let highest_short_root = positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.norm == 1)
            .max_by_key(|(_, r)| r.height())
            .map(|(i, _)| i)
            .unwrap();
        let coxeter_number = positive_roots[highest_short_root].coroot.iter().sum::<i64>() + 1;

        let root_reflections: Vec<FiniteWeylElement> =
            positive_roots.iter().map(|r| FiniteWeylElement::reflection(&r.root, &r.coroot)).collect();
        let simple_reflections: Vec<FiniteWeylElement> = (0..n)
            .map(|i| {
                let idx = positive_roots.iter().position(|r| r.height() == 1 && r.simple_coeffs[i] == 1).unwrap();
                root_reflections[idx].clone()
            })
            .collect();

        // w0 by descent: keep applying simple reflections while some pairing
        // with ρ's image stays positive
        let mut w0 = FiniteWeylElement::identity(n);
        let mut v = Weight(vec![1; n]);
        while let Some(i) = v.0.iter().position(|&x| x > 0) {
            v = simple_reflections[i].apply(&v);
            w0 = simple_reflections[i].compose(&w0);
        }

        let ct = cartan.transpose();
        let cosets = CosetLabeler::new(&ct);
        let det = ct.det();
        let adj_ct = adjugate(&ct);

        Ok(Self {
            spec,
            cartan,
            norms,
            positive_roots,
            highest_root,
            highest_short_root,
            coxeter_number,
            simple_reflections,
            root_reflections,
            w0,
            cosets,
            adj_ct,
            det,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Entry `(i, j)` is `(α_i, α_j^∨)`; row `i` is `α_i` in ϖ-coordinates.
    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Squared lengths of the simple roots (short roots have norm 1).
    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.cartan[(i, j)]).collect())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn highest_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_root]
    }

    pub fn highest_short_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_short_root]
    }

    pub fn highest_short_root_index(&self) -> usize {
        self.highest_short_root
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// `|X / ZΦ|`, the determinant of the Cartan matrix.
    pub fn fundamental_group_order(&self) -> i64 {
        self.det.abs()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { weight: w.clone(), got: w.rank(), rank: self.rank() })
        }
    }

    /// `(λ, β^∨)` for the positive root with index `beta`.
    pub fn pair(&self, w: &Weight, beta: usize) -> Result<i64> {
        self.check_weight(w)?;
        let root = self
            .positive_roots
            .get(beta)
            .ok_or(Error::RootIndex { index: beta, count: self.positive_roots.len() })?;
        Ok(root.pair(w))
    }

    pub fn simple_reflection(&self, i: usize) -> &FiniteWeylElement {
        &self.simple_reflections[i]
    }

    pub fn root_reflection(&self, beta: usize) -> &FiniteWeylElement {
        &self.root_reflections[beta]
    }

    pub fn identity(&self) -> FiniteWeylElement {
        FiniteWeylElement::identity(self.rank())
    }

    pub fn w0(&self) -> &FiniteWeylElement {
        &self.w0
    }

    pub fn w0_image(&self, w: &Weight) -> Weight {
        self.w0.apply(w)
    }

    /// Number of positive roots sent to negative roots.
    pub fn finite_length(&self, w: &FiniteWeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| {
                let img = w.apply(&r.root);
                let coords = self.root_coordinates(&img).expect("roots lie in the root lattice");
                coords.iter().sum::<i64>() < 0
            })
            .count()
    }

    /// The unique dominant weight in the orbit (ordinary linear action) and a
    /// witness `w` with `w(λ) = dominant`.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, FiniteWeylElement) {
        let mut v = w.clone();
        let mut acc = self.identity();
        while let Some(i) = v.0.iter().position(|&x| x < 0) {
            v = self.simple_reflections[i].apply(&v);
            acc = self.simple_reflections[i].compose(&acc);
        }
        (v, acc)
    }

    /// Dominant representative together with the sign of the witness, skipping
    /// the matrix bookkeeping.
    pub fn dominant_with_sign(&self, w: &Weight) -> (Weight, i8) {
        let mut v = w.clone();
        let mut sign = 1i8;
        while let Some(i) = v.0.iter().position(|&x| x < 0) {
            let a = v.0[i];
            let row = &self.simple_root(i);
            for (x, r) in v.0.iter_mut().zip(&row.0) {
                *x -= a * r;
            }
            sign = -sign;
        }
        (v, sign)
    }

    /// The full orbit of `w` under the finite Weyl group, sorted.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for (i, &x) in v.0.iter().enumerate() {
                if x != 0 {
                    let img = &v - &self.simple_root(i).scale(x);
                    if seen.insert(img.clone()) {
                        queue.push_back(img);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Coordinates of `w` over the simple roots, if `w ∈ ZΦ`.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<i64>> {
        let num = self.adj_ct.mul_vec(&w.0);
        num.iter().map(|&x| if x % self.det == 0 { Some(x / self.det) } else { None }).collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.cosets.contains(&w.0)
    }

    /// Canonical label of the class of `w` in `X / ZΦ`.
    pub fn coset_label(&self, w: &Weight) -> Vec<i64> {
        self.cosets.label(&w.0)
    }

    /// Dominance order: `a ≥ b` iff `a − b` is a nonnegative integer
    /// combination of positive roots.
    pub fn dominates(&self, a: &Weight, b: &Weight) -> bool {
        self.root_coordinates(&(a - b)).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// `2 (Σ c_i α_i, ν)` in the normalisation of [`Self::norms`].
    pub fn root_form2(&self, coeffs: &[i64], nu: &Weight) -> i64 {
        coeffs.iter().zip(&nu.0).zip(&self.norms).map(|((c, x), d)| c * x * d).sum()
    }
}
