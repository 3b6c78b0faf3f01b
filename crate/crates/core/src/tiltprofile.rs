//! Structural constraints on minimal tilting complexes of Weyl and simple
//! modules, and good filtration dimension bookkeeping.
//!
//! Profiles pin endpoints, negligibility and admissible highest weights per
//! degree. Interior multiplicities are not determined and are not modelled.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affweyl::{EllContext, ExtAffineElement};
use crate::error::{Error, Result};
use crate::regquot::{LabelKind, ObjLabel};
use crate::rootsys::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeConstraint {
    Zero,
    /// No summand `T(ν)` with `ν ∈ C_fund`.
    Negligible,
    /// The term is `T(ν)`.
    ExactlyT(Weight),
    /// `T(ν)` occurs exactly once; other summands are unconstrained here.
    ContainsT(Weight),
    /// Every summand `T(ν)` has `ν` in the set.
    SupportBounded(BTreeSet<Weight>),
}

impl fmt::Display for DegreeConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeConstraint::Zero => f.write_str("Zero"),
            DegreeConstraint::Negligible => f.write_str("Negligible"),
            DegreeConstraint::ExactlyT(w) => write!(f, "ExactlyT({w})"),
            DegreeConstraint::ContainsT(w) => write!(f, "ContainsT({w})"),
            DegreeConstraint::SupportBounded(s) => {
                let items: Vec<String> = s.iter().map(|w| format!("({w})")).collect();
                write!(f, "Support{{{}}}", items.join(" "))
            }
        }
    }
}

/// Conjunction of constraints per degree; absent degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexProfile {
    pub degrees: BTreeMap<i64, Vec<DegreeConstraint>>,
    pub symmetric: bool,
}

impl ComplexProfile {
    pub fn constraints(&self, i: i64) -> Vec<DegreeConstraint> {
        self.degrees.get(&i).cloned().unwrap_or_else(|| vec![DegreeConstraint::Zero])
    }

    pub fn min_degree(&self) -> i64 {
        self.degrees.keys().next().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.keys().next_back().copied().unwrap_or(0)
    }

    /// The admissible highest weights at degree `i`.
    pub fn support(&self, i: i64) -> BTreeSet<Weight> {
        self.constraints(i)
            .into_iter()
            .find_map(|c| match c {
                DegreeConstraint::SupportBounded(s) => Some(s),
                _ => None,
            })
            .unwrap_or_default()
    }
}

fn check_canonical(ctx: &EllContext, x: &ExtAffineElement, lambda: &Weight) -> Result<()> {
    ctx.rootsystem().check_weight(lambda)?;
    if !ctx.in_fundamental_alcove(lambda) {
        return Err(Error::NotInFundamentalAlcove(lambda.clone()));
    }
    if !ctx.is_dominant_element(x) {
        return Err(Error::NotDominantElement(ctx.describe(x)));
    }
    Ok(())
}

/// `{yω_x·λ : y ∈ W_aff⁺, ℓ(y) ≤ bound}` for each `bound ≤ max`, indexed by
/// bound.
fn supports(ctx: &EllContext, omega_lambda: &Weight, max: usize) -> Vec<BTreeSet<Weight>> {
    let ys = ctx.enumerate_dominant(max);
    (0..=max)
        .map(|b| ys.iter().filter(|y| ctx.length(y) <= b).map(|y| ctx.dot_act(y, omega_lambda)).collect())
        .collect()
}

pub fn weyl_profile(ctx: &EllContext, x: &ExtAffineElement, lambda: &Weight) -> Result<ComplexProfile> {
    check_canonical(ctx, x, lambda)?;
    let len = ctx.length(x);
    let top = ctx.dot_act(&ctx.omega_of(x).elem, lambda);
    let sup = supports(ctx, &top, len);
    let mut degrees = BTreeMap::new();
    for i in 0..=len {
        let mut cs = Vec::new();
        if i == 0 {
            cs.push(DegreeConstraint::ExactlyT(ctx.dot_act(x, lambda)));
        }
        if i == len {
            cs.push(DegreeConstraint::ExactlyT(top.clone()));
        } else {
            cs.push(DegreeConstraint::Negligible);
        }
        cs.push(DegreeConstraint::SupportBounded(sup[len - i].clone()));
        cs.dedup();
        degrees.insert(i as i64, cs);
    }
    Ok(ComplexProfile { degrees, symmetric: false })
}

pub fn simple_profile(ctx: &EllContext, x: &ExtAffineElement, lambda: &Weight) -> Result<ComplexProfile> {
    check_canonical(ctx, x, lambda)?;
    let len = ctx.length(x);
    let top = ctx.dot_act(&ctx.omega_of(x).elem, lambda);
    let sup = supports(ctx, &top, len);
    let mut degrees = BTreeMap::new();
    for i in -(len as i64)..=len as i64 {
        let a = i.unsigned_abs() as usize;
        let mut cs = Vec::new();
        if a == len {
            cs.push(DegreeConstraint::ExactlyT(top.clone()));
        } else {
            if i == 0 {
                cs.push(DegreeConstraint::ContainsT(ctx.dot_act(x, lambda)));
            }
            if a + 1 == len {
                cs.push(DegreeConstraint::Negligible);
            }
        }
        cs.push(DegreeConstraint::SupportBounded(sup[len - a].clone()));
        degrees.insert(i, cs);
    }
    Ok(ComplexProfile { degrees, symmetric: true })
}

/// A candidate complex: degree → multiset of tilting highest weights.
pub type CandidateComplex = BTreeMap<i64, BTreeMap<Weight, u64>>;

/// Checks a candidate against a profile; the error names the first
/// violated degree.
pub fn check_profile(ctx: &EllContext, candidate: &CandidateComplex, profile: &ComplexProfile) -> Result<(), String> {
    let degrees: BTreeSet<i64> = candidate.keys().chain(profile.degrees.keys()).copied().collect();
    let empty = BTreeMap::new();
    for i in degrees {
        let term = candidate.get(&i).unwrap_or(&empty);
        let term: BTreeMap<&Weight, u64> = term.iter().filter(|(_, &m)| m > 0).map(|(w, &m)| (w, m)).collect();
        for c in profile.constraints(i) {
            let ok = match &c {
                DegreeConstraint::Zero => term.is_empty(),
                DegreeConstraint::Negligible => term.keys().all(|w| !ctx.in_fundamental_alcove(w)),
                DegreeConstraint::ExactlyT(nu) => term.len() == 1 && term.get(nu) == Some(&1),
                DegreeConstraint::ContainsT(nu) => term.get(nu) == Some(&1),
                DegreeConstraint::SupportBounded(s) => term.keys().all(|w| s.contains(*w)),
            };
            if !ok {
                return Err(format!("degree {i} violates {c:?}"));
            }
        }
    }
    Ok(())
}

fn label_element(ctx: &EllContext, label: &ObjLabel) -> Result<ExtAffineElement> {
    match (&label.kind, &label.word) {
        (LabelKind::Simple | LabelKind::Weyl, Some(w)) if label.is_regular(ctx) => ctx.from_word(w),
        (LabelKind::Simple | LabelKind::Weyl, _) => {
            Err(Error::Precondition(format!("{label} is not a regular canonical label")))
        }
        _ => Err(Error::Precondition(format!("gfd needs a Simple or Weyl label, got {label}"))),
    }
}

/// Good filtration dimension of a regular simple or Weyl module: `ℓ(x)`.
pub fn gfd(ctx: &EllContext, label: &ObjLabel) -> Result<usize> {
    Ok(ctx.length(&label_element(ctx, label)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorGfd {
    pub gfd: usize,
    pub strongly_regular: bool,
}

/// A tensor product of regular simple and Weyl modules is strongly regular
/// with additive good filtration dimension.
pub fn gfd_tensor(ctx: &EllContext, labels: &[ObjLabel]) -> Result<TensorGfd> {
    let mut total = 0;
    for l in labels {
        total += gfd(ctx, l)?;
    }
    Ok(TensorGfd { gfd: total, strongly_regular: true })
}

/// Strong regularity is decided for regular simple and Weyl labels only.
pub fn is_strongly_regular(ctx: &EllContext, label: &ObjLabel) -> Result<bool> {
    match label.kind {
        LabelKind::Simple | LabelKind::Weyl => Ok(label.is_regular(ctx)),
        _ => Err(Error::Undetermined(format!("no strong regularity data for {label}"))),
    }
}

pub fn is_regular_label(ctx: &EllContext, label: &ObjLabel) -> bool {
    label.is_regular(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affweyl::Word;
    use crate::rootsys::{Family, RootSystemSpec};

    fn ctx(ell: i64) -> EllContext {
        EllContext::from_spec(RootSystemSpec::new(Family::A, 2).unwrap(), ell).unwrap()
    }

    fn el(c: &EllContext, s: &str) -> ExtAffineElement {
        c.from_word(&s.parse::<Word>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_profiles() {
        let c = ctx(5);
        let lam = Weight::from([1, 1]);
        let p = weyl_profile(&c, &c.identity(), &lam).unwrap();
        assert_eq!(p.constraints(0)[0], DegreeConstraint::ExactlyT(lam.clone()));
        assert_eq!((p.min_degree(), p.max_degree()), (0, 0));
        let q = simple_profile(&c, &c.identity(), &lam).unwrap();
        assert_eq!(q.constraints(0)[0], DegreeConstraint::ExactlyT(lam));
        assert_eq!(q.constraints(1), vec![DegreeConstraint::Zero]);
    }

    #[test]
    fn weyl_s0() {
        let c = ctx(5);
        let zero = Weight::zero(2);
        let p = weyl_profile(&c, &el(&c, "s0"), &zero).unwrap();
        let c0 = p.constraints(0);
        assert!(c0.contains(&DegreeConstraint::ExactlyT(Weight::from([3, 3]))));
        assert!(c0.contains(&DegreeConstraint::Negligible));
        assert_eq!(p.constraints(1)[0], DegreeConstraint::ExactlyT(zero.clone()));
        assert_eq!(p.constraints(2), vec![DegreeConstraint::Zero]);
        assert_eq!(p.support(1), BTreeSet::from([zero.clone()]));
        assert_eq!(p.support(0), BTreeSet::from([zero, Weight::from([3, 3])]));
    }

    #[test]
    fn simple_s0_symmetric() {
        let c = ctx(5);
        let lam = Weight::from([1, 0]);
        let p = simple_profile(&c, &el(&c, "s0"), &lam).unwrap();
        assert!(p.symmetric);
        assert_eq!((p.min_degree(), p.max_degree()), (-1, 1));
        for i in -1..=1 {
            assert_eq!(p.constraints(i), p.constraints(-i));
        }
        assert_eq!(p.constraints(1)[0], DegreeConstraint::ExactlyT(lam.clone()));
        let s0lam = c.dot_act(&el(&c, "s0"), &lam);
        assert!(p.constraints(0).contains(&DegreeConstraint::ContainsT(s0lam)));
        assert!(p.constraints(0).contains(&DegreeConstraint::Negligible));
    }

    #[test]
    fn omega_endpoint() {
        let c = ctx(5);
        let x = ExtAffineElement::translation(Weight::from([1, 0]));
        let zero = Weight::zero(2);
        let p = weyl_profile(&c, &x, &zero).unwrap();
        assert_eq!(p.max_degree(), 2);
        let expect = c.omega_of(&x).image_of_zero.clone();
        assert_eq!(expect, Weight::from([2, 0]));
        assert!(p.constraints(2).contains(&DegreeConstraint::ExactlyT(expect)));
        assert!(p.constraints(0).contains(&DegreeConstraint::ExactlyT(Weight::from([5, 0]))));
    }

    #[test]
    fn check_profile_accepts_and_rejects() {
        let c = ctx(5);
        let zero = Weight::zero(2);
        let p = weyl_profile(&c, &el(&c, "s0"), &zero).unwrap();
        let good: CandidateComplex =
            BTreeMap::from([(0, BTreeMap::from([(Weight::from([3, 3]), 1)])), (1, BTreeMap::from([(zero.clone(), 1)]))]);
        assert!(check_profile(&c, &good, &p).is_ok());
        let mut bad = good.clone();
        bad.insert(2, BTreeMap::from([(zero.clone(), 1)]));
        assert!(check_profile(&c, &bad, &p).is_err());
        let mut bad = good;
        bad.insert(0, BTreeMap::from([(zero, 1)]));
        assert!(check_profile(&c, &bad, &p).is_err());
    }

    #[test]
    fn gfd_examples() {
        let c = ctx(5);
        let l = ObjLabel::from_highest_weight(&c, LabelKind::Simple, &Weight::from([1, 1])).unwrap();
        assert_eq!(gfd(&c, &l).unwrap(), 0);
        let d = ObjLabel::from_highest_weight(&c, LabelKind::Weyl, &Weight::from([3, 3])).unwrap();
        assert_eq!(gfd(&c, &d).unwrap(), 1);
        let big = ObjLabel::from_highest_weight(&c, LabelKind::Simple, &Weight::from([5, 0])).unwrap();
        assert_eq!(gfd(&c, &big).unwrap(), 2);
        let s0l = ObjLabel::from_word(&c, LabelKind::Simple, &"s0".parse().unwrap(), &Weight::from([1, 0])).unwrap();
        let s0m = ObjLabel::from_word(&c, LabelKind::Simple, &"s0".parse().unwrap(), &Weight::from([0, 1])).unwrap();
        assert_eq!(gfd_tensor(&c, &[s0l, s0m]).unwrap(), TensorGfd { gfd: 2, strongly_regular: true });
        assert_eq!(gfd_tensor(&c, &[d.clone(), l]).unwrap().gfd, 1);
        let t = ObjLabel::from_highest_weight(&c, LabelKind::Tilting, &Weight::from([1, 1])).unwrap();
        assert!(gfd(&c, &t).is_err());
        assert!(matches!(is_strongly_regular(&c, &t), Err(Error::Undetermined(_))));
        assert!(is_strongly_regular(&c, &d).unwrap());
    }

    #[test]
    fn regular_label_examples() {
        let c = ctx(5);
        let wall = ObjLabel::from_highest_weight(&c, LabelKind::Weyl, &Weight::from([4, 0])).unwrap();
        assert!(!is_regular_label(&c, &wall));
        assert!(gfd(&c, &wall).is_err());
        let t = ObjLabel::from_highest_weight(&c, LabelKind::Tilting, &Weight::from([1, 1])).unwrap();
        assert!(is_regular_label(&c, &t));
        let neg = ObjLabel::from_highest_weight(&c, LabelKind::Tilting, &Weight::from([3, 3])).unwrap();
        assert!(!is_regular_label(&c, &neg));
    }
}
