//! Regular parts of tensor products, tracked as multisets of module labels.
//!
//! A regular label is stored canonically as `(kind, x, λ)` with `x ∈ W_aff⁺`
//! given by its reduced word and `λ ∈ C_fund ∩ X`; it names the module with
//! highest weight `x·λ`. An Ω-decoration `xω` is folded into the slot as
//! `(x, ω·λ)`. Tilting labels and singular labels keep only the highest
//! weight.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affweyl::{EllContext, ExtAffineElement, Word};
use crate::error::{Error, Result};
use crate::fusion::FusionTable;
use crate::rootsys::{Family, Weight};

/// Derived order puts custom labels first, which keeps a generic summand
/// ahead of the simple module in the same block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Custom(String),
    Simple,
    Weyl,
    Tilting,
}

impl LabelKind {
    fn prefix(&self) -> &str {
        match self {
            LabelKind::Custom(name) => name,
            LabelKind::Simple => "L",
            LabelKind::Weyl => "Delta",
            LabelKind::Tilting => "T",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjLabel {
    pub kind: LabelKind,
    /// Canonical reduced word of `x ∈ W_aff⁺`; `None` for weight-only labels.
    pub word: Option<Word>,
    /// The slot `λ ∈ C_fund` when `word` is present, the highest weight
    /// otherwise.
    pub weight: Weight,
}

impl ObjLabel {
    fn sort_key(&self) -> (&Weight, &LabelKind, usize, Option<&Word>) {
        (&self.weight, &self.kind, self.word.as_ref().map_or(0, Word::len), self.word.as_ref())
    }

    /// `(kind, x, λ)` label from a word over `s0..sn` (any reduced or
    /// unreduced expression for an element of `W_ext⁺` composed with Ω) and
    /// a slot in `C_fund`.
    pub fn from_word(ctx: &EllContext, kind: LabelKind, word: &Word, slot: &Weight) -> Result<Self> {
        let x = ctx.from_word(word)?;
        Self::canonical(ctx, kind, &x, slot)
    }

    /// Canonical label of `x·λ` for `x ∈ W_ext⁺`, `λ ∈ C_fund`.
    pub fn canonical(ctx: &EllContext, kind: LabelKind, x: &ExtAffineElement, slot: &Weight) -> Result<Self> {
        ctx.rootsystem().check_weight(slot)?;
        if !ctx.in_fundamental_alcove(slot) {
            return Err(Error::NotInFundamentalAlcove(slot.clone()));
        }
        if !ctx.is_dominant_element(x) {
            return Err(Error::NotDominantElement(ctx.describe(x)));
        }
        let (word, om) = ctx.factor(x);
        let slot = ctx.dot_act(&ctx.omega_group()[om].elem, slot);
        if kind == LabelKind::Tilting && !word.is_empty() {
            return Ok(Self { kind, word: None, weight: ctx.dot_act(&ctx.from_word(&word)?, &slot) });
        }
        Ok(Self { kind, word: Some(word), weight: slot })
    }

    /// Label of the module with highest weight `τ`.
    pub fn from_highest_weight(ctx: &EllContext, kind: LabelKind, tau: &Weight) -> Result<Self> {
        ctx.rootsystem().check_weight(tau)?;
        if !tau.is_dominant() {
            return Err(Error::NotDominant(tau.clone()));
        }
        if let LabelKind::Custom(_) = kind {
            if !ctx.in_fundamental_alcove(tau) {
                return Err(Error::NotInFundamentalAlcove(tau.clone()));
            }
            return Ok(Self { kind, word: Some(Word::default()), weight: tau.clone() });
        }
        if kind == LabelKind::Tilting && !ctx.in_fundamental_alcove(tau) {
            return Ok(Self { kind, word: None, weight: tau.clone() });
        }
        if ctx.is_singular(tau).is_some() {
            return Ok(Self { kind, word: None, weight: tau.clone() });
        }
        let (x, lambda) = ctx.weight_to_xlambda(tau)?;
        Self::canonical(ctx, kind, &x, &lambda)
    }

    pub fn simple(word: Word, slot: Weight) -> Self {
        Self { kind: LabelKind::Simple, word: Some(word), weight: slot }
    }

    pub fn custom(name: &str, word: Word, slot: Weight) -> Self {
        Self { kind: LabelKind::Custom(name.to_string()), word: Some(word), weight: slot }
    }

    /// The slot `λ` of a canonical label.
    pub fn slot(&self) -> Option<&Weight> {
        self.word.as_ref().map(|_| &self.weight)
    }

    /// Highest weight `x·λ`; for custom labels, the slot.
    pub fn highest_weight(&self, ctx: &EllContext) -> Result<Weight> {
        match (&self.kind, &self.word) {
            (LabelKind::Custom(_), _) | (_, None) => Ok(self.weight.clone()),
            (_, Some(w)) => Ok(ctx.dot_act(&ctx.from_word(w)?, &self.weight)),
        }
    }

    /// Regular labels survive in the regular quotient.
    pub fn is_regular(&self, ctx: &EllContext) -> bool {
        match (&self.kind, &self.word) {
            (_, Some(_)) => ctx.in_fundamental_alcove(&self.weight),
            (LabelKind::Tilting, None) => ctx.in_fundamental_alcove(&self.weight),
            (LabelKind::Custom(_), None) => false,
            (_, None) => ctx.is_singular(&self.weight).is_none(),
        }
    }

    /// `x = e` labels of `L`, `Δ` and `T` name the same module.
    fn normalized(mut self) -> Self {
        if self.kind != LabelKind::Simple && !matches!(self.kind, LabelKind::Custom(_)) {
            let trivial = self.word.as_ref().is_some_and(Word::is_empty);
            if trivial {
                self.kind = LabelKind::Simple;
            }
        }
        self
    }

    fn with_slot(&self, slot: Weight) -> Self {
        Self { kind: self.kind.clone(), word: self.word.clone(), weight: slot }
    }
}

impl PartialOrd for ObjLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ObjLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ObjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Some(w) if !w.is_empty() => write!(f, "{}({w};{})", self.kind.prefix(), self.weight),
            _ => write!(f, "{}({})", self.kind.prefix(), self.weight),
        }
    }
}

/// A multiset of labels; the empty multiset is the zero object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegObject(BTreeMap<ObjLabel, u64>);

impl RegObject {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: impl IntoIterator<Item = ObjLabel>) -> Self {
        let mut o = Self::new();
        for l in labels {
            o.add(l, 1);
        }
        o
    }

    pub fn add(&mut self, label: ObjLabel, mult: u64) {
        if mult > 0 {
            *self.0.entry(label.normalized()).or_insert(0) += mult;
        }
    }

    pub fn add_all(&mut self, other: &RegObject, mult: u64) {
        for (l, m) in &other.0 {
            self.add(l.clone(), m * mult);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObjLabel, u64)> {
        self.0.iter().map(|(l, &m)| (l, m))
    }

    pub fn multiplicity(&self, label: &ObjLabel) -> u64 {
        self.0.get(label).copied().unwrap_or(0)
    }

    /// Drops singular labels.
    pub fn regular_part(&self, ctx: &EllContext) -> RegObject {
        let mut out = RegObject::new();
        for (l, m) in self.iter() {
            if l.is_regular(ctx) {
                out.add(l.clone(), m);
            }
        }
        out
    }
}

impl fmt::Display for RegObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, &m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Flat serialisation of one label with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub weight: Vec<i64>,
    pub mult: u64,
}

impl RegObject {
    pub fn to_records(&self) -> Vec<LabelRecord> {
        self.iter()
            .map(|(l, m)| {
                let (kind, name) = match &l.kind {
                    LabelKind::Custom(n) => ("Custom", Some(n.clone())),
                    LabelKind::Simple => ("Simple", None),
                    LabelKind::Weyl => ("Weyl", None),
                    LabelKind::Tilting => ("Tilting", None),
                };
                LabelRecord {
                    kind: kind.to_string(),
                    name,
                    word: l.word.as_ref().map(Word::to_string),
                    weight: l.weight.0.clone(),
                    mult: m,
                }
            })
            .collect()
    }

    pub fn from_records(records: &[LabelRecord]) -> Result<Self> {
        let mut o = RegObject::new();
        for r in records {
            let kind = match (r.kind.as_str(), &r.name) {
                ("Custom", Some(n)) => LabelKind::Custom(n.clone()),
                ("Simple", _) => LabelKind::Simple,
                ("Weyl", _) => LabelKind::Weyl,
                ("Tilting", _) => LabelKind::Tilting,
                (k, _) => return Err(Error::Precondition(format!("unknown label kind {k:?}"))),
            };
            let word = r.word.as_deref().map(str::parse).transpose()?;
            o.add(ObjLabel { kind, word, weight: Weight(r.weight.clone()) }, r.mult);
        }
        Ok(o)
    }
}

/// Replaces the slot of every canonical label, `T_δ^μ`.
pub fn translate_between(obj: &RegObject, from: &Weight, to: &Weight, ctx: &EllContext) -> Result<RegObject> {
    if !ctx.in_fundamental_alcove(to) {
        return Err(Error::NotInFundamentalAlcove(to.clone()));
    }
    let mut out = RegObject::new();
    for (l, m) in obj.iter() {
        if l.slot() != Some(from) {
            return Err(Error::Precondition(format!("label {l} does not sit at slot {from}")));
        }
        out.add(l.with_slot(to.clone()), m);
    }
    Ok(out)
}

/// `T_0^ν` on labels whose slot is `0`.
pub fn translate(obj: &RegObject, nu: &Weight, ctx: &EllContext) -> Result<RegObject> {
    translate_between(obj, &ctx.rootsystem().zero(), nu, ctx)
}

/// `T^ω`: slot `λ ↦ ω·λ`, `x` unchanged.
pub fn omega_twist(obj: &RegObject, omega: usize, ctx: &EllContext) -> Result<RegObject> {
    let om = &ctx
        .omega_group()
        .get(omega)
        .ok_or_else(|| Error::Precondition(format!("no Ω element with index {omega}")))?
        .elem;
    let mut out = RegObject::new();
    for (l, m) in obj.iter() {
        let slot = l.slot().ok_or_else(|| Error::Precondition(format!("label {l} has no slot")))?;
        out.add(l.with_slot(ctx.dot_act(om, slot)), m);
    }
    Ok(out)
}

/// The common linkage class of all labels, as a weight in the closure of
/// `C_fund`.
pub fn linkage_class_of(obj: &RegObject, ctx: &EllContext) -> Result<Weight> {
    let mut class: Option<Weight> = None;
    for (l, _) in obj.iter() {
        let c = match (&l.kind, l.slot()) {
            (LabelKind::Custom(_), Some(s)) => s.clone(),
            _ => ctx.reduce_to_closure(&l.highest_weight(ctx)?).1,
        };
        match &class {
            None => class = Some(c),
            Some(prev) if *prev != c => return Err(Error::MixedLinkage(prev.clone(), c)),
            Some(_) => {}
        }
    }
    class.ok_or(Error::EmptyObject)
}

/// Structure of a custom indecomposable, as data only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomMeta {
    /// Composition factors `L(x·ν)` by `x`.
    pub composition_factors: BTreeMap<String, u32>,
    /// Radical layers, top first.
    pub layers: Vec<Vec<String>>,
    #[serde(default)]
    pub grothendieck: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleRow {
    pub x: Word,
    pub y: Word,
    pub min_ell: Option<i64>,
    /// Labels at slot `0`.
    pub out: RegObject,
}

/// Regular parts of `L(x·0) ⊗ L(y·0)` for seeded pairs in `W_aff⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalFusionRule {
    pub family: Family,
    pub rank: usize,
    pub rows: Vec<RuleRow>,
    pub custom: BTreeMap<String, CustomMeta>,
}

#[derive(Serialize, Deserialize)]
struct OutJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    w: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    mult: u64,
}

fn one() -> u64 {
    1
}

fn is_one(m: &u64) -> bool {
    *m == 1
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    x: String,
    y: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_ell: Option<i64>,
    out: Vec<OutJson>,
}

#[derive(Serialize, Deserialize)]
struct RulesJson {
    family: Family,
    rank: usize,
    rules: Vec<RowJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    custom: BTreeMap<String, CustomMeta>,
}

pub const M_GROTHENDIECK: &str = "[M(nu)] = [T(s0s1.nu)] + [T(s0s2.nu)] - 2[T(s0.nu)] + 3[T(nu)]";

fn words(s: &str) -> Word {
    s.parse().expect("built-in words are well formed")
}

/// The seeded type `A2` data.
pub fn builtin_a2_rules() -> PrincipalFusionRule {
    let zero = Weight::zero(2);
    let l = |w: &str| ObjLabel::simple(words(w), zero.clone());
    let m = ObjLabel::custom("M", Word::default(), zero.clone());
    let rows = vec![
        RuleRow { x: words("s0"), y: words("s0"), min_ell: Some(3), out: RegObject::from_labels([m, l("e")]) },
        RuleRow {
            x: words("s0s1"),
            y: words("s0s2"),
            min_ell: Some(5),
            out: RegObject::from_labels([l("s0s1s2s1"), l("e")]),
        },
        RuleRow {
            x: words("s0s1"),
            y: words("s0s1"),
            min_ell: None,
            out: RegObject::from_labels([l("s0s1s2s0"), l("s0s2")]),
        },
    ];
    let meta = CustomMeta {
        composition_factors: BTreeMap::from([
            ("s0".into(), 2),
            ("s0s1".into(), 1),
            ("s0s2".into(), 1),
            ("e".into(), 1),
        ]),
        layers: vec![vec!["s0".into()], vec!["s0s1".into(), "e".into(), "s0s2".into()], vec!["s0".into()]],
        grothendieck: M_GROTHENDIECK.into(),
    };
    PrincipalFusionRule { family: Family::A, rank: 2, rows, custom: BTreeMap::from([("M".into(), meta)]) }
}

impl PrincipalFusionRule {
    pub fn builtin_for(family: Family, rank: usize) -> Result<Self> {
        match (family, rank) {
            (Family::A, 2) => Ok(builtin_a2_rules()),
            _ => Ok(Self { family, rank, rows: Vec::new(), custom: BTreeMap::new() }),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RulesJson = serde_json::from_str(text)?;
        let zero = Weight::zero(file.rank);
        let rows = file
            .rules
            .iter()
            .map(|r| {
                let mut out = RegObject::new();
                for o in &r.out {
                    let kind = match (o.kind.as_str(), &o.name) {
                        ("Custom", Some(n)) => LabelKind::Custom(n.clone()),
                        ("Simple", _) => LabelKind::Simple,
                        ("Weyl", _) => LabelKind::Weyl,
                        (k, _) => return Err(Error::Precondition(format!("rule output kind {k:?} is not allowed"))),
                    };
                    out.add(ObjLabel { kind, word: Some(o.w.parse()?), weight: zero.clone() }, o.mult);
                }
                Ok(RuleRow { x: r.x.parse()?, y: r.y.parse()?, min_ell: r.min_ell, out })
            })
            .collect::<Result<_>>()?;
        Ok(Self { family: file.family, rank: file.rank, rows, custom: file.custom })
    }

    pub fn to_json(&self) -> String {
        let rules = self
            .rows
            .iter()
            .map(|r| RowJson {
                x: r.x.to_string(),
                y: r.y.to_string(),
                min_ell: r.min_ell,
                out: r
                    .out
                    .iter()
                    .map(|(l, m)| OutJson {
                        kind: match &l.kind {
                            LabelKind::Custom(_) => "Custom",
                            LabelKind::Weyl => "Weyl",
                            _ => "Simple",
                        }
                        .to_string(),
                        name: match &l.kind {
                            LabelKind::Custom(n) => Some(n.clone()),
                            _ => None,
                        },
                        w: l.word.clone().unwrap_or_default().to_string(),
                        mult: m,
                    })
                    .collect(),
            })
            .collect();
        let file = RulesJson { family: self.family, rank: self.rank, rules, custom: self.custom.clone() };
        serde_json::to_string_pretty(&file).expect("rules serialise")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Rewrites every word into canonical form for `ctx`, checking that
    /// rule keys and outputs lie in `W_aff⁺`.
    pub fn canonicalize(&self, ctx: &EllContext) -> Result<Self> {
        let spec = ctx.rootsystem().spec();
        if (spec.family, spec.rank) != (self.family, self.rank) {
            return Err(Error::Precondition(format!(
                "rules are for {}{}, context is {}",
                self.family, self.rank, spec
            )));
        }
        let canon_word = |w: &Word| -> Result<Word> {
            let x = ctx.from_word(w)?;
            if !ctx.is_affine(&x) || !ctx.is_dominant_element(&x) {
                return Err(Error::NotDominantElement(w.to_string()));
            }
            Ok(ctx.factor(&x).0)
        };
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = RegObject::new();
                for (l, m) in r.out.iter() {
                    let word = canon_word(l.word.as_ref().expect("rule outputs carry words"))?;
                    out.add(ObjLabel { kind: l.kind.clone(), word: Some(word), weight: l.weight.clone() }, m);
                }
                Ok(RuleRow { x: canon_word(&r.x)?, y: canon_word(&r.y)?, min_ell: r.min_ell, out })
            })
            .collect::<Result<_>>()?;
        Ok(Self { family: self.family, rank: self.rank, rows, custom: self.custom.clone() })
    }

    /// The seeded regular part of `L(x·0) ⊗ L(y·0)`; words must be
    /// canonical.
    pub fn lookup(&self, x: &Word, y: &Word, ell: i64) -> Result<&RegObject> {
        let row = self
            .rows
            .iter()
            .find(|r| (r.x == *x && r.y == *y) || (r.x == *y && r.y == *x))
            .ok_or_else(|| Error::MissingRule { x: x.to_string(), y: y.to_string() })?;
        match row.min_ell {
            Some(min_ell) if ell < min_ell => Err(Error::RuleGuard { x: x.to_string(), y: y.to_string(), min_ell }),
            _ => Ok(&row.out),
        }
    }
}

/// One tensor factor `X(xω·λ)`: a label kind, `x ∈ W_aff⁺`, `λ ∈ C_fund`
/// and the index of `ω ∈ Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: LabelKind,
    pub base: Word,
    pub lambda: Weight,
    pub omega: usize,
}

impl Factor {
    pub fn simple(base: Word, lambda: Weight, omega: usize) -> Self {
        Self { kind: LabelKind::Simple, base, lambda, omega }
    }

    /// A canonical label viewed as a factor with trivial Ω part.
    pub fn from_label(label: &ObjLabel) -> Result<Self> {
        match &label.word {
            Some(w) => Ok(Self { kind: label.kind.clone(), base: w.clone(), lambda: label.weight.clone(), omega: 0 }),
            None => Err(Error::Precondition(format!("label {label} is not a regular canonical label"))),
        }
    }

    fn is_fundamental(&self) -> bool {
        !matches!(self.kind, LabelKind::Custom(_)) && self.base.is_empty()
    }
}

/// Regular parts of tensor products for one `(root system, ℓ)`.
#[derive(Debug)]
pub struct RegEngine<'a> {
    ctx: &'a EllContext,
    rules: PrincipalFusionRule,
    table: &'a FusionTable,
}

impl<'a> RegEngine<'a> {
    pub fn new(ctx: &'a EllContext, rules: &PrincipalFusionRule, table: &'a FusionTable) -> Result<Self> {
        let spec = ctx.rootsystem().spec();
        if (table.family, table.rank, table.ell) != (spec.family, spec.rank, ctx.ell()) {
            return Err(Error::TableMismatch {
                expected: format!("{spec} ell={}", ctx.ell()),
                found: format!("{}{} ell={}", table.family, table.rank, table.ell),
            });
        }
        Ok(Self { ctx, rules: rules.canonicalize(ctx)?, table })
    }

    pub fn ctx(&self) -> &EllContext {
        self.ctx
    }

    pub fn rules(&self) -> &PrincipalFusionRule {
        &self.rules
    }

    fn check_factor(&self, f: &Factor) -> Result<()> {
        if !self.ctx.in_fundamental_alcove(&f.lambda) {
            return Err(Error::NotInFundamentalAlcove(f.lambda.clone()));
        }
        let x = self.ctx.from_word(&f.base)?;
        if !self.ctx.is_affine(&x) || !self.ctx.is_dominant_element(&x) {
            return Err(Error::NotDominantElement(f.base.to_string()));
        }
        if f.omega >= self.ctx.omega_group().len() {
            return Err(Error::Precondition(format!("no Ω element with index {}", f.omega)));
        }
        Ok(())
    }

    fn canonical_word(&self, w: &Word) -> Result<Word> {
        Ok(self.ctx.factor(&self.ctx.from_word(w)?).0)
    }

    /// `⊕_ν T^{ωω′}(T_0^ν R)^{⊕ c_{λ,μ}^ν}` with `R` the seeded regular part
    /// of `L(x·0) ⊗ L(y·0)`.
    pub fn regpart_tensor(&self, a: &Factor, b: &Factor) -> Result<RegObject> {
        self.check_factor(a)?;
        self.check_factor(b)?;
        let zero = self.ctx.rootsystem().zero();
        let base = if a.is_fundamental() {
            RegObject::from_labels([ObjLabel { kind: b.kind.clone(), word: Some(b.base.clone()), weight: zero }])
        } else if b.is_fundamental() {
            RegObject::from_labels([ObjLabel { kind: a.kind.clone(), word: Some(a.base.clone()), weight: zero }])
        } else if a.kind == LabelKind::Simple && b.kind == LabelKind::Simple {
            let (x, y) = (self.canonical_word(&a.base)?, self.canonical_word(&b.base)?);
            self.rules.lookup(&x, &y, self.ctx.ell())?.clone()
        } else {
            return Err(Error::MissingRule { x: format!("{:?} {}", a.kind, a.base), y: format!("{:?} {}", b.kind, b.base) });
        };
        let base = {
            let mut canon = RegObject::new();
            for (l, m) in base.iter() {
                let word = self.canonical_word(l.word.as_ref().expect("base labels carry words"))?;
                canon.add(ObjLabel { kind: l.kind.clone(), word: Some(word), weight: l.weight.clone() }, m);
            }
            canon
        };
        let row = self
            .table
            .row(&a.lambda, &b.lambda)
            .ok_or_else(|| Error::NotInFundamentalAlcove(a.lambda.clone()))?;
        let om = self.ctx.omega_mul(a.omega, b.omega);
        let mut out = RegObject::new();
        for (nu, c) in row {
            let part = omega_twist(&translate(&base, &nu, self.ctx)?, om, self.ctx)?;
            out.add_all(&part, c);
        }
        Ok(out)
    }

    /// Regular part of a tensor product of labels, folded left to right.
    /// Any singular factor makes the product singular.
    pub fn regpart_of_labels(&self, labels: &[ObjLabel]) -> Result<RegObject> {
        let Some((first, rest)) = labels.split_first() else {
            return Err(Error::EmptyObject);
        };
        if labels.iter().any(|l| !l.is_regular(self.ctx)) {
            return Ok(RegObject::new());
        }
        let mut acc = RegObject::from_labels([first.clone()]);
        for next in rest {
            let fb = Factor::from_label(next)?;
            let mut step = RegObject::new();
            for (l, m) in acc.iter() {
                step.add_all(&self.regpart_tensor(&Factor::from_label(l)?, &fb)?, m);
            }
            acc = step;
        }
        Ok(acc)
    }

    /// `(A ⊗ B)_reg` for direct sums `A`, `B`; singular summands are
    /// filtered out first.
    pub fn regpart_of_sums(&self, a: &RegObject, b: &RegObject) -> Result<RegObject> {
        let (a, b) = (a.regular_part(self.ctx), b.regular_part(self.ctx));
        let mut out = RegObject::new();
        for (la, ma) in a.iter() {
            for (lb, mb) in b.iter() {
                let part = self.regpart_tensor(&Factor::from_label(la)?, &Factor::from_label(lb)?)?;
                out.add_all(&part, ma * mb);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::Verlinde;
    use crate::rootsys::RootSystemSpec;

    fn setup(ell: i64) -> (EllContext, FusionTable) {
        let ctx = EllContext::from_spec(RootSystemSpec::new(Family::A, 2).unwrap(), ell).unwrap();
        let table = Verlinde::new(ctx.clone()).build_table().unwrap();
        (ctx, table)
    }

    fn w<const N: usize>(v: [i64; N]) -> Weight {
        Weight::from(v)
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn translate_examples() {
        let (ctx, _) = setup(5);
        let obj = RegObject::from_labels([ObjLabel::simple(word("s0"), w([0, 0]))]);
        let t = translate(&obj, &w([1, 1]), &ctx).unwrap();
        assert_eq!(t.to_string(), "L(s0;1,1)");
        assert!(translate(&RegObject::new(), &w([1, 1]), &ctx).unwrap().is_empty());
        let m = RegObject::from_labels([ObjLabel::custom("M", Word::default(), w([0, 0]))]);
        assert_eq!(translate(&m, &w([1, 0]), &ctx).unwrap().to_string(), "M(1,0)");
        assert!(translate(&t, &w([0, 0]), &ctx).is_err());
    }

    #[test]
    fn omega_twist_examples() {
        let (ctx, _) = setup(5);
        let obj = RegObject::from_labels([ObjLabel::simple(Word::default(), w([0, 0]))]);
        assert_eq!(omega_twist(&obj, 0, &ctx).unwrap(), obj);
        let om = ctx.omega_of(&ExtAffineElement::translation(w([1, 0]))).index;
        let t = omega_twist(&obj, om, &ctx).unwrap();
        assert_eq!(t.to_string(), "L(2,0)");
        let back = omega_twist(&t, ctx.omega_inverse(om), &ctx).unwrap();
        assert_eq!(back, obj);
    }

    #[test]
    fn golden_s0_s0() {
        let (ctx, table) = setup(5);
        let eng = RegEngine::new(&ctx, &builtin_a2_rules(), &table).unwrap();
        let f = Factor::simple(word("s0"), w([1, 1]), 0);
        let out = eng.regpart_tensor(&f, &f).unwrap();
        assert_eq!(out.to_string(), "M(0,0) + L(0,0) + M(1,1) + L(1,1)");
    }

    #[test]
    fn unit_rule_and_trivial_case() {
        let (ctx, table) = setup(5);
        let eng = RegEngine::new(&ctx, &builtin_a2_rules(), &table).unwrap();
        let a = Factor::simple(word("s0s1"), w([0, 0]), 0);
        let e = Factor::simple(Word::default(), w([1, 0]), 0);
        assert_eq!(eng.regpart_tensor(&a, &e).unwrap().to_string(), "L(s0s1;1,0)");
        let b = Factor::simple(word("s0s2"), w([0, 0]), 0);
        let out = eng.regpart_tensor(&a, &b).unwrap();
        assert_eq!(out.to_string(), "L(0,0) + L(s0s1s2s1;0,0)");
    }

    #[test]
    fn missing_rule_and_guard() {
        let (ctx, table) = setup(5);
        let eng = RegEngine::new(&ctx, &builtin_a2_rules(), &table).unwrap();
        let a = Factor::simple(word("s0"), w([0, 0]), 0);
        let b = Factor::simple(word("s0s1"), w([0, 0]), 0);
        assert!(matches!(eng.regpart_tensor(&a, &b), Err(Error::MissingRule { .. })));
        let (ctx3, table3) = setup(3);
        let eng3 = RegEngine::new(&ctx3, &builtin_a2_rules(), &table3).unwrap();
        let a = Factor::simple(word("s0s1"), w([0, 0]), 0);
        let b = Factor::simple(word("s0s2"), w([0, 0]), 0);
        assert!(matches!(eng3.regpart_tensor(&a, &b), Err(Error::RuleGuard { min_ell: 5, .. })));
        assert!(eng3.regpart_tensor(&a, &a).is_ok());
    }

    #[test]
    fn linkage_examples() {
        let (ctx, _) = setup(5);
        let obj = RegObject::from_labels([ObjLabel::simple(word("s0"), w([1, 0]))]);
        assert_eq!(linkage_class_of(&obj, &ctx).unwrap(), w([1, 0]));
        let mixed = RegObject::from_labels([
            ObjLabel::custom("M", Word::default(), w([1, 1])),
            ObjLabel::simple(Word::default(), w([1, 1])),
        ]);
        assert_eq!(linkage_class_of(&mixed, &ctx).unwrap(), w([1, 1]));
        let bad = RegObject::from_labels([
            ObjLabel::simple(Word::default(), w([1, 1])),
            ObjLabel::simple(Word::default(), w([0, 0])),
        ]);
        assert!(matches!(linkage_class_of(&bad, &ctx), Err(Error::MixedLinkage(..))));
        assert!(matches!(linkage_class_of(&RegObject::new(), &ctx), Err(Error::EmptyObject)));
    }

    #[test]
    fn labels_from_highest_weights() {
        let (ctx, _) = setup(5);
        let l = ObjLabel::from_highest_weight(&ctx, LabelKind::Simple, &w([5, 0])).unwrap();
        assert_eq!(l.highest_weight(&ctx).unwrap(), w([5, 0]));
        assert_eq!(l.word.as_ref().unwrap().to_string(), "s0s2");
        let t = ObjLabel::from_highest_weight(&ctx, LabelKind::Tilting, &w([2, 1])).unwrap();
        assert!(!t.is_regular(&ctx));
        let s = ObjLabel::from_highest_weight(&ctx, LabelKind::Weyl, &w([4, 0])).unwrap();
        assert!(s.word.is_none());
        assert!(!s.is_regular(&ctx));
        let d = ObjLabel::from_highest_weight(&ctx, LabelKind::Weyl, &w([1, 1])).unwrap();
        assert!(d.is_regular(&ctx));
        let reg = RegObject::from_labels([d]);
        assert_eq!(reg.to_string(), "L(1,1)");
    }

    #[test]
    fn rules_json_round_trip() {
        let r = builtin_a2_rules();
        let back = PrincipalFusionRule::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let text = r#"{"family":"A","rank":2,"rules":[{"x":"s0","y":"s0","min_ell":3,"out":[{"kind":"Custom","name":"M","w":"e"},{"kind":"Simple","w":"e"}]}]}"#;
        let parsed = PrincipalFusionRule::from_json(text).unwrap();
        assert_eq!(parsed.rows[0], r.rows[0]);
    }

    #[test]
    fn records_round_trip() {
        let (ctx, table) = setup(5);
        let eng = RegEngine::new(&ctx, &builtin_a2_rules(), &table).unwrap();
        let f = Factor::simple(word("s0"), w([1, 1]), 0);
        let out = eng.regpart_tensor(&f, &f).unwrap();
        assert_eq!(RegObject::from_records(&out.to_records()).unwrap(), out);
    }
}
