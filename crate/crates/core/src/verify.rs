//! Exhaustive law checking on finite truncations.
//!
//! Each [`Suite`] owns a fixed set of named invariants and checks every one
//! of them over all inputs within its [`Bounds`]. Inputs are enumerated in a
//! fixed order and per-chunk results from parallel workers are merged in
//! that order, so a report depends only on the suite and the bounds (apart
//! from `elapsed`).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::endo::{
    check_growth_inequalities, classify_from_images, find_injectivity_violation,
    is_endomorphism_on_truncation, EndoForm, GeneratorImages, HomCheck, InjEndo, Level, Variant,
};
use crate::error::Result;
use crate::green::{
    check_cancellative_s_alpha, check_ideal_s_beta, find_idempotents, green_bounded_search,
    green_symbolic, is_in_s_alpha, is_in_s_beta, GreenQuery, GreenRelation,
};
use crate::semigroup::{intersect_shifted, mul_bicyclic, BicyclicExtension, Branch, Elem, Family};

/// Counterexamples kept per report; the total is still counted.
pub const MAX_RECORDED_FAILURES: usize = 100;

/// Every `α_{k,p}` with `1 <= k <= kmax`, then every `β_{k,p}` with
/// `2 <= k <= kmax`, each ordered by `(k, p)`.
pub fn enumerate_endos(kmax: i64) -> Vec<InjEndo> {
    let alphas = (1..=kmax).flat_map(|k| (0..k).map(move |p| InjEndo::alpha(k, p)));
    let betas = (2..=kmax).flat_map(|k| (1..k).map(move |p| InjEndo::beta(k, p)));
    alphas
        .chain(betas)
        .map(|e| e.expect("enumerated parameters are in range"))
        .collect()
}

/// `kmax(kmax+1)/2` alphas plus `(kmax-1)kmax/2` betas, i.e. `kmax²`.
pub fn endo_count(kmax: i64) -> usize {
    if kmax < 1 {
        return 0;
    }
    let alphas = kmax * (kmax + 1) / 2;
    let betas = (kmax - 1) * kmax / 2;
    (alphas + betas) as usize
}

/// The elements of `B_ω^F` with both coordinates at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub bound: i64,
    pub family: Family,
}

impl Truncation {
    pub fn new(bound: i64, family: Family) -> Self {
        Self { bound, family }
    }

    pub fn canonical(bound: i64) -> Self {
        Self::new(bound, Family::canonical())
    }

    /// `(bound+1)² · |family|`
    pub fn len(&self) -> usize {
        if self.bound < 0 {
            return 0;
        }
        let side = (self.bound + 1) as usize;
        side * side * self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.i() <= self.bound && x.j() <= self.bound && x.f() < self.family.len()
    }

    pub fn elements(&self) -> Vec<Elem> {
        BicyclicExtension::new(self.family.clone())
            .elements_up_to(self.bound)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    SemigroupAxioms,
    InverseAxioms,
    Order,
    EndoHomomorphism,
    EndoInjectivity,
    CompositionTable,
    Idempotents,
    Cancellative,
    Ideal,
    GreenAgreement,
    ClassificationNegative,
    GrowthInequalities,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::SemigroupAxioms,
        Suite::InverseAxioms,
        Suite::Order,
        Suite::EndoHomomorphism,
        Suite::EndoInjectivity,
        Suite::CompositionTable,
        Suite::Idempotents,
        Suite::Cancellative,
        Suite::Ideal,
        Suite::GreenAgreement,
        Suite::ClassificationNegative,
        Suite::GrowthInequalities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SemigroupAxioms => "semigroup_axioms",
            Suite::InverseAxioms => "inverse_axioms",
            Suite::Order => "order",
            Suite::EndoHomomorphism => "endo_homomorphism",
            Suite::EndoInjectivity => "endo_injectivity",
            Suite::CompositionTable => "composition_table",
            Suite::Idempotents => "idempotents",
            Suite::Cancellative => "cancellative",
            Suite::Ideal => "ideal",
            Suite::GreenAgreement => "green_agreement",
            Suite::ClassificationNegative => "classification_negative",
            Suite::GrowthInequalities => "growth_inequalities",
        }
    }

    /// The invariants this suite owns. Each invariant belongs to exactly
    /// one suite; see [`check_registry`].
    pub fn invariants(self) -> &'static [&'static str] {
        match self {
            Suite::SemigroupAxioms => &[
                "associativity",
                "branch_agreement",
                "identity",
                "single_set_projection",
                "inductive_sets",
            ],
            Suite::InverseAxioms => &[
                "inverse_regularity",
                "inverse_involution",
                "inverse_uniqueness",
                "idempotents_commute",
                "idempotent_characterization",
            ],
            Suite::Order => &[
                "order_reflexive",
                "order_antisymmetric",
                "order_transitive",
                "order_level_threshold",
                "order_chain",
            ],
            Suite::EndoHomomorphism => &["endo_homomorphism", "endo_fixes_identity"],
            Suite::EndoInjectivity => &[
                "endo_injective",
                "alpha_beta_level0_agreement",
                "fixed_point_rigidity",
            ],
            Suite::CompositionTable => &[
                "composition_pointwise",
                "composition_closed_form",
                "composition_parameter_closure",
                "beta_alpha_equals_beta_beta",
                "composition_associative",
                "composition_identity",
            ],
            Suite::Idempotents => &["unique_idempotent"],
            Suite::Cancellative => &["s_alpha_cancellative", "s_alpha_closed"],
            Suite::Ideal => &["s_beta_ideal", "s_beta_closed"],
            Suite::GreenAgreement => &[
                "green_oracle_agreement",
                "green_containments",
                "green_mixed_separation",
                "green_witness_shape",
                "green_trivial_solutions",
            ],
            Suite::ClassificationNegative => &[
                "out_of_range_witness",
                "out_of_range_rejected",
                "beta_zero_offset_not_injective",
            ],
            Suite::GrowthInequalities => &["growth_iff_s_equals_k"],
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let base = Bounds {
            bound: 8,
            kmax: 5,
            search_kmax: 8,
            t_max: 50,
            symbolic_kmax: 12,
        };
        match self {
            Suite::SemigroupAxioms | Suite::InverseAxioms | Suite::Order => base,
            Suite::EndoHomomorphism | Suite::EndoInjectivity => base,
            Suite::CompositionTable => Bounds { bound: 20, ..base },
            Suite::Idempotents => Bounds { kmax: 20, ..base },
            Suite::Cancellative | Suite::Ideal => base,
            Suite::GreenAgreement => Bounds { kmax: 6, ..base },
            Suite::ClassificationNegative => Bounds {
                bound: 6,
                kmax: 4,
                ..base
            },
            Suite::GrowthInequalities => Bounds { kmax: 6, ..base },
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite {:?}; known suites:", self.0)?;
        for s in Suite::ALL {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Checks that no invariant is owned by two suites.
pub fn check_registry() -> std::result::Result<(), String> {
    let mut seen = HashSet::new();
    for suite in Suite::ALL {
        if suite.invariants().is_empty() {
            return Err(format!("suite {suite} owns no invariants"));
        }
        for inv in suite.invariants() {
            if !seen.insert(*inv) {
                return Err(format!("invariant {inv} is owned by more than one suite"));
            }
        }
    }
    Ok(())
}

/// Enumeration bounds. Each suite reads only the fields it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Coordinate bound `N` of the truncation.
    pub bound: i64,
    /// Largest `k` of the endomorphisms under test.
    pub kmax: i64,
    /// Largest `k` of candidate factors in Green's witness search.
    pub search_kmax: i64,
    /// Largest `t` in the growth inequalities.
    pub t_max: i64,
    /// Largest `k` for purely symbolic composition checks.
    pub symbolic_kmax: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub invariant: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub bounds: Bounds,
    pub cases_run: u64,
    pub cases_by_invariant: BTreeMap<&'static str, u64>,
    /// At most [`MAX_RECORDED_FAILURES`], in enumeration order.
    pub failures: Vec<Failure>,
    pub failure_count: u64,
    /// Informational records, e.g. the counterexample found for each
    /// rejected parameter choice.
    pub witnesses: Vec<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }

    /// Everything except the timing.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        self.suite == other.suite
            && self.bounds == other.bounds
            && self.cases_run == other.cases_run
            && self.cases_by_invariant == other.cases_by_invariant
            && self.failures == other.failures
            && self.failure_count == other.failure_count
            && self.witnesses == other.witnesses
    }
}

#[derive(Debug, Default)]
struct Recorder {
    cases: BTreeMap<&'static str, u64>,
    failures: Vec<Failure>,
    failure_count: u64,
    witnesses: Vec<String>,
}

fn show<T: fmt::Debug>(r: &Result<T>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("error: {e}"),
    }
}

impl Recorder {
    fn check(
        &mut self,
        invariant: &'static str,
        ok: bool,
        inputs: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        got: impl FnOnce() -> String,
    ) {
        *self.cases.entry(invariant).or_default() += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(Failure {
                    invariant: invariant.to_string(),
                    inputs: inputs(),
                    expected: expected(),
                    got: got(),
                });
            }
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(
        &mut self,
        invariant: &'static str,
        inputs: impl FnOnce() -> String,
        expected: Result<T>,
        got: Result<T>,
    ) {
        let ok = matches!((&expected, &got), (Ok(a), Ok(b)) if a == b);
        self.check(invariant, ok, inputs, || show(&expected), || show(&got));
    }

    fn holds(&mut self, invariant: &'static str, inputs: impl FnOnce() -> String, got: Result<bool>) {
        self.eq(invariant, inputs, Ok(true), got);
    }

    fn merge(&mut self, other: Recorder) {
        for (k, v) in other.cases {
            *self.cases.entry(k).or_default() += v;
        }
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
        self.witnesses.extend(other.witnesses);
    }
}

/// Runs `work` for each item in parallel and merges the per-item recorders
/// in input order.
fn par_each<T: Sync>(rec: &mut Recorder, items: &[T], work: impl Fn(&T, &mut Recorder) + Sync) {
    let parts: Vec<Recorder> = items
        .par_iter()
        .map(|item| {
            let mut r = Recorder::default();
            work(item, &mut r);
            r
        })
        .collect();
    for part in parts {
        rec.merge(part);
    }
}

pub fn run_suite(suite: Suite, bounds: Bounds) -> VerifyReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    match suite {
        Suite::SemigroupAxioms => semigroup_axioms(&mut rec, bounds),
        Suite::InverseAxioms => inverse_axioms(&mut rec, bounds),
        Suite::Order => order(&mut rec, bounds),
        Suite::EndoHomomorphism => endo_homomorphism(&mut rec, bounds),
        Suite::EndoInjectivity => endo_injectivity(&mut rec, bounds),
        Suite::CompositionTable => composition_table(&mut rec, bounds),
        Suite::Idempotents => idempotents(&mut rec, bounds),
        Suite::Cancellative => cancellative(&mut rec, bounds),
        Suite::Ideal => ideal(&mut rec, bounds),
        Suite::GreenAgreement => green_agreement(&mut rec, bounds),
        Suite::ClassificationNegative => classification_negative(&mut rec, bounds),
        Suite::GrowthInequalities => growth_inequalities(&mut rec, bounds),
    }
    for inv in suite.invariants() {
        if !rec.cases.contains_key(inv) {
            rec.check(
                inv,
                false,
                || format!("{bounds:?}"),
                || "at least one case".into(),
                || "no cases at these bounds".into(),
            );
        }
    }
    debug_assert!(rec.cases.keys().all(|k| suite.invariants().contains(k)));
    VerifyReport {
        suite,
        bounds,
        cases_run: rec.cases.values().sum(),
        cases_by_invariant: rec.cases,
        failures: rec.failures,
        failure_count: rec.failure_count,
        witnesses: rec.witnesses,
        elapsed: start.elapsed(),
    }
}

pub fn run_suite_by_name(name: &str, bounds: Option<Bounds>) -> std::result::Result<VerifyReport, UnknownSuite> {
    let suite: Suite = name.parse()?;
    Ok(run_suite(suite, bounds.unwrap_or_else(|| suite.default_bounds())))
}

fn semigroup_axioms(rec: &mut Recorder, b: Bounds) {
    let s = BicyclicExtension::canonical();
    let elems = Truncation::canonical(b.bound).elements();

    par_each(rec, &elems, |&x, r| {
        for &y in &elems {
            let xy = s.mul(x, y);
            for &z in &elems {
                let lhs = xy.clone().and_then(|xy| s.mul(xy, z));
                let rhs = s.mul(y, z).and_then(|yz| s.mul(x, yz));
                r.eq("associativity", || format!("{x} {y} {z}"), lhs, rhs);
            }
            if x.j() == y.i() {
                r.eq(
                    "branch_agreement",
                    || format!("{x} {y}"),
                    s.mul_by_branch(x, y, Branch::Lower),
                    s.mul_by_branch(x, y, Branch::Upper),
                );
            }
        }
    });

    let one = s.identity();
    for &x in &elems {
        r_identity(rec, &s, one, x);
    }

    let single = BicyclicExtension::new(Family::new(&[0]).expect("{[0)} is a valid family"));
    let singles: Vec<Elem> = single.elements_up_to(b.bound).collect();
    for &x in &singles {
        for &y in &singles {
            let got = single.mul(x, y).map(|z| (z.i(), z.j()));
            let expected = mul_bicyclic((x.i(), x.j()), (y.i(), y.j()));
            rec.eq("single_set_projection", || format!("{x} {y}"), expected, got);
        }
    }

    for set in s.family().sets() {
        rec.eq(
            "inductive_sets",
            || set.to_string(),
            Ok(*set),
            intersect_shifted(*set, -1, *set),
        );
    }
}

fn r_identity(rec: &mut Recorder, s: &BicyclicExtension, one: Elem, x: Elem) {
    rec.eq("identity", || format!("1·{x}"), Ok(x), s.mul(one, x));
    rec.eq("identity", || format!("{x}·1"), Ok(x), s.mul(x, one));
}

fn inverse_axioms(rec: &mut Recorder, b: Bounds) {
    let s = BicyclicExtension::canonical();
    let elems = Truncation::canonical(b.bound).elements();

    for &x in &elems {
        let inv = s.inverse(x);
        let xix = s.mul(x, inv).and_then(|y| s.mul(y, x));
        rec.eq("inverse_regularity", || format!("{x}·{x}⁻¹·{x}"), Ok(x), xix);
        let ixi = s.mul(inv, x).and_then(|y| s.mul(y, inv));
        rec.eq("inverse_regularity", || format!("{x}⁻¹·{x}·{x}⁻¹"), Ok(inv), ixi);
        rec.eq("inverse_involution", || x.to_string(), Ok(x), Ok(s.inverse(inv)));
        rec.eq(
            "idempotent_characterization",
            || x.to_string(),
            Ok(x.i() == x.j()),
            s.is_idempotent(x),
        );
    }

    par_each(rec, &elems, |&x, r| {
        let inv = s.inverse(x);
        for &y in &elems {
            let is_inverse = s
                .mul(x, y)
                .and_then(|xy| s.mul(xy, x))
                .and_then(|xyx| Ok(xyx == x && s.mul(s.mul(y, x)?, y)? == y));
            r.eq(
                "inverse_uniqueness",
                || format!("{x} {y}"),
                Ok(y == inv),
                is_inverse,
            );
        }
    });

    let idempotents: Vec<Elem> = elems.iter().copied().filter(|x| x.i() == x.j()).collect();
    for &e in &idempotents {
        for &f in &idempotents {
            rec.eq("idempotents_commute", || format!("{e} {f}"), s.mul(f, e), s.mul(e, f));
        }
    }
}

fn order(rec: &mut Recorder, b: Bounds) {
    let s = BicyclicExtension::canonical();
    let elems = Truncation::canonical(b.bound).elements();
    let n = elems.len();
    let s = &s;
    let leq: Vec<Result<bool>> = elems
        .par_iter()
        .flat_map_iter(|&x| elems.iter().map(move |&y| s.leq_natural(x, y)))
        .collect();
    let at = |a: usize, c: usize| leq[a * n + c].clone().unwrap_or(false);

    for (a, &x) in elems.iter().enumerate() {
        rec.holds("order_reflexive", || x.to_string(), leq[a * n + a].clone());
        for (c, &y) in elems.iter().enumerate() {
            if let Err(e) = &leq[a * n + c] {
                rec.check(
                    "order_reflexive",
                    false,
                    || format!("{x} ≼ {y}"),
                    || "a verdict".into(),
                    || e.to_string(),
                );
            }
            if a != c {
                rec.check(
                    "order_antisymmetric",
                    !(at(a, c) && at(c, a)),
                    || format!("{x} {y}"),
                    || "not both x ≼ y and y ≼ x".into(),
                    || "both".into(),
                );
            }
        }
    }

    let idx: Vec<usize> = (0..n).collect();
    par_each(rec, &idx, |&a, r| {
        for c in 0..n {
            if !at(a, c) {
                continue;
            }
            for d in 0..n {
                r.check(
                    "order_transitive",
                    !at(c, d) || at(a, d),
                    || format!("{} ≼ {} ≼ {}", elems[a], elems[c], elems[d]),
                    || "x ≼ z".into(),
                    || "x ⋠ z".into(),
                );
            }
        }
    });

    for k in 0..=b.bound {
        for p in 0..=b.bound {
            let (lo, hi) = (
                Elem::new(k, k, 0).expect("nonnegative"),
                Elem::new(p, p, 1).expect("nonnegative"),
            );
            rec.eq(
                "order_level_threshold",
                || format!("{lo} ≼ {hi}"),
                Ok(p < k),
                s.leq_natural(lo, hi),
            );
        }
    }

    for t in 0..=b.bound {
        let upper = Elem::new(t + 1, t + 1, 1).expect("nonnegative");
        let middle = Elem::new(t + 1, t + 1, 0).expect("nonnegative");
        let lower = Elem::new(t, t, 1).expect("nonnegative");
        rec.holds("order_chain", || format!("{upper} ≼ {middle}"), s.leq_natural(upper, middle));
        rec.holds("order_chain", || format!("{middle} ≼ {lower}"), s.leq_natural(middle, lower));
    }
}

fn endo_homomorphism(rec: &mut Recorder, b: Bounds) {
    let s = BicyclicExtension::canonical();
    let elems = Truncation::canonical(b.bound).elements();
    let endos = enumerate_endos(b.kmax);
    for e in &endos {
        rec.eq(
            "endo_fixes_identity",
            || e.to_string(),
            Ok(s.identity()),
            e.apply(s.identity()),
        );
    }
    let jobs: Vec<(InjEndo, Elem)> = endos
        .iter()
        .flat_map(|&e| elems.iter().map(move |&x| (e, x)))
        .collect();
    par_each(rec, &jobs, |&(e, x), r| {
        for &y in &elems {
            let lhs = s.mul(x, y).and_then(|xy| e.apply(xy));
            let rhs = e
                .apply(x)
                .and_then(|xe| e.apply(y).and_then(|ye| s.mul(xe, ye)));
            r.eq("endo_homomorphism", || format!("{e} on {x} {y}"), lhs, rhs);
        }
    });
}

fn endo_injectivity(rec: &mut Recorder, b: Bounds) {
    let elems = Truncation::canonical(b.bound).elements();
    let endos = enumerate_endos(b.kmax);
    for e in &endos {
        rec.eq(
            "endo_injective",
            || e.to_string(),
            Ok(None),
            find_injectivity_violation(e.form(), b.bound),
        );
    }

    for k in 2..=b.kmax {
        for p in 1..k {
            let (alpha, beta) = (
                InjEndo::alpha(k, p).expect("in range"),
                InjEndo::beta(k, p).expect("in range"),
            );
            for x in elems.iter().filter(|x| x.f() == 0) {
                rec.eq(
                    "alpha_beta_level0_agreement",
                    || format!("{alpha} {beta} on {x}"),
                    alpha.apply(*x),
                    beta.apply(*x),
                );
            }
        }
    }

    let small = Truncation::canonical(2.min(b.bound)).elements();
    for e in &endos {
        let moved = small
            .iter()
            .map(|&x| e.apply(x).map(|y| y != x))
            .collect::<Result<Vec<bool>>>()
            .map(|m| m.into_iter().any(|moved| moved));
        rec.eq(
            "fixed_point_rigidity",
            || format!("{e} moves some element with coordinates <= 2"),
            Ok(!e.is_identity()),
            moved,
        );
    }
    let id = InjEndo::identity();
    for &x in &elems {
        rec.eq("fixed_point_rigidity", || format!("{id} on {x}"), Ok(x), id.apply(x));
    }
}

/// The four composition rules, written out independently of
/// [`InjEndo::compose`].
fn closed_form(e1: &InjEndo, e2: &InjEndo) -> (Variant, i64, i64) {
    let (k1, p1, k2, p2) = (e1.k(), e1.p(), e2.k(), e2.p());
    match (e1.variant(), e2.variant()) {
        (Variant::Alpha, Variant::Alpha) => (Variant::Alpha, k1 * k2, p2 + k2 * p1),
        (Variant::Alpha, Variant::Beta) => (Variant::Beta, k1 * k2, p2 + k2 * p1),
        (Variant::Beta, Variant::Beta) => (Variant::Beta, k1 * k2, k2 * p1),
        (Variant::Beta, Variant::Alpha) => (Variant::Beta, k1 * k2, k2 * p1),
    }
}

fn composition_table(rec: &mut Recorder, b: Bounds) {
    let elems = Truncation::canonical(b.bound).elements();
    let endos = enumerate_endos(b.kmax);
    let pairs: Vec<(InjEndo, InjEndo)> = endos
        .iter()
        .flat_map(|&e1| endos.iter().map(move |&e2| (e1, e2)))
        .collect();
    par_each(rec, &pairs, |&(e1, e2), r| {
        let composed = e1.compose(&e2);
        for &x in &elems {
            let lhs = composed.clone().and_then(|c| c.apply(x));
            let rhs = e1.apply(x).and_then(|y| e2.apply(y));
            r.eq("composition_pointwise", || format!("{e1}·{e2} on {x}"), rhs, lhs);
        }
    });

    for e1 in &endos {
        for e2 in &endos {
            for e3 in &endos {
                let lhs = e1.compose(e2).and_then(|x| x.compose(e3));
                let rhs = e2.compose(e3).and_then(|y| e1.compose(&y));
                rec.eq("composition_associative", || format!("{e1} {e2} {e3}"), lhs, rhs);
            }
        }
        let id = InjEndo::identity();
        rec.eq("composition_identity", || format!("1·{e1}"), Ok(*e1), id.compose(e1));
        rec.eq("composition_identity", || format!("{e1}·1"), Ok(*e1), e1.compose(&id));
    }

    let symbolic = enumerate_endos(b.symbolic_kmax);
    for e1 in &symbolic {
        for e2 in &symbolic {
            let (variant, k, p) = closed_form(e1, e2);
            let composed = e1.compose(e2);
            rec.eq(
                "composition_closed_form",
                || format!("{e1}·{e2}"),
                Ok((variant, k, p)),
                composed.map(|c| (c.variant(), c.k(), c.p())),
            );
            rec.check(
                "composition_parameter_closure",
                EndoForm::new(variant, k, p).violated_constraint().is_none(),
                || format!("{e1}·{e2}"),
                || "parameters in range".into(),
                || format!("{:?}", EndoForm::new(variant, k, p).violated_constraint()),
            );
        }
    }

    for beta1 in symbolic.iter().filter(|e| is_in_s_beta(e)) {
        for beta2 in symbolic.iter().filter(|e| is_in_s_beta(e)) {
            let alpha2 = InjEndo::alpha(beta2.k(), beta2.p()).expect("β parameters are α-legal");
            rec.eq(
                "beta_alpha_equals_beta_beta",
                || format!("{beta1}·{alpha2} vs {beta1}·{beta2}"),
                beta1.compose(beta2),
                beta1.compose(&alpha2),
            );
        }
    }
}

fn idempotents(rec: &mut Recorder, b: Bounds) {
    rec.eq(
        "unique_idempotent",
        || format!("kmax={}", b.kmax),
        Ok(vec![InjEndo::identity()]),
        find_idempotents(b.kmax),
    );
}

fn cancellative(rec: &mut Recorder, b: Bounds) {
    rec.holds(
        "s_alpha_cancellative",
        || format!("kmax={}", b.kmax),
        check_cancellative_s_alpha(b.kmax),
    );
    let alphas: Vec<InjEndo> = enumerate_endos(b.kmax).into_iter().filter(is_in_s_alpha).collect();
    for x in &alphas {
        for y in &alphas {
            rec.holds(
                "s_alpha_closed",
                || format!("{x}·{y}"),
                x.compose(y).map(|c| is_in_s_alpha(&c)),
            );
        }
    }
}

fn ideal(rec: &mut Recorder, b: Bounds) {
    rec.holds(
        "s_beta_ideal",
        || format!("kmax={}", b.kmax),
        check_ideal_s_beta(b.kmax),
    );
    let betas: Vec<InjEndo> = enumerate_endos(b.kmax).into_iter().filter(is_in_s_beta).collect();
    for x in &betas {
        for y in &betas {
            rec.holds(
                "s_beta_closed",
                || format!("{x}·{y}"),
                x.compose(y).map(|c| is_in_s_beta(&c)),
            );
        }
    }
}

fn green_agreement(rec: &mut Recorder, b: Bounds) {
    let endos = enumerate_endos(b.kmax);
    let pairs: Vec<(InjEndo, InjEndo)> = endos
        .iter()
        .flat_map(|&x| endos.iter().map(move |&y| (x, y)))
        .collect();
    par_each(rec, &pairs, |&(left, right), r| {
        let mut verdict = BTreeMap::new();
        for relation in GreenRelation::ALL {
            let q = GreenQuery {
                relation,
                left,
                right,
                kmax: b.search_kmax,
            };
            let found = green_bounded_search(&q);
            r.eq(
                "green_oracle_agreement",
                || format!("{relation} {left} {right}"),
                Ok(green_symbolic(&q)),
                found.clone().map(|w| w.related),
            );
            if let Ok(w) = &found {
                r.check(
                    "green_witness_shape",
                    !w.related || !w.witnesses.is_empty() || left == right,
                    || format!("{relation} {left} {right}"),
                    || "witnesses for a related pair".into(),
                    || format!("{w:?}"),
                );
                r.check(
                    "green_witness_shape",
                    w.exhausted_bound == b.search_kmax,
                    || format!("{relation} {left} {right}"),
                    || format!("bound {}", b.search_kmax),
                    || format!("bound {}", w.exhausted_bound),
                );
                verdict.insert(relation as u8, w.related);
            }
            if left.variant() != right.variant() {
                r.check(
                    "green_mixed_separation",
                    matches!(found, Ok(ref w) if !w.related),
                    || format!("{relation} {left} {right}"),
                    || "unrelated".into(),
                    || show(&found.map(|w| w.related)),
                );
            }
        }
        if verdict.len() == GreenRelation::ALL.len() {
            let v = |rel: GreenRelation| verdict[&(rel as u8)];
            let (gr, gl, gh, gd, gj) = (
                v(GreenRelation::R),
                v(GreenRelation::L),
                v(GreenRelation::H),
                v(GreenRelation::D),
                v(GreenRelation::J),
            );
            r.check(
                "green_containments",
                (!gr || gj) && (!gl || gj) && gh == (gr && gl) && (!gh || gd) && (!gd || gj),
                || format!("{left} {right}"),
                || "R⊆J, L⊆J, H=R∧L, H⊆D⊆J".into(),
                || format!("R={gr} L={gl} H={gh} D={gd} J={gj}"),
            );
        }
    });

    let factors = enumerate_endos(b.search_kmax);
    for a in &endos {
        for e in &factors {
            let trivial = e.is_identity();
            rec.eq(
                "green_trivial_solutions",
                || format!("{a}·{e} = {a}"),
                Ok(trivial),
                a.compose(e).map(|c| c == *a),
            );
            rec.eq(
                "green_trivial_solutions",
                || format!("{e}·{a} = {a}"),
                Ok(trivial),
                e.compose(a).map(|c| c == *a),
            );
        }
    }
}

fn classification_negative(rec: &mut Recorder, b: Bounds) {
    for variant in [Variant::Alpha, Variant::Beta] {
        for k in 1..=b.kmax {
            for p in k..=k + 2 {
                let form = EndoForm::new(variant, k, p);
                // β_{k,k} is a homomorphism that collapses (0,0,[1)) onto
                // (1,1,[0)); it is ruled out by injectivity instead
                let witness = is_endomorphism_on_truncation(form, b.bound).and_then(|h| match h {
                    HomCheck::Violated { x, y } => Ok(Some(format!("{x} {y} break (x·y)f = xf·yf"))),
                    HomCheck::Holds => Ok(find_injectivity_violation(form, b.bound)?
                        .map(|(x, y)| format!("{x} {y} share an image"))),
                });
                if let Ok(Some(w)) = &witness {
                    rec.witnesses.push(format!("{variant}{{k={k}, p={p}}}: {w}"));
                }
                rec.check(
                    "out_of_range_witness",
                    matches!(witness, Ok(Some(_))),
                    || format!("{variant}{{k={k}, p={p}}} N={}", b.bound),
                    || "a homomorphism or injectivity violation".into(),
                    || show(&witness),
                );

                rec.check(
                    "out_of_range_rejected",
                    InjEndo::new(variant, k, p).is_err(),
                    || format!("{variant}{{k={k}, p={p}}}"),
                    || "parameter-range error".into(),
                    || "accepted".into(),
                );
                let target_level = match variant {
                    Variant::Alpha => Level::One,
                    Variant::Beta => Level::Zero,
                };
                rec.check(
                    "out_of_range_rejected",
                    classify_from_images(GeneratorImages { k, target_level, p }).is_err(),
                    || format!("classify k={k} {target_level:?} p={p}"),
                    || "parameter-range error".into(),
                    || "accepted".into(),
                );
            }
        }
    }

    for k in 2..=b.kmax {
        let form = EndoForm::new(Variant::Beta, k, 0);
        let found = find_injectivity_violation(form, b.bound);
        if let Ok(Some((x, y))) = found {
            rec.witnesses.push(format!("beta{{k={k}, p=0}}: {x} {y} share an image"));
        }
        rec.check(
            "beta_zero_offset_not_injective",
            matches!(found, Ok(Some(_))),
            || format!("beta{{k={k}, p=0}}"),
            || "two elements with one image".into(),
            || show(&found),
        );
        rec.check(
            "beta_zero_offset_not_injective",
            classify_from_images(GeneratorImages {
                k,
                target_level: Level::Zero,
                p: 0,
            })
            .is_err(),
            || format!("classify k={k} Zero p=0"),
            || "parameter-range error".into(),
            || "accepted".into(),
        );
    }
}

fn growth_inequalities(rec: &mut Recorder, b: Bounds) {
    for k in 1..=b.kmax {
        let cases = (0..k)
            .map(|p| (Variant::Alpha, p))
            .chain((1..k).map(|p| (Variant::Beta, p)));
        for (variant, p) in cases {
            for s in 1..=2 * k + 2 {
                let holds = check_growth_inequalities(variant, k, p, s, b.t_max);
                rec.check(
                    "growth_iff_s_equals_k",
                    holds == (s == k),
                    || format!("{variant} k={k} p={p} s={s} t_max={}", b.t_max),
                    || format!("holds={}", s == k),
                    || format!("holds={holds}"),
                );
            }
        }
    }
}
