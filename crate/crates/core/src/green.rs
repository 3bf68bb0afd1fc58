//! The monoid `End¹_*(B_ω^F)` under composition: the submonoid `S_α`, the
//! ideal `S_β`, idempotents, and Green's relations.
//!
//! Green's relations are answered two ways. [`green_symbolic`] uses the fact
//! that all five relations coincide with equality on this monoid.
//! [`green_bounded_search`] ignores that and looks for divisibility witnesses
//! among all endomorphisms with `k <= kmax`, so the two can be checked
//! against each other.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::endo::{InjEndo, Variant};
use crate::error::{AlgebraError, Result};
use crate::verify::enumerate_endos;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
    J,
}

impl GreenRelation {
    pub const ALL: [GreenRelation; 5] = [
        GreenRelation::R,
        GreenRelation::L,
        GreenRelation::H,
        GreenRelation::D,
        GreenRelation::J,
    ];
}

impl fmt::Display for GreenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GreenRelation::R => "R",
            GreenRelation::L => "L",
            GreenRelation::H => "H",
            GreenRelation::D => "D",
            GreenRelation::J => "J",
        };
        f.write_str(s)
    }
}

impl FromStr for GreenRelation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "R" | "r" => Ok(GreenRelation::R),
            "L" | "l" => Ok(GreenRelation::L),
            "H" | "h" => Ok(GreenRelation::H),
            "D" | "d" => Ok(GreenRelation::D),
            "J" | "j" => Ok(GreenRelation::J),
            other => Err(format!("unknown Green's relation {other:?}; expected R, L, H, D or J")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreenQuery {
    pub relation: GreenRelation,
    pub left: InjEndo,
    pub right: InjEndo,
    pub kmax: i64,
}

/// A multiplier from `S¹`: the adjoined unit or an element of the monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Unit,
    Endo(InjEndo),
}

impl Factor {
    /// `self · x`
    fn left_mul(&self, x: &InjEndo) -> Result<InjEndo> {
        match self {
            Factor::Unit => Ok(*x),
            Factor::Endo(e) => e.compose(x),
        }
    }

    /// `x · self`
    fn right_mul(&self, x: &InjEndo) -> Result<InjEndo> {
        match self {
            Factor::Unit => Ok(*x),
            Factor::Endo(e) => x.compose(e),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Unit => f.write_str("unit"),
            Factor::Endo(e) => e.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearchResult {
    pub related: bool,
    pub witnesses: Vec<Factor>,
    pub exhausted_bound: i64,
}

/// All five relations are equality on `End¹_*(B_ω^F)`.
pub fn green_symbolic(q: &GreenQuery) -> bool {
    q.left == q.right
}

/// One relation test inside a search, returning its witnesses.
type Step = fn(&Search, &InjEndo, &InjEndo) -> Result<Option<Vec<Factor>>>;

struct Search {
    factors: Vec<Factor>,
    middles: Vec<InjEndo>,
}

impl Search {
    fn new(kmax: i64, left: InjEndo, right: InjEndo) -> Self {
        let endos = enumerate_endos(kmax);
        let mut factors = Vec::with_capacity(endos.len() + 1);
        factors.push(Factor::Unit);
        factors.extend(endos.iter().copied().map(Factor::Endo));
        let mut middles = vec![left];
        if right != left {
            middles.push(right);
        }
        middles.extend(endos.into_iter().filter(|e| *e != left && *e != right));
        Self { factors, middles }
    }

    /// `ε` with `a = b·ε`.
    fn right_divisor(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Factor>> {
        for f in &self.factors {
            if f.right_mul(b)? == *a {
                return Ok(Some(*f));
            }
        }
        Ok(None)
    }

    /// `ε` with `a = ε·b`.
    fn left_divisor(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Factor>> {
        for f in &self.factors {
            if f.left_mul(b)? == *a {
                return Ok(Some(*f));
            }
        }
        Ok(None)
    }

    /// `(ε1, ε2)` with `a = ε1·b·ε2`.
    fn two_sided_divisor(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<(Factor, Factor)>> {
        for f1 in &self.factors {
            let fb = f1.left_mul(b)?;
            if let Some(f2) = self.right_divisor(a, &fb)? {
                return Ok(Some((*f1, f2)));
            }
        }
        Ok(None)
    }

    fn r(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Vec<Factor>>> {
        let Some(e1) = self.right_divisor(a, b)? else {
            return Ok(None);
        };
        Ok(self.right_divisor(b, a)?.map(|e2| vec![e1, e2]))
    }

    fn l(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Vec<Factor>>> {
        let Some(e1) = self.left_divisor(a, b)? else {
            return Ok(None);
        };
        Ok(self.left_divisor(b, a)?.map(|e2| vec![e1, e2]))
    }

    fn h(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Vec<Factor>>> {
        let Some(mut w) = self.r(a, b)? else {
            return Ok(None);
        };
        Ok(self.l(a, b)?.map(|l| {
            w.extend(l);
            w
        }))
    }

    fn j(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Vec<Factor>>> {
        let Some((e1, e2)) = self.two_sided_divisor(a, b)? else {
            return Ok(None);
        };
        Ok(self
            .two_sided_divisor(b, a)?
            .map(|(e3, e4)| vec![e1, e2, e3, e4]))
    }

    /// `a (first ∘ second) b`: some middle `c` with `a first c` and
    /// `c second b`. Witnesses are `c` followed by both factor lists.
    fn composite(
        &self,
        a: &InjEndo,
        b: &InjEndo,
        first: Step,
        second: Step,
    ) -> Result<Option<Vec<Factor>>> {
        for c in &self.middles {
            let Some(w1) = first(self, a, c)? else {
                continue;
            };
            if let Some(w2) = second(self, c, b)? {
                let mut w = vec![Factor::Endo(*c)];
                w.extend(w1);
                w.extend(w2);
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn d(&self, a: &InjEndo, b: &InjEndo) -> Result<Option<Vec<Factor>>> {
        let l_then_r = self.composite(a, b, Self::l, Self::r)?;
        let r_then_l = self.composite(a, b, Self::r, Self::l)?;
        if l_then_r.is_some() != r_then_l.is_some() {
            return Err(AlgebraError::DOrderMismatch {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        Ok(l_then_r)
    }
}

/// Decides the relation by brute-force search for divisibility witnesses
/// among the unit and every endomorphism with `k <= kmax`.
///
/// Products are not bounded; only the candidate factors are. An unrelated
/// verdict is a refutation at this bound only.
pub fn green_bounded_search(q: &GreenQuery) -> Result<WitnessSearchResult> {
    let search = Search::new(q.kmax, q.left, q.right);
    let (a, b) = (&q.left, &q.right);
    let found = match q.relation {
        GreenRelation::R => search.r(a, b)?,
        GreenRelation::L => search.l(a, b)?,
        GreenRelation::H => search.h(a, b)?,
        GreenRelation::D => search.d(a, b)?,
        GreenRelation::J => search.j(a, b)?,
    };
    // for D the first witness is the middle element, not a factor
    let skip = usize::from(q.relation == GreenRelation::D);
    let witnesses = match found {
        None => Vec::new(),
        Some(w) if a == b && w[skip..].iter().all(|f| *f == Factor::Unit) => vec![Factor::Unit],
        Some(w) => w,
    };
    Ok(WitnessSearchResult {
        related: !witnesses.is_empty(),
        witnesses,
        exhausted_bound: q.kmax,
    })
}

pub fn is_in_s_alpha(e: &InjEndo) -> bool {
    e.variant() == Variant::Alpha
}

pub fn is_in_s_beta(e: &InjEndo) -> bool {
    e.variant() == Variant::Beta
}

/// Every `e` with `k <= kmax` and `e·e = e`.
pub fn find_idempotents(kmax: i64) -> Result<Vec<InjEndo>> {
    let mut out = Vec::new();
    for e in enumerate_endos(kmax) {
        if e.compose(&e)? == e {
            out.push(e);
        }
    }
    Ok(out)
}

/// Left and right cancellation over all α-triples with `k <= kmax`.
pub fn check_cancellative_s_alpha(kmax: i64) -> Result<bool> {
    let alphas: Vec<InjEndo> = enumerate_endos(kmax)
        .into_iter()
        .filter(is_in_s_alpha)
        .collect();
    for a in &alphas {
        for b in &alphas {
            for c in &alphas {
                if b == c {
                    continue;
                }
                if a.compose(b)? == a.compose(c)? || b.compose(a)? == c.compose(a)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `e·b` and `b·e` lie in `S_β` for every `e` and every `b ∈ S_β` with
/// `k <= kmax`.
pub fn check_ideal_s_beta(kmax: i64) -> Result<bool> {
    let all = enumerate_endos(kmax);
    for b in all.iter().filter(|e| is_in_s_beta(e)) {
        for e in &all {
            if !is_in_s_beta(&e.compose(b)?) || !is_in_s_beta(&b.compose(e)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
