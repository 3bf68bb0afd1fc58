//! The bicyclic extension `B_ω^F`.
//!
//! A nonempty inductive subset `[n) = {x ∈ ω : x ≥ n}` of ω is determined by
//! its least element, so every set operation here reduces to `max` and a
//! signed shift on base points. Elements are triples `(i, j, f)` where `f`
//! indexes a set of the ambient [`Family`]; the product is the two-case rule
//!
//! ```text
//! (i1,j1,F1)·(i2,j2,F2) = (i1-j1+i2, j2, (j1-i2+F1) ∩ F2)   if j1 <= i2
//!                       = (i1, j1-i2+j2, F1 ∩ (i2-j1+F2))   if j1 >= i2
//! ```
//!
//! All arithmetic is on `i64` and overflow is reported, never wrapped.

use std::fmt;

use crate::error::{AlgebraError, Result};

/// A nonempty inductive subset `[base)` of ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InductiveSet {
    base: i64,
}

impl InductiveSet {
    pub fn new(base: i64) -> Result<Self> {
        if base < 0 {
            return Err(AlgebraError::NegativeCoordinate(base));
        }
        Ok(Self { base })
    }

    pub const fn base(self) -> i64 {
        self.base
    }

    pub fn contains(self, x: i64) -> bool {
        x >= self.base
    }

    /// `(d + self) ∩ other`.
    pub fn intersect_shifted(self, d: i64, other: InductiveSet) -> Result<InductiveSet> {
        intersect_shifted(self, d, other)
    }
}

impl fmt::Display for InductiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{})", self.base)
    }
}

/// Computes `(d + a) ∩ b = [max(a + d, b))`.
///
/// `a.base + d` may be negative; the result is still a subset of ω because
/// `b.base >= 0`.
pub fn intersect_shifted(a: InductiveSet, d: i64, b: InductiveSet) -> Result<InductiveSet> {
    let shifted = a.base.checked_add(d).ok_or(AlgebraError::Overflow)?;
    Ok(InductiveSet {
        base: shifted.max(b.base),
    })
}

/// An ω-closed family of nonempty inductive sets, sorted by base and
/// always containing `[0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    sets: Vec<InductiveSet>,
}

impl Family {
    /// The two-element family `{[0), [1)}`.
    pub fn canonical() -> Self {
        Self {
            sets: vec![InductiveSet { base: 0 }, InductiveSet { base: 1 }],
        }
    }

    /// Validates and builds a family from its base points.
    ///
    /// Closure under `F1 ∩ (-n + F2)` is checked for every `n` in
    /// `0..=max_base`; larger shifts clamp `F2` to `[0)` and add nothing new.
    pub fn new(bases: &[i64]) -> Result<Self> {
        if bases.is_empty() {
            return Err(AlgebraError::InvalidFamily("family is empty".into()));
        }
        let mut sets = bases
            .iter()
            .map(|&b| InductiveSet::new(b))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| AlgebraError::InvalidFamily("bases must be nonnegative".into()))?;
        sets.sort();
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(AlgebraError::InvalidFamily("bases must be distinct".into()));
        }
        if sets[0].base != 0 {
            return Err(AlgebraError::InvalidFamily(
                "family must contain [0)".into(),
            ));
        }
        let family = Self { sets };
        let max_base = family.sets.last().map_or(0, |s| s.base);
        for &a in &family.sets {
            for &b in &family.sets {
                for n in 0..=max_base {
                    let meet = intersect_shifted(b, -n, a)?;
                    if family.index_of(meet.base).is_none() {
                        return Err(AlgebraError::InvalidFamily(format!(
                            "{a} ∩ (-{n} + {b}) = {meet} is not a member"
                        )));
                    }
                }
            }
        }
        Ok(family)
    }

    pub fn is_canonical(&self) -> bool {
        *self == Self::canonical()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[InductiveSet] {
        &self.sets
    }

    pub fn set(&self, index: usize) -> Result<InductiveSet> {
        self.sets.get(index).copied().ok_or(AlgebraError::Domain {
            index,
            len: self.sets.len(),
        })
    }

    pub fn index_of(&self, base: i64) -> Option<usize> {
        self.sets.binary_search_by_key(&base, |s| s.base).ok()
    }
}

/// An element `(i, j, f)` of `B_ω^F`; `f` indexes the ambient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    i: i64,
    j: i64,
    f: usize,
}

impl Elem {
    pub fn new(i: i64, j: i64, f: usize) -> Result<Self> {
        if i < 0 {
            return Err(AlgebraError::NegativeCoordinate(i));
        }
        if j < 0 {
            return Err(AlgebraError::NegativeCoordinate(j));
        }
        Ok(Self { i, j, f })
    }

    pub const fn i(self) -> i64 {
        self.i
    }

    pub const fn j(self) -> i64 {
        self.j
    }

    pub const fn f(self) -> usize {
        self.f
    }

    /// `(j, i, f)`, the unique inverse of `(i, j, f)`.
    pub const fn inverse(self) -> Self {
        Self {
            i: self.j,
            j: self.i,
            f: self.f,
        }
    }
}

/// Prints `(i,j,f)`. For a valid family the index `f` is also the base of
/// the set, since an ω-closed family containing `[0)` is `{[0), ..., [m)}`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.f)
    }
}

/// Which case of the product rule to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `j1 <= i2`
    Lower,
    /// `j1 >= i2`
    Upper,
}

/// `B_ω^F` over a fixed family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicyclicExtension {
    family: Family,
}

impl Default for BicyclicExtension {
    fn default() -> Self {
        Self::canonical()
    }
}

impl BicyclicExtension {
    pub fn new(family: Family) -> Self {
        Self { family }
    }

    pub fn canonical() -> Self {
        Self::new(Family::canonical())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `(0, 0, [0))`, the identity of the monoid.
    pub fn identity(&self) -> Elem {
        Elem { i: 0, j: 0, f: 0 }
    }

    /// All elements with `i, j <= bound`, level by level: ordered by
    /// `(f, i, j)`.
    pub fn elements_up_to(&self, bound: i64) -> impl Iterator<Item = Elem> + '_ {
        (0..self.family.len()).flat_map(move |f| {
            (0..=bound).flat_map(move |i| (0..=bound).map(move |j| Elem { i, j, f }))
        })
    }

    pub fn set_of(&self, x: Elem) -> Result<InductiveSet> {
        self.family.set(x.f)
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Result<Elem> {
        let branch = if x.j <= y.i {
            Branch::Lower
        } else {
            Branch::Upper
        };
        Ok(self
            .mul_by_branch(x, y, branch)?
            .expect("selected branch always applies"))
    }

    /// Evaluates one case of the product rule, or `None` when that case does
    /// not apply to `(x, y)`. At `x.j == y.i` both cases apply and must agree.
    pub fn mul_by_branch(&self, x: Elem, y: Elem, branch: Branch) -> Result<Option<Elem>> {
        let applies = match branch {
            Branch::Lower => x.j <= y.i,
            Branch::Upper => x.j >= y.i,
        };
        if !applies {
            return Ok(None);
        }
        let fx = self.set_of(x)?;
        let fy = self.set_of(y)?;
        let (i, j, set) = match branch {
            Branch::Lower => {
                let i = x.i.checked_add(y.i - x.j).ok_or(AlgebraError::Overflow)?;
                let d = x.j.checked_sub(y.i).ok_or(AlgebraError::Overflow)?;
                (i, y.j, intersect_shifted(fx, d, fy)?)
            }
            Branch::Upper => {
                let j = (x.j - y.i).checked_add(y.j).ok_or(AlgebraError::Overflow)?;
                let d = y.i.checked_sub(x.j).ok_or(AlgebraError::Overflow)?;
                (x.i, j, intersect_shifted(fy, d, fx)?)
            }
        };
        let f = self
            .family
            .index_of(set.base())
            .ok_or(AlgebraError::FamilyClosure { base: set.base() })?;
        Ok(Some(Elem { i, j, f }))
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        x.inverse()
    }

    pub fn is_idempotent(&self, x: Elem) -> Result<bool> {
        Ok(self.mul(x, x)? == x)
    }

    /// The natural partial order: `s ≼ t` iff `s = t·(s⁻¹s)`.
    pub fn leq_natural(&self, s: Elem, t: Elem) -> Result<bool> {
        let e = self.mul(s.inverse(), s)?;
        Ok(self.mul(t, e)? == s)
    }
}

/// The bicyclic monoid product on pairs of nonnegative integers.
pub fn mul_bicyclic(a: (i64, i64), b: (i64, i64)) -> Result<(i64, i64)> {
    for v in [a.0, a.1, b.0, b.1] {
        if v < 0 {
            return Err(AlgebraError::NegativeCoordinate(v));
        }
    }
    let ((i1, j1), (i2, j2)) = (a, b);
    if j1 <= i2 {
        Ok((i1.checked_add(i2 - j1).ok_or(AlgebraError::Overflow)?, j2))
    } else {
        Ok((i1, (j1 - i2).checked_add(j2).ok_or(AlgebraError::Overflow)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(b: i64) -> InductiveSet {
        InductiveSet::new(b).unwrap()
    }

    fn e(i: i64, j: i64, f: usize) -> Elem {
        Elem::new(i, j, f).unwrap()
    }

    #[test]
    fn intersect_shifted_examples() {
        assert_eq!(intersect_shifted(set(1), -2, set(0)).unwrap(), set(0));
        assert_eq!(intersect_shifted(set(0), 0, set(0)).unwrap(), set(0));
        assert_eq!(intersect_shifted(set(0), -1, set(1)).unwrap(), set(1));
    }

    #[test]
    fn intersect_shifted_overflow() {
        assert_eq!(
            intersect_shifted(set(i64::MAX), 1, set(0)),
            Err(AlgebraError::Overflow)
        );
    }

    #[test]
    fn inductive_sets_are_fixed_by_left_shift_meet() {
        for b in 0..10 {
            assert_eq!(intersect_shifted(set(b), -1, set(b)).unwrap(), set(b));
        }
    }

    #[test]
    fn negative_base_rejected() {
        assert!(InductiveSet::new(-1).is_err());
        assert!(Elem::new(-1, 0, 0).is_err());
        assert!(Elem::new(0, -3, 0).is_err());
    }

    #[test]
    fn family_validation() {
        assert_eq!(Family::new(&[1, 0]).unwrap(), Family::canonical());
        assert!(Family::new(&[0]).is_ok());
        assert!(Family::new(&[0, 1, 2, 3]).is_ok());
        assert!(Family::new(&[]).is_err());
        assert!(Family::new(&[1]).is_err());
        assert!(Family::new(&[0, 0]).is_err());
        // [0) ∩ (-1 + [2)) = [1) is missing
        assert!(Family::new(&[0, 2]).is_err());
        assert!(Family::new(&[0, -1]).is_err());
    }

    #[test]
    fn valid_families_are_initial_segments() {
        for mask in 0u32..64 {
            let bases: Vec<i64> = (0..6).filter(|b| mask & (1 << b) != 0).collect();
            let contiguous = !bases.is_empty() && bases.iter().enumerate().all(|(n, &b)| b == n as i64);
            assert_eq!(Family::new(&bases).is_ok(), contiguous, "{bases:?}");
        }
    }

    #[test]
    fn mul_examples() {
        let s = BicyclicExtension::canonical();
        assert_eq!(s.mul(e(0, 0, 0), e(2, 3, 1)).unwrap(), e(2, 3, 1));
        assert_eq!(s.mul(e(1, 2, 0), e(1, 3, 1)).unwrap(), e(1, 4, 0));
        assert_eq!(s.mul(e(2, 2, 1), e(2, 2, 0)).unwrap(), e(2, 2, 1));
    }

    #[test]
    fn mul_rejects_foreign_index() {
        let s = BicyclicExtension::canonical();
        assert_eq!(
            s.mul(e(0, 0, 0), e(0, 0, 2)),
            Err(AlgebraError::Domain { index: 2, len: 2 })
        );
    }

    #[test]
    fn mul_overflow_is_reported() {
        let s = BicyclicExtension::canonical();
        assert_eq!(
            s.mul(e(i64::MAX, 0, 0), e(1, 0, 0)),
            Err(AlgebraError::Overflow)
        );
        assert_eq!(
            s.mul(e(0, 1, 0), e(0, i64::MAX, 0)),
            Err(AlgebraError::Overflow)
        );
    }

    #[test]
    fn branches_agree_on_the_diagonal() {
        let s = BicyclicExtension::canonical();
        for m in 0..6 {
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let x = e(3, m, a);
                let y = e(m, 2, b);
                let lower = s.mul_by_branch(x, y, Branch::Lower).unwrap();
                let upper = s.mul_by_branch(x, y, Branch::Upper).unwrap();
                assert!(lower.is_some());
                assert_eq!(lower, upper);
            }
        }
    }

    #[test]
    fn inapplicable_branch_is_none() {
        let s = BicyclicExtension::canonical();
        assert_eq!(s.mul_by_branch(e(0, 3, 0), e(1, 0, 0), Branch::Lower), Ok(None));
        assert_eq!(s.mul_by_branch(e(0, 0, 0), e(1, 0, 0), Branch::Upper), Ok(None));
    }

    #[test]
    fn bicyclic_examples() {
        assert_eq!(mul_bicyclic((0, 0), (5, 7)).unwrap(), (5, 7));
        assert_eq!(mul_bicyclic((1, 2), (3, 4)).unwrap(), (2, 4));
        assert_eq!(mul_bicyclic((3, 1), (1, 2)).unwrap(), (3, 2));
        assert!(mul_bicyclic((-1, 0), (0, 0)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(e(3, 5, 1).inverse(), e(5, 3, 1));
        assert_eq!(e(4, 4, 0).inverse(), e(4, 4, 0));
        assert_eq!(e(0, 7, 0).inverse(), e(7, 0, 0));
    }

    #[test]
    fn idempotent_examples() {
        let s = BicyclicExtension::canonical();
        assert!(s.is_idempotent(e(2, 2, 1)).unwrap());
        assert_eq!(s.mul(e(2, 3, 0), e(2, 3, 0)).unwrap(), e(2, 4, 0));
        assert!(!s.is_idempotent(e(2, 3, 0)).unwrap());
        assert!(s.is_idempotent(e(0, 0, 0)).unwrap());
    }

    #[test]
    fn natural_order_examples() {
        let s = BicyclicExtension::canonical();
        assert!(s.leq_natural(e(2, 2, 0), e(1, 1, 1)).unwrap());
        assert!(!s.leq_natural(e(3, 3, 0), e(3, 3, 1)).unwrap());
        assert!(s.leq_natural(e(3, 5, 1), e(3, 5, 1)).unwrap());
        // the chain (t+1,t+1,[1)) ≼ (t+1,t+1,[0)) ≼ (t,t,[1))
        for t in 1..10 {
            assert!(s.leq_natural(e(t + 1, t + 1, 1), e(t + 1, t + 1, 0)).unwrap());
            assert!(s.leq_natural(e(t + 1, t + 1, 0), e(t, t, 1)).unwrap());
        }
    }

    #[test]
    fn larger_family_products_stay_closed() {
        let s = BicyclicExtension::new(Family::new(&[0, 1, 2, 3]).unwrap());
        for a in 0..4 {
            for b in 0..4 {
                for m in 0..5 {
                    s.mul(e(m, 2, a), e(1, m, b)).unwrap();
                }
            }
        }
    }
}
