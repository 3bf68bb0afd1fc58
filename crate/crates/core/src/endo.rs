//! Injective monoid endomorphisms of `B_ω^F` for `F = {[0), [1)}`.
//!
//! Every such map is one of two closed forms (maps act on the right):
//!
//! ```text
//! α_{k,p}: (i,j,[0)) ↦ (ki, kj, [0)),   (i,j,[1)) ↦ (p+ki, p+kj, [1))   k >= 1, 0 <= p <= k-1
//! β_{k,p}: (i,j,[0)) ↦ (ki, kj, [0)),   (i,j,[1)) ↦ (p+ki, p+kj, [0))   k >= 2, 1 <= p <= k-1
//! ```
//!
//! [`EndoForm`] is the unvalidated formula, used to probe what goes wrong
//! outside the legal ranges. [`InjEndo`] only holds legal parameters.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::semigroup::{BicyclicExtension, Elem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Alpha,
    Beta,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Alpha => "alpha",
            Variant::Beta => "beta",
        })
    }
}

/// The parameter constraint violated by an out-of-range construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    KTooSmall { min: i64 },
    PNegative,
    PExceedsKMinusOne,
    PBelowOne,
    /// `(0,0,[1))` and `(0,0,[0))` would share the image `(0,0,[0))`.
    SharedIdentityImage,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::KTooSmall { min } => write!(f, "k must be at least {min}"),
            Constraint::PNegative => f.write_str("p must be nonnegative"),
            Constraint::PExceedsKMinusOne => f.write_str(
                "p exceeds k-1 (the image (k,k,[0)) of (1,1,[0)) must lie below the image of (0,0,[1)))",
            ),
            Constraint::PBelowOne => f.write_str("p must be at least 1 for beta"),
            Constraint::SharedIdentityImage => f.write_str(
                "p = 0 sends (0,0,[1)) to (0,0,[0)), the image of the identity, so the map is not injective",
            ),
        }
    }
}

/// The α/β formula with unchecked parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndoForm {
    pub variant: Variant,
    pub k: i64,
    pub p: i64,
}

impl EndoForm {
    pub const fn new(variant: Variant, k: i64, p: i64) -> Self {
        Self { variant, k, p }
    }

    /// Applies the formula to an element of the canonical family.
    pub fn apply(&self, x: Elem) -> Result<Elem> {
        let scale = |c: i64| self.k.checked_mul(c).ok_or(AlgebraError::Overflow);
        match x.f() {
            0 => Elem::new(scale(x.i())?, scale(x.j())?, 0),
            1 => {
                let off = |c: i64| {
                    scale(c)?
                        .checked_add(self.p)
                        .ok_or(AlgebraError::Overflow)
                };
                let level = match self.variant {
                    Variant::Alpha => 1,
                    Variant::Beta => 0,
                };
                Elem::new(off(x.i())?, off(x.j())?, level)
            }
            _ => Err(AlgebraError::NonCanonicalFamily),
        }
    }

    /// The first constraint these parameters violate, if any.
    pub fn violated_constraint(&self) -> Option<Constraint> {
        let (min_k, min_p) = match self.variant {
            Variant::Alpha => (1, 0),
            Variant::Beta => (2, 1),
        };
        if self.k < min_k {
            Some(Constraint::KTooSmall { min: min_k })
        } else if self.p < 0 {
            Some(Constraint::PNegative)
        } else if self.p < min_p {
            Some(Constraint::PBelowOne)
        } else if self.p > self.k - 1 {
            Some(Constraint::PExceedsKMinusOne)
        } else {
            None
        }
    }
}

/// An injective monoid endomorphism `α_{k,p}` or `β_{k,p}` with legal
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InjEndo {
    form: EndoForm,
}

impl InjEndo {
    pub fn new(variant: Variant, k: i64, p: i64) -> Result<Self> {
        let form = EndoForm::new(variant, k, p);
        match form.violated_constraint() {
            None => Ok(Self { form }),
            Some(constraint) => Err(AlgebraError::ParameterRange {
                variant,
                k,
                p,
                constraint,
            }),
        }
    }

    pub fn alpha(k: i64, p: i64) -> Result<Self> {
        Self::new(Variant::Alpha, k, p)
    }

    pub fn beta(k: i64, p: i64) -> Result<Self> {
        Self::new(Variant::Beta, k, p)
    }

    /// `α_{1,0}`, the identity map.
    pub const fn identity() -> Self {
        Self {
            form: EndoForm::new(Variant::Alpha, 1, 0),
        }
    }

    pub const fn variant(&self) -> Variant {
        self.form.variant
    }

    pub const fn k(&self) -> i64 {
        self.form.k
    }

    pub const fn p(&self) -> i64 {
        self.form.p
    }

    pub const fn form(&self) -> EndoForm {
        self.form
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, x: Elem) -> Result<Elem> {
        self.form.apply(x)
    }

    /// `self` followed by `next`, i.e. `x(self·next) = (x self) next`.
    ///
    /// ```text
    /// α_{k1,p1} α_{k2,p2} = α_{k1k2, p2+k2p1}
    /// α_{k1,p1} β_{k2,p2} = β_{k1k2, p2+k2p1}
    /// β_{k1,p1} β_{k2,p2} = β_{k1k2, k2p1}
    /// β_{k1,p1} α_{k2,p2} = β_{k1k2, k2p1}
    /// ```
    pub fn compose(&self, next: &InjEndo) -> Result<InjEndo> {
        let k = self.k().checked_mul(next.k()).ok_or(AlgebraError::Overflow)?;
        let k2p1 = next.k().checked_mul(self.p()).ok_or(AlgebraError::Overflow)?;
        let (variant, p) = match (self.variant(), next.variant()) {
            (Variant::Alpha, v) => (
                v,
                next.p().checked_add(k2p1).ok_or(AlgebraError::Overflow)?,
            ),
            (Variant::Beta, _) => (Variant::Beta, k2p1),
        };
        InjEndo::new(variant, k, p)
    }
}

impl fmt::Display for InjEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.variant() {
            Variant::Alpha => 'a',
            Variant::Beta => 'b',
        };
        write!(f, "{tag}:{},{}", self.k(), self.p())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseEndoError {
    Syntax(String),
    Range(AlgebraError),
}

impl fmt::Display for ParseEndoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseEndoError::Syntax(s) => {
                write!(f, "cannot parse endomorphism {s:?}; expected a:k,p or b:k,p")
            }
            ParseEndoError::Range(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ParseEndoError {}

impl FromStr for InjEndo {
    type Err = ParseEndoError;

    /// Parses `a:k,p` or `b:k,p`, ignoring whitespace.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let syntax = || ParseEndoError::Syntax(s.to_string());
        let (tag, params) = compact.split_once(':').ok_or_else(syntax)?;
        let variant = match tag {
            "a" | "A" => Variant::Alpha,
            "b" | "B" => Variant::Beta,
            _ => return Err(syntax()),
        };
        let (k, p) = params.split_once(',').ok_or_else(syntax)?;
        let k: i64 = k.parse().map_err(|_| syntax())?;
        let p: i64 = p.parse().map_err(|_| syntax())?;
        InjEndo::new(variant, k, p).map_err(ParseEndoError::Range)
    }
}

/// Which copy of the bicyclic monoid receives the image of `(0,0,[1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `(0,0,[1)) ↦ (p,p,[0))`
    Zero,
    /// `(0,0,[1)) ↦ (p,p,[1))`
    One,
}

/// The images of the generators that determine an injective monoid
/// endomorphism: `(1,1,[0)) ↦ (k,k,[0))` and `(0,0,[1)) ↦ (p,p,level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorImages {
    pub k: i64,
    pub target_level: Level,
    pub p: i64,
}

/// Recovers the endomorphism from its generator images, or names the
/// constraint that rules the images out.
pub fn classify_from_images(g: GeneratorImages) -> Result<InjEndo> {
    match g.target_level {
        Level::One => InjEndo::alpha(g.k, g.p),
        Level::Zero => {
            if g.k >= 2 && g.p == 0 {
                return Err(AlgebraError::ParameterRange {
                    variant: Variant::Beta,
                    k: g.k,
                    p: g.p,
                    constraint: Constraint::SharedIdentityImage,
                });
            }
            InjEndo::beta(g.k, g.p)
        }
    }
}

/// Outcome of a bounded homomorphism check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomCheck {
    Holds,
    /// `(x·y)f != xf·yf`
    Violated { x: Elem, y: Elem },
}

impl HomCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HomCheck::Holds)
    }
}

/// Checks `(x·y)f = xf·yf` for all `x, y` with coordinates `<= bound`,
/// returning the first violating pair in enumeration order.
pub fn is_endomorphism_on_truncation(form: EndoForm, bound: i64) -> Result<HomCheck> {
    let s = BicyclicExtension::canonical();
    let elems: Vec<Elem> = s.elements_up_to(bound).collect();
    let images = elems
        .iter()
        .map(|&x| form.apply(x))
        .collect::<Result<Vec<_>>>()?;
    for (x, xf) in elems.iter().zip(&images) {
        for (y, yf) in elems.iter().zip(&images) {
            let lhs = form.apply(s.mul(*x, *y)?)?;
            let rhs = s.mul(*xf, *yf)?;
            if lhs != rhs {
                return Ok(HomCheck::Violated { x: *x, y: *y });
            }
        }
    }
    Ok(HomCheck::Holds)
}

/// Returns two distinct elements with coordinates `<= bound` sharing an
/// image, if any.
pub fn find_injectivity_violation(form: EndoForm, bound: i64) -> Result<Option<(Elem, Elem)>> {
    let s = BicyclicExtension::canonical();
    let mut seen: HashMap<Elem, Elem> = HashMap::new();
    for x in s.elements_up_to(bound) {
        let image = form.apply(x)?;
        if let Some(&prev) = seen.get(&image) {
            return Ok(Some((prev, x)));
        }
        seen.insert(image, x);
    }
    Ok(None)
}

/// Which of the two growth inequalities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthFailure {
    /// `p + s(t+1) >= k(t+1)`
    Lower { t: i64 },
    /// `k(t+1) - 1 >= p + st` for α, `k(t+1) >= p + st` for β
    Upper { t: i64 },
}

/// The first `t` in `1..=t_max` at which the growth inequalities for an
/// endomorphism with `(1,1,[1)) ↦ (p+s, p+s, ·)` fail.
///
/// For α the pair is `p + s(t+1) >= k(t+1)` and `k(t+1) - 1 >= p + st`;
/// for β the upper bound is `k(t+1) >= p + st`.
pub fn first_growth_failure(
    variant: Variant,
    k: i64,
    p: i64,
    s: i64,
    t_max: i64,
) -> Option<GrowthFailure> {
    let (k, p, s) = (i128::from(k), i128::from(p), i128::from(s));
    let slack = match variant {
        Variant::Alpha => 1,
        Variant::Beta => 0,
    };
    (1..=t_max).find_map(|t| {
        let t128 = i128::from(t);
        let kt1 = k * (t128 + 1);
        if p + s * (t128 + 1) < kt1 {
            Some(GrowthFailure::Lower { t })
        } else if kt1 - slack < p + s * t128 {
            Some(GrowthFailure::Upper { t })
        } else {
            None
        }
    })
}

pub fn check_growth_inequalities(variant: Variant, k: i64, p: i64, s: i64, t_max: i64) -> bool {
    first_growth_failure(variant, k, p, s, t_max).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64, j: i64, f: usize) -> Elem {
        Elem::new(i, j, f).unwrap()
    }

    fn a(k: i64, p: i64) -> InjEndo {
        InjEndo::alpha(k, p).unwrap()
    }

    fn b(k: i64, p: i64) -> InjEndo {
        InjEndo::beta(k, p).unwrap()
    }

    fn constraint(r: Result<InjEndo>) -> Constraint {
        match r {
            Err(AlgebraError::ParameterRange { constraint, .. }) => constraint,
            other => panic!("expected a range error, got {other:?}"),
        }
    }

    #[test]
    fn construction_ranges() {
        assert_eq!(a(2, 1).form(), EndoForm::new(Variant::Alpha, 2, 1));
        assert!(a(1, 0).is_identity());
        assert_eq!(
            constraint(InjEndo::alpha(2, 2)),
            Constraint::PExceedsKMinusOne
        );
        assert_eq!(
            constraint(InjEndo::alpha(0, 0)),
            Constraint::KTooSmall { min: 1 }
        );
        assert_eq!(constraint(InjEndo::alpha(3, -1)), Constraint::PNegative);
        assert_eq!(b(3, 2).form(), EndoForm::new(Variant::Beta, 3, 2));
        assert_eq!(constraint(InjEndo::beta(2, 0)), Constraint::PBelowOne);
        assert_eq!(
            constraint(InjEndo::beta(1, 0)),
            Constraint::KTooSmall { min: 2 }
        );
        assert_eq!(
            constraint(InjEndo::beta(3, 3)),
            Constraint::PExceedsKMinusOne
        );
    }

    #[test]
    fn apply_examples() {
        assert_eq!(a(2, 1).apply(e(3, 4, 1)).unwrap(), e(7, 9, 1));
        assert_eq!(b(3, 2).apply(e(1, 0, 1)).unwrap(), e(5, 2, 0));
        for x in [e(0, 0, 0), e(3, 1, 1), e(5, 9, 0)] {
            assert_eq!(InjEndo::identity().apply(x).unwrap(), x);
        }
        assert_eq!(
            a(2, 1).apply(e(0, 0, 2)),
            Err(AlgebraError::NonCanonicalFamily)
        );
        assert_eq!(
            a(3, 0).apply(e(i64::MAX / 2, 0, 0)),
            Err(AlgebraError::Overflow)
        );
    }

    #[test]
    fn compose_examples() {
        assert_eq!(a(2, 1).compose(&a(3, 2)).unwrap(), a(6, 5));
        assert_eq!(b(2, 1).compose(&b(3, 2)).unwrap(), b(6, 3));
        assert_eq!(a(2, 1).compose(&b(3, 2)).unwrap(), b(6, 5));
        assert_eq!(b(2, 1).compose(&a(3, 2)).unwrap(), b(6, 3));
        for x in [a(1, 0), a(4, 3), b(5, 2)] {
            assert_eq!(InjEndo::identity().compose(&x).unwrap(), x);
            assert_eq!(x.compose(&InjEndo::identity()).unwrap(), x);
        }
    }

    #[test]
    fn identity_is_the_only_self_square() {
        for k in 1..=8 {
            for p in 0..k {
                let x = a(k, p);
                assert_eq!(x.compose(&x).unwrap() == x, x.is_identity());
                if p >= 1 {
                    let y = b(k, p);
                    assert_ne!(y.compose(&y).unwrap(), y);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let img = |k, target_level, p| GeneratorImages { k, target_level, p };
        assert_eq!(classify_from_images(img(2, Level::One, 1)).unwrap(), a(2, 1));
        assert_eq!(classify_from_images(img(2, Level::Zero, 1)).unwrap(), b(2, 1));
        assert_eq!(
            constraint(classify_from_images(img(2, Level::One, 2))),
            Constraint::PExceedsKMinusOne
        );
        assert_eq!(
            constraint(classify_from_images(img(3, Level::Zero, 0))),
            Constraint::SharedIdentityImage
        );
        assert_eq!(
            constraint(classify_from_images(img(1, Level::Zero, 0))),
            Constraint::KTooSmall { min: 2 }
        );
    }

    #[test]
    fn homomorphism_check_examples() {
        assert!(is_endomorphism_on_truncation(a(2, 1).form(), 6)
            .unwrap()
            .holds());
        assert!(is_endomorphism_on_truncation(b(3, 2).form(), 6)
            .unwrap()
            .holds());
        let bad = EndoForm::new(Variant::Alpha, 2, 2);
        assert_eq!(
            is_endomorphism_on_truncation(bad, 6).unwrap(),
            HomCheck::Violated {
                x: e(0, 1, 0),
                y: e(0, 0, 1)
            }
        );
        // image of the product (0,2,[0)) against the product of images (0,2,[1))
        let s = BicyclicExtension::canonical();
        let (x, y) = (e(0, 1, 0), e(0, 0, 1));
        assert_eq!(bad.apply(s.mul(x, y).unwrap()).unwrap(), e(0, 2, 0));
        assert_eq!(
            s.mul(bad.apply(x).unwrap(), bad.apply(y).unwrap()).unwrap(),
            e(0, 2, 1)
        );
        // a later violation in enumeration order
        let (x, y) = (e(0, 0, 1), e(1, 0, 0));
        assert_ne!(
            bad.apply(s.mul(x, y).unwrap()).unwrap(),
            s.mul(bad.apply(x).unwrap(), bad.apply(y).unwrap()).unwrap()
        );
    }

    #[test]
    fn beta_with_offset_k_is_a_non_injective_homomorphism() {
        // (i,j,[1)) ↦ (k(i+1), k(j+1), [0)) is the image of (i+1,j+1,[0))
        for k in 1..=4 {
            let form = EndoForm::new(Variant::Beta, k, k);
            assert!(is_endomorphism_on_truncation(form, 10).unwrap().holds());
            assert_eq!(
                find_injectivity_violation(form, 2).unwrap(),
                Some((e(1, 1, 0), e(0, 0, 1)))
            );
        }
    }

    #[test]
    fn beta_with_zero_offset_is_not_injective() {
        let form = EndoForm::new(Variant::Beta, 3, 0);
        assert_eq!(
            find_injectivity_violation(form, 2).unwrap(),
            Some((e(0, 0, 0), e(0, 0, 1)))
        );
        assert_eq!(find_injectivity_violation(b(3, 1).form(), 4).unwrap(), None);
    }

    #[test]
    fn growth_examples() {
        assert!(check_growth_inequalities(Variant::Alpha, 3, 1, 3, 50));
        assert!(!check_growth_inequalities(Variant::Alpha, 3, 1, 2, 50));
        assert!(!check_growth_inequalities(Variant::Alpha, 3, 2, 4, 50));
        // hand evaluation at t = 1: 1 + 2·2 < 3·2
        assert_eq!(
            first_growth_failure(Variant::Alpha, 3, 1, 2, 50),
            Some(GrowthFailure::Lower { t: 1 })
        );
        // 3·2 - 1 < 2 + 4·1
        assert_eq!(
            first_growth_failure(Variant::Alpha, 3, 2, 4, 50),
            Some(GrowthFailure::Upper { t: 1 })
        );
        assert!(check_growth_inequalities(Variant::Beta, 3, 2, 3, 50));
    }

    #[test]
    fn endo_syntax() {
        assert_eq!("a:6,5".parse::<InjEndo>().unwrap(), a(6, 5));
        assert_eq!(" b : 3 , 2 ".parse::<InjEndo>().unwrap(), b(3, 2));
        assert!(matches!(
            "a:2,2".parse::<InjEndo>(),
            Err(ParseEndoError::Range(_))
        ));
        assert!(matches!(
            "c:2,1".parse::<InjEndo>(),
            Err(ParseEndoError::Syntax(_))
        ));
        assert!(matches!(
            "a:2".parse::<InjEndo>(),
            Err(ParseEndoError::Syntax(_))
        ));
        assert_eq!(b(4, 3).to_string(), "b:4,3");
    }
}
