//! Exact coefficient arithmetic.
//!
//! Three layers: [`Rational`] (arbitrary precision), [`DeformPoly`] (polynomials
//! in the deformation parameters `h` and `g` with rational coefficients) and
//! [`RadScalar`], a finite sum `Σ p_n(h, g) · √n` over squarefree radicands `n`.
//! Every value is kept in canonical form, so structural equality is
//! mathematical equality.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` text, always with an explicit denominator.
pub fn rational_to_text(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_text(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Decode(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Decode(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Exponent pair `(power of h, power of g)`.
pub type Exps = (u32, u32);

// Integer fast paths: Ratio's general operations run gcds even when both
// denominators are 1, which dominates normal ordering.
fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn rat_add_assign(a: &mut Rational, b: &Rational) {
    if a.is_integer() && b.is_integer() {
        *a = Rational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

/// Largest radicand accepted from external input; keeps factoring cheap.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;
/// Largest `h`/`g` exponent accepted from external input.
pub const MAX_DEFORM_EXPONENT: u32 = 1024;

/// Polynomial in `h` and `g` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeformPoly {
    terms: BTreeMap<Exps, Rational>,
}

impl DeformPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::monomial(q, 0, 0)
    }

    pub fn monomial(q: Rational, h_pow: u32, g_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((h_pow, g_pow), q);
        }
        Self { terms }
    }

    pub fn h() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn g() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn g_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, g)| g).max().unwrap_or(0)
    }

    /// Total degree in `h` and `g`.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(h, g)| h + g).max().unwrap_or(0)
    }

    /// The constant coefficient if the polynomial has no `h` or `g`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Exps, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        rat_add_assign(entry, &q);
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, rat_mul(c, q))).collect(),
        }
    }

    /// Substitute numbers for `h` and/or `g`; `None` leaves the symbol in place.
    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        let mut out = Self::zero();
        for (&(hp, gp), c) in &self.terms {
            let mut q = c.clone();
            let mut exps = (hp, gp);
            if let Some(hv) = h {
                q *= pow_rational(hv, hp);
                exps.0 = 0;
            }
            if let Some(gv) = g {
                q *= pow_rational(gv, gp);
                exps.1 = 0;
            }
            out.add_term(exps, q);
        }
        out
    }
}

fn pow_rational(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

impl Add<&DeformPoly> for &DeformPoly {
    type Output = DeformPoly;
    fn add(self, rhs: &DeformPoly) -> DeformPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&DeformPoly> for DeformPoly {
    fn add_assign(&mut self, rhs: &DeformPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &DeformPoly {
    type Output = DeformPoly;
    fn neg(self) -> DeformPoly {
        DeformPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul<&DeformPoly> for &DeformPoly {
    type Output = DeformPoly;
    fn mul(self, rhs: &DeformPoly) -> DeformPoly {
        let mut out = DeformPoly::zero();
        for (&(h1, g1), c1) in &self.terms {
            for (&(h2, g2), c2) in &rhs.terms {
                out.add_term((h1 + h2, g1 + g2), rat_mul(c1, c2));
            }
        }
        out
    }
}

/// Squarefree decomposition `n = s² · r`, returned as `(s, r)`.
fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut radicand = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        if count % 2 == 1 {
            radicand *= &p;
        }
        p += 1u32;
    }
    radicand *= rest;
    (square, radicand)
}

/// Whether every pairwise product of squarefree radicands from `a` and `b`
/// reduces to a radicand that fits in `u64`.
pub fn radicand_products_fit(a: impl IntoIterator<Item = u64>, b: impl IntoIterator<Item = u64>) -> bool {
    let a: BTreeSet<u64> = a.into_iter().collect();
    let b: BTreeSet<u64> = b.into_iter().collect();
    a.iter().all(|&r1| {
        b.iter().all(|&r2| {
            let g = r1.gcd(&r2);
            (r1 / g).checked_mul(r2 / g).is_some()
        })
    })
}

/// Exact element of `⊕_n Q[h, g] · √n`, `n` squarefree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RadScalarRepr", into = "RadScalarRepr")]
pub struct RadScalar {
    terms: BTreeMap<u64, DeformPoly>,
}

impl RadScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(DeformPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_poly(DeformPoly::constant(q))
    }

    pub fn from_poly(p: DeformPoly) -> Self {
        Self::with_radical(p, 1)
    }

    /// `p · √radicand` where `radicand` is already squarefree.
    fn with_radical(p: DeformPoly, radicand: u64) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() && radicand != 0 {
            terms.insert(radicand, p);
        }
        Self { terms }
    }

    pub fn h() -> Self {
        Self::from_poly(DeformPoly::h())
    }

    pub fn g() -> Self {
        Self::from_poly(DeformPoly::g())
    }

    /// `q · h^i`, the shape of almost every coefficient in the rewrite rules.
    pub fn h_pow(q: Rational, i: u32) -> Self {
        Self::from_poly(DeformPoly::monomial(q, i, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|p| p.as_constant().is_some_and(|q| q.is_one()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &DeformPoly)> {
        self.terms.iter().map(|(r, p)| (*r, p))
    }

    /// The value as a rational polynomial, when no radical is present.
    pub fn as_poly(&self) -> Option<DeformPoly> {
        match self.terms.len() {
            0 => Some(DeformPoly::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn g_degree(&self) -> u32 {
        self.terms.values().map(DeformPoly::g_degree).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.values().map(DeformPoly::degree).max().unwrap_or(0)
    }

    /// Squarefree radicands carried by the nonzero terms.
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    /// Whether `self * other` stays within the `u64` radicand range.
    pub fn product_fits(&self, other: &Self) -> bool {
        radicand_products_fit(self.radicands(), other.radicands())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(r, p)| (*r, p.scale(q))).collect(),
        }
    }

    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        let mut out = Self::zero();
        for (&r, p) in &self.terms {
            out.add_radical_term(r, p.specialize(h, g));
        }
        out
    }

    fn add_radical_term(&mut self, radicand: u64, p: DeformPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(radicand) {
            Entry::Vacant(slot) => {
                slot.insert(p);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &p;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

/// Exact `√n` with the square part pulled out; `sqrt_nat(0) = 0`.
pub fn sqrt_nat(n: u64) -> RadScalar {
    sqrt_big(&BigUint::from(n))
}

/// Exact `√n` for an arbitrary-precision natural.
///
/// Panics if the squarefree part of `n` does not fit in `u64`; every radicand
/// arising from factorial normalizations is far below that.
pub fn sqrt_big(n: &BigUint) -> RadScalar {
    if n.is_zero() {
        return RadScalar::zero();
    }
    let (square, radicand) = square_split(n);
    let radicand = radicand
        .to_u64()
        .expect("squarefree part of radicand exceeds u64");
    RadScalar::with_radical(
        DeformPoly::constant(Rational::from_integer(BigInt::from(square))),
        radicand,
    )
}

/// Exact `√q` for a non-negative rational, as `√(p·d) / d`.
pub fn sqrt_rational(q: &Rational) -> RadScalar {
    assert!(!q.is_negative(), "square root of a negative rational");
    let n = q.numer().to_biguint().expect("non-negative");
    let d = q.denom().to_biguint().expect("positive");
    let root = sqrt_big(&(n * &d));
    root.scale(&Rational::new(BigInt::one(), BigInt::from(d)))
}

impl From<i64> for RadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for RadScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<DeformPoly> for RadScalar {
    fn from(p: DeformPoly) -> Self {
        Self::from_poly(p)
    }
}

impl AddAssign<&RadScalar> for RadScalar {
    fn add_assign(&mut self, rhs: &RadScalar) {
        for (&r, p) in &rhs.terms {
            self.add_radical_term(r, p.clone());
        }
    }
}

impl SubAssign<&RadScalar> for RadScalar {
    fn sub_assign(&mut self, rhs: &RadScalar) {
        for (&r, p) in &rhs.terms {
            self.add_radical_term(r, -p);
        }
    }
}

impl Add<&RadScalar> for &RadScalar {
    type Output = RadScalar;
    fn add(self, rhs: &RadScalar) -> RadScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RadScalar {
    type Output = RadScalar;
    fn add(mut self, rhs: RadScalar) -> RadScalar {
        self += &rhs;
        self
    }
}

impl Sub<&RadScalar> for &RadScalar {
    type Output = RadScalar;
    fn sub(self, rhs: &RadScalar) -> RadScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for RadScalar {
    type Output = RadScalar;
    fn sub(mut self, rhs: RadScalar) -> RadScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &RadScalar {
    type Output = RadScalar;
    fn neg(self) -> RadScalar {
        RadScalar {
            terms: self.terms.iter().map(|(r, p)| (*r, -p)).collect(),
        }
    }
}

impl Neg for RadScalar {
    type Output = RadScalar;
    fn neg(self) -> RadScalar {
        -&self
    }
}

impl Mul<&RadScalar> for &RadScalar {
    type Output = RadScalar;
    fn mul(self, rhs: &RadScalar) -> RadScalar {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = RadScalar::zero();
        for (&r1, p1) in &self.terms {
            for (&r2, p2) in &rhs.terms {
                // √a·√b = g·√((a/g)(b/g)) for squarefree a, b with g = gcd(a, b)
                let g = r1.gcd(&r2);
                let radicand = (r1 / g)
                    .checked_mul(r2 / g)
                    .expect("radicand overflow");
                let prod = p1 * p2;
                let prod = if g == 1 { prod } else { prod.scale(&rat_int(g as i64)) };
                out.add_radical_term(radicand, prod);
            }
        }
        out
    }
}

impl Mul for RadScalar {
    type Output = RadScalar;
    fn mul(self, rhs: RadScalar) -> RadScalar {
        &self * &rhs
    }
}

impl fmt::Display for RadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exprio::scalar_text(self))
    }
}

#[derive(Serialize, Deserialize)]
struct MonoRepr {
    h: u32,
    g: u32,
    q: String,
}

#[derive(Serialize, Deserialize)]
struct RadTermRepr {
    rad: u64,
    poly: Vec<MonoRepr>,
}

#[derive(Serialize, Deserialize)]
struct RadScalarRepr {
    terms: Vec<RadTermRepr>,
}

impl From<RadScalar> for RadScalarRepr {
    fn from(s: RadScalar) -> Self {
        RadScalarRepr {
            terms: s
                .terms
                .iter()
                .map(|(&rad, p)| RadTermRepr {
                    rad,
                    poly: p
                        .terms
                        .iter()
                        .map(|(&(h, g), q)| MonoRepr {
                            h,
                            g,
                            q: rational_to_text(q),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<RadScalarRepr> for RadScalar {
    type Error = Error;

    fn try_from(repr: RadScalarRepr) -> Result<Self, Error> {
        let mut out = RadScalar::zero();
        for term in repr.terms {
            if term.rad == 0 {
                continue;
            }
            if term.rad > MAX_RADICAND {
                return Err(Error::Decode(format!("radicand {} exceeds {MAX_RADICAND}", term.rad)));
            }
            let mut poly = DeformPoly::zero();
            for m in term.poly {
                if m.h > MAX_DEFORM_EXPONENT || m.g > MAX_DEFORM_EXPONENT {
                    return Err(Error::Decode(format!("exponent exceeds {MAX_DEFORM_EXPONENT}")));
                }
                poly.add_term((m.h, m.g), rational_from_text(&m.q)?);
            }
            // Non-squarefree radicands are accepted and normalized.
            out += &(&sqrt_nat(term.rad) * &RadScalar::from_poly(poly));
        }
        Ok(out)
    }
}

impl RadScalar {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("RadScalar serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Decode(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s2() -> RadScalar {
        sqrt_nat(2)
    }

    #[test]
    fn add_examples() {
        let a = &s2() + &RadScalar::h();
        assert_eq!(&a + &(-s2()), RadScalar::h());
        let s = &RadScalar::h() * &s2();
        assert_eq!(&RadScalar::zero() + &s, s);
        let one_plus_h = &RadScalar::one() + &RadScalar::h();
        let one_minus_h = &RadScalar::one() - &RadScalar::h();
        assert_eq!(&one_plus_h + &one_minus_h, RadScalar::from_int(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s2() * &s2(), RadScalar::from_int(2));
        assert_eq!(&sqrt_nat(6) * &sqrt_nat(3), RadScalar::from_int(3) * s2());
        let one_plus_h = &RadScalar::one() + &RadScalar::h();
        let one_minus_h = &RadScalar::one() - &RadScalar::h();
        let expect = &RadScalar::one() - &RadScalar::h_pow(rat_int(1), 2);
        assert_eq!(&one_plus_h * &one_minus_h, expect);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_nat(8), RadScalar::from_int(2) * s2());
        assert_eq!(sqrt_nat(0), RadScalar::zero());
        assert_eq!(sqrt_nat(12), RadScalar::from_int(2) * sqrt_nat(3));
        assert_eq!(sqrt_nat(1), RadScalar::one());
        assert_eq!(sqrt_rational(&rat(1, 2)), s2().scale(&rat(1, 2)));
    }

    #[test]
    fn specialize_examples() {
        let h = RadScalar::h();
        let p = &(&RadScalar::one() + &(&h * &RadScalar::from_int(2))) + &(&h * &h);
        assert_eq!(p.specialize(Some(&rat_int(0)), None), RadScalar::one());
        let q = &h * &s2();
        assert_eq!(q.specialize(Some(&rat(1, 2)), None), s2().scale(&rat(1, 2)));
        assert_eq!(q.specialize(None, None), q);
    }

    #[test]
    fn json_shape() {
        let s = &(&RadScalar::h() * &s2()) + &RadScalar::from_rational(rat(-3, 4));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"rad":1,"poly":[{"h":0,"g":0,"q":"-3/4"}]},{"rad":2,"poly":[{"h":1,"g":0,"q":"1/1"}]}]}"#
        );
        assert_eq!(RadScalar::from_json_str(&json).unwrap(), s);
        // non-squarefree radicands normalize on decode
        let eight = r#"{"terms":[{"rad":8,"poly":[{"h":0,"g":0,"q":"1"}]}]}"#;
        assert_eq!(RadScalar::from_json_str(eight).unwrap(), sqrt_nat(8));
        assert!(RadScalar::from_json_str(r#"{"terms":[{"rad":2,"poly":[{"h":0,"g":0,"q":"1/0"}]}]}"#).is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = RadScalar> {
        let mono = (-5i64..=5, 1i64..=4, 0u32..3, 0u32..2, prop::sample::select(vec![1u64, 2, 3, 5, 6, 8, 12]));
        prop::collection::vec(mono, 0..4).prop_map(|ms| {
            let mut s = RadScalar::zero();
            for (n, d, hp, gp, r) in ms {
                let p = DeformPoly::monomial(rat(n, d), hp, gp);
                s += &(&sqrt_nat(r) * &RadScalar::from_poly(p));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn json_round_trip(a in arb_scalar()) {
            let text = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(RadScalar::from_json_str(&text).unwrap(), a);
        }
    }

    #[test]
    fn sqrt_is_multiplicative() {
        for a in 0..=100u64 {
            for b in 0..=100u64 {
                assert_eq!(&sqrt_nat(a) * &sqrt_nat(b), sqrt_nat(a * b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn distinct_radicals_are_independent() {
        // a zero combination must be componentwise zero
        let x = &sqrt_nat(2) - &sqrt_nat(3);
        assert!(!x.is_zero());
        assert_eq!(x.terms().count(), 2);
    }
}
