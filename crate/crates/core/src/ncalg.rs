//! `GL_h(2)` and `SL_h(2)` as rewrite systems over [`RadScalar`].
//!
//! Generators are ordered `v < x < y < u`. A word is normal when its letters
//! are sorted (`v^a x^b y^c u^d`); in the SL ring the pattern `x y` is also
//! reducible, so normal SL words have `b·c = 0`.
//!
//! Two engines live here. The fast one multiplies a normal monomial by a
//! single generator with memoization and is used everywhere. The generic one
//! ([`rewrite_at`], [`reduce`]) applies single rule steps at explicit positions
//! and exists so confluence and termination can be checked independently.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{rat_int, RadScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    V,
    X,
    Y,
    U,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::V, Generator::X, Generator::Y, Generator::U];

    /// Termination weight: every correction term of a rule is strictly lighter.
    pub fn weight(self) -> u32 {
        match self {
            Generator::V => 1,
            Generator::X | Generator::Y => 2,
            Generator::U => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Generator::V => 'v',
            Generator::X => 'x',
            Generator::Y => 'y',
            Generator::U => 'u',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'v' => Some(Generator::V),
            'x' => Some(Generator::X),
            'y' => Some(Generator::Y),
            'u' => Some(Generator::U),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

pub type Word = Vec<Generator>;

pub fn word(s: &str) -> Word {
    s.chars()
        .map(|c| Generator::from_letter(c).unwrap_or_else(|| panic!("not a generator: {c}")))
        .collect()
}

pub fn parse_word(s: &str) -> Option<Word> {
    s.chars().map(Generator::from_letter).collect()
}

pub fn word_string(w: &[Generator]) -> String {
    w.iter().map(|g| g.letter()).collect()
}

pub fn word_weight(w: &[Generator]) -> u32 {
    w.iter().map(|g| g.weight()).sum()
}

/// Termination measure: total weight, then lexicographic order.
pub fn measure(w: &[Generator]) -> (u32, &[Generator]) {
    (word_weight(w), w)
}

/// A sorted word `v^a x^b y^c u^d`, stored by exponents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; 4],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(v: u32, x: u32, y: u32, u: u32) -> Self {
        Self { exps: [v, x, y, u] }
    }

    pub fn generator(g: Generator) -> Self {
        let mut m = Self::one();
        m.exps[g.index()] = 1;
        m
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.exps[g.index()]
    }

    pub fn exps(&self) -> [u32; 4] {
        self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weight(&self) -> u32 {
        Generator::ALL
            .iter()
            .map(|g| g.weight() * self.exponent(*g))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    pub fn letters(&self) -> impl Iterator<Item = Generator> + '_ {
        Generator::ALL
            .iter()
            .flat_map(move |&g| std::iter::repeat_n(g, self.exponent(g) as usize))
    }

    pub fn to_word(&self) -> Word {
        self.letters().collect()
    }

    pub fn last(&self) -> Option<Generator> {
        Generator::ALL
            .iter()
            .rev()
            .copied()
            .find(|g| self.exponent(*g) > 0)
    }

    fn without_last(&self) -> Self {
        let mut m = *self;
        if let Some(g) = self.last() {
            m.exps[g.index()] -= 1;
        }
        m
    }

    fn appended(&self, g: Generator) -> Self {
        let mut m = *self;
        m.exps[g.index()] += 1;
        m
    }

    /// Whether the sorted word is irreducible in `ring`.
    pub fn is_normal_in(&self, ring: Ring) -> bool {
        ring == Ring::Gl || self.exponent(Generator::X) == 0 || self.exponent(Generator::Y) == 0
    }
}

fn lex_cmp(a: &[u32; 4], b: &[u32; 4]) -> Ordering {
    for i in 0..4 {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            Ordering::Greater => {
                // a holds letter i where b holds a larger letter, or b has ended
                return if b[i + 1..].iter().any(|&e| e > 0) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
            Ordering::Less => {
                return if a[i + 1..].iter().any(|&e| e > 0) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| lex_cmp(&self.exps, &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_string(&self.to_word()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Gl,
    Sl,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Gl => "gl",
            Ring::Sl => "sl",
        })
    }
}

type RuleRhs = Vec<(Word, RadScalar)>;

/// Right-hand side replacing the adjacent pair `left right`, if it is a redex.
pub fn rule(ring: Ring, left: Generator, right: Generator) -> Option<RuleRhs> {
    use Generator::*;
    let h = || RadScalar::h();
    let mh = || -RadScalar::h();
    let mh2 = || RadScalar::h_pow(rat_int(-1), 2);
    let one = RadScalar::one;
    let rhs = match (left, right) {
        (X, V) => vec![(word("vx"), one()), (word("vv"), mh())],
        (Y, V) => vec![(word("vy"), one()), (word("vv"), mh())],
        (U, V) => vec![(word("vu"), one()), (word("xv"), mh()), (word("vy"), mh())],
        (Y, X) => vec![(word("xy"), one()), (word("xv"), mh()), (word("yv"), h())],
        // ux = xu + h(xy - uv - h xv - x^2)
        (U, X) => vec![
            (word("xu"), one()),
            (word("xy"), h()),
            (word("uv"), mh()),
            (word("xv"), mh2()),
            (word("xx"), mh()),
        ],
        (U, Y) => vec![
            (word("yu"), one()),
            (word("xy"), h()),
            (word("uv"), mh()),
            (word("xv"), mh2()),
            (word("yy"), mh()),
        ],
        // D = 1 normal ordered: xy = 1 + vu - h vy
        (X, Y) if ring == Ring::Sl => {
            vec![(Word::new(), one()), (word("vu"), one()), (word("vy"), mh())]
        }
        _ => return None,
    };
    Some(rhs)
}

pub type Terms = Rc<Vec<(Monomial, RadScalar)>>;

thread_local! {
    static GEN_MEMO: RefCell<HashMap<(Ring, Monomial, Generator), Terms>> = RefCell::new(HashMap::new());
    static MONO_MEMO: RefCell<HashMap<(Ring, Monomial, Monomial), Terms>> = RefCell::new(HashMap::new());
}

fn accumulate(acc: &mut BTreeMap<Monomial, RadScalar>, m: Monomial, c: &RadScalar) {
    if let Some(entry) = acc.get_mut(&m) {
        *entry += c;
        if entry.is_zero() {
            acc.remove(&m);
        }
    } else if !c.is_zero() {
        acc.insert(m, c.clone());
    }
}

fn accumulate_owned(acc: &mut BTreeMap<Monomial, RadScalar>, m: Monomial, c: RadScalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += &c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Normal form of `m · g` for a normal monomial `m`.
fn mono_times_gen(ring: Ring, m: Monomial, g: Generator) -> Terms {
    if let Some(hit) = GEN_MEMO.with(|c| c.borrow().get(&(ring, m, g)).cloned()) {
        return hit;
    }
    let result: Vec<(Monomial, RadScalar)> = match m.last() {
        None => vec![(Monomial::generator(g), RadScalar::one())],
        Some(last) if last <= g => {
            match rule(ring, last, g) {
                // only the SL pair x·y is an ascending redex
                Some(rhs) => expand(ring, m.without_last(), &rhs),
                None => vec![(m.appended(g), RadScalar::one())],
            }
        }
        Some(last) => {
            let rhs = rule(ring, last, g).expect("descending pairs are always redexes");
            expand(ring, m.without_last(), &rhs)
        }
    };
    let result = Rc::new(result);
    GEN_MEMO.with(|c| c.borrow_mut().insert((ring, m, g), result.clone()));
    result
}

fn expand(ring: Ring, prefix: Monomial, rhs: &[(Word, RadScalar)]) -> Vec<(Monomial, RadScalar)> {
    let mut acc = BTreeMap::new();
    for (w, c) in rhs {
        for (m, d) in mono_times_word(ring, prefix, w) {
            accumulate_owned(&mut acc, m, c * &d);
        }
    }
    acc.into_iter().collect()
}

fn mono_times_word(ring: Ring, m: Monomial, w: &[Generator]) -> BTreeMap<Monomial, RadScalar> {
    let mut cur = BTreeMap::new();
    cur.insert(m, RadScalar::one());
    for &g in w {
        let mut next = BTreeMap::new();
        for (mono, c) in &cur {
            for (out, d) in mono_times_gen(ring, *mono, g).iter() {
                accumulate_owned(&mut next, *out, c * d);
            }
        }
        cur = next;
    }
    cur
}

/// Normal form of the product `a·b`, memoized per thread.
pub fn mono_times_mono(ring: Ring, a: Monomial, b: Monomial) -> Terms {
    if b.is_one() {
        return Rc::new(vec![(a, RadScalar::one())]);
    }
    if let Some(hit) = MONO_MEMO.with(|c| c.borrow().get(&(ring, a, b)).cloned()) {
        return hit;
    }
    let result = Rc::new(mono_times_word(ring, a, &b.to_word()).into_iter().collect::<Vec<_>>());
    MONO_MEMO.with(|c| c.borrow_mut().insert((ring, a, b), result.clone()));
    result
}

/// Element of `GL_h(2)` or `SL_h(2)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, RadScalar>,
}

impl NCPoly {
    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::scalar(ring, RadScalar::one())
    }

    pub fn scalar(ring: Ring, s: RadScalar) -> Self {
        let mut p = Self::zero(ring);
        accumulate(&mut p.terms, Monomial::one(), &s);
        p
    }

    pub fn generator(ring: Ring, g: Generator) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::generator(g), RadScalar::one());
        p
    }

    pub fn x(ring: Ring) -> Self {
        Self::generator(ring, Generator::X)
    }
    pub fn y(ring: Ring) -> Self {
        Self::generator(ring, Generator::Y)
    }
    pub fn u(ring: Ring) -> Self {
        Self::generator(ring, Generator::U)
    }
    pub fn v(ring: Ring) -> Self {
        Self::generator(ring, Generator::V)
    }

    /// Normal form of a linear combination of arbitrary words.
    pub fn from_words<'a, I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [Generator], RadScalar)>,
    {
        let mut acc = BTreeMap::new();
        for (w, c) in terms {
            for (m, d) in mono_times_word(ring, Monomial::one(), w) {
                accumulate(&mut acc, m, &(&c * &d));
            }
        }
        Self { ring, terms: acc }
    }

    /// Build from normal monomials directly. Panics on SL-reducible input.
    pub fn from_monomials<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, RadScalar)>,
    {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            assert!(m.is_normal_in(ring), "monomial {m} is not normal in {ring}");
            accumulate(&mut acc, m, &c);
        }
        Self { ring, terms: acc }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (weight, lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RadScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> RadScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Common degree of all terms, if there is one. Zero is homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Some(None),
            Some(d) => degrees.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn scale(&self, s: &RadScalar) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            accumulate(&mut out.terms, *m, &(c * s));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, *m, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_ring(other)?;
        let mut acc = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coef = ca * cb;
                for (m, d) in mono_times_mono(self.ring, *a, *b).iter() {
                    accumulate_owned(&mut acc, *m, &coef * d);
                }
            }
        }
        Ok(Self {
            ring: self.ring,
            terms: acc,
        })
    }

    fn check_ring(&self, other: &Self) -> Result<(), Error> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            accumulate(&mut out.terms, *m, &c.specialize(h, g));
        }
        out
    }

    /// Image under the quotient map `GL_h(2) → SL_h(2)`.
    pub fn to_sl(&self) -> Self {
        match self.ring {
            Ring::Sl => self.clone(),
            Ring::Gl => {
                let words: Vec<(Word, RadScalar)> =
                    self.terms.iter().map(|(m, c)| (m.to_word(), c.clone())).collect();
                Self::from_words(Ring::Sl, words.iter().map(|(w, c)| (w.as_slice(), c.clone())))
            }
        }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(&-rhs).expect("ring mismatch in subtraction")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exprio::to_text(self))
    }
}

/// Normal form of a sequence of weighted words.
pub fn normal_form(terms: &[(Word, RadScalar)], ring: Ring) -> NCPoly {
    NCPoly::from_words(ring, terms.iter().map(|(w, c)| (w.as_slice(), c.clone())))
}

/// `xy − uv − hxv`, normal ordered in `ring`.
pub fn quantum_determinant(ring: Ring) -> NCPoly {
    normal_form(&determinant_words(), ring)
}

/// The determinant as raw words, before any reordering.
pub fn determinant_words() -> Vec<(Word, RadScalar)> {
    vec![
        (word("xy"), RadScalar::one()),
        (word("uv"), RadScalar::from_int(-1)),
        (word("xv"), -RadScalar::h()),
    ]
}

/// The six defining relations `lhs − rhs` of `GL_h(2)`, as raw words.
pub fn defining_relations() -> Vec<(&'static str, Vec<(Word, RadScalar)>)> {
    let h = RadScalar::h;
    let one = RadScalar::one;
    let m1 = || RadScalar::from_int(-1);
    let det = |scale: RadScalar| -> Vec<(Word, RadScalar)> {
        determinant_words()
            .into_iter()
            .map(|(w, c)| (w, &c * &scale))
            .collect()
    };
    let mut out = Vec::new();
    // [v,x] - h v^2
    out.push((
        "[v,x] = h v^2",
        vec![(word("vx"), one()), (word("xv"), m1()), (word("vv"), -h())],
    ));
    let mut ux = vec![(word("ux"), one()), (word("xu"), m1()), (word("xx"), h())];
    ux.extend(det(-h()));
    out.push(("[u,x] = h(D - x^2)", ux));
    out.push((
        "[v,y] = h v^2",
        vec![(word("vy"), one()), (word("yv"), m1()), (word("vv"), -h())],
    ));
    let mut uy = vec![(word("uy"), one()), (word("yu"), m1()), (word("yy"), h())];
    uy.extend(det(-h()));
    out.push(("[u,y] = h(D - y^2)", uy));
    out.push((
        "[x,y] = h(xv - yv)",
        vec![
            (word("xy"), one()),
            (word("yx"), m1()),
            (word("xv"), -h()),
            (word("yv"), h()),
        ],
    ));
    out.push((
        "[v,u] = h(xv + vy)",
        vec![
            (word("vu"), one()),
            (word("uv"), m1()),
            (word("xv"), -h()),
            (word("vy"), -h()),
        ],
    ));
    out
}

/// Positions `i` at which `w[i] w[i+1]` is a redex.
pub fn redex_positions(ring: Ring, w: &[Generator]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| rule(ring, w[i], w[i + 1]).is_some())
        .collect()
}

/// One rewrite step at position `pos`.
pub fn rewrite_at(ring: Ring, w: &[Generator], pos: usize) -> Option<Vec<(Word, RadScalar)>> {
    let rhs = rule(ring, *w.get(pos)?, *w.get(pos + 1)?)?;
    Some(
        rhs.into_iter()
            .map(|(mid, c)| {
                let mut out = w[..pos].to_vec();
                out.extend(mid);
                out.extend_from_slice(&w[pos + 2..]);
                (out, c)
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Reduce by repeated single steps, independent of the memoized engine.
pub fn reduce(ring: Ring, terms: Vec<(Word, RadScalar)>, strategy: RewriteOrder) -> NCPoly {
    let mut pending: BTreeMap<(u32, Word), RadScalar> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<(u32, Word), RadScalar>, w: Word, c: &RadScalar| {
        let key = (word_weight(&w), w);
        let entry = pending.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            pending.remove(&key);
        }
    };
    for (w, c) in terms {
        push(&mut pending, w, &c);
    }
    let mut done = BTreeMap::new();
    // heaviest first: every step only creates strictly lighter words
    while let Some(((_, w), c)) = pending.pop_last() {
        let redexes = redex_positions(ring, &w);
        let pos = match strategy {
            RewriteOrder::Leftmost => redexes.first(),
            RewriteOrder::Rightmost => redexes.last(),
        };
        match pos {
            None => {
                let mut m = Monomial::one();
                for g in &w {
                    m = m.appended(*g);
                }
                accumulate(&mut done, m, &c);
            }
            Some(&p) => {
                for (nw, d) in rewrite_at(ring, &w, p).expect("redex") {
                    push(&mut pending, nw, &(&c * &d));
                }
            }
        }
    }
    NCPoly { ring, terms: done }
}

/// Number of irreducible words of the given length in the GL ring.
pub fn count_normal_words(degree: u32) -> u64 {
    all_words(degree as usize)
        .filter(|w| redex_positions(Ring::Gl, w).is_empty())
        .count() as u64
}

/// Every word of exactly `len` letters.
pub fn all_words(len: usize) -> impl Iterator<Item = Word> {
    let total = 4usize.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut w = Vec::with_capacity(len);
        for _ in 0..len {
            w.push(Generator::ALL[code % 4]);
            code /= 4;
        }
        w
    })
}

/// Counterexample to local confluence: a word and two disagreeing reducts.
#[derive(Clone, Debug)]
pub struct ConfluenceFailure {
    pub word: Word,
    pub first: NCPoly,
    pub second: NCPoly,
}

/// For every word up to `max_len` letters, every one-step reduct followed by
/// either strategy must reach the memoized normal form.
pub fn check_confluence(ring: Ring, max_len: usize) -> Result<usize, ConfluenceFailure> {
    let mut checked = 0;
    for len in 0..=max_len {
        for w in all_words(len) {
            let reference = normal_form(&[(w.clone(), RadScalar::one())], ring);
            for pos in redex_positions(ring, &w) {
                let step = rewrite_at(ring, &w, pos).expect("redex");
                for strategy in [RewriteOrder::Leftmost, RewriteOrder::Rightmost] {
                    let got = reduce(ring, step.clone(), strategy);
                    if got != reference {
                        return Err(ConfluenceFailure {
                            word: w,
                            first: reference,
                            second: got,
                        });
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn nf(ring: Ring, s: &str) -> NCPoly {
        normal_form(&[(word(s), RadScalar::one())], ring)
    }

    fn poly(ring: Ring, terms: &[(&str, RadScalar)]) -> NCPoly {
        let ts: Vec<(Word, RadScalar)> = terms.iter().map(|(w, c)| (word(w), c.clone())).collect();
        normal_form(&ts, ring)
    }

    #[test]
    fn xv_reorders() {
        let expect = NCPoly::from_monomials(
            Ring::Gl,
            [
                (Monomial::new(1, 1, 0, 0), RadScalar::one()),
                (Monomial::new(2, 0, 0, 0), -RadScalar::h()),
            ],
        );
        assert_eq!(nf(Ring::Gl, "xv"), expect);
        assert_eq!(nf(Ring::Gl, "x"), NCPoly::x(Ring::Gl));
        assert_eq!(&NCPoly::x(Ring::Gl) * &NCPoly::v(Ring::Gl), expect);
    }

    #[test]
    fn determinant_in_both_rings() {
        assert_eq!(quantum_determinant(Ring::Sl), NCPoly::one(Ring::Sl));
        // GL: xy - vu + h vy
        let gl = poly(
            Ring::Gl,
            &[("xy", RadScalar::one()), ("vu", RadScalar::from_int(-1)), ("vy", RadScalar::h())],
        );
        assert_eq!(quantum_determinant(Ring::Gl), gl);
        let classical = quantum_determinant(Ring::Gl).specialize(Some(&rat(0, 1)), None);
        assert_eq!(
            classical,
            poly(Ring::Gl, &[("xy", RadScalar::one()), ("vu", RadScalar::from_int(-1))])
        );
    }

    #[test]
    fn determinant_is_central() {
        let d = quantum_determinant(Ring::Gl);
        for g in Generator::ALL {
            let gp = NCPoly::generator(Ring::Gl, g);
            assert!((&(&d * &gp) - &(&gp * &d)).is_zero(), "D does not commute with {g:?}");
        }
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = NCPoly::x(Ring::Gl);
        let b = NCPoly::x(Ring::Sl);
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(Ring::Gl, Ring::Sl))));
        let one = NCPoly::one(Ring::Gl);
        assert_eq!(&one * &a, a);
    }

    #[test]
    fn normal_word_counts() {
        assert_eq!(count_normal_words(0), 1);
        assert_eq!(count_normal_words(1), 4);
        assert_eq!(count_normal_words(3), 20);
        for n in 0..=6u64 {
            let binom = (n + 1) * (n + 2) * (n + 3) / 6;
            assert_eq!(count_normal_words(n as u32), binom);
        }
    }

    #[test]
    fn rules_decrease_measure() {
        for ring in [Ring::Gl, Ring::Sl] {
            for l in Generator::ALL {
                for r in Generator::ALL {
                    if let Some(rhs) = rule(ring, l, r) {
                        let lhs = vec![l, r];
                        for (w, _) in rhs {
                            assert!(measure(&w) < measure(&lhs), "{w:?} vs {lhs:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn confluence_short_words() {
        for ring in [Ring::Gl, Ring::Sl] {
            if let Err(f) = check_confluence(ring, 3) {
                panic!("{ring}: {:?} gives {} vs {}", f.word, f.first, f.second);
            }
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=max)
    }

    proptest! {
        #[test]
        fn every_step_decreases_measure(w in arb_word(6), ring in prop::sample::select(vec![Ring::Gl, Ring::Sl])) {
            for pos in redex_positions(ring, &w) {
                for (nw, _) in rewrite_at(ring, &w, pos).unwrap() {
                    prop_assert!(measure(&nw) < measure(&w));
                }
            }
        }

        #[test]
        fn engines_agree(w in arb_word(6), ring in prop::sample::select(vec![Ring::Gl, Ring::Sl])) {
            let fast = normal_form(&[(w.clone(), RadScalar::one())], ring);
            let slow = reduce(ring, vec![(w, RadScalar::one())], RewriteOrder::Rightmost);
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn multiplication_is_associative(a in arb_word(3), b in arb_word(3), c in arb_word(3)) {
            let p = |w: &Word| normal_form(&[(w.clone(), RadScalar::one())], Ring::Sl);
            let (pa, pb, pc) = (p(&a), p(&b), p(&c));
            prop_assert_eq!(&(&pa * &pb) * &pc, &pa * &(&pb * &pc));
        }
    }
}
