//! Coproduct and counit, and executable checks of the corepresentation,
//! product-law, recurrence, orthogonality and RTT identities.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dfun::{dmatrix, DMatrix, Scheme};
use crate::error::Error;
use crate::exprio;
use crate::ncalg::{self, mono_times_mono, Generator, Monomial, NCPoly, Ring, Word};
use crate::rep::{self, f_inv_matrix, f_matrix, r_matrix, CgcTable, Spin};
use crate::scalar::{self, RadScalar, Rational};

/// Element of `A ⊗ A`, both slots in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    ring: Ring,
    terms: BTreeMap<(Monomial, Monomial), RadScalar>,
}

impl TensorPoly {
    pub fn zero(ring: Ring) -> Self {
        TensorPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        let mut t = Self::zero(ring);
        t.add_term(Monomial::one(), Monomial::one(), &RadScalar::one());
        t
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &NCPoly, b: &NCPoly) -> Self {
        let mut t = Self::zero(a.ring());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(*ma, *mb, &(ca * cb));
            }
        }
        t
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &RadScalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, a: Monomial, b: Monomial, c: &RadScalar) {
        let e = self.terms.entry((a, b)).or_insert_with(RadScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, &-c);
        }
        out
    }

    pub fn scale(&self, s: &RadScalar) -> Self {
        let mut out = Self::zero(self.ring);
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, &(c * s));
        }
        out
    }

    /// Slotwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let ring = self.ring;
        let mut out = Self::zero(ring);
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let coef = c1 * c2;
                let left = mono_times_mono(ring, *a, *c);
                let right = mono_times_mono(ring, *b, *d);
                for (ml, cl) in left.iter() {
                    let lc = &coef * cl;
                    for (mr, cr) in right.iter() {
                        out.add_term(*ml, *mr, &(&lc * cr));
                    }
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c})*[{a}]⊗[{b}]"))
            .collect();
        parts.join(" + ")
    }
}

fn generator_coproduct(ring: Ring, g: Generator) -> TensorPoly {
    use Generator::*;
    let pairs: [(Generator, Generator); 2] = match g {
        X => [(X, X), (U, V)],
        U => [(X, U), (U, Y)],
        V => [(V, X), (Y, V)],
        Y => [(V, U), (Y, Y)],
    };
    let mut t = TensorPoly::zero(ring);
    for (a, b) in pairs {
        t.add_term(Monomial::generator(a), Monomial::generator(b), &RadScalar::one());
    }
    t
}

/// `Δ` of a word, as an algebra map.
pub fn coproduct_word(ring: Ring, w: &[Generator]) -> TensorPoly {
    w.iter()
        .fold(TensorPoly::one(ring), |acc, &g| acc.mul(&generator_coproduct(ring, g)))
}

pub fn coproduct_words(ring: Ring, terms: &[(Word, RadScalar)]) -> TensorPoly {
    terms
        .iter()
        .fold(TensorPoly::zero(ring), |acc, (w, c)| acc.add(&coproduct_word(ring, w).scale(c)))
}

pub fn coproduct(p: &NCPoly) -> TensorPoly {
    let mut out = TensorPoly::zero(p.ring());
    for (m, c) in p.terms() {
        out = out.add(&coproduct_word(p.ring(), &m.to_word()).scale(c));
    }
    out
}

/// `ε(x) = ε(y) = 1`, `ε(u) = ε(v) = 0`, extended multiplicatively.
pub fn counit_word(w: &[Generator]) -> RadScalar {
    if w.iter().all(|g| matches!(g, Generator::X | Generator::Y)) {
        RadScalar::one()
    } else {
        RadScalar::zero()
    }
}

pub fn counit(p: &NCPoly) -> RadScalar {
    let mut acc = RadScalar::zero();
    for (m, c) in p.terms() {
        acc += &(c * &counit_word(&m.to_word()));
    }
    acc
}

pub fn counit_words(terms: &[(Word, RadScalar)]) -> RadScalar {
    let mut acc = RadScalar::zero();
    for (w, c) in terms {
        acc += &(c * &counit_word(w));
    }
    acc
}

/// `(Δ⊗id)Δ(g) - (id⊗Δ)Δ(g)` is zero, for a generator `g`.
pub fn coassociative_on(ring: Ring, g: Generator) -> bool {
    let d = generator_coproduct(ring, g);
    let mut left: BTreeMap<(Monomial, Monomial, Monomial), RadScalar> = BTreeMap::new();
    let mut right = left.clone();
    let letter = |m: &Monomial| m.letters().next().expect("generator");
    for ((a, b), c) in d.terms() {
        for ((p, q), e) in generator_coproduct(ring, letter(a)).terms() {
            *left.entry((*p, *q, *b)).or_insert_with(RadScalar::zero) += &(c * e);
        }
        for ((p, q), e) in generator_coproduct(ring, letter(b)).terms() {
            *right.entry((*a, *p, *q)).or_insert_with(RadScalar::zero) += &(c * e);
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    left == right
}

/// One verified identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub params: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Case {
    /// Compare two polynomials; the printed sides are kept only on failure.
    pub fn compare(params: serde_json::Value, lhs: &NCPoly, rhs: &NCPoly) -> Self {
        let pass = lhs == rhs;
        Case {
            params,
            pass,
            lhs: (!pass).then(|| exprio::to_text(lhs)),
            rhs: (!pass).then(|| exprio::to_text(rhs)),
        }
    }

    pub fn flag(params: serde_json::Value, pass: bool) -> Self {
        Case {
            params,
            pass,
            lhs: None,
            rhs: None,
        }
    }

    pub fn with_sides(params: serde_json::Value, pass: bool, lhs: String, rhs: String) -> Self {
        Case {
            params,
            pass,
            lhs: (!pass).then_some(lhs),
            rhs: (!pass).then_some(rhs),
        }
    }
}

/// D-matrices for `2j = 0..=max`, built once and shared between checks.
#[derive(Clone, Debug)]
pub struct DTable {
    pub ring: Ring,
    pub scheme: Scheme,
    mats: Vec<DMatrix>,
}

impl DTable {
    pub fn new(max_twice_j: u32, scheme: Scheme, ring: Ring) -> Result<Self, Error> {
        let mats = (0..=max_twice_j)
            .into_par_iter()
            .map(|tj| dmatrix(tj, scheme, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DTable { ring, scheme, mats })
    }

    pub fn max_twice_j(&self) -> u32 {
        self.mats.len() as u32 - 1
    }

    pub fn get(&self, twice_j: u32) -> &DMatrix {
        &self.mats[twice_j as usize]
    }

    /// `D^j_{m',m}`, zero for out-of-range spins or indices.
    pub fn d(&self, twice_j: i64, twice_mp: i32, twice_m: i32) -> NCPoly {
        if twice_j < 0 {
            return NCPoly::zero(self.ring);
        }
        self.get(twice_j as u32).at(twice_mp, twice_m)
    }
}

/// `Δ(D_{m'm}) = Σ_k D_{m'k} ⊗ D_{km}` and `ε(D_{m'm}) = δ_{m'm}` entrywise.
pub fn check_corep(table: &DTable, twice_j: u32) -> Vec<Case> {
    let d = table.get(twice_j);
    let n = d.dim();
    (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (r, c) = (i / n, i % n);
            let lhs = coproduct(d.get(r, c));
            let mut rhs = TensorPoly::zero(table.ring);
            for k in 0..n {
                rhs = rhs.add(&TensorPoly::tensor(d.get(r, k), d.get(k, c)));
            }
            let eps = counit(d.get(r, c));
            let expect = if r == c { RadScalar::one() } else { RadScalar::zero() };
            let pass = lhs == rhs && eps == expect;
            Case::with_sides(
                serde_json::json!({
                    "twoj": twice_j, "twomp": d.spin.twice_m(r), "twom": d.spin.twice_m(c),
                    "ring": table.ring, "scheme": table.scheme,
                }),
                pass,
                format!("{} ; counit {eps}", lhs.to_text()),
                format!("{} ; counit {expect}", rhs.to_text()),
            )
        })
        .collect()
}

fn products(table: &DTable, a: u32, b: u32) -> BTreeMap<(i32, i32, i32, i32), NCPoly> {
    let (s1, s2) = (Spin::new(a), Spin::new(b));
    let mut keys = Vec::new();
    for k1 in s1.twice_ms() {
        for k2 in s2.twice_ms() {
            for m1 in s1.twice_ms() {
                for m2 in s2.twice_ms() {
                    keys.push((k1, k2, m1, m2));
                }
            }
        }
    }
    keys.into_par_iter()
        .map(|(k1, k2, m1, m2)| {
            let p = &table.get(a).at(k1, m1) * &table.get(b).at(k2, m2);
            ((k1, k2, m1, m2), p)
        })
        .collect()
}

fn allowed_js(a: u32, b: u32) -> Vec<u32> {
    ((a as i32 - b as i32).unsigned_abs()..=a + b).step_by(2).collect()
}

fn lin<'a>(ring: Ring, terms: impl IntoIterator<Item = (RadScalar, &'a NCPoly)>) -> NCPoly {
    let mut acc = NCPoly::zero(ring);
    for (c, p) in terms {
        if !c.is_zero() {
            acc = &acc + &p.scale(&c);
        }
    }
    acc
}

/// The product law and its three corollary forms for spins `(j1, j2)`.
pub fn wigner_check(table: &DTable, a: u32, b: u32) -> Result<Vec<Case>, Error> {
    let ring = table.ring;
    let prod = products(table, a, b);
    let (s1, s2) = (Spin::new(a), Spin::new(b));
    let js = allowed_js(a, b);
    let omegas: BTreeMap<u32, CgcTable> = js.iter().map(|&j| Ok((j, rep::omega(a, b, j)?))).collect::<Result<_, Error>>()?;
    let mhos: BTreeMap<u32, CgcTable> = js.iter().map(|&j| Ok((j, rep::mho(a, b, j)?))).collect::<Result<_, Error>>()?;
    let pairs = || s1.twice_ms().flat_map(move |p| s2.twice_ms().map(move |q| (p, q)));
    let p = |k1, k2, m1, m2| &prod[&(k1, k2, m1, m2)];
    let mut cases = Vec::new();

    for &j in &js {
        for &jj in &js {
            for mp in Spin::new(jj).twice_ms() {
                for m in Spin::new(j).twice_ms() {
                    let mut terms = Vec::new();
                    for (k1, k2) in pairs() {
                        let o = mhos[&jj].get(k1, k2, mp);
                        if o.is_zero() {
                            continue;
                        }
                        for (m1, m2) in pairs() {
                            terms.push((&o * &omegas[&j].get(m1, m2, m), p(k1, k2, m1, m2)));
                        }
                    }
                    let rhs = lin(ring, terms);
                    let lhs = if j == jj { table.d(j as i64, mp, m) } else { NCPoly::zero(ring) };
                    cases.push(Case::compare(
                        serde_json::json!({"law": "product", "twoj1": a, "twoj2": b, "twoj": j, "twojp": jj, "twomp": mp, "twom": m}),
                        &lhs,
                        &rhs,
                    ));
                }
            }
        }
    }

    for &j in &js {
        let om = &omegas[&j];
        let mh = &mhos[&j];
        let dj = table.get(j);
        for (k1, k2) in pairs() {
            for m in Spin::new(j).twice_ms() {
                let dcol: Vec<NCPoly> = Spin::new(j).twice_ms().map(|mp| dj.at(mp, m)).collect();
                let lhs = lin(ring, Spin::new(j).twice_ms().zip(&dcol).map(|(mp, d)| (om.get(k1, k2, mp), d)));
                let rhs = lin(ring, pairs().map(|(m1, m2)| (om.get(m1, m2, m), p(k1, k2, m1, m2))));
                cases.push(Case::compare(
                    serde_json::json!({"law": "rel1", "twoj1": a, "twoj2": b, "twoj": j, "twok1": k1, "twok2": k2, "twom": m}),
                    &lhs,
                    &rhs,
                ));
            }
        }
        for (m1, m2) in pairs() {
            for mp in Spin::new(j).twice_ms() {
                let drow: Vec<NCPoly> = Spin::new(j).twice_ms().map(|m| dj.at(mp, m)).collect();
                let lhs = lin(ring, Spin::new(j).twice_ms().zip(&drow).map(|(m, d)| (mh.get(m1, m2, m), d)));
                let rhs = lin(ring, pairs().map(|(k1, k2)| (mh.get(k1, k2, mp), p(k1, k2, m1, m2))));
                cases.push(Case::compare(
                    serde_json::json!({"law": "rel2", "twoj1": a, "twoj2": b, "twoj": j, "twom1": m1, "twom2": m2, "twomp": mp}),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }

    for (k1, k2) in pairs() {
        for (m1, m2) in pairs() {
            let mut terms = Vec::new();
            let mut ds = Vec::new();
            for &j in &js {
                for m in Spin::new(j).twice_ms() {
                    for mp in Spin::new(j).twice_ms() {
                        let c = &mhos[&j].get(m1, m2, m) * &omegas[&j].get(k1, k2, mp);
                        if !c.is_zero() {
                            ds.push((c, table.d(j as i64, mp, m)));
                        }
                    }
                }
            }
            terms.extend(ds.iter().map(|(c, d)| (c.clone(), d)));
            let rhs = lin(ring, terms);
            cases.push(Case::compare(
                serde_json::json!({"law": "rel3", "twoj1": a, "twoj2": b, "twok1": k1, "twok2": k2, "twom1": m1, "twom2": m2}),
                p(k1, k2, m1, m2),
                &rhs,
            ));
        }
    }
    Ok(cases)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Recurrence {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl Recurrence {
    pub const ALL: [Recurrence; 8] = [
        Recurrence::I,
        Recurrence::II,
        Recurrence::III,
        Recurrence::IV,
        Recurrence::V,
        Recurrence::VI,
        Recurrence::VII,
        Recurrence::VIII,
    ];

    pub fn name(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"][self as usize]
    }

    /// Relations (i)-(iv) step down to `j - 1/2`; they need `2j ≥ 1`.
    pub fn steps_down(self) -> bool {
        (self as usize) < 4
    }
}

/// `√(t/2)` for a doubled non-negative quantity `t`.
fn sqrt_half(t: i64) -> RadScalar {
    assert!(t >= 0, "negative radicand {t}");
    scalar::sqrt_rational(&scalar::rat(t, 2))
}

/// `c h` with a doubled coefficient `t = 2c`.
fn h_half(t: i64) -> RadScalar {
    RadScalar::h_pow(scalar::rat(t, 2), 1)
}

/// Both sides of one recurrence at `(j, a, b)`, where `(a, b)` is the index
/// pair of the left-hand `D^j` (doubled).
pub fn recurrence_sides(table: &DTable, which: Recurrence, twice_j: u32, a: i32, b: i32) -> (NCPoly, NCPoly) {
    let ring = table.ring;
    let tj = twice_j as i64;
    let (ta, tb) = (a as i64, b as i64);
    let x = NCPoly::x(ring);
    let y = NCPoly::y(ring);
    let u = NCPoly::u(ring);
    let v = NCPoly::v(ring);
    let d = |sj: i64, p: i32, q: i32| table.d(sj, p, q);
    let sc = |p: &NCPoly, c: &RadScalar| p.scale(c);
    let lo = tj - 1;
    let hi = tj + 1;
    // linear factors, with k / m the doubled free indices
    let u_minus_x = |m: i64| &u - &sc(&x, &h_half(m + 1).scale(&scalar::rat_int(2)));
    let y_minus_v = |m: i64| &y - &sc(&v, &h_half(m + 1).scale(&scalar::rat_int(2)));
    let x_plus_v = |m: i64| &x + &sc(&v, &h_half(m - 1).scale(&scalar::rat_int(2)));
    let u_plus_y = |m: i64| &u + &sc(&y, &h_half(m - 1).scale(&scalar::rat_int(2)));
    match which {
        Recurrence::I => {
            let (k, m) = (ta, tb);
            let lhs = &sc(&d(tj, a, b), &sqrt_half(tj + k))
                - &sc(&d(tj, a - 2, b), &(&h_half(2 * (k - 1)) * &sqrt_half(tj - k + 2)));
            let rhs = &sc(&(&d(lo, a - 1, b - 1) * &x), &sqrt_half(tj + m))
                + &sc(&(&d(lo, a - 1, b + 1) * &u_minus_x(m)), &sqrt_half(tj - m));
            (lhs, rhs)
        }
        Recurrence::II => {
            let (k, m) = (ta, tb);
            let lhs = sc(&d(tj, a, b), &sqrt_half(tj - k));
            let rhs = &sc(&(&d(lo, a + 1, b - 1) * &v), &sqrt_half(tj + m))
                + &sc(&(&d(lo, a + 1, b + 1) * &y_minus_v(m)), &sqrt_half(tj - m));
            (lhs, rhs)
        }
        Recurrence::III => {
            let (m, n) = (ta, tb);
            let lhs = sc(&d(tj, a, b), &sqrt_half(tj + n));
            let rhs = &sc(&(&d(lo, a - 1, b - 1) * &x_plus_v(m)), &sqrt_half(tj + m))
                + &sc(&(&d(lo, a + 1, b - 1) * &v), &sqrt_half(tj - m));
            (lhs, rhs)
        }
        Recurrence::IV => {
            let (m, n) = (ta, tb);
            let lhs = &sc(&d(tj, a, b), &sqrt_half(tj - n))
                + &sc(&d(tj, a, b + 2), &(&h_half(2 * (n + 1)) * &sqrt_half(tj + n + 2)));
            let rhs = &sc(&(&d(lo, a - 1, b + 1) * &u_plus_y(m)), &sqrt_half(tj + m))
                + &sc(&(&d(lo, a + 1, b + 1) * &y), &sqrt_half(tj - m));
            (lhs, rhs)
        }
        Recurrence::V => {
            let (k, m) = (ta, tb);
            let lhs = &sc(&d(tj, a, b), &sqrt_half(tj - k + 2))
                + &sc(&d(tj, a - 2, b), &(&h_half(2 * (k - 1)) * &sqrt_half(tj + k)));
            let rhs = &sc(&(&d(hi, a - 1, b - 1) * &x), &sqrt_half(tj - m + 2))
                - &sc(&(&d(hi, a - 1, b + 1) * &u_minus_x(m)), &sqrt_half(tj + m + 2));
            (lhs, rhs)
        }
        Recurrence::VI => {
            let (k, m) = (ta, tb);
            let lhs = sc(&d(tj, a, b), &sqrt_half(tj + k + 2));
            let rhs = &sc(&(&d(hi, a + 1, b + 1) * &y_minus_v(m)), &sqrt_half(tj + m + 2))
                - &sc(&(&d(hi, a + 1, b - 1) * &v), &sqrt_half(tj - m + 2));
            (lhs, rhs)
        }
        Recurrence::VII => {
            let (m, n) = (ta, tb);
            let lhs = sc(&d(tj, a, b), &sqrt_half(tj - n + 2));
            let rhs = &sc(&(&d(hi, a - 1, b - 1) * &x_plus_v(m)), &sqrt_half(tj - m + 2))
                - &sc(&(&d(hi, a + 1, b - 1) * &v), &sqrt_half(tj + m + 2));
            (lhs, rhs)
        }
        Recurrence::VIII => {
            let (m, n) = (ta, tb);
            let lhs = &sc(&d(tj, a, b), &sqrt_half(tj + n + 2))
                - &sc(&d(tj, a, b + 2), &(&h_half(2 * (n + 1)) * &sqrt_half(tj - n)));
            let rhs = &sc(&(&d(hi, a + 1, b + 1) * &y), &sqrt_half(tj + m + 2))
                - &sc(&(&d(hi, a - 1, b + 1) * &u_plus_y(m)), &sqrt_half(tj - m + 2));
            (lhs, rhs)
        }
    }
}

pub fn recurrence_check(table: &DTable, which: Recurrence, twice_j: u32) -> Vec<Case> {
    if which.steps_down() && twice_j == 0 {
        return Vec::new();
    }
    let spin = Spin::new(twice_j);
    let mut cases = Vec::new();
    for a in spin.twice_ms() {
        for b in spin.twice_ms() {
            let (lhs, rhs) = recurrence_sides(table, which, twice_j, a, b);
            cases.push(Case::compare(
                serde_json::json!({"relation": which.name(), "twoj": twice_j, "twoa": a, "twob": b, "ring": table.ring}),
                &lhs,
                &rhs,
            ));
        }
    }
    cases
}

fn sign_int(twice_diff: i64) -> RadScalar {
    RadScalar::from_int(rep::sign_half(twice_diff))
}

/// Both orthogonality-like sum identities at spin `j`.
pub fn ortho_like_check(table: &DTable, twice_j: u32) -> Vec<Case> {
    let ring = table.ring;
    let spin = Spin::new(twice_j);
    let f = f_matrix(spin, spin);
    let fi = f_inv_matrix(spin, spin);
    let idx = |p: i32, q: i32| rep::product_index(spin, spin, p, q).expect("admissible");
    let dj = table.get(twice_j);
    let mut cases = Vec::new();
    for k1 in spin.twice_ms() {
        for k2 in spin.twice_ms() {
            let mut prods = Vec::new();
            for m1 in spin.twice_ms() {
                for m2 in spin.twice_ms() {
                    let c = &sign_int(k1 as i64 - m1 as i64) * f.get(idx(m1, m2), idx(m1, -m1));
                    if !c.is_zero() {
                        prods.push((c, &dj.at(k1, m1) * &dj.at(k2, m2)));
                    }
                }
            }
            let lhs = lin(ring, prods.iter().map(|(c, p)| (c.clone(), p)));
            let rhs = NCPoly::scalar(ring, f.get(idx(k1, k2), idx(k1, -k1)).clone());
            cases.push(Case::compare(
                serde_json::json!({"relation": "ortho1", "twoj": twice_j, "twok1": k1, "twok2": k2}),
                &lhs,
                &rhs,
            ));
        }
    }
    for m1 in spin.twice_ms() {
        for m2 in spin.twice_ms() {
            let mut prods = Vec::new();
            for k1 in spin.twice_ms() {
                for k2 in spin.twice_ms() {
                    let c = &sign_int(m1 as i64 - k1 as i64) * fi.get(idx(k1, -k1), idx(k1, k2));
                    if !c.is_zero() {
                        prods.push((c, &dj.at(k1, m1) * &dj.at(k2, m2)));
                    }
                }
            }
            let lhs = lin(ring, prods.iter().map(|(c, p)| (c.clone(), p)));
            let rhs = NCPoly::scalar(ring, fi.get(idx(m1, -m1), idx(m1, m2)).clone());
            cases.push(Case::compare(
                serde_json::json!({"relation": "ortho2", "twoj": twice_j, "twom1": m1, "twom2": m2}),
                &lhs,
                &rhs,
            ));
        }
    }
    cases
}

/// At `h = 0` both orthogonality-like sums collapse to the classical
/// `Σ (-1)^{k-m} D_{k,m} D_{k',-m} = δ_{k',-k}` and its transpose; `twisted`
/// and `classical` must share the ring.
pub fn ortho_classical_limit(twisted: &DTable, classical: &DTable, twice_j: u32) -> Vec<Case> {
    let ring = twisted.ring;
    let zero = scalar::rat(0, 1);
    let at0 = |p: &NCPoly| p.specialize(Some(&zero), None);
    let spin = Spin::new(twice_j);
    let f = f_matrix(spin, spin);
    let fi = f_inv_matrix(spin, spin);
    let idx = |p: i32, q: i32| rep::product_index(spin, spin, p, q).expect("admissible");
    let (dt, dc) = (twisted.get(twice_j), classical.get(twice_j));
    let mut cases = Vec::new();
    for a in spin.twice_ms() {
        for b in spin.twice_ms() {
            let mut tw1 = NCPoly::zero(ring);
            let mut tw2 = NCPoly::zero(ring);
            let mut cl1 = NCPoly::zero(ring);
            let mut cl2 = NCPoly::zero(ring);
            for p in spin.twice_ms() {
                for q in spin.twice_ms() {
                    let c1 = &sign_int(a as i64 - p as i64) * f.get(idx(p, q), idx(p, -p));
                    if !c1.is_zero() {
                        tw1 = &tw1 + &(&dt.at(a, p) * &dt.at(b, q)).scale(&c1);
                    }
                    let c2 = &sign_int(a as i64 - p as i64) * fi.get(idx(p, -p), idx(p, q));
                    if !c2.is_zero() {
                        tw2 = &tw2 + &(&dt.at(p, a) * &dt.at(q, b)).scale(&c2);
                    }
                }
                let s = sign_int(a as i64 - p as i64);
                cl1 = &cl1 + &(&dc.at(a, p) * &dc.at(b, -p)).scale(&s);
                cl2 = &cl2 + &(&dc.at(p, a) * &dc.at(-p, b)).scale(&s);
            }
            let delta = NCPoly::scalar(ring, RadScalar::from_int((a == -b) as i64));
            for (name, tw, cl) in [("ortho1", tw1, cl1), ("ortho2", tw2, cl2)] {
                let (tw, cl) = (at0(&tw), at0(&cl));
                let pass = tw == cl && cl == delta;
                cases.push(Case::with_sides(
                    serde_json::json!({"relation": name, "h": 0, "twoj": twice_j, "twoa": a, "twob": b}),
                    pass,
                    exprio::to_text(&tw),
                    exprio::to_text(&cl),
                ));
            }
        }
    }
    cases
}

/// `Σ_s R[m,s] D1_{s1 k1} D2_{s2 k2} = Σ_s D2_{m2 s2} D1_{m1 s1} R[s,k]`.
pub fn rtt_check(table: &DTable, a: u32, b: u32) -> Vec<Case> {
    let ring = table.ring;
    let (s1, s2) = (Spin::new(a), Spin::new(b));
    let r = r_matrix(s1, s2);
    let (d1, d2) = (table.get(a), table.get(b));
    let pairs: Vec<(i32, i32)> = s1.twice_ms().flat_map(|p| s2.twice_ms().map(move |q| (p, q))).collect();
    let idx = |p: i32, q: i32| rep::product_index(s1, s2, p, q).expect("admissible");
    let mut keys = Vec::new();
    for &m in &pairs {
        for &k in &pairs {
            keys.push((m, k));
        }
    }
    keys.into_par_iter()
        .map(|((m1, m2), (k1, k2))| {
            let mut lhs = NCPoly::zero(ring);
            let mut rhs = NCPoly::zero(ring);
            for &(t1, t2) in &pairs {
                let rl = r.get(idx(m1, m2), idx(t1, t2));
                if !rl.is_zero() {
                    lhs = &lhs + &(&d1.at(t1, k1) * &d2.at(t2, k2)).scale(rl);
                }
                let rr = r.get(idx(t1, t2), idx(k1, k2));
                if !rr.is_zero() {
                    rhs = &rhs + &(&d2.at(m2, t2) * &d1.at(m1, t1)).scale(rr);
                }
            }
            Case::compare(
                serde_json::json!({"twoj1": a, "twoj2": b, "twom1": m1, "twom2": m2, "twok1": k1, "twok2": k2, "ring": ring}),
                &lhs,
                &rhs,
            )
        })
        .collect()
}

fn spin_half_generator(row: usize, col: usize) -> Generator {
    [[Generator::X, Generator::U], [Generator::V, Generator::Y]][row][col]
}

/// The raw (unreduced) RTT differences at spins `(1/2, 1/2)`, as word sums.
pub fn rtt_spin_half_words() -> Vec<Vec<(Word, RadScalar)>> {
    let s = Spin::new(1);
    let r = r_matrix(s, s);
    let mut out = Vec::new();
    for m in 0..4 {
        for k in 0..4 {
            let (m1, m2, k1, k2) = (m / 2, m % 2, k / 2, k % 2);
            let mut terms = Vec::new();
            for t in 0..4 {
                let (t1, t2) = (t / 2, t % 2);
                let rl = r.get(m, t);
                if !rl.is_zero() {
                    terms.push((vec![spin_half_generator(t1, k1), spin_half_generator(t2, k2)], rl.clone()));
                }
                let rr = r.get(t, k);
                if !rr.is_zero() {
                    terms.push((vec![spin_half_generator(m2, t2), spin_half_generator(m1, t1)], -rr));
                }
            }
            out.push(terms);
        }
    }
    out
}

fn word_vector(terms: &[(Word, RadScalar)], h: &Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 16];
    for (w, c) in terms {
        assert_eq!(w.len(), 2);
        let i = (w[0] as usize) * 4 + w[1] as usize;
        let value = c
            .specialize(Some(h), None)
            .as_rational()
            .expect("coefficients are rational polynomials in h");
        v[i] += value;
    }
    v
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let factor = &row[c] / &pivot_row[c];
                for (entry, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *entry -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of comparing the spin-1/2 RTT identities with the defining relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrtComparison {
    /// Every RTT difference reduces to zero in the GL ring.
    pub contained: bool,
    /// `(h, rank of RTT differences, rank of relations, rank of both)`.
    pub ranks: Vec<(String, usize, usize, usize)>,
}

impl FrtComparison {
    pub fn spans_agree(&self) -> bool {
        self.contained && self.ranks.iter().all(|(_, a, b, c)| a == b && b == c && *a == 6)
    }
}

pub fn frt_comparison(h_values: &[Rational]) -> FrtComparison {
    let rtt = rtt_spin_half_words();
    let contained = rtt.iter().all(|t| ncalg::normal_form(t, Ring::Gl).is_zero());
    let rels: Vec<Vec<(Word, RadScalar)>> = ncalg::defining_relations().into_iter().map(|(_, r)| r).collect();
    let ranks = h_values
        .iter()
        .map(|h| {
            let a: Vec<_> = rtt.iter().map(|t| word_vector(t, h)).collect();
            let b: Vec<_> = rels.iter().map(|t| word_vector(t, h)).collect();
            let both: Vec<_> = a.iter().chain(&b).cloned().collect();
            (scalar::rational_to_text(h), rank(a), rank(b), rank(both))
        })
        .collect();
    FrtComparison { contained, ranks }
}

/// Well-definedness of `Δ` and `ε` on the defining relations, plus
/// coassociativity on generators.
pub fn hopf_consistency(ring: Ring) -> Vec<Case> {
    let mut cases = Vec::new();
    for (name, rel) in ncalg::defining_relations() {
        let delta = coproduct_words(ring, &rel);
        let eps = counit_words(&rel);
        cases.push(Case::with_sides(
            serde_json::json!({"relation": name, "ring": ring}),
            delta.is_zero() && eps.is_zero(),
            format!("{} ; counit {eps}", delta.to_text()),
            "0".into(),
        ));
    }
    if ring == Ring::Sl {
        let det = ncalg::determinant_words();
        let delta = coproduct_words(ring, &det).sub(&TensorPoly::one(ring));
        cases.push(Case::flag(
            serde_json::json!({"relation": "D = 1", "ring": ring}),
            delta.is_zero() && counit_words(&det).is_one(),
        ));
    }
    for g in Generator::ALL {
        cases.push(Case::flag(
            serde_json::json!({"coassociative": g.letter().to_string(), "ring": ring}),
            coassociative_on(ring, g),
        ));
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse;

    fn all_pass(cases: &[Case]) -> bool {
        cases.iter().all(|c| c.pass)
    }

    #[test]
    fn generator_coproducts() {
        let ring = Ring::Gl;
        let expect = TensorPoly::tensor(&NCPoly::x(ring), &NCPoly::x(ring))
            .add(&TensorPoly::tensor(&NCPoly::u(ring), &NCPoly::v(ring)));
        assert_eq!(coproduct(&NCPoly::x(ring)), expect);
        assert_eq!(coproduct(&NCPoly::one(ring)), TensorPoly::one(ring));
        let d = ncalg::quantum_determinant(ring);
        assert_eq!(coproduct(&d), TensorPoly::tensor(&d, &d));
    }

    #[test]
    fn counit_values() {
        let ring = Ring::Gl;
        assert!(counit(&NCPoly::x(ring)).is_one());
        assert!(counit(&parse("u*v", ring).unwrap()).is_zero());
        assert!(counit(&ncalg::quantum_determinant(ring)).is_one());
    }

    #[test]
    fn hopf_structure_consistent() {
        assert!(all_pass(&hopf_consistency(Ring::Gl)));
        assert!(all_pass(&hopf_consistency(Ring::Sl)));
    }

    #[test]
    fn corep_small() {
        for ring in [Ring::Gl, Ring::Sl] {
            let t = DTable::new(2, Scheme::Ordered1, ring).unwrap();
            for tj in 0..=2 {
                assert!(all_pass(&check_corep(&t, tj)), "2j={tj} {ring}");
            }
        }
    }

    #[test]
    fn wigner_spin_half() {
        let t = DTable::new(2, Scheme::Ordered1, Ring::Sl).unwrap();
        let cases = wigner_check(&t, 1, 1).unwrap();
        let bad: Vec<_> = cases.iter().filter(|c| !c.pass).take(3).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn recurrences_small() {
        let t = DTable::new(3, Scheme::Ordered1, Ring::Sl).unwrap();
        for which in Recurrence::ALL {
            for tj in 0..=2 {
                let cases = recurrence_check(&t, which, tj);
                let bad: Vec<_> = cases.iter().filter(|c| !c.pass).take(2).collect();
                assert!(bad.is_empty(), "{} 2j={tj}: {bad:?}", which.name());
            }
        }
    }

    #[test]
    fn ortho_small() {
        let t = DTable::new(2, Scheme::Ordered1, Ring::Sl).unwrap();
        for tj in 0..=2 {
            let cases = ortho_like_check(&t, tj);
            let bad: Vec<_> = cases.iter().filter(|c| !c.pass).take(2).collect();
            assert!(bad.is_empty(), "2j={tj}: {bad:?}");
        }
        let c = DTable::new(2, Scheme::Classical, Ring::Sl).unwrap();
        for tj in 0..=2 {
            let cases = ortho_classical_limit(&t, &c, tj);
            let bad: Vec<_> = cases.iter().filter(|c| !c.pass).take(2).collect();
            assert!(bad.is_empty(), "2j={tj}: {bad:?}");
        }
    }

    #[test]
    fn rtt_small() {
        let t = DTable::new(2, Scheme::Ordered1, Ring::Gl).unwrap();
        assert!(all_pass(&rtt_check(&t, 1, 1)));
        assert!(all_pass(&rtt_check(&t, 1, 2)));
        let cmp = frt_comparison(&[scalar::rat(0, 1), scalar::rat(1, 1), scalar::rat(1, 3)]);
        assert!(cmp.spans_agree(), "{cmp:?}");
    }

    #[test]
    fn fourth_recurrence_needs_shifted_radical() {
        // with sqrt(j+n) in place of sqrt(j+n+1) the relation breaks at j=1, m=n=0
        let t = DTable::new(2, Scheme::Ordered1, Ring::Sl).unwrap();
        let (lhs, rhs) = recurrence_sides(&t, Recurrence::IV, 2, 0, 0);
        assert_eq!(lhs, rhs);
        let wrong = t.d(2, 0, 2).scale(&(&h_half(2) * &(&sqrt_half(2) - &sqrt_half(4))));
        assert_ne!(&lhs + &wrong, rhs);
    }

    #[test]
    fn rank_basics() {
        let r = |v: &[i64]| v.iter().map(|&x| scalar::rat_int(x)).collect::<Vec<_>>();
        assert_eq!(rank(vec![r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rank(vec![r(&[1, 2]), r(&[0, 1])]), 2);
        assert_eq!(rank(vec![]), 0);
    }
}
