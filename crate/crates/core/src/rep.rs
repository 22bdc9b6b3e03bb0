//! Finite-dimensional representation data of the dual algebra: generator
//! matrices, the twist `σ`, F-matrices, the R-matrix, and Clebsch-Gordan
//! coefficients.
//!
//! Spins and magnetic numbers are doubled integers. Single-spin bases run from
//! `m = j` down to `m = -j`; product bases order by `m1` descending, then `m2`
//! descending.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{self, DeformPoly, RadScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    pub twice_j: u32,
}

impl Spin {
    pub fn new(twice_j: u32) -> Self {
        Spin { twice_j }
    }

    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Doubled magnetic numbers in basis order.
    pub fn twice_ms(self) -> impl DoubleEndedIterator<Item = i32> + Clone {
        let tj = self.twice_j as i32;
        (0..=tj).map(move |i| tj - 2 * i)
    }

    pub fn index(self, twice_m: i32) -> Result<usize, Error> {
        let tj = self.twice_j as i32;
        if twice_m.abs() > tj || (tj - twice_m) % 2 != 0 {
            return Err(Error::InvalidMagnetic {
                twice_j: self.twice_j,
                twice_m,
            });
        }
        Ok(((tj - twice_m) / 2) as usize)
    }

    pub fn twice_m(self, index: usize) -> i32 {
        self.twice_j as i32 - 2 * index as i32
    }
}

pub fn check_triangle(twice_j1: u32, twice_j2: u32, twice_j: u32) -> Result<(), Error> {
    let (a, b, c) = (twice_j1 as i64, twice_j2 as i64, twice_j as i64);
    if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
        return Err(Error::Triangle(twice_j1, twice_j2, twice_j));
    }
    Ok(())
}

/// Dense matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RadScalar>,
}

impl RepMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RepMatrix {
            rows,
            cols,
            data: vec![RadScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RadScalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RadScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RepMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RadScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: RadScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RadScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn scale(&self, s: &RadScalar) -> Self {
        RepMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        RepMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.specialize(h, g)).collect(),
        }
    }

    /// `P M P` for `M` acting on `V1 ⊗ V2` (dimensions `d1`, `d2`); the result
    /// acts on `V2 ⊗ V1`.
    pub fn flipped(&self, d1: usize, d2: usize) -> Self {
        assert_eq!(self.rows, d1 * d2);
        Self::from_fn(d2 * d1, d2 * d1, |r, c| {
            let (b, a) = (r / d1, r % d1);
            let (d, cc) = (c / d1, c % d1);
            self.get(a * d2 + b, cc * d2 + d).clone()
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| serde_json::Value::Array((0..self.cols).map(|c| self.get(r, c).to_json()).collect()))
                .collect(),
        )
    }
}

impl Add<&RepMatrix> for &RepMatrix {
    type Output = RepMatrix;
    fn add(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RepMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&RepMatrix> for &RepMatrix {
    type Output = RepMatrix;
    fn sub(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RepMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&RepMatrix> for &RepMatrix {
    type Output = RepMatrix;
    fn mul(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RepMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

/// `(J0, J+, J-)` with `J0|m> = 2m|m>` and `J±|m> = √((j∓m)(j±m+1)) |m±1>`.
pub fn j_matrices(spin: Spin) -> (RepMatrix, RepMatrix, RepMatrix) {
    let n = spin.dim();
    let tj = spin.twice_j as i64;
    let j0 = RepMatrix::from_fn(n, n, |r, c| {
        if r == c {
            RadScalar::from_int(spin.twice_m(r) as i64)
        } else {
            RadScalar::zero()
        }
    });
    let jp = RepMatrix::from_fn(n, n, |r, c| {
        if r + 1 == c {
            let tm = spin.twice_m(c) as i64;
            scalar::sqrt_rational(&scalar::rat((tj - tm) * (tj + tm + 2), 4))
        } else {
            RadScalar::zero()
        }
    });
    let jm = jp.transpose();
    (j0, jp, jm)
}

/// `σ = -ln(1 - 2hJ+) = Σ_{n≥1} (2hJ+)^n / n`.
pub fn sigma_matrix(spin: Spin) -> RepMatrix {
    let (_, jp, _) = j_matrices(spin);
    let step = jp.scale(&RadScalar::h_pow(scalar::rat_int(2), 1));
    let mut term = step.clone();
    let mut out = RepMatrix::zeros(spin.dim(), spin.dim());
    for n in 1..=spin.twice_j as i64 {
        out = &out + &term.scale(&RadScalar::from_rational(scalar::rat(1, n)));
        term = &term * &step;
    }
    out
}

/// Generalized binomial coefficient `k (k-1) ... (k-n+1) / n!`.
pub fn binomial(k: &Rational, n: u32) -> Rational {
    let mut out = Rational::one();
    for i in 0..n {
        out = out * (k - scalar::rat_int(i as i64)) / scalar::rat_int(i as i64 + 1);
    }
    out
}

/// `(1 - 2hJ+)^k = exp(-k σ)` as a terminating binomial series.
pub fn power_one_minus(spin: Spin, k: &Rational) -> RepMatrix {
    let (_, jp, _) = j_matrices(spin);
    let step = jp.scale(&RadScalar::h_pow(scalar::rat_int(-2), 1));
    let mut term = RepMatrix::identity(spin.dim());
    let mut out = RepMatrix::zeros(spin.dim(), spin.dim());
    for n in 0..=spin.twice_j {
        let c = binomial(k, n);
        if !c.is_zero() {
            out = &out + &term.scale(&RadScalar::from_rational(c));
        }
        term = &term * &step;
    }
    out
}

thread_local! {
    static F_CACHE: RefCell<HashMap<(u32, u32, bool), RepMatrix>> = RefCell::new(HashMap::new());
}

fn twist(spin1: Spin, spin2: Spin, inverse: bool) -> RepMatrix {
    let key = (spin1.twice_j, spin2.twice_j, inverse);
    if let Some(m) = F_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return m;
    }
    let (d1, d2) = (spin1.dim(), spin2.dim());
    let mut out = RepMatrix::zeros(d1 * d2, d1 * d2);
    for i1 in 0..d1 {
        let tm1 = spin1.twice_m(i1) as i64;
        let k = if inverse { scalar::rat(-tm1, 2) } else { scalar::rat(tm1, 2) };
        let block = power_one_minus(spin2, &k);
        for r in 0..d2 {
            for c in 0..d2 {
                out.set(i1 * d2 + r, i1 * d2 + c, block.get(r, c).clone());
            }
        }
    }
    F_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// `F = exp(-½ J0 ⊗ σ)`; entry `[(m1,m2),(s1,s2)] = <m1 m2|F|s1 s2>`.
pub fn f_matrix(spin1: Spin, spin2: Spin) -> RepMatrix {
    twist(spin1, spin2, false)
}

pub fn f_inv_matrix(spin1: Spin, spin2: Spin) -> RepMatrix {
    twist(spin1, spin2, true)
}

/// `R = F21 F^{-1}` on `V1 ⊗ V2`.
pub fn r_matrix(spin1: Spin, spin2: Spin) -> RepMatrix {
    let f21 = f_matrix(spin2, spin1).flipped(spin2.dim(), spin1.dim());
    &f21 * &f_inv_matrix(spin1, spin2)
}

/// Row/column index of `(m1, m2)` in the product basis.
pub fn product_index(spin1: Spin, spin2: Spin, twice_m1: i32, twice_m2: i32) -> Result<usize, Error> {
    Ok(spin1.index(twice_m1)? * spin2.dim() + spin2.index(twice_m2)?)
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Classical Clebsch-Gordan coefficient with Condon-Shortley phases (Racah's
/// closed form).
pub fn cgc_classical_entry(
    twice_j1: u32,
    twice_j2: u32,
    twice_j: u32,
    twice_m1: i32,
    twice_m2: i32,
    twice_m: i32,
) -> Result<RadScalar, Error> {
    check_triangle(twice_j1, twice_j2, twice_j)?;
    Spin::new(twice_j1).index(twice_m1)?;
    Spin::new(twice_j2).index(twice_m2)?;
    Spin::new(twice_j).index(twice_m)?;
    if twice_m1 + twice_m2 != twice_m {
        return Ok(RadScalar::zero());
    }
    let half = |x: i64| x / 2;
    let (j1, j2, j) = (twice_j1 as i64, twice_j2 as i64, twice_j as i64);
    let (m1, m2, m) = (twice_m1 as i64, twice_m2 as i64, twice_m as i64);
    let numer = BigInt::from(j + 1)
        * factorial(half(j1 + j2 - j))
        * factorial(half(j1 - j2 + j))
        * factorial(half(-j1 + j2 + j))
        * factorial(half(j + m))
        * factorial(half(j - m))
        * factorial(half(j1 - m1))
        * factorial(half(j1 + m1))
        * factorial(half(j2 - m2))
        * factorial(half(j2 + m2));
    let denom = factorial(half(j1 + j2 + j) + 1);
    let root = scalar::sqrt_rational(&Rational::new(numer, denom));

    let bounds = [
        half(j1 + j2 - j),
        half(j1 - m1),
        half(j2 + m2),
        half(j - j2 + m1),
        half(j - j1 - m2),
    ];
    let k_min = 0.max(-bounds[3]).max(-bounds[4]);
    let k_max = bounds[0].min(bounds[1]).min(bounds[2]);
    let mut sum = Rational::zero();
    for k in k_min..=k_max {
        let d = factorial(k)
            * factorial(bounds[0] - k)
            * factorial(bounds[1] - k)
            * factorial(bounds[2] - k)
            * factorial(bounds[3] + k)
            * factorial(bounds[4] + k);
        let term = Rational::new(BigInt::one(), d);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(root.scale(&sum))
}

/// Table of coefficients keyed by doubled `(m1, m2, m)`; zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgcTable {
    pub twice_j1: u32,
    pub twice_j2: u32,
    pub twice_j: u32,
    entries: BTreeMap<(i32, i32, i32), RadScalar>,
}

impl CgcTable {
    pub fn get(&self, twice_m1: i32, twice_m2: i32, twice_m: i32) -> RadScalar {
        self.entries
            .get(&(twice_m1, twice_m2, twice_m))
            .cloned()
            .unwrap_or_else(RadScalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i32, i32, i32), &RadScalar)> {
        self.entries.iter()
    }

    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.specialize(h, g)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(&(m1, m2, m), v)| {
                    serde_json::json!({"twom1": m1, "twom2": m2, "twom": m, "value": v.to_json()})
                })
                .collect(),
        )
    }

    fn build(
        twice_j1: u32,
        twice_j2: u32,
        twice_j: u32,
        mut f: impl FnMut(i32, i32, i32) -> Result<RadScalar, Error>,
    ) -> Result<Self, Error> {
        check_triangle(twice_j1, twice_j2, twice_j)?;
        let mut entries = BTreeMap::new();
        for m1 in Spin::new(twice_j1).twice_ms() {
            for m2 in Spin::new(twice_j2).twice_ms() {
                for m in Spin::new(twice_j).twice_ms() {
                    let v = f(m1, m2, m)?;
                    if !v.is_zero() {
                        entries.insert((m1, m2, m), v);
                    }
                }
            }
        }
        Ok(CgcTable {
            twice_j1,
            twice_j2,
            twice_j,
            entries,
        })
    }
}

pub fn cgc_classical(twice_j1: u32, twice_j2: u32, twice_j: u32) -> Result<CgcTable, Error> {
    CgcTable::build(twice_j1, twice_j2, twice_j, |m1, m2, m| {
        cgc_classical_entry(twice_j1, twice_j2, twice_j, m1, m2, m)
    })
}

fn contract(twice_j1: u32, twice_j2: u32, twice_j: u32, inverse: bool) -> Result<CgcTable, Error> {
    let classical = cgc_classical(twice_j1, twice_j2, twice_j)?;
    let (s1, s2) = (Spin::new(twice_j1), Spin::new(twice_j2));
    let f = if inverse { f_inv_matrix(s1, s2) } else { f_matrix(s1, s2) };
    CgcTable::build(twice_j1, twice_j2, twice_j, |m1, m2, m| {
        let row = product_index(s1, s2, m1, m2)?;
        let mut acc = RadScalar::zero();
        for (&(k1, k2, km), c) in classical.entries() {
            if km != m {
                continue;
            }
            let col = product_index(s1, s2, k1, k2)?;
            let fe = if inverse { f.get(col, row) } else { f.get(row, col) };
            if !fe.is_zero() {
                acc += &(c * fe);
            }
        }
        Ok(acc)
    })
}

/// Twisted coupling coefficients `Ω_{m1 m2 m} = Σ_s C_{s1 s2 m} F[(m1,m2),(s1,s2)]`.
pub fn omega(twice_j1: u32, twice_j2: u32, twice_j: u32) -> Result<CgcTable, Error> {
    contract(twice_j1, twice_j2, twice_j, false)
}

/// Twisted decoupling coefficients `℧_{m1 m2 m} = Σ_s C_{s1 s2 m} F^{-1}[(s1,s2),(m1,m2)]`.
pub fn mho(twice_j1: u32, twice_j2: u32, twice_j: u32) -> Result<CgcTable, Error> {
    contract(twice_j1, twice_j2, twice_j, true)
}

/// `(-1)^{k/2}` for an even doubled exponent `k`.
pub fn sign_half(twice_k: i64) -> i64 {
    debug_assert!(twice_k % 2 == 0);
    if (twice_k / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Lowest-order coefficient of `h` in a scalar; used by sign checks.
pub fn leading_sign(s: &RadScalar) -> Option<i8> {
    let (_, poly): (u64, &DeformPoly) = s.terms().next()?;
    let (_, q) = poly.terms().next()?;
    Some(if q.is_positive() { 1 } else { -1 })
}

/// The closed-form `F^{j1,1/2}` and `F^{-1}` entries, compared with the
/// constructed twist.
pub fn spin_half_twist_table_holds(twice_j1: u32) -> bool {
    let (s1, s2) = (Spin::new(twice_j1), Spin::new(1));
    let f = f_matrix(s1, s2);
    let fi = f_inv_matrix(s1, s2);
    let idx = |a: i32, b: i32| product_index(s1, s2, a, b).expect("admissible");
    let delta = |a: i32, b: i32| if a == b { RadScalar::one() } else { RadScalar::zero() };
    let h_times = |twice_m: i32, sign: i64| RadScalar::h_pow(scalar::rat(sign * twice_m as i64, 1), 1);
    let mut ok = true;
    for m1 in s1.twice_ms() {
        for k1 in s1.twice_ms() {
            for k2 in [1, -1] {
                let d = delta(k1, m1);
                let up = &d * &delta(k2, 1);
                let down = &d * &(&delta(k2, -1) - &(&h_times(m1, 1) * &delta(k2, 1)));
                ok &= *f.get(idx(k1, k2), idx(m1, 1)) == up;
                ok &= *f.get(idx(k1, k2), idx(m1, -1)) == down;
                let (n1, n2) = (k1, k2);
                let inv_up = &delta(m1, n1) * &(&delta(n2, 1) + &(&h_times(m1, 1) * &delta(n2, -1)));
                let inv_down = &delta(m1, n1) * &delta(n2, -1);
                ok &= *fi.get(idx(m1, 1), idx(n1, n2)) == inv_up;
                ok &= *fi.get(idx(m1, -1), idx(n1, n2)) == inv_down;
            }
        }
    }
    ok
}

/// `F[(-m1,-m2),(-s1,-s2)] = F^{-1}[(s1,s2),(m1,m2)]`.
pub fn twist_reflection_holds(spin1: Spin, spin2: Spin) -> bool {
    let f = f_matrix(spin1, spin2);
    let fi = f_inv_matrix(spin1, spin2);
    let idx = |a: i32, b: i32| product_index(spin1, spin2, a, b).expect("admissible");
    let pairs: Vec<(i32, i32)> = spin1.twice_ms().flat_map(|a| spin2.twice_ms().map(move |b| (a, b))).collect();
    pairs.iter().all(|&(m1, m2)| {
        pairs
            .iter()
            .all(|&(s1, s2)| f.get(idx(-m1, -m2), idx(-s1, -s2)) == fi.get(idx(s1, s2), idx(m1, m2)))
    })
}

fn swap_factors(d1: usize, d2: usize) -> RepMatrix {
    RepMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        if r == (c % d2) * d1 + c / d2 {
            RadScalar::one()
        } else {
            RadScalar::zero()
        }
    })
}

/// `R21 R = 1` and `R12 R13 R23 = R23 R13 R12` on `V ⊗ V ⊗ V`.
pub fn r_matrix_laws_hold(spin: Spin) -> bool {
    let d = spin.dim();
    let r = r_matrix(spin, spin);
    let unitary = (&r.flipped(d, d) * &r).is_identity();
    let id = RepMatrix::identity(d);
    let r12 = r.kron(&id);
    let r23 = id.kron(&r);
    let p23 = id.kron(&swap_factors(d, d));
    let r13 = &(&p23 * &r12) * &p23;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    unitary && lhs == rhs
}

/// `Σ_{m1,m2} ℧^j_{m1 m2 m} Ω^{j'}_{m1 m2 m'} = δ_{jj'} δ_{mm'}`.
pub fn cgc_biorthogonal(twice_j1: u32, twice_j2: u32) -> Result<bool, Error> {
    let js: Vec<u32> = ((twice_j1 as i32 - twice_j2 as i32).unsigned_abs()..=twice_j1 + twice_j2)
        .step_by(2)
        .collect();
    let mut ok = true;
    for &j in &js {
        let mh = mho(twice_j1, twice_j2, j)?;
        for &jj in &js {
            let om = omega(twice_j1, twice_j2, jj)?;
            for m in Spin::new(j).twice_ms() {
                for mm in Spin::new(jj).twice_ms() {
                    let mut acc = RadScalar::zero();
                    for m1 in Spin::new(twice_j1).twice_ms() {
                        for m2 in Spin::new(twice_j2).twice_ms() {
                            acc += &(&mh.get(m1, m2, m) * &om.get(m1, m2, mm));
                        }
                    }
                    let expect = if j == jj && m == mm { 1 } else { 0 };
                    ok &= acc == RadScalar::from_int(expect);
                }
            }
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, sqrt_nat};

    fn h() -> RadScalar {
        RadScalar::h()
    }

    #[test]
    fn spin_half_generators() {
        let (j0, jp, jm) = j_matrices(Spin::new(1));
        assert_eq!(*j0.get(0, 0), RadScalar::one());
        assert_eq!(*j0.get(1, 1), RadScalar::from_int(-1));
        assert_eq!(*jp.get(0, 1), RadScalar::one());
        assert!(jp.get(1, 0).is_zero());
        assert_eq!(*jm.get(1, 0), RadScalar::one());
        assert!(j_matrices(Spin::new(0)).1.is_zero());
    }

    #[test]
    fn sl2_commutators() {
        for tj in 0..=6 {
            let (j0, jp, jm) = j_matrices(Spin::new(tj));
            let two = RadScalar::from_int(2);
            assert_eq!(&(&j0 * &jp) - &(&jp * &j0), jp.scale(&two));
            assert_eq!(&(&j0 * &jm) - &(&jm * &j0), jm.scale(&-two));
            assert_eq!(&(&jp * &jm) - &(&jm * &jp), j0);
        }
    }

    #[test]
    fn sigma_and_log() {
        let s = sigma_matrix(Spin::new(1));
        assert_eq!(s, j_matrices(Spin::new(1)).1.scale(&h().scale(&rat(2, 1))));
        assert!(sigma_matrix(Spin::new(0)).is_zero());
        // (1 - 2hJ+) exp(σ) = I, with exp(σ) as its nilpotent series
        for tj in 1..=4 {
            let spin = Spin::new(tj);
            let sig = sigma_matrix(spin);
            let mut exp = RepMatrix::identity(spin.dim());
            let mut term = RepMatrix::identity(spin.dim());
            for n in 1..=tj as i64 {
                term = (&term * &sig).scale(&RadScalar::from_rational(rat(1, n)));
                exp = &exp + &term;
            }
            assert!((&power_one_minus(spin, &rat(1, 1)) * &exp).is_identity());
            assert_eq!(exp, power_one_minus(spin, &rat(-1, 1)));
        }
    }

    #[test]
    fn binomial_powers() {
        for tj in 0..=3 {
            let spin = Spin::new(tj);
            assert!(power_one_minus(spin, &rat(0, 1)).is_identity());
            let half = power_one_minus(spin, &rat(-1, 2));
            let back = &(&half * &half) * &power_one_minus(spin, &rat(1, 1));
            assert!(back.is_identity());
        }
        let (_, jp, _) = j_matrices(Spin::new(1));
        let expect = &RepMatrix::identity(2) - &jp.scale(&h().scale(&rat(2, 1)));
        assert_eq!(power_one_minus(Spin::new(1), &rat(1, 1)), expect);
    }

    #[test]
    fn twist_inverse() {
        for a in 0..=4 {
            for b in 0..=4 {
                let (s1, s2) = (Spin::new(a), Spin::new(b));
                assert!((&f_matrix(s1, s2) * &f_inv_matrix(s1, s2)).is_identity());
                assert!(f_matrix(s1, s2).specialize(Some(&rat(0, 1)), None).is_identity());
            }
        }
    }

    #[test]
    fn r_matrix_spin_half() {
        let r = r_matrix(Spin::new(1), Spin::new(1));
        let z = RadScalar::zero;
        let o = RadScalar::one;
        let expect = [
            [o(), h(), -h(), &h() * &h()],
            [z(), o(), z(), h()],
            [z(), z(), o(), -h()],
            [z(), z(), z(), o()],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                assert_eq!(r.get(i, k), e, "R[{i}][{k}]");
            }
        }
        assert!(r_matrix(Spin::new(2), Spin::new(1)).specialize(Some(&rat(0, 1)), None).is_identity());
    }

    #[test]
    fn classical_cgc_values() {
        assert_eq!(cgc_classical_entry(1, 1, 2, 1, 1, 2).unwrap(), RadScalar::one());
        let inv_sqrt2 = sqrt_nat(2).scale(&rat(1, 2));
        assert_eq!(cgc_classical_entry(1, 1, 0, 1, -1, 0).unwrap(), inv_sqrt2);
        assert_eq!(cgc_classical_entry(1, 1, 0, -1, 1, 0).unwrap(), -inv_sqrt2);
        // <1 0; 1/2 1/2 | 1/2 1/2> = -1/√3
        assert_eq!(
            cgc_classical_entry(2, 1, 1, 0, 1, 1).unwrap(),
            -sqrt_nat(3).scale(&rat(1, 3))
        );
        assert_eq!(cgc_classical_entry(1, 1, 3, 1, 1, 2), Err(Error::Triangle(1, 1, 3)));
        assert!(cgc_classical_entry(1, 1, 2, 3, 1, 2).is_err());
    }

    /// Orthonormality, the lowering recursion and the Condon-Shortley sign fix
    /// the coefficients uniquely.
    #[test]
    fn classical_cgc_characterization() {
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let js: Vec<u32> = ((a as i32 - b as i32).unsigned_abs()..=a + b).step_by(2).collect();
                let tables: Vec<CgcTable> = js.iter().map(|&j| cgc_classical(a, b, j).unwrap()).collect();
                for (t, &j) in tables.iter().zip(&js) {
                    for (u, &jj) in tables.iter().zip(&js) {
                        for m in Spin::new(j).twice_ms() {
                            for mm in Spin::new(jj).twice_ms() {
                                let mut acc = RadScalar::zero();
                                for m1 in Spin::new(a).twice_ms() {
                                    for m2 in Spin::new(b).twice_ms() {
                                        acc += &(&t.get(m1, m2, m) * &u.get(m1, m2, mm));
                                    }
                                }
                                let expect = if j == jj && m == mm { 1 } else { 0 };
                                assert_eq!(acc, RadScalar::from_int(expect));
                            }
                        }
                    }
                    let top = t.get(a as i32, j as i32 - a as i32, j as i32);
                    assert_eq!(leading_sign(&top), Some(1));
                    // J- recursion: √((j+m)(j-m+1)) C_{m1 m2 m-1}
                    //   = √((j1-m1)(j1+m1+1)) C_{m1+1, m2, m} + √((j2-m2)(j2+m2+1)) C_{m1, m2+1, m}
                    let lower = |tj: u32, tm: i32| {
                        let (tj, tm) = (tj as i64, tm as i64);
                        scalar::sqrt_rational(&rat((tj + tm) * (tj - tm + 2), 4))
                    };
                    let raise = |tj: u32, tm: i32| {
                        let (tj, tm) = (tj as i64, tm as i64);
                        scalar::sqrt_rational(&rat((tj - tm) * (tj + tm + 2), 4))
                    };
                    for m in Spin::new(j).twice_ms() {
                        for m1 in Spin::new(a).twice_ms() {
                            for m2 in Spin::new(b).twice_ms() {
                                if m1 + m2 != m - 2 {
                                    continue;
                                }
                                let lhs = &lower(j, m) * &t.get(m1, m2, m - 2);
                                let mut rhs = RadScalar::zero();
                                if m1 + 2 <= a as i32 {
                                    rhs += &(&raise(a, m1) * &t.get(m1 + 2, m2, m));
                                }
                                if m2 + 2 <= b as i32 {
                                    rhs += &(&raise(b, m2) * &t.get(m1, m2 + 2, m));
                                }
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_cgc_reflection() {
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for j in ((a as i32 - b as i32).unsigned_abs()..=a + b).step_by(2) {
                    let t = cgc_classical(a, b, j).unwrap();
                    let sign = sign_half(a as i64 + b as i64 - j as i64);
                    for (&(m1, m2, m), v) in t.entries() {
                        assert_eq!(t.get(-m1, -m2, -m), v.scale(&rat(sign, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_cgc_spot_values() {
        assert_eq!(omega(1, 1, 2).unwrap().get(1, 1, 2), RadScalar::one());
        let zero = rat(0, 1);
        for (a, b, j) in [(1, 1, 0), (1, 1, 2), (2, 1, 1), (2, 2, 2)] {
            let c = cgc_classical(a, b, j).unwrap();
            assert_eq!(omega(a, b, j).unwrap().specialize(Some(&zero), None), c);
            assert_eq!(mho(a, b, j).unwrap().specialize(Some(&zero), None), c);
        }
        for (a, b, j) in [(1, 1, 0), (2, 1, 1), (1, 1, 2), (3, 2, 3)] {
            let om = omega(a, b, j).unwrap();
            let mh = mho(a, b, j).unwrap();
            let sign = sign_half(a as i64 + b as i64 - j as i64);
            for m1 in Spin::new(a).twice_ms() {
                for m2 in Spin::new(b).twice_ms() {
                    for m in Spin::new(j).twice_ms() {
                        assert_eq!(mh.get(m1, m2, m), om.get(-m1, -m2, -m).scale(&rat(sign, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn representation_laws() {
        for a in 0..=4 {
            assert!(spin_half_twist_table_holds(a), "2j1={a}");
        }
        for a in 0..=3 {
            for b in 0..=3 {
                assert!(twist_reflection_holds(Spin::new(a), Spin::new(b)));
                assert!(cgc_biorthogonal(a, b).unwrap());
            }
        }
        assert!(r_matrix_laws_hold(Spin::new(1)));
        assert!(r_matrix_laws_hold(Spin::new(2)));
    }
}
