//! Four-mode boson Fock space, graded by total occupation number, and the
//! realization of the algebra generators on it.
//!
//! Modes are `a11, a21, a12, a22` (lower index first). Operators are stored
//! column-sparse between one source grade and one target grade.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_traits::Zero;

use crate::error::Error;
use crate::ncalg::{Generator, NCPoly, Ring};
use crate::rep::{binomial, Spin};
use crate::scalar::{self, RadScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A11,
    A21,
    A12,
    A22,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::A11, Mode::A21, Mode::A12, Mode::A22];

    /// `a_i^j` for `i, j ∈ {1, 2}`.
    pub fn of(lower: u8, upper: u8) -> Mode {
        match (lower, upper) {
            (1, 1) => Mode::A11,
            (2, 1) => Mode::A21,
            (1, 2) => Mode::A12,
            (2, 2) => Mode::A22,
            _ => panic!("mode indices must be 1 or 2"),
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

pub type Occupation = [u32; 4];

/// Basis of one grade, in lexicographic order of occupations.
#[derive(Debug)]
pub struct Basis {
    pub grade: u32,
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

impl Basis {
    fn build(grade: u32) -> Self {
        let mut states = Vec::new();
        for a in 0..=grade {
            for b in 0..=grade - a {
                for c in 0..=grade - a - b {
                    states.push([a, b, c, grade - a - b - c]);
                }
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Basis { grade, states, index }
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Occupation] {
        &self.states
    }

    pub fn index_of(&self, s: &Occupation) -> Option<usize> {
        self.index.get(s).copied()
    }
}

thread_local! {
    static BASES: RefCell<HashMap<u32, Rc<Basis>>> = RefCell::new(HashMap::new());
    static GENERATORS: RefCell<HashMap<(Generator, u32), Rc<FockOp>>> = RefCell::new(HashMap::new());
}

pub fn basis(grade: u32) -> Rc<Basis> {
    BASES.with(|b| b.borrow_mut().entry(grade).or_insert_with(|| Rc::new(Basis::build(grade))).clone())
}

/// Number of states in a grade, `C(N+3, 3)`.
pub fn grade_dim(grade: u32) -> usize {
    let n = grade as usize;
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Linear map from grade `source` to grade `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockOp {
    source: u32,
    target: u32,
    cols: Vec<BTreeMap<usize, RadScalar>>,
}

impl FockOp {
    pub fn zero(source: u32, target: u32) -> Self {
        FockOp {
            source,
            target,
            cols: vec![BTreeMap::new(); grade_dim(source)],
        }
    }

    pub fn identity(grade: u32) -> Self {
        Self::scalar(grade, RadScalar::one())
    }

    pub fn scalar(grade: u32, s: RadScalar) -> Self {
        let mut op = Self::zero(grade, grade);
        if !s.is_zero() {
            for (i, col) in op.cols.iter_mut().enumerate() {
                col.insert(i, s.clone());
            }
        }
        op
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn get(&self, row: usize, col: usize) -> RadScalar {
        self.cols[col].get(&row).cloned().unwrap_or_else(RadScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn nonzero_count(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn scale(&self, s: &RadScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.source, self.target);
        }
        FockOp {
            source: self.source,
            target: self.target,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
                .collect(),
        }
    }

    pub fn specialize(&self, h: Option<&Rational>, g: Option<&Rational>) -> Self {
        FockOp {
            source: self.source,
            target: self.target,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(r, v)| (*r, v.specialize(h, g)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        assert_eq!(self.source, self.target, "pow needs a grade-preserving operator");
        let mut out = Self::identity(self.source);
        for _ in 0..n {
            out = self * &out;
        }
        out
    }

    fn combine(&self, rhs: &Self, sign: bool) -> Self {
        assert_eq!((self.source, self.target), (rhs.source, rhs.target), "grade mismatch");
        let mut out = self.clone();
        for (col, rc) in out.cols.iter_mut().zip(&rhs.cols) {
            for (r, v) in rc {
                let e = col.entry(*r).or_insert_with(RadScalar::zero);
                if sign {
                    *e += v;
                } else {
                    *e -= v;
                }
                if e.is_zero() {
                    col.remove(r);
                }
            }
        }
        out
    }
}

impl Add<&FockOp> for &FockOp {
    type Output = FockOp;
    fn add(self, rhs: &FockOp) -> FockOp {
        self.combine(rhs, true)
    }
}

impl Sub<&FockOp> for &FockOp {
    type Output = FockOp;
    fn sub(self, rhs: &FockOp) -> FockOp {
        self.combine(rhs, false)
    }
}

impl Neg for &FockOp {
    type Output = FockOp;
    fn neg(self) -> FockOp {
        self.scale(&RadScalar::from_int(-1))
    }
}

/// Composition: `(A * B)` applies `B` first.
impl Mul<&FockOp> for &FockOp {
    type Output = FockOp;
    fn mul(self, rhs: &FockOp) -> FockOp {
        assert_eq!(self.source, rhs.target, "grade mismatch in composition");
        let mut out = FockOp::zero(rhs.source, self.target);
        for (c, bcol) in rhs.cols.iter().enumerate() {
            let col = &mut out.cols[c];
            for (t, b) in bcol {
                for (r, a) in &self.cols[*t] {
                    let e = col.entry(*r).or_insert_with(RadScalar::zero);
                    *e += &(a * b);
                }
            }
            col.retain(|_, v| !v.is_zero());
        }
        out
    }
}

/// Product of ladder operators, rightmost applied first; `true` creates.
fn ladder(ops: &[(Mode, bool)], grade: u32) -> Result<FockOp, Error> {
    let creates = ops.iter().filter(|o| o.1).count() as i64;
    let target = grade as i64 + 2 * creates - ops.len() as i64;
    let mut lowest = grade as i64;
    let mut level = grade as i64;
    for &(_, c) in ops.iter().rev() {
        level += if c { 1 } else { -1 };
        lowest = lowest.min(level);
    }
    if lowest < 0 {
        return Err(Error::GradeOutOfRange(grade));
    }
    let src = basis(grade);
    let dst = basis(target as u32);
    let mut out = FockOp::zero(grade, target as u32);
    for (i, s) in src.states().iter().enumerate() {
        let mut occ = *s;
        let mut weight: u64 = 1;
        let mut alive = true;
        for &(mode, create) in ops.iter().rev() {
            let n = &mut occ[mode.slot()];
            if create {
                *n += 1;
                weight *= *n as u64;
            } else if *n == 0 {
                alive = false;
                break;
            } else {
                weight *= *n as u64;
                *n -= 1;
            }
        }
        if alive {
            let j = dst.index_of(&occ).expect("target state in basis");
            out.cols[i].insert(j, scalar::sqrt_nat(weight));
        }
    }
    Ok(out)
}

pub fn create(mode: Mode, grade: u32) -> FockOp {
    ladder(&[(mode, true)], grade).expect("creation never lowers the grade")
}

pub fn annihilate(mode: Mode, grade: u32) -> Result<FockOp, Error> {
    ladder(&[(mode, false)], grade)
}

/// `a_p ā_q` on one grade.
pub fn bilinear(p: Mode, q: Mode, grade: u32) -> FockOp {
    ladder(&[(p, true), (q, false)], grade).unwrap_or_else(|_| FockOp::zero(grade, grade))
}

/// Left generators `E_{ij} = Σ_k a_i^k ā_j^k`.
pub fn e_lower(i: u8, j: u8, grade: u32) -> FockOp {
    &bilinear(Mode::of(i, 1), Mode::of(j, 1), grade) + &bilinear(Mode::of(i, 2), Mode::of(j, 2), grade)
}

/// Right generators `E^{ij} = Σ_k a_k^i ā_k^j`.
pub fn e_upper(i: u8, j: u8, grade: u32) -> FockOp {
    &bilinear(Mode::of(1, i), Mode::of(1, j), grade) + &bilinear(Mode::of(2, i), Mode::of(2, j), grade)
}

/// Left and right `sl(2) ⊕ u(1)` generators on one grade.
#[derive(Clone, Debug)]
pub struct Generators {
    pub j_plus: FockOp,
    pub j_minus: FockOp,
    pub j0: FockOp,
    pub k_plus: FockOp,
    pub k_minus: FockOp,
    pub k0: FockOp,
    pub z_left: FockOp,
    pub z_right: FockOp,
}

pub fn lie_generators(grade: u32) -> Generators {
    Generators {
        j_plus: e_lower(2, 1, grade),
        j_minus: e_lower(1, 2, grade),
        j0: &e_lower(2, 2, grade) - &e_lower(1, 1, grade),
        k_plus: e_upper(1, 2, grade),
        k_minus: e_upper(2, 1, grade),
        k0: &e_upper(1, 1, grade) - &e_upper(2, 2, grade),
        z_left: -&(&e_lower(1, 1, grade) + &e_lower(2, 2, grade)),
        z_right: &e_upper(1, 1, grade) + &e_upper(2, 2, grade),
    }
}

/// `(1 - 2h B)^k` for a nilpotent grade-preserving `B`.
pub fn power_one_minus(b: &FockOp, k: &Rational) -> FockOp {
    let step = b.scale(&RadScalar::h_pow(scalar::rat_int(-2), 1));
    let mut term = FockOp::identity(b.source());
    let mut out = FockOp::zero(b.source(), b.source());
    let mut n = 0;
    while !term.is_zero() {
        let c = binomial(k, n);
        if !c.is_zero() {
            out = &out + &term.scale(&RadScalar::from_rational(c));
        }
        term = &step * &term;
        n += 1;
    }
    out
}

/// `exp(k σ_L) = (1 - 2hJ+)^{-k}`.
pub fn exp_sigma_left(k: &Rational, grade: u32) -> FockOp {
    power_one_minus(&e_lower(2, 1, grade), &-k)
}

/// `exp(k σ_R) = (1 - 2hK+)^{-k}`.
pub fn exp_sigma_right(k: &Rational, grade: u32) -> FockOp {
    power_one_minus(&e_upper(1, 2, grade), &-k)
}

/// `exp((A σ_L + B σ_R) / 2)` on one grade.
pub fn exp_sigma(a: &Rational, b: &Rational, grade: u32) -> FockOp {
    let half = scalar::rat(1, 2);
    &exp_sigma_left(&(a * &half), grade) * &exp_sigma_right(&(b * &half), grade)
}

fn mode_of(g: Generator) -> Mode {
    match g {
        Generator::X => Mode::A11,
        Generator::V => Mode::A21,
        Generator::U => Mode::A12,
        Generator::Y => Mode::A22,
    }
}

/// Twisted generator `a_i^j exp((-1)^i σ_L/2 + (-1)^{j+1} σ_R/2)` from `grade`
/// to `grade + 1`.
pub fn twisted_generator(g: Generator, grade: u32) -> Rc<FockOp> {
    if let Some(op) = GENERATORS.with(|c| c.borrow().get(&(g, grade)).cloned()) {
        return op;
    }
    let (a, b) = match g {
        Generator::X => (-1, 1),
        Generator::U => (-1, -1),
        Generator::V => (1, 1),
        Generator::Y => (1, -1),
    };
    let op = Rc::new(&create(mode_of(g), grade) * &exp_sigma(&scalar::rat_int(a), &scalar::rat_int(b), grade));
    GENERATORS.with(|c| c.borrow_mut().insert((g, grade), op.clone()));
    op
}

/// Operator of a raw word (product of generators, rightmost acting first).
pub fn evaluate_word(word: &[Generator], grade: u32) -> FockOp {
    let mut op = FockOp::identity(grade);
    for &g in word.iter().rev() {
        op = &*twisted_generator(g, op.target()) * &op;
    }
    op
}

/// Evaluate a homogeneous GL polynomial on one grade.
pub fn evaluate(p: &NCPoly, grade: u32) -> Result<FockOp, Error> {
    if p.ring() == Ring::Sl {
        return Err(Error::SlEvaluation);
    }
    let degree = match p.homogeneous_degree() {
        None => return Err(Error::Inhomogeneous),
        Some(d) => d.unwrap_or(0),
    };
    let mut out = FockOp::zero(grade, grade + degree);
    for (m, c) in p.terms() {
        out = &out + &evaluate_word(&m.to_word(), grade).scale(c);
    }
    Ok(out)
}

/// Evaluate a raw word sum without normal ordering.
pub fn evaluate_words(terms: &[(Vec<Generator>, RadScalar)], grade: u32) -> Result<FockOp, Error> {
    let mut degree = None;
    let mut out: Option<FockOp> = None;
    for (w, c) in terms {
        if *degree.get_or_insert(w.len()) != w.len() {
            return Err(Error::Inhomogeneous);
        }
        let term = evaluate_word(w, grade).scale(c);
        out = Some(match out {
            Some(acc) => &acc + &term,
            None => term,
        });
    }
    Ok(out.unwrap_or_else(|| FockOp::zero(grade, grade)))
}

/// `a11 a22 - a21 a12` from `grade` to `grade + 2`.
pub fn boson_determinant(grade: u32) -> FockOp {
    let two = |p: Mode, q: Mode| &create(p, grade + 1) * &create(q, grade);
    &two(Mode::A11, Mode::A22) - &two(Mode::A21, Mode::A12)
}

fn dop_quadruples(spin: Spin, twice_mp: i32, twice_m: i32) -> Vec<[u32; 4]> {
    let tj = spin.twice_j as i64;
    let jpm = (tj + twice_m as i64) / 2;
    let jmm = (tj - twice_m as i64) / 2;
    let jpmp = (tj + twice_mp as i64) / 2;
    (0..=jpm)
        .filter_map(|k| {
            let l = jpm - k;
            let m = jpmp - k;
            let n = jmm - m;
            (m >= 0 && n >= 0).then_some([k as u32, l as u32, m as u32, n as u32])
        })
        .collect()
}

/// Undeformed boson D-function `D0^j_{m',m}` from `grade` to `grade + 2j`.
pub fn classical_dop(twice_j: u32, twice_mp: i32, twice_m: i32, grade: u32) -> Result<FockOp, Error> {
    let spin = Spin::new(twice_j);
    spin.index(twice_mp)?;
    spin.index(twice_m)?;
    let fact = |n: i64| (1..=n).fold(num_bigint::BigUint::from(1u32), |a, k| a * k as u64);
    let tj = twice_j as i64;
    let (mp, m) = (twice_mp as i64, twice_m as i64);
    let norm = scalar::sqrt_big(
        &(fact((tj + mp) / 2) * fact((tj - mp) / 2) * fact((tj + m) / 2) * fact((tj - m) / 2)),
    );
    let mut out = FockOp::zero(grade, grade + twice_j);
    for q in dop_quadruples(spin, twice_mp, twice_m) {
        let mut ops = Vec::new();
        for (mode, e) in Mode::ALL.iter().zip(q) {
            ops.extend(std::iter::repeat_n((*mode, true), e as usize));
        }
        let d: num_bigint::BigUint = q.iter().map(|&e| fact(e as i64)).product();
        let c = Rational::new(1.into(), d.into());
        out = &out + &ladder(&ops, grade)?.scale(&RadScalar::from_rational(c));
    }
    Ok(out.scale(&norm))
}

/// `D0^j_{m',m} exp(-m' σ_L + m σ_R)` on one grade.
pub fn twisted_dop(twice_j: u32, twice_mp: i32, twice_m: i32, grade: u32) -> Result<FockOp, Error> {
    let d0 = classical_dop(twice_j, twice_mp, twice_m, grade)?;
    let e = exp_sigma(&scalar::rat_int(-twice_mp as i64), &scalar::rat_int(twice_m as i64), grade);
    Ok(&d0 * &e)
}

/// `GL_{h,g}(2)` generators `(a, b, c, d)` on one grade.
pub fn two_parameter_generators(grade: u32) -> [FockOp; 4] {
    let g = RadScalar::g();
    let op = |gen: Generator, n: u32| (*twisted_generator(gen, n)).clone();
    let nn = grade as i64;
    // Z_L = -N and Z_R = N act first, on the source grade
    let zl = RadScalar::from_int(-nn);
    let zr = RadScalar::from_int(nn);
    let a = &op(Generator::X, grade) - &op(Generator::V, grade).scale(&(&g * &zl));
    let b = &(&(&op(Generator::U, grade) - &op(Generator::X, grade).scale(&(&g * &zr)))
        - &op(Generator::Y, grade).scale(&(&g * &zl)))
        + &op(Generator::V, grade).scale(&(&(&g * &g) * &(&zl * &zr)));
    let c = op(Generator::V, grade);
    let d = &op(Generator::Y, grade) - &op(Generator::V, grade).scale(&(&g * &zr));
    [a, b, c, d]
}

/// Residuals of the six `GL_{h,g}(2)` relations from `grade` to `grade + 2`;
/// all vanish when the realization is correct.
pub fn two_parameter_residuals(grade: u32) -> Vec<(&'static str, FockOp)> {
    let [a0, b0, c0, d0] = two_parameter_generators(grade);
    let [a1, b1, c1, d1] = two_parameter_generators(grade + 1);
    let h = RadScalar::h();
    let g = RadScalar::g();
    let hpg = &h + &g;
    let hmg = &h - &g;
    let ac = &a1 * &c0;
    let cc = &c1 * &c0;
    let dc = &d1 * &c0;
    let cd = &c1 * &d0;
    let aa = &a1 * &a0;
    let dd = &d1 * &d0;
    let dprime = &(&(&a1 * &d0) - &(&b1 * &c0)) - &ac.scale(&hpg);
    let comm = |x1: &FockOp, y0: &FockOp, y1: &FockOp, x0: &FockOp| &(x1 * y0) - &(y1 * x0);
    vec![
        ("[a,b] = -(h+g)(D'-a^2)", &comm(&a1, &b0, &b1, &a0) + &(&dprime - &aa).scale(&hpg)),
        ("[a,c] = -(h-g)c^2", &comm(&a1, &c0, &c1, &a0) + &cc.scale(&hmg)),
        (
            "[a,d] = (h+g)ac - (h-g)dc",
            &(&comm(&a1, &d0, &d1, &a0) - &ac.scale(&hpg)) + &dc.scale(&hmg),
        ),
        (
            "[b,c] = -(h+g)ac - (h-g)cd",
            &(&comm(&b1, &c0, &c1, &b0) + &ac.scale(&hpg)) + &cd.scale(&hmg),
        ),
        ("[b,d] = (h-g)(D'-d^2)", &comm(&b1, &d0, &d1, &b0) - &(&dprime - &dd).scale(&hmg)),
        ("[c,d] = (h+g)c^2", &comm(&c1, &d0, &d1, &c0) - &cc.scale(&hpg)),
        ("D' = a11 a22 - a21 a12", &dprime - &boson_determinant(grade)),
    ]
}

/// Residuals of `[e^{kσ}, a] = 2hk e^{(k+1)σ} a'` for the four listed pairs,
/// from `grade` to `grade + 1`.
pub fn sigma_commutator_residuals(k: &Rational, grade: u32) -> Vec<(&'static str, FockOp)> {
    let n = grade;
    let two_hk = RadScalar::h_pow(k * scalar::rat_int(2), 1);
    let k1 = k + scalar::rat_int(1);
    let left = |e: fn(&Rational, u32) -> FockOp, a: Mode, b: Mode| {
        let comm = &(&e(k, n + 1) * &create(a, n)) - &(&create(a, n) * &e(k, n));
        &comm - &(&e(&k1, n + 1) * &create(b, n)).scale(&two_hk)
    };
    vec![
        ("[e^{kσL}, a11]", left(exp_sigma_left, Mode::A11, Mode::A21)),
        ("[e^{kσL}, a12]", left(exp_sigma_left, Mode::A12, Mode::A22)),
        ("[e^{kσR}, a12]", left(exp_sigma_right, Mode::A12, Mode::A11)),
        ("[e^{kσR}, a22]", left(exp_sigma_right, Mode::A22, Mode::A21)),
    ]
}

/// Residual of moving `(a_mode)^p` through `e^{(Aσ_L + Bσ_R)/2}`: the power
/// becomes a product of linear factors in the twisted generators, to the
/// right of a shifted exponential.
pub fn shift_residual(mode: Mode, p: u32, a: &Rational, b: &Rational, grade: u32) -> FockOp {
    let ring = Ring::Gl;
    let hq = |q: Rational| RadScalar::h_pow(q, 1);
    let gen = |g: Generator| NCPoly::generator(ring, g);
    let pi = scalar::rat_int(p as i64);
    let (da, db) = match mode {
        Mode::A11 => (pi.clone(), -&pi),
        Mode::A21 => (-&pi, -&pi),
        Mode::A12 => (pi.clone(), pi.clone()),
        Mode::A22 => (-&pi, pi.clone()),
    };
    // factor i acts i-th, starting at i = 1
    let factor = |i: u32| -> NCPoly {
        let ai = a + scalar::rat_int(i as i64);
        let bi = b + scalar::rat_int(i as i64);
        match mode {
            Mode::A11 => &gen(Generator::X) - &gen(Generator::V).scale(&hq(ai)),
            Mode::A21 => gen(Generator::V),
            Mode::A12 => {
                let h2 = RadScalar::h_pow(&ai * &bi, 2);
                &(&(&gen(Generator::U) - &gen(Generator::X).scale(&hq(bi))) - &gen(Generator::Y).scale(&hq(ai)))
                    + &gen(Generator::V).scale(&h2)
            }
            Mode::A22 => &gen(Generator::Y) - &gen(Generator::V).scale(&hq(bi)),
        }
    };
    let lhs = (0..p).fold(exp_sigma(a, b, grade), |acc, i| &create(mode, grade + i) * &acc);
    let mut rhs = FockOp::identity(grade);
    for i in 1..=p {
        let f = evaluate(&factor(i), rhs.target()).expect("homogeneous GL factor");
        rhs = &f * &rhs;
    }
    let rhs = &exp_sigma(&(a + &da), &(b + &db), grade + p) * &rhs;
    &lhs - &rhs
}

/// Residual of `(uv)^r E = E' {uv - 2h(-m'yv + mxv) - 4h^2 m m' v^2}^r` with
/// `E = e^{-m'σ_L + mσ_R}` on both sides.
pub fn uv_shift_residual(twice_mp: i32, twice_m: i32, r: u32, grade: u32) -> FockOp {
    let ring = Ring::Gl;
    let (mp, m) = (scalar::rat(twice_mp as i64, 2), scalar::rat(twice_m as i64, 2));
    let gen = |g: Generator| NCPoly::generator(ring, g);
    let word = |a: Generator, b: Generator| &gen(a) * &gen(b);
    let uv = word(Generator::U, Generator::V);
    let shifted = &(&(&uv + &word(Generator::Y, Generator::V).scale(&RadScalar::h_pow(&mp * scalar::rat_int(2), 1)))
        - &word(Generator::X, Generator::V).scale(&RadScalar::h_pow(&m * scalar::rat_int(2), 1)))
        - &word(Generator::V, Generator::V).scale(&RadScalar::h_pow(&(&m * &mp) * scalar::rat_int(4), 2));
    let (ea, eb) = (-&mp * scalar::rat_int(2), &m * scalar::rat_int(2));
    let lhs = &evaluate(&uv.pow(r), grade).expect("GL") * &exp_sigma(&ea, &eb, grade);
    let rhs = &exp_sigma(&ea, &eb, grade + 2 * r) * &evaluate(&shifted.pow(r), grade).expect("GL");
    &lhs - &rhs
}

/// Residuals of the left and right tensor-operator laws for the undeformed
/// boson D-functions of spin `j`, on one grade.
pub fn tensor_law_residuals(twice_j: u32, grade: u32) -> Result<Vec<(String, FockOp)>, Error> {
    let spin = Spin::new(twice_j);
    let n = grade;
    let lo = lie_generators(n);
    let hi = lie_generators(n + twice_j);
    let d = |mp: i32, m: i32| -> Result<FockOp, Error> {
        if spin.index(mp).is_ok() && spin.index(m).is_ok() {
            classical_dop(twice_j, mp, m, n)
        } else {
            Ok(FockOp::zero(n, n + twice_j))
        }
    };
    let tj = twice_j as i64;
    let coef = |a: i64, b: i64| scalar::sqrt_rational(&scalar::rat(a * b, 4));
    let mut out = Vec::new();
    for mp in spin.twice_ms() {
        for m in spin.twice_ms() {
            let d0 = d(mp, m)?;
            let comm = |a: &FockOp, b: &FockOp| &(a * &d0) - &(&d0 * b);
            let (p, q) = (mp as i64, m as i64);
            let tag = |name: &str| format!("{name} 2j={twice_j} 2m'={mp} 2m={m}");
            let laws: [(&str, FockOp, FockOp); 8] = [
                ("[J+,D]", comm(&hi.j_plus, &lo.j_plus), d(mp - 2, m)?.scale(&coef(tj + p, tj - p + 2))),
                ("[J-,D]", comm(&hi.j_minus, &lo.j_minus), d(mp + 2, m)?.scale(&coef(tj - p, tj + p + 2))),
                ("[J0,D]", comm(&hi.j0, &lo.j0), d0.scale(&RadScalar::from_int(-p))),
                ("[ZL,D]", comm(&hi.z_left, &lo.z_left), d0.scale(&RadScalar::from_int(-tj))),
                ("[K+,D]", comm(&hi.k_plus, &lo.k_plus), d(mp, m + 2)?.scale(&coef(tj - q, tj + q + 2))),
                ("[K-,D]", comm(&hi.k_minus, &lo.k_minus), d(mp, m - 2)?.scale(&coef(tj + q, tj - q + 2))),
                ("[K0,D]", comm(&hi.k0, &lo.k0), d0.scale(&RadScalar::from_int(q))),
                ("[ZR,D]", comm(&hi.z_right, &lo.z_right), d0.scale(&RadScalar::from_int(tj))),
            ];
            for (name, lhs, rhs) in laws {
                out.push((tag(name), &lhs - &rhs));
            }
        }
    }
    Ok(out)
}
