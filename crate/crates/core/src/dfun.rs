//! D-function matrices of `GL_h(2)` / `SL_h(2)` in three closed forms, plus the
//! Jacobi polynomial series over the noncommutative ring.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exprio;
use crate::ncalg::{quantum_determinant, NCPoly, Ring};
use crate::rep::Spin;
use crate::scalar::{self, DeformPoly, RadScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Boson ordering `a11^K a21^L a12^M a22^N`.
    Ordered1,
    /// Boson ordering `a12^M a11^K a22^N a21^L`.
    Ordered2,
    /// Jacobi series in `z = -uv` to the left (SL only).
    Jacobi,
    /// Undeformed D-functions, normal ordered and specialized to `h = 0`.
    Classical,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Ordered1, Scheme::Ordered2, Scheme::Jacobi, Scheme::Classical];
}

/// Shifted factorial `(a)_r`.
pub fn pochhammer(a: i64, r: u32) -> BigInt {
    (0..r as i64).fold(BigInt::one(), |acc, i| acc * (a + i))
}

/// `P_n^{(α,β)}(z) = Σ_r (-n)_r (α+β+n+1)_r / ((1)_r (α+1)_r) z^r`.
pub fn jacobi_poly(n: u32, alpha: i64, beta: i64, z: &NCPoly) -> Result<NCPoly, Error> {
    if alpha < 0 {
        return Err(Error::NegativeAlpha(alpha));
    }
    let n_i = n as i64;
    let mut out = NCPoly::zero(z.ring());
    let mut power = NCPoly::one(z.ring());
    for r in 0..=n {
        let c = Rational::new(
            pochhammer(-n_i, r) * pochhammer(alpha + beta + n_i + 1, r),
            pochhammer(1, r) * pochhammer(alpha + 1, r),
        );
        if !c.is_zero() {
            out = &out + &power.scale(&RadScalar::from_rational(c));
        }
        power = &power * z;
    }
    Ok(out)
}

fn factorial(n: i64) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `c0 + c1 h + c2 h^2` with integer coefficients.
fn hpoly(c: [i64; 3]) -> RadScalar {
    let mut p = DeformPoly::zero();
    for (i, &ci) in c.iter().enumerate() {
        if ci != 0 {
            p += &DeformPoly::monomial(scalar::rat_int(ci), i as u32, 0);
        }
    }
    RadScalar::from_poly(p)
}

/// `a x + b y + c u + d v` with `h`-polynomial coefficients.
fn linear(ring: Ring, x: RadScalar, y: RadScalar, u: RadScalar, v: RadScalar) -> NCPoly {
    &(&NCPoly::x(ring).scale(&x) + &NCPoly::y(ring).scale(&y))
        + &(&NCPoly::u(ring).scale(&u) + &NCPoly::v(ring).scale(&v))
}

fn zero() -> RadScalar {
    RadScalar::zero()
}

fn one() -> RadScalar {
    RadScalar::one()
}

/// `x + h c v`.
fn xf(ring: Ring, c: i64) -> NCPoly {
    linear(ring, one(), zero(), zero(), hpoly([0, c, 0]))
}

/// `y + h c v`.
fn yf(ring: Ring, c: i64) -> NCPoly {
    linear(ring, zero(), one(), zero(), hpoly([0, c, 0]))
}

/// `u + h cx x + h cy y + h^2 cv v`.
fn uf(ring: Ring, cx: i64, cy: i64, cv: i64) -> NCPoly {
    linear(ring, hpoly([0, cx, 0]), hpoly([0, cy, 0]), one(), hpoly([0, 0, cv]))
}

fn product(ring: Ring, factors: impl IntoIterator<Item = NCPoly>) -> NCPoly {
    factors.into_iter().fold(NCPoly::one(ring), |acc, f| &acc * &f)
}

/// Index quadruples `(K, L, M, N)` allowed for `(j, m', m)`.
fn quadruples(twice_j: u32, twice_mp: i32, twice_m: i32) -> impl Iterator<Item = [i64; 4]> {
    let tj = twice_j as i64;
    let jpm = (tj + twice_m as i64) / 2;
    let jmm = (tj - twice_m as i64) / 2;
    let jpmp = (tj + twice_mp as i64) / 2;
    (0..=jpm).filter_map(move |k| {
        let l = jpm - k;
        let m = jpmp - k;
        let n = jmm - m;
        (m >= 0 && n >= 0).then_some([k, l, m, n])
    })
}

fn prefactor(twice_j: u32, twice_mp: i32, twice_m: i32) -> RadScalar {
    let tj = twice_j as i64;
    let (mp, m) = (twice_mp as i64, twice_m as i64);
    scalar::sqrt_big(
        &(factorial((tj + mp) / 2) * factorial((tj - mp) / 2) * factorial((tj + m) / 2) * factorial((tj - m) / 2)),
    )
}

fn inverse_factorials(q: [i64; 4]) -> Rational {
    let d: BigUint = q.iter().map(|&n| factorial(n)).product();
    Rational::new(BigInt::one(), BigInt::from(d))
}

fn ordered1_term(ring: Ring, [k, l, m, n]: [i64; 4]) -> NCPoly {
    let xk = product(ring, (0..k).map(|i| xf(ring, i)));
    let vl = NCPoly::v(ring).pow(l as u32);
    let u = product(
        ring,
        (1..=m).rev().map(|i| {
            let a = k + l - m + i;
            let b = l - k - m + i;
            uf(ring, -a, -b, a * b)
        }),
    );
    let y = product(ring, (1..=n).rev().map(|i| yf(ring, -(k + l - m - n + i))));
    &(&(&xk * &vl) * &u) * &y
}

fn ordered2_term(ring: Ring, [k, l, m, n]: [i64; 4]) -> NCPoly {
    let u = product(ring, (0..m).map(|i| uf(ring, i, i, i * i)));
    let x = product(ring, (m..k + m).map(|i| xf(ring, i)));
    let y = product(ring, (0..n).map(|i| yf(ring, -(k - m - i))));
    let vl = NCPoly::v(ring).pow(l as u32);
    &(&(&u * &x) * &y) * &vl
}

fn classical_term(ring: Ring, [k, l, m, n]: [i64; 4]) -> NCPoly {
    let g = |p: NCPoly, e: i64| p.pow(e as u32);
    &(&(&g(NCPoly::x(ring), k) * &g(NCPoly::v(ring), l)) * &g(NCPoly::u(ring), m)) * &g(NCPoly::y(ring), n)
}

fn binomial(n: i64, k: i64) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn jacobi_entry(twice_j: u32, twice_mp: i32, twice_m: i32) -> Result<NCPoly, Error> {
    let ring = Ring::Sl;
    let tj = twice_j as i64;
    let (tmp, tm) = (twice_mp as i64, twice_m as i64);
    let z = -&(&NCPoly::u(ring) * &NCPoly::v(ring));
    // all quantities below are integers: (j ± m), (m' ± m) etc.
    let jp = |t: i64| (tj + t) / 2;
    let jm = |t: i64| (tj - t) / 2;
    let diff = (tmp - tm) / 2;
    let sum = (tmp + tm) / 2;
    let u_block = |len: i64| product(ring, (0..len).map(|i| uf(ring, i, i, i * i)));
    let y_block = |start: i64, len: i64| product(ring, (0..len).map(|i| yf(ring, -(start - i))));
    let n_plus = || scalar::sqrt_big(&(binomial(jp(tmp), diff) * binomial(jm(tm), diff)));
    let n_minus = || scalar::sqrt_big(&(binomial(jm(tmp), -diff) * binomial(jp(tm), -diff)));
    let (norm, series, rest) = match (sum >= 0, diff >= 0) {
        (true, true) => {
            let x = product(ring, (0..sum).map(|i| xf(ring, diff + i)));
            (n_plus(), jacobi_poly(jm(tmp) as u32, diff, sum, &z)?, &u_block(diff) * &x)
        }
        (true, false) => {
            let x = product(ring, (0..sum).map(|i| xf(ring, i)));
            let v = NCPoly::v(ring).pow((-diff) as u32);
            (n_minus(), jacobi_poly(jm(tm) as u32, -diff, sum, &z)?, &x * &v)
        }
        (false, true) => (
            n_plus(),
            jacobi_poly(jp(tm) as u32, diff, -sum, &z)?,
            &u_block(diff) * &y_block(-diff, -sum),
        ),
        (false, false) => {
            let v = NCPoly::v(ring).pow((-diff) as u32);
            (
                n_minus(),
                jacobi_poly(jp(tmp) as u32, -diff, -sum, &z)?,
                &v * &y_block(-diff, -sum),
            )
        }
    };
    Ok((&series * &rest).scale(&norm))
}

/// The matrix element `D^j_{m',m}` as a normal-form polynomial.
pub fn dfunc(twice_j: u32, twice_mp: i32, twice_m: i32, scheme: Scheme, ring: Ring) -> Result<NCPoly, Error> {
    let spin = Spin::new(twice_j);
    spin.index(twice_mp)?;
    spin.index(twice_m)?;
    let term: fn(Ring, [i64; 4]) -> NCPoly = match scheme {
        Scheme::Ordered1 => ordered1_term,
        Scheme::Ordered2 => ordered2_term,
        Scheme::Classical => classical_term,
        Scheme::Jacobi => {
            if ring != Ring::Sl {
                return Err(Error::JacobiOnGl);
            }
            return jacobi_entry(twice_j, twice_mp, twice_m);
        }
    };
    let mut out = NCPoly::zero(ring);
    for q in quadruples(twice_j, twice_mp, twice_m) {
        out = &out + &term(ring, q).scale(&RadScalar::from_rational(inverse_factorials(q)));
    }
    out = out.scale(&prefactor(twice_j, twice_mp, twice_m));
    if scheme == Scheme::Classical {
        out = out.specialize(Some(&Rational::zero()), None);
    }
    Ok(out)
}

/// `D^j`, rows indexed by `m'` and columns by `m`, both descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    pub spin: Spin,
    pub ring: Ring,
    entries: Vec<NCPoly>,
}

impl DMatrix {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> &NCPoly {
        &self.entries[row * self.dim() + col]
    }

    /// Entry by doubled magnetic numbers; zero outside the admissible range.
    pub fn at(&self, twice_mp: i32, twice_m: i32) -> NCPoly {
        match (self.spin.index(twice_mp), self.spin.index(twice_m)) {
            (Ok(r), Ok(c)) => self.get(r, c).clone(),
            _ => NCPoly::zero(self.ring),
        }
    }

    pub fn entries(&self) -> &[NCPoly] {
        &self.entries
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim();
        serde_json::Value::Array(
            (0..n)
                .map(|r| serde_json::Value::Array((0..n).map(|c| self.get(r, c).to_json()).collect()))
                .collect(),
        )
    }

    pub fn to_latex(&self) -> String {
        let n = self.dim();
        let mut out = format!("\\begin{{array}}{{{}}}\n", "c".repeat(n));
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| exprio::to_latex(self.get(r, c))).collect();
            out.push_str(&row.join(" & "));
            out.push_str(if r + 1 < n { " \\\\\n" } else { "\n" });
        }
        out.push_str("\\end{array}");
        out
    }

    /// One row per line, entries separated by ` | `.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| exprio::to_text(self.get(r, c))).collect();
            out.push_str(&row.join(" | "));
            out.push('\n');
        }
        out
    }
}

pub fn dmatrix(twice_j: u32, scheme: Scheme, ring: Ring) -> Result<DMatrix, Error> {
    let spin = Spin::new(twice_j);
    let n = spin.dim();
    let entries = (0..n * n)
        .into_par_iter()
        .map(|i| dfunc(twice_j, spin.twice_m(i / n), spin.twice_m(i % n), scheme, ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DMatrix { spin, ring, entries })
}

/// The `j = 1` matrix in closed form, with the determinant written out.
pub fn spin_one_reference(ring: Ring) -> Vec<NCPoly> {
    let p = |s: &str| exprio::parse(s, ring).expect("valid literal");
    let d = quantum_determinant(ring);
    vec![
        p("x^2 + h*x*v"),
        p("sqrt(2)*(u*x + h*u*v)"),
        p("u^2 + h*(u*x + u*y + h*u*v)"),
        p("sqrt(2)*x*v"),
        &d + &p("2*u*v"),
        p("sqrt(2)*(u*y + h*u*v)"),
        p("v^2"),
        p("sqrt(2)*y*v"),
        p("y^2 + h*y*v"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse;

    #[test]
    fn jacobi_series() {
        let ring = Ring::Gl;
        let z = NCPoly::u(ring);
        assert_eq!(jacobi_poly(0, 0, 0, &z).unwrap(), NCPoly::one(ring));
        assert_eq!(jacobi_poly(1, 0, 0, &z).unwrap(), parse("1 - 2*u", ring).unwrap());
        let half = NCPoly::scalar(ring, RadScalar::from_rational(scalar::rat(1, 2)));
        assert_eq!(
            jacobi_poly(2, 0, 0, &half).unwrap(),
            NCPoly::scalar(ring, RadScalar::from_rational(scalar::rat(-1, 2)))
        );
        assert_eq!(jacobi_poly(1, -1, 0, &z), Err(Error::NegativeAlpha(-1)));
        // P_1^{(a,b)}(z) = 1 - (a+b+2)/(a+1) z
        assert_eq!(jacobi_poly(1, 2, 1, &z).unwrap(), parse("1 - 5/3*u", ring).unwrap());
    }

    #[test]
    fn spin_half_generators() {
        for ring in [Ring::Gl, Ring::Sl] {
            for scheme in [Scheme::Ordered1, Scheme::Ordered2] {
                let d = dmatrix(1, scheme, ring).unwrap();
                assert_eq!(d.get(0, 0), &NCPoly::x(ring));
                assert_eq!(d.get(0, 1), &NCPoly::u(ring));
                assert_eq!(d.get(1, 0), &NCPoly::v(ring));
                assert_eq!(d.get(1, 1), &NCPoly::y(ring));
            }
        }
        assert_eq!(dmatrix(0, Scheme::Ordered1, Ring::Gl).unwrap().get(0, 0), &NCPoly::one(Ring::Gl));
    }

    #[test]
    fn spin_one_matches_closed_form() {
        for ring in [Ring::Gl, Ring::Sl] {
            let d = dmatrix(2, Scheme::Ordered1, ring).unwrap();
            assert_eq!(d.entries(), spin_one_reference(ring).as_slice());
        }
        let d = dmatrix(2, Scheme::Ordered1, Ring::Sl).unwrap();
        assert_eq!(d.get(1, 1), &parse("1 + 2*u*v", Ring::Sl).unwrap());
    }

    #[test]
    fn schemes_agree_small() {
        for tj in 0..=4 {
            let a = dmatrix(tj, Scheme::Ordered1, Ring::Gl).unwrap();
            let b = dmatrix(tj, Scheme::Ordered2, Ring::Gl).unwrap();
            assert_eq!(a, b, "2j = {tj}");
            let s = dmatrix(tj, Scheme::Ordered1, Ring::Sl).unwrap();
            let jac = dmatrix(tj, Scheme::Jacobi, Ring::Sl).unwrap();
            assert_eq!(s, jac, "2j = {tj}");
        }
    }

    #[test]
    fn classical_limit() {
        let zero = Rational::zero();
        for tj in 0..=4 {
            for ring in [Ring::Gl, Ring::Sl] {
                let a = dmatrix(tj, Scheme::Ordered1, ring).unwrap();
                let c = dmatrix(tj, Scheme::Classical, ring).unwrap();
                for (x, y) in a.entries().iter().zip(c.entries()) {
                    assert_eq!(&x.specialize(Some(&zero), None), y);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            dfunc(2, 1, 0, Scheme::Ordered1, Ring::Gl),
            Err(Error::InvalidMagnetic { twice_j: 2, twice_m: 1 })
        );
        assert_eq!(dfunc(2, 0, 0, Scheme::Jacobi, Ring::Gl), Err(Error::JacobiOnGl));
    }

    #[test]
    fn top_row_has_no_y_at_h_zero() {
        // the deformed u-factors bring y in at order h, e.g. u^2 + h(ux + uy + huv)
        for tj in 0..=4u32 {
            let d = dmatrix(tj, Scheme::Ordered1, Ring::Gl).unwrap();
            for c in 0..d.dim() {
                for (m, _) in d.get(0, c).specialize(Some(&Rational::zero()), None).terms() {
                    assert_eq!(m.exponent(crate::ncalg::Generator::Y), 0);
                }
            }
        }
    }
}
