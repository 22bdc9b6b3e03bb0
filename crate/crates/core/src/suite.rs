//! Named verification suites and their JSON reports.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::dfun::{dfunc, Scheme};
use crate::error::Error;
use crate::fock;
use crate::hopfcheck::{self, Case, DTable, Recurrence};
use crate::ncalg::{self, Generator, NCPoly, Ring};
use crate::scalar::{self, RadScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Corep,
    Wigner,
    Recurrence,
    Ortho,
    Rtt,
    Pbw,
    Fock,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Corep,
        Suite::Wigner,
        Suite::Recurrence,
        Suite::Ortho,
        Suite::Rtt,
        Suite::Pbw,
        Suite::Fock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Corep => "corep",
            Suite::Wigner => "wigner",
            Suite::Recurrence => "recurrence",
            Suite::Ortho => "ortho",
            Suite::Rtt => "rtt",
            Suite::Pbw => "pbw",
            Suite::Fock => "fock",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Decode(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_twice_j: u32,
    pub nmax: u32,
    pub with_g: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_twice_j: 2,
            nmax: 4,
            with_g: false,
            seed: 2002,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub cases: Vec<Case>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: Suite, cases: Vec<Case>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        Report {
            suite,
            cases,
            passed,
            failed,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&Case> {
        self.cases.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}: {} passed, {} failed\n", self.suite, self.passed, self.failed);
        for c in self.cases.iter().filter(|c| !c.pass) {
            out.push_str(&format!("FAIL {}\n", c.params));
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                out.push_str(&format!("  lhs: {l}\n  rhs: {r}\n"));
            }
        }
        out
    }
}

pub fn run(suite: Suite, opts: &Options) -> Result<Report, Error> {
    let k = opts.max_twice_j;
    let cases = match suite {
        Suite::Corep => corep(k)?,
        Suite::Wigner => wigner(k)?,
        Suite::Recurrence => recurrence(k)?,
        Suite::Ortho => ortho(k)?,
        Suite::Rtt => rtt(k)?,
        Suite::Pbw => pbw(k),
        Suite::Fock => fock_cases(opts)?,
    };
    Ok(Report::new(suite, cases))
}

fn spin_pairs(k: u32) -> Vec<(u32, u32)> {
    (1..=k).flat_map(|a| (a..=k).map(move |b| (a, b))).collect()
}

fn corep(k: u32) -> Result<Vec<Case>, Error> {
    let mut cases = Vec::new();
    for ring in [Ring::Gl, Ring::Sl] {
        let mut schemes = vec![Scheme::Ordered1, Scheme::Ordered2];
        if ring == Ring::Sl {
            schemes.push(Scheme::Jacobi);
        }
        for scheme in schemes {
            let t = DTable::new(k, scheme, ring)?;
            for tj in 0..=k {
                cases.extend(hopfcheck::check_corep(&t, tj));
            }
        }
    }
    Ok(cases)
}

fn wigner(k: u32) -> Result<Vec<Case>, Error> {
    let t = DTable::new(2 * k, Scheme::Ordered1, Ring::Sl)?;
    let per_pair: Vec<Vec<Case>> = spin_pairs(k)
        .into_par_iter()
        .map(|(a, b)| hopfcheck::wigner_check(&t, a, b))
        .collect::<Result<_, _>>()?;
    Ok(per_pair.concat())
}

fn recurrence(k: u32) -> Result<Vec<Case>, Error> {
    let t = DTable::new(k + 1, Scheme::Ordered1, Ring::Sl)?;
    let jobs: Vec<(Recurrence, u32)> = Recurrence::ALL
        .into_iter()
        .flat_map(|r| (0..=k).map(move |tj| (r, tj)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(r, tj)| hopfcheck::recurrence_check(&t, r, tj))
        .collect::<Vec<_>>()
        .concat())
}

fn ortho(k: u32) -> Result<Vec<Case>, Error> {
    let t = DTable::new(k, Scheme::Ordered1, Ring::Sl)?;
    let c = DTable::new(k, Scheme::Classical, Ring::Sl)?;
    let mut cases = Vec::new();
    for tj in 0..=k {
        cases.extend(hopfcheck::ortho_like_check(&t, tj));
        cases.extend(hopfcheck::ortho_classical_limit(&t, &c, tj));
    }
    Ok(cases)
}

fn rtt(k: u32) -> Result<Vec<Case>, Error> {
    let t = DTable::new(k, Scheme::Ordered1, Ring::Gl)?;
    let mut cases: Vec<Case> = spin_pairs(k)
        .into_iter()
        .flat_map(|(a, b)| hopfcheck::rtt_check(&t, a, b))
        .collect();
    if k >= 1 {
        let hs = [scalar::rat(0, 1), scalar::rat(1, 1), scalar::rat(1, 3)];
        let cmp = hopfcheck::frt_comparison(&hs);
        cases.push(Case::flag(
            serde_json::json!({"frt": "spin 1/2 RTT span equals defining relations", "ranks": cmp.ranks, "reduces_to_zero": cmp.contained}),
            cmp.spans_agree(),
        ));
    }
    Ok(cases)
}

fn pbw(k: u32) -> Vec<Case> {
    let max_len = k.max(2) as usize;
    let mut cases = Vec::new();
    for ring in [Ring::Gl, Ring::Sl] {
        let result = ncalg::check_confluence(ring, max_len);
        let detail = match &result {
            Ok(n) => serde_json::json!(n),
            Err(f) => serde_json::json!(ncalg::word_string(&f.word)),
        };
        cases.push(Case::flag(
            serde_json::json!({"confluence": ring, "max_len": max_len, "detail": detail}),
            result.is_ok(),
        ));
        cases.extend(hopfcheck::hopf_consistency(ring));
    }
    for n in 0..=(k + 2) {
        let count = ncalg::count_normal_words(n);
        let expect = u64::from((n + 1) * (n + 2) * (n + 3) / 6);
        cases.push(Case::flag(
            serde_json::json!({"normal_words": n, "count": count, "expected": expect}),
            count == expect,
        ));
    }
    let d = ncalg::quantum_determinant(Ring::Gl);
    for g in Generator::ALL {
        let p = NCPoly::generator(Ring::Gl, g);
        cases.push(Case::compare(
            serde_json::json!({"central": g.letter().to_string()}),
            &(&d * &p),
            &(&p * &d),
        ));
    }
    cases.push(Case::compare(
        serde_json::json!({"determinant": "sl"}),
        &ncalg::quantum_determinant(Ring::Sl),
        &NCPoly::one(Ring::Sl),
    ));
    cases
}

fn residual_case(params: serde_json::Value, op: &fock::FockOp) -> Case {
    Case::flag(params, op.is_zero())
}

fn fock_cases(opts: &Options) -> Result<Vec<Case>, Error> {
    let nmax = opts.nmax;
    let small = nmax.min(3);
    let mut cases = Vec::new();
    for n in 0..=nmax {
        for (name, rel) in ncalg::defining_relations() {
            let op = fock::evaluate_words(&rel, n)?;
            cases.push(residual_case(serde_json::json!({"relation": name, "grade": n}), &op));
        }
        let d = fock::evaluate(&ncalg::quantum_determinant(Ring::Gl), n)?;
        cases.push(residual_case(
            serde_json::json!({"determinant": "a11 a22 - a21 a12", "grade": n}),
            &(&d - &fock::boson_determinant(n)),
        ));
    }
    let ks = [
        scalar::rat(1, 2),
        scalar::rat(-1, 2),
        scalar::rat(1, 1),
        scalar::rat(-1, 1),
        scalar::rat(3, 2),
    ];
    for n in 0..=small {
        for k in &ks {
            for (name, op) in fock::sigma_commutator_residuals(k, n) {
                let params = serde_json::json!({"identity": name, "k": scalar::rational_to_text(k), "grade": n});
                cases.push(residual_case(params, &op));
            }
        }
    }
    for mode in fock::Mode::ALL {
        for p in 0..=2 {
            for (a, b) in [(0, 0), (1, -1), (-2, 3), (3, 1)] {
                let op = fock::shift_residual(mode, p, &scalar::rat_int(a), &scalar::rat_int(b), 1);
                let params = serde_json::json!({"shift": format!("{mode:?}"), "power": p, "A": a, "B": b, "grade": 1});
                cases.push(residual_case(params, &op));
            }
        }
    }
    for (mp, m) in [(0, 0), (1, 1), (1, -1), (-1, 1), (2, 2), (-2, 2), (2, 0)] {
        for r in 0..=2 {
            let op = fock::uv_shift_residual(mp, m, r, 1);
            cases.push(residual_case(serde_json::json!({"uv_shift": r, "twomp": mp, "twom": m}), &op));
        }
    }
    let top_j = opts.max_twice_j.min(2);
    for tj in 0..=top_j {
        for n in 0..=small.min(2) {
            for (name, op) in fock::tensor_law_residuals(tj, n)? {
                cases.push(residual_case(serde_json::json!({"tensor_law": name, "grade": n}), &op));
            }
        }
    }
    for tj in 0..=top_j {
        for mp in crate::rep::Spin::new(tj).twice_ms() {
            for m in crate::rep::Spin::new(tj).twice_ms() {
                let poly = dfunc(tj, mp, m, Scheme::Ordered1, Ring::Gl)?;
                for n in 0..=small {
                    let diff = &fock::twisted_dop(tj, mp, m, n)? - &fock::evaluate(&poly, n)?;
                    let params = serde_json::json!({"twisted_dop": tj, "twomp": mp, "twom": m, "grade": n});
                    cases.push(residual_case(params, &diff));
                }
            }
        }
    }
    cases.extend(homomorphism_cases(opts.seed, 200, 4, nmax)?);
    if opts.with_g {
        for n in 0..=small {
            for (name, op) in fock::two_parameter_residuals(n) {
                cases.push(residual_case(serde_json::json!({"two_parameter": name, "grade": n}), &op));
            }
        }
    }
    Ok(cases)
}

/// `evaluate(normal_form(w)) = evaluate(w)` for seeded random words.
pub fn homomorphism_cases(seed: u64, count: usize, max_len: usize, nmax: u32) -> Result<Vec<Case>, Error> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.gen_range(1..=max_len);
        let w: Vec<Generator> = (0..len).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect();
        let n = rng.gen_range(0..=nmax);
        let raw = [(w.clone(), RadScalar::one())];
        let nf = ncalg::normal_form(&raw, Ring::Gl);
        let lhs = fock::evaluate(&nf, n)?;
        let rhs = fock::evaluate_words(&raw, n)?;
        cases.push(Case::flag(
            serde_json::json!({"word": ncalg::word_string(&w), "grade": n}),
            lhs == rhs,
        ));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = Options {
            max_twice_j: 1,
            nmax: 2,
            with_g: true,
            seed: 7,
        };
        for s in Suite::ALL {
            let r = run(s, &opts).unwrap();
            assert!(r.ok(), "{s}: {:?}", r.first_failure());
            assert!(r.passed > 0, "{s} ran no cases");
        }
    }

    #[test]
    fn report_counts() {
        let cases = vec![
            Case::flag(serde_json::json!(1), true),
            Case::flag(serde_json::json!(2), false),
        ];
        let r = Report::new(Suite::Pbw, cases);
        assert_eq!((r.passed, r.failed), (1, 1));
        assert!(!r.ok());
        assert!(r.to_json().contains("\"suite\": \"pbw\""));
        assert!(r.to_text().contains("FAIL 2"));
    }
}
