//! The numerical experiments, in binary64 and in SORN arithmetic.
//!
//! Float variants evaluate left to right in strict binary64. SORN variants
//! run on a [`Runtime`] and treat every operand pair as independent.

use std::fmt;
use std::io;
use std::str::FromStr;

use thiserror::Error;

use crate::env::{IndexRange, UnumIndex};
use crate::error::SornError;
use crate::ieee::{Rounded, BINARY64};
use crate::rational::Rational;
use crate::rstar::RStar;
use crate::sorn::{Dependency::Independent, Runtime, Sorn};

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown demo `{0}` (expected spike, devil, bank or euler)")]
    UnknownDemo(String),
    #[error("unknown mode `{0}` (expected float or unum)")]
    UnknownMode(String),
    #[error("the {0} demo has no float mode")]
    NoFloatMode(Demo),
    #[error("unum mode needs a table file")]
    MissingTables,
    #[error(transparent)]
    Sorn(#[from] SornError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    Spike,
    Devil,
    Bank,
    Euler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Float,
    Unum,
}

impl FromStr for Demo {
    type Err = DemoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spike" => Ok(Demo::Spike),
            "devil" => Ok(Demo::Devil),
            "bank" => Ok(Demo::Bank),
            "euler" => Ok(Demo::Euler),
            _ => Err(DemoError::UnknownDemo(s.to_string())),
        }
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Demo::Spike => "spike",
            Demo::Devil => "devil",
            Demo::Bank => "bank",
            Demo::Euler => "euler",
        })
    }
}

impl FromStr for Mode {
    type Err = DemoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Mode::Float),
            "unum" => Ok(Mode::Unum),
            _ => Err(DemoError::UnknownMode(s.to_string())),
        }
    }
}

/// Iterations of the devil and bank recurrences.
pub const STEPS: usize = 25;
/// Partial sums of the Euler series.
pub const EULER_TERMS: usize = 20;

/// `ln(|3(1 − x) + 1|)` at every binary64 `x` within `2.22e-15` of `4/3`,
/// keyed by the offset in units in the last place from the nearest float
/// to `4/3`.
pub fn spike_float() -> Vec<(i64, f64)> {
    let centre = Rational::new(4, 3);
    let radius: Rational = "2.22e-15".parse().expect("literal");
    let lo = &centre - &radius;
    let hi = &centre + &radius;
    let first = match BINARY64.round_up(&lo) {
        Rounded::Finite(x) => x.to_f64(),
        _ => unreachable!("window is in range"),
    };
    let nearest = 4.0f64 / 3.0;
    let mut xs = Vec::new();
    let mut x = first;
    while Rational::from_f64(x).expect("finite") <= hi {
        xs.push(x);
        x = x.next_up();
    }
    let base = xs
        .iter()
        .position(|&v| v == nearest)
        .expect("4/3 is inside the window") as i64;
    xs.iter()
        .enumerate()
        .map(|(k, &x)| (k as i64 - base, (3.0 * (1.0 - x) + 1.0).abs().ln()))
        .collect()
}

/// `u_0 = 2`, `u_1 = −4`, `u_n = 111 − 1130/u_{n−1} + 3000/(u_{n−1} u_{n−2})`.
pub fn devil_float() -> Vec<f64> {
    let mut u = vec![2.0f64, -4.0];
    for n in 2..=STEPS {
        let (a, b) = (u[n - 1], u[n - 2]);
        u.push((111.0 - 1130.0 / a) + 3000.0 / (a * b));
    }
    u
}

/// `a_0 = e − 1`, `a_n = a_{n−1} · n − 1`.
pub fn bank_float() -> Vec<f64> {
    let mut a = vec![1.718_281_828_459_045_3_f64];
    for n in 1..=STEPS {
        a.push(a[n - 1] * n as f64 - 1.0);
    }
    a
}

fn constant(rt: &Runtime, x: i64) -> Sorn {
    rt.point(RStar::int(x))
}

/// `F(X) = LN(|{3} ⊠ ({1} ⊞ −X) ⊞ {1}|)` for every Unum `X` from `{1/1.2}` to
/// `{1.9}`.
pub fn spike_unum(rt: &Runtime) -> Result<Vec<(UnumIndex, Sorn)>, SornError> {
    let env = rt.env();
    let first = env.locate(&RStar::Finite(
        "1.2"
            .parse::<Rational>()
            .expect("literal")
            .recip()
            .expect("non-zero"),
    ));
    let last = env.locate(&RStar::Finite("1.9".parse().expect("literal")));
    let (one, three) = (constant(rt, 1), constant(rt, 3));
    (first.0..=last.0)
        .map(UnumIndex)
        .map(|i| {
            let x = Sorn::from_range(IndexRange::single(i), rt.len());
            let t = rt.uadd(&one, &rt.uneg(&x)?, Independent)?;
            let t = rt.umul(&three, &t, Independent)?;
            let t = rt.uadd(&t, &one, Independent)?;
            Ok((i, rt.ulog(&rt.uabs(&t)?)?))
        })
        .collect()
}

/// SORN form of the devil recurrence.
pub fn devil_unum(rt: &Runtime) -> Result<Vec<Sorn>, SornError> {
    let (c111, c1130, c3000) = (constant(rt, 111), constant(rt, 1130), constant(rt, 3000));
    let mut u = vec![constant(rt, 2), constant(rt, -4)];
    for n in 2..=STEPS {
        let (a, b) = (&u[n - 1], &u[n - 2]);
        let left = rt.usub(&c111, &rt.udiv(&c1130, a, Independent)?, Independent)?;
        let right = rt.udiv(&c3000, &rt.umul(a, b, Independent)?, Independent)?;
        let next = rt.uadd(&left, &right, Independent)?;
        u.push(next);
    }
    Ok(u)
}

/// SORN form of the bank recurrence from `[1.7, 1.8]`.
pub fn bank_unum(rt: &Runtime) -> Result<Vec<Sorn>, SornError> {
    let minus_one = constant(rt, -1);
    let mut a = vec![rt.uint("1.7", "1.8")?];
    for n in 1..=STEPS {
        let scaled = rt.umul(&a[n - 1], &constant(rt, n as i64), Independent)?;
        a.push(rt.uadd(&scaled, &minus_one, Independent)?);
    }
    Ok(a)
}

/// Partial sums `E_n = Σ_{k=0}^{n} 1/k!`, with `E_0 = {1}`.
pub fn euler_unum(rt: &Runtime) -> Result<Vec<Sorn>, SornError> {
    let mut factorial = constant(rt, 1);
    let mut e = vec![factorial.clone()];
    for k in 1..=EULER_TERMS {
        factorial = rt.umul(&factorial, &constant(rt, k as i64), Independent)?;
        let term = rt.uinv(&factorial)?;
        let next = rt.uadd(&e[k - 1], &term, Independent)?;
        e.push(next);
    }
    Ok(e)
}

/// Interval hull of a SORN as `(lo, lo_open, hi, hi_open)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hull {
    Empty,
    Full,
    Arc {
        lo: RStar,
        lo_open: bool,
        hi: RStar,
        hi_open: bool,
    },
}

pub fn hull(rt: &Runtime, s: &Sorn) -> Hull {
    match s.hull() {
        IndexRange::Empty => Hull::Empty,
        IndexRange::Full => Hull::Full,
        IndexRange::Run { start, end } => {
            let (lo, lc, hi, hc) = rt.run_bounds(start, end);
            Hull::Arc {
                lo,
                lo_open: !lc,
                hi,
                hi_open: !hc,
            }
        }
    }
}

/// CSV-ready demo output.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoResult {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl DemoResult {
    fn floats<I: IntoIterator<Item = (i64, f64)>>(values: I) -> Self {
        DemoResult {
            header: vec!["n", "value"],
            rows: values
                .into_iter()
                .map(|(n, v)| vec![n.to_string(), v.to_string()])
                .collect(),
        }
    }

    fn sorns<I: IntoIterator<Item = (i64, Sorn)>>(rt: &Runtime, values: I) -> Self {
        let endpoint = |x: &RStar| match x {
            RStar::Infinity => "inf".to_string(),
            RStar::Finite(v) => v.to_f64().to_string(),
        };
        let rows = values
            .into_iter()
            .map(|(n, s)| {
                let mut row = vec![n.to_string()];
                match hull(rt, &s) {
                    Hull::Arc {
                        lo,
                        lo_open,
                        hi,
                        hi_open,
                    } => row.extend([
                        endpoint(&lo),
                        lo_open.to_string(),
                        endpoint(&hi),
                        hi_open.to_string(),
                        "false".into(),
                        "false".into(),
                    ]),
                    Hull::Full => row.extend(["", "", "", "", "true", "false"].map(String::from)),
                    Hull::Empty => row.extend(["", "", "", "", "false", "true"].map(String::from)),
                }
                row
            })
            .collect();
        DemoResult {
            header: vec!["n", "lo", "lo_open", "hi", "hi_open", "is_full", "is_empty"],
            rows,
        }
    }

    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

fn indexed(values: Vec<f64>) -> impl Iterator<Item = (i64, f64)> {
    values.into_iter().enumerate().map(|(n, v)| (n as i64, v))
}

fn indexed_sorns(values: Vec<Sorn>) -> impl Iterator<Item = (i64, Sorn)> {
    values.into_iter().enumerate().map(|(n, v)| (n as i64, v))
}

/// Runs a demo; `rt` is required in unum mode.
pub fn run(demo: Demo, mode: Mode, rt: Option<&Runtime>) -> Result<DemoResult, DemoError> {
    match mode {
        Mode::Float => match demo {
            Demo::Spike => Ok(DemoResult::floats(spike_float())),
            Demo::Devil => Ok(DemoResult::floats(indexed(devil_float()))),
            Demo::Bank => Ok(DemoResult::floats(indexed(bank_float()))),
            Demo::Euler => Err(DemoError::NoFloatMode(demo)),
        },
        Mode::Unum => {
            let rt = rt.ok_or(DemoError::MissingTables)?;
            Ok(match demo {
                Demo::Spike => DemoResult::sorns(
                    rt,
                    spike_unum(rt)?.into_iter().map(|(i, s)| (i.0 as i64, s)),
                ),
                Demo::Devil => DemoResult::sorns(rt, indexed_sorns(devil_unum(rt)?)),
                Demo::Bank => DemoResult::sorns(rt, indexed_sorns(bank_unum(rt)?)),
                Demo::Euler => DemoResult::sorns(rt, indexed_sorns(euler_unum(rt)?)),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lut::TableSet;

    #[test]
    fn float_recurrences() {
        let bank = bank_float();
        assert_eq!(format!("{:.6}", bank[STEPS]), "1201807247.410449");
        let devil = devil_float();
        assert_eq!(devil[2], 18.5);
        assert!((devil[STEPS] - 100.0).abs() < 1e-6);
    }

    #[test]
    fn spike_window() {
        let s = spike_float();
        assert_eq!(s.first().unwrap().0, -9);
        assert_eq!(s.last().unwrap().0, 10);
        let (k, min) = s
            .iter()
            .cloned()
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        assert_eq!(k, 0);
        assert!((min - -36.04365338911715).abs() < 1e-9);
    }

    #[test]
    fn small_environment_demos_run() {
        let rt = Runtime::from_tables(TableSet::generate(8, 1).unwrap());
        for demo in [Demo::Spike, Demo::Devil, Demo::Bank, Demo::Euler] {
            let r = run(demo, Mode::Unum, Some(&rt)).unwrap();
            assert!(!r.rows.is_empty());
            assert!(r
                .to_csv()
                .starts_with("n,lo,lo_open,hi,hi_open,is_full,is_empty\n"));
        }
        assert!(matches!(
            run(Demo::Euler, Mode::Float, None),
            Err(DemoError::NoFloatMode(_))
        ));
        assert!(matches!(
            run(Demo::Bank, Mode::Unum, None),
            Err(DemoError::MissingTables)
        ));
        assert_eq!(
            run(Demo::Bank, Mode::Float, None).unwrap().rows.len(),
            STEPS + 1
        );
    }
}
