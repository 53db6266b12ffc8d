//! SORN bitsets and the table-driven runtime.

use std::fmt::Write as _;

use crate::env::{IndexRange, UnumEnv, UnumIndex};
use crate::error::SornError;
use crate::flake::Flake;
use crate::lut::{BinaryOp, TableSet, EMPTY_CODE, FULL_CODE};
use crate::rational::Rational;
use crate::rstar::RStar;

/// A set of Unums, one bit per Unum of an environment.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sorn {
    words: Vec<u64>,
    len: usize,
}

impl Sorn {
    pub fn empty(len: usize) -> Self {
        Sorn {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Sorn {
            words: vec![!0; len.div_ceil(64)],
            len,
        };
        s.trim();
        s
    }

    pub fn from_range(r: IndexRange, len: usize) -> Self {
        let mut s = Sorn::empty(len);
        s.insert_range(r);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = UnumIndex>>(indices: I, len: usize) -> Self {
        let mut s = Sorn::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: UnumIndex) -> bool {
        let i = i.get();
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: UnumIndex) {
        let i = i.get();
        assert!(i < self.len, "index {i} outside SORN of {} bits", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: UnumIndex) {
        let i = i.get();
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn insert_range(&mut self, r: IndexRange) {
        match r {
            IndexRange::Empty => {}
            IndexRange::Full => *self = Sorn::full(self.len),
            IndexRange::Run { .. } => {
                for i in r.indices(self.len) {
                    self.insert(i);
                }
            }
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Set indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = UnumIndex> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(UnumIndex::from(k * 64 + b))
            })
        })
    }

    pub fn union(&self, other: &Sorn) -> Sorn {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Sorn {
            words,
            len: self.len,
        }
    }

    pub fn intersection(&self, other: &Sorn) -> Sorn {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Sorn {
            words,
            len: self.len,
        }
    }

    pub fn is_superset(&self, other: &Sorn) -> bool {
        self.len == other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a | b == *a)
    }

    /// Maximal circular runs of set bits, ordered by start index. A full
    /// SORN has no runs with a defined start and yields `[Full]`.
    pub fn runs(&self) -> Vec<IndexRange> {
        let n = self.len;
        if self.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![IndexRange::Full];
        }
        let bit = |i: usize| self.contains(UnumIndex::from(i % n));
        let zero = (0..n).find(|&i| !bit(i)).expect("not full");
        let mut runs = Vec::new();
        let mut k = zero + 1;
        while k <= zero + n {
            if bit(k) {
                let start = k;
                while bit(k + 1) && k + 1 < zero + n {
                    k += 1;
                }
                runs.push(IndexRange::run(start % n, k % n));
            }
            k += 1;
        }
        runs.sort_by_key(|r| match r {
            IndexRange::Run { start, .. } => start.0,
            _ => 0,
        });
        runs
    }

    /// The shortest circular run containing every set bit: the complement
    /// of the longest run of clear bits (earliest start on ties).
    pub fn hull(&self) -> IndexRange {
        let n = self.len;
        if self.is_empty() {
            return IndexRange::Empty;
        }
        if self.is_full() {
            return IndexRange::Full;
        }
        let bit = |i: usize| self.contains(UnumIndex::from(i % n));
        let one = (0..n).find(|&i| bit(i)).expect("not empty");
        let (mut best_start, mut best_len) = (0, 0);
        let mut k = one + 1;
        while k < one + n {
            if !bit(k) {
                let start = k;
                while k + 1 < one + n && !bit(k + 1) {
                    k += 1;
                }
                let len = k - start + 1;
                if len > best_len || (len == best_len && start % n < best_start) {
                    best_start = start % n;
                    best_len = len;
                }
            }
            k += 1;
        }
        if best_len == 0 {
            return IndexRange::Full;
        }
        IndexRange::run((best_start + best_len) % n, (best_start + n - 1) % n)
    }
}

impl std::fmt::Debug for Sorn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i.0)).finish()
    }
}

/// Whether the operands of a binary operation denote the same quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Dependency {
    #[default]
    Independent,
    Dependent,
}

/// How an undefined pair result (`0·∞̆`, `∞̆+∞̆`) propagates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EmptyPolicy {
    /// The pair contributes all of ℝ*.
    #[default]
    Saturate,
    /// The whole result becomes ∅.
    Strict,
}

/// A decimal or binary value converted exactly to a rational.
pub trait ExactInput {
    fn to_exact(&self) -> Result<Rational, SornError>;
}

impl ExactInput for f64 {
    fn to_exact(&self) -> Result<Rational, SornError> {
        Rational::from_f64(*self)
            .ok_or_else(|| SornError::InvalidArgument(format!("{self} is not finite")))
    }
}

impl ExactInput for &str {
    fn to_exact(&self) -> Result<Rational, SornError> {
        Rational::parse(self).map_err(|e| SornError::InvalidArgument(e.to_string()))
    }
}

impl ExactInput for Rational {
    fn to_exact(&self) -> Result<Rational, SornError> {
        Ok(self.clone())
    }
}

impl ExactInput for i64 {
    fn to_exact(&self) -> Result<Rational, SornError> {
        Ok(Rational::from_integer(*self))
    }
}

/// Accumulates a union of circular runs with a difference array.
struct RunUnion {
    diff: Vec<i32>,
    full: bool,
    undefined: bool,
}

impl RunUnion {
    fn new(n: usize) -> Self {
        RunUnion {
            diff: vec![0; n + 1],
            full: false,
            undefined: false,
        }
    }

    fn add(&mut self, code: u32) {
        match code {
            FULL_CODE => {
                self.full = true;
                self.undefined = true;
            }
            EMPTY_CODE => {}
            c => {
                let (s, e) = ((c >> 16) as usize, (c & 0xFFFF) as usize);
                let n = self.diff.len() - 1;
                if s <= e {
                    self.diff[s] += 1;
                    self.diff[e + 1] -= 1;
                } else {
                    self.diff[s] += 1;
                    self.diff[n] -= 1;
                    self.diff[0] += 1;
                    self.diff[e + 1] -= 1;
                }
            }
        }
    }

    fn finish(self, policy: EmptyPolicy) -> Sorn {
        let n = self.diff.len() - 1;
        if self.undefined && policy == EmptyPolicy::Strict {
            return Sorn::empty(n);
        }
        if self.full {
            return Sorn::full(n);
        }
        let mut s = Sorn::empty(n);
        let mut depth = 0;
        for (i, d) in self.diff[..n].iter().enumerate() {
            depth += d;
            if depth > 0 {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        s
    }
}

/// An environment with its tables; every arithmetic operation is a table
/// lookup.
#[derive(Clone, Debug)]
pub struct Runtime {
    env: UnumEnv,
    tables: TableSet,
    policy: EmptyPolicy,
}

impl Runtime {
    pub fn new(env: UnumEnv, tables: TableSet) -> Result<Self, SornError> {
        if env.lattice() != tables.lattice() {
            return Err(SornError::LatticeMismatch);
        }
        Ok(Runtime {
            env,
            tables,
            policy: EmptyPolicy::default(),
        })
    }

    pub fn from_tables(tables: TableSet) -> Self {
        let env = UnumEnv::new(tables.lattice().clone());
        Runtime {
            env,
            tables,
            policy: EmptyPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: EmptyPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn policy(&self) -> EmptyPolicy {
        self.policy
    }

    pub fn env(&self) -> &UnumEnv {
        &self.env
    }

    pub fn tables(&self) -> &TableSet {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.env.len()
    }

    pub fn is_empty(&self) -> bool {
        self.env.is_empty()
    }

    fn check(&self, a: &Sorn) -> Result<(), SornError> {
        if a.len() != self.len() {
            return Err(SornError::SizeMismatch {
                left: a.len(),
                right: self.len(),
            });
        }
        Ok(())
    }

    fn check2(&self, a: &Sorn, b: &Sorn) -> Result<(), SornError> {
        if a.len() != b.len() {
            return Err(SornError::SizeMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        self.check(a)
    }

    /// The SORN of all Unums meeting `f`.
    pub fn blur(&self, f: &Flake) -> Sorn {
        Sorn::from_range(self.env.blur(f), self.len())
    }

    /// The SORN of the Unum containing `x`.
    pub fn point(&self, x: impl Into<RStar>) -> Sorn {
        Sorn::from_range(IndexRange::single(self.env.locate(&x.into())), self.len())
    }

    pub fn uemp(&self) -> Sorn {
        Sorn::empty(self.len())
    }

    pub fn uset(&self) -> Sorn {
        Sorn::full(self.len())
    }

    fn binary(&self, op: BinaryOp, a: &Sorn, b: &Sorn, pair: Option<&[u16]>) -> Sorn {
        let mut acc = RunUnion::new(self.len());
        match pair {
            None => {
                let bs: Vec<usize> = b.iter().map(UnumIndex::get).collect();
                'outer: for i in a.iter() {
                    for &j in &bs {
                        acc.add(self.tables.lookup(op, i.get(), j));
                        if acc.full && self.policy == EmptyPolicy::Saturate {
                            break 'outer;
                        }
                    }
                }
            }
            Some(map) => {
                for i in a.intersection(b).iter() {
                    acc.add(self.tables.lookup(op, i.get(), map[i.get()] as usize));
                }
            }
        }
        acc.finish(self.policy)
    }

    fn same(&self) -> Vec<u16> {
        (0..self.len() as u16).collect()
    }

    /// Dual addition; dependent operands pair each Unum with itself.
    pub fn uadd(&self, a: &Sorn, b: &Sorn, dep: Dependency) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(match dep {
            Dependency::Independent => self.binary(BinaryOp::Add, a, b, None),
            Dependency::Dependent => self.binary(BinaryOp::Add, a, b, Some(&self.same())),
        })
    }

    /// `a + (−b)`; dependent operands pair each Unum with its negation.
    pub fn usub(&self, a: &Sorn, b: &Sorn, dep: Dependency) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(match dep {
            Dependency::Independent => self.binary(BinaryOp::Add, a, &self.uneg(b)?, None),
            Dependency::Dependent => self.binary(BinaryOp::Add, a, b, Some(self.tables.neg_map())),
        })
    }

    /// Dual multiplication; dependent operands pair each Unum with itself.
    pub fn umul(&self, a: &Sorn, b: &Sorn, dep: Dependency) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(match dep {
            Dependency::Independent => self.binary(BinaryOp::Mul, a, b, None),
            Dependency::Dependent => self.binary(BinaryOp::Mul, a, b, Some(&self.same())),
        })
    }

    /// `a · (/b)`; dependent operands pair each Unum with its inverse.
    pub fn udiv(&self, a: &Sorn, b: &Sorn, dep: Dependency) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(match dep {
            Dependency::Independent => self.binary(BinaryOp::Mul, a, &self.uinv(b)?, None),
            Dependency::Dependent => self.binary(BinaryOp::Mul, a, b, Some(self.tables.inv_map())),
        })
    }

    fn permute(&self, a: &Sorn, map: &[u16]) -> Result<Sorn, SornError> {
        self.check(a)?;
        Ok(Sorn::from_indices(
            a.iter().map(|i| UnumIndex(map[i.get()] as u32)),
            self.len(),
        ))
    }

    pub fn uneg(&self, a: &Sorn) -> Result<Sorn, SornError> {
        self.permute(a, self.tables.neg_map())
    }

    pub fn uinv(&self, a: &Sorn) -> Result<Sorn, SornError> {
        self.permute(a, self.tables.inv_map())
    }

    pub fn uabs(&self, a: &Sorn) -> Result<Sorn, SornError> {
        self.permute(a, self.tables.abs_map())
    }

    /// Natural logarithm: ∅ if any member Unum meets the negative reals or
    /// is `{∞̆}`; `{0}` maps to `{∞̆}`.
    pub fn ulog(&self, a: &Sorn) -> Result<Sorn, SornError> {
        self.check(a)?;
        let log = self.tables.log_table();
        let mut acc = RunUnion::new(self.len());
        for i in a.iter() {
            let code = log[i.get()];
            if code == EMPTY_CODE {
                return Ok(self.uemp());
            }
            acc.add(code);
        }
        Ok(acc.finish(self.policy))
    }

    pub fn ucut(&self, a: &Sorn, b: &Sorn) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(a.intersection(b))
    }

    pub fn uuni(&self, a: &Sorn, b: &Sorn) -> Result<Sorn, SornError> {
        self.check2(a, b)?;
        Ok(a.union(b))
    }

    pub fn uequ(&self, a: &Sorn, b: &Sorn) -> Result<bool, SornError> {
        self.check2(a, b)?;
        Ok(a == b)
    }

    /// `a ⊇ b`.
    pub fn usup(&self, a: &Sorn, b: &Sorn) -> Result<bool, SornError> {
        self.check2(a, b)?;
        Ok(a.is_superset(b))
    }

    /// Smallest SORN covering the closed interval `[lo, hi]`.
    pub fn uint<T: ExactInput>(&self, lo: T, hi: T) -> Result<Sorn, SornError> {
        let (lo, hi) = (lo.to_exact()?, hi.to_exact()?);
        if lo > hi {
            return Err(SornError::InvalidArgument(format!(
                "empty interval [{lo}, {hi}]"
            )));
        }
        let mut s = self.blur(&Flake::point(lo.clone()));
        s.insert_range(self.env.blur(&Flake::point(hi.clone())));
        s.insert_range(self.env.blur(&Flake::interval(lo, hi)));
        Ok(s)
    }

    fn left_end(&self, i: UnumIndex) -> (RStar, bool) {
        match self.env.unum(i) {
            Flake::Singleton(x) => (x.clone(), true),
            Flake::Interval(iv) => (iv.lo().clone(), false),
            Flake::Empty => unreachable!("Unums are non-empty"),
        }
    }

    fn right_end(&self, i: UnumIndex) -> (RStar, bool) {
        match self.env.unum(i) {
            Flake::Singleton(x) => (x.clone(), true),
            Flake::Interval(iv) => (iv.hi().clone(), false),
            Flake::Empty => unreachable!("Unums are non-empty"),
        }
    }

    /// Endpoints `(lo, lo_closed, hi, hi_closed)` of a run of Unums.
    pub fn run_bounds(&self, start: UnumIndex, end: UnumIndex) -> (RStar, bool, RStar, bool) {
        let (lo, lc) = self.left_end(start);
        let (hi, hc) = self.right_end(end);
        (lo, lc, hi, hc)
    }

    /// Human-readable rendering as a union of maximal runs.
    pub fn uout(&self, a: &Sorn) -> String {
        if a.is_empty() {
            return "empty".into();
        }
        if a.is_full() {
            return "R*".into();
        }
        let inf = self.env.infinity_index();
        if a.count() + 1 == a.len() && !a.contains(inf) {
            return "R".into();
        }
        let mut out = String::new();
        for (k, r) in a.runs().into_iter().enumerate() {
            let IndexRange::Run { start, end } = r else {
                unreachable!("partial SORN")
            };
            let (lo, lc, hi, hc) = self.run_bounds(start, end);
            if k > 0 {
                out.push_str(" u ");
            }
            let _ = write!(
                out,
                "{}{lo}, {hi}{}",
                if lc { '[' } else { '(' },
                if hc { ']' } else { ')' }
            );
        }
        out
    }
}
