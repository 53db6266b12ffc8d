//! Lookup tables for table-driven SORN arithmetic.
//!
//! Binary operation tables are triangular: the entry for `(i, j)` with
//! `i ≤ j` lives at `i·N − i(i−1)/2 + (j − i)`. Each entry packs an
//! [`IndexRange`] into a `u32` as `start << 16 | end`, with reserved codes
//! [`FULL_CODE`] and [`EMPTY_CODE`].

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::env::{IndexRange, UnumEnv, UnumIndex};
use crate::error::TableError;
use crate::flake::{fadd, fmul, Flake};
use crate::lattice::{decade_lattice, lattice_size_from_bits, Lattice};
use crate::monotone::{feval_monotone, Ln, MonotoneMap};

pub const FULL_CODE: u32 = 0xFFFF_FFFF;
pub const EMPTY_CODE: u32 = 0xFFFF_FFFE;

/// Largest supported bit width: a run over the single index `0xFFFF` would
/// alias [`FULL_CODE`] at 16 bits.
pub const MAX_BITS: u8 = 15;
pub const MIN_BITS: u8 = 3;

pub fn encode(r: IndexRange) -> u32 {
    match r {
        IndexRange::Empty => EMPTY_CODE,
        IndexRange::Full => FULL_CODE,
        IndexRange::Run { start, end } => {
            debug_assert!(start.0 < 0xFFFF && end.0 < 0xFFFF);
            start.0 << 16 | end.0
        }
    }
}

pub fn decode(code: u32) -> IndexRange {
    match code {
        FULL_CODE => IndexRange::Full,
        EMPTY_CODE => IndexRange::Empty,
        c => IndexRange::Run {
            start: UnumIndex(c >> 16),
            end: UnumIndex(c & 0xFFFF),
        },
    }
}

/// Number of entries of a triangular table over `n` Unums.
pub fn triangular_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of the unordered pair `{i, j}` in a triangular table.
#[inline]
pub fn triangular_index(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Size in bits of the add and mul tables at `n_b` bits per Unum and
/// `2·n_b` bits per entry: `n_b · 2^(n_b+1) · (2^n_b + 1)`.
pub fn table_size_bits(n_b: u32) -> BigInt {
    let pow = BigInt::from(1) << n_b;
    BigInt::from(n_b) * (&pow << 1) * (pow + 1)
}

/// Which binary operation a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Mul,
}

impl BinaryOp {
    pub fn apply(self, a: &Flake, b: &Flake) -> Flake {
        match self {
            BinaryOp::Add => fadd(a, b),
            BinaryOp::Mul => fmul(a, b),
        }
    }
}

/// Blurred result of a dual operation on two Unums; undefined is ℝ*.
pub fn dual_entry(env: &UnumEnv, op: BinaryOp, i: UnumIndex, j: UnumIndex) -> IndexRange {
    match op.apply(env.unum(i), env.unum(j)) {
        Flake::Empty => IndexRange::Full,
        f => {
            // Unum operands never produce an arc through ∞̆ that meets every
            // Unum, so `Full` stays reserved for undefined results.
            let r = env.blur(&f);
            debug_assert_ne!(r, IndexRange::Full);
            r
        }
    }
}

/// Blurred ln image of a Unum in `[0, ∞̆)`; `{0}` maps to `{∞̆}`.
pub fn log_entry(env: &UnumEnv, i: UnumIndex) -> IndexRange {
    if i.get() >= 4 * env.quarter() {
        return IndexRange::Empty;
    }
    let ln = Ln::default();
    match feval_monotone(&ln, env.unum(i)) {
        Ok(f) => env.blur(&f),
        Err(_) => IndexRange::Empty,
    }
}

/// A unary map evaluated per Unum, or `Empty` outside its domain.
pub fn function_table<M: MonotoneMap + Sync>(env: &UnumEnv, f: &M) -> Vec<u32> {
    (0..env.len())
        .into_par_iter()
        .map(|i| match feval_monotone(f, env.unum(UnumIndex::from(i))) {
            Ok(img) => encode(env.blur(&img)),
            Err(_) => EMPTY_CODE,
        })
        .collect()
}

fn binary_table(env: &UnumEnv, op: BinaryOp) -> Vec<u32> {
    let n = env.len();
    let mut table = vec![0u32; triangular_len(n)];
    let mut rows: Vec<(usize, &mut [u32])> = Vec::with_capacity(n);
    let mut rest = table.as_mut_slice();
    for i in 0..n {
        let (row, tail) = rest.split_at_mut(n - i);
        rows.push((i, row));
        rest = tail;
    }
    rows.into_par_iter().for_each(|(i, row)| {
        let a = env.unum(UnumIndex::from(i));
        for (k, slot) in row.iter_mut().enumerate() {
            let b = env.unum(UnumIndex::from(i + k));
            *slot = match op.apply(a, b) {
                Flake::Empty => FULL_CODE,
                f => encode(env.blur(&f)),
            };
        }
    });
    table
}

/// Every table needed by the runtime for one environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSet {
    n_b: u8,
    n_s: u8,
    lattice: Lattice,
    add: Vec<u32>,
    mul: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    abs: Vec<u16>,
}

impl TableSet {
    /// Tables for the decade lattice of `n_b`-bit machine Unums with `n_s`
    /// significant digits.
    pub fn generate(n_b: u8, n_s: u8) -> Result<Self, TableError> {
        if !(MIN_BITS..=MAX_BITS).contains(&n_b) {
            return Err(TableError::InvalidParameter(format!(
                "bit count {n_b} outside {MIN_BITS}..={MAX_BITS}"
            )));
        }
        if n_s == 0 {
            return Err(TableError::InvalidParameter(
                "significant digits must be positive".into(),
            ));
        }
        let p = lattice_size_from_bits(n_b as u32)?;
        let env = UnumEnv::new(decade_lattice(p, n_s as u32)?);
        let mut t = TableSet::for_env(&env)?;
        t.n_s = n_s;
        Ok(t)
    }

    /// Tables for an arbitrary environment of at most `2^15` Unums. Such
    /// sets record `n_s = 0` and, unless the size is a power of two,
    /// `n_b = 0`.
    pub fn for_env(env: &UnumEnv) -> Result<Self, TableError> {
        let n = env.len();
        if n > 1 << MAX_BITS {
            return Err(TableError::InvalidParameter(format!(
                "{n} Unums exceed the table format"
            )));
        }
        let n_b = if n.is_power_of_two() {
            n.trailing_zeros() as u8
        } else {
            0
        };
        let map = |m: fn(&UnumEnv, UnumIndex) -> UnumIndex| -> Vec<u16> {
            (0..n)
                .map(|i| m(env, UnumIndex::from(i)).0 as u16)
                .collect()
        };
        Ok(TableSet {
            n_b,
            n_s: 0,
            lattice: env.lattice().clone(),
            add: binary_table(env, BinaryOp::Add),
            mul: binary_table(env, BinaryOp::Mul),
            log: (0..n)
                .map(|i| encode(log_entry(env, UnumIndex::from(i))))
                .collect(),
            neg: map(UnumEnv::neg_index),
            inv: map(UnumEnv::inv_index),
            abs: map(UnumEnv::abs_index),
        })
    }

    /// Assembles a table set from raw parts, checking sizes.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        n_b: u8,
        n_s: u8,
        lattice: Lattice,
        add: Vec<u32>,
        mul: Vec<u32>,
        log: Vec<u32>,
        neg: Vec<u16>,
        inv: Vec<u16>,
        abs: Vec<u16>,
    ) -> Result<Self, TableError> {
        let n = 8 * (lattice.len() + 1);
        let bad = |what: &str| TableError::Malformed(format!("{what} has the wrong length"));
        if add.len() != triangular_len(n) {
            return Err(bad("add table"));
        }
        if mul.len() != triangular_len(n) {
            return Err(bad("mul table"));
        }
        if log.len() != n {
            return Err(bad("log table"));
        }
        if neg.len() != n || inv.len() != n || abs.len() != n {
            return Err(bad("index map"));
        }
        let valid = |c: &u32| match decode(*c) {
            IndexRange::Run { start, end } => start.get() < n && end.get() < n,
            _ => true,
        };
        if !add.iter().chain(&mul).chain(&log).all(valid) {
            return Err(TableError::Malformed("range entry out of bounds".into()));
        }
        if !neg
            .iter()
            .chain(&inv)
            .chain(&abs)
            .all(|&i| (i as usize) < n)
        {
            return Err(TableError::Malformed(
                "index map entry out of bounds".into(),
            ));
        }
        Ok(TableSet {
            n_b,
            n_s,
            lattice,
            add,
            mul,
            log,
            neg,
            inv,
            abs,
        })
    }

    pub fn n_b(&self) -> u8 {
        self.n_b
    }

    pub fn n_s(&self) -> u8 {
        self.n_s
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Number of Unums, `8(|P| + 1)`.
    pub fn unum_count(&self) -> usize {
        self.log.len()
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn neg_map(&self) -> &[u16] {
        &self.neg
    }

    pub fn inv_map(&self) -> &[u16] {
        &self.inv
    }

    pub fn abs_map(&self) -> &[u16] {
        &self.abs
    }

    pub fn table(&self, op: BinaryOp) -> &[u32] {
        match op {
            BinaryOp::Add => &self.add,
            BinaryOp::Mul => &self.mul,
        }
    }

    #[inline]
    pub fn lookup(&self, op: BinaryOp, i: usize, j: usize) -> u32 {
        self.table(op)[triangular_index(i, j, self.unum_count())]
    }

    pub fn entry(&self, op: BinaryOp, i: UnumIndex, j: UnumIndex) -> IndexRange {
        decode(self.lookup(op, i.get(), j.get()))
    }

    pub fn log_range(&self, i: UnumIndex) -> IndexRange {
        decode(self.log[i.get()])
    }
}
