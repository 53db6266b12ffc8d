//! Unum environments: the enumerated partition of ℝ* induced by a lattice.
//!
//! With `q = |P| + 1` the environment holds `N = 8q` Unums. Index `0` is
//! `{0}`, `2q` is `{1}`, `4q` is `{∞̆}` and `6q` is `{−1}`; indices increase
//! counter-clockwise around the projective circle. Even indices are exact
//! points and odd indices the open intervals between them.

use std::fmt;

use crate::flake::{fneg, Flake};
use crate::lattice::Lattice;
use crate::rational::Rational;
use crate::rstar::RStar;

/// Position of a Unum in its environment's enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnumIndex(pub u32);

impl UnumIndex {
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for UnumIndex {
    fn from(i: usize) -> Self {
        UnumIndex(i as u32)
    }
}

impl fmt::Display for UnumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A circular run of Unum indices, or one of two sentinels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexRange {
    Empty,
    /// All Unums, i.e. ℝ*.
    Full,
    /// `start, start+1, …, end` modulo the environment size.
    Run {
        start: UnumIndex,
        end: UnumIndex,
    },
}

impl IndexRange {
    pub fn single(i: UnumIndex) -> Self {
        IndexRange::Run { start: i, end: i }
    }

    pub fn run(start: usize, end: usize) -> Self {
        IndexRange::Run {
            start: start.into(),
            end: end.into(),
        }
    }

    /// Number of indices covered in an environment of `n` Unums.
    pub fn count(&self, n: usize) -> usize {
        match *self {
            IndexRange::Empty => 0,
            IndexRange::Full => n,
            IndexRange::Run { start, end } => (end.get() + n - start.get()) % n + 1,
        }
    }

    pub fn contains(&self, i: UnumIndex, n: usize) -> bool {
        match *self {
            IndexRange::Empty => false,
            IndexRange::Full => true,
            IndexRange::Run { start, .. } => (i.get() + n - start.get()) % n < self.count(n),
        }
    }

    pub fn indices(&self, n: usize) -> impl Iterator<Item = UnumIndex> {
        let start = match *self {
            IndexRange::Run { start, .. } => start.get(),
            _ => 0,
        };
        (0..self.count(n)).map(move |k| UnumIndex::from((start + k) % n))
    }
}

/// The Unums of a lattice together with their enumeration.
#[derive(Clone, Debug)]
pub struct UnumEnv {
    lattice: Lattice,
    /// `0, 1/p_n, …, 1/p_1, 1, p_1, …, p_n`: the finite vertices of the
    /// positive half, `vertices[k]` being the Unum at index `2k`.
    vertices: Vec<Rational>,
    approx: Vec<f64>,
    unums: Vec<Flake>,
}

impl UnumEnv {
    pub fn new(lattice: Lattice) -> Self {
        let mut vertices = Vec::with_capacity(2 * lattice.len() + 2);
        vertices.push(Rational::zero());
        vertices.extend(
            lattice
                .points()
                .iter()
                .rev()
                .map(|p| p.recip().expect("p > 1")),
        );
        vertices.push(Rational::one());
        vertices.extend(lattice.points().iter().cloned());
        let approx = vertices.iter().map(Rational::to_f64).collect();

        let q = lattice.len() + 1;
        let n = 8 * q;
        let mut unums = Vec::with_capacity(n);
        for k in 0..2 * q {
            let hi = vertices
                .get(k + 1)
                .cloned()
                .map_or(RStar::Infinity, RStar::Finite);
            unums.push(Flake::point(vertices[k].clone()));
            unums.push(Flake::interval(vertices[k].clone(), hi));
        }
        unums.push(Flake::Singleton(RStar::Infinity));
        for i in (1..4 * q).rev() {
            let mirrored = fneg(&unums[i]);
            unums.push(mirrored);
        }
        debug_assert_eq!(unums.len(), n);
        UnumEnv {
            lattice,
            vertices,
            approx,
            unums,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `|P| + 1`.
    pub fn quarter(&self) -> usize {
        self.lattice.len() + 1
    }

    pub fn len(&self) -> usize {
        self.unums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unums.is_empty()
    }

    pub fn unums(&self) -> &[Flake] {
        &self.unums
    }

    pub fn unum(&self, i: UnumIndex) -> &Flake {
        &self.unums[i.get()]
    }

    pub fn zero_index(&self) -> UnumIndex {
        UnumIndex(0)
    }

    pub fn one_index(&self) -> UnumIndex {
        UnumIndex::from(2 * self.quarter())
    }

    pub fn infinity_index(&self) -> UnumIndex {
        UnumIndex::from(4 * self.quarter())
    }

    pub fn minus_one_index(&self) -> UnumIndex {
        UnumIndex::from(6 * self.quarter())
    }

    pub fn neg_index(&self, i: UnumIndex) -> UnumIndex {
        let n = self.len();
        UnumIndex::from((n - i.get()) % n)
    }

    pub fn inv_index(&self, i: UnumIndex) -> UnumIndex {
        let n = self.len();
        UnumIndex::from((4 * self.quarter() + n - i.get()) % n)
    }

    /// Index of the Unum `|u|`; Unums never straddle 0 or ∞̆.
    pub fn abs_index(&self, i: UnumIndex) -> UnumIndex {
        if i.get() <= 4 * self.quarter() {
            i
        } else {
            self.neg_index(i)
        }
    }

    /// Position of a non-negative finite value in the positive half: `2k` if
    /// it equals `vertices[k]`, else `2k + 1` for the gap above `vertices[k]`.
    fn locate_nonneg(&self, x: &Rational) -> usize {
        let v = &self.vertices;
        let xf = x.to_f64();
        // Narrow by the float image, then settle exactly.
        let mut k = self.approx.partition_point(|&a| a < xf).min(v.len() - 1);
        while k > 0 && v[k] > *x {
            k -= 1;
        }
        while k + 1 < v.len() && v[k + 1] <= *x {
            k += 1;
        }
        if v[k] == *x {
            2 * k
        } else {
            2 * k + 1
        }
    }

    /// The Unum containing a point.
    pub fn locate(&self, x: &RStar) -> UnumIndex {
        match x {
            RStar::Infinity => self.infinity_index(),
            RStar::Finite(x) if x.is_negative() => {
                self.neg_index(UnumIndex::from(self.locate_nonneg(&-x)))
            }
            RStar::Finite(x) => UnumIndex::from(self.locate_nonneg(x)),
        }
    }

    /// First Unum meeting `(lo, …)` when walking up from `lo`.
    fn start_after(&self, lo: &RStar) -> usize {
        let i = self.locate(lo).get();
        if i.is_multiple_of(2) {
            (i + 1) % self.len()
        } else {
            i
        }
    }

    /// Last Unum meeting `(…, hi)` when walking up towards `hi`.
    fn end_before(&self, hi: &RStar) -> usize {
        let i = self.locate(hi).get();
        if i.is_multiple_of(2) {
            (i + self.len() - 1) % self.len()
        } else {
            i
        }
    }

    /// The Unums that intersect `f`; their union covers `f`.
    pub fn blur(&self, f: &Flake) -> IndexRange {
        match f {
            Flake::Empty => IndexRange::Empty,
            Flake::Singleton(x) => IndexRange::single(self.locate(x)),
            Flake::Interval(i) => {
                let (start, end) = (self.start_after(i.lo()), self.end_before(i.hi()));
                // Both ends inside one open Unum with `lo > hi`: the interval
                // leaves that Unum and wraps the whole circle back into it.
                let wraps_within = match (i.lo(), i.hi()) {
                    (RStar::Finite(lo), RStar::Finite(hi)) => start == end && lo > hi,
                    _ => false,
                };
                if wraps_within {
                    IndexRange::Full
                } else {
                    IndexRange::run(start, end)
                }
            }
        }
    }

    /// Index list of a blurred Flake.
    pub fn blur_indices(&self, f: &Flake) -> Vec<UnumIndex> {
        self.blur(f).indices(self.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flake::finv;

    fn f(s: &str) -> Flake {
        s.parse().unwrap()
    }

    fn worked_example() -> UnumEnv {
        UnumEnv::new(Lattice::parse(&["2", "3.5", "5", "6"]).unwrap())
    }

    #[test]
    fn enumeration_of_worked_example() {
        let env = worked_example();
        assert_eq!(env.len(), 40);
        assert_eq!(env.unum(UnumIndex(0)), &f("{0}"));
        assert_eq!(env.unum(UnumIndex(1)), &f("(0, 1/6)"));
        assert_eq!(env.unum(UnumIndex(2)), &f("{1/6}"));
        assert_eq!(env.unum(UnumIndex(9)), &f("(1/2, 1)"));
        assert_eq!(env.unum(UnumIndex(10)), &f("{1}"));
        assert_eq!(env.unum(UnumIndex(19)), &f("(6, inf)"));
        assert_eq!(env.unum(UnumIndex(20)), &f("{inf}"));
        assert_eq!(env.unum(UnumIndex(21)), &f("(inf, -6)"));
        assert_eq!(env.unum(UnumIndex(30)), &f("{-1}"));
        assert_eq!(env.unum(UnumIndex(39)), &f("(-1/6, 0)"));
    }

    #[test]
    fn index_maps() {
        let env = worked_example();
        assert_eq!(env.neg_index(UnumIndex(10)), UnumIndex(30));
        assert_eq!(env.inv_index(UnumIndex(0)), UnumIndex(20));
        assert_eq!(env.abs_index(UnumIndex(30)), UnumIndex(10));
        for i in 0..env.len() {
            let i = UnumIndex::from(i);
            assert_eq!(env.unum(env.neg_index(i)), &fneg(env.unum(i)));
            assert_eq!(env.unum(env.inv_index(i)), &finv(env.unum(i)));
        }
    }

    #[test]
    fn blur_examples() {
        let env = worked_example();
        let ex = env.blur_indices(&f("(4.5, 5.5)"));
        let got: Vec<&Flake> = ex.iter().map(|&i| env.unum(i)).collect();
        assert_eq!(got, vec![&f("(3.5, 5)"), &f("{5}"), &f("(5, 6)")]);
        assert_eq!(env.blur(&f("{inf}")), IndexRange::single(UnumIndex(20)));
        assert_eq!(
            env.blur(&f("{3.5}")),
            IndexRange::single(env.locate(&"3.5".parse().unwrap()))
        );
        assert_eq!(env.blur(&Flake::Empty), IndexRange::Empty);
        assert_eq!(env.blur(&Flake::real()), IndexRange::run(21, 19));
        assert_eq!(env.blur(&f("(-0.9, 0.7)")), IndexRange::run(31, 9));
        assert_eq!(env.blur(&f("(6, -6)")), IndexRange::run(19, 21));
        assert_eq!(env.blur(&f("(5.8, 5.2)")), IndexRange::Full);
        assert_eq!(env.blur(&f("(5.2, 5.8)")), IndexRange::run(17, 17));
        assert_eq!(env.blur(&f("(1, 2)")), IndexRange::single(UnumIndex(11)));
    }

    #[test]
    fn ranges() {
        let r = IndexRange::run(38, 1);
        assert_eq!(r.count(40), 4);
        assert!(r.contains(UnumIndex(0), 40));
        assert!(!r.contains(UnumIndex(2), 40));
        let v: Vec<u32> = r.indices(40).map(|i| i.0).collect();
        assert_eq!(v, vec![38, 39, 0, 1]);
        assert_eq!(IndexRange::Full.count(40), 40);
        assert_eq!(IndexRange::Empty.indices(40).count(), 0);
    }
}
