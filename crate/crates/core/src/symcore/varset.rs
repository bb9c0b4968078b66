//! Variable sets: the Givental triangle and the Toda chain coordinates.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A coordinate symbol. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Triangle variable `T_{k,i}` (row `k`, position `i`).
    T(usize, usize),
    /// Particle coordinate `x_n`.
    X(usize),
    /// Integration coordinate `y_n` of the recursion kernel.
    Y(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(k, i) => write!(f, "T[{k},{i}]"),
            Var::X(n) => write!(f, "x{n}"),
            Var::Y(n) => write!(f, "y{n}"),
        }
    }
}

/// Ordered set of variables an expression lives over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarSet {
    /// `T_{k,i}` with `1 <= i <= k <= K`; `K = rank - 1` in the body
    /// convention (top row identically zero) and `K = rank` when the top row
    /// is kept as formal variables.
    Triangle { rank: usize, top_row: bool },
    /// `x_1..x_x` followed by `y_1..y_y`.
    Chain { x: usize, y: usize },
}

impl VarSet {
    /// Body convention: `T_{N,i} = 0`, variables in rows `1..N-1`.
    pub fn triangle(rank: usize) -> Result<Self> {
        Self::check_rank(rank)?;
        Ok(VarSet::Triangle { rank, top_row: false })
    }

    /// Top row `T_{N,i}` kept as variables.
    pub fn extended(rank: usize) -> Result<Self> {
        Self::check_rank(rank)?;
        Ok(VarSet::Triangle { rank, top_row: true })
    }

    pub fn chain(x: usize, y: usize) -> Self {
        VarSet::Chain { x, y }
    }

    fn check_rank(rank: usize) -> Result<()> {
        if rank < 2 {
            return Err(Error::RankOutOfRange { rank, min: 2, max: usize::MAX });
        }
        Ok(())
    }

    /// Number of rows present for a triangle; zero for chains.
    pub fn rows(&self) -> usize {
        match *self {
            VarSet::Triangle { rank, top_row } => {
                if top_row {
                    rank
                } else {
                    rank - 1
                }
            }
            VarSet::Chain { .. } => 0,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            VarSet::Triangle { rank, .. } => rank,
            VarSet::Chain { x, .. } => x,
        }
    }

    pub fn has_top_row(&self) -> bool {
        matches!(self, VarSet::Triangle { top_row: true, .. })
    }

    pub fn len(&self) -> usize {
        match *self {
            VarSet::Triangle { .. } => {
                let k = self.rows();
                k * (k + 1) / 2
            }
            VarSet::Chain { x, y } => x + y,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        match (*self, v) {
            (VarSet::Triangle { .. }, Var::T(k, i)) => {
                if i >= 1 && i <= k && k <= self.rows() {
                    Some(k * (k - 1) / 2 + i - 1)
                } else {
                    None
                }
            }
            (VarSet::Chain { x, .. }, Var::X(n)) if n >= 1 && n <= x => Some(n - 1),
            (VarSet::Chain { x, y }, Var::Y(n)) if n >= 1 && n <= y => Some(x + n - 1),
            _ => None,
        }
    }

    pub fn require(&self, v: Var) -> Result<usize> {
        self.index(v).ok_or_else(|| Error::UnknownVariable(format!("{v} in {self}")))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index(v).is_some()
    }

    pub fn var(&self, idx: usize) -> Var {
        match *self {
            VarSet::Triangle { .. } => {
                let mut k = 1;
                while k * (k + 1) / 2 <= idx {
                    k += 1;
                }
                Var::T(k, idx - k * (k - 1) / 2 + 1)
            }
            VarSet::Chain { x, .. } => {
                if idx < x {
                    Var::X(idx + 1)
                } else {
                    Var::Y(idx - x + 1)
                }
            }
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.len()).map(move |i| self.var(i))
    }

    /// Index map sending each variable of `self` to its position in `target`.
    pub fn embedding(&self, target: &VarSet) -> Result<Vec<usize>> {
        self.vars().map(|v| target.require(v)).collect()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarSet::Triangle { rank, top_row: false } => write!(f, "triangle(N={rank})"),
            VarSet::Triangle { rank, top_row: true } => write!(f, "triangle+top(N={rank})"),
            VarSet::Chain { x, y } => write!(f, "chain(x={x},y={y})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts_and_indexing() {
        for rank in 2..7 {
            let body = VarSet::triangle(rank).unwrap();
            let ext = VarSet::extended(rank).unwrap();
            assert_eq!(body.len(), rank * (rank - 1) / 2);
            assert_eq!(ext.len(), rank * (rank + 1) / 2);
            for (n, v) in ext.vars().enumerate() {
                assert_eq!(ext.index(v), Some(n));
            }
            assert!(!body.contains(Var::T(rank, 1)));
            assert!(ext.contains(Var::T(rank, rank)));
        }
    }

    #[test]
    fn out_of_range_references_are_rejected() {
        let vs = VarSet::triangle(3).unwrap();
        assert!(vs.index(Var::T(1, 2)).is_none());
        assert!(vs.index(Var::T(2, 0)).is_none());
        assert!(vs.index(Var::X(1)).is_none());
        assert!(vs.require(Var::T(3, 1)).is_err());
        assert!(VarSet::triangle(1).is_err());
    }

    #[test]
    fn chain_layout() {
        let vs = VarSet::chain(3, 2);
        let all: Vec<Var> = vs.vars().collect();
        assert_eq!(all, [Var::X(1), Var::X(2), Var::X(3), Var::Y(1), Var::Y(2)]);
    }

    #[test]
    fn body_embeds_into_extended() {
        let body = VarSet::triangle(4).unwrap();
        let ext = VarSet::extended(4).unwrap();
        let map = body.embedding(&ext).unwrap();
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        assert!(ext.embedding(&body).is_err());
    }
}
