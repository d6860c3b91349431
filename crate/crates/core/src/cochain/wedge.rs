use std::fmt;

use smallvec::SmallVec;

pub type Indices = SmallVec<[usize; 8]>;

/// An increasing multi-index `j_1 < ... < j_p`, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Wedge(pub u16);

impl Wedge {
    pub const EMPTY: Wedge = Wedge(0);

    pub fn from_sorted(idx: &[usize]) -> Wedge {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        Wedge(idx.iter().fold(0u16, |m, &i| m | (1 << i)))
    }

    /// Sort an arbitrary index list; `None` if an index repeats, otherwise the
    /// wedge and the sign of the sorting permutation.
    pub fn from_indices(idx: &[usize]) -> Option<(Wedge, i8)> {
        let mut v: Indices = idx.iter().copied().collect();
        let mut sign = 1i8;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Wedge::from_sorted(&v), sign))
    }

    /// `{0, ..., c-1}`.
    pub fn prefix(c: usize) -> Wedge {
        Wedge(((1u32 << c) - 1) as u16)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn contains_all(&self, other: Wedge) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn indices(&self) -> Indices {
        (0..16).filter(|&i| self.contains(i)).collect()
    }

    pub fn with(&self, i: usize) -> Wedge {
        Wedge(self.0 | (1 << i))
    }

    pub fn without(&self, i: usize) -> Wedge {
        Wedge(self.0 & !(1 << i))
    }

    pub fn minus(&self, other: Wedge) -> Wedge {
        Wedge(self.0 & !other.0)
    }

    /// Number of members smaller than `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        (self.0 & ((1u16 << i) - 1)).count_ones() as usize
    }

    /// All increasing multi-indices of length `p` in `0..n`.
    pub fn all(n: usize, p: usize) -> Vec<Wedge> {
        (0u32..(1 << n)).filter(|m| m.count_ones() as usize == p).map(|m| Wedge(m as u16)).collect()
    }
}

impl fmt::Debug for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.indices().iter().map(|i| i + 1).collect();
        write!(f, "{v:?}")
    }
}

/// Sign of the permutation sorting `v` (entries distinct).
pub fn permutation_sign(v: &[usize]) -> i8 {
    let mut s = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                s = -s;
            }
        }
    }
    s
}

/// All permutations of `0..m`, in lexicographic order.
pub fn permutations(m: usize) -> Vec<Indices> {
    let mut out = Vec::new();
    let mut cur: Indices = (0..m).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        assert_eq!(Wedge::from_indices(&[2, 0, 1]), Some((Wedge::from_sorted(&[0, 1, 2]), 1)));
        assert_eq!(Wedge::from_indices(&[1, 0]), Some((Wedge::from_sorted(&[0, 1]), -1)));
        assert_eq!(Wedge::from_indices(&[1, 1]), None);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(Wedge::all(4, 2).len(), 6);
        assert_eq!(Wedge::from_sorted(&[0, 2, 3]).rank_of(3), 2);
    }
}
