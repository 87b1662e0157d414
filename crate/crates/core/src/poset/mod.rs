//! Finite posets on `{0..p}` stored as transitively closed strict relations.
//!
//! Every [`Poset`] is naturally labeled: `i ≺ j` implies `i < j`, so the
//! identity word is always a linear extension. Labels are 0-based in the API;
//! textual renderings (Hasse diagrams, CLI output) are 1-based.

mod canon;
mod extensions;
mod ideals;

use std::fmt;

use thiserror::Error;

pub use canon::{canonical_form, canonical_labeling, canonical_poset, is_canonical, CanonicalForm};
pub use extensions::{count_linear_extensions, linear_extensions, LinearExtension, LinearExtensions};
pub use ideals::{order_ideals, IdealLattice};

/// Largest supported element count; one relation row fits in a machine word.
pub const MAX_ELEMENTS: usize = 16;

/// Bit set over element labels, bit `i` = element `i`.
pub type Mask = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset must have at least one element")]
    Empty,
    #[error("poset has {0} elements, at most {MAX_ELEMENTS} supported")]
    TooLarge(usize),
    #[error("relation matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("arc ({0}, {1}) out of range")]
    ArcOutOfRange(usize, usize),
    #[error("relation is reflexive at element {}", .0 + 1)]
    ReflexiveInput(usize),
    #[error("relation contains a directed cycle through element {}", .0 + 1)]
    CyclicInput(usize),
}

/// A finite strict partial order, transitively closed and naturally labeled.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Poset {
    p: usize,
    /// `up[i]` = `{ j : i ≺ j }`
    up: [Mask; MAX_ELEMENTS],
    /// `down[j]` = `{ i : i ≺ j }`
    down: [Mask; MAX_ELEMENTS],
    /// `covers[i]` = `{ j : j covers i }`
    covers: [Mask; MAX_ELEMENTS],
}

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

#[inline]
pub(crate) fn full_mask(p: usize) -> Mask {
    if p >= 32 {
        Mask::MAX
    } else {
        (1 << p) - 1
    }
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Closes an acyclic, irreflexive relation and normalizes it to a natural
/// labeling.
///
/// `rel[i][j]` means `i ≺ j`. When the closure is not naturally labeled the
/// elements are relabeled ancestor-first: original labels are visited in
/// ascending order and each is placed right after all of its not yet placed
/// predecessors (themselves placed recursively in ascending order). A relation
/// that is already naturally labeled keeps its labels.
pub fn transitive_closure(rel: &[Vec<bool>]) -> Result<Poset, PosetError> {
    let p = rel.len();
    if p == 0 {
        return Err(PosetError::Empty);
    }
    if p > MAX_ELEMENTS {
        return Err(PosetError::TooLarge(p));
    }
    let mut reach = [0 as Mask; MAX_ELEMENTS];
    for (i, row) in rel.iter().enumerate() {
        if row.len() != p {
            return Err(PosetError::NotSquare { rows: p, row: i, len: row.len() });
        }
        for (j, &r) in row.iter().enumerate() {
            if r {
                reach[i] |= bit(j);
            }
        }
    }
    close_and_normalize(p, reach)
}

/// `reach[i]` holds the raw successors of `i`.
pub(crate) fn close_and_normalize(p: usize, mut reach: [Mask; MAX_ELEMENTS]) -> Result<Poset, PosetError> {
    for (i, r) in reach.iter().enumerate().take(p) {
        if r & bit(i) != 0 {
            return Err(PosetError::ReflexiveInput(i));
        }
    }
    // Warshall on bit rows.
    for k in 0..p {
        for i in 0..p {
            if reach[i] & bit(k) != 0 {
                reach[i] |= reach[k];
            }
        }
    }
    if let Some(i) = (0..p).find(|&i| reach[i] & bit(i) != 0) {
        return Err(PosetError::CyclicInput(i));
    }

    let natural = (0..p).all(|i| reach[i] & full_mask(i + 1) == 0);
    if natural {
        return Ok(Poset::from_closed_up(p, &reach[..p]));
    }

    let mut down = [0 as Mask; MAX_ELEMENTS];
    for i in 0..p {
        for j in bits(reach[i]) {
            down[j] |= bit(i);
        }
    }
    let mut order = Vec::with_capacity(p);
    let mut placed: Mask = 0;
    fn visit(v: usize, down: &[Mask], placed: &mut Mask, order: &mut Vec<usize>) {
        if *placed & bit(v) != 0 {
            return;
        }
        for u in bits(down[v]) {
            visit(u, down, placed, order);
        }
        *placed |= bit(v);
        order.push(v);
    }
    for v in 0..p {
        visit(v, &down, &mut placed, &mut order);
    }

    let mut new_label = [0usize; MAX_ELEMENTS];
    for (k, &v) in order.iter().enumerate() {
        new_label[v] = k;
    }
    let mut up = [0 as Mask; MAX_ELEMENTS];
    for i in 0..p {
        for j in bits(reach[i]) {
            up[new_label[i]] |= bit(new_label[j]);
        }
    }
    Ok(Poset::from_closed_up(p, &up[..p]))
}

impl Poset {
    /// Builds a poset from closed, naturally labeled up-sets without checks.
    pub(crate) fn from_closed_up(p: usize, up_rows: &[Mask]) -> Poset {
        debug_assert!((1..=MAX_ELEMENTS).contains(&p) && up_rows.len() == p);
        let mut up = [0 as Mask; MAX_ELEMENTS];
        let mut down = [0 as Mask; MAX_ELEMENTS];
        up[..p].copy_from_slice(up_rows);
        for i in 0..p {
            for j in bits(up[i]) {
                down[j] |= bit(i);
            }
        }
        let mut covers = [0 as Mask; MAX_ELEMENTS];
        for i in 0..p {
            let mut shortcut: Mask = 0;
            for k in bits(up[i]) {
                shortcut |= up[k];
            }
            covers[i] = up[i] & !shortcut;
        }
        Poset { p, up, down, covers }
    }

    /// Builds a poset from 0-based arcs `(i, j)` meaning `i ≺ j`; see
    /// [`transitive_closure`] for normalization.
    pub fn from_arcs(p: usize, arcs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if p == 0 {
            return Err(PosetError::Empty);
        }
        if p > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(p));
        }
        let mut reach = [0 as Mask; MAX_ELEMENTS];
        for &(i, j) in arcs {
            if i >= p || j >= p {
                return Err(PosetError::ArcOutOfRange(i, j));
            }
            reach[i] |= bit(j);
        }
        close_and_normalize(p, reach)
    }

    pub fn chain(p: usize) -> Result<Poset, PosetError> {
        let arcs: Vec<_> = (1..p).map(|i| (i - 1, i)).collect();
        Poset::from_arcs(p, &arcs)
    }

    pub fn antichain(p: usize) -> Result<Poset, PosetError> {
        Poset::from_arcs(p, &[])
    }

    /// Number of elements.
    #[inline]
    pub fn len(&self) -> usize {
        self.p
    }

    /// Always false; empty posets cannot be constructed.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.p == 0
    }

    /// `i ≺ j`
    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    /// Strict up-set of `i`.
    #[inline]
    pub fn up_set(&self, i: usize) -> Mask {
        self.up[i]
    }

    /// Strict down-set of `i`.
    #[inline]
    pub fn down_set(&self, i: usize) -> Mask {
        self.down[i]
    }

    /// Elements covering `i`.
    #[inline]
    pub fn upper_covers(&self, i: usize) -> Mask {
        self.covers[i]
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.down[i] == 0
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.up[i] == 0
    }

    /// The `p × p` strict relation matrix.
    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.p)
            .map(|i| (0..self.p).map(|j| self.less(i, j)).collect())
            .collect()
    }

    /// The cover relation as a `p × p` matrix, `m[i][j]` iff `j` covers `i`.
    pub fn cover_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.p)
            .map(|i| (0..self.p).map(|j| self.covers[i] & bit(j) != 0).collect())
            .collect()
    }

    /// Cover pairs `(i, j)`, 0-based, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|i| bits(self.covers[i]).map(move |j| (i, j)))
            .collect()
    }

    /// Number of strict relations `i ≺ j`.
    pub fn relation_count(&self) -> usize {
        self.up[..self.p].iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Hasse diagram, one 1-based `i < j` cover pair per line.
    pub fn hasse_diagram(&self) -> String {
        let mut s = String::new();
        for (i, j) in self.cover_pairs() {
            s.push_str(&format!("{} < {}\n", i + 1, j + 1));
        }
        s
    }

    /// Adds a new maximal element `p` whose strict down-set is `ideal`.
    pub(crate) fn extend_with_maximal(&self, ideal: Mask) -> Poset {
        debug_assert!(self.p < MAX_ELEMENTS);
        let mut up = self.up;
        for i in bits(ideal) {
            up[i] |= bit(self.p);
        }
        Poset::from_closed_up(self.p + 1, &up[..self.p + 1])
    }

    /// Relabels by a linear extension: new label `k` is old element `word[k]`.
    pub fn relabel(&self, word: &[usize]) -> Poset {
        assert_eq!(word.len(), self.p, "relabeling must be a permutation");
        let mut new_label = [0usize; MAX_ELEMENTS];
        for (k, &v) in word.iter().enumerate() {
            new_label[v] = k;
        }
        let mut up = [0 as Mask; MAX_ELEMENTS];
        for i in 0..self.p {
            for j in bits(self.up[i]) {
                up[new_label[i]] |= bit(new_label[j]);
            }
        }
        assert!(
            (0..self.p).all(|i| up[i] & full_mask(i + 1) == 0),
            "relabeling word is not a linear extension"
        );
        Poset::from_closed_up(self.p, &up[..self.p])
    }

    /// Checks every structural invariant by direct scans.
    pub fn check_invariants(&self) -> bool {
        let p = self.p;
        let rel = |i: usize, j: usize| self.up[i] & bit(j) != 0;
        for i in 0..p {
            if rel(i, i) {
                return false;
            }
            for j in 0..p {
                if rel(i, j) && (rel(j, i) || i >= j) {
                    return false;
                }
                if rel(i, j) != (self.down[j] & bit(i) != 0) {
                    return false;
                }
                let is_cover = rel(i, j) && !(0..p).any(|k| rel(i, k) && rel(k, j));
                if is_cover != (self.covers[i] & bit(j) != 0) {
                    return false;
                }
                for k in 0..p {
                    if rel(i, j) && rel(j, k) && !rel(i, k) {
                        return false;
                    }
                }
            }
        }
        (p..MAX_ELEMENTS).all(|i| self.up[i] == 0 && self.down[i] == 0)
    }

    /// True iff the poset has no 3-element antichain, i.e. it splits into
    /// two chains.
    pub fn is_narrow(&self) -> bool {
        let p = self.p;
        let all = full_mask(p);
        for i in 0..p {
            let inc_i = all & !(self.up[i] | self.down[i] | bit(i));
            for j in bits(inc_i & !full_mask(i + 1)) {
                let inc_j = all & !(self.up[j] | self.down[j] | bit(j));
                if inc_i & inc_j & !full_mask(j + 1) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every maximal chain has the same length.
    pub fn is_graded(&self) -> bool {
        // Shortest and longest saturated chains from a minimal element.
        let mut lo = [0usize; MAX_ELEMENTS];
        let mut hi = [0usize; MAX_ELEMENTS];
        for j in 0..self.p {
            if self.down[j] == 0 {
                continue;
            }
            lo[j] = usize::MAX;
            for i in 0..j {
                if self.covers[i] & bit(j) != 0 {
                    lo[j] = lo[j].min(lo[i] + 1);
                    hi[j] = hi[j].max(hi[i] + 1);
                }
            }
        }
        let mut length = None;
        for m in (0..self.p).filter(|&m| self.up[m] == 0) {
            if lo[m] != hi[m] {
                return false;
            }
            match length {
                None => length = Some(lo[m]),
                Some(l) if l != lo[m] => return false,
                _ => {}
            }
        }
        true
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self.cover_pairs().iter().map(|(i, j)| format!("{}<{}", i + 1, j + 1)).collect();
        write!(f, "Poset(p={}; {})", self.p, pairs.join(", "))
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hasse_diagram())
    }
}
