//! Isomorphism-free generation of posets and digraph6 ingestion.
//!
//! Generation is orderly: starting from the one-element poset, a canonical
//! poset on `k` elements is extended by a new maximal element `k` whose
//! down-set is any order ideal, and a child is kept iff it is canonical.
//! Children are visited in ascending order of their new column, so the leaves
//! of every subtree come out in ascending canonical byte order.

mod digraph6;

use thiserror::Error;

use crate::poset::{is_canonical, order_ideals, Mask, Poset, MAX_ELEMENTS};

pub use digraph6::{
    encode_digraph6, parse_digraph6, read_digraph6_file, Digraph6Error, Digraph6Reader, Digraph6Record, ReadError,
    DIGRAPH6_HEADER,
};

/// Number of unlabeled posets on `p` points, `p = 0..=16`.
pub const POSET_COUNTS: [u64; 17] = [
    1,
    1,
    2,
    5,
    16,
    63,
    318,
    2045,
    16999,
    183231,
    2567284,
    46749427,
    1104891746,
    33823827452,
    1338193159771,
    68275077901156,
    4483130665195087,
];

/// Expected number of posets on `p` points.
pub fn poset_count(p: usize) -> Option<u64> {
    POSET_COUNTS.get(p).copied()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("element count {0} out of range 1..={MAX_ELEMENTS}")]
    OutOfRange(usize),
    #[error("shard {shard} out of range for {count} shards")]
    ShardOutOfRange { shard: usize, count: usize },
}

/// One of `shard_count` disjoint slices of the search tree for `p` elements.
///
/// The tree is cut at depth `prefix_depth`; the canonical posets on that many
/// elements are the work units, and unit `u` belongs to shard
/// `u mod shard_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenerationShard {
    pub p: usize,
    pub prefix_depth: usize,
    pub shard_id: usize,
    pub shard_count: usize,
}

const MIN_UNITS: usize = 256;
const UNITS_PER_SHARD: usize = 16;

impl GenerationShard {
    pub fn new(p: usize, shard_id: usize, shard_count: usize) -> Result<Self, GenError> {
        check_range(p)?;
        if shard_count == 0 || shard_id >= shard_count {
            return Err(GenError::ShardOutOfRange { shard: shard_id, count: shard_count });
        }
        Ok(GenerationShard { p, prefix_depth: prefix_depth(p, shard_count), shard_id, shard_count })
    }

    /// The whole space as a single shard.
    pub fn whole(p: usize) -> Result<Self, GenError> {
        Self::new(p, 0, 1)
    }

    pub fn owns_unit(&self, unit: usize) -> bool {
        unit % self.shard_count == self.shard_id
    }
}

fn check_range(p: usize) -> Result<(), GenError> {
    if p == 0 || p > MAX_ELEMENTS {
        Err(GenError::OutOfRange(p))
    } else {
        Ok(())
    }
}

/// Smallest depth with enough units to spread over the shards, and no
/// shallower than `p − 3` so units stay small for large `p`.
fn prefix_depth(p: usize, shard_count: usize) -> usize {
    let want = MIN_UNITS.max(UNITS_PER_SHARD.saturating_mul(shard_count));
    let by_count = (1..=p)
        .find(|&d| POSET_COUNTS[d] >= want as u64)
        .unwrap_or(p);
    by_count.max(p.saturating_sub(3)).clamp(1, p)
}

/// Canonical children of a canonical poset, in ascending column order.
fn child_ideals(poset: &Poset) -> Vec<Mask> {
    let mut ideals = order_ideals(poset).ideals().to_vec();
    // Column bits are read from element 0 first.
    ideals.sort_unstable_by_key(|m| m.reverse_bits());
    ideals
}

struct Frame {
    poset: Poset,
    children: Vec<Mask>,
    next: usize,
}

/// Depth-first stream of the canonical posets on `target` elements below
/// `root`, in ascending canonical byte order.
pub struct Subtree {
    target: usize,
    stack: Vec<Frame>,
    pending_root: Option<Poset>,
}

impl Subtree {
    pub fn new(root: Poset, target: usize) -> Self {
        assert!(root.len() <= target && target <= MAX_ELEMENTS);
        if root.len() == target {
            Subtree { target, stack: Vec::new(), pending_root: Some(root) }
        } else {
            let children = child_ideals(&root);
            Subtree { target, stack: vec![Frame { poset: root, children, next: 0 }], pending_root: None }
        }
    }
}

impl Iterator for Subtree {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        if let Some(root) = self.pending_root.take() {
            return Some(root);
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.children.len() {
                self.stack.pop();
                continue;
            }
            let ideal = frame.children[frame.next];
            frame.next += 1;
            let child = frame.poset.extend_with_maximal(ideal);
            if !is_canonical(&child) {
                continue;
            }
            if child.len() == self.target {
                return Some(child);
            }
            let children = child_ideals(&child);
            self.stack.push(Frame { poset: child, children, next: 0 });
        }
    }
}

/// Canonical posets on `depth` elements in ascending canonical order.
pub fn level(depth: usize) -> Result<Vec<Poset>, GenError> {
    check_range(depth)?;
    let root = Poset::antichain(1).expect("one element");
    Ok(Subtree::new(root, depth).collect())
}

/// Work units of a shard: the roots of its subtrees, paired with their global
/// unit index.
pub fn work_units(shard: &GenerationShard) -> Result<Vec<(usize, Poset)>, GenError> {
    Ok(level(shard.prefix_depth)?
        .into_iter()
        .enumerate()
        .filter(|(u, _)| shard.owns_unit(*u))
        .collect())
}

/// One representative per isomorphism class of posets on `p` elements, each
/// naturally labeled and canonical. With `shard = None` the whole space is
/// streamed in ascending canonical byte order; a shard streams its own units
/// in the same order.
pub fn generate_all(p: usize, shard: Option<&GenerationShard>) -> Result<impl Iterator<Item = Poset>, GenError> {
    check_range(p)?;
    let shard = match shard {
        Some(s) if s.p != p => return Err(GenError::OutOfRange(p)),
        Some(s) => *s,
        None => GenerationShard::whole(p)?,
    };
    let units = work_units(&shard)?;
    Ok(units.into_iter().flat_map(move |(_, root)| Subtree::new(root, p)))
}
