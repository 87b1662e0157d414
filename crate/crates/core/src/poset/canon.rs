//! Canonical forms by minimization over linear-extension relabelings.
//!
//! The relation of a naturally labeled poset is read column by column from
//! its strictly upper triangle: for `j = 1..p`, bits `rel[0][j] … rel[j−1][j]`.
//! The canonical form is the lexicographically smallest such bit string over
//! every relabeling by a linear extension, prefixed with one byte holding `p`.
//!
//! Column order makes the string of a poset's first `k` elements a prefix of
//! the whole string, so a partial relabeling fixes a prefix of the result and
//! the search can prune branch-and-bound style. It also makes canonicity
//! hereditary: deleting the last element of a canonical poset leaves a
//! canonical poset, which is what orderly generation relies on.

use std::fmt;

use super::{bit, bits, Mask, Poset, PosetError, MAX_ELEMENTS};

/// Canonical byte string of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn element_count(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// Rebuilds the canonical representative from canonical bytes.
    pub fn from_bytes(bytes: &[u8]) -> Result<Poset, PosetError> {
        let p = *bytes.first().ok_or(PosetError::Empty)? as usize;
        if p == 0 {
            return Err(PosetError::Empty);
        }
        if p > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(p));
        }
        let nbits = p * (p - 1) / 2;
        let payload = &bytes[1..];
        if payload.len() != nbits.div_ceil(8) {
            return Err(PosetError::NotSquare { rows: p, row: 0, len: payload.len() });
        }
        let mut reach = [0 as Mask; MAX_ELEMENTS];
        let mut k = 0;
        for j in 1..p {
            for r in reach.iter_mut().take(j) {
                if payload[k / 8] & (0x80 >> (k % 8)) != 0 {
                    *r |= bit(j);
                }
                k += 1;
            }
        }
        super::close_and_normalize(p, reach)
    }

    pub fn from_hex(s: &str) -> Result<Poset, PosetError> {
        let bytes = hex::decode(s.trim()).map_err(|_| PosetError::Empty)?;
        Self::from_bytes(&bytes)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Column value: bit for position `i` stored at `1 << (31 − i)` so integer
/// order equals lexicographic order of the column's bits.
#[inline]
fn pos_bit(i: usize) -> u32 {
    1 << (31 - i)
}

#[derive(PartialEq, Eq)]
enum Mode {
    Minimize,
    /// Abort as soon as any relabeling beats the identity.
    TestIdentity,
}

struct Search<'a> {
    poset: &'a Poset,
    mode: Mode,
    /// Twins with a smaller label; twins are placed in label order.
    twin_below: [Mask; MAX_ELEMENTS],
    pos: [u8; MAX_ELEMENTS],
    word: [u8; MAX_ELEMENTS],
    best: [u32; MAX_ELEMENTS],
    best_word: [u8; MAX_ELEMENTS],
}

impl<'a> Search<'a> {
    fn new(poset: &'a Poset, mode: Mode) -> Self {
        let p = poset.len();
        let mut twin_below = [0 as Mask; MAX_ELEMENTS];
        for x in 0..p {
            for y in 0..x {
                if poset.down_set(x) == poset.down_set(y) && poset.up_set(x) == poset.up_set(y) {
                    twin_below[x] |= bit(y);
                }
            }
        }
        let mut best = [u32::MAX; MAX_ELEMENTS];
        if mode == Mode::TestIdentity {
            for (j, b) in best.iter_mut().enumerate().take(p) {
                *b = bits(poset.down_set(j)).fold(0, |acc, i| acc | pos_bit(i));
            }
        }
        let mut best_word = [0u8; MAX_ELEMENTS];
        for (i, w) in best_word.iter_mut().enumerate() {
            *w = i as u8;
        }
        Search { poset, mode, twin_below, pos: [0; MAX_ELEMENTS], word: [0; MAX_ELEMENTS], best, best_word }
    }

    /// Returns true when a relabeling beating the identity was found in
    /// `TestIdentity` mode.
    fn dfs(&mut self, depth: usize, placed: Mask) -> bool {
        let p = self.poset.len();
        if depth == p {
            self.best_word = self.word;
            return false;
        }
        let mut free = !placed & super::full_mask(p);
        while free != 0 {
            let x = free.trailing_zeros() as usize;
            free &= free - 1;
            let down = self.poset.down_set(x);
            if down & !placed != 0 || self.twin_below[x] & !placed != 0 {
                continue;
            }
            let col = bits(down).fold(0u32, |acc, u| acc | pos_bit(self.pos[u] as usize));
            let bound = self.best[depth];
            if col > bound {
                continue;
            }
            if col < bound {
                if self.mode == Mode::TestIdentity {
                    return true;
                }
                self.best[depth] = col;
                for b in &mut self.best[depth + 1..p] {
                    *b = u32::MAX;
                }
            }
            self.pos[x] = depth as u8;
            self.word[depth] = x as u8;
            if self.dfs(depth + 1, placed | bit(x)) {
                return true;
            }
        }
        false
    }

    fn bytes(&self) -> Vec<u8> {
        let p = self.poset.len();
        let nbits = p * (p - 1) / 2;
        let mut out = vec![0u8; 1 + nbits.div_ceil(8)];
        out[0] = p as u8;
        let mut k = 0;
        for j in 1..p {
            for i in 0..j {
                if self.best[j] & pos_bit(i) != 0 {
                    out[1 + k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        out
    }
}

/// Canonical byte string; equal for two posets iff they are isomorphic.
pub fn canonical_form(poset: &Poset) -> CanonicalForm {
    let mut s = Search::new(poset, Mode::Minimize);
    s.dfs(0, 0);
    CanonicalForm(s.bytes())
}

/// A linear extension whose relabeling realizes the canonical form.
pub fn canonical_labeling(poset: &Poset) -> Vec<usize> {
    let mut s = Search::new(poset, Mode::Minimize);
    s.dfs(0, 0);
    s.best_word[..poset.len()].iter().map(|&w| w as usize).collect()
}

/// The canonical representative of the isomorphism class.
pub fn canonical_poset(poset: &Poset) -> Poset {
    poset.relabel(&canonical_labeling(poset))
}

/// True iff the identity labeling already realizes the canonical form.
pub fn is_canonical(poset: &Poset) -> bool {
    !Search::new(poset, Mode::TestIdentity).dfs(0, 0)
}
