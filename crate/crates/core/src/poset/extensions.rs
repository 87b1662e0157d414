use std::fmt;

use num_bigint::BigUint;

use super::{bit, Mask, Poset, MAX_ELEMENTS};

/// A listing `w₀ … w_{p−1}` of the elements where every prefix is a down-set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearExtension {
    word: Vec<usize>,
}

impl LinearExtension {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Positions `i` with `wᵢ > wᵢ₊₁`.
    pub fn descents(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }
}

impl fmt::Display for LinearExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<_> = self.word.iter().map(|w| (w + 1).to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

/// Lexicographic enumeration of linear extensions.
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    word: Vec<usize>,
    placed: Mask,
    started: bool,
}

pub fn linear_extensions(poset: &Poset) -> LinearExtensions<'_> {
    LinearExtensions { poset, word: Vec::with_capacity(poset.len()), placed: 0, started: false }
}

impl LinearExtensions<'_> {
    fn next_candidate(&self, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |a| a + 1);
        (start..self.poset.len())
            .find(|&x| self.placed & bit(x) == 0 && self.poset.down_set(x) & !self.placed == 0)
    }

    fn fill(&mut self) {
        while self.word.len() < self.poset.len() {
            let x = self.next_candidate(None).expect("a finite poset always has a minimal element");
            self.word.push(x);
            self.placed |= bit(x);
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        if !self.started {
            self.started = true;
            self.fill();
            return Some(LinearExtension { word: self.word.clone() });
        }
        while let Some(x) = self.word.pop() {
            self.placed &= !bit(x);
            if let Some(y) = self.next_candidate(Some(x)) {
                self.word.push(y);
                self.placed |= bit(y);
                self.fill();
                return Some(LinearExtension { word: self.word.clone() });
            }
        }
        None
    }
}

/// `e(P)`, counted by summing over order ideals rather than enumerating.
pub fn count_linear_extensions(poset: &Poset) -> BigUint {
    let p = poset.len();
    let mut down = [0 as Mask; MAX_ELEMENTS];
    for (i, d) in down.iter_mut().enumerate().take(p) {
        *d = poset.down_set(i);
    }
    // e(I) for every down-set I, indexed by mask; non-ideals stay zero.
    // e(P) <= 16! fits comfortably in 64 bits.
    let mut counts = vec![0u64; 1 << p];
    counts[0] = 1;
    for mask in 0..(1usize << p) {
        let c = counts[mask];
        if c == 0 {
            continue;
        }
        let m = mask as Mask;
        for (x, d) in down.iter().enumerate().take(p) {
            if m & bit(x) == 0 && d & !m == 0 {
                counts[mask | (1 << x)] += c;
            }
        }
    }
    BigUint::from(counts[(1 << p) - 1])
}
