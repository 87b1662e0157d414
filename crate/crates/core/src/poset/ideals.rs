use super::{bit, Mask, Poset};

/// The distributive lattice `J(P)` of order ideals (down-sets).
///
/// Ideals are `p`-bit masks sorted ascending as integers. Containment is kept
/// as its cover relation: `covers(i)` lists the ideals `I ∪ {x}` obtained by
/// adding one element to ideal `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    p: usize,
    ideals: Vec<Mask>,
    /// `(element added, index of the larger ideal)`
    covers: Vec<Vec<(u8, u32)>>,
}

pub fn order_ideals(poset: &Poset) -> IdealLattice {
    let p = poset.len();
    let mut ideals = Vec::new();
    // Decide elements in label order; x may join only if its down-set has.
    fn walk(poset: &Poset, x: usize, current: Mask, out: &mut Vec<Mask>) {
        if x == poset.len() {
            out.push(current);
            return;
        }
        walk(poset, x + 1, current, out);
        if poset.down_set(x) & !current == 0 {
            walk(poset, x + 1, current | bit(x), out);
        }
    }
    walk(poset, 0, 0, &mut ideals);
    ideals.sort_unstable();

    let index = |m: Mask| ideals.binary_search(&m).expect("cover of an ideal is an ideal") as u32;
    let covers = ideals
        .iter()
        .map(|&m| {
            (0..p)
                .filter(|&x| m & bit(x) == 0 && poset.down_set(x) & !m == 0)
                .map(|x| (x as u8, index(m | bit(x))))
                .collect()
        })
        .collect();
    IdealLattice { p, ideals, covers }
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn element_count(&self) -> usize {
        self.p
    }

    pub fn ideals(&self) -> &[Mask] {
        &self.ideals
    }

    pub fn index_of(&self, ideal: Mask) -> Option<usize> {
        self.ideals.binary_search(&ideal).ok()
    }

    /// Ideals covering ideal `i`, paired with the element that was added.
    pub fn covers(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers[i].iter().map(|&(x, j)| (x as usize, j as usize))
    }

    /// Indices of all ideals containing ideal `i` (including `i`).
    pub fn containing(&self, i: usize) -> Vec<usize> {
        let m = self.ideals[i];
        (i..self.ideals.len()).filter(|&j| self.ideals[j] & m == m).collect()
    }

    /// Number of multichains `I₁ ⊆ … ⊆ I_k` for `k = 0..=max_len`.
    ///
    /// Entry `k` equals the order polynomial at `t = k + 1`. Counts are
    /// summed over the lattice with one pass per element: adding `x` along
    /// every cover edge labeled `x`, in label order, turns per-ideal values
    /// `g(I)` into `Σ_{I' ⊆ I} g(I')`.
    pub fn multichain_counts(&self, max_len: usize) -> Vec<u128> {
        let n = self.ideals.len();
        let mut edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.p];
        for (i, cs) in self.covers.iter().enumerate() {
            for &(x, j) in cs {
                edges[x as usize].push((i as u32, j));
            }
        }
        let mut out = Vec::with_capacity(max_len + 1);
        out.push(1u128);
        if max_len == 0 {
            return out;
        }
        let mut g = vec![1u128; n];
        out.push(n as u128);
        for _ in 2..=max_len {
            for es in &edges {
                for &(i, j) in es {
                    let add = g[i as usize];
                    let slot = &mut g[j as usize];
                    *slot = slot.checked_add(add).expect("multichain count overflows 128 bits");
                }
            }
            let total = g.iter().try_fold(0u128, |acc, &v| acc.checked_add(v));
            out.push(total.expect("multichain count overflows 128 bits"));
        }
        out
    }
}
