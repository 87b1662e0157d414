//! Brute-force oracles and random posets shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use ordercheck::Poset;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random poset: each pair `i < j` of a random order becomes an arc with
/// probability `density`, then labels are shuffled before closing.
pub fn random_poset<R: Rng>(rng: &mut R, p: usize, density: f64) -> Poset {
    let mut perm: Vec<usize> = (0..p).collect();
    perm.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.gen_bool(density) {
                arcs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::from_arcs(p, &arcs).unwrap()
}

/// Arcs of `poset` after renaming element `x` to `perm[x]`.
pub fn permuted_arcs(poset: &Poset, perm: &[usize]) -> Vec<(usize, usize)> {
    poset.cover_pairs().into_iter().map(|(i, j)| (perm[i], perm[j])).collect()
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    loop {
        f(&a);
        if !next_permutation(&mut a) {
            break;
        }
    }
}

pub fn is_extension(poset: &Poset, word: &[usize]) -> bool {
    let p = word.len();
    (0..p).all(|a| (a + 1..p).all(|b| !poset.less(word[b], word[a])))
}

pub fn brute_linear_extensions(poset: &Poset) -> BigUint {
    let mut n = 0u64;
    for_each_permutation(poset.len(), |w| {
        if is_extension(poset, w) {
            n += 1;
        }
    });
    BigUint::from(n)
}

/// Descents counted on extensions found by permutation search.
pub fn brute_descent_histogram(poset: &Poset) -> Vec<u64> {
    let mut hist = vec![0u64; poset.len() + 1];
    for_each_permutation(poset.len(), |w| {
        if is_extension(poset, w) {
            hist[w.windows(2).filter(|x| x[0] > x[1]).count()] += 1;
        }
    });
    hist
}

pub fn brute_ideal_count(poset: &Poset) -> usize {
    let p = poset.len();
    (0u32..1 << p)
        .filter(|&s| (0..p).all(|j| s & (1 << j) == 0 || (0..p).all(|i| !poset.less(i, j) || s & (1 << i) != 0)))
        .count()
}

/// Order-preserving maps `P → {1..t}`.
pub fn brute_omega(poset: &Poset, t: usize) -> u64 {
    let p = poset.len();
    if t == 0 {
        return 0;
    }
    let mut f = vec![0usize; p];
    let mut count = 0;
    loop {
        if (0..p).all(|i| (0..p).all(|j| !poset.less(i, j) || f[i] <= f[j])) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == p {
                return count;
            }
            f[k] += 1;
            if f[k] < t {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

pub fn brute_width(poset: &Poset) -> usize {
    let p = poset.len();
    (0u32..1 << p)
        .filter(|&s| (0..p).all(|i| (0..p).all(|j| s & (1 << i) == 0 || s & (1 << j) == 0 || !poset.less(i, j))))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Lengths of all maximal chains, by walking covers from minimal elements.
pub fn brute_is_graded(poset: &Poset) -> bool {
    fn walk(poset: &Poset, x: usize, len: usize, lengths: &mut Vec<usize>) {
        let ups: Vec<usize> = (0..poset.len()).filter(|&y| poset.cover_pairs().contains(&(x, y))).collect();
        if ups.is_empty() {
            lengths.push(len);
        }
        for y in ups {
            walk(poset, y, len + 1, lengths);
        }
    }
    let mut lengths = Vec::new();
    for x in (0..poset.len()).filter(|&x| (0..poset.len()).all(|y| !poset.less(y, x))) {
        walk(poset, x, 0, &mut lengths);
    }
    lengths.windows(2).all(|w| w[0] == w[1])
}

/// Posets on `1..=max_p` elements with shuffled labels.
pub fn poset_strategy(max_p: usize) -> impl proptest::strategy::Strategy<Value = Poset> {
    use proptest::prelude::*;
    (1..=max_p, 0.1f64..0.7)
        .prop_flat_map(|(p, d)| {
            let perm = Just((0..p).collect::<Vec<usize>>()).prop_shuffle();
            (Just(p), proptest::collection::vec(proptest::bool::weighted(d), p * (p - 1) / 2), perm)
        })
        .prop_map(|(p, cells, perm)| {
            let mut arcs = Vec::new();
            let mut k = 0;
            for i in 0..p {
                for j in i + 1..p {
                    if cells[k] {
                        arcs.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Poset::from_arcs(p, &arcs).unwrap()
        })
}
