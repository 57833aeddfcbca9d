//! Self-maps of finite sets `{0, …, n−1}`: eventual images, induced
//! permutations, periodic point counts and shift equivalence.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};

/// A map `J → J` on `J = {0, …, size−1}`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMap {
    images: Vec<usize>,
}

impl FiniteMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some((j, &img)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
            bail!(Domain, "image of {j} is {img}, outside a set of size {n}");
        }
        Ok(Self { images })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            images: (0..size).collect(),
        }
    }

    /// The `k`-cycle `j ↦ j+1 mod k`.
    pub fn cycle(k: usize) -> Self {
        Self {
            images: (0..k).map(|j| (j + 1) % k).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    /// `self ∘ other`. Panics if sizes differ.
    pub fn compose(&self, other: &FiniteMap) -> FiniteMap {
        assert_eq!(self.size(), other.size(), "composing maps on different sets");
        FiniteMap {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> FiniteMap {
        let mut acc = FiniteMap::identity(self.size());
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for &j in &self.images {
            if core::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        true
    }

    /// Disjoint union: `other` is relabelled to follow `self`.
    pub fn disjoint_union(&self, other: &FiniteMap) -> FiniteMap {
        let shift = self.size();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&j| j + shift));
        FiniteMap { images }
    }
}

/// Number of `k`-cycles for each period `k`. Only positive counts are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleCounts {
    counts: BTreeMap<usize, usize>,
}

impl CycleCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Drops zero counts; rejects period 0.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut c = Self::new();
        for (k, count) in pairs {
            if k == 0 {
                bail!(Domain, "cycle length must be at least 1");
            }
            c.add(k, count);
        }
        Ok(c)
    }

    /// Adds `count` cycles of length `k` (k ≥ 1).
    pub fn add(&mut self, k: usize, count: usize) {
        assert!(k >= 1, "cycle length must be at least 1");
        if count > 0 {
            *self.counts.entry(k).or_insert(0) += count;
        }
    }

    pub fn get(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ k·count`, the number of points.
    pub fn total_points(&self) -> usize {
        self.iter().map(|(k, c)| k * c).sum()
    }

    /// `#Fix(π^n) = Σ_{k | n} k·count_k` for a permutation π of this type.
    pub fn fixed_points_of_power(&self, n: usize) -> usize {
        self.iter().filter(|(k, _)| n % k == 0).map(|(k, c)| k * c).sum()
    }

    /// Least common multiple of the cycle lengths present (1 if none).
    pub fn lcm(&self) -> usize {
        self.counts.keys().fold(1, |acc, &k| crate::dold::lcm(acc, k))
    }
}

/// `⋂ φⁿ(J)`, sorted. Reached after `size` iterations.
pub fn eventual_image(phi: &FiniteMap) -> Vec<usize> {
    let n = phi.size();
    let mut current: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let mut next = vec![false; n];
        for j in (0..n).filter(|&j| current[j]) {
            next[phi.apply(j)] = true;
        }
        if next == current {
            break;
        }
        current = next;
    }
    (0..n).filter(|&j| current[j]).collect()
}

/// The permutation φ induces on its eventual image, re-indexed to
/// `0..carrier.len()` in increasing order of the original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPermutation {
    pub carrier: Vec<usize>,
    pub permutation: FiniteMap,
}

pub fn induced_permutation(phi: &FiniteMap) -> InducedPermutation {
    let carrier = eventual_image(phi);
    let mut index = vec![usize::MAX; phi.size()];
    for (i, &j) in carrier.iter().enumerate() {
        index[j] = i;
    }
    let images = carrier.iter().map(|&j| index[phi.apply(j)]).collect();
    let permutation = FiniteMap { images };
    debug_assert!(permutation.is_bijection());
    InducedPermutation { carrier, permutation }
}

/// `#{j : φⁿ(j) = j}` for `n = 1..=n_max`, by direct iteration.
pub fn fix_sequence(phi: &FiniteMap, n_max: usize) -> Vec<usize> {
    let mut power = phi.clone();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            power = phi.compose(&power);
        }
        out.push((0..phi.size()).filter(|&j| power.apply(j) == j).count());
    }
    out
}

/// Cycle type of a permutation.
pub fn cycle_type(pi: &FiniteMap) -> Result<CycleCounts> {
    if !pi.is_bijection() {
        bail!(Domain, "cycle type requires a bijection");
    }
    let mut seen = vec![false; pi.size()];
    let mut counts = CycleCounts::new();
    for start in 0..pi.size() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = pi.apply(j);
            len += 1;
        }
        counts.add(len, 1);
    }
    Ok(counts)
}

/// Cycle type of the permutation induced on the eventual image.
pub fn periodic_cycle_type(phi: &FiniteMap) -> CycleCounts {
    cycle_type(&induced_permutation(phi).permutation).expect("induced permutation is bijective")
}

/// Shift equivalence of finite maps: the induced permutations are conjugate.
pub fn shift_equivalent_maps(phi: &FiniteMap, psi: &FiniteMap) -> bool {
    periodic_cycle_type(phi) == periodic_cycle_type(psi)
}

/// Canonical permutation with the given cycle type: cycles in increasing
/// length, each on consecutive labels `s, s+1, …, s+k−1` mapped `s ↦ s+1 ↦ … ↦ s`.
pub fn permutation_from_cycle_counts(c: &CycleCounts) -> FiniteMap {
    let mut images = Vec::with_capacity(c.total_points());
    for (k, count) in c.iter() {
        for _ in 0..count {
            let s = images.len();
            images.extend((0..k).map(|i| s + (i + 1) % k));
        }
    }
    FiniteMap { images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::all_maps;
    use proptest::prelude::*;

    fn map(v: &[usize]) -> FiniteMap {
        FiniteMap::new(v.to_vec()).unwrap()
    }

    fn counts(pairs: &[(usize, usize)]) -> CycleCounts {
        CycleCounts::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_out_of_range_images() {
        assert!(FiniteMap::new(vec![0, 2]).is_err());
        assert_eq!(FiniteMap::new(vec![]).unwrap().size(), 0);
    }

    #[test]
    fn eventual_image_examples() {
        assert_eq!(eventual_image(&FiniteMap::identity(3)), vec![0, 1, 2]);
        assert_eq!(eventual_image(&map(&[1, 0, 0])), vec![0, 1]);
        assert_eq!(eventual_image(&map(&[0; 5])), vec![0]);
        assert!(eventual_image(&map(&[])).is_empty());
        // long tail: 4 -> 3 -> 2 -> 1 -> 0 -> 0
        assert_eq!(eventual_image(&map(&[0, 0, 1, 2, 3])), vec![0]);
    }

    #[test]
    fn induced_permutation_examples() {
        let ip = induced_permutation(&map(&[1, 0, 0]));
        assert_eq!(ip.carrier, vec![0, 1]);
        assert_eq!(ip.permutation, FiniteMap::cycle(2));
        let ip = induced_permutation(&map(&[0; 5]));
        assert_eq!(ip.carrier, vec![0]);
        assert_eq!(ip.permutation, FiniteMap::identity(1));
        let id = FiniteMap::identity(4);
        assert_eq!(induced_permutation(&id).permutation, id);
    }

    #[test]
    fn fix_sequence_examples() {
        assert_eq!(fix_sequence(&FiniteMap::cycle(3), 6), vec![0, 0, 3, 0, 0, 3]);
        assert_eq!(fix_sequence(&map(&[1, 0, 0]), 4), vec![0, 2, 0, 2]);
        assert_eq!(fix_sequence(&FiniteMap::identity(4), 3), vec![4, 4, 4]);
        assert_eq!(fix_sequence(&map(&[]), 3), vec![0, 0, 0]);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(cycle_type(&FiniteMap::identity(3)).unwrap(), counts(&[(1, 3)]));
        assert_eq!(cycle_type(&map(&[1, 0, 2])).unwrap(), counts(&[(1, 1), (2, 1)]));
        assert_eq!(cycle_type(&map(&[1, 2, 0, 4, 5, 3])).unwrap(), counts(&[(3, 2)]));
        assert!(cycle_type(&map(&[0, 0])).is_err());
    }

    #[test]
    fn shift_equivalence_examples() {
        assert!(shift_equivalent_maps(&map(&[0; 5]), &FiniteMap::identity(1)));
        assert!(!shift_equivalent_maps(&FiniteMap::cycle(2), &FiniteMap::identity(2)));
        assert!(shift_equivalent_maps(&map(&[1, 0, 0]), &FiniteMap::cycle(2)));
        assert!(shift_equivalent_maps(&map(&[]), &map(&[])));
        assert!(!shift_equivalent_maps(&map(&[]), &map(&[0])));
    }

    #[test]
    fn canonical_permutations() {
        assert_eq!(permutation_from_cycle_counts(&counts(&[(1, 2)])), FiniteMap::identity(2));
        assert_eq!(permutation_from_cycle_counts(&counts(&[(2, 1)])), map(&[1, 0]));
        assert_eq!(permutation_from_cycle_counts(&counts(&[(1, 1), (3, 1)])), map(&[0, 2, 3, 1]));
        assert_eq!(permutation_from_cycle_counts(&CycleCounts::new()).size(), 0);
    }

    #[test]
    fn exhaustive_small_maps_fix_counts_match_cycle_type() {
        for n in 0..=5 {
            for phi in all_maps(n) {
                let c = periodic_cycle_type(&phi);
                let fix = fix_sequence(&phi, 12);
                for (i, f) in fix.iter().enumerate() {
                    assert_eq!(*f, c.fixed_points_of_power(i + 1));
                }
            }
        }
    }

    fn arb_counts() -> impl Strategy<Value = CycleCounts> {
        proptest::collection::btree_map(1usize..=7, 1usize..=3, 0..4)
            .prop_map(|m| CycleCounts::from_pairs(m).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_counts_round_trip(c in arb_counts()) {
            let p = permutation_from_cycle_counts(&c);
            prop_assert!(p.is_bijection());
            prop_assert_eq!(cycle_type(&p).unwrap(), c);
        }

        #[test]
        fn induced_permutation_is_bijective_restriction(images in proptest::collection::vec(0usize..8, 1..=8)) {
            let n = images.len();
            let phi = FiniteMap::new(images.into_iter().map(|j| j % n).collect()).unwrap();
            let ip = induced_permutation(&phi);
            prop_assert!(ip.permutation.is_bijection());
            for (i, &j) in ip.carrier.iter().enumerate() {
                prop_assert_eq!(ip.carrier[ip.permutation.apply(i)], phi.apply(j));
            }
            let image_of_all = phi.pow(n);
            let mut reached: Vec<usize> = image_of_all.images().to_vec();
            reached.sort_unstable();
            reached.dedup();
            prop_assert_eq!(reached, ip.carrier);
        }
    }
}
