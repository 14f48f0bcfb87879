//! Prüfer codes, exhaustive enumeration, and uniform sampling of labeled trees.
//!
//! Vertex labels are `1..=n`. A vertex's degree is one plus the number of
//! times it appears in the code, so enumeration works on code multiplicities
//! and never has to build the trees.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::degrees::DegreeRule;
use crate::error::{Error, Result};

pub const MAX_ORACLE_COUNT_N: usize = 9;
pub const MAX_ORACLE_STATS_N: usize = 8;

/// A tree on vertices `1..=n`; edges are stored as sorted `(low, high)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    /// Validates that `edges` form a spanning tree of `1..=n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidVertexCount { n, reason: "a tree needs at least one vertex" });
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        if edges.len() != n - 1 {
            return Err(Error::NotATree { n, reason: "edge count differs from n - 1" });
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(a, b) in &edges {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
            }
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return Err(Error::NotATree { n, reason: "edges contain a cycle" });
            }
            parent[ra] = rb;
        }
        edges.sort_unstable();
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `degrees()[v - 1]` is the degree of vertex `v`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(a, b) in &self.edges {
            deg[a - 1] += 1;
            deg[b - 1] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count() as u32
    }

    /// Number of vertices of degree `d`.
    pub fn degree_count(&self, d: u32) -> usize {
        self.degrees().into_iter().filter(|&x| x == d).count()
    }
}

/// A length `n - 2` code over labels `1..=n`, for `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruferSequence {
    n: usize,
    code: Vec<usize>,
}

impl PruferSequence {
    pub fn new(n: usize, code: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidVertexCount { n, reason: "Prüfer codes need n >= 2" });
        }
        if code.len() != n - 2 {
            return Err(Error::InvalidVertexCount { n, reason: "code length must be n - 2" });
        }
        if let Some(&label) = code.iter().find(|&&v| v < 1 || v > n) {
            return Err(Error::LabelOutOfRange { label, n });
        }
        Ok(Self { n, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> &[usize] {
        &self.code
    }

    /// Linear-time decoding: repeatedly join the smallest current leaf to the next code entry.
    pub fn decode(&self) -> LabeledTree {
        let n = self.n;
        let mut degree = vec![1usize; n + 1];
        for &v in &self.code {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut ptr = (1..=n).find(|&v| degree[v] == 1).expect("a code always leaves a leaf");
        let mut leaf = ptr;
        for &v in &self.code {
            edges.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 && v < ptr {
                leaf = v;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges.push((leaf, n));
        LabeledTree::new(n, edges).expect("decoding always yields a tree")
    }

    /// Inverse of [`PruferSequence::decode`].
    pub fn encode(tree: &LabeledTree) -> Result<Self> {
        let n = tree.n;
        if n < 2 {
            return Err(Error::InvalidVertexCount { n, reason: "Prüfer codes need n >= 2" });
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in &tree.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // Root at n; a leaf's unique unremoved neighbour is its parent.
        let mut parent = vec![0usize; n + 1];
        let mut stack = vec![n];
        let mut seen = vec![false; n + 1];
        seen[n] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut code = Vec::with_capacity(n - 2);
        let mut ptr = (1..=n).find(|&v| degree[v] == 1).expect("trees have leaves");
        let mut leaf = ptr;
        while code.len() < n - 2 {
            let p = parent[leaf];
            code.push(p);
            degree[p] -= 1;
            if degree[p] == 1 && p < ptr {
                leaf = p;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        Ok(Self { n, code })
    }
}

/// Visits the label multiplicities of every code in odometer order; the
/// space is split on the leading label and tallies are merged additively.
fn tally_codes<T, F, M>(n: usize, init: impl Fn() -> T + Sync + Send, visit: F, merge: M) -> T
where
    T: Send,
    F: Fn(&mut T, &[u32]) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let len = n - 2;
    if len == 0 {
        let mut acc = init();
        visit(&mut acc, &vec![0u32; n + 1]);
        return acc;
    }
    (1..=n)
        .into_par_iter()
        .map(|lead| {
            let mut acc = init();
            let mut code = vec![1usize; len];
            code[0] = lead;
            let mut mult = vec![0u32; n + 1];
            mult[lead] += 1;
            mult[1] += (len - 1) as u32;
            loop {
                visit(&mut acc, &mult);
                // advance positions 1..len like an odometer
                let mut pos = len - 1;
                loop {
                    if pos == 0 {
                        return acc;
                    }
                    mult[code[pos]] -= 1;
                    if code[pos] < n {
                        code[pos] += 1;
                        mult[code[pos]] += 1;
                        break;
                    }
                    code[pos] = 1;
                    mult[1] += 1;
                    pos -= 1;
                }
            }
        })
        .reduce(&init, merge)
}

fn check_guard(n: usize, max: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidVertexCount { n, reason: "exhaustive enumeration needs n >= 2" });
    }
    if n > max {
        return Err(Error::GuardViolation { n, max });
    }
    Ok(())
}

/// Counts trees on `n` vertices satisfying `rule` by running over all `n^(n-2)` codes.
pub fn oracle_count(rule: &DegreeRule, n: usize) -> Result<BigUint> {
    check_guard(n, MAX_ORACLE_COUNT_N)?;
    let hits = tally_codes(
        n,
        || 0u64,
        |acc, mult| {
            if (1..=n).all(|v| rule.admits(mult[v] + 1)) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigUint::from(hits))
}

/// Histogram of degree multisets over all codes: sorted degree list -> number of trees.
pub fn oracle_degree_multisets(n: usize) -> Result<BTreeMap<Vec<u32>, u64>> {
    check_guard(n, MAX_ORACLE_COUNT_N)?;
    Ok(tally_codes(
        n,
        BTreeMap::new,
        |acc, mult| {
            let mut degs: Vec<u32> = mult[1..].iter().map(|m| m + 1).collect();
            degs.sort_unstable();
            *acc.entry(degs).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

/// Exact joint law of `(X_d)_{d in degrees}` under the uniform distribution on trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointLaw {
    pub n: usize,
    pub degrees: Vec<u32>,
    /// degree-count tuple -> number of trees with that tuple
    pub counts: BTreeMap<Vec<u32>, u64>,
}

impl JointLaw {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Law of a single coordinate.
    pub fn marginal(&self, index: usize) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (tuple, &c) in &self.counts {
            *out.entry(tuple[index]).or_insert(0) += c;
        }
        out
    }

    /// Exact expectation of `g(X)`.
    pub fn expect(&self, g: impl Fn(&[u32]) -> BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (tuple, &c) in &self.counts {
            acc += g(tuple) * BigRational::from_integer(c.into());
        }
        acc / BigRational::from_integer(self.total().into())
    }
}

pub fn oracle_degree_statistics(n: usize, degrees: &[u32]) -> Result<JointLaw> {
    check_guard(n, MAX_ORACLE_STATS_N)?;
    let counts = tally_codes(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<u32>, u64>, mult| {
            let tuple: Vec<u32> =
                degrees.iter().map(|&d| mult[1..].iter().filter(|&&m| m + 1 == d).count() as u32).collect();
            *acc.entry(tuple).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    Ok(JointLaw { n, degrees: degrees.to_vec(), counts })
}

fn random_code(n: usize, rng: &mut ChaCha8Rng) -> PruferSequence {
    let code = (0..n - 2).map(|_| rng.random_range(1..=n as u32) as usize).collect();
    PruferSequence { n, code }
}

/// A uniformly random tree on `n` vertices: `n - 2` independent uniform
/// labels from a ChaCha8 stream seeded with `seed`, then decoded.
pub fn sample_tree(n: usize, seed: u64) -> Result<LabeledTree> {
    if n < 2 {
        return Err(Error::InvalidVertexCount { n, reason: "sampling needs n >= 2" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_code(n, &mut rng).decode())
}

/// `count` independent uniform trees; tree `i` comes from stream `i`, so tree 0
/// equals [`sample_tree`] with the same seed.
pub fn sample_trees(n: usize, count: usize, seed: u64) -> Result<Vec<LabeledTree>> {
    if n < 2 {
        return Err(Error::InvalidVertexCount { n, reason: "sampling needs n >= 2" });
    }
    Ok((0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            random_code(n, &mut rng).decode()
        })
        .collect())
}

/// `X_d` for `samples` independent uniform trees. Sample `i` draws from
/// stream `i` of the ChaCha8 generator seeded with `seed`, so the result
/// does not depend on how the work is split across threads.
pub fn sample_degree_counts(n: usize, degree: u32, samples: usize, seed: u64) -> Result<Vec<u32>> {
    if n < 2 {
        return Err(Error::InvalidVertexCount { n, reason: "sampling needs n >= 2" });
    }
    Ok((0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let code = random_code(n, &mut rng);
            let mut mult = vec![0u32; n + 1];
            for &v in code.code() {
                mult[v] += 1;
            }
            mult[1..].iter().filter(|&&m| m + 1 == degree).count() as u32
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow_usize;
    use proptest::prelude::*;

    #[test]
    fn sample_trees_first_matches_single() {
        let trees = sample_trees(30, 4, 11).unwrap();
        assert_eq!(trees[0], sample_tree(30, 11).unwrap());
        assert_ne!(trees[1], trees[2]);
        assert_eq!(trees, sample_trees(30, 4, 11).unwrap());
    }

    fn code(n: usize, c: &[usize]) -> PruferSequence {
        PruferSequence::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn decode_examples() {
        assert_eq!(code(3, &[1]).decode().edges(), &[(1, 2), (1, 3)]);
        assert_eq!(code(2, &[]).decode().edges(), &[(1, 2)]);
        assert_eq!(code(4, &[2, 2]).decode().edges(), &[(1, 2), (2, 3), (2, 4)]);
    }

    #[test]
    fn encode_examples() {
        let star = LabeledTree::new(4, [(2, 1), (2, 3), (4, 2)]).unwrap();
        assert_eq!(PruferSequence::encode(&star).unwrap().code(), &[2, 2]);
        let edge = LabeledTree::new(2, [(1, 2)]).unwrap();
        assert!(PruferSequence::encode(&edge).unwrap().code().is_empty());
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(PruferSequence::new(4, vec![5, 1]), Err(Error::LabelOutOfRange { label: 5, n: 4 }));
        assert!(PruferSequence::new(4, vec![1]).is_err());
        assert!(matches!(LabeledTree::new(3, [(1, 2), (2, 1)]), Err(Error::NotATree { .. })));
        assert!(matches!(LabeledTree::new(3, [(1, 2)]), Err(Error::NotATree { .. })));
        assert!(matches!(LabeledTree::new(3, [(1, 2), (2, 4)]), Err(Error::LabelOutOfRange { .. })));
        assert!(PruferSequence::encode(&LabeledTree::new(1, []).unwrap()).is_err());
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(oracle_count(&DegreeRule::forbidden([]).unwrap(), 5).unwrap(), BigUint::from(125u32));
        assert_eq!(oracle_count(&DegreeRule::allowed([1, 2]).unwrap(), 4).unwrap(), BigUint::from(12u32));
        assert_eq!(oracle_count(&DegreeRule::allowed([1, 3]).unwrap(), 6).unwrap(), BigUint::from(90u32));
        assert_eq!(oracle_count(&DegreeRule::forbidden([]).unwrap(), 10), Err(Error::GuardViolation { n: 10, max: 9 }));
    }

    #[test]
    fn oracle_matches_cayley() {
        let all = DegreeRule::forbidden([]).unwrap();
        for n in 2..=MAX_ORACLE_COUNT_N {
            assert_eq!(oracle_count(&all, n).unwrap(), pow_usize(n, n - 2));
        }
    }

    #[test]
    fn degree_statistics_examples() {
        let law = oracle_degree_statistics(3, &[1]).unwrap();
        assert_eq!(law.counts, BTreeMap::from([(vec![2], 3)]));
        let law = oracle_degree_statistics(4, &[1]).unwrap();
        assert_eq!(law.counts, BTreeMap::from([(vec![2], 12), (vec![3], 4)]));
        assert_eq!(law.expect(|x| BigRational::from_integer(x[0].into())), BigRational::new(9.into(), 4.into()));
        let law = oracle_degree_statistics(4, &[1, 2]).unwrap();
        assert_eq!(law.counts, BTreeMap::from([(vec![2, 2], 12), (vec![3, 0], 4)]));
        assert!(oracle_degree_statistics(9, &[1]).is_err());
    }

    #[test]
    fn marginals_are_consistent() {
        for n in 4..=7 {
            let joint = oracle_degree_statistics(n, &[1, 2, 3]).unwrap();
            for (i, d) in [1, 2, 3].into_iter().enumerate() {
                let single = oracle_degree_statistics(n, &[d]).unwrap();
                let single: BTreeMap<u32, u64> = single.counts.into_iter().map(|(k, v)| (k[0], v)).collect();
                assert_eq!(joint.marginal(i), single);
            }
            assert_eq!(joint.total(), (n as u64).pow(n as u32 - 2));
        }
    }

    #[test]
    fn multiset_histogram_totals() {
        let hist = oracle_degree_multisets(6).unwrap();
        assert_eq!(hist.values().sum::<u64>(), 1296);
        assert_eq!(hist[&vec![1, 1, 1, 1, 1, 5]], 6);
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_tree(2, 99).unwrap().edges(), &[(1, 2)]);
        assert_eq!(sample_tree(40, 7).unwrap(), sample_tree(40, 7).unwrap());
        assert_ne!(sample_tree(40, 7).unwrap(), sample_tree(40, 8).unwrap());
        assert_eq!(sample_degree_counts(30, 1, 50, 3).unwrap(), sample_degree_counts(30, 1, 50, 3).unwrap());
    }

    proptest! {
        #[test]
        fn code_round_trip(n in 3usize..=12, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_code(n, &mut rng);
            let tree = c.decode();
            prop_assert_eq!(&PruferSequence::encode(&tree).unwrap(), &c);
            prop_assert_eq!(PruferSequence::encode(&tree).unwrap().decode(), tree.clone());
            let degrees = tree.degrees();
            prop_assert_eq!(degrees.iter().map(|&d| d as usize).sum::<usize>(), 2 * n - 2);
            for v in 1..=n {
                let mult = c.code().iter().filter(|&&x| x == v).count() as u32;
                prop_assert_eq!(degrees[v - 1], mult + 1);
                prop_assert_eq!(tree.degree(v), mult + 1);
            }
        }
    }
}
