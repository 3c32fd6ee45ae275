//! Weyl group elements and coset combinatorics.
//!
//! An element is stored as its rank x rank integer matrix acting on
//! simple-root coordinates, together with a cached reduced word. Words are
//! read left to right: `w(k1,...,kr) = s_{k1} s_{k2} ... s_{kr}`, so as a
//! map the rightmost reflection applies first. Equality of elements is
//! matrix equality; words are never compared.
//!
//! Minimal coset representatives are enumerated by breadth-first search on
//! a weight orbit rather than over group elements, which keeps the large
//! quotients (240 nodes for the biggest exceptional case) cheap.

use crate::rootsys::{Root, RootSystem, Weight};
use crate::{rat, Error, Rat, Result};
use std::collections::HashMap;
use std::fmt;

/// Hard ceiling for any full-group or orbit enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElt {
    /// Row-major rank x rank matrix: column j is the image of alpha_j in
    /// simple-root coordinates.
    pub matrix: Vec<i64>,
    pub rank: usize,
    /// Lexicographically minimal reduced word (1-based simple labels).
    pub word: Vec<usize>,
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.word)
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "w(")?;
            for k in &self.word {
                write!(f, "{k}")?;
            }
            write!(f, ")")
        }
    }
}

impl WeylElt {
    pub fn identity(rank: usize) -> WeylElt {
        let mut matrix = vec![0i64; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElt {
            matrix,
            rank,
            word: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Apply to a root (simple-root coordinates).
    pub fn apply_root(&self, r: &Root) -> Root {
        let n = self.rank;
        let mut out = vec![0i64; n];
        for (j, &c) in r.coeffs.iter().enumerate() {
            if c != 0 {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += self.matrix[i * n + j] * c;
                }
            }
        }
        Root { coeffs: out }
    }

    /// Apply to a weight in fundamental coordinates. The weight action of
    /// `w` is the transpose of the root-coordinate matrix of `w^{-1}`, i.e.
    /// `(w.lambda)_i = sum_j lambda_j (M_{w^{-1}})_{ji}`; equivalently the
    /// inverse-transpose of this element's matrix, which we compute from
    /// the reversed word to stay in integers.
    pub fn apply_weight(&self, rs: &RootSystem, w: &Weight) -> Weight {
        // w = s_{k1}...s_{kr} acting on a weight: apply s_{kr} first.
        let mut coords = w.coords.clone();
        for &k in self.word.iter().rev() {
            reflect_weight_in_place(rs, &mut coords, k);
        }
        Weight { coords }
    }

    /// Inverse element (reversed word).
    pub fn inverse(&self, rs: &RootSystem) -> WeylElt {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        element_from_word_unchecked(rs, &rev)
    }

    /// Group product `self * other` (self acts second).
    pub fn mul(&self, rs: &RootSystem, other: &WeylElt) -> WeylElt {
        let n = self.rank;
        let mut matrix = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        matrix[i * n + j] += a * other.matrix[k * n + j];
                    }
                }
            }
        }
        finish_element(rs, matrix)
    }
}

fn reflect_weight_in_place(rs: &RootSystem, coords: &mut [Rat], label: usize) {
    let i = label - 1;
    let ci = coords[i];
    if ci == rat(0) {
        return;
    }
    for (j, c) in coords.iter_mut().enumerate() {
        *c -= ci * rat(rs.cartan[j][i]);
    }
}

/// Left-multiply a root-coordinate matrix by s_label in place (row update).
fn left_mul_reflection(rs: &RootSystem, matrix: &mut [i64], label: usize) {
    let n = rs.rank;
    let i = label - 1;
    for j in 0..n {
        let mut acc = 0;
        for k in 0..n {
            let c = rs.cartan[i][k];
            if c != 0 {
                acc += c * matrix[k * n + j];
            }
        }
        matrix[i * n + j] -= acc;
    }
}

/// Build the element for the given word; the word need not be reduced.
pub fn element_of(rs: &RootSystem, word: &[usize]) -> Result<WeylElt> {
    for &k in word {
        if k == 0 || k > rs.rank {
            return Err(Error::BadLabel {
                label: k,
                rank: rs.rank,
            });
        }
    }
    Ok(element_from_word_unchecked(rs, word))
}

fn element_from_word_unchecked(rs: &RootSystem, word: &[usize]) -> WeylElt {
    let n = rs.rank;
    let mut matrix = WeylElt::identity(n).matrix;
    // Product s_{k1}...s_{kr}: right factor applies first, so build by
    // left-multiplying in reverse order.
    for &k in word.iter().rev() {
        left_mul_reflection(rs, &mut matrix, k);
    }
    finish_element(rs, matrix)
}

/// Attach the canonical (lexicographically minimal) reduced word.
fn finish_element(rs: &RootSystem, matrix: Vec<i64>) -> WeylElt {
    let n = rs.rank;
    let word = canonical_word(rs, &matrix);
    debug_assert_eq!(word.len(), inversion_count(rs, &matrix));
    WeylElt {
        matrix,
        rank: n,
        word,
    }
}

/// Greedy smallest-left-descent reduction: repeatedly strip the smallest
/// label i with l(s_i w) < l(w). Yields the lex-minimal reduced word.
///
/// A left descent at i means w^{-1}(alpha_i) < 0, detected as
/// <alpha_i^vee, w(2rho)> < 0; w(2rho) is maintained incrementally.
fn canonical_word(rs: &RootSystem, matrix: &[i64]) -> Vec<usize> {
    let n = rs.rank;
    let two_rho = two_rho_simple(rs);
    // v = M * two_rho in simple-root coordinates.
    let mut v = vec![0i64; n];
    for (j, &c) in two_rho.iter().enumerate() {
        if c != 0 {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi += matrix[i * n + j] * c;
            }
        }
    }
    let mut word = Vec::new();
    loop {
        let desc = (0..n).find(|&i| {
            let pairing: i64 = (0..n).map(|k| rs.cartan[i][k] * v[k]).sum();
            pairing < 0
        });
        match desc {
            Some(i) => {
                // v <- S_i v: only coordinate i changes.
                let delta: i64 = (0..n).map(|k| rs.cartan[i][k] * v[k]).sum();
                v[i] -= delta;
                word.push(i + 1);
            }
            None => break,
        }
    }
    // word holds i1, i2, ... with s_{i1} s_{i2} ... w = e, hence
    // w = s_{i1} s_{i2} ... in left-to-right order.
    word
}

fn two_rho_simple(rs: &RootSystem) -> Vec<i64> {
    let mut acc = vec![0i64; rs.rank];
    for r in &rs.positive_roots {
        for (i, &c) in r.coeffs.iter().enumerate() {
            acc[i] += c;
        }
    }
    acc
}

fn inversion_count(rs: &RootSystem, matrix: &[i64]) -> usize {
    let n = rs.rank;
    rs.positive_roots
        .iter()
        .filter(|r| {
            let mut out = vec![0i64; n];
            for (j, &c) in r.coeffs.iter().enumerate() {
                if c != 0 {
                    for (i, o) in out.iter_mut().enumerate() {
                        *o += matrix[i * n + j] * c;
                    }
                }
            }
            out.iter().any(|&c| c < 0)
        })
        .count()
}

/// Positive roots sent to negatives by `w^{-1}`; cardinality = length(w).
pub fn inversion_set(rs: &RootSystem, w: &WeylElt) -> Vec<Root> {
    // R_w = { w(-beta) : beta > 0, w(-beta) > 0 } = w(R^-) cap R^+.
    let mut out: Vec<Root> = rs
        .positive_roots
        .iter()
        .map(|beta| w.apply_root(&beta.neg()))
        .filter(|img| img.is_positive())
        .collect();
    out.sort_by_key(|r| (r.height(), r.coeffs.clone()));
    out
}

/// Longest element of the parabolic subgroup generated by `subset`.
pub fn longest_element(rs: &RootSystem, subset: &[usize]) -> WeylElt {
    let mut w = WeylElt::identity(rs.rank);
    loop {
        // Pick the smallest i in the subset with w(alpha_i) > 0 and extend
        // on the right; stops when all subset roots go negative.
        let next = subset
            .iter()
            .copied()
            .find(|&i| w.apply_root(&rs.simple_root(i)).is_positive());
        match next {
            Some(i) => {
                let si = element_from_word_unchecked(rs, &[i]);
                w = w.mul(rs, &si);
            }
            None => return w,
        }
    }
}

/// Minimal-length representatives of the cosets `w W_levi`, i.e. all `w`
/// with `w(Delta_levi) > 0`, via BFS on the orbit of the fundamental
/// weight(s) orthogonal to the Levi. Output sorted by (length, word).
pub fn min_coset_reps(rs: &RootSystem, levi: &[usize], budget: u64) -> Result<Vec<WeylElt>> {
    let orbit = coset_orbit(rs, levi, budget)?;
    let mut reps: Vec<WeylElt> = orbit
        .words
        .iter()
        .map(|word| element_from_word_unchecked(rs, word))
        .collect();
    reps.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
    Ok(reps)
}

/// Orbit data underlying `min_coset_reps`, exposed for bulk scans that
/// do not want to materialize every element up front.
pub struct CosetOrbit {
    /// One representative word per coset, in BFS discovery order.
    pub words: Vec<Vec<usize>>,
}

fn coset_orbit(rs: &RootSystem, levi: &[usize], budget: u64) -> Result<CosetOrbit> {
    let expected = rs.full_weyl_order() / rs.weyl_order_of(levi);
    if expected > budget {
        return Err(Error::BudgetExceeded {
            needed: expected,
            budget,
        });
    }
    let n = rs.rank;
    // Integer weight with stabilizer exactly W_levi: sum of fundamental
    // weights over labels outside the Levi.
    let start: Vec<i64> = (1..=n)
        .map(|i| if levi.contains(&i) { 0 } else { 1 })
        .collect();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut nodes = vec![start];
    let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, 0)]; // (parent, letter)
    let mut head = 0;
    while head < nodes.len() {
        let cur = nodes[head].clone();
        for i in 1..=n {
            // s_i on fundamental coordinates.
            let ci = cur[i - 1];
            if ci == 0 {
                continue; // fixed by s_i
            }
            let mut img = cur.clone();
            for (j, x) in img.iter_mut().enumerate() {
                *x -= ci * rs.cartan[j][i - 1];
            }
            if !index.contains_key(&img) {
                index.insert(img.clone(), nodes.len());
                nodes.push(img);
                parent.push((head, i));
            }
        }
        head += 1;
    }
    debug_assert_eq!(nodes.len() as u64, expected);
    // Reconstruct a word per node by walking parents; each step is a left
    // multiplication, so letters accumulate in left-to-right order.
    let mut words = Vec::with_capacity(nodes.len());
    for start in 0..nodes.len() {
        let mut word = Vec::new();
        let mut at = start;
        while parent[at].0 != usize::MAX {
            word.push(parent[at].1);
            at = parent[at].0;
        }
        words.push(word);
    }
    Ok(CosetOrbit { words })
}

/// Minimal representatives of `w W_levi` inside the parabolic subgroup
/// W_ambient: BFS restricted to the ambient generators.
pub fn min_coset_reps_in_levi(
    rs: &RootSystem,
    ambient: &[usize],
    levi: &[usize],
    budget: u64,
) -> Result<Vec<WeylElt>> {
    debug_assert!(levi.iter().all(|i| ambient.contains(i)));
    let expected = rs.weyl_order_of(ambient) / rs.weyl_order_of(levi);
    if expected > budget {
        return Err(Error::BudgetExceeded {
            needed: expected,
            budget,
        });
    }
    let n = rs.rank;
    let start: Vec<i64> = (1..=n)
        .map(|i| if levi.contains(&i) { 0 } else { 1 })
        .collect();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut nodes = vec![start];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut head = 0;
    while head < nodes.len() {
        let cur = nodes[head].clone();
        for &i in ambient {
            let ci = cur[i - 1];
            if ci == 0 {
                continue;
            }
            let mut img = cur.clone();
            for (j, x) in img.iter_mut().enumerate() {
                *x -= ci * rs.cartan[j][i - 1];
            }
            if !index.contains_key(&img) {
                index.insert(img.clone(), nodes.len());
                nodes.push(img);
                let mut w = vec![i];
                w.extend_from_slice(&words[head]);
                words.push(w);
            }
        }
        head += 1;
    }
    let mut reps: Vec<WeylElt> = words
        .iter()
        .map(|word| element_from_word_unchecked(rs, word))
        .collect();
    reps.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
    Ok(reps)
}

/// Shortest representatives of the double cosets `W_left \ W / W_right`:
/// the elements with `w(Delta_right) > 0` and `w^{-1}(Delta_left) > 0`.
pub fn double_coset_min_reps(
    rs: &RootSystem,
    left: &[usize],
    right: &[usize],
    budget: u64,
) -> Result<Vec<WeylElt>> {
    let reps = min_coset_reps(rs, right, budget)?;
    Ok(reps
        .into_iter()
        .filter(|w| {
            left.iter().all(|&i| {
                let img = w.inverse(rs).apply_root(&rs.simple_root(i));
                img.is_positive()
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(f, n).unwrap()
    }

    #[test]
    fn identity_and_involution() {
        let e6 = rs(Family::E, 6);
        let e = element_of(&e6, &[]).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.matrix, WeylElt::identity(6).matrix);
        let w = element_of(&e6, &[1, 1]).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn bad_label_rejected() {
        let a2 = rs(Family::A, 2);
        assert!(element_of(&a2, &[3]).is_err());
        assert!(element_of(&a2, &[0]).is_err());
    }

    #[test]
    fn word_length_equals_inversions() {
        let e6 = rs(Family::E, 6);
        let w = element_of(&e6, &[6, 5, 4, 3, 1]).unwrap();
        assert_eq!(w.length(), 5);
        assert_eq!(inversion_set(&e6, &w).len(), 5);
        // deterministic image of a test root
        let img = w.apply_root(&e6.simple_root(6));
        assert_eq!(img, e6.simple_root(5));
    }

    #[test]
    fn canonical_words_are_reduced_and_lex_minimal() {
        let a2 = rs(Family::A, 2);
        let w0 = longest_element(&a2, &[1, 2]);
        assert_eq!(w0.word, vec![1, 2, 1]);
        // Same element from the other reduced word.
        let alt = element_of(&a2, &[2, 1, 2]).unwrap();
        assert_eq!(alt.matrix, w0.matrix);
        assert_eq!(alt.word, vec![1, 2, 1]);
    }

    #[test]
    fn longest_elements() {
        let e7 = rs(Family::E, 7);
        let w0 = longest_element(&e7, &(1..=7).collect::<Vec<_>>());
        assert_eq!(w0.length(), 63);
        assert!(longest_element(&e7, &[]).is_identity());
        let s3 = longest_element(&e7, &[3]);
        assert_eq!(s3.word, vec![3]);
        // w0 sends every positive root to a negative.
        assert_eq!(inversion_set(&e7, &w0).len(), 63);
    }

    #[test]
    fn min_coset_rep_counts() {
        let e6 = rs(Family::E, 6);
        let reps = min_coset_reps(&e6, &[1, 2, 3, 4, 5], DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(reps.len(), 27);
        let e8 = rs(Family::E, 8);
        let reps = min_coset_reps(&e8, &[1, 2, 3, 4, 5, 6, 7], DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(reps.len(), 240);
        let a1 = rs(Family::A, 1);
        let reps = min_coset_reps(&a1, &[], DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn budget_guard_fires_before_enumeration() {
        let e8 = rs(Family::E, 8);
        match min_coset_reps(&e8, &[], DEFAULT_ENUM_BUDGET) {
            Err(Error::BudgetExceeded { needed, .. }) => assert_eq!(needed, 696_729_600),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn double_coset_reps_e6() {
        let e6 = rs(Family::E, 6);
        let l1: Vec<usize> = vec![2, 3, 4, 5, 6];
        let psi = double_coset_min_reps(&e6, &l1, &l1, DEFAULT_ENUM_BUDGET).unwrap();
        let words: Vec<Vec<usize>> = psi.iter().map(|w| w.word.clone()).collect();
        assert_eq!(
            words,
            vec![vec![], vec![1], vec![1, 3, 4, 2, 5, 4, 3, 1]],
        );
        // The tabulated representative in its original spelling is the
        // same group element.
        let u = element_of(&e6, &[1, 3, 4, 2, 5, 4, 3, 1]).unwrap();
        assert!(psi.iter().any(|w| w.matrix == u.matrix));
    }

    #[test]
    fn double_coset_reps_small() {
        let a1 = rs(Family::A, 1);
        let psi = double_coset_min_reps(&a1, &[], &[], DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(psi.len(), 2);
        // D4 with the D3-type Levi (drop node 1): w(1) is the unique
        // length-1 representative.
        let d4 = rs(Family::D, 4);
        let levi = vec![2, 3, 4];
        let psi = double_coset_min_reps(&d4, &levi, &levi, DEFAULT_ENUM_BUDGET).unwrap();
        let len1: Vec<&WeylElt> = psi.iter().filter(|w| w.length() == 1).collect();
        assert_eq!(len1.len(), 1);
        assert_eq!(len1[0].word, vec![1]);
    }

    #[test]
    fn weight_and_root_actions_are_dual() {
        // <w(lambda), (w(alpha))^vee> = <lambda, alpha^vee> for all roots.
        let e6 = rs(Family::E, 6);
        let rho = e6.rho_parabolic(&[]);
        for word in [vec![2, 4, 5], vec![1, 3, 4, 2, 5, 4, 3, 1], vec![6, 5, 4, 3, 1]] {
            let w = element_of(&e6, &word).unwrap();
            let w_rho = w.apply_weight(&e6, &rho);
            for alpha in &e6.positive_roots {
                assert_eq!(
                    e6.weight_root_pairing(&w_rho, &w.apply_root(alpha)),
                    e6.weight_root_pairing(&rho, alpha),
                );
            }
        }
    }

    #[test]
    fn enumerated_reps_satisfy_their_defining_conditions() {
        // Post-hoc re-verification of the BFS output: every representative
        // keeps the Levi simple roots positive, and double-coset
        // representatives also satisfy the left condition.
        let e6 = rs(Family::E, 6);
        let levi = vec![1, 2, 3, 4, 5];
        for w in min_coset_reps(&e6, &levi, DEFAULT_ENUM_BUDGET).unwrap() {
            for &i in &levi {
                assert!(w.apply_root(&e6.simple_root(i)).is_positive());
            }
            assert_eq!(w.length(), inversion_set(&e6, &w).len());
        }
        let left = vec![2, 3, 4, 5, 6];
        for w in double_coset_min_reps(&e6, &left, &levi, DEFAULT_ENUM_BUDGET).unwrap() {
            for &i in &left {
                assert!(w.inverse(&e6).apply_root(&e6.simple_root(i)).is_positive());
            }
        }
    }

    #[test]
    fn double_cosets_contain_the_longest_representative() {
        // w0 w0^L is the shortest representative of the double coset of
        // w0, so it must appear in every Psi_{L',L} with L' = w0(L).
        for (f, n, drop) in [(Family::D, 4, 1), (Family::E, 6, 6), (Family::A, 5, 3)] {
            let sys = rs(f, n);
            let all: Vec<usize> = (1..=n).collect();
            let levi: Vec<usize> = (1..=n).filter(|&i| i != drop).collect();
            let w0 = longest_element(&sys, &all);
            let w0l = longest_element(&sys, &levi);
            let v0 = w0.mul(&sys, &w0l);
            let lp: Vec<usize> = levi
                .iter()
                .map(|&i| {
                    let img = w0.apply_root(&sys.simple_root(i)).neg();
                    img.coeffs.iter().position(|&c| c == 1).unwrap() + 1
                })
                .collect();
            let psi = double_coset_min_reps(&sys, &lp, &levi, DEFAULT_ENUM_BUDGET).unwrap();
            assert!(psi.iter().any(|w| w.matrix == v0.matrix), "{f:?}{n}");
        }
    }

    #[test]
    fn coset_counts_times_levi_order_gives_group_order() {
        for (f, n) in [(Family::A, 4), (Family::D, 5), (Family::E, 6)] {
            let sys = rs(f, n);
            let total = sys.full_weyl_order();
            for drop in 1..=n {
                let levi: Vec<usize> = (1..=n).filter(|&i| i != drop).collect();
                let reps = min_coset_reps(&sys, &levi, DEFAULT_ENUM_BUDGET).unwrap();
                assert_eq!(reps.len() as u64 * sys.weyl_order_of(&levi), total);
            }
        }
    }
}
