//! Simply-laced root systems with exact integer/rational data.
//!
//! Roots are stored as integer coefficient vectors in the simple-root basis;
//! weights as rational coordinate vectors in the fundamental-weight basis
//! (the i-th coordinate is the pairing with the i-th simple coroot). Since
//! every root has squared length 2, coroots are identified with roots and
//! all pairings go through the Cartan matrix.
//!
//! Simple roots carry the Bourbaki labeling: for E types the branch node
//! hangs off the chain as node 2 (edges 1-3, 3-4, 4-5, ..., 2-4); for D_n
//! the fork sits at nodes n-1 and n, both attached to n-2.

use crate::{rat, ratq, Error, Rat, Result};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

/// A root in simple-root coordinates. All coefficients share a sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    /// Sum of simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Support: the set of simple labels (1-based) with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", c, i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![Rat::zero(); rank],
        }
    }

    /// The i-th fundamental weight (1-based label).
    pub fn fundamental(rank: usize, label: usize) -> Weight {
        let mut coords = vec![Rat::zero(); rank];
        coords[label - 1] = rat(1);
        Weight { coords }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Rat) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Symmetric Cartan matrix, row-major.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots sorted by (height, coefficient vector).
    pub positive_roots: Vec<Root>,
}

impl RootSystem {
    /// Build the root system by closure from the Cartan matrix.
    ///
    /// Supported: A_n (n >= 1), D_n (n >= 3), E_6, E_7, E_8.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::UnsupportedType {
                family: match family {
                    Family::A => 'A',
                    Family::D => 'D',
                    Family::E => 'E',
                },
                rank,
            });
        }
        let cartan = cartan_matrix(family, rank);
        let positive_roots = close_positive_roots(&cartan);
        Ok(RootSystem {
            family,
            rank,
            cartan,
            positive_roots,
        })
    }

    pub fn type_name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn simple_root(&self, label: usize) -> Root {
        let mut coeffs = vec![0i64; self.rank];
        coeffs[label - 1] = 1;
        Root { coeffs }
    }

    /// Pairing `<alpha, beta^vee>` for roots, via the Cartan matrix.
    pub fn root_pairing(&self, alpha: &Root, beta: &Root) -> i64 {
        let mut acc = 0;
        for (i, &a) in alpha.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.coeffs.iter().enumerate() {
                if b != 0 {
                    acc += a * self.cartan[i][j] * b;
                }
            }
        }
        acc
    }

    /// Pairing `<w, alpha^vee>` of a weight with the coroot of `alpha`.
    pub fn weight_root_pairing(&self, w: &Weight, alpha: &Root) -> Rat {
        let mut acc = Rat::zero();
        for (i, &a) in alpha.coeffs.iter().enumerate() {
            if a != 0 {
                acc += w.coords[i] * rat(a);
            }
        }
        acc
    }

    /// Convert a root to fundamental-weight coordinates (rows of the Cartan
    /// matrix, exactly).
    pub fn root_to_weight(&self, alpha: &Root) -> Weight {
        let coords = (0..self.rank)
            .map(|i| {
                rat((0..self.rank)
                    .map(|j| self.cartan[i][j] * alpha.coeffs[j])
                    .sum::<i64>())
            })
            .collect();
        Weight { coords }
    }

    pub fn is_root(&self, r: &Root) -> bool {
        if r.is_positive() {
            self.positive_roots.contains(r)
        } else {
            self.positive_roots.contains(&r.neg())
        }
    }

    /// The unique root of maximal height.
    pub fn highest_root(&self) -> Root {
        self.positive_roots
            .last()
            .expect("nonempty root system")
            .clone()
    }

    /// Positive roots lying in the span of the given simple labels.
    pub fn positive_roots_of(&self, levi: &[usize]) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| r.support().iter().all(|s| levi.contains(s)))
            .cloned()
            .collect()
    }

    /// Half the sum of positive roots outside the Levi span, as a weight.
    ///
    /// `levi = []` gives the Weyl vector (all fundamental coordinates 1).
    pub fn rho_parabolic(&self, levi: &[usize]) -> Weight {
        self.rho_parabolic_within(&(1..=self.rank).collect::<Vec<_>>(), levi)
    }

    /// Half the sum of the roots in `R^+_outer - R^+_inner`, as a weight.
    /// Used for parabolic subgroups of Levi subgroups.
    pub fn rho_parabolic_within(&self, outer: &[usize], inner: &[usize]) -> Weight {
        let mut total = vec![0i64; self.rank];
        for r in self.positive_roots_of(outer) {
            if !r.support().iter().all(|s| inner.contains(s)) {
                for (i, &c) in r.coeffs.iter().enumerate() {
                    total[i] += c;
                }
            }
        }
        self.root_to_weight(&Root { coeffs: total }).scale(ratq(1, 2))
    }

    /// Classify the sub-diagram spanned by `labels` into connected simple
    /// components, each reported as (family, rank).
    pub fn levi_components(&self, labels: &[usize]) -> Vec<(Family, usize)> {
        let mut remaining: Vec<usize> = labels.to_vec();
        remaining.sort_unstable();
        remaining.dedup();
        let adjacent = |a: usize, b: usize| self.cartan[a - 1][b - 1] != 0 && a != b;
        let mut comps = Vec::new();
        while let Some(&start) = remaining.first() {
            let mut comp = vec![start];
            let mut frontier = vec![start];
            remaining.retain(|&x| x != start);
            while let Some(x) = frontier.pop() {
                let nbrs: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&y| adjacent(x, y))
                    .collect();
                for y in nbrs {
                    remaining.retain(|&z| z != y);
                    comp.push(y);
                    frontier.push(y);
                }
            }
            comps.push(classify_component(&comp, &|a, b| adjacent(a, b)));
        }
        comps.sort();
        comps
    }

    /// Order of the Weyl group generated by the given simple labels,
    /// from the component classification.
    pub fn weyl_order_of(&self, labels: &[usize]) -> u64 {
        self.levi_components(labels)
            .iter()
            .map(|&(f, k)| simple_weyl_order(f, k))
            .product()
    }

    pub fn full_weyl_order(&self) -> u64 {
        simple_weyl_order(self.family, self.rank)
    }
}

fn simple_weyl_order(family: Family, rank: usize) -> u64 {
    match family {
        Family::A => (1..=rank as u64 + 1).product(),
        Family::D => {
            let fact: u64 = (1..=rank as u64).product();
            (1u64 << (rank - 1)) * fact
        }
        Family::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => unreachable!(),
        },
    }
}

/// Recognize a connected simply-laced diagram from its shape.
fn classify_component(nodes: &[usize], adjacent: &dyn Fn(usize, usize) -> bool) -> (Family, usize) {
    let n = nodes.len();
    let deg = |x: usize| nodes.iter().filter(|&&y| adjacent(x, y)).count();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&x| deg(x) == 3).collect();
    if branch.is_empty() {
        return (Family::A, n);
    }
    assert_eq!(branch.len(), 1, "simply-laced diagram with one branch node");
    let b = branch[0];
    // Arm lengths from the branch node.
    let mut arms: Vec<usize> = Vec::new();
    for &start in nodes.iter().filter(|&&x| adjacent(x, b)) {
        let mut len = 1;
        let mut prev = b;
        let mut cur = start;
        loop {
            let next: Vec<usize> = nodes
                .iter()
                .copied()
                .filter(|&y| y != prev && adjacent(cur, y))
                .collect();
            match next.as_slice() {
                [] => break,
                [y] => {
                    prev = cur;
                    cur = *y;
                    len += 1;
                }
                _ => unreachable!("diagram has a single branch node"),
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => (Family::D, n),
        [1, 2, 2] => (Family::E, 6),
        [1, 2, 3] => (Family::E, 7),
        [1, 2, 4] => (Family::E, 8),
        other => panic!("unexpected arm profile {other:?}"),
    }
}

fn cartan_matrix(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    match family {
        Family::A => {
            for i in 1..rank {
                edge(i, i + 1);
            }
        }
        Family::D => {
            for i in 1..rank - 1 {
                edge(i, i + 1);
            }
            // Fork: both n-1 and n attach to n-2. The chain loop above
            // already wired n-2 to n-1; add the second prong.
            edge(rank - 2, rank);
        }
        Family::E => {
            edge(1, 3);
            edge(3, 4);
            edge(4, 5);
            edge(2, 4);
            if rank >= 6 {
                edge(5, 6);
            }
            if rank >= 7 {
                edge(6, 7);
            }
            if rank >= 8 {
                edge(7, 8);
            }
        }
    }
    c
}

/// Closure construction: grow the positive system level by level using the
/// root-string condition q = p - <alpha, alpha_i^vee> > 0.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let rank = cartan.len();
    let mut roots: Vec<Root> = (0..rank)
        .map(|i| {
            let mut coeffs = vec![0i64; rank];
            coeffs[i] = 1;
            Root { coeffs }
        })
        .collect();
    let pairing = |a: &Root, i: usize| -> i64 {
        (0..rank).map(|j| a.coeffs[j] * cartan[j][i]).sum()
    };
    let mut level_start = 0;
    loop {
        let level_end = roots.len();
        if level_start == level_end {
            break;
        }
        for idx in level_start..level_end {
            let r = roots[idx].clone();
            for i in 0..rank {
                // p = largest k with r - k*alpha_i still a root.
                let mut p = 0i64;
                let mut probe = r.clone();
                loop {
                    probe.coeffs[i] -= 1;
                    if probe.coeffs.iter().all(|&c| c == 0) || !probe.is_positive() {
                        break;
                    }
                    if roots.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(&r, i);
                if q > 0 {
                    let mut up = r.clone();
                    up.coeffs[i] += 1;
                    if !roots.contains(&up) {
                        roots.push(up);
                    }
                }
            }
        }
        level_start = level_end;
    }
    roots.sort_by_key(|r| (r.height(), r.coeffs.clone()));
    roots
}

/// Exact rational inverse of the Cartan matrix (Gauss-Jordan). The columns
/// are the fundamental weights in the simple-root basis.
pub fn cartan_inverse(cartan: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    let n = cartan.len();
    let mut a: Vec<Vec<Rat>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (acj, icj) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * acj;
                    inv[r][j] -= f * icj;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn counts(family: Family, rank: usize) -> usize {
        RootSystem::build(family, rank).unwrap().positive_roots.len()
    }

    #[test]
    fn closure_matches_standard_cardinalities() {
        for n in 1..=9 {
            assert_eq!(counts(Family::A, n), n * (n + 1) / 2, "A{n}");
        }
        for n in 3..=8 {
            assert_eq!(counts(Family::D, n), n * (n - 1), "D{n}");
        }
        assert_eq!(counts(Family::E, 6), 36);
        assert_eq!(counts(Family::E, 7), 63);
        assert_eq!(counts(Family::E, 8), 120);
    }

    #[test]
    fn rejects_unsupported_types() {
        assert!(RootSystem::build(Family::D, 2).is_err());
        assert!(RootSystem::build(Family::E, 9).is_err());
        assert!(RootSystem::build(Family::A, 0).is_err());
    }

    #[test]
    fn highest_roots() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(a2.highest_root().coeffs, vec![1, 1]);
        let e6 = RootSystem::build(Family::E, 6).unwrap();
        assert_eq!(e6.highest_root().coeffs, vec![1, 2, 2, 3, 2, 1]);
        let d4 = RootSystem::build(Family::D, 4).unwrap();
        assert_eq!(d4.highest_root().coeffs, vec![1, 2, 1, 1]);
        // Exactly one root of maximal height.
        for rs in [&a2, &e6, &d4] {
            let h = rs.highest_root().height();
            assert_eq!(
                rs.positive_roots.iter().filter(|r| r.height() == h).count(),
                1
            );
        }
    }

    #[test]
    fn heights() {
        let e7 = RootSystem::build(Family::E, 7).unwrap();
        assert_eq!(e7.highest_root().height(), 17);
        let e8 = RootSystem::build(Family::E, 8).unwrap();
        assert_eq!(e8.highest_root().height(), 29);
        let a5 = RootSystem::build(Family::A, 5).unwrap();
        assert_eq!(a5.simple_root(1).height(), 1);
    }

    #[test]
    fn rho_parabolic_pairings() {
        let e6 = RootSystem::build(Family::E, 6).unwrap();
        let rho = e6.rho_parabolic(&[1, 2, 3, 4, 5]);
        assert_eq!(rho.coords[5], rat(6));
        let e8 = RootSystem::build(Family::E, 8).unwrap();
        let rho = e8.rho_parabolic(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(rho.coords[7], Rat::new(29, 2));
        // Empty Levi gives the Weyl vector.
        let d5 = RootSystem::build(Family::D, 5).unwrap();
        assert!(d5.rho_parabolic(&[]).coords.iter().all(|&c| c == rat(1)));
    }

    #[test]
    fn negation_partitions_roots() {
        let d5 = RootSystem::build(Family::D, 5).unwrap();
        for r in &d5.positive_roots {
            assert!(!d5.positive_roots.contains(&r.neg()));
            assert!(d5.is_root(&r.neg()));
        }
    }

    #[test]
    fn fundamental_weight_matrix_inverts_cartan() {
        for (f, n) in [(Family::A, 4), (Family::D, 5), (Family::E, 7)] {
            let rs = RootSystem::build(f, n).unwrap();
            let inv = cartan_inverse(&rs.cartan);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rat::zero();
                    for k in 0..n {
                        acc += rat(rs.cartan[i][k]) * inv[k][j];
                    }
                    assert_eq!(acc, if i == j { rat(1) } else { rat(0) });
                }
            }
        }
    }

    #[test]
    fn levi_component_classification() {
        let e8 = RootSystem::build(Family::E, 8).unwrap();
        assert_eq!(
            e8.levi_components(&[1, 2, 3, 4, 5, 6, 7]),
            vec![(Family::E, 7)]
        );
        assert_eq!(
            e8.levi_components(&[2, 3, 4, 5, 6, 7, 8]),
            vec![(Family::D, 7)]
        );
        let e6 = RootSystem::build(Family::E, 6).unwrap();
        assert_eq!(
            e6.levi_components(&[1, 3, 5, 6]),
            vec![(Family::A, 2), (Family::A, 2)]
        );
        assert_eq!(e6.levi_components(&[1, 2, 3, 4]), vec![(Family::A, 4)]);
        assert_eq!(e6.levi_components(&[2, 3, 4, 5]), vec![(Family::D, 4)]);
        let d6 = RootSystem::build(Family::D, 6).unwrap();
        assert_eq!(d6.levi_components(&[2, 3, 4, 5, 6]), vec![(Family::D, 5)]);
        assert_eq!(d6.levi_components(&[1, 2, 3, 4, 5]), vec![(Family::A, 5)]);
    }
}
