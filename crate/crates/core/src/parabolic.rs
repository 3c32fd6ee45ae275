//! Maximal-parabolic pairs and triples: S/H classification of the unipotent
//! radical, (s, d)-parameters, the distinguished roots beta0, beta1 and
//! beta-tilde, and the distinguished Weyl elements v0, v1.
//!
//! The (s0, d0) parameters are catalog data (they come from pole points of
//! the associated Eisenstein families, established case by case in the
//! literature); everything else is recomputed from root data and the
//! defining relations
//!
//! ```text
//! -s0 + <rho_P, beta0^vee> = d0 + 1,   -s1 + <rho_Q, beta1^vee> = d1 + 1
//! ```
//!
//! which are asserted for every catalog row.

use crate::rootsys::{Family, Root, RootSystem, Weight};
use crate::weyl::{self, WeylElt};
use crate::{fmt_rat, rat, ratq, Error, Rat, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PairType {
    /// Abelian unipotent radical (Siegel type).
    S,
    /// Heisenberg radical: one-dimensional center.
    H,
    Other,
}

/// (s, d)-parameters of a weakly admissible pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SdParams {
    pub s: Rat,
    pub d: Rat,
}

impl fmt::Display for SdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rat(self.s), fmt_rat(self.d))
    }
}

/// A maximal parabolic pair (G, L) with L the Levi dropping `beta0`.
#[derive(Debug, Clone)]
pub struct ParabolicPair {
    pub rs: RootSystem,
    pub beta0: usize,
    /// Simple labels of the Levi: everything except beta0.
    pub levi: Vec<usize>,
    /// Histogram of beta0-coefficients over the nilradical roots:
    /// `grading[c]` is the number of positive roots with coefficient c+1.
    pub grading: Vec<usize>,
    pub pair_type: PairType,
    /// dim V = number of nilradical roots.
    pub dim_v: usize,
    /// For H-pairs, n with dim V = 2n + 1.
    pub heis_n: Option<usize>,
    /// <rho_P, beta0^vee>.
    pub rho_pairing: Rat,
    /// Catalog parameters, when the pair is weakly admissible.
    pub params: Option<SdParams>,
}

impl ParabolicPair {
    pub fn name(&self) -> String {
        let levi_types: Vec<String> = self
            .rs
            .levi_components(&self.levi)
            .iter()
            .map(|(f, k)| format!("{f}{k}"))
            .collect();
        format!("{}:{}", self.rs.type_name(), levi_types.join("x"))
    }
}

/// Classify the pair (G, L_{beta0}) from the nilradical grading. Total:
/// every (system, label) input classifies as S, H, or Other.
pub fn classify_pair(rs: &RootSystem, beta0: usize) -> ParabolicPair {
    let levi: Vec<usize> = (1..=rs.rank).filter(|&i| i != beta0).collect();
    let nilrad: Vec<&Root> = rs
        .positive_roots
        .iter()
        .filter(|r| r.coeffs[beta0 - 1] >= 1)
        .collect();
    let max_coeff = nilrad
        .iter()
        .map(|r| r.coeffs[beta0 - 1])
        .max()
        .unwrap_or(0) as usize;
    let mut grading = vec![0usize; max_coeff];
    for r in &nilrad {
        grading[r.coeffs[beta0 - 1] as usize - 1] += 1;
    }
    let pair_type = match max_coeff {
        1 => PairType::S,
        2 if grading[1] == 1 => PairType::H,
        _ => PairType::Other,
    };
    let dim_v = nilrad.len();
    let heis_n = if pair_type == PairType::H {
        Some((dim_v - 1) / 2)
    } else {
        None
    };
    let rho = rs.rho_parabolic(&levi);
    let rho_pairing = rho.coords[beta0 - 1];
    ParabolicPair {
        rs: rs.clone(),
        beta0,
        levi,
        grading,
        pair_type,
        dim_v,
        heis_n,
        rho_pairing,
        params: None,
    }
}

/// The root `beta~ = s_{beta0}(alpha0)`: the highest root for S-pairs,
/// `alpha0 - beta0` for H-pairs.
#[derive(Debug, Clone)]
pub struct TildeBeta {
    pub root: Root,
}

pub fn tilde_beta(p: &ParabolicPair) -> Result<TildeBeta> {
    let alpha0 = p.rs.highest_root();
    let root = match p.pair_type {
        PairType::S => alpha0,
        PairType::H => {
            let mut c = alpha0.coeffs.clone();
            c[p.beta0 - 1] -= 1;
            Root { coeffs: c }
        }
        PairType::Other => {
            return Err(Error::NotAdmissibleType { pair: p.name() })
        }
    };
    // Invariants: height and w0-antiinvariance.
    let expected_height = rat(2) * p.rho_pairing - rat(1);
    assert_eq!(rat(root.height()), expected_height, "height of beta~");
    let w0 = weyl::longest_element(&p.rs, &(1..=p.rs.rank).collect::<Vec<_>>());
    assert_eq!(w0.apply_root(&root), root.neg(), "w0(beta~) = -beta~");
    Ok(TildeBeta { root })
}

/// One row of the triple catalog: (G, L, M) with both parameter pairs and
/// both rho-pairing constants, plus the tabulated reduced word for v1.
#[derive(Debug, Clone)]
pub struct TripleSpec {
    pub rs: RootSystem,
    pub g_name: String,
    pub l_name: String,
    pub m_name: String,
    pub beta0: usize,
    pub beta1: usize,
    /// Simple labels of L (drop beta0) and of M (drop beta0, beta1).
    pub levi_l: Vec<usize>,
    pub levi_m: Vec<usize>,
    pub params0: SdParams,
    pub params1: SdParams,
    /// <rho_P, beta0^vee> and <rho_Q, beta1^vee>.
    pub rho_p: Rat,
    pub rho_q: Rat,
    /// Tabulated shortest word for v1.
    pub v1_word: Vec<usize>,
}

impl TripleSpec {
    pub fn name(&self) -> String {
        format!("{}:{}", self.g_name, self.l_name)
    }

    /// Simple labels of L' = w0(L).
    pub fn levi_l_prime(&self) -> Vec<usize> {
        let w0 = weyl::longest_element(&self.rs, &(1..=self.rs.rank).collect::<Vec<_>>());
        let mut out: Vec<usize> = self
            .levi_l
            .iter()
            .map(|&i| {
                let img = w0.apply_root(&self.rs.simple_root(i)).neg();
                assert!(img.is_positive() && img.height() == 1);
                img.coeffs.iter().position(|&c| c == 1).unwrap() + 1
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The label beta0' of the simple root dropped by L'.
    pub fn beta0_prime(&self) -> usize {
        let lp = self.levi_l_prime();
        (1..=self.rs.rank).find(|i| !lp.contains(i)).unwrap()
    }

    pub fn pair(&self) -> ParabolicPair {
        let mut p = classify_pair(&self.rs, self.beta0);
        p.params = Some(self.params0);
        p
    }
}

fn dn_v1_word() -> Vec<usize> {
    vec![1]
}

/// The six admissible rows. The D-row is instantiated for each n in
/// `4..=max_n`.
pub fn triple_catalog(max_n: usize) -> Vec<TripleSpec> {
    let mut rows = Vec::new();
    for n in 4..=max_n.max(4) {
        rows.push(make_triple(
            Family::D,
            n,
            &format!("D{n}"),
            &format!("D{}", n - 1),
            &format!("D{}", n - 2),
            1,
            2,
            SdParams { s: rat(1), d: rat(n as i64 - 3) },
            SdParams { s: rat(1), d: rat(n as i64 - 4) },
            dn_v1_word(),
        ));
    }
    rows.push(make_triple(
        Family::E,
        6,
        "E6",
        "D5",
        "A4",
        6,
        5,
        SdParams { s: rat(3), d: rat(2) },
        SdParams { s: rat(2), d: rat(1) },
        vec![6, 5, 4, 3, 1],
    ));
    rows.push(make_triple(
        Family::E,
        7,
        "E7",
        "E6",
        "D5",
        7,
        6,
        SdParams { s: rat(5), d: rat(3) },
        SdParams { s: rat(3), d: rat(2) },
        vec![7, 6, 5, 4, 2, 3, 4, 5, 6, 7],
    ));
    rows.push(make_triple(
        Family::E,
        6,
        "E6",
        "A5",
        "A2xA2",
        2,
        4,
        SdParams { s: ratq(7, 2), d: rat(1) },
        SdParams { s: rat(2), d: rat(0) },
        vec![2, 4, 3, 1, 5, 4, 3, 6, 5, 4, 2],
    ));
    rows.push(make_triple(
        Family::E,
        7,
        "E7",
        "D6",
        "A5",
        1,
        3,
        SdParams { s: ratq(11, 2), d: rat(2) },
        SdParams { s: rat(3), d: rat(1) },
        vec![1, 3, 4, 2, 5, 4, 3, 6, 5, 4, 2, 7, 6, 5, 4, 3, 1],
    ));
    rows.push(make_triple(
        Family::E,
        8,
        "E8",
        "E7",
        "E6",
        8,
        7,
        SdParams { s: ratq(19, 2), d: rat(4) },
        SdParams { s: rat(5), d: rat(3) },
        vec![
            8, 7, 6, 5, 4, 3, 2, 1, 4, 3, 5, 4, 6, 2, 5, 7, 6, 4, 5, 3, 4, 1, 2, 3, 4, 5, 6, 7,
            8,
        ],
    ));
    rows
}

#[allow(clippy::too_many_arguments)]
fn make_triple(
    family: Family,
    rank: usize,
    g_name: &str,
    l_name: &str,
    m_name: &str,
    beta0: usize,
    beta1: usize,
    params0: SdParams,
    params1: SdParams,
    v1_word: Vec<usize>,
) -> TripleSpec {
    let rs = RootSystem::build(family, rank).expect("catalog system");
    let levi_l: Vec<usize> = (1..=rank).filter(|&i| i != beta0).collect();
    let levi_m: Vec<usize> = levi_l.iter().copied().filter(|&i| i != beta1).collect();
    let rho_p = rs.rho_parabolic(&levi_l).coords[beta0 - 1];
    let rho_q = rs.rho_parabolic_within(&levi_l, &levi_m);
    let rho_q = rs.weight_root_pairing(&rho_q, &rs.simple_root(beta1));
    TripleSpec {
        rs,
        g_name: g_name.into(),
        l_name: l_name.into(),
        m_name: m_name.into(),
        beta0,
        beta1,
        levi_l,
        levi_m,
        params0,
        params1,
        rho_p,
        rho_q,
        v1_word,
    }
}

/// A weakly admissible pair appearing outside the admissible rows.
#[derive(Debug, Clone)]
pub struct WeakPairSpec {
    pub rs: RootSystem,
    pub g_name: String,
    pub l_name: String,
    pub beta0: usize,
    pub params: SdParams,
}

impl WeakPairSpec {
    pub fn name(&self) -> String {
        format!("{}:{}", self.g_name, self.l_name)
    }

    pub fn levi(&self) -> Vec<usize> {
        (1..=self.rs.rank).filter(|&i| i != self.beta0).collect()
    }

    pub fn pair(&self) -> ParabolicPair {
        let mut p = classify_pair(&self.rs, self.beta0);
        p.params = Some(self.params);
        p
    }
}

/// The weakly admissible (non-admissible) pairs from the second c_{v0}
/// table: (A5, A2xA2), (D3, D2), (D5, A4), (D6, A5).
pub fn weak_pair_catalog() -> Vec<WeakPairSpec> {
    vec![
        WeakPairSpec {
            rs: RootSystem::build(Family::A, 5).unwrap(),
            g_name: "A5".into(),
            l_name: "A2xA2".into(),
            beta0: 3,
            params: SdParams { s: rat(2), d: rat(0) },
        },
        WeakPairSpec {
            rs: RootSystem::build(Family::D, 3).unwrap(),
            g_name: "D3".into(),
            l_name: "D2".into(),
            beta0: 1,
            params: SdParams { s: rat(1), d: rat(0) },
        },
        WeakPairSpec {
            rs: RootSystem::build(Family::D, 5).unwrap(),
            g_name: "D5".into(),
            l_name: "A4".into(),
            beta0: 5,
            params: SdParams { s: rat(2), d: rat(1) },
        },
        WeakPairSpec {
            rs: RootSystem::build(Family::D, 6).unwrap(),
            g_name: "D6".into(),
            l_name: "A5".into(),
            beta0: 6,
            params: SdParams { s: rat(3), d: rat(1) },
        },
    ]
}

/// Every weakly admissible pair (G-type, L-type, beta0, params) reachable
/// in the verification: the six admissible rows plus the four weak pairs,
/// keyed by names like "E6:D5".
pub fn lookup_pair(name: &str) -> Result<(RootSystem, usize, SdParams)> {
    for t in triple_catalog(8) {
        if t.name() == name {
            return Ok((t.rs.clone(), t.beta0, t.params0));
        }
    }
    for w in weak_pair_catalog() {
        if w.name() == name {
            return Ok((w.rs.clone(), w.beta0, w.params));
        }
    }
    Err(Error::NotInCatalog { pair: name.into() })
}

/// The distinguished elements of a catalog triple.
pub struct Distinguished {
    pub v0: WeylElt,
    pub v1: WeylElt,
    pub v0_l: WeylElt,
    pub tilde: TildeBeta,
}

/// Build v0 = w0 w0^L and v1 = v0 s_{beta0} (v0^L)^{-1} and verify the
/// four defining properties:
///  1. v0 in Psi_{L',L} and v0^{-1} P' v0 cap L = L,
///  2. v0(beta0) = -beta~,
///  3. v1 in Psi_{L',L} and v1^{-1} P' v1 cap L = Q',
///  4. the character shift of v1 lands on s1 (checked in gk::ct_audit).
pub fn distinguished_elements(t: &TripleSpec) -> Result<Distinguished> {
    let rs = &t.rs;
    let all: Vec<usize> = (1..=rs.rank).collect();
    let w0 = weyl::longest_element(rs, &all);
    let w0_l = weyl::longest_element(rs, &t.levi_l);
    let w0_m = weyl::longest_element(rs, &t.levi_m);
    let v0 = w0.mul(rs, &w0_l);
    let v0_l = w0_l.mul(rs, &w0_m);
    let s_b = weyl::element_of(rs, &[t.beta0])?;
    let v1 = v0.mul(rs, &s_b).mul(rs, &v0_l.inverse(rs));

    let fail = |clause: &str| Error::LemmaCheckFailed {
        triple: t.name(),
        clause: clause.into(),
    };
    let lp = t.levi_l_prime();
    let in_psi = |w: &WeylElt| -> bool {
        t.levi_l
            .iter()
            .all(|&i| w.apply_root(&rs.simple_root(i)).is_positive())
            && lp
                .iter()
                .all(|&i| w.inverse(rs).apply_root(&rs.simple_root(i)).is_positive())
    };
    if !in_psi(&v0) {
        return Err(fail("v0 not in Psi_{L',L}"));
    }
    // Q_{v0} = L: every Levi simple root lands inside R_{L'}.
    if !levi_cap(rs, &v0, &t.levi_l, &lp).1 {
        return Err(fail("v0^{-1} P' v0 cap L != L"));
    }
    let tilde = tilde_beta(&t.pair())?;
    if v0.apply_root(&rs.simple_root(t.beta0)) != tilde.root.neg() {
        return Err(fail("v0(beta0) != -beta~"));
    }
    if !in_psi(&v1) {
        return Err(fail("v1 not in Psi_{L',L}"));
    }
    // Q_{v1} = Q': the Levi labels landing in R_{L'} are exactly
    // M' = -w0^L(Delta_M).
    let (q_levi, full) = levi_cap(rs, &v1, &t.levi_l, &lp);
    if full {
        return Err(fail("v1^{-1} P' v1 cap L is all of L"));
    }
    let mut m_prime: Vec<usize> = t
        .levi_m
        .iter()
        .map(|&i| {
            let img = w0_l.apply_root(&rs.simple_root(i)).neg();
            assert!(img.is_positive() && img.height() == 1);
            img.coeffs.iter().position(|&c| c == 1).unwrap() + 1
        })
        .collect();
    m_prime.sort_unstable();
    if q_levi != m_prime {
        return Err(fail("v1^{-1} P' v1 cap L != Q'"));
    }
    Ok(Distinguished { v0, v1, v0_l, tilde })
}

/// Compute the Levi labels of `Q_w = w^{-1} P' w cap L`, i.e. the subset
/// of Delta_L sent into R_{L'} by w; the bool reports Q_w = L.
pub fn levi_cap(
    rs: &RootSystem,
    w: &WeylElt,
    levi_l: &[usize],
    levi_lp: &[usize],
) -> (Vec<usize>, bool) {
    let mut kept = Vec::new();
    for &i in levi_l {
        let img = w.apply_root(&rs.simple_root(i));
        let inside = img.is_positive() && img.support().iter().all(|s| levi_lp.contains(s));
        if inside {
            kept.push(i);
        }
    }
    let full = kept.len() == levi_l.len();
    (kept, full)
}

/// Weight data exported for the catalog report.
#[derive(serde::Serialize)]
pub struct CatalogRow {
    pub g: String,
    pub l: String,
    pub m: String,
    pub beta0: usize,
    pub beta1: usize,
    pub s0: String,
    pub d0: String,
    pub s1: String,
    pub d1: String,
    pub rho_p: String,
    pub rho_q: String,
    pub pair_type: PairType,
    pub dim_v: usize,
    pub v1_word: String,
}

pub fn catalog_json(max_n: usize) -> serde_json::Value {
    let rows: Vec<CatalogRow> = triple_catalog(max_n)
        .iter()
        .map(|t| {
            let p = t.pair();
            CatalogRow {
                g: t.g_name.clone(),
                l: t.l_name.clone(),
                m: t.m_name.clone(),
                beta0: t.beta0,
                beta1: t.beta1,
                s0: fmt_rat(t.params0.s),
                d0: fmt_rat(t.params0.d),
                s1: fmt_rat(t.params1.s),
                d1: fmt_rat(t.params1.d),
                rho_p: fmt_rat(t.rho_p),
                rho_q: fmt_rat(t.rho_q),
                pair_type: p.pair_type,
                dim_v: p.dim_v,
                v1_word: t.v1_word.iter().map(|k| k.to_string()).collect(),
            }
        })
        .collect();
    serde_json::to_value(rows).expect("serializable")
}

/// 2 rho_P as a weight restricted to the beta0 coordinate, for arbitrary
/// Levi complements inside a Levi subgroup (used by the reduction ladder).
pub fn rho_pairing_within(rs: &RootSystem, outer: &[usize], inner: &[usize], node: usize) -> Rat {
    let rho = rs.rho_parabolic_within(outer, inner);
    rs.weight_root_pairing(&rho, &rs.simple_root(node))
}

/// Resolve the low-rank coincidences D3 = A3 and D2 = A1xA1 so that
/// catalog display names compare against mechanical shape classification.
pub fn normalize_type_name(name: &str) -> String {
    let mut parts: Vec<String> = name
        .split('x')
        .flat_map(|p| match p {
            "D3" => vec!["A3".to_string()],
            "D2" => vec!["A1".to_string(), "A1".to_string()],
            other => vec![other.to_string()],
        })
        .collect();
    parts.sort();
    parts.join("x")
}

/// Shape classification of a Levi subset rendered as "A2xA2"-style names.
pub fn levi_type_name(rs: &RootSystem, labels: &[usize]) -> String {
    rs.levi_components(labels)
        .iter()
        .map(|(f, k)| format!("{f}{k}"))
        .collect::<Vec<_>>()
        .join("x")
}

#[allow(unused)]
fn weight_name(w: &Weight) -> String {
    w.coords.iter().map(|c| fmt_rat(*c)).collect::<Vec<_>>().join(",")
}
