//! Exact-arithmetic toolkit for split simply-laced root systems, Weyl group
//! combinatorics, and the symbolic zeta-value algebra that controls constant
//! terms of degenerate Eisenstein series over function fields.
//!
//! Everything is computed over the rationals; no floating point enters any
//! symbolic identity. Floating point appears only in the numeric oracle
//! ([`zexpr::ZetaModel`]) used to cross-check symbolic results against a
//! concrete curve.
//!
//! Module map:
//! - [`rootsys`]: root systems of type A/D/E with exact integer root data and
//!   rational weight arithmetic.
//! - [`weyl`]: Weyl group elements as integer matrices, reduced words, longest
//!   elements, inversion sets, and minimal (double-)coset representatives.
//! - [`zexpr`]: symbolic products of completed zeta values with pole/residue
//!   computation, truncated Laurent expansion, and numeric evaluation.
//! - [`parabolic`]: the catalog of maximal-parabolic pairs and triples with
//!   their (s, d)-parameters and distinguished Weyl elements.
//! - [`gk`]: Gindikin-Karpelevich factors, constant-term audits, and the
//!   unique-relevant-element verification ladder.
//! - [`decomp`]: the normalization constant c_{G,L}, the two GK identities,
//!   symbolic expansions of automorphic functionals, transition constants,
//!   and the rank-3 double-pole cancellation analysis.
//! - [`suite`]: the full check suite consumed by the CLI and the acceptance
//!   tests.

pub mod decomp;
pub mod gk;
pub mod parabolic;
pub mod report;
pub mod rootsys;
pub mod suite;
pub mod weyl;
pub mod zexpr;

use num_rational::Rational64;

/// Exact rational scalar used throughout.
pub type Rat = Rational64;

/// Render a rational as `p` or `p/q` (never as a decimal).
pub fn fmt_rat(r: Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Shorthand for `n/d`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported root system type {family}{rank}")]
    UnsupportedType { family: char, rank: usize },
    #[error("label {label} is out of range for rank {rank}")]
    BadLabel { label: usize, rank: usize },
    #[error("enumeration budget exceeded: job needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("expression does not have a simple pole at {at}: order {order}")]
    NotSimplePole { at: String, order: i64 },
    #[error("evaluation point {at} hits a pole of the expression")]
    PoleAtEvaluationPoint { at: String },
    #[error("pair {pair} is not in the catalog of weakly admissible pairs")]
    NotInCatalog { pair: String },
    #[error("pair {pair} is not of S or H type")]
    NotAdmissibleType { pair: String },
    #[error("distinguished-element check failed for {triple}: {clause}")]
    LemmaCheckFailed { triple: String, clause: String },
    #[error("constant-term audit failed for {triple}: {detail}")]
    AuditFailed { triple: String, detail: String },
    #[error("reduction step failed for {pair}: {clause}")]
    ReductionStepFailed { pair: String, clause: String },
    #[error("identity failed for {id}: left {left} != right {right}")]
    IdentityFailed {
        id: String,
        left: String,
        right: String,
    },
    #[error("unknown transition ({g}, {l1}, {l2})")]
    UnknownTransition { g: String, l1: String, l2: String },
    #[error("expansion depth exceeded: {0}")]
    DepthExceeded(usize),
    #[error("grouped pole analysis is limited to rank <= {max}, got {got}")]
    RankBudgetExceeded { max: usize, got: usize },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("invalid zeta model: {0}")]
    InvalidZetaModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
