//! Ultraproduct families `(q_k)`: witness generators, the almost-all verdict
//! engine, and per-index checks of the three-way irreducibility equivalence.

mod equivalence;
mod family;
mod verdict;

pub use equivalence::{
    equivalence_report, exists_irreducible_binomial, exists_irreducible_binomial_search,
    EquivalenceReport, EquivalenceRow, EXHAUSTIVE_SEARCH_LIMIT,
};
pub use family::{
    check_spade, gen_dirichlet_family, gen_paper_family, Family, FamilyEntry, FamilyKind,
    TailGuarantee, DIRICHLET_SEARCH_CUTOFF, PAPER_FAMILY_MAX,
};
pub use verdict::{
    aggregate, divisibility_at, divisibility_verdict, predict_tail, IndexTruth, Outcome, TailTruth,
    Verdict,
};
