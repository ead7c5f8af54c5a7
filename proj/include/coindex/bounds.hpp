#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coindex/bilinear.hpp"
#include "coindex/kneser.hpp"
#include "coindex/simplicial.hpp"

namespace coindex {

/// Question: bounds on the coindex of the space of ell-almost-embeddings of
/// a complex into R^d.  An ell-almost-embedding is a map whose images of
/// pairwise disjoint faces may only overlap in fibers over at most ell
/// points; ell = d is the regime the tabulated results live in, ell = 1 asks
/// about honest embeddings.
struct BoundQuery {
    SimplicialComplex complex;
    int d = 0;
    int ell = 0;
    /// Overrides the chromatic number of the Kneser graph of minimal
    /// non-faces (skips the solver).
    std::optional<int> c_override;
    /// Smallest Euclidean dimension the complex is known to embed in;
    /// defaults to the complex's own metadata when unset.
    std::optional<int> embed_dim;
};

struct BoundOptions {
    /// Largest ambient dimension d' scanned by the monotonicity search;
    /// defaults to d + 64.
    std::optional<int> horizon;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

/// One rule application in a derivation.  Rule names:
///   SIMPLEX-EXTENSION  boundary-of-simplex query answered via the simplex
///   MONOTONE-d         embed the target R^d into R^d', fixed ell
///   DIAGONAL-MONOTONE  same, moving ell' = d' along the diagonal (ell == d)
///   THM-1.6            m = d' - n + c + 2 with binary disjointness check
///   LEMMA-5.1          lower bound from a nonsingular bilinear map
///   EMBED-NONEMPTY     lower bound 0: the space contains an embedding
struct DerivationStep {
    std::string rule;
    nlohmann::ordered_json params;
};

struct BoundCertificate {
    std::optional<int> lower;
    std::optional<int> upper;
    bool exact = false;
    /// Set when the chromatic-number search hit its node budget, in which
    /// case no upper bound is derived.
    bool budget_exhausted = false;
    std::vector<DerivationStep> derivation;
    std::vector<std::string> notes;
    /// Echo of the query (complex, d, ell, overrides, horizon) that makes
    /// the certificate self-contained for replay.
    nlohmann::ordered_json query_echo;
};

nlohmann::ordered_json certificate_to_json(const BoundCertificate& cert);

/// Resolved Kneser chromatic number for a query.
struct ColorCount {
    std::optional<int> c;
    bool from_solver = false;
    bool budget_exhausted = false;
    int solver_lower = 0;
    int solver_upper = 0;
};
ColorCount resolve_color_count(const BoundQuery& q, std::uint64_t node_budget);

/// Direct theorem application at ambient dimension d_prime and cap
/// ell_prime: m = d_prime - n + c + 2 must satisfy 0 <= m <= ell_prime and
/// have binary expansion disjoint from ell_prime - m; then m - 1 is an upper
/// bound for the coindex.  Returns m on success.
std::optional<int> upper_theorem(int n, int c, int d_prime, int ell_prime);

/// Best theorem upper bound over d' in [d, horizon], in two regimes: fixed
/// ell, and (when ell == d) the diagonal ell' = d'.  The bound value grows
/// with d', so the first qualifying d' per regime wins; ties prefer the
/// fixed-ell regime.
struct UpperWitness {
    int value = 0;    // the bound m - 1
    int m = 0;
    int d_prime = 0;
    bool diagonal = false;
};
std::optional<UpperWitness> upper_monotone(int n, int c, int d, int ell, int horizon);

/// Best lower bound q obtainable from the construction catalog closed under
/// argument swap, input restriction and codomain inclusion: a nonsingular
/// bilinear map R^a x R^(q+1) -> R^d' with a >= e and d' <= d certifies
/// coindex >= q for complexes embedded in R^e (diagonal regime ell == d).
struct LowerWitness {
    int q = 0;
    Construction base;
    bool swapped = false;
};
std::optional<LowerWitness> lower_constructions(int e, int d);

/// Full pipeline: resolve c, run the monotone upper-bound search, search
/// the construction catalog for a lower bound, and assemble a replayable
/// certificate.
BoundCertificate coindex_bounds(const BoundQuery& q, const BoundOptions& opts = {});

/// Re-checks a serialized certificate step by step (chromatic number,
/// arithmetic of the theorem, re-probe of the cited construction).  On
/// failure, *diagnostics names the broken step.
bool replay_certificate(const nlohmann::json& doc, std::string* diagnostics = nullptr);

// ---------------------------------------------------------------------------
// the topological-Radon table

enum class CellState { Empty, Exact, Interval };

/// One cell: bounds for almost-embeddings (ell = d) of the boundary of the
/// (p+1)-simplex into R^d.  `direct` marks cells where the theorem applied
/// at d' = d itself (the circled entries of the source table).
struct RadonCell {
    int p = 0;
    int d = 0;
    CellState state = CellState::Empty;
    std::optional<int> lower;
    std::optional<int> upper;
    bool direct = false;
    BoundCertificate certificate;
};

class RadonTable {
public:
    RadonTable(int p_max, int d_max, std::vector<RadonCell> cells)
        : p_max_(p_max), d_max_(d_max), cells_(std::move(cells))
    {
    }
    int p_max() const { return p_max_; }
    int d_max() const { return d_max_; }
    const RadonCell& cell(int p, int d) const
    {
        return cells_.at(std::size_t(p - 1) * std::size_t(d_max_) + std::size_t(d - 1));
    }
    const std::vector<RadonCell>& cells() const { return cells_; }

private:
    int p_max_, d_max_;
    std::vector<RadonCell> cells_;
};

RadonTable radon_table(int p_max, int d_max, const BoundOptions& opts = {});

std::string table_to_ascii(const RadonTable& t);
std::string table_to_csv(const RadonTable& t);
nlohmann::ordered_json table_to_json(const RadonTable& t, bool include_certificates = false);

/// Closed forms for the coindex of almost-embedding spaces (ell = d) of the
/// 6-vertex projective plane (d >= 4) and the 9-vertex complex projective
/// plane (d >= 7).
int closed_form_rp2(int d);
int closed_form_cp2(int d);

}  // namespace coindex
