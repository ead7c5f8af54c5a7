#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coindex/simplicial.hpp"

namespace coindex {

/// Simple undirected graph with a dense bitset adjacency matrix.  For a
/// complex, vertices are its minimal non-faces and edges join disjoint ones.
class KneserGraph {
public:
    KneserGraph() = default;
    static KneserGraph from_edges(int num_vertices,
                                  const std::vector<std::pair<int, int>>& edges);

    std::size_t size() const { return labels_.size(); }
    std::size_t edge_count() const;
    bool adjacent(std::size_t u, std::size_t v) const
    {
        return (rows_[u * stride_ + v / 64] >> (v % 64)) & 1u;
    }
    int degree(std::size_t v) const;
    /// The face behind vertex v (empty for graphs built from raw edges).
    Face label(std::size_t v) const { return labels_[v]; }

private:
    friend KneserGraph kneser_graph(const SimplicialComplex&);
    void init(std::vector<Face> labels);
    void add_edge(std::size_t u, std::size_t v);

    std::vector<Face> labels_;
    std::vector<std::uint64_t> rows_;
    std::size_t stride_ = 0;
};

KneserGraph kneser_graph(const SimplicialComplex& a);

/// Proper coloring witness: assignment[v] in [0, num_colors) for every
/// vertex, colors relabeled in order of first appearance.
struct ColoringCertificate {
    int num_colors = 0;
    std::vector<int> assignment;
};

bool is_proper(const KneserGraph& g, const ColoringCertificate& cert);

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Result of the exact chromatic-number search.  When the node budget was
/// exhausted, exact = false and [lower, upper] bracket the true value; the
/// certificate still witnesses the upper bound.
struct ChromaticResult {
    bool exact = false;
    int lower = 0;
    int upper = 0;
    std::optional<ColoringCertificate> certificate;
    std::uint64_t nodes = 0;
};

/// Exact chromatic number via greedy clique lower bound, DSATUR greedy upper
/// bound and DSATUR-ordered branch and bound.  Deterministic: ties are broken
/// toward the lowest vertex index and lowest color.  The empty graph has
/// chromatic number 0.
ChromaticResult chromatic_number(const KneserGraph& g,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

/// Subcomplexes Sigma_j of a proper coloring of the Kneser graph of minimal
/// non-faces: Sigma_j is the largest complex whose minimal non-faces are
/// exactly color class j.  Their intersection is the original complex.
struct SarkariaDecomposition {
    std::vector<SimplicialComplex> subcomplexes;
};

SarkariaDecomposition sarkaria_decomposition(const SimplicialComplex& a,
                                             const ColoringCertificate& cert);
/// True iff the subcomplexes intersect to `a` and each subcomplex's minimal
/// non-faces pairwise intersect.
bool verify_decomposition(const SimplicialComplex& a, const SarkariaDecomposition& dec);

}  // namespace coindex
