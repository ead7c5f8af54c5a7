#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coindex/face.hpp"

namespace coindex {

/// Finite abstract simplicial complex on ground set {0, ..., n-1}, n <= 64,
/// represented by its inclusion-maximal faces (facets) in canonical order
/// (cardinality first, then mask value).
///
/// Two degenerate complexes are distinguished: the void complex (no faces at
/// all, empty facet list) and the empty complex (single facet {}, whose only
/// face is the empty face).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Builds a complex from vertex lists.  Vertices are 0-based; every
    /// vertex must lie in [0, n).  Redundant (non-maximal) input faces are
    /// dropped.  An empty facet list is rejected: use void_complex for the
    /// complex with no faces.
    static SimplicialComplex from_facets(int n, const std::vector<std::vector<int>>& facets);
    static SimplicialComplex from_facet_masks(int n, std::vector<std::uint64_t> masks);
    static SimplicialComplex void_complex(int n);
    /// The complex whose only face is the empty face.
    static SimplicialComplex empty_complex(int n);
    /// Full simplex on nv vertices (one facet).
    static SimplicialComplex simplex(int nv);
    /// k-skeleton of the full simplex on nv vertices: all faces with at
    /// most k+1 vertices.  k = -1 yields the empty complex.
    static SimplicialComplex simplex_skeleton(int nv, int k);
    /// nv isolated points ([nv] with no higher faces).
    static SimplicialComplex discrete_points(int nv);

    int ground_set_size() const { return n_; }
    const std::vector<Face>& facets() const { return facets_; }
    bool is_void() const { return facets_.empty(); }
    /// Max facet dimension; -1 for the empty complex.  Void complex has no
    /// dimension.
    int dimension() const;
    bool is_face(Face f) const;
    bool is_pure() const;

    const std::optional<std::string>& name() const { return name_; }
    void set_name(std::optional<std::string> name) { name_ = std::move(name); }
    /// Metadata: dimension of a Euclidean space this complex is known to
    /// embed in (used as the default for lower-bound queries).
    const std::optional<int>& embed_dim() const { return embed_dim_; }
    void set_embed_dim(std::optional<int> e) { embed_dim_ = e; }

    /// Structural equality: same ground set size and same facet set.
    /// Metadata (name, embed_dim) is ignored.
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.n_ == b.n_ && a.facets_ == b.facets_;
    }

private:
    int n_ = 0;
    std::vector<Face> facets_;
    std::optional<std::string> name_;
    std::optional<int> embed_dim_;
};

/// Simplicial join: ground sets are concatenated (B's vertices shifted by
/// A's ground set size); faces are all unions of a face of A and a face of B.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
/// Iterated join of `copies` disjoint copies of a (copies >= 1).
SimplicialComplex join_power(const SimplicialComplex& a, int copies);
/// Two-fold deleted join: faces are unions sigma_1 * tau_2 with sigma, tau
/// disjoint faces of a (second copy shifted by n).
SimplicialComplex deleted_join(const SimplicialComplex& a);
/// Intersection of two complexes on the same ground set.
SimplicialComplex intersection(const SimplicialComplex& a, const SimplicialComplex& b);

/// All faces including the empty face (void complex: no faces at all),
/// in canonical order.
std::vector<Face> all_faces(const SimplicialComplex& a);
/// Inclusion-minimal non-faces in canonical order.  Full simplex: empty
/// list.  Void complex: the empty face is the unique minimal non-face.
std::vector<Face> minimal_nonfaces(const SimplicialComplex& a);

/// counts[i] = number of i-dimensional faces, i = 0 .. dim.
struct FVector {
    std::vector<long long> counts;
};
FVector f_vector(const SimplicialComplex& a);
/// Reduced, un-normalized Euler characteristic: alternating sum of face
/// counts (empty face excluded).
long long euler_characteristic(const SimplicialComplex& a);

/// True iff for every splitting of the ground set into complementary
/// nonempty parts (S, S^c), exactly one of the parts is a face.
/// Exhaustive over 2^(n-1) splits.
bool bipartition_property(const SimplicialComplex& a);

/// Closed-surface checks used to validate bundled triangulations.
bool ridges_in_exactly_two_facets(const SimplicialComplex& a);
bool vertex_links_are_single_cycles(const SimplicialComplex& a);
bool dual_graph_connected(const SimplicialComplex& a);
/// Pure 2-dimensional, every edge in exactly two triangles, every vertex
/// link a single cycle.
bool check_closed_surface(const SimplicialComplex& a);
/// Pure, every ridge in exactly two facets, dual graph connected.
bool check_closed_pseudomanifold(const SimplicialComplex& a);

}  // namespace coindex
