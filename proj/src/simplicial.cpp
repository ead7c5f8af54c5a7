#include "coindex/simplicial.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace coindex {

namespace {

void check_ground_set(int n)
{
    if (n < 0 || n > 64)
        throw std::invalid_argument("ground set size " + std::to_string(n) +
                                    " outside [0, 64]");
}

/// Keeps only inclusion-maximal masks and sorts canonically.
std::vector<Face> canonicalize(std::vector<std::uint64_t> masks)
{
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Face> out;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < masks.size() && maximal; ++j)
            if (i != j && (masks[i] & ~masks[j]) == 0) maximal = false;
        if (maximal) out.push_back(Face{masks[i]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facet_masks(int n, std::vector<std::uint64_t> masks)
{
    check_ground_set(n);
    if (masks.empty())
        throw std::invalid_argument(
            "empty facet list; use void_complex for the complex with no faces");
    std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (auto m : masks)
        if ((m & ~full) != 0)
            throw std::invalid_argument("facet contains a vertex outside [0, n)");
    SimplicialComplex c;
    c.n_ = n;
    c.facets_ = canonicalize(std::move(masks));
    return c;
}

SimplicialComplex SimplicialComplex::from_facets(int n,
                                                 const std::vector<std::vector<int>>& facets)
{
    check_ground_set(n);
    if (facets.empty())
        throw std::invalid_argument(
            "empty facet list; use void_complex for the complex with no faces");
    std::vector<std::uint64_t> masks;
    masks.reserve(facets.size());
    for (const auto& f : facets) {
        Face face = Face::from_vertices(f);
        if (!face.empty() && face.top_vertex() >= n)
            throw std::invalid_argument("vertex " + std::to_string(face.top_vertex()) +
                                        " out of range [0, " + std::to_string(n) + ")");
        masks.push_back(face.mask);
    }
    return from_facet_masks(n, std::move(masks));
}

SimplicialComplex SimplicialComplex::void_complex(int n)
{
    check_ground_set(n);
    SimplicialComplex c;
    c.n_ = n;
    return c;
}

SimplicialComplex SimplicialComplex::empty_complex(int n)
{
    check_ground_set(n);
    SimplicialComplex c;
    c.n_ = n;
    c.facets_ = {Face{}};
    return c;
}

SimplicialComplex SimplicialComplex::simplex(int nv)
{
    check_ground_set(nv);
    if (nv == 0) return empty_complex(0);
    std::uint64_t full = nv == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nv) - 1;
    return from_facet_masks(nv, {full});
}

SimplicialComplex SimplicialComplex::simplex_skeleton(int nv, int k)
{
    check_ground_set(nv);
    if (k < -1 || k > nv - 1)
        throw std::invalid_argument("skeleton dimension " + std::to_string(k) +
                                    " outside [-1, nv-1]");
    if (k == -1) return empty_complex(nv);
    if (k == nv - 1) return simplex(nv);
    // enumerate all (k+1)-subsets of [nv] via Gosper's hack
    std::vector<std::uint64_t> masks;
    std::uint64_t limit = std::uint64_t{1} << nv;
    std::uint64_t m = (std::uint64_t{1} << (k + 1)) - 1;
    while (m < limit) {
        masks.push_back(m);
        std::uint64_t c = m & -m;
        std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    SimplicialComplex out;
    out.n_ = nv;
    for (auto mk : masks) out.facets_.push_back(Face{mk});
    std::sort(out.facets_.begin(), out.facets_.end());
    return out;
}

SimplicialComplex SimplicialComplex::discrete_points(int nv)
{
    return simplex_skeleton(nv, 0);
}

int SimplicialComplex::dimension() const
{
    if (is_void()) throw std::logic_error("void complex has no dimension");
    int d = -1;
    for (Face f : facets_) d = std::max(d, f.dimension());
    return d;
}

bool SimplicialComplex::is_face(Face f) const
{
    for (Face facet : facets_)
        if (f.subset_of(facet)) return true;
    return false;
}

bool SimplicialComplex::is_pure() const
{
    if (is_void()) return true;
    for (Face f : facets_)
        if (f.dimension() != facets_.back().dimension()) return false;
    return true;
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b)
{
    int n = a.ground_set_size() + b.ground_set_size();
    check_ground_set(n);
    if (a.is_void() || b.is_void()) return SimplicialComplex::void_complex(n);
    std::vector<std::uint64_t> masks;
    masks.reserve(a.facets().size() * b.facets().size());
    for (Face fa : a.facets())
        for (Face fb : b.facets())
            masks.push_back(fa.mask | (fb.mask << a.ground_set_size()));
    return SimplicialComplex::from_facet_masks(n, std::move(masks));
}

SimplicialComplex join_power(const SimplicialComplex& a, int copies)
{
    if (copies < 1) throw std::invalid_argument("join_power requires copies >= 1");
    SimplicialComplex out = a;
    out.set_name(std::nullopt);
    out.set_embed_dim(std::nullopt);
    for (int i = 1; i < copies; ++i) out = join(out, a);
    return out;
}

SimplicialComplex deleted_join(const SimplicialComplex& a)
{
    int n = a.ground_set_size();
    check_ground_set(2 * n);
    if (a.is_void()) return SimplicialComplex::void_complex(2 * n);
    std::vector<Face> faces = all_faces(a);
    std::vector<std::uint64_t> masks;
    for (Face s : faces)
        for (Face t : faces)
            if (s.disjoint_from(t)) masks.push_back(s.mask | (t.mask << n));
    return SimplicialComplex::from_facet_masks(2 * n, std::move(masks));
}

SimplicialComplex intersection(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.ground_set_size() != b.ground_set_size())
        throw std::invalid_argument("intersection requires equal ground sets");
    int n = a.ground_set_size();
    if (a.is_void() || b.is_void()) return SimplicialComplex::void_complex(n);
    std::vector<std::uint64_t> masks;
    for (Face fa : a.facets())
        for (Face fb : b.facets())
            masks.push_back(fa.mask & fb.mask);
    return SimplicialComplex::from_facet_masks(n, std::move(masks));
}

std::vector<Face> all_faces(const SimplicialComplex& a)
{
    std::vector<Face> out;
    if (a.is_void()) return out;
    out.push_back(Face{});
    std::vector<Face> level = {Face{}};
    while (!level.empty()) {
        std::vector<Face> next;
        for (Face f : level) {
            int start = f.empty() ? 0 : f.top_vertex() + 1;
            for (int v = start; v < a.ground_set_size(); ++v) {
                Face cand{f.mask | (std::uint64_t{1} << v)};
                if (a.is_face(cand)) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

std::vector<Face> minimal_nonfaces(const SimplicialComplex& a)
{
    if (a.is_void()) return {Face{}};
    std::vector<Face> out;
    // Level BFS over faces; every minimal non-face C decomposes uniquely as
    // (face C \ {top}) + top vertex, so generating candidates by appending a
    // vertex above the top of each face reaches all of them exactly once.
    std::vector<Face> level = {Face{}};
    while (!level.empty()) {
        std::vector<Face> next;
        for (Face f : level) {
            int start = f.empty() ? 0 : f.top_vertex() + 1;
            for (int v = start; v < a.ground_set_size(); ++v) {
                Face cand{f.mask | (std::uint64_t{1} << v)};
                if (a.is_face(cand)) {
                    next.push_back(cand);
                    continue;
                }
                bool minimal = true;
                for (std::uint64_t m = cand.mask; m != 0 && minimal; m &= m - 1) {
                    std::uint64_t sub = cand.mask & ~(m & -m);
                    if (sub != f.mask && !a.is_face(Face{sub})) minimal = false;
                }
                if (minimal) out.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FVector f_vector(const SimplicialComplex& a)
{
    FVector fv;
    if (a.is_void()) return fv;
    int dim = a.dimension();
    fv.counts.assign(std::size_t(dim + 1), 0);
    for (Face f : all_faces(a))
        if (!f.empty()) ++fv.counts[std::size_t(f.dimension())];
    return fv;
}

long long euler_characteristic(const SimplicialComplex& a)
{
    long long chi = 0;
    long long sign = 1;
    for (long long c : f_vector(a).counts) {
        chi += sign * c;
        sign = -sign;
    }
    return chi;
}

bool bipartition_property(const SimplicialComplex& a)
{
    int n = a.ground_set_size();
    if (n < 2) return true;  // no splitting into two nonempty parts exists
    std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    // fix vertex 0 in the complement to enumerate each unordered split once
    for (std::uint64_t s = 2; s < full; s += 2) {
        bool sf = a.is_face(Face{s});
        bool cf = a.is_face(Face{full & ~s});
        if (sf == cf) return false;
    }
    return true;
}

namespace {

/// Maps each (dim-1)-face of some facet to the list of facets containing it.
std::map<std::uint64_t, std::vector<std::size_t>> ridge_incidence(const SimplicialComplex& a)
{
    std::map<std::uint64_t, std::vector<std::size_t>> inc;
    const auto& facets = a.facets();
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::uint64_t m = facets[i].mask; m != 0; m &= m - 1)
            inc[facets[i].mask & ~(m & -m)].push_back(i);
    return inc;
}

}  // namespace

bool ridges_in_exactly_two_facets(const SimplicialComplex& a)
{
    if (a.is_void() || !a.is_pure() || a.dimension() < 1) return false;
    for (const auto& [ridge, owners] : ridge_incidence(a))
        if (owners.size() != 2) return false;
    return true;
}

bool vertex_links_are_single_cycles(const SimplicialComplex& a)
{
    if (a.is_void() || !a.is_pure() || a.dimension() != 2) return false;
    for (int v = 0; v < a.ground_set_size(); ++v) {
        std::uint64_t bit = std::uint64_t{1} << v;
        // link edges: triangles containing v, with v removed
        std::vector<std::uint64_t> edges;
        for (Face f : a.facets())
            if (f.mask & bit) edges.push_back(f.mask & ~bit);
        if (edges.empty()) return false;  // isolated vertex in a pure complex
        std::map<int, std::vector<int>> adj;
        for (auto e : edges) {
            auto vs = Face{e}.vertices();
            adj[vs[0]].push_back(vs[1]);
            adj[vs[1]].push_back(vs[0]);
        }
        // single cycle: every link vertex has degree 2, #edges == #vertices,
        // and the link is connected
        if (edges.size() != adj.size()) return false;
        for (const auto& [u, nb] : adj)
            if (nb.size() != 2) return false;
        std::set<int> seen;
        std::queue<int> bfs;
        bfs.push(adj.begin()->first);
        seen.insert(adj.begin()->first);
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int w : adj.at(u))
                if (seen.insert(w).second) bfs.push(w);
        }
        if (seen.size() != adj.size()) return false;
    }
    return true;
}

bool dual_graph_connected(const SimplicialComplex& a)
{
    if (a.is_void() || !a.is_pure() || a.dimension() < 1) return false;
    const auto& facets = a.facets();
    std::vector<std::vector<std::size_t>> adj(facets.size());
    for (const auto& [ridge, owners] : ridge_incidence(a))
        for (std::size_t i = 0; i < owners.size(); ++i)
            for (std::size_t j = i + 1; j < owners.size(); ++j) {
                adj[owners[i]].push_back(owners[j]);
                adj[owners[j]].push_back(owners[i]);
            }
    std::vector<char> seen(facets.size(), 0);
    std::queue<std::size_t> bfs;
    bfs.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!bfs.empty()) {
        std::size_t u = bfs.front();
        bfs.pop();
        for (std::size_t w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                bfs.push(w);
            }
    }
    return count == facets.size();
}

bool check_closed_surface(const SimplicialComplex& a)
{
    return !a.is_void() && a.is_pure() && a.dimension() == 2 &&
           ridges_in_exactly_two_facets(a) && vertex_links_are_single_cycles(a);
}

bool check_closed_pseudomanifold(const SimplicialComplex& a)
{
    return !a.is_void() && a.is_pure() && a.dimension() >= 1 &&
           ridges_in_exactly_two_facets(a) && dual_graph_connected(a);
}

}  // namespace coindex
