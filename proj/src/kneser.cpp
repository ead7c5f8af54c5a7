#include "coindex/kneser.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coindex {

void KneserGraph::init(std::vector<Face> labels)
{
    labels_ = std::move(labels);
    stride_ = (labels_.size() + 63) / 64;
    rows_.assign(labels_.size() * stride_, 0);
}

void KneserGraph::add_edge(std::size_t u, std::size_t v)
{
    rows_[u * stride_ + v / 64] |= std::uint64_t{1} << (v % 64);
    rows_[v * stride_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

KneserGraph KneserGraph::from_edges(int num_vertices,
                                    const std::vector<std::pair<int, int>>& edges)
{
    if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
    KneserGraph g;
    g.init(std::vector<Face>(std::size_t(num_vertices)));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        g.add_edge(std::size_t(u), std::size_t(v));
    }
    return g;
}

std::size_t KneserGraph::edge_count() const
{
    std::size_t twice = 0;
    for (auto w : rows_) twice += std::size_t(std::popcount(w));
    return twice / 2;
}

int KneserGraph::degree(std::size_t v) const
{
    int d = 0;
    for (std::size_t w = 0; w < stride_; ++w)
        d += std::popcount(rows_[v * stride_ + w]);
    return d;
}

KneserGraph kneser_graph(const SimplicialComplex& a)
{
    KneserGraph g;
    g.init(minimal_nonfaces(a));
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.labels_[u].disjoint_from(g.labels_[v])) g.add_edge(u, v);
    return g;
}

bool is_proper(const KneserGraph& g, const ColoringCertificate& cert)
{
    if (cert.assignment.size() != g.size()) return false;
    if (cert.num_colors < 0) return false;
    std::vector<char> used(std::size_t(std::max(cert.num_colors, 0)), 0);
    for (int c : cert.assignment) {
        if (c < 0 || c >= cert.num_colors) return false;
        used[std::size_t(c)] = 1;
    }
    for (char u : used)
        if (!u) return false;  // palette must be fully used
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.adjacent(u, v) && cert.assignment[u] == cert.assignment[v])
                return false;
    return true;
}

namespace {

/// Relabels colors in order of first appearance over vertices 0, 1, ...
ColoringCertificate canonicalize_coloring(const std::vector<int>& assignment)
{
    ColoringCertificate cert;
    cert.assignment.assign(assignment.size(), -1);
    std::vector<int> relabel;
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        int c = assignment[v];
        auto it = std::find(relabel.begin(), relabel.end(), c);
        if (it == relabel.end()) {
            relabel.push_back(c);
            it = relabel.end() - 1;
        }
        cert.assignment[v] = int(it - relabel.begin());
    }
    cert.num_colors = int(relabel.size());
    return cert;
}

/// Greedy clique: scan vertices by descending degree (ties by index) and
/// keep those adjacent to everything collected so far.
std::vector<std::size_t> greedy_clique(const KneserGraph& g)
{
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return g.degree(a) > g.degree(b);
    });
    std::vector<std::size_t> clique;
    for (std::size_t v : order) {
        bool ok = true;
        for (std::size_t u : clique)
            if (!g.adjacent(u, v)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(v);
    }
    return clique;
}

/// DSATUR greedy coloring; returns the raw assignment.
std::vector<int> dsatur_greedy(const KneserGraph& g)
{
    std::size_t n = g.size();
    std::vector<int> color(n, -1);
    std::vector<std::set<int>> saturation(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] != -1) continue;
            if (best == n) {
                best = v;
                continue;
            }
            auto key = [&](std::size_t u) {
                return std::pair<int, int>(int(saturation[u].size()), g.degree(u));
            };
            // larger saturation, then larger degree, then smaller index
            if (key(v) > key(best)) best = v;
        }
        int c = 0;
        while (saturation[best].count(c)) ++c;
        color[best] = c;
        for (std::size_t u = 0; u < n; ++u)
            if (u != best && color[u] == -1 && g.adjacent(best, u))
                saturation[u].insert(c);
    }
    return color;
}

struct BnbState {
    const KneserGraph& g;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool aborted = false;
    int best_ub;
    std::vector<int> best_assignment;
    std::vector<int> color;
    std::vector<std::set<int>> saturation;

    BnbState(const KneserGraph& graph, std::uint64_t node_budget, int ub,
             std::vector<int> witness)
        : g(graph),
          budget(node_budget),
          best_ub(ub),
          best_assignment(std::move(witness)),
          color(graph.size(), -1),
          saturation(graph.size())
    {
    }

    void dfs(std::size_t colored, int used)
    {
        if (aborted) return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (used >= best_ub) return;  // cannot beat the incumbent
        if (colored == g.size()) {
            best_ub = used;
            best_assignment = color;
            return;
        }
        // DSATUR branching vertex: max saturation, then max degree, then
        // lowest index
        std::size_t pick = g.size();
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (color[v] != -1) continue;
            if (pick == g.size()) {
                pick = v;
                continue;
            }
            auto key = [&](std::size_t u) {
                return std::pair<int, int>(int(saturation[u].size()), g.degree(u));
            };
            if (key(v) > key(pick)) pick = v;
        }
        int limit = std::min(used + 1, best_ub - 1);  // colors 0..used-1, plus one fresh
        for (int c = 0; c < limit; ++c) {
            if (saturation[pick].count(c)) continue;
            color[pick] = c;
            std::vector<std::size_t> touched;
            for (std::size_t u = 0; u < g.size(); ++u)
                if (color[u] == -1 && g.adjacent(pick, u) &&
                    saturation[u].insert(c).second)
                    touched.push_back(u);
            dfs(colored + 1, std::max(used, c + 1));
            for (std::size_t u : touched) saturation[u].erase(c);
            color[pick] = -1;
            if (aborted) return;
        }
    }
};

}  // namespace

ChromaticResult chromatic_number(const KneserGraph& g, std::uint64_t node_budget)
{
    ChromaticResult res;
    if (g.size() == 0) {
        res.exact = true;
        res.lower = res.upper = 0;
        res.certificate = ColoringCertificate{};
        return res;
    }

    auto clique = greedy_clique(g);
    int lb = int(clique.size());
    std::vector<int> greedy = dsatur_greedy(g);
    int ub = 1 + *std::max_element(greedy.begin(), greedy.end());

    if (lb == ub) {
        res.exact = true;
        res.lower = res.upper = ub;
        res.certificate = canonicalize_coloring(greedy);
        return res;
    }

    BnbState state(g, node_budget, ub, greedy);
    state.dfs(0, 0);
    res.nodes = state.nodes;
    res.upper = state.best_ub;
    res.certificate = canonicalize_coloring(state.best_assignment);
    if (state.aborted) {
        res.exact = false;
        res.lower = std::min(lb, res.upper);
    } else {
        res.exact = true;
        res.lower = res.upper;
    }
    return res;
}

namespace {

/// All inclusion-minimal transversals (hitting sets) of the given face
/// family, as masks.  Standard branching: extend by each vertex of the first
/// set not yet hit, then prune non-minimal candidates.
std::vector<std::uint64_t> minimal_transversals(const std::vector<Face>& sets)
{
    std::set<std::uint64_t> candidates;
    std::vector<std::uint64_t> stack = {0};
    while (!stack.empty()) {
        std::uint64_t chosen = stack.back();
        stack.pop_back();
        const Face* unhit = nullptr;
        for (const Face& f : sets)
            if ((f.mask & chosen) == 0) {
                unhit = &f;
                break;
            }
        if (!unhit) {
            candidates.insert(chosen);
            continue;
        }
        for (int v : unhit->vertices()) stack.push_back(chosen | (std::uint64_t{1} << v));
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t c : candidates) {
        bool minimal = true;
        for (std::uint64_t other : candidates)
            if (other != c && (other & ~c) == 0) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(c);
    }
    return out;
}

}  // namespace

SarkariaDecomposition sarkaria_decomposition(const SimplicialComplex& a,
                                             const ColoringCertificate& cert)
{
    KneserGraph g = kneser_graph(a);
    if (!is_proper(g, cert))
        throw std::invalid_argument(
            "coloring is not a proper coloring of the Kneser graph");
    int n = a.ground_set_size();
    std::uint64_t full = n == 64 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << n) - 1;
    SarkariaDecomposition dec;
    for (int j = 0; j < cert.num_colors; ++j) {
        std::vector<Face> forbidden;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (cert.assignment[v] == j) forbidden.push_back(g.label(v));
        // facets of Sigma_j = complements of minimal transversals of the
        // class-j non-face family
        std::vector<std::uint64_t> facets;
        for (std::uint64_t t : minimal_transversals(forbidden))
            facets.push_back(full & ~t);
        dec.subcomplexes.push_back(SimplicialComplex::from_facet_masks(n, std::move(facets)));
    }
    return dec;
}

bool verify_decomposition(const SimplicialComplex& a, const SarkariaDecomposition& dec)
{
    // empty decomposition (0 colors): intersection over the empty family is
    // the full simplex
    SimplicialComplex meet = dec.subcomplexes.empty()
                                 ? SimplicialComplex::simplex(a.ground_set_size())
                                 : dec.subcomplexes.front();
    for (std::size_t j = 1; j < dec.subcomplexes.size(); ++j)
        meet = intersection(meet, dec.subcomplexes[j]);
    if (!(meet == a)) return false;
    for (const auto& sub : dec.subcomplexes) {
        auto mnf = minimal_nonfaces(sub);
        for (std::size_t u = 0; u < mnf.size(); ++u)
            for (std::size_t v = u + 1; v < mnf.size(); ++v)
                if (mnf[u].disjoint_from(mnf[v])) return false;
    }
    return true;
}

}  // namespace coindex
