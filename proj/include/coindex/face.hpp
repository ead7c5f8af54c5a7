#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace coindex {

/// A face of a simplicial complex on ground set {0, ..., n-1}, n <= 64,
/// stored as a single machine-word bit mask.  Subset, disjointness and
/// cardinality tests are constant time.
struct Face {
    std::uint64_t mask = 0;

    static Face from_vertices(const std::vector<int>& vertices);
    static Face of(std::initializer_list<int> vertices)
    {
        return from_vertices(std::vector<int>(vertices));
    }

    int size() const { return std::popcount(mask); }
    int dimension() const { return size() - 1; }
    bool empty() const { return mask == 0; }
    bool contains(int v) const { return (mask >> v) & 1u; }
    bool subset_of(Face other) const { return (mask & ~other.mask) == 0; }
    bool disjoint_from(Face other) const { return (mask & other.mask) == 0; }
    int top_vertex() const;  // largest vertex; requires nonempty
    std::vector<int> vertices() const;
    std::string to_string() const;

    friend bool operator==(Face a, Face b) { return a.mask == b.mask; }
    // canonical order: by cardinality, then by mask value
    friend bool operator<(Face a, Face b)
    {
        int sa = a.size(), sb = b.size();
        return sa != sb ? sa < sb : a.mask < b.mask;
    }
};

inline Face Face::from_vertices(const std::vector<int>& vertices)
{
    Face f;
    for (int v : vertices) {
        if (v < 0 || v >= 64)
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " out of representable range [0, 64)");
        if (f.contains(v))
            throw std::invalid_argument("duplicate vertex " + std::to_string(v));
        f.mask |= std::uint64_t{1} << v;
    }
    return f;
}

inline int Face::top_vertex() const
{
    if (empty()) throw std::logic_error("top_vertex of empty face");
    return 63 - std::countl_zero(mask);
}

inline std::vector<int> Face::vertices() const
{
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
        out.push_back(std::countr_zero(m));
    return out;
}

inline std::string Face::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (int v : vertices()) {
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    }
    return s + "}";
}

}  // namespace coindex
