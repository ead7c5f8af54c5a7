#include "coindex/complex_io.hpp"

#include <algorithm>
#include <fstream>

namespace coindex {

SimplicialComplex complex_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object()) throw ParseError("top-level value must be an object");
    if (!doc.contains("n")) throw ParseError("missing required field 'n'");
    if (!doc["n"].is_number_integer())
        throw ParseError("field 'n' must be an integer");
    long long n = doc["n"].get<long long>();
    if (n < 0 || n > 64)
        throw ParseError("field 'n' = " + std::to_string(n) + " outside [0, 64]");

    if (!doc.contains("facets")) throw ParseError("missing required field 'facets'");
    if (!doc["facets"].is_array()) throw ParseError("field 'facets' must be an array");

    std::vector<std::vector<int>> facets;
    std::size_t fi = 0;
    for (const auto& entry : doc["facets"]) {
        std::string where = "facets[" + std::to_string(fi) + "]";
        if (!entry.is_array()) throw ParseError("field '" + where + "' must be an array");
        std::vector<int> verts;
        std::size_t vi = 0;
        for (const auto& v : entry) {
            std::string vwhere = where + "[" + std::to_string(vi) + "]";
            if (!v.is_number_integer())
                throw ParseError("field '" + vwhere + "' must be an integer");
            long long val = v.get<long long>();
            if (val < 0 || val >= n)
                throw ParseError("field '" + vwhere + "': vertex " + std::to_string(val) +
                                 " out of range [0, " + std::to_string(n) + ")");
            verts.push_back(int(val));
            ++vi;
        }
        std::sort(verts.begin(), verts.end());
        if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
            throw ParseError("field '" + where + "' contains a duplicate vertex");
        facets.push_back(std::move(verts));
        ++fi;
    }

    for (const auto& [key, value] : doc.items()) {
        if (key != "n" && key != "facets" && key != "name" && key != "embed_dim")
            throw ParseError("unknown field '" + key + "'");
        (void)value;
    }

    SimplicialComplex c = facets.empty()
                              ? SimplicialComplex::void_complex(int(n))
                              : SimplicialComplex::from_facets(int(n), facets);

    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("field 'name' must be a string");
        c.set_name(doc["name"].get<std::string>());
    }
    if (doc.contains("embed_dim")) {
        if (!doc["embed_dim"].is_number_integer())
            throw ParseError("field 'embed_dim' must be an integer");
        long long e = doc["embed_dim"].get<long long>();
        if (e < 0) throw ParseError("field 'embed_dim' must be nonnegative");
        c.set_embed_dim(int(e));
    }
    return c;
}

nlohmann::ordered_json complex_to_json(const SimplicialComplex& c)
{
    nlohmann::ordered_json doc;
    doc["n"] = c.ground_set_size();
    auto facets = nlohmann::ordered_json::array();
    for (Face f : c.facets()) facets.push_back(f.vertices());
    doc["facets"] = facets;
    if (c.name()) doc["name"] = *c.name();
    if (c.embed_dim()) doc["embed_dim"] = *c.embed_dim();
    return doc;
}

SimplicialComplex load_complex(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
    try {
        return complex_from_json(doc);
    } catch (const ParseError& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
}

void store_complex(const SimplicialComplex& c, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << complex_to_json(c).dump(2) << "\n";
}

}  // namespace coindex
