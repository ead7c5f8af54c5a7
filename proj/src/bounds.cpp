#include "coindex/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "coindex/arith.hpp"
#include "coindex/complex_io.hpp"
#include "coindex/schema.hpp"

namespace coindex {

namespace {

constexpr int kReplayProbeTrials = 64;

std::string binary_string(int v)
{
    if (v == 0) return "0";
    std::string s;
    for (int b = v; b; b >>= 1) s += char('0' + (b & 1));
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

ColorCount resolve_color_count(const BoundQuery& q, std::uint64_t node_budget)
{
    ColorCount cc;
    if (q.c_override) {
        if (*q.c_override < 0)
            throw std::invalid_argument("chromatic-number override must be >= 0");
        cc.c = *q.c_override;
        return cc;
    }
    ChromaticResult res = chromatic_number(kneser_graph(q.complex), node_budget);
    cc.from_solver = true;
    cc.solver_lower = res.lower;
    cc.solver_upper = res.upper;
    if (res.exact)
        cc.c = res.upper;
    else
        cc.budget_exhausted = true;
    return cc;
}

std::optional<int> upper_theorem(int n, int c, int d_prime, int ell_prime)
{
    int m = d_prime - n + c + 2;
    if (m < 0 || m > ell_prime) return std::nullopt;
    if (!ones_disjoint(std::uint64_t(m), std::uint64_t(ell_prime - m))) return std::nullopt;
    return m;
}

std::optional<UpperWitness> upper_monotone(int n, int c, int d, int ell, int horizon)
{
    if (horizon < d) throw std::invalid_argument("horizon must be >= d");
    // the bound m - 1 grows with d', so the first qualifying d' is optimal
    // within each regime
    std::optional<UpperWitness> fixed;
    for (int dp = d; dp <= horizon && !fixed; ++dp)
        if (auto m = upper_theorem(n, c, dp, ell))
            fixed = UpperWitness{*m - 1, *m, dp, false};
    std::optional<UpperWitness> diag;
    if (ell == d)
        for (int dp = d; dp <= horizon && !diag; ++dp)
            if (auto m = upper_theorem(n, c, dp, dp))
                diag = UpperWitness{*m - 1, *m, dp, true};
    if (!fixed) return diag;
    if (!diag) return fixed;
    if (diag->value < fixed->value) return diag;
    if (fixed->value < diag->value) return fixed;
    return diag->d_prime < fixed->d_prime ? diag : fixed;
}

std::optional<LowerWitness> lower_constructions(int e, int d)
{
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (e < 1) return std::nullopt;
    std::optional<LowerWitness> best;
    for (const Construction& c : catalog(d)) {
        ConstructionDims dims = construction_dims(c);
        for (bool swapped : {false, true}) {
            int a = swapped ? dims.b : dims.a;
            int b = swapped ? dims.a : dims.b;
            if (a < e) continue;
            int q = b - 1;
            if (!best || q > best->q) best = LowerWitness{q, c, swapped};
        }
    }
    return best;
}

BoundCertificate coindex_bounds(const BoundQuery& q, const BoundOptions& opts)
{
    if (q.d < 1) throw std::invalid_argument("d must be >= 1");
    if (q.ell < 0) throw std::invalid_argument("ell must be >= 0");
    if (q.complex.is_void())
        throw std::invalid_argument("query complex is void");
    int horizon = opts.horizon.value_or(q.d + 64);
    if (horizon < q.d) throw std::invalid_argument("horizon must be >= d");

    BoundCertificate cert;
    int n = q.complex.ground_set_size();

    ColorCount cc = resolve_color_count(q, opts.node_budget);
    if (cc.budget_exhausted) {
        cert.budget_exhausted = true;
        cert.notes.push_back(
            "chromatic-number search exhausted its node budget (bounds [" +
            std::to_string(cc.solver_lower) + ", " + std::to_string(cc.solver_upper) +
            "]); no upper bound derived");
    } else {
        auto up = upper_monotone(n, *cc.c, q.d, q.ell, horizon);
        if (up) {
            if (up->d_prime > q.d) {
                DerivationStep mono;
                mono.rule = up->diagonal ? "DIAGONAL-MONOTONE" : "MONOTONE-d";
                mono.params["from_d"] = q.d;
                mono.params["to_d"] = up->d_prime;
                if (up->diagonal) {
                    mono.params["from_ell"] = q.ell;
                    mono.params["to_ell"] = up->d_prime;
                }
                cert.derivation.push_back(std::move(mono));
            }
            int ellp = up->diagonal ? up->d_prime : q.ell;
            DerivationStep thm;
            thm.rule = "THM-1.6";
            thm.params["n"] = n;
            thm.params["c"] = *cc.c;
            thm.params["c_source"] = cc.from_solver ? "solver" : "override";
            thm.params["d"] = up->d_prime;
            thm.params["ell"] = ellp;
            thm.params["m"] = up->m;
            thm.params["m_binary"] = binary_string(up->m);
            thm.params["ell_minus_m"] = ellp - up->m;
            thm.params["ell_minus_m_binary"] = binary_string(ellp - up->m);
            thm.params["upper"] = up->value;
            cert.derivation.push_back(std::move(thm));
            cert.upper = up->value;
        } else {
            cert.notes.push_back(
                "no dimension in [d, horizon] admits the theorem; no upper bound derived");
        }
    }

    std::optional<int> e = q.embed_dim ? q.embed_dim : q.complex.embed_dim();
    if (e && *e < 0) throw std::invalid_argument("embed_dim must be >= 0");
    if (e) {
        bool have_lower = false;
        if (q.ell == q.d) {
            if (auto lw = lower_constructions(*e, q.d)) {
                DerivationStep st;
                st.rule = "LEMMA-5.1";
                st.params["e"] = *e;
                st.params["d"] = q.d;
                st.params["construction"] = to_string(lw->base);
                st.params["swapped"] = lw->swapped;
                st.params["q"] = lw->q;
                st.params["lower"] = lw->q;
                cert.derivation.push_back(std::move(st));
                cert.lower = lw->q;
                have_lower = true;
            }
        }
        if (!have_lower && *e <= q.d && q.ell >= 1) {
            DerivationStep st;
            st.rule = "EMBED-NONEMPTY";
            st.params["e"] = *e;
            st.params["d"] = q.d;
            st.params["lower"] = 0;
            cert.derivation.push_back(std::move(st));
            cert.lower = 0;
        }
    }

    if (cert.lower && cert.upper && *cert.lower > *cert.upper)
        throw std::logic_error("contradictory bounds derived; this is a bug");
    cert.exact = cert.lower && cert.upper && *cert.lower == *cert.upper;

    nlohmann::ordered_json echo;
    echo["complex"] = complex_to_json(q.complex);
    echo["d"] = q.d;
    echo["ell"] = q.ell;
    if (q.c_override) echo["c_override"] = *q.c_override;
    if (e) echo["embed_dim"] = *e;
    echo["horizon"] = horizon;
    cert.query_echo = std::move(echo);
    return cert;
}

nlohmann::ordered_json certificate_to_json(const BoundCertificate& cert)
{
    nlohmann::ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["type"] = "bound_certificate";
    doc["query"] = cert.query_echo;
    doc["lower"] = cert.lower ? nlohmann::ordered_json(*cert.lower)
                              : nlohmann::ordered_json(nullptr);
    doc["upper"] = cert.upper ? nlohmann::ordered_json(*cert.upper)
                              : nlohmann::ordered_json(nullptr);
    doc["exact"] = cert.exact;
    auto steps = nlohmann::ordered_json::array();
    for (const auto& st : cert.derivation) {
        nlohmann::ordered_json sj;
        sj["rule"] = st.rule;
        sj["params"] = st.params;
        steps.push_back(sj);
    }
    doc["derivation"] = steps;
    doc["notes"] = cert.notes;
    return doc;
}

namespace {

bool replay_fail(std::string* diagnostics, const std::string& why)
{
    if (diagnostics) *diagnostics = why;
    return false;
}

std::optional<int> json_opt_int(const nlohmann::json& doc, const char* field)
{
    if (!doc.contains(field) || doc.at(field).is_null()) return std::nullopt;
    return doc.at(field).get<int>();
}

}  // namespace

bool replay_certificate(const nlohmann::json& doc, std::string* diagnostics)
{
    try {
        if (!doc.is_object()) return replay_fail(diagnostics, "certificate must be an object");
        if (doc.value("type", "") != std::string("bound_certificate"))
            return replay_fail(diagnostics, "not a bound certificate");
        const auto& query = doc.at("query");
        SimplicialComplex complex = complex_from_json(query.at("complex"));
        int d = query.at("d").get<int>();
        int ell = query.at("ell").get<int>();
        std::optional<int> c_override = json_opt_int(query, "c_override");
        std::optional<int> embed = json_opt_int(query, "embed_dim");
        std::optional<int> lower = json_opt_int(doc, "lower");
        std::optional<int> upper = json_opt_int(doc, "upper");

        int d_cur = d, ell_cur = ell;
        std::optional<int> derived_upper, derived_lower;

        for (const auto& stepj : doc.at("derivation")) {
            std::string rule = stepj.at("rule").get<std::string>();
            const auto& p = stepj.at("params");
            if (rule == "SIMPLEX-EXTENSION") {
                int pp = p.at("p").get<int>();
                if (pp < 1) return replay_fail(diagnostics, "SIMPLEX-EXTENSION: p must be >= 1");
                if (!(complex == SimplicialComplex::simplex(pp + 2)))
                    return replay_fail(diagnostics,
                                       "SIMPLEX-EXTENSION: query complex is not the full "
                                       "simplex on p + 2 vertices");
            } else if (rule == "MONOTONE-d") {
                int from = p.at("from_d").get<int>();
                int to = p.at("to_d").get<int>();
                if (from != d_cur || to < from)
                    return replay_fail(diagnostics, "MONOTONE-d: invalid dimension step");
                d_cur = to;
            } else if (rule == "DIAGONAL-MONOTONE") {
                if (ell != d)
                    return replay_fail(diagnostics,
                                       "DIAGONAL-MONOTONE: only applies to ell == d queries");
                int from = p.at("from_d").get<int>();
                int to = p.at("to_d").get<int>();
                if (from != d_cur || to < from)
                    return replay_fail(diagnostics, "DIAGONAL-MONOTONE: invalid dimension step");
                d_cur = to;
                ell_cur = to;
            } else if (rule == "THM-1.6") {
                int n = p.at("n").get<int>();
                if (n != complex.ground_set_size())
                    return replay_fail(diagnostics, "THM-1.6: wrong ground set size");
                int c = p.at("c").get<int>();
                std::string source = p.at("c_source").get<std::string>();
                if (source == "override") {
                    if (!c_override || *c_override != c)
                        return replay_fail(diagnostics,
                                           "THM-1.6: chromatic override does not match");
                } else if (source == "solver") {
                    ChromaticResult res = chromatic_number(kneser_graph(complex));
                    if (!res.exact || res.upper != c)
                        return replay_fail(diagnostics,
                                           "THM-1.6: chromatic number does not re-derive");
                } else {
                    return replay_fail(diagnostics, "THM-1.6: unknown c_source");
                }
                if (p.at("d").get<int>() != d_cur || p.at("ell").get<int>() != ell_cur)
                    return replay_fail(diagnostics,
                                       "THM-1.6: applied at a different (d, ell) than derived");
                auto m = upper_theorem(n, c, d_cur, ell_cur);
                if (!m)
                    return replay_fail(diagnostics, "THM-1.6: hypotheses fail at (d, ell)");
                if (*m != p.at("m").get<int>() || p.at("upper").get<int>() != *m - 1)
                    return replay_fail(diagnostics, "THM-1.6: recorded m or bound mismatch");
                derived_upper = *m - 1;
            } else if (rule == "LEMMA-5.1") {
                if (ell != d)
                    return replay_fail(diagnostics, "LEMMA-5.1: only applies to ell == d queries");
                int e = p.at("e").get<int>();
                int qv = p.at("q").get<int>();
                if (!embed || *embed != e)
                    return replay_fail(diagnostics, "LEMMA-5.1: embedding dimension mismatch");
                if (p.at("d").get<int>() != d)
                    return replay_fail(diagnostics, "LEMMA-5.1: wrong ambient dimension");
                if (qv < 0) return replay_fail(diagnostics, "LEMMA-5.1: negative bound");
                auto base = parse_construction(p.at("construction").get<std::string>());
                if (!base)
                    return replay_fail(diagnostics, "LEMMA-5.1: unknown construction name");
                BilinearTensor t = construct(*base);
                if (p.at("swapped").get<bool>()) t = swap_arguments(t);
                if (t.dim_a() < e || t.dim_b() < qv + 1 || t.dim_d() > d)
                    return replay_fail(diagnostics,
                                       "LEMMA-5.1: construction dimensions do not fit");
                t = restrict_inputs(t, e, qv + 1);
                t = include_codomain(t, d);
                if (!nonsingularity_probe(t, kReplayProbeTrials, 0))
                    return replay_fail(diagnostics,
                                       "LEMMA-5.1: construction fails the nonsingularity probe");
                derived_lower = qv;
            } else if (rule == "EMBED-NONEMPTY") {
                int e = p.at("e").get<int>();
                if (!embed || *embed != e)
                    return replay_fail(diagnostics, "EMBED-NONEMPTY: embedding dimension mismatch");
                if (e > d || ell < 1)
                    return replay_fail(diagnostics, "EMBED-NONEMPTY: hypotheses fail");
                derived_lower = 0;
            } else {
                return replay_fail(diagnostics, "unknown derivation rule '" + rule + "'");
            }
        }

        if (derived_upper != upper)
            return replay_fail(diagnostics, "recorded upper bound does not match derivation");
        if (derived_lower != lower)
            return replay_fail(diagnostics, "recorded lower bound does not match derivation");
        bool exact = doc.at("exact").get<bool>();
        if (exact != (lower && upper && *lower == *upper))
            return replay_fail(diagnostics, "exact flag inconsistent with bounds");
        if (lower && upper && *lower > *upper)
            return replay_fail(diagnostics, "lower bound exceeds upper bound");
        return true;
    } catch (const std::exception& ex) {
        return replay_fail(diagnostics, std::string("malformed certificate: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// the table

RadonTable radon_table(int p_max, int d_max, const BoundOptions& opts)
{
    if (p_max < 1 || d_max < 1)
        throw std::invalid_argument("table extents must be >= 1");
    std::vector<RadonCell> cells;
    cells.reserve(std::size_t(p_max) * std::size_t(d_max));
    for (int p = 1; p <= p_max; ++p) {
        SimplicialComplex delta = SimplicialComplex::simplex(p + 2);
        delta.set_name("Delta_" + std::to_string(p + 1));
        delta.set_embed_dim(p + 1);
        for (int d = 1; d <= d_max; ++d) {
            BoundQuery q;
            q.complex = delta;
            q.d = d;
            q.ell = d;
            BoundCertificate cert = coindex_bounds(q, opts);

            DerivationStep ext;
            ext.rule = "SIMPLEX-EXTENSION";
            ext.params["p"] = p;
            ext.params["object"] = "boundary of Delta_" + std::to_string(p + 1);
            ext.params["via"] = "Delta_" + std::to_string(p + 1);
            cert.derivation.insert(cert.derivation.begin(), std::move(ext));

            RadonCell cell;
            cell.p = p;
            cell.d = d;
            cell.lower = cert.lower;
            cell.upper = cert.upper;
            if (cert.upper && *cert.upper == -1 && !cert.lower)
                cell.state = CellState::Empty;
            else if (cert.lower && cert.upper && *cert.lower == *cert.upper)
                cell.state = CellState::Exact;
            else
                cell.state = CellState::Interval;
            cell.direct = false;
            for (const auto& st : cert.derivation)
                if (st.rule == "THM-1.6" && st.params.at("d").get<int>() == d)
                    cell.direct = true;
            cell.certificate = std::move(cert);
            cells.push_back(std::move(cell));
        }
    }
    return RadonTable(p_max, d_max, std::move(cells));
}

namespace {

std::string cell_text(const RadonCell& c)
{
    switch (c.state) {
        case CellState::Empty: return ".";
        case CellState::Exact: return std::to_string(*c.upper) + (c.direct ? "*" : "");
        case CellState::Interval: {
            std::string lo = c.lower ? std::to_string(*c.lower) : "?";
            std::string hi = c.upper ? std::to_string(*c.upper) : "?";
            return lo + ".." + hi;
        }
    }
    return "?";
}

}  // namespace

std::string table_to_ascii(const RadonTable& t)
{
    std::size_t width = 3;
    for (const auto& c : t.cells()) width = std::max(width, cell_text(c).size());
    auto pad = [&](const std::string& s) {
        return std::string(width + 1 - s.size(), ' ') + s;
    };
    std::string out = "p\\d |";
    for (int d = 1; d <= t.d_max(); ++d) out += pad(std::to_string(d));
    out += "\n----+" + std::string((width + 1) * std::size_t(t.d_max()), '-') + "\n";
    for (int p = 1; p <= t.p_max(); ++p) {
        std::string label = std::to_string(p);
        if (label.size() < 3) label.insert(0, 3 - label.size(), ' ');
        out += label + " |";
        for (int d = 1; d <= t.d_max(); ++d) out += pad(cell_text(t.cell(p, d)));
        out += "\n";
    }
    return out;
}

std::string table_to_csv(const RadonTable& t)
{
    std::string out = "p\\d";
    for (int d = 1; d <= t.d_max(); ++d) out += "," + std::to_string(d);
    out += "\n";
    for (int p = 1; p <= t.p_max(); ++p) {
        out += std::to_string(p);
        for (int d = 1; d <= t.d_max(); ++d) {
            const RadonCell& c = t.cell(p, d);
            out += ",";
            if (c.state != CellState::Empty) out += cell_text(c);
        }
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json table_to_json(const RadonTable& t, bool include_certificates)
{
    nlohmann::ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["type"] = "radon_table";
    doc["p_max"] = t.p_max();
    doc["d_max"] = t.d_max();
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : t.cells()) {
        nlohmann::ordered_json cj;
        cj["p"] = c.p;
        cj["d"] = c.d;
        cj["state"] = c.state == CellState::Empty
                          ? "empty"
                          : (c.state == CellState::Exact ? "exact" : "interval");
        cj["lower"] = c.lower ? nlohmann::ordered_json(*c.lower)
                              : nlohmann::ordered_json(nullptr);
        cj["upper"] = c.upper ? nlohmann::ordered_json(*c.upper)
                              : nlohmann::ordered_json(nullptr);
        cj["direct"] = c.direct;
        if (include_certificates) cj["certificate"] = certificate_to_json(c.certificate);
        cells.push_back(cj);
    }
    doc["cells"] = cells;
    return doc;
}

int closed_form_rp2(int d)
{
    if (d < 4) throw std::invalid_argument("closed form requires d >= 4");
    return 4 * (d / 4) - 1;
}

int closed_form_cp2(int d)
{
    if (d < 7) throw std::invalid_argument("closed form requires d >= 7");
    return d % 8 == 7 ? d - 7 : 8 * (d / 8) - 1;
}

}  // namespace coindex
