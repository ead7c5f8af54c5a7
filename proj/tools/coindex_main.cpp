#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "coindex/arith.hpp"
#include "coindex/bilinear.hpp"
#include "coindex/bounds.hpp"
#include "coindex/complex_io.hpp"
#include "coindex/kneser.hpp"
#include "coindex/schema.hpp"
#include "coindex/simplicial.hpp"

namespace {

using nlohmann::ordered_json;

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

std::uint64_t env_node_budget()
{
    const char* env = std::getenv("COINDEX_NODE_BUDGET");
    if (!env) return coindex::kDefaultNodeBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw std::invalid_argument("COINDEX_NODE_BUDGET is not a number");
    return v;
}

coindex::RationalVector parse_rational_list(const std::string& text)
{
    coindex::RationalVector out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string tok = comma == std::string::npos ? text.substr(pos)
                                                     : text.substr(pos, comma - pos);
        if (tok.empty()) throw std::invalid_argument("empty entry in rational list");
        auto slash = tok.find('/');
        if (slash == std::string::npos) {
            out.emplace_back(coindex::BigInt(tok));
        } else {
            coindex::BigInt den(tok.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator in rational list");
            out.emplace_back(coindex::BigInt(tok.substr(0, slash)), den);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string rational_text(const coindex::Rational& v)
{
    std::string s = boost::multiprecision::numerator(v).str();
    if (boost::multiprecision::denominator(v) != 1)
        s += "/" + boost::multiprecision::denominator(v).str();
    return s;
}

coindex::BilinearTensor tensor_by_name(const std::string& name)
{
    auto c = coindex::parse_construction(name);
    if (!c) throw std::invalid_argument("unknown construction '" + name + "'");
    return coindex::construct(*c);
}

int run_info(const std::string& file)
{
    coindex::SimplicialComplex c = coindex::load_complex(file);
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "complex_info";
    doc["name"] = c.name() ? ordered_json(*c.name()) : ordered_json(nullptr);
    doc["n"] = c.ground_set_size();
    doc["void"] = c.is_void();
    doc["dimension"] = c.is_void() ? ordered_json(nullptr) : ordered_json(c.dimension());
    doc["pure"] = c.is_pure();
    doc["num_facets"] = c.facets().size();
    auto fv = coindex::f_vector(c);
    doc["f_vector"] = fv.counts;
    doc["euler_characteristic"] = coindex::euler_characteristic(c);
    doc["embed_dim"] = c.embed_dim() ? ordered_json(*c.embed_dim()) : ordered_json(nullptr);
    doc["minimal_nonfaces"] = coindex::minimal_nonfaces(c).size();
    // the bipartition scan is exponential in n; skip it for large ground sets
    doc["bipartition_property"] = c.ground_set_size() <= 24
                                      ? ordered_json(coindex::bipartition_property(c))
                                      : ordered_json(nullptr);
    if (!c.is_void() && c.dimension() == 2)
        doc["closed_surface"] = coindex::check_closed_surface(c);
    if (!c.is_void() && c.dimension() >= 1)
        doc["closed_pseudomanifold"] = coindex::check_closed_pseudomanifold(c);
    emit(doc);
    return 0;
}

int run_chi(const std::string& file, bool decompose, std::uint64_t budget)
{
    coindex::SimplicialComplex c = coindex::load_complex(file);
    coindex::KneserGraph g = coindex::kneser_graph(c);
    coindex::ChromaticResult res = coindex::chromatic_number(g, budget);

    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "chromatic_certificate";
    doc["name"] = c.name() ? ordered_json(*c.name()) : ordered_json(nullptr);
    doc["vertices"] = g.size();
    doc["edges"] = g.edge_count();
    doc["status"] = res.exact ? "exact" : "budget-exceeded";
    doc["lower"] = res.lower;
    doc["upper"] = res.upper;
    doc["chromatic_number"] =
        res.exact ? ordered_json(res.upper) : ordered_json(nullptr);
    doc["search_nodes"] = res.nodes;
    auto nonfaces = ordered_json::array();
    for (std::size_t v = 0; v < g.size(); ++v) nonfaces.push_back(g.label(v).vertices());
    doc["minimal_nonfaces"] = nonfaces;
    if (res.certificate) doc["coloring"] = res.certificate->assignment;

    if (decompose && res.certificate) {
        coindex::SarkariaDecomposition dec =
            coindex::sarkaria_decomposition(c, *res.certificate);
        auto subs = ordered_json::array();
        for (const auto& sub : dec.subcomplexes) {
            auto facets = ordered_json::array();
            for (coindex::Face f : sub.facets()) facets.push_back(f.vertices());
            subs.push_back(facets);
        }
        ordered_json dj;
        dj["colors"] = res.certificate->num_colors;
        dj["subcomplexes"] = subs;
        dj["verified"] = coindex::verify_decomposition(c, dec);
        doc["decomposition"] = dj;
    }
    emit(doc);
    return res.exact ? 0 : 2;
}

int run_bound(const std::string& file, int d, int ell, std::optional<int> embed_dim,
              std::optional<int> c_override, std::optional<int> horizon, bool check,
              std::uint64_t budget)
{
    coindex::BoundQuery q;
    q.complex = coindex::load_complex(file);
    q.d = d;
    q.ell = ell;
    q.embed_dim = embed_dim;
    q.c_override = c_override;
    coindex::BoundOptions opts;
    opts.horizon = horizon;
    opts.node_budget = budget;
    coindex::BoundCertificate cert = coindex::coindex_bounds(q, opts);
    ordered_json doc = coindex::certificate_to_json(cert);
    int code = cert.budget_exhausted ? 2 : 0;
    if (check) {
        std::string why;
        bool ok = coindex::replay_certificate(doc, &why);
        ordered_json rj;
        rj["verified"] = ok;
        if (!ok) rj["error"] = why;
        doc["replay"] = rj;
        if (!ok) code = 2;
    }
    emit(doc);
    return code;
}

int run_radon_table(int pmax, int dmax, const std::string& format, bool certificates,
                    bool check, std::uint64_t budget)
{
    coindex::BoundOptions opts;
    opts.node_budget = budget;
    coindex::RadonTable table = coindex::radon_table(pmax, dmax, opts);
    if (check) {
        for (const auto& cell : table.cells()) {
            std::string why;
            if (!coindex::replay_certificate(
                    coindex::certificate_to_json(cell.certificate), &why)) {
                std::cerr << "certificate replay failed at p=" << cell.p
                          << " d=" << cell.d << ": " << why << "\n";
                return 2;
            }
        }
    }
    if (format == "ascii")
        std::cout << coindex::table_to_ascii(table);
    else if (format == "csv")
        std::cout << coindex::table_to_csv(table);
    else if (format == "json")
        emit(coindex::table_to_json(table, certificates));
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    return 0;
}

int run_rho(std::uint64_t n)
{
    coindex::HRDecomposition d = coindex::hurwitz_radon(n);
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "hurwitz_radon";
    doc["n"] = n;
    doc["odd_part"] = 2 * d.a + 1;
    doc["b"] = d.b;
    doc["c"] = d.c;
    doc["rho"] = d.rho;
    emit(doc);
    return 0;
}

int run_bilinear_list(int max_dim)
{
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "construction_catalog";
    doc["max_output_dim"] = max_dim;
    auto arr = ordered_json::array();
    for (const auto& c : coindex::catalog(max_dim)) {
        coindex::ConstructionDims dims = coindex::construction_dims(c);
        ordered_json cj;
        cj["name"] = coindex::to_string(c);
        cj["a"] = dims.a;
        cj["b"] = dims.b;
        cj["d"] = dims.d;
        arr.push_back(cj);
    }
    doc["constructions"] = arr;
    emit(doc);
    return 0;
}

int run_bilinear_show(const std::string& name)
{
    emit(coindex::tensor_to_json(tensor_by_name(name)));
    return 0;
}

int run_bilinear_verify(const std::string& name, int trials, std::uint64_t seed)
{
    coindex::BilinearTensor t = tensor_by_name(name);
    bool ok = coindex::nonsingularity_probe(t, trials, seed);
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "probe_report";
    doc["name"] = name;
    doc["a"] = t.dim_a();
    doc["b"] = t.dim_b();
    doc["d"] = t.dim_d();
    doc["trials"] = trials;
    doc["seed"] = seed;
    doc["nonsingular"] = ok;
    emit(doc);
    return ok ? 0 : 2;
}

int run_bilinear_verify_hr(int pairs, std::uint64_t seed)
{
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "hr_verification";
    auto arr = ordered_json::array();
    bool all_ok = true;
    auto check_family = [&](const coindex::HRFamily& fam, const std::string& label) {
        bool relations = coindex::verify_hr(fam);
        coindex::BilinearTensor t =
            coindex::tensor_from_family(fam, "family " + label);
        // norm identity |B(x, y)|^2 = |x|^2 |y|^2 on seeded rational pairs
        std::mt19937_64 rng(seed);
        bool norms = true;
        for (int trial = 0; trial < pairs && norms; ++trial) {
            coindex::RationalVector x, y;
            for (int i = 0; i < t.dim_a(); ++i) {
                coindex::BigInt num = (long long)(rng() % 19) - 9;
                coindex::BigInt den = (long long)(rng() % 9) + 1;
                x.emplace_back(num, den);
            }
            for (int i = 0; i < t.dim_b(); ++i) {
                coindex::BigInt num = (long long)(rng() % 19) - 9;
                coindex::BigInt den = (long long)(rng() % 9) + 1;
                y.emplace_back(num, den);
            }
            auto sq = [](const coindex::RationalVector& v) {
                coindex::Rational s = 0;
                for (const auto& e : v) s += e * e;
                return s;
            };
            norms = sq(t.apply(x, y)) == sq(x) * sq(y);
        }
        ordered_json fj;
        fj["family"] = label;
        fj["dim"] = fam.dim;
        fj["matrices"] = fam.matrices.size();
        fj["relations"] = relations;
        fj["norm_identity"] = norms;
        arr.push_back(fj);
        all_ok = all_ok && relations && norms;
    };
    for (int dim : {1, 2, 4, 8})
        check_family(coindex::composition_algebra_family(dim),
                     "composition_algebra(" + std::to_string(dim) + ")");
    check_family(coindex::hr16_family(), "hr16");
    doc["pairs"] = pairs;
    doc["seed"] = seed;
    doc["families"] = arr;
    doc["all_ok"] = all_ok;
    emit(doc);
    return all_ok ? 0 : 2;
}

int run_bilinear_apply(const std::string& name, const std::string& xs, const std::string& ys)
{
    coindex::BilinearTensor t = tensor_by_name(name);
    coindex::RationalVector x = parse_rational_list(xs);
    coindex::RationalVector y = parse_rational_list(ys);
    coindex::RationalVector out = t.apply(x, y);
    ordered_json doc;
    doc["schema"] = coindex::kSchemaVersion;
    doc["type"] = "apply_result";
    doc["name"] = name;
    auto vec_json = [](const coindex::RationalVector& v) {
        auto arr = ordered_json::array();
        for (const auto& e : v) arr.push_back(rational_text(e));
        return arr;
    };
    doc["x"] = vec_json(x);
    doc["y"] = vec_json(y);
    doc["result"] = vec_json(out);
    emit(doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bounds on the coindex of spaces of almost-embeddings"};
    app.require_subcommand(1);
    int exit_code = 0;

    // info
    std::string info_file;
    auto* info = app.add_subcommand("info", "summarize a complex file");
    info->add_option("file", info_file, "complex JSON file")->required();
    info->callback([&] { exit_code = run_info(info_file); });

    // chi
    std::string chi_file;
    bool chi_decompose = false;
    std::optional<std::uint64_t> chi_budget;
    auto* chi = app.add_subcommand(
        "chi", "chromatic number of the Kneser graph of minimal non-faces");
    chi->add_option("file", chi_file, "complex JSON file")->required();
    chi->add_flag("--decompose", chi_decompose,
                  "emit the induced subcomplex decomposition");
    chi->add_option("--budget", chi_budget,
                    "search node budget (overrides COINDEX_NODE_BUDGET)");
    chi->callback([&] {
        exit_code = run_chi(chi_file, chi_decompose,
                            chi_budget ? *chi_budget : env_node_budget());
    });

    // bound
    std::string bound_file;
    int bound_d = 0, bound_ell = 0;
    std::optional<int> bound_embed, bound_c, bound_horizon;
    bool bound_check = false;
    std::optional<std::uint64_t> bound_budget;
    auto* bound = app.add_subcommand("bound", "coindex bounds with a certificate");
    bound->add_option("file", bound_file, "complex JSON file")->required();
    bound->add_option("--d", bound_d, "ambient dimension")->required();
    bound->add_option("--ell", bound_ell, "almost-embedding parameter")->required();
    bound->add_option("--embed-dim", bound_embed,
                      "override the complex's embedding dimension metadata");
    bound->add_option("--c", bound_c, "override the Kneser chromatic number");
    bound->add_option("--horizon", bound_horizon,
                      "largest dimension scanned by the monotone search (default d + 64)");
    bound->add_flag("--check", bound_check, "replay the certificate before printing");
    bound->add_option("--budget", bound_budget,
                      "search node budget (overrides COINDEX_NODE_BUDGET)");
    bound->callback([&] {
        exit_code = run_bound(bound_file, bound_d, bound_ell, bound_embed, bound_c,
                              bound_horizon, bound_check,
                              bound_budget ? *bound_budget : env_node_budget());
    });

    // radon-table
    int rt_pmax = 0, rt_dmax = 0;
    std::string rt_format = "ascii";
    bool rt_certs = false, rt_check = false;
    std::optional<std::uint64_t> rt_budget;
    auto* rt = app.add_subcommand("radon-table",
                                  "tabulate bounds for boundaries of simplices");
    rt->add_option("--pmax", rt_pmax, "largest p (rows)")->required();
    rt->add_option("--dmax", rt_dmax, "largest d (columns)")->required();
    rt->add_option("--format", rt_format, "ascii, csv or json")
        ->check(CLI::IsMember({"ascii", "csv", "json"}));
    rt->add_flag("--certificates", rt_certs, "embed certificates in JSON output");
    rt->add_flag("--check", rt_check, "replay every cell certificate first");
    rt->add_option("--budget", rt_budget,
                   "search node budget (overrides COINDEX_NODE_BUDGET)");
    rt->callback([&] {
        exit_code = run_radon_table(rt_pmax, rt_dmax, rt_format, rt_certs, rt_check,
                                    rt_budget ? *rt_budget : env_node_budget());
    });

    // rho
    std::uint64_t rho_n = 0;
    auto* rho = app.add_subcommand("rho", "Hurwitz-Radon function");
    rho->add_option("n", rho_n, "positive integer")->required();
    rho->callback([&] { exit_code = run_rho(rho_n); });

    // bilinear
    auto* bil = app.add_subcommand("bilinear", "construction catalog operations");
    bil->require_subcommand(1);

    int list_max = 32;
    auto* bil_list = bil->add_subcommand("list", "list catalog constructions");
    bil_list->add_option("--max-dim", list_max, "largest output dimension (default 32)");
    bil_list->callback([&] { exit_code = run_bilinear_list(list_max); });

    std::string show_name;
    auto* bil_show = bil->add_subcommand("show", "print a construction's tensor");
    bil_show->add_option("name", show_name, "construction name")->required();
    bil_show->callback([&] { exit_code = run_bilinear_show(show_name); });

    std::string verify_name;
    int verify_trials = 1000;
    std::uint64_t verify_seed = 0;
    auto* bil_verify = bil->add_subcommand("verify", "probe a construction");
    bil_verify->add_option("name", verify_name, "construction name")->required();
    bil_verify->add_option("--trials", verify_trials, "probe trials (default 1000)");
    bil_verify->add_option("--seed", verify_seed, "probe seed (default 0)");
    bil_verify->callback(
        [&] { exit_code = run_bilinear_verify(verify_name, verify_trials, verify_seed); });

    int hr_pairs = 100;
    std::uint64_t hr_seed = 0;
    auto* bil_hr = bil->add_subcommand(
        "verify-hr", "check the Hurwitz-Radon families and norm identities");
    bil_hr->add_option("--pairs", hr_pairs, "random pairs per family (default 100)");
    bil_hr->add_option("--seed", hr_seed, "seed (default 0)");
    bil_hr->callback([&] { exit_code = run_bilinear_verify_hr(hr_pairs, hr_seed); });

    std::string apply_name, apply_x, apply_y;
    auto* bil_apply = bil->add_subcommand("apply", "evaluate a construction");
    bil_apply->add_option("name", apply_name, "construction name")->required();
    bil_apply->add_option("x", apply_x, "first input, comma-separated rationals")
        ->required();
    bil_apply->add_option("y", apply_y, "second input, comma-separated rationals")
        ->required();
    bil_apply->callback(
        [&] { exit_code = run_bilinear_apply(apply_name, apply_x, apply_y); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const coindex::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
