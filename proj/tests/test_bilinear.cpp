#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coindex/bilinear.hpp"
#include "oracles.hpp"

using namespace coindex;

namespace {

RationalVector rvec(std::initializer_list<long long> vals)
{
    RationalVector v;
    for (long long x : vals) v.emplace_back(x);
    return v;
}

Rational dot(const RationalVector& x, const RationalVector& y)
{
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

RationalVector random_rational_vector(std::size_t n, std::mt19937_64& rng)
{
    RationalVector v(n);
    for (auto& x : v)
        x = Rational(long(rng() % 21) - 10, long(rng() % 7) + 1);
    return v;
}

}  // namespace

TEST_CASE("tensor construction validates and normalizes entries")
{
    std::vector<TensorEntry> entries = {
        {0, 1, 0, Rational(2)}, {0, 0, 0, Rational(1)}, {1, 0, 0, Rational(0)}};
    BilinearTensor t(2, 2, 1, entries, "test");
    // zero entries dropped, remainder sorted by (i, j, k)
    REQUIRE(t.entries().size() == 2);
    CHECK(t.entries()[0].i == 0);
    CHECK(t.entries()[0].j == 0);
    CHECK(t.entries()[1].j == 1);
    CHECK(t.coefficient(0, 1, 0) == Rational(2));
    CHECK(t.coefficient(1, 1, 0) == Rational(0));

    CHECK_THROWS_AS(BilinearTensor(0, 1, 1, {}, ""), std::invalid_argument);
    CHECK_THROWS_AS(BilinearTensor(2, 2, 1, {{2, 0, 0, Rational(1)}}, ""),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        BilinearTensor(2, 2, 1, {{0, 0, 0, Rational(1)}, {0, 0, 0, Rational(2)}}, ""),
        std::invalid_argument);
}

TEST_CASE("apply evaluates the bilinear form")
{
    // complex multiplication as a real tensor
    auto t = construct({ConstructionKind::ComplexBlock, 1, 0});
    CHECK(t.dim_a() == 2);
    CHECK(t.dim_b() == 2);
    CHECK(t.dim_d() == 2);
    // (1 + 2i)(3 + 4i) = -5 + 10i
    auto z = t.apply(rvec({1, 2}), rvec({3, 4}));
    CHECK(z == rvec({-5, 10}));
    // i * i = -1
    CHECK(t.apply(rvec({0, 1}), rvec({0, 1})) == rvec({-1, 0}));
    CHECK_THROWS_AS(t.apply(rvec({1}), rvec({3, 4})), std::invalid_argument);
}

TEST_CASE("quaternion block reproduces the quaternion relations")
{
    auto t = construct({ConstructionKind::QuaternionBlock, 1, 0});
    auto unit = [&](int k) {
        RationalVector v(4, Rational(0));
        v[std::size_t(k)] = 1;
        return v;
    };
    auto mul = [&](int a, int b) { return t.apply(unit(a), unit(b)); };
    // i*j = k, j*i = -k, i*i = -1, j*k = i
    CHECK(mul(1, 2) == rvec({0, 0, 0, 1}));
    CHECK(mul(2, 1) == rvec({0, 0, 0, -1}));
    CHECK(mul(1, 1) == rvec({-1, 0, 0, 0}));
    CHECK(mul(2, 3) == rvec({0, 1, 0, 0}));
    CHECK(mul(0, 3) == rvec({0, 0, 0, 1}));  // 1 * k = k
}

TEST_CASE("composition algebras satisfy the norm identity on random inputs")
{
    std::mt19937_64 rng(5);
    for (int dim : {1, 2, 4, 8}) {
        auto fam = composition_algebra_family(dim);
        REQUIRE(fam.dim == dim);
        REQUIRE(int(fam.matrices.size()) == dim);
        CHECK(verify_hr(fam));
        auto t = tensor_from_family(fam, "test");
        for (int rep = 0; rep < 25; ++rep) {
            auto x = random_rational_vector(std::size_t(dim), rng);
            auto y = random_rational_vector(std::size_t(dim), rng);
            auto z = t.apply(x, y);
            CHECK(dot(z, z) == dot(x, x) * dot(y, y));
        }
    }
}

TEST_CASE("the 16-dimensional family has nine members and exact relations")
{
    auto fam = hr16_family();
    CHECK(fam.dim == 16);
    REQUIRE(fam.matrices.size() == 9);
    CHECK(verify_hr(fam));
    // entries are signs
    for (const auto& m : fam.matrices)
        for (const auto& row : m)
            for (long long v : row) CHECK((v == 0 || v == 1 || v == -1));
    // norm identity |x|^2 |y|^2 = |B(x,y)|^2 holds for HR families
    auto t = tensor_from_family(fam, "test");
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 25; ++rep) {
        auto x = random_rational_vector(9, rng);
        auto y = random_rational_vector(16, rng);
        auto z = t.apply(x, y);
        CHECK(dot(z, z) == dot(x, x) * dot(y, y));
    }
}

TEST_CASE("verify_hr rejects broken families")
{
    auto fam = composition_algebra_family(4);
    fam.matrices[2][1][3] += 1;
    CHECK(!verify_hr(fam));

    auto dup = composition_algebra_family(2);
    dup.matrices.push_back(dup.matrices[0]);  // repeated matrix cannot anticommute
    CHECK(!verify_hr(dup));

    HRFamily ragged;
    ragged.dim = 2;
    ragged.matrices = {{{1, 0}, {0, 1}}, {{1, 0}}};
    CHECK(!verify_hr(ragged));
}

TEST_CASE("construction dimensions and string names round-trip")
{
    auto cases = std::vector<std::pair<Construction, std::string>>{
        {{ConstructionKind::Scalar, 3, 0}, "scalar(3)"},
        {{ConstructionKind::ComplexBlock, 2, 0}, "complex_block(2)"},
        {{ConstructionKind::QuaternionBlock, 5, 0}, "quaternion_block(5)"},
        {{ConstructionKind::OctonionBlock, 1, 0}, "octonion_block(1)"},
        {{ConstructionKind::PolyMult, 2, 4}, "poly_mult(2,4)"},
        {{ConstructionKind::ComplexPolyMult, 3, 5}, "complex_poly_mult(3,5)"},
        {{ConstructionKind::Hr16, 0, 0}, "hr16"},
    };
    for (const auto& [c, name] : cases) {
        CHECK(to_string(c) == name);
        auto parsed = parse_construction(name);
        REQUIRE(parsed.has_value());
        CHECK(*parsed == c);
        auto dims = construction_dims(c);
        auto t = construct(c);
        CHECK(t.dim_a() == dims.a);
        CHECK(t.dim_b() == dims.b);
        CHECK(t.dim_d() == dims.d);
    }
    CHECK(!parse_construction("scalar").has_value());
    CHECK(!parse_construction("poly_mult(2)").has_value());
    CHECK(!parse_construction("hr16(1)").has_value());
    CHECK(!parse_construction("warp(2,3)").has_value());
    // parsing is syntactic; semantic validation happens at construction
    CHECK(parse_construction("scalar(0)").has_value());
    CHECK_THROWS_AS(construct(*parse_construction("scalar(0)")), std::invalid_argument);
    CHECK_THROWS_AS(construct(*parse_construction("complex_poly_mult(2,3)")),
                    std::invalid_argument);
}

TEST_CASE("expected dimension formulas")
{
    CHECK(construction_dims({ConstructionKind::Scalar, 7, 0}).d == 7);
    auto cb = construction_dims({ConstructionKind::ComplexBlock, 3, 0});
    CHECK(cb.a == 2);
    CHECK(cb.b == 6);
    CHECK(cb.d == 6);
    auto pm = construction_dims({ConstructionKind::PolyMult, 4, 6});
    CHECK(pm.a == 5);
    CHECK(pm.b == 7);
    CHECK(pm.d == 11);
    auto cpm = construction_dims({ConstructionKind::ComplexPolyMult, 3, 5});
    CHECK(cpm.a == 4);
    CHECK(cpm.b == 6);
    CHECK(cpm.d == 8);
    auto hr = construction_dims({ConstructionKind::Hr16, 0, 0});
    CHECK(hr.a == 9);
    CHECK(hr.b == 16);
    CHECK(hr.d == 16);
}

TEST_CASE("polynomial multiplication tensors multiply polynomials")
{
    auto t = construct({ConstructionKind::PolyMult, 2, 1});
    // (1 + 2s + 3s^2)(4 + 5s) = 4 + 13s + 22s^2 + 15s^3
    CHECK(t.apply(rvec({1, 2, 3}), rvec({4, 5})) == rvec({4, 13, 22, 15}));
}

TEST_CASE("complex polynomial multiplication interleaves real and imaginary parts")
{
    // p = q = 1: C[s] degree (1,1) over the reals is just complex times complex
    auto t = construct({ConstructionKind::ComplexPolyMult, 1, 1});
    CHECK(t.dim_a() == 2);
    CHECK(t.dim_b() == 2);
    CHECK(t.dim_d() == 2);
    auto z = t.apply(rvec({1, 2}), rvec({3, 4}));
    CHECK(z == rvec({-5, 10}));

    // p = 1, q = 3: inputs z0 + z1 s and w0 + w1 s + ... as interleaved reals
    auto t13 = construct({ConstructionKind::ComplexPolyMult, 1, 3});
    CHECK(t13.dim_a() == 2);
    CHECK(t13.dim_b() == 4);
    CHECK(t13.dim_d() == 4);
    // (re, im) pairs: x = z0 with z0 = 1, w = w0 + w1 s with w0 = i, w1 = 2
    // product = z0 w0 + z0 w1 s = i + 2 s, truncation keeps all of it
    auto prod = t13.apply(rvec({1, 0}), rvec({0, 1, 2, 0}));
    CHECK(prod == rvec({0, 1, 2, 0}));
}

TEST_CASE("catalog enumerates every construction up to the output bound")
{
    auto cat = catalog(32);
    CHECK(cat.size() == 725);
    for (const auto& c : cat) {
        auto dims = construction_dims(c);
        CHECK(dims.d <= 32);
        CHECK(dims.d >= 1);
    }
    // deterministic and duplicate-free
    auto again = catalog(32);
    CHECK(cat == again);
    for (std::size_t i = 0; i < cat.size(); ++i)
        for (std::size_t j = i + 1; j < cat.size(); ++j) CHECK(!(cat[i] == cat[j]));

    CHECK(catalog(0).empty());
    // dimension 1 admits scalar(1) and the degree-zero polynomial product
    auto tiny = catalog(1);
    REQUIRE(tiny.size() == 2);
    CHECK(tiny[0] == Construction{ConstructionKind::Scalar, 1, 0});
    CHECK(tiny[1] == Construction{ConstructionKind::PolyMult, 0, 0});
}

TEST_CASE("probe accepts the known nonsingular maps")
{
    for (const auto& c : {Construction{ConstructionKind::Scalar, 4, 0},
                          Construction{ConstructionKind::QuaternionBlock, 2, 0},
                          Construction{ConstructionKind::PolyMult, 3, 3},
                          Construction{ConstructionKind::ComplexPolyMult, 1, 3},
                          Construction{ConstructionKind::Hr16, 0, 0}}) {
        CAPTURE(to_string(c));
        CHECK(nonsingularity_probe(construct(c), 50, 0));
    }
}

TEST_CASE("probe rejects singular maps")
{
    // zero map
    BilinearTensor zero(2, 2, 2, {}, "zero");
    CHECK(!nonsingularity_probe(zero, 10, 0));

    // rank-one output: B(x, y) = (x . y) e_0 on R^2 x R^2 -> R^2 kills
    // full-rank: y -> (x.y, 0) has rank 1 < 2
    BilinearTensor rank1(2, 2, 2,
                         {{0, 0, 0, Rational(1)}, {1, 1, 0, Rational(1)}}, "rank1");
    CHECK(!nonsingularity_probe(rank1, 10, 0));

    // real polynomial mult has a zero product only at zero inputs, but
    // restricting the codomain breaks it: drop the top coefficient
    auto pm = construct({ConstructionKind::PolyMult, 1, 1});
    std::vector<TensorEntry> trunc;
    for (const auto& e : pm.entries())
        if (e.k < 2) trunc.push_back(e);
    BilinearTensor cut(2, 2, 2, trunc, "truncated");
    // (0 + s)(0 + s) = s^2 lands entirely in the dropped coordinate
    CHECK(!nonsingularity_probe(cut, 200, 0));

    // b > d can never be nonsingular
    BilinearTensor wide(1, 3, 2, {{0, 0, 0, Rational(1)}}, "wide");
    CHECK(!nonsingularity_probe(wide, 10, 0));
}

TEST_CASE("restriction, inclusion and swap behave")
{
    auto t = construct({ConstructionKind::PolyMult, 2, 2});
    auto r = restrict_inputs(t, 2, 3);
    CHECK(r.dim_a() == 2);
    CHECK(r.dim_b() == 3);
    CHECK(r.dim_d() == 5);
    // restricting polynomial degrees: (1 + s)(1 + s + s^2) = 1 + 2s + 2s^2 + s^3
    CHECK(r.apply(rvec({1, 1}), rvec({1, 1, 1})) == rvec({1, 2, 2, 1, 0}));

    auto inc = include_codomain(r, 7);
    CHECK(inc.dim_d() == 7);
    auto z = inc.apply(rvec({1, 1}), rvec({1, 1, 1}));
    CHECK(z == rvec({1, 2, 2, 1, 0, 0, 0}));
    CHECK_THROWS_AS(include_codomain(r, 4), std::invalid_argument);

    auto s = swap_arguments(r);
    CHECK(s.dim_a() == 3);
    CHECK(s.dim_b() == 2);
    CHECK(s.apply(rvec({1, 1, 1}), rvec({1, 1})) == rvec({1, 2, 2, 1, 0}));

    CHECK_THROWS_AS(restrict_inputs(t, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(restrict_inputs(t, 4, 1), std::invalid_argument);
}

TEST_CASE("JSON round trip preserves tensors exactly")
{
    auto t = construct({ConstructionKind::ComplexPolyMult, 1, 3});
    auto doc = tensor_to_json(t);
    CHECK(doc["schema"] == "coindex/1");
    CHECK(doc["type"] == "bilinear_tensor");
    auto back = tensor_from_json(doc);
    CHECK(back.dim_a() == t.dim_a());
    CHECK(back.dim_b() == t.dim_b());
    CHECK(back.dim_d() == t.dim_d());
    CHECK(back.entries() == t.entries());

    // non-integer coefficients survive
    BilinearTensor q(1, 1, 1, {{0, 0, 0, Rational(-3, 7)}}, "q");
    auto qb = tensor_from_json(tensor_to_json(q));
    CHECK(qb.coefficient(0, 0, 0) == Rational(-3, 7));

    auto bad = tensor_to_json(t);
    bad["entries"][0][0] = 99;
    CHECK_THROWS(tensor_from_json(bad));
}
