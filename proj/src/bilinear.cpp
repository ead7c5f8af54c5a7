#include "coindex/bilinear.hpp"

#include "coindex/schema.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <stdexcept>

namespace coindex {

namespace {

std::string rational_to_string(const Rational& v)
{
    std::string s = boost::multiprecision::numerator(v).str();
    if (boost::multiprecision::denominator(v) != 1)
        s += "/" + boost::multiprecision::denominator(v).str();
    return s;
}

Rational rational_from_string(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

}  // namespace

BilinearTensor::BilinearTensor(int a, int b, int d, std::vector<TensorEntry> entries,
                               std::string provenance)
    : a_(a), b_(b), d_(d), entries_(std::move(entries)), provenance_(std::move(provenance))
{
    if (a_ < 1 || b_ < 1 || d_ < 1)
        throw std::invalid_argument("tensor dimensions must be positive");
    std::erase_if(entries_, [](const TensorEntry& e) { return e.value == 0; });
    for (const auto& e : entries_)
        if (e.i < 0 || e.i >= a_ || e.j < 0 || e.j >= b_ || e.k < 0 || e.k >= d_)
            throw std::invalid_argument("tensor entry index out of range");
    auto key = [](const TensorEntry& e) { return std::tuple(e.i, e.j, e.k); };
    std::sort(entries_.begin(), entries_.end(),
              [&](const TensorEntry& x, const TensorEntry& y) { return key(x) < key(y); });
    for (std::size_t s = 1; s < entries_.size(); ++s)
        if (key(entries_[s - 1]) == key(entries_[s]))
            throw std::invalid_argument("duplicate tensor entry");
}

Rational BilinearTensor::coefficient(int i, int j, int k) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::tuple(i, j, k),
                               [](const TensorEntry& e, const std::tuple<int, int, int>& t) {
                                   return std::tuple(e.i, e.j, e.k) < t;
                               });
    if (it != entries_.end() && it->i == i && it->j == j && it->k == k) return it->value;
    return Rational(0);
}

RationalVector BilinearTensor::apply(const RationalVector& x, const RationalVector& y) const
{
    if (int(x.size()) != a_ || int(y.size()) != b_)
        throw std::invalid_argument("apply: input dimensions do not match tensor");
    RationalVector out(std::size_t(d_), Rational(0));
    for (const auto& e : entries_)
        out[std::size_t(e.k)] += e.value * x[std::size_t(e.i)] * y[std::size_t(e.j)];
    return out;
}

BilinearTensor restrict_inputs(const BilinearTensor& t, int a2, int b2)
{
    if (a2 < 1 || a2 > t.dim_a() || b2 < 1 || b2 > t.dim_b())
        throw std::invalid_argument("restrict_inputs: target dimensions out of range");
    std::vector<TensorEntry> kept;
    for (const auto& e : t.entries())
        if (e.i < a2 && e.j < b2) kept.push_back(e);
    return BilinearTensor(a2, b2, t.dim_d(), std::move(kept),
                          "restrict(" + std::to_string(a2) + "," + std::to_string(b2) +
                              ") of " + t.provenance());
}

BilinearTensor include_codomain(const BilinearTensor& t, int d2)
{
    if (d2 < t.dim_d())
        throw std::invalid_argument("include_codomain: target dimension too small");
    if (d2 == t.dim_d()) return t;
    return BilinearTensor(t.dim_a(), t.dim_b(), d2, t.entries(),
                          "pad(" + std::to_string(d2) + ") of " + t.provenance());
}

BilinearTensor swap_arguments(const BilinearTensor& t)
{
    std::vector<TensorEntry> swapped;
    swapped.reserve(t.entries().size());
    for (const auto& e : t.entries()) swapped.push_back({e.j, e.i, e.k, e.value});
    return BilinearTensor(t.dim_b(), t.dim_a(), t.dim_d(), std::move(swapped),
                          "swap of " + t.provenance());
}

// ---------------------------------------------------------------------------
// Cayley-Dickson multiplication tables

namespace {

struct BasisProduct {
    int index = 0;
    int sign = 1;
};
using MultTable = std::vector<std::vector<BasisProduct>>;

/// Doubling step: products in the algebra of pairs (a, b) with
/// (a, b)(c, d) = (ac - conj(d) b, da + b conj(c)), conj(a, b) = (conj a, -b).
MultTable cayley_dickson_double(const MultTable& t)
{
    int m = int(t.size());
    auto conj_sign = [](int idx) { return idx == 0 ? 1 : -1; };
    MultTable out(std::size_t(2 * m), std::vector<BasisProduct>(std::size_t(2 * m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            out[i][j] = t[i][j];
            // (e_i, 0)(0, e_j) = (0, e_j e_i)
            out[i][m + j] = {m + t[j][i].index, t[j][i].sign};
            // (0, e_i)(e_j, 0) = (0, e_i conj(e_j))
            out[m + i][j] = {m + t[i][j].index, t[i][j].sign * conj_sign(j)};
            // (0, e_i)(0, e_j) = (-conj(e_j) e_i, 0)
            out[m + i][m + j] = {t[j][i].index, -t[j][i].sign * conj_sign(j)};
        }
    return out;
}

MultTable algebra_table(int dim)
{
    MultTable t = {{BasisProduct{0, 1}}};  // the reals
    for (int m = 1; m < dim; m *= 2) t = cayley_dickson_double(t);
    return t;
}

}  // namespace

HRFamily composition_algebra_family(int dim)
{
    if (dim != 1 && dim != 2 && dim != 4 && dim != 8)
        throw std::invalid_argument("composition algebra dimension must be 1, 2, 4 or 8");
    MultTable t = algebra_table(dim);
    HRFamily fam;
    fam.dim = dim;
    fam.matrices.assign(std::size_t(dim),
                        std::vector<std::vector<long long>>(
                            std::size_t(dim), std::vector<long long>(std::size_t(dim), 0)));
    // A_s is left multiplication by e_s: column j of A_s is e_s e_j
    for (int s = 0; s < dim; ++s)
        for (int j = 0; j < dim; ++j)
            fam.matrices[s][std::size_t(t[s][j].index)][std::size_t(j)] = t[s][j].sign;
    return fam;
}

HRFamily hr16_family()
{
    HRFamily oct = composition_algebra_family(8);
    HRFamily fam;
    fam.dim = 16;
    auto zero = std::vector<std::vector<long long>>(16, std::vector<long long>(16, 0));
    // B_1 = identity
    fam.matrices.push_back(zero);
    for (int r = 0; r < 16; ++r) fam.matrices.back()[r][r] = 1;
    // B_i = diag(A_i, -A_i) for the seven imaginary octonion units
    for (int s = 1; s < 8; ++s) {
        fam.matrices.push_back(zero);
        auto& B = fam.matrices.back();
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                B[r][c] = oct.matrices[std::size_t(s)][r][c];
                B[r + 8][c + 8] = -oct.matrices[std::size_t(s)][r][c];
            }
    }
    // B_9 swaps the two halves with a sign
    fam.matrices.push_back(zero);
    for (int r = 0; r < 8; ++r) {
        fam.matrices.back()[r][r + 8] = -1;
        fam.matrices.back()[r + 8][r] = 1;
    }
    return fam;
}

bool verify_hr(const HRFamily& family)
{
    int n = family.dim;
    if (n <= 0) return false;
    for (const auto& m : family.matrices)
        if (int(m.size()) != n) return false;
    for (std::size_t i = 0; i < family.matrices.size(); ++i)
        for (std::size_t j = i; j < family.matrices.size(); ++j) {
            const auto& A = family.matrices[i];
            const auto& B = family.matrices[j];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    long long sum = 0;
                    for (int t = 0; t < n; ++t)
                        sum += A[std::size_t(t)][std::size_t(r)] * B[std::size_t(t)][std::size_t(c)] +
                               B[std::size_t(t)][std::size_t(r)] * A[std::size_t(t)][std::size_t(c)];
                    long long want = (i == j && r == c) ? 2 : 0;
                    if (sum != want) return false;
                }
        }
    return true;
}

BilinearTensor tensor_from_family(const HRFamily& family, std::string provenance)
{
    std::vector<TensorEntry> entries;
    for (std::size_t s = 0; s < family.matrices.size(); ++s)
        for (int r = 0; r < family.dim; ++r)
            for (int c = 0; c < family.dim; ++c) {
                long long v = family.matrices[s][std::size_t(r)][std::size_t(c)];
                if (v != 0) entries.push_back({int(s), c, r, Rational(v)});
            }
    return BilinearTensor(int(family.matrices.size()), family.dim, family.dim,
                          std::move(entries), std::move(provenance));
}

// ---------------------------------------------------------------------------
// catalog

std::string to_string(const Construction& c)
{
    switch (c.kind) {
        case ConstructionKind::Scalar: return "scalar(" + std::to_string(c.p) + ")";
        case ConstructionKind::ComplexBlock:
            return "complex_block(" + std::to_string(c.p) + ")";
        case ConstructionKind::QuaternionBlock:
            return "quaternion_block(" + std::to_string(c.p) + ")";
        case ConstructionKind::OctonionBlock:
            return "octonion_block(" + std::to_string(c.p) + ")";
        case ConstructionKind::PolyMult:
            return "poly_mult(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
        case ConstructionKind::ComplexPolyMult:
            return "complex_poly_mult(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
        case ConstructionKind::Hr16: return "hr16";
    }
    throw std::logic_error("unknown construction kind");
}

std::optional<Construction> parse_construction(std::string_view text)
{
    auto parse_int = [](std::string_view s, int& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    };
    std::string_view name = text;
    std::vector<int> args;
    auto open = text.find('(');
    if (open != std::string_view::npos) {
        if (text.back() != ')') return std::nullopt;
        name = text.substr(0, open);
        std::string_view inner = text.substr(open + 1, text.size() - open - 2);
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            auto comma = inner.find(',', pos);
            std::string_view tok = comma == std::string_view::npos
                                       ? inner.substr(pos)
                                       : inner.substr(pos, comma - pos);
            int v = 0;
            if (!parse_int(tok, v)) return std::nullopt;
            args.push_back(v);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    auto mk = [&](ConstructionKind k, std::size_t arity) -> std::optional<Construction> {
        if (args.size() != arity) return std::nullopt;
        Construction c;
        c.kind = k;
        if (arity >= 1) c.p = args[0];
        if (arity >= 2) c.q = args[1];
        return c;
    };
    if (name == "scalar") return mk(ConstructionKind::Scalar, 1);
    if (name == "complex_block") return mk(ConstructionKind::ComplexBlock, 1);
    if (name == "quaternion_block") return mk(ConstructionKind::QuaternionBlock, 1);
    if (name == "octonion_block") return mk(ConstructionKind::OctonionBlock, 1);
    if (name == "poly_mult") return mk(ConstructionKind::PolyMult, 2);
    if (name == "complex_poly_mult") return mk(ConstructionKind::ComplexPolyMult, 2);
    if (name == "hr16") return mk(ConstructionKind::Hr16, 0);
    return std::nullopt;
}

namespace {

int block_unit(ConstructionKind k)
{
    switch (k) {
        case ConstructionKind::ComplexBlock: return 2;
        case ConstructionKind::QuaternionBlock: return 4;
        case ConstructionKind::OctonionBlock: return 8;
        default: throw std::logic_error("not a block kind");
    }
}

void validate(const Construction& c)
{
    switch (c.kind) {
        case ConstructionKind::Scalar:
        case ConstructionKind::ComplexBlock:
        case ConstructionKind::QuaternionBlock:
        case ConstructionKind::OctonionBlock:
            if (c.p < 1)
                throw std::invalid_argument(to_string(c) + ": block count must be >= 1");
            break;
        case ConstructionKind::PolyMult:
            if (c.p < 0 || c.q < 0)
                throw std::invalid_argument(to_string(c) + ": degrees must be >= 0");
            break;
        case ConstructionKind::ComplexPolyMult:
            if (c.p < 1 || c.q < 1 || c.p % 2 == 0 || c.q % 2 == 0)
                throw std::invalid_argument(to_string(c) + ": degrees must be odd and >= 1");
            break;
        case ConstructionKind::Hr16: break;
    }
}

}  // namespace

ConstructionDims construction_dims(const Construction& c)
{
    validate(c);
    switch (c.kind) {
        case ConstructionKind::Scalar: return {1, c.p, c.p};
        case ConstructionKind::ComplexBlock:
        case ConstructionKind::QuaternionBlock:
        case ConstructionKind::OctonionBlock: {
            int u = block_unit(c.kind);
            return {u, u * c.p, u * c.p};
        }
        case ConstructionKind::PolyMult: return {c.p + 1, c.q + 1, c.p + c.q + 1};
        case ConstructionKind::ComplexPolyMult: return {c.p + 1, c.q + 1, c.p + c.q};
        case ConstructionKind::Hr16: return {9, 16, 16};
    }
    throw std::logic_error("unknown construction kind");
}

BilinearTensor construct(const Construction& c)
{
    validate(c);
    std::vector<TensorEntry> entries;
    switch (c.kind) {
        case ConstructionKind::Scalar:
            for (int j = 0; j < c.p; ++j) entries.push_back({0, j, j, Rational(1)});
            return BilinearTensor(1, c.p, c.p, std::move(entries), to_string(c));
        case ConstructionKind::ComplexBlock:
        case ConstructionKind::QuaternionBlock:
        case ConstructionKind::OctonionBlock: {
            int u = block_unit(c.kind);
            MultTable t = algebra_table(u);
            for (int bl = 0; bl < c.p; ++bl)
                for (int i = 0; i < u; ++i)
                    for (int j = 0; j < u; ++j)
                        entries.push_back({i, u * bl + j, u * bl + t[i][j].index,
                                           Rational(t[i][j].sign)});
            return BilinearTensor(u, u * c.p, u * c.p, std::move(entries), to_string(c));
        }
        case ConstructionKind::PolyMult:
            for (int i = 0; i <= c.p; ++i)
                for (int j = 0; j <= c.q; ++j)
                    entries.push_back({i, j, i + j, Rational(1)});
            return BilinearTensor(c.p + 1, c.q + 1, c.p + c.q + 1, std::move(entries),
                                  to_string(c));
        case ConstructionKind::ComplexPolyMult: {
            // complex coefficients interleaved as (re, im) real pairs; for
            // odd degrees the product polynomial has (p+q)/2 complex
            // coefficients, i.e. real output dimension exactly p+q
            int sp = (c.p - 1) / 2, sq = (c.q - 1) / 2;
            for (int s = 0; s <= sp; ++s)
                for (int t = 0; t <= sq; ++t) {
                    entries.push_back({2 * s, 2 * t, 2 * (s + t), Rational(1)});
                    entries.push_back({2 * s + 1, 2 * t + 1, 2 * (s + t), Rational(-1)});
                    entries.push_back({2 * s, 2 * t + 1, 2 * (s + t) + 1, Rational(1)});
                    entries.push_back({2 * s + 1, 2 * t, 2 * (s + t) + 1, Rational(1)});
                }
            return BilinearTensor(c.p + 1, c.q + 1, c.p + c.q, std::move(entries),
                                  to_string(c));
        }
        case ConstructionKind::Hr16: return tensor_from_family(hr16_family(), to_string(c));
    }
    throw std::logic_error("unknown construction kind");
}

std::vector<Construction> catalog(int max_output_dim)
{
    std::vector<Construction> out;
    for (int k = 1; k <= max_output_dim; ++k)
        out.push_back({ConstructionKind::Scalar, k, 0});
    for (int k = 1; 2 * k <= max_output_dim; ++k)
        out.push_back({ConstructionKind::ComplexBlock, k, 0});
    for (int k = 1; 4 * k <= max_output_dim; ++k)
        out.push_back({ConstructionKind::QuaternionBlock, k, 0});
    for (int k = 1; 8 * k <= max_output_dim; ++k)
        out.push_back({ConstructionKind::OctonionBlock, k, 0});
    for (int p = 0; p + 1 <= max_output_dim; ++p)
        for (int q = 0; p + q + 1 <= max_output_dim; ++q)
            out.push_back({ConstructionKind::PolyMult, p, q});
    for (int p = 1; p + 1 <= max_output_dim; p += 2)
        for (int q = 1; p + q <= max_output_dim; q += 2)
            out.push_back({ConstructionKind::ComplexPolyMult, p, q});
    if (max_output_dim >= 16) out.push_back({ConstructionKind::Hr16, 0, 0});
    return out;
}

// ---------------------------------------------------------------------------
// nonsingularity probe

namespace {

constexpr std::uint64_t kMersenne = (std::uint64_t{1} << 31) - 1;

/// Reduction mod 2^31 - 1 for t < 2^63.
inline std::uint64_t mod_p(std::uint64_t t)
{
    t = (t & kMersenne) + (t >> 31);
    t = (t & kMersenne) + (t >> 31);
    if (t >= kMersenne) t -= kMersenne;
    return t;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) { return mod_p(a * b); }

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = mulmod(r, base);
        base = mulmod(base, base);
        exp >>= 1;
    }
    return r;
}

/// True iff the rows x cols matrix (row-major, entries already reduced) has
/// full column rank mod 2^31 - 1.
bool full_column_rank_mod_p(std::vector<std::uint64_t>& m, int rows, int cols)
{
    if (cols > rows) return false;
    int rank = 0;
    for (int c = 0; c < cols; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[std::size_t(r) * cols + c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        if (piv != rank)
            for (int j = c; j < cols; ++j)
                std::swap(m[std::size_t(piv) * cols + j], m[std::size_t(rank) * cols + j]);
        std::uint64_t inv = powmod(m[std::size_t(rank) * cols + c], kMersenne - 2);
        for (int j = c; j < cols; ++j)
            m[std::size_t(rank) * cols + j] = mulmod(m[std::size_t(rank) * cols + j], inv);
        for (int r = rank + 1; r < rows; ++r) {
            std::uint64_t f = m[std::size_t(r) * cols + c];
            if (!f) continue;
            std::uint64_t nf = kMersenne - f;
            for (int j = c; j < cols; ++j)
                m[std::size_t(r) * cols + j] =
                    mod_p(m[std::size_t(r) * cols + j] +
                          nf * m[std::size_t(rank) * cols + j]);
        }
        ++rank;
    }
    return true;
}

/// Exact column rank over the rationals.
int exact_column_rank(std::vector<std::vector<Rational>> m, int cols)
{
    int rows = int(m.size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[std::size_t(r)][std::size_t(c)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[std::size_t(piv)], m[std::size_t(rank)]);
        Rational inv = Rational(1) / m[std::size_t(rank)][std::size_t(c)];
        for (int j = c; j < cols; ++j) m[std::size_t(rank)][std::size_t(j)] *= inv;
        for (int r = rank + 1; r < rows; ++r) {
            Rational f = m[std::size_t(r)][std::size_t(c)];
            if (f == 0) continue;
            for (int j = c; j < cols; ++j)
                m[std::size_t(r)][std::size_t(j)] -= f * m[std::size_t(rank)][std::size_t(j)];
        }
        ++rank;
    }
    return rank;
}

long long lcm_small(long long a, long long b) { return a / std::gcd(a, b) * b; }

/// Seeded rational vector scaled to integers: numerators in [-9, 9],
/// denominators in [1, 9], not identically zero.  Scaling by the common
/// denominator preserves (non)vanishing and rank.
std::vector<long long> draw_scaled_vector(std::mt19937_64& rng, int dim)
{
    while (true) {
        std::vector<long long> num(static_cast<std::size_t>(dim));
        std::vector<long long> den(static_cast<std::size_t>(dim));
        bool nonzero = false;
        for (int i = 0; i < dim; ++i) {
            num[std::size_t(i)] = (long long)(rng() % 19) - 9;
            den[std::size_t(i)] = (long long)(rng() % 9) + 1;
            nonzero = nonzero || num[std::size_t(i)] != 0;
        }
        if (!nonzero) continue;
        long long common = 1;
        for (int i = 0; i < dim; ++i) common = lcm_small(common, den[std::size_t(i)]);
        std::vector<long long> out(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i)
            out[std::size_t(i)] = num[std::size_t(i)] * (common / den[std::size_t(i)]);
        return out;
    }
}

struct ScaledTensor {
    bool fits_int64 = false;
    std::vector<long long> values;  // entry values scaled by the common denominator
    BigInt scale = 1;
    BigInt max_abs = 0;
};

ScaledTensor scale_tensor(const BilinearTensor& t)
{
    ScaledTensor s;
    BigInt common = 1;
    for (const auto& e : t.entries())
        common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(e.value));
    s.scale = common;
    BigInt total_abs = 0;
    std::vector<BigInt> scaled;
    for (const auto& e : t.entries()) {
        BigInt v = boost::multiprecision::numerator(e.value) *
                   (common / boost::multiprecision::denominator(e.value));
        scaled.push_back(v);
        total_abs += abs(v);
        if (abs(v) > s.max_abs) s.max_abs = abs(v);
    }
    // inputs are bounded by 9 * lcm(1..9) = 22680 in absolute value; the
    // int64 fast path needs every output coordinate to stay below 2^62
    BigInt bound = total_abs * 22680 * 22680;
    s.fits_int64 = bound < (BigInt(1) << 62);
    if (s.fits_int64)
        for (const auto& v : scaled) s.values.push_back(v.convert_to<long long>());
    return s;
}

}  // namespace

bool nonsingularity_probe(const BilinearTensor& t, int trials, std::uint64_t seed)
{
    if (trials < 0) throw std::invalid_argument("trials must be >= 0");
    // a map whose slices y -> B(x, y) land in fewer dimensions than b can
    // never have full rank b
    if (t.dim_b() > t.dim_d()) return false;

    std::mt19937_64 rng(seed);
    ScaledTensor st = scale_tensor(t);
    const auto& entries = t.entries();

    // phase 1: B(x, y) != 0 on sampled pairs
    for (int trial = 0; trial < trials; ++trial) {
        auto x = draw_scaled_vector(rng, t.dim_a());
        auto y = draw_scaled_vector(rng, t.dim_b());
        bool all_zero = true;
        if (st.fits_int64) {
            std::vector<long long> out(std::size_t(t.dim_d()), 0);
            for (std::size_t s = 0; s < entries.size(); ++s)
                out[std::size_t(entries[s].k)] += st.values[s] *
                                                  x[std::size_t(entries[s].i)] *
                                                  y[std::size_t(entries[s].j)];
            for (long long v : out) all_zero = all_zero && v == 0;
        } else {
            RationalVector xr, yr;
            for (long long v : x) xr.emplace_back(v);
            for (long long v : y) yr.emplace_back(v);
            RationalVector out = t.apply(xr, yr);
            for (const auto& v : out) all_zero = all_zero && v == 0;
        }
        if (all_zero) return false;
    }

    // phase 2: y -> B(x, y) has full rank b on sampled x
    int rows = t.dim_d(), cols = t.dim_b();
    for (int trial = 0; trial < 2 * trials; ++trial) {
        auto x = draw_scaled_vector(rng, t.dim_a());
        bool full_rank;
        if (st.fits_int64) {
            std::vector<long long> m(std::size_t(rows) * std::size_t(cols), 0);
            for (std::size_t s = 0; s < entries.size(); ++s)
                m[std::size_t(entries[s].k) * std::size_t(cols) + std::size_t(entries[s].j)] +=
                    st.values[s] * x[std::size_t(entries[s].i)];
            std::vector<std::uint64_t> mp(m.size());
            for (std::size_t s = 0; s < m.size(); ++s) {
                long long r = m[s] % (long long)kMersenne;
                if (r < 0) r += (long long)kMersenne;
                mp[s] = std::uint64_t(r);
            }
            full_rank = full_column_rank_mod_p(mp, rows, cols);
            if (!full_rank) {
                // the prime may be unlucky: settle exactly
                std::vector<std::vector<Rational>> me(
                    std::size_t(rows), std::vector<Rational>(std::size_t(cols), Rational(0)));
                for (std::size_t s = 0; s < m.size(); ++s)
                    me[s / std::size_t(cols)][s % std::size_t(cols)] = Rational(m[s]);
                full_rank = exact_column_rank(std::move(me), cols) == cols;
            }
        } else {
            std::vector<std::vector<Rational>> me(
                std::size_t(rows), std::vector<Rational>(std::size_t(cols), Rational(0)));
            for (const auto& e : entries)
                me[std::size_t(e.k)][std::size_t(e.j)] += e.value * Rational(x[std::size_t(e.i)]);
            full_rank = exact_column_rank(std::move(me), cols) == cols;
        }
        if (!full_rank) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// serialization

nlohmann::ordered_json tensor_to_json(const BilinearTensor& t)
{
    nlohmann::ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["type"] = "bilinear_tensor";
    doc["a"] = t.dim_a();
    doc["b"] = t.dim_b();
    doc["d"] = t.dim_d();
    doc["provenance"] = t.provenance();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : t.entries())
        entries.push_back({e.i, e.j, e.k, rational_to_string(e.value)});
    doc["entries"] = entries;
    return doc;
}

BilinearTensor tensor_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object()) throw std::invalid_argument("tensor document must be an object");
    for (const char* field : {"a", "b", "d", "entries"})
        if (!doc.contains(field))
            throw std::invalid_argument(std::string("missing tensor field '") + field + "'");
    for (const char* field : {"a", "b", "d"})
        if (!doc[field].is_number_integer())
            throw std::invalid_argument(std::string("tensor field '") + field +
                                        "' must be an integer");
    std::vector<TensorEntry> entries;
    for (const auto& e : doc["entries"]) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_string())
            throw std::invalid_argument("tensor entry must be [i, j, k, \"value\"]");
        entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(),
                           rational_from_string(e[3].get<std::string>())});
    }
    std::string provenance = doc.value("provenance", std::string("from_json"));
    return BilinearTensor(doc["a"].get<int>(), doc["b"].get<int>(), doc["d"].get<int>(),
                          std::move(entries), std::move(provenance));
}

}  // namespace coindex
