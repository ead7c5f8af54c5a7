#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace coindex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// One nonzero structure constant of a bilinear map: the coefficient of
/// output coordinate k in x_i * y_j.
struct TensorEntry {
    int i = 0;
    int j = 0;
    int k = 0;
    Rational value;

    friend bool operator==(const TensorEntry& a, const TensorEntry& b)
    {
        return a.i == b.i && a.j == b.j && a.k == b.k && a.value == b.value;
    }
};

/// Bilinear map R^a x R^b -> R^d with exact rational structure constants,
/// stored sparsely.  Entries are kept sorted by (i, j, k) with no duplicates
/// and no explicit zeros.
class BilinearTensor {
public:
    BilinearTensor(int a, int b, int d, std::vector<TensorEntry> entries,
                   std::string provenance);

    int dim_a() const { return a_; }
    int dim_b() const { return b_; }
    int dim_d() const { return d_; }
    const std::vector<TensorEntry>& entries() const { return entries_; }
    const std::string& provenance() const { return provenance_; }

    Rational coefficient(int i, int j, int k) const;
    /// Evaluates the map on exact rational inputs (sizes must match a and b).
    RationalVector apply(const RationalVector& x, const RationalVector& y) const;

private:
    int a_, b_, d_;
    std::vector<TensorEntry> entries_;
    std::string provenance_;
};

/// Restriction to the first a2 x b2 input coordinates.
BilinearTensor restrict_inputs(const BilinearTensor& t, int a2, int b2);
/// Post-composition with the inclusion R^d -> R^d2, d2 >= d.
BilinearTensor include_codomain(const BilinearTensor& t, int d2);
/// The map (x, y) -> B(y, x); swaps the two input slots.
BilinearTensor swap_arguments(const BilinearTensor& t);

// ---------------------------------------------------------------------------
// construction catalog

enum class ConstructionKind {
    Scalar,           // R^1 x R^k -> R^k, scalar multiplication
    ComplexBlock,     // C x C^k -> C^k as real maps: R^2 x R^2k -> R^2k
    QuaternionBlock,  // H x H^k -> H^k: R^4 x R^4k -> R^4k
    OctonionBlock,    // O x O^k -> O^k: R^8 x R^8k -> R^8k
    PolyMult,         // real polynomial multiplication: R^(p+1) x R^(q+1) -> R^(p+q+1)
    ComplexPolyMult,  // complex polynomial multiplication, p and q odd:
                      // R^(p+1) x R^(q+1) -> R^(p+q), coordinates interleaved (re, im)
    Hr16,             // Hurwitz-Radon family of 9 matrices on R^16: R^9 x R^16 -> R^16
};

struct Construction {
    ConstructionKind kind = ConstructionKind::Scalar;
    int p = 0;  // k for the block kinds; degree p for the polynomial kinds
    int q = 0;  // degree q for the polynomial kinds; unused otherwise

    friend bool operator==(const Construction&, const Construction&) = default;
};

std::string to_string(const Construction& c);
/// Inverse of to_string: "scalar(3)", "poly_mult(2,5)", "hr16", ...
std::optional<Construction> parse_construction(std::string_view text);
/// Dimensions (a, b, d) of construct(c) without building it.
struct ConstructionDims {
    int a = 0, b = 0, d = 0;
};
ConstructionDims construction_dims(const Construction& c);
/// Builds the named nonsingular bilinear map.  Throws on invalid parameters
/// (nonpositive sizes, even degrees for complex_poly_mult).
BilinearTensor construct(const Construction& c);
/// Every valid construction with output dimension at most max_output_dim,
/// in deterministic order.
std::vector<Construction> catalog(int max_output_dim);

// ---------------------------------------------------------------------------
// Hurwitz-Radon matrix families

/// Family of integer matrices A_1..A_m on R^dim satisfying the exact
/// Hurwitz-Radon relations A_i^T A_j + A_j^T A_i = 2 delta_ij I.
/// matrices[s][r][c] is the (r, c) entry of A_(s+1).
struct HRFamily {
    int dim = 0;
    std::vector<std::vector<std::vector<long long>>> matrices;
};

/// Left-multiplication family of the composition algebra of dimension
/// dim in {1, 2, 4, 8} (reals, complexes, quaternions, octonions via
/// Cayley-Dickson doubling); yields dim matrices on R^dim.
HRFamily composition_algebra_family(int dim);
/// Nine anticommuting orthogonal matrices on R^16, built by doubling the
/// octonion family.
HRFamily hr16_family();
/// Checks the Hurwitz-Radon relations exactly over the integers.
bool verify_hr(const HRFamily& family);
/// The bilinear map (x, y) -> sum_i x_i A_i y of a family.
BilinearTensor tensor_from_family(const HRFamily& family, std::string provenance);

// ---------------------------------------------------------------------------
// nonsingularity probing

/// Randomized nonsingularity check.  Draws `trials` seeded rational input
/// pairs and verifies B(x, y) != 0, then 2*trials rational vectors x and
/// verifies that y -> B(x, y) has full rank b.  Deterministic for a fixed
/// seed.  Returns false as soon as a singular pair is found; a true result
/// is evidence, not proof (rank checks themselves are exact per sample).
bool nonsingularity_probe(const BilinearTensor& t, int trials, std::uint64_t seed);

nlohmann::ordered_json tensor_to_json(const BilinearTensor& t);
BilinearTensor tensor_from_json(const nlohmann::json& doc);

}  // namespace coindex
