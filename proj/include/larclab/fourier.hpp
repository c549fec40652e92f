#pragma once

#include "larclab/designs.hpp"
#include "larclab/f2.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace larclab {

class Rng;

int truth_table_cap();  // default 24, overridable via LARCLAB_MAX_N

// Exact dyadic-valued function on {0,1}^n: f(x) = values[x] / 2^scale_pow2,
// x indexed with x1 as the least-significant bit.
struct PseudoBooleanFunction {
    int n = 0;
    int scale_pow2 = 0;
    std::vector<int64_t> values;

    static PseudoBooleanFunction constant(int n, int64_t c);
    static PseudoBooleanFunction boolean(int n, std::vector<int64_t> table01);

    uint64_t size() const { return uint64_t(1) << n; }
    Rational at(uint64_t x) const { return dyadic(values[x], scale_pow2); }
    bool is_boolean() const;
    // Strip common powers of two from values into the scale.
    void normalize();

    bool same_function(const PseudoBooleanFunction& other) const;
};

// coeffs[S] / 2^scale_pow2 is the coefficient of the character with mask S.
struct FourierSpectrum {
    int n = 0;
    int scale_pow2 = 0;
    std::vector<int64_t> coeffs;

    uint64_t size() const { return uint64_t(1) << n; }
    Rational at(uint64_t mask) const { return dyadic(coeffs[mask], scale_pow2); }
    uint64_t sparsity() const;
    Rational spectral_norm() const;
};

// In-place unnormalized butterfly; applying it twice multiplies by 2^n.
void walsh_butterfly(std::vector<int64_t>& table);

FourierSpectrum wht(const PseudoBooleanFunction& f, int max_n = -1);
PseudoBooleanFunction inverse_wht(const FourierSpectrum& spec, int max_n = -1);

PseudoBooleanFunction subspace_indicator(const Subspace& v, int max_n = -1);
// Closed form: support is exactly dual(v), every coefficient 2^{-codim(v)}.
FourierSpectrum subspace_indicator_spectrum(const Subspace& v, int max_n = -1);

// 0/1 truth table of x -> [x in some member].
PseudoBooleanFunction union_function(const SubspaceFamily& fam, int max_n = -1);

struct SpectralReport {
    uint64_t sparsity = 0;
    Rational spectral_norm;
    uint64_t approx_sparsity_bound = 0;  // ceil(C * norm^2 * n / (delta-eps)^2)
    Rational eps;
    Rational delta;
};
SpectralReport spectral_report(const PseudoBooleanFunction& f, const Rational& eps,
                               const Rational& delta, int grolmusz_c = 4);

struct GrolmuszOptions {
    int c = 4;                  // constant in the t cap
    uint64_t target = 0;        // 0: use the theory cap as the target sparsity
    uint64_t initial_t = 1024;  // first sample count; doubles until verified
};

struct GrolmuszResult {
    bool verified = false;
    bool sampled = false;  // false when f was already sparse enough
    uint64_t t = 0;        // sample count of the returned approximator
    uint64_t t_cap = 0;
    uint64_t sparsity = 0;            // ||g||_0
    Rational sup_distance;            // verified max_x |g(x) - f(x)|
    Rational coefficient_unit;        // g = coefficient_unit * sum_S count_S chi_S
    std::vector<std::pair<uint64_t, int64_t>> signed_counts;  // (mask, count)

    Rational value_at(uint64_t x) const;
};

// Randomized sparsification via character sampling proportional to the
// spectrum magnitudes of `approximator` (default: f itself, eps = 0). The
// sup-norm promise ||g - f||_inf <= delta is verified point by point; t grows
// geometrically until the check passes or the cap C*norm^2*n/(delta-eps)^2 is
// hit.
GrolmuszResult grolmusz_sparsify(const PseudoBooleanFunction& f, const Rational& eps,
                                 const Rational& delta, uint64_t seed,
                                 GrolmuszOptions opts = {},
                                 const PseudoBooleanFunction* approximator = nullptr);

// Exact rank over the rationals of M[x][y] = f(x xor y).
uint64_t xor_lift_rank(const PseudoBooleanFunction& f, int max_n = 6);

}  // namespace larclab
