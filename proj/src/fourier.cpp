#include "larclab/fourier.hpp"

#include "larclab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <map>

namespace larclab {

namespace {

int env_max_n() {
    if (const char* v = std::getenv("LARCLAB_MAX_N")) {
        int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 24;
}

void check_cap(int n, int max_n, const char* what) {
    int cap = (max_n >= 0) ? max_n : truth_table_cap();
    if (n > cap)
        throw EnumerationCapError(std::string(what) + " refused: n=" + std::to_string(n) +
                                  " exceeds cap " + std::to_string(cap));
    if (n < 0) throw std::invalid_argument("negative n");
}

int64_t max_abs(const std::vector<int64_t>& v) {
    int64_t m = 0;
    for (int64_t x : v) m = std::max(m, x < 0 ? -x : x);
    return m;
}

}  // namespace

int truth_table_cap() { return env_max_n(); }

PseudoBooleanFunction PseudoBooleanFunction::constant(int n, int64_t c) {
    return PseudoBooleanFunction{n, 0, std::vector<int64_t>(uint64_t(1) << n, c)};
}

PseudoBooleanFunction PseudoBooleanFunction::boolean(int n, std::vector<int64_t> table01) {
    if (table01.size() != (uint64_t(1) << n))
        throw std::invalid_argument("truth table length is not 2^n");
    for (int64_t v : table01)
        if (v != 0 && v != 1) throw std::invalid_argument("boolean table entries must be 0/1");
    return PseudoBooleanFunction{n, 0, std::move(table01)};
}

bool PseudoBooleanFunction::is_boolean() const {
    const int64_t one = int64_t(1) << scale_pow2;
    if (scale_pow2 >= 63) return false;
    for (int64_t v : values)
        if (v != 0 && v != one) return false;
    return true;
}

void PseudoBooleanFunction::normalize() {
    while (scale_pow2 > 0) {
        bool all_even = true;
        for (int64_t v : values)
            if (v & 1) {
                all_even = false;
                break;
            }
        if (!all_even) break;
        for (auto& v : values) v >>= 1;
        --scale_pow2;
    }
}

bool PseudoBooleanFunction::same_function(const PseudoBooleanFunction& other) const {
    if (n != other.n) return false;
    for (uint64_t x = 0; x < size(); ++x) {
        // cross-multiplied dyadic comparison
        if (scale_pow2 >= other.scale_pow2) {
            if (values[x] != (other.values[x] << (scale_pow2 - other.scale_pow2))) return false;
        } else {
            if (other.values[x] != (values[x] << (other.scale_pow2 - scale_pow2))) return false;
        }
    }
    return true;
}

uint64_t FourierSpectrum::sparsity() const {
    uint64_t c = 0;
    for (int64_t v : coeffs)
        if (v != 0) ++c;
    return c;
}

Rational FourierSpectrum::spectral_norm() const {
    BigInt total = 0;
    for (int64_t v : coeffs) total += (v < 0 ? -v : v);
    return Rational(total, pow2_int(scale_pow2));
}

void walsh_butterfly(std::vector<int64_t>& table) {
    const uint64_t size = table.size();
    for (uint64_t len = 1; len < size; len <<= 1) {
        for (uint64_t block = 0; block < size; block += 2 * len) {
            for (uint64_t i = block; i < block + len; ++i) {
                int64_t a = table[i];
                int64_t b = table[i + len];
                table[i] = a + b;
                table[i + len] = a - b;
            }
        }
    }
}

FourierSpectrum wht(const PseudoBooleanFunction& f, int max_n) {
    check_cap(f.n, max_n, "wht");
    // Magnitudes grow by at most 2^n through the butterfly.
    if (max_abs(f.values) > (std::numeric_limits<int64_t>::max() >> (f.n + 1)))
        throw std::overflow_error("wht: table values too large for exact 64-bit transform");
    std::vector<int64_t> table = f.values;
    walsh_butterfly(table);
    return FourierSpectrum{f.n, f.scale_pow2 + f.n, std::move(table)};
}

PseudoBooleanFunction inverse_wht(const FourierSpectrum& spec, int max_n) {
    check_cap(spec.n, max_n, "inverse wht");
    if (max_abs(spec.coeffs) > (std::numeric_limits<int64_t>::max() >> (spec.n + 1)))
        throw std::overflow_error("inverse wht: coefficients too large for exact transform");
    std::vector<int64_t> table = spec.coeffs;
    walsh_butterfly(table);
    PseudoBooleanFunction f{spec.n, spec.scale_pow2, std::move(table)};
    f.normalize();
    return f;
}

PseudoBooleanFunction subspace_indicator(const Subspace& v, int max_n) {
    check_cap(v.ambient(), max_n, "subspace indicator");
    std::vector<int64_t> table(uint64_t(1) << v.ambient(), 0);
    v.for_each([&](const F2Vector& x) { table[x.to_index()] = 1; });
    return PseudoBooleanFunction{v.ambient(), 0, std::move(table)};
}

FourierSpectrum subspace_indicator_spectrum(const Subspace& v, int max_n) {
    check_cap(v.ambient(), max_n, "subspace indicator spectrum");
    FourierSpectrum spec{v.ambient(), v.codim(),
                         std::vector<int64_t>(uint64_t(1) << v.ambient(), 0)};
    dual_space(v).for_each([&](const F2Vector& l) { spec.coeffs[l.to_index()] = 1; });
    return spec;
}

PseudoBooleanFunction union_function(const SubspaceFamily& fam, int max_n) {
    check_cap(fam.n, max_n, "union function");
    std::vector<int64_t> table(uint64_t(1) << fam.n, 0);
    for (const auto& v : fam.members)
        v.for_each([&](const F2Vector& x) { table[x.to_index()] = 1; });
    return PseudoBooleanFunction{fam.n, 0, std::move(table)};
}

namespace {

uint64_t grolmusz_cap(const Rational& norm, int n, const Rational& eps, const Rational& delta,
                      int c) {
    Rational gap = delta - eps;
    Rational cap = Rational(c) * norm * norm * Rational(n) / (gap * gap);
    BigInt ceiling = ceil_rat(cap);
    if (ceiling > std::numeric_limits<int64_t>::max())
        throw std::overflow_error("grolmusz cap does not fit in 64 bits");
    return static_cast<uint64_t>(ceiling.convert_to<int64_t>());
}

}  // namespace

SpectralReport spectral_report(const PseudoBooleanFunction& f, const Rational& eps,
                               const Rational& delta, int grolmusz_c) {
    if (!(delta > eps) || eps < 0)
        throw std::invalid_argument("spectral_report requires delta > eps >= 0");
    FourierSpectrum spec = wht(f);
    SpectralReport rep;
    rep.sparsity = spec.sparsity();
    rep.spectral_norm = spec.spectral_norm();
    rep.eps = eps;
    rep.delta = delta;
    rep.approx_sparsity_bound =
        rep.spectral_norm == 0 ? 0 : grolmusz_cap(rep.spectral_norm, f.n, eps, delta, grolmusz_c);
    return rep;
}

Rational GrolmuszResult::value_at(uint64_t x) const {
    BigInt acc = 0;
    for (const auto& [mask, count] : signed_counts) {
        bool neg = std::popcount(mask & x) & 1;
        acc += neg ? -BigInt(count) : BigInt(count);
    }
    return coefficient_unit * Rational(acc);
}

GrolmuszResult grolmusz_sparsify(const PseudoBooleanFunction& f, const Rational& eps,
                                 const Rational& delta, uint64_t seed, GrolmuszOptions opts,
                                 const PseudoBooleanFunction* approximator) {
    if (!(delta > eps) || eps < 0)
        throw std::invalid_argument("grolmusz_sparsify requires delta > eps >= 0");
    const PseudoBooleanFunction& g0 = approximator ? *approximator : f;
    if (g0.n != f.n) throw DimensionMismatchError("approximator dimension mismatch");

    FourierSpectrum spec = wht(g0);
    GrolmuszResult res;
    res.coefficient_unit = Rational(1);

    std::vector<std::pair<uint64_t, int64_t>> support;  // (mask, coeff numerator)
    for (uint64_t s = 0; s < spec.size(); ++s)
        if (spec.coeffs[s] != 0) support.emplace_back(s, spec.coeffs[s]);
    const Rational norm = spec.spectral_norm();

    if (support.empty()) {
        // g = 0 approximates f within delta iff f itself is within delta of 0.
        for (uint64_t x = 0; x < f.size(); ++x) {
            Rational d = boost::multiprecision::abs(f.at(x));
            if (d > res.sup_distance) res.sup_distance = d;
        }
        res.verified = res.sup_distance <= delta;
        return res;
    }

    res.t_cap = grolmusz_cap(norm, f.n, eps, delta, opts.c);
    const uint64_t target = opts.target ? opts.target : res.t_cap;

    if (support.size() <= target) {
        // Already sparse enough; keep the approximator as-is.
        res.sampled = false;
        res.t = support.size();
        res.sparsity = support.size();
        res.coefficient_unit = pow2_rat(-spec.scale_pow2);
        res.signed_counts = support;
        for (uint64_t x = 0; x < f.size(); ++x) {
            Rational d = boost::multiprecision::abs(g0.at(x) - f.at(x));
            if (d > res.sup_distance) res.sup_distance = d;
        }
        res.verified = res.sup_distance <= delta;
        return res;
    }

    // Sample characters i.i.d. with probability proportional to |coeff| and
    // average the signed characters: g = (norm / t) sum_j sign_j chi_{S_j}.
    std::vector<uint64_t> cumulative(support.size());
    uint64_t running = 0;
    for (size_t i = 0; i < support.size(); ++i) {
        running += static_cast<uint64_t>(support[i].second < 0 ? -support[i].second
                                                               : support[i].second);
        cumulative[i] = running;
    }
    const uint64_t total_weight = running;

    Rng rng(seed);
    std::vector<int64_t> counts(spec.size(), 0);
    uint64_t t = 0;
    uint64_t goal = std::min(opts.initial_t, res.t_cap);
    res.sampled = true;

    for (;;) {
        while (t < goal) {
            uint64_t r = rng.below(total_weight);
            size_t idx = static_cast<size_t>(
                std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
            counts[support[idx].first] += support[idx].second < 0 ? -1 : 1;
            ++t;
        }

        // g(x) = norm * E(x) / t with E = butterfly of the signed counts.
        std::vector<int64_t> eval = counts;
        walsh_butterfly(eval);
        Rational unit = norm / Rational(t);
        Rational worst = 0;
        for (uint64_t x = 0; x < f.size(); ++x) {
            Rational d = boost::multiprecision::abs(unit * Rational(eval[x]) - f.at(x));
            if (d > worst) worst = d;
        }
        res.sup_distance = worst;
        res.t = t;
        if (worst <= delta) {
            res.verified = true;
            break;
        }
        if (goal >= res.t_cap) {
            res.verified = false;  // report failure with achieved sup-distance
            break;
        }
        goal = std::min(goal * 2, res.t_cap);
    }

    res.coefficient_unit = norm / Rational(res.t);
    for (uint64_t s = 0; s < counts.size(); ++s)
        if (counts[s] != 0) res.signed_counts.emplace_back(s, counts[s]);
    res.sparsity = res.signed_counts.size();
    return res;
}

uint64_t xor_lift_rank(const PseudoBooleanFunction& f, int max_n) {
    check_cap(f.n, max_n, "xor lift rank");
    const uint64_t size = f.size();
    // Exact elimination over the rationals; entries are the integer
    // numerators, the shared dyadic scale does not affect rank.
    std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
    for (uint64_t x = 0; x < size; ++x)
        for (uint64_t y = 0; y < size; ++y) m[x][y] = Rational(f.values[x ^ y]);

    uint64_t rank = 0;
    for (uint64_t col = 0; col < size && rank < size; ++col) {
        uint64_t pivot = size;
        for (uint64_t r = rank; r < size; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == size) continue;
        std::swap(m[rank], m[pivot]);
        Rational inv = Rational(1) / m[rank][col];
        for (uint64_t r = 0; r < size; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational factor = m[r][col] * inv;
            for (uint64_t c = col; c < size; ++c) m[r][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace larclab
