#include "larclab/commlab.hpp"

#include "larclab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace larclab {

namespace {

int hex_digit_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("bad hex digit: ") + c);
}

// Bitset as little-endian hex bytes: element i is bit (i % 8) of byte i / 8.
std::string bitset_hex(const std::vector<uint8_t>& bits) {
    static const char* digits = "0123456789abcdef";
    const size_t nbytes = (bits.size() + 7) / 8;
    std::string s;
    s.reserve(2 * nbytes);
    for (size_t byte = 0; byte < nbytes; ++byte) {
        uint8_t v = 0;
        for (size_t bit = 0; bit < 8 && byte * 8 + bit < bits.size(); ++bit)
            if (bits[byte * 8 + bit]) v |= uint8_t(1) << bit;
        s.push_back(digits[v >> 4]);
        s.push_back(digits[v & 15]);
    }
    return s;
}

std::vector<uint8_t> bitset_from_hex(uint64_t count, const std::string& hex) {
    const size_t nbytes = (count + 7) / 8;
    if (hex.size() != 2 * nbytes)
        throw std::invalid_argument("bitset hex string has wrong length");
    std::vector<uint8_t> bits(count, 0);
    for (uint64_t i = 0; i < count; ++i) {
        int byte = hex_digit_val(hex[2 * (i / 8)]) * 16 + hex_digit_val(hex[2 * (i / 8) + 1]);
        bits[i] = (byte >> (i % 8)) & 1;
    }
    return bits;
}

}  // namespace

Rectangle Rectangle::full(int n) {
    Rectangle r;
    r.n = n;
    r.a.assign(uint64_t(1) << n, 1);
    r.b.assign(uint64_t(1) << n, 1);
    return r;
}

Rectangle Rectangle::empty(int n) {
    Rectangle r;
    r.n = n;
    r.a.assign(uint64_t(1) << n, 0);
    r.b.assign(uint64_t(1) << n, 0);
    return r;
}

uint64_t Rectangle::count_a() const {
    uint64_t c = 0;
    for (uint8_t v : a) c += v;
    return c;
}

uint64_t Rectangle::count_b() const {
    uint64_t c = 0;
    for (uint8_t v : b) c += v;
    return c;
}

std::string Rectangle::a_hex() const { return bitset_hex(a); }

std::string Rectangle::b_hex() const { return bitset_hex(b); }

Rectangle Rectangle::from_hex(int n, const std::string& a_hex, const std::string& b_hex) {
    Rectangle r;
    r.n = n;
    r.a = bitset_from_hex(uint64_t(1) << n, a_hex);
    r.b = bitset_from_hex(uint64_t(1) << n, b_hex);
    return r;
}

bool sv_member(const Subspace& v, uint64_t x, uint64_t y) {
    return v.contains(F2Vector::from_index(v.ambient(), x ^ y));
}

BigInt sv_size(int n, const Subspace& v) { return pow2_int(n + v.dim()); }

NuDistribution::NuDistribution(const SubspaceFamily& fam)
    : fam_(fam), f_(union_function(fam)) {
    const uint64_t size = f_.size();
    for (uint64_t z = 0; z < size; ++z)
        if (f_.values[z] == 0) zero_points_.push_back(z);
    if (zero_points_.empty())
        throw std::invalid_argument("nu undefined: F is identically 1");
    zero_pairs_ = pow2_int(fam_.n) * BigInt(zero_points_.size());

    one_mass_by_xor_.assign(size, Rational(0));
    const Rational member_share = Rational(1, 2 * BigInt(fam_.size()));
    for (const auto& v : fam_.members) {
        Rational per_pair = member_share / Rational(sv_size(fam_.n, v));
        v.for_each([&](const F2Vector& x) { one_mass_by_xor_[x.to_index()] += per_pair; });
    }
}

Rational NuDistribution::mass_of_xor(uint64_t z) const {
    if (f_.values[z] == 0) return Rational(1, 2 * zero_pairs_);
    return one_mass_by_xor_[z];
}

std::pair<uint64_t, uint64_t> NuDistribution::sample(Rng& rng) const {
    const uint64_t size = f_.size();
    uint64_t x = rng.below(size);
    if ((rng.next_u64() & 1) == 0) {
        uint64_t z = zero_points_[rng.below(zero_points_.size())];
        return {x, x ^ z};
    }
    const Subspace& v = fam_.members[rng.below(fam_.members.size())];
    F2Vector elem(fam_.n);
    for (const auto& row : v.basis().rows)
        if (rng.next_u64() & 1) elem ^= row;
    return {x, x ^ elem.to_index()};
}

namespace {

std::vector<uint64_t> label_table(const Subspace& v) {
    const uint64_t size = uint64_t(1) << v.ambient();
    const auto lines = dual_space(v).basis().rows;
    std::vector<uint64_t> label(size, 0);
    for (uint64_t x = 0; x < size; ++x) {
        uint64_t a = 0;
        for (size_t i = 0; i < lines.size(); ++i) {
            uint64_t l = lines[i].to_index();
            a |= uint64_t(std::popcount(l & x) & 1) << i;
        }
        label[x] = a;
    }
    return label;
}

}  // namespace

std::vector<Rational> coset_pushforward(const CubeDistribution& x, const Subspace& v) {
    if (x.n != v.ambient()) throw DimensionMismatchError("pushforward dimension mismatch");
    auto label = label_table(v);
    std::vector<Rational> push(uint64_t(1) << v.codim(), Rational(0));
    for (uint64_t p = 0; p < x.size(); ++p) push[label[p]] += x.probs[p];
    return push;
}

std::vector<Rational> coset_pushforward_subset(const std::vector<uint8_t>& subset,
                                               const Subspace& v) {
    auto label = label_table(v);
    if (subset.size() != label.size())
        throw DimensionMismatchError("subset bitset has wrong length");
    std::vector<BigInt> counts(uint64_t(1) << v.codim(), BigInt(0));
    BigInt total = 0;
    for (uint64_t p = 0; p < subset.size(); ++p) {
        if (subset[p]) {
            ++counts[label[p]];
            ++total;
        }
    }
    if (total == 0) throw std::invalid_argument("empty subset");
    std::vector<Rational> push(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) push[i] = Rational(counts[i], total);
    return push;
}

Rational l1_to_uniform(const std::vector<Rational>& pushforward) {
    const Rational uniform(1, BigInt(pushforward.size()));
    Rational d = 0;
    for (const auto& p : pushforward) d += boost::multiprecision::abs(p - uniform);
    return d;
}

double entropy_bits(const CubeDistribution& x) {
    double h = 0.0;
    for (const auto& p : x.probs) {
        if (p == 0) continue;
        double pd = p.convert_to<double>();
        h -= pd * std::log2(pd);
    }
    return h;
}

namespace {

ConjectureReport conjecture_report_impl(const CubeDistribution& x, const SubspaceFamily& fam,
                                        const Rational& alpha, int required_far,
                                        bool strict_threshold, double entropy_bound) {
    if (x.n != fam.n) throw DimensionMismatchError("conjecture check dimension mismatch");
    ConjectureReport rep;
    rep.required_far = required_far;
    for (const auto& v : fam.members) {
        if (l1_to_uniform(coset_pushforward(x, v)) >= alpha) ++rep.far_count;
    }
    rep.hypothesis_met =
        strict_threshold ? rep.far_count > required_far : rep.far_count >= required_far;
    rep.entropy = entropy_bits(x);
    rep.entropy_bound = entropy_bound;
    rep.margin = entropy_bound - rep.entropy;
    rep.consistent = !rep.hypothesis_met || rep.entropy <= entropy_bound;
    rep.counterexample_candidate = rep.hypothesis_met && rep.entropy > entropy_bound;
    return rep;
}

}  // namespace

ConjectureReport conjecture_check(const CubeDistribution& x, const SubspaceFamily& fam,
                                  const ConjectureParams& params) {
    if (params.alpha <= 0 || params.alpha >= 1 || params.beta <= 0 || params.k < 1)
        throw std::invalid_argument("conjecture params need 0 < alpha < 1, beta > 0, k >= 1");
    return conjecture_report_impl(x, fam, params.alpha, params.k * params.h,
                                  /*strict_threshold=*/true,
                                  double(fam.n) - params.beta * params.s);
}

ConjectureReport conjecture2_check(const CubeDistribution& x, const SubspaceFamily& fam,
                                   const Rational& alpha, double beta) {
    if (alpha <= 0 || alpha >= 1 || beta <= 0)
        throw std::invalid_argument("conjecture params need 0 < alpha < 1, beta > 0");
    const int required = (fam.size() + 2) / 3;  // ceil(m/3)
    return conjecture_report_impl(x, fam, alpha, required, /*strict_threshold=*/false,
                                  double(fam.n) * (1.0 - beta));
}

CounterexampleSearchResult counterexample_search(const SubspaceFamily& fam,
                                                 const ConjectureParams& params,
                                                 uint64_t budget, uint64_t seed) {
    if (fam.n > 16)
        throw EnumerationCapError("counterexample_search refused: dense search needs n <= 16");
    const uint64_t size = uint64_t(1) << fam.n;
    const int m = fam.size();

    // Per-member coset label tables and incremental label counts.
    std::vector<std::vector<uint64_t>> labels(m);
    std::vector<int> codims(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = label_table(fam.members[i]);
        codims[i] = fam.members[i].codim();
    }

    // alpha as p/q in 64 bits for the hot comparison
    const int64_t alpha_num = boost::multiprecision::numerator(params.alpha).convert_to<int64_t>();
    const int64_t alpha_den =
        boost::multiprecision::denominator(params.alpha).convert_to<int64_t>();

    std::vector<uint8_t> support(size, 0);
    std::vector<std::vector<int64_t>> counts(m);
    for (int i = 0; i < m; ++i) counts[i].assign(uint64_t(1) << codims[i], 0);
    int64_t support_size = 0;

    auto flip = [&](uint64_t p) {
        int delta = support[p] ? -1 : 1;
        support[p] ^= 1;
        support_size += delta;
        for (int i = 0; i < m; ++i) counts[i][labels[i][p]] += delta;
    };

    auto far_count_now = [&]() {
        int far = 0;
        for (int i = 0; i < m; ++i) {
            const int64_t shifts = int64_t(1) << codims[i];
            int64_t sum = 0;
            for (int64_t c : counts[i]) {
                int64_t d = c * shifts - support_size;
                sum += d < 0 ? -d : d;
            }
            // ||push - U||_1 >= alpha  <=>  alpha_den * sum >= alpha_num * |S| * 2^codim
            if (alpha_den * sum >= alpha_num * support_size * shifts) ++far;
        }
        return far;
    };

    const int threshold = params.k * params.h;  // need far_count > threshold
    auto score_of = [&](int far) {
        double h = std::log2(double(support_size));
        if (far > threshold) return h;
        return h - 2.0 * double(threshold + 1 - far);
    };

    // Start from the uniform distribution over the first member.
    fam.members[0].for_each([&](const F2Vector& v) { flip(v.to_index()); });

    Rng rng(seed);
    CounterexampleSearchResult res;
    int far = far_count_now();
    double score = score_of(far);
    double best_feasible = -1e300;
    std::vector<uint8_t> best_support = support;
    double best_score = score;
    bool best_is_feasible = far > threshold;
    if (best_is_feasible) best_feasible = score;
    res.trace.push_back({0, score, far, std::log2(double(support_size))});

    for (uint64_t it = 1; it <= budget; ++it) {
        const double temp = 1.0 * std::pow(0.01, double(it) / double(std::max<uint64_t>(budget, 1)));
        uint64_t p = rng.below(size);
        if (support[p] && support_size == 1) continue;  // keep the support nonempty
        flip(p);
        int new_far = far_count_now();
        double new_score = score_of(new_far);
        bool accept = new_score >= score ||
                      rng.unit() < std::exp((new_score - score) / std::max(temp, 1e-9));
        if (!accept) {
            flip(p);
            continue;
        }
        far = new_far;
        score = new_score;
        bool feasible = far > threshold;
        bool improved = feasible ? (!best_is_feasible || score > best_feasible)
                                 : (!best_is_feasible && score > best_score);
        if (improved) {
            best_support = support;
            best_score = score;
            best_is_feasible = feasible;
            if (feasible) best_feasible = score;
            res.trace.push_back({it, score, far, std::log2(double(support_size))});
        }
    }

    for (uint64_t p = 0; p < size; ++p)
        if (best_support[p]) res.support.push_back(p);
    res.best_score = best_score;
    res.report =
        conjecture_check(CubeDistribution::uniform_over(fam.n, res.support), fam, params);
    return res;
}

namespace {

struct ProjectionCounts {
    std::vector<int64_t> ca, cb;
    int64_t na = 0, nb = 0;
    int codim = 0;
};

ProjectionCounts project_rectangle(const Rectangle& r, const Subspace& v) {
    ProjectionCounts pc;
    pc.codim = v.codim();
    auto label = label_table(v);
    pc.ca.assign(uint64_t(1) << pc.codim, 0);
    pc.cb.assign(uint64_t(1) << pc.codim, 0);
    for (uint64_t x = 0; x < label.size(); ++x) {
        if (r.a[x]) {
            ++pc.ca[label[x]];
            ++pc.na;
        }
        if (r.b[x]) {
            ++pc.cb[label[x]];
            ++pc.nb;
        }
    }
    if (pc.na == 0 || pc.nb == 0)
        throw std::invalid_argument("rectangle analysis needs nonempty A and B");
    return pc;
}

Rational l1_counts_to_uniform(const std::vector<int64_t>& counts, int64_t total, int codim) {
    // sum_a |c_a/total - 2^{-codim}|
    Rational d = 0;
    const BigInt denom = BigInt(total) * pow2_int(codim);
    for (int64_t c : counts) {
        BigInt num = BigInt(c) * pow2_int(codim) - total;
        d += Rational(boost::multiprecision::abs(num), denom);
    }
    return d;
}

}  // namespace

ProjectionReport rectangle_analysis(const Rectangle& r, const SubspaceFamily& fam,
                                    const Rational& alpha) {
    if (r.n != fam.n) throw DimensionMismatchError("rectangle/family dimension mismatch");
    ProjectionReport rep;
    for (int i = 0; i < fam.size(); ++i) {
        const Subspace& v = fam.members[i];
        ProjectionCounts pc = project_rectangle(r, v);
        ProjectionEntry e;
        e.member = i;
        e.codim = pc.codim;
        BigInt dot = 0;
        for (size_t a = 0; a < pc.ca.size(); ++a) dot += BigInt(pc.ca[a]) * pc.cb[a];
        e.collision = Rational(dot, BigInt(pc.na) * pc.nb);
        e.dist_a = l1_counts_to_uniform(pc.ca, pc.na, pc.codim);
        e.dist_b = l1_counts_to_uniform(pc.cb, pc.nb, pc.codim);
        e.far = e.dist_a >= alpha || e.dist_b >= alpha;

        const Rational gate = (1 - alpha) * (1 - alpha) / 4 * pow2_rat(-pc.codim);
        if (e.collision < gate) {
            Rational cross = 0;
            for (size_t a = 0; a < pc.ca.size(); ++a) {
                Rational pa(pc.ca[a], pc.na), pb(pc.cb[a], pc.nb);
                cross += boost::multiprecision::abs(pa - pb);
            }
            e.chain_holds = cross >= 2 * alpha &&
                            (e.dist_a >= alpha || e.dist_b >= alpha);
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

bool appendix_chain_check(const Rectangle& r, const Subspace& v, const Rational& alpha) {
    SubspaceFamily one = make_family(v.ambient(), {v});
    return rectangle_analysis(r, one, alpha).entries[0].chain_holds;
}

RectCorruptionReport corruption_rectangle_check(const Rectangle& r, const NuDistribution& nu,
                                                const Rational& eps,
                                                const Rational& size_threshold) {
    if (r.n != nu.n()) throw DimensionMismatchError("rectangle/nu dimension mismatch");
    const uint64_t size = r.size();
    std::vector<int64_t> xor_counts(size, 0);
    for (uint64_t x = 0; x < size; ++x) {
        if (!r.a[x]) continue;
        for (uint64_t y = 0; y < size; ++y)
            if (r.b[y]) ++xor_counts[x ^ y];
    }
    RectCorruptionReport rep;
    for (uint64_t z = 0; z < size; ++z) {
        if (!xor_counts[z]) continue;
        Rational mass = Rational(xor_counts[z]) * nu.mass_of_xor(z);
        rep.total_mass += mass;
        if (nu.f_value(z)) rep.one_mass += mass;
    }
    rep.corruption_ok = rep.one_mass <= 4 * eps * rep.total_mass;
    rep.large_enough = rep.total_mass >= size_threshold;
    return rep;
}

MonoRectangle mono_rectangle_search(const PseudoBooleanFunction& f, uint64_t budget,
                                    uint64_t seed) {
    if (f.n > 14)
        throw EnumerationCapError("mono_rectangle_search refused: needs n <= 14");
    if (!f.is_boolean()) throw std::invalid_argument("mono rectangle search needs a boolean table");
    const uint64_t size = f.size();

    MonoRectangle best;
    best.rect = Rectangle::empty(f.n);
    best.pair_count = 0;
    best.value = -1;

    for (int b = 0; b <= 1; ++b) {
        uint64_t z0 = size;
        for (uint64_t z = 0; z < size; ++z)
            if ((f.values[z] != 0) == (b == 1)) {
                z0 = z;
                break;
            }
        if (z0 == size) continue;  // no b-monochromatic pair exists

        Rectangle r = Rectangle::empty(f.n);
        std::vector<uint64_t> a_pts{0}, b_pts{z0};
        r.a[0] = 1;
        r.b[z0] = 1;

        // Seeded shuffled candidate cycle, alternating sides.
        Rng rng(mix_seed(seed, static_cast<uint64_t>(b)));
        std::vector<uint64_t> order(size);
        for (uint64_t i = 0; i < size; ++i) order[i] = i;
        for (uint64_t i = size - 1; i > 0; --i)
            std::swap(order[i], order[rng.below(i + 1)]);

        uint64_t cursor_a = 0, cursor_b = 0;
        for (uint64_t it = 0; it < budget; ++it) {
            const bool grow_a = (it & 1) == 0;
            uint64_t& cursor = grow_a ? cursor_a : cursor_b;
            uint64_t p = order[cursor % size];
            ++cursor;
            auto& side = grow_a ? r.a : r.b;
            if (side[p]) continue;
            const auto& other = grow_a ? b_pts : a_pts;
            bool ok = true;
            for (uint64_t q : other)
                if ((f.values[p ^ q] != 0) != (b == 1)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            side[p] = 1;
            (grow_a ? a_pts : b_pts).push_back(p);
        }

        BigInt pairs = BigInt(a_pts.size()) * BigInt(b_pts.size());
        if (pairs > best.pair_count) {
            best.rect = std::move(r);
            best.pair_count = pairs;
            best.value = b;
        }
    }
    if (best.value < 0) throw std::logic_error("mono search: function has no value at all");
    return best;
}

FamilyStats family_stats(const SubspaceFamily& fam) {
    PseudoBooleanFunction f = union_function(fam);
    BigInt ones = 0;
    for (int64_t v : f.values)
        if (v != 0) ++ones;
    return FamilyStats{ones, Rational(ones, pow2_int(fam.n))};
}

}  // namespace larclab
