#include "larclab/pdt.hpp"

#include "larclab/parallel.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace larclab {

ParityDecisionTree ParityDecisionTree::leaf(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("leaf label must be 0 or 1");
    ParityDecisionTree t;
    Node n;
    n.leaf_value = bit;
    t.nodes_.push_back(n);
    return t;
}

ParityDecisionTree ParityDecisionTree::query(uint64_t mask, ParityDecisionTree on0,
                                             ParityDecisionTree on1) {
    if (mask == 0) throw std::invalid_argument("empty parity masks are not allowed");
    ParityDecisionTree t;
    t.nodes_ = std::move(on0.nodes_);
    const int root0 = static_cast<int>(t.nodes_.size()) - 1;
    const int offset = static_cast<int>(t.nodes_.size());
    for (Node n : on1.nodes_) {
        if (n.child0 >= 0) n.child0 += offset;
        if (n.child1 >= 0) n.child1 += offset;
        t.nodes_.push_back(n);
    }
    const int root1 = static_cast<int>(t.nodes_.size()) - 1;
    Node root;
    root.mask = mask;
    root.child0 = root0;
    root.child1 = root1;
    t.nodes_.push_back(root);
    return t;
}

int ParityDecisionTree::eval(uint64_t x) const {
    int cur = static_cast<int>(nodes_.size()) - 1;
    for (;;) {
        const Node& n = nodes_[cur];
        if (n.mask == 0) return n.leaf_value;
        cur = (std::popcount(n.mask & x) & 1) ? n.child1 : n.child0;
    }
}

int ParityDecisionTree::depth() const {
    // depth via one bottom-up pass; children always precede parents
    std::vector<int> d(nodes_.size(), 0);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].mask != 0)
            d[i] = 1 + std::max(d[nodes_[i].child0], d[nodes_[i].child1]);
    }
    return d.back();
}

bool soundness_check(const ParityDecisionTree& tree, const PseudoBooleanFunction& f) {
    if (!f.is_boolean()) throw std::invalid_argument("soundness_check needs a boolean table");
    const int64_t one = int64_t(1) << f.scale_pow2;
    for (uint64_t x = 0; x < f.size(); ++x)
        if (tree.eval(x) != (f.values[x] == one ? 1 : 0)) return false;
    return true;
}

namespace {

// Recursion state for optimal_depth: the set of inputs consistent with the
// parity answers so far, as a bitset over {0,1}^n (n <= 6).
struct DepthSolver {
    int n;
    uint64_t all;  // 2^n bits set; for n = 6 this is ~0
    const std::vector<int64_t>& table;
    std::unordered_map<uint64_t, int> memo;
    std::vector<uint64_t> parity_points;  // parity_points[mask] = bitset of x with <mask,x> = 1

    explicit DepthSolver(const PseudoBooleanFunction& f) : n(f.n), table(f.values) {
        const uint64_t size = uint64_t(1) << n;
        all = (size == 64) ? ~uint64_t(0) : ((uint64_t(1) << size) - 1);
        parity_points.assign(size, 0);
        for (uint64_t mask = 1; mask < size; ++mask)
            for (uint64_t x = 0; x < size; ++x)
                if (std::popcount(mask & x) & 1) parity_points[mask] |= uint64_t(1) << x;
    }

    // -1 not constant, else the constant value on the set
    int constant_on(uint64_t set) const {
        int seen = -1;
        for (uint64_t rest = set; rest;) {
            int x = std::countr_zero(rest);
            rest &= rest - 1;
            int v = table[x] ? 1 : 0;
            if (seen < 0)
                seen = v;
            else if (seen != v)
                return -1;
        }
        return seen;
    }

    int solve(uint64_t set) {
        if (auto it = memo.find(set); it != memo.end()) return it->second;
        if (constant_on(set) >= 0) {
            memo.emplace(set, 0);
            return 0;
        }
        const uint64_t size = uint64_t(1) << n;
        int best = n + 1;
        for (uint64_t mask = 1; mask < size; ++mask) {
            uint64_t on1 = set & parity_points[mask];
            uint64_t on0 = set & ~parity_points[mask];
            if (on0 == 0 || on1 == 0) continue;  // parity constant here, no split
            int d = 1 + std::max(solve(on0), solve(on1));
            if (d < best) best = d;
        }
        memo.emplace(set, best);
        return best;
    }

    ParityDecisionTree build(uint64_t set) {
        int c = constant_on(set);
        if (c >= 0) return ParityDecisionTree::leaf(c);
        const int want = solve(set);
        const uint64_t size = uint64_t(1) << n;
        for (uint64_t mask = 1; mask < size; ++mask) {
            uint64_t on1 = set & parity_points[mask];
            uint64_t on0 = set & ~parity_points[mask];
            if (on0 == 0 || on1 == 0) continue;
            if (1 + std::max(solve(on0), solve(on1)) == want)
                return ParityDecisionTree::query(mask, build(on0), build(on1));
        }
        throw std::logic_error("optimal_depth: no mask reproduces the memoized depth");
    }
};

}  // namespace

OptimalDepthResult optimal_depth(const PseudoBooleanFunction& f, int max_n) {
    if (f.n > max_n || f.n > 6)
        throw EnumerationCapError("optimal_depth refused: n=" + std::to_string(f.n) +
                                  " exceeds cap " + std::to_string(std::min(max_n, 6)));
    if (!f.is_boolean()) throw std::invalid_argument("optimal_depth needs a boolean table");
    DepthSolver solver(f);
    OptimalDepthResult res;
    res.depth = solver.solve(solver.all);
    res.tree = solver.build(solver.all);
    return res;
}

CubeDistribution CubeDistribution::uniform(int n) {
    CubeDistribution d{n, std::vector<Rational>(uint64_t(1) << n, pow2_rat(-n))};
    return d;
}

CubeDistribution CubeDistribution::point_mass(int n, uint64_t x) {
    CubeDistribution d{n, std::vector<Rational>(uint64_t(1) << n, Rational(0))};
    d.probs.at(x) = 1;
    return d;
}

CubeDistribution CubeDistribution::uniform_over(int n, const std::vector<uint64_t>& support) {
    if (support.empty()) throw std::invalid_argument("empty support");
    CubeDistribution d{n, std::vector<Rational>(uint64_t(1) << n, Rational(0))};
    Rational p(1, BigInt(support.size()));
    for (uint64_t x : support) {
        if (d.probs.at(x) != 0) throw std::invalid_argument("duplicate support point");
        d.probs[x] = p;
    }
    return d;
}

CubeDistribution CubeDistribution::uniform_over_affine(const AffineSubspace& w) {
    CubeDistribution d{w.ambient(),
                       std::vector<Rational>(uint64_t(1) << w.ambient(), Rational(0))};
    Rational p = pow2_rat(-w.dim());
    for (const auto& x : w.elements()) d.probs[x.to_index()] = p;
    return d;
}

void CubeDistribution::validate() const {
    if (probs.size() != (uint64_t(1) << n))
        throw std::invalid_argument("distribution table length is not 2^n");
    Rational total = 0;
    for (const auto& p : probs) {
        if (p < 0) throw std::invalid_argument("negative probability");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities sum to " + to_fraction_string(total));
}

CubeDistribution hard_distribution_mu(const SubspaceFamily& fam) {
    PseudoBooleanFunction f = union_function(fam);
    const uint64_t size = f.size();
    uint64_t zeros = 0;
    for (uint64_t x = 0; x < size; ++x)
        if (f.values[x] == 0) ++zeros;
    if (zeros == 0)
        throw std::invalid_argument("hard distribution undefined: union covers the whole cube");

    CubeDistribution mu{fam.n, std::vector<Rational>(size, Rational(0))};
    const Rational zero_share = Rational(1, 2 * BigInt(zeros));
    for (uint64_t x = 0; x < size; ++x)
        if (f.values[x] == 0) mu.probs[x] = zero_share;

    const Rational member_share = Rational(1, 2 * BigInt(fam.size()));
    for (const auto& v : fam.members) {
        Rational per_point = member_share * pow2_rat(-v.dim());
        v.for_each([&](const F2Vector& x) { mu.probs[x.to_index()] += per_point; });
    }
    return mu;
}

namespace {

struct ScanHit {
    uint64_t order = UINT64_MAX;  // global enumeration index, for deterministic reduction
    Subspace dual_lines{0};
    uint64_t shift_labels = 0;
    Rational one_mass, total_mass;
};

}  // namespace

CorruptionScanResult corruption_scan(const PseudoBooleanFunction& f, const CubeDistribution& mu,
                                     const Rational& eps, int c_max, const BigInt& cap,
                                     int threads) {
    if (f.n != mu.n) throw DimensionMismatchError("corruption_scan: f and mu dimensions differ");
    if (c_max < 0 || c_max > f.n) throw std::invalid_argument("corruption_scan: bad c_max");

    BigInt count = 0;
    for (int c = 0; c <= c_max; ++c) count += gaussian_binomial(f.n, c) * pow2_int(c);
    if (count > cap)
        throw EnumerationCapError("corruption scan refused: " + count.str() +
                                  " affine subspaces exceed cap " + cap.str());

    const uint64_t size = f.size();
    CorruptionScanResult res;
    res.c_scanned = c_max;

    for (int c = 0; c <= c_max && !res.witness; ++c) {
        // All dual-line spans of dimension c, in canonical order.
        std::vector<Subspace> spans;
        for_each_subspace(f.n, c, [&](const Subspace& t) { spans.push_back(t); });

        std::vector<ScanHit> hits(std::max(1, threads));
        parallel_chunks(spans.size(), threads, [&](int chunk, uint64_t begin, uint64_t end) {
            ScanHit& best = hits[chunk];
            for (uint64_t ti = begin; ti < end; ++ti) {
                const auto& lines = spans[ti].basis().rows;
                // label(x): parity answers against the c dual lines
                std::vector<uint64_t> label(size, 0);
                for (uint64_t x = 0; x < size; ++x) {
                    uint64_t a = 0;
                    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
                        uint64_t l = lines[i].to_index();
                        a |= uint64_t(std::popcount(l & x) & 1) << i;
                    }
                    label[x] = a;
                }
                const uint64_t shifts = uint64_t(1) << c;
                std::vector<Rational> total(shifts, Rational(0)), ones(shifts, Rational(0));
                for (uint64_t x = 0; x < size; ++x) {
                    total[label[x]] += mu.probs[x];
                    if (f.values[x] != 0) ones[label[x]] += mu.probs[x];
                }
                for (uint64_t a = 0; a < shifts; ++a) {
                    if (ones[a] <= Rational(4) * eps * total[a]) {
                        uint64_t order = ti * shifts + a;
                        if (order < best.order) {
                            best.order = order;
                            best.dual_lines = spans[ti];
                            best.shift_labels = a;
                            best.one_mass = ones[a];
                            best.total_mass = total[a];
                        }
                        break;  // lowest shift label for this span is enough
                    }
                }
            }
        });

        ScanHit merged;
        for (auto& hit : hits)
            if (hit.order < merged.order) merged = std::move(hit);

        if (merged.order != UINT64_MAX) {
            // Reconstruct W = {x : <l_i, x> = a_i} as an affine subspace.
            const auto& lines = merged.dual_lines.basis().rows;
            F2Vector shift(f.n);
            for (uint64_t x = 0; x < size; ++x) {
                bool ok = true;
                for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
                    uint64_t l = lines[i].to_index();
                    if (uint64_t(std::popcount(l & x) & 1) != ((merged.shift_labels >> i) & 1)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    shift = F2Vector::from_index(f.n, x);
                    break;
                }
            }
            res.witness = CorruptionWitness{
                AffineSubspace(dual_space(merged.dual_lines), shift),
                merged.one_mass, merged.total_mass, eps};
        }
    }
    return res;
}

TheoremThreshold theorem_threshold(const SubspaceFamily& fam, const DesignCertificate& cert) {
    PseudoBooleanFunction f = union_function(fam);
    BigInt zeros = 0;
    for (int64_t v : f.values)
        if (v == 0) ++zeros;
    const int m = fam.size();
    TheoremThreshold t;
    t.s = cert.s;
    t.epsilon_star =
        Rational(m - cert.h, 8 * BigInt(m)) * Rational(zeros, pow2_int(fam.n));
    return t;
}

}  // namespace larclab
