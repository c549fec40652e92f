#pragma once

#include "larclab/designs.hpp"
#include "larclab/f2.hpp"
#include "larclab/fourier.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace larclab {

// Parity decision tree. Internal nodes query the parity of a nonempty mask
// and branch on the answer; leaves output a bit. Cost is the tree height.
class ParityDecisionTree {
public:
    static ParityDecisionTree leaf(int bit);
    static ParityDecisionTree query(uint64_t mask, ParityDecisionTree on0, ParityDecisionTree on1);

    int eval(uint64_t x) const;
    int depth() const;
    int node_count() const { return static_cast<int>(nodes_.size()); }

private:
    struct Node {
        uint64_t mask = 0;  // 0 marks a leaf
        int child0 = -1;
        int child1 = -1;
        int leaf_value = -1;
    };
    std::vector<Node> nodes_;  // root is nodes_.back()
};

// Exhaustive comparison against a 0/1 truth table.
bool soundness_check(const ParityDecisionTree& tree, const PseudoBooleanFunction& f);

struct OptimalDepthResult {
    int depth = 0;
    ParityDecisionTree tree;
};

// Exact deterministic PDT depth via recursion over affine restrictions,
// memoized on the reachable input set. Ties break to the numerically
// smallest parity mask, branch 0 first.
OptimalDepthResult optimal_depth(const PseudoBooleanFunction& f, int max_n = 5);

struct CubeDistribution {
    int n = 0;
    std::vector<Rational> probs;  // size 2^n, sums to 1

    static CubeDistribution uniform(int n);
    static CubeDistribution point_mass(int n, uint64_t x);
    static CubeDistribution uniform_over(int n, const std::vector<uint64_t>& support);
    static CubeDistribution uniform_over_affine(const AffineSubspace& w);

    uint64_t size() const { return uint64_t(1) << n; }
    void validate() const;
};

// mu: half the mass uniform on f^{-1}(0), half spread over the members
// (uniform member, then uniform element). Throws when f is identically 1.
CubeDistribution hard_distribution_mu(const SubspaceFamily& fam);

struct CorruptionWitness {
    AffineSubspace w;
    Rational one_mass;    // mu(W cap f^{-1}(1))
    Rational total_mass;  // mu(W)
    Rational epsilon;
};

struct CorruptionScanResult {
    std::optional<CorruptionWitness> witness;  // minimal codim, canonically first
    int c_scanned = 0;
    // No witness up to codim c certifies RPDT_eps(f) > c.
    bool no_witness() const { return !witness.has_value(); }
};

CorruptionScanResult corruption_scan(const PseudoBooleanFunction& f, const CubeDistribution& mu,
                                     const Rational& eps, int c_max,
                                     const BigInt& cap = kDefaultCertEnumCap, int threads = 1);

struct TheoremThreshold {
    Rational epsilon_star;  // (m-h)/(8m) * |f^{-1}(0)| / 2^n
    int s = 0;              // predicted RPDT lower bound for eps < epsilon_star
};
TheoremThreshold theorem_threshold(const SubspaceFamily& fam, const DesignCertificate& cert);

}  // namespace larclab
