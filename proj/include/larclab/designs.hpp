#pragma once

#include "larclab/f2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace larclab {

struct FamilyMeta {
    uint64_t seed = 0;
    int dim = -1;  // -1 when members were not drawn with a common dimension
    int m = 0;
    std::string name;
};

struct SubspaceFamily {
    int n = 0;
    std::vector<Subspace> members;
    FamilyMeta meta;

    int size() const { return static_cast<int>(members.size()); }
};

SubspaceFamily make_family(int n, std::vector<Subspace> members, FamilyMeta meta = {});

struct PairwiseReport {
    bool trivial = true;
    int first_i = -1;  // first violating pair, 0-based, when !trivial
    int first_j = -1;
};
PairwiseReport pairwise_trivial(const SubspaceFamily& fam);

enum class CertMode { Exhaustive, MonteCarlo };

struct DesignCertificate {
    CertMode mode;
    int s = 0;
    int h = 0;
    uint64_t trials = 0;  // MonteCarlo only
    uint64_t seed = 0;    // MonteCarlo only
    // Linear witness subspace achieving h (Exhaustive) / worst sampled
    // (MonteCarlo); absent when h = 0 witnesses are trivial.
    std::optional<Subspace> worst_witness;
};

inline constexpr long long kDefaultCertEnumCap = 10'000'000;

// Enumerates every linear W of codim <= s (via its dual T of dim <= s, per the
// independence characterization) and returns the minimal h. Throws
// EnumerationCapError naming the Gaussian-binomial count when it exceeds cap.
DesignCertificate certify_dual_design_exhaustive(const SubspaceFamily& fam, int s,
                                                 const BigInt& cap = kDefaultCertEnumCap);

struct MonteCarloOutcome {
    std::optional<DesignCertificate> certificate;  // set when no violation found
    std::optional<Subspace> violation;             // sampled W with > h dependent members
    uint64_t violating_trial = 0;
    int violation_count = 0;
};

// Samples `trials` uniform subspaces W of codim exactly s. Per-trial RNG
// streams derive from (seed, trial index), so the outcome is independent of
// the worker count.
MonteCarloOutcome certify_dual_design_montecarlo(const SubspaceFamily& fam, int s, int h,
                                                 uint64_t trials, uint64_t seed,
                                                 int threads = 1);

// Number of members with nonempty intersection with W.
int hitting_check(const SubspaceFamily& fam, const AffineSubspace& w);

SubspaceFamily random_design(int n, int dim, int m, uint64_t seed);

// Same, but each member is redrawn until it meets all previous members only
// at 0.
SubspaceFamily random_pairwise_trivial_design(int n, int dim, int m, uint64_t seed,
                                              uint64_t max_redraws = 100000);

struct PaperPreset {
    int dim;  // floor(2n/5)
    int m;    // 100n
};
PaperPreset paper_preset(int n);

}  // namespace larclab
