#pragma once

#include "larclab/designs.hpp"
#include "larclab/f2.hpp"
#include "larclab/fourier.hpp"
#include "larclab/pdt.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace larclab {

class Rng;

// A x B as bitsets over {0,1}^n.
struct Rectangle {
    int n = 0;
    std::vector<uint8_t> a;  // size 2^n, 0/1
    std::vector<uint8_t> b;

    static Rectangle full(int n);
    static Rectangle empty(int n);

    uint64_t size() const { return uint64_t(1) << n; }
    uint64_t count_a() const;
    uint64_t count_b() const;
    std::string a_hex() const;
    std::string b_hex() const;
    static Rectangle from_hex(int n, const std::string& a_hex, const std::string& b_hex);
};

bool sv_member(const Subspace& v, uint64_t x, uint64_t y);
// |S_V| = 2^n |V|
BigInt sv_size(int n, const Subspace& v);

// The pair distribution: half the mass uniform on F^{-1}(0) for F = f o XOR,
// half spread over the S_V sets (uniform member, then uniform pair). Masses
// depend on (x,y) only through x xor y and are exposed through an exact
// oracle; full 2^{2n} tables are never materialized.
class NuDistribution {
public:
    explicit NuDistribution(const SubspaceFamily& fam);

    int n() const { return fam_.n; }
    const SubspaceFamily& family() const { return fam_; }
    bool f_value(uint64_t z) const { return f_.values[z] != 0; }

    Rational mass_of_xor(uint64_t z) const;  // nu(x, y) for any pair with x^y = z
    Rational mass(uint64_t x, uint64_t y) const { return mass_of_xor(x ^ y); }

    std::pair<uint64_t, uint64_t> sample(Rng& rng) const;

private:
    SubspaceFamily fam_;
    PseudoBooleanFunction f_;
    BigInt zero_pairs_;               // |F^{-1}(0)| = 2^n |f^{-1}(0)|
    std::vector<uint64_t> zero_points_;
    std::vector<Rational> one_mass_by_xor_;  // per z with f(z)=1
};

// Pushforward of X along the canonical coset map of V: label -> mass.
std::vector<Rational> coset_pushforward(const CubeDistribution& x, const Subspace& v);
// Pushforward of the uniform distribution over a subset (bitset of size 2^n).
std::vector<Rational> coset_pushforward_subset(const std::vector<uint8_t>& subset,
                                               const Subspace& v);
Rational l1_to_uniform(const std::vector<Rational>& pushforward);

double entropy_bits(const CubeDistribution& x);

struct ConjectureParams {
    Rational alpha = Rational(1, 2);  // experimental knobs; the statements
    double beta = 0.1;                // leave these existential
    int k = 1;
    int s = 0;  // from a design certificate
    int h = 0;
};

struct ConjectureReport {
    int far_count = 0;           // #{i : ||B_i(X) - U||_1 >= alpha}
    int required_far = 0;        // hypothesis threshold (k*h for Conj 1, ceil(m/3) for Conj 2)
    bool hypothesis_met = false; // far_count exceeds/meets the threshold
    double entropy = 0.0;
    double entropy_bound = 0.0;  // n - beta*s (Conj 1) or n - beta*n (Conj 2)
    double margin = 0.0;         // entropy_bound - entropy
    bool consistent = true;      // vacuously true when the hypothesis fails
    bool counterexample_candidate = false;
};

// Conjecture-1 shape: hypothesis far_count > k*h, conclusion H <= n - beta*s.
ConjectureReport conjecture_check(const CubeDistribution& x, const SubspaceFamily& fam,
                                  const ConjectureParams& params);
// Conjecture-2 specialization: threshold far_count >= m/3, bound n - beta*n.
ConjectureReport conjecture2_check(const CubeDistribution& x, const SubspaceFamily& fam,
                                   const Rational& alpha, double beta);

struct SearchStep {
    uint64_t iteration = 0;
    double score = 0.0;
    int far_count = 0;
    double entropy = 0.0;
};

struct CounterexampleSearchResult {
    std::vector<uint64_t> support;  // best support found (X uniform over it)
    ConjectureReport report;
    double best_score = 0.0;
    std::vector<SearchStep> trace;  // improvements only
};

// Simulated annealing over support sets, maximizing H(X) = log2|support|
// subject to the far-count hypothesis. Only ever reports candidates.
CounterexampleSearchResult counterexample_search(const SubspaceFamily& fam,
                                                 const ConjectureParams& params,
                                                 uint64_t budget, uint64_t seed);

struct ProjectionEntry {
    int member = 0;
    int codim = 0;
    Rational collision;  // Pr_{x~A, y~B}[coset(x) = coset(y)]
    Rational dist_a;     // ||A_V - U||_1
    Rational dist_b;
    bool far = false;    // max(dist_a, dist_b) >= alpha
    bool chain_holds = true;
};

struct ProjectionReport {
    std::vector<ProjectionEntry> entries;
};

ProjectionReport rectangle_analysis(const Rectangle& r, const SubspaceFamily& fam,
                                    const Rational& alpha);

// The per-rectangle distance chain: collision < (1-alpha)^2/4 * 2^{-codim}
// implies ||A_V - B_V||_1 >= 2*alpha and max(dA, dB) >= alpha. Returns whether
// the implication holds for this instance.
bool appendix_chain_check(const Rectangle& r, const Subspace& v, const Rational& alpha);

struct RectCorruptionReport {
    Rational one_mass;    // nu(R cap F^{-1}(1))
    Rational total_mass;  // nu(R)
    bool corruption_ok = false;  // one_mass <= 4 eps total_mass
    bool large_enough = false;   // total_mass >= size_threshold
};
RectCorruptionReport corruption_rectangle_check(const Rectangle& r, const NuDistribution& nu,
                                                const Rational& eps,
                                                const Rational& size_threshold);

struct MonoRectangle {
    Rectangle rect;
    int value = 0;      // the constant F-value on A x B
    BigInt pair_count;  // |A| * |B|
};

// Heuristic greedy growth with seeded ordering; no optimality claim.
MonoRectangle mono_rectangle_search(const PseudoBooleanFunction& f, uint64_t budget,
                                    uint64_t seed);

struct FamilyStats {
    BigInt union_size;
    Rational gamma;  // |union| / 2^n
};
FamilyStats family_stats(const SubspaceFamily& fam);

}  // namespace larclab
