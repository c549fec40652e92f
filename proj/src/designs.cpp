#include "larclab/designs.hpp"

#include "larclab/parallel.hpp"
#include "larclab/rng.hpp"

#include <algorithm>
#include <mutex>

namespace larclab {

SubspaceFamily make_family(int n, std::vector<Subspace> members, FamilyMeta meta) {
    if (members.empty()) throw std::invalid_argument("family needs at least one member");
    for (const auto& s : members)
        if (s.ambient() != n)
            throw DimensionMismatchError("family member has wrong ambient dimension");
    meta.m = static_cast<int>(members.size());
    return SubspaceFamily{n, std::move(members), std::move(meta)};
}

PairwiseReport pairwise_trivial(const SubspaceFamily& fam) {
    for (int i = 0; i < fam.size(); ++i) {
        for (int j = i + 1; j < fam.size(); ++j) {
            // dim(S)+dim(T) = dim(S+T) exactly when the intersection is {0}
            if (sum(fam.members[i], fam.members[j]).dim() !=
                fam.members[i].dim() + fam.members[j].dim())
                return {false, i, j};
        }
    }
    return {true, -1, -1};
}

DesignCertificate certify_dual_design_exhaustive(const SubspaceFamily& fam, int s,
                                                 const BigInt& cap) {
    if (s < 0 || s > fam.n) throw std::invalid_argument("certify: need 0 <= s <= n");
    BigInt count = 0;
    for (int d = 1; d <= s; ++d) count += gaussian_binomial(fam.n, d);
    if (count > cap)
        throw EnumerationCapError("exhaustive certification refused: " + count.str() +
                                  " candidate subspaces exceed cap " + cap.str());

    std::vector<Subspace> duals;
    duals.reserve(fam.members.size());
    for (const auto& v : fam.members) duals.push_back(dual_space(v));

    int h = 0;
    std::optional<Subspace> witness;
    for (int d = 1; d <= s; ++d) {
        for_each_subspace(fam.n, d, [&](const Subspace& t) {
            int dependent = 0;
            for (const auto& dual : duals)
                if (intersect(dual, t).dim() != 0) ++dependent;
            if (dependent > h) {
                h = dependent;
                witness = dual_space(t);
            }
        });
    }
    DesignCertificate cert;
    cert.mode = CertMode::Exhaustive;
    cert.s = s;
    cert.h = h;
    cert.worst_witness = std::move(witness);
    return cert;
}

MonteCarloOutcome certify_dual_design_montecarlo(const SubspaceFamily& fam, int s, int h,
                                                 uint64_t trials, uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("montecarlo certification needs trials >= 1");
    if (s < 0 || s > fam.n) throw std::invalid_argument("certify: need 0 <= s <= n");

    std::vector<Subspace> duals;
    duals.reserve(fam.members.size());
    for (const auto& v : fam.members) duals.push_back(dual_space(v));

    struct ChunkResult {
        uint64_t first_bad = UINT64_MAX;
        Subspace bad_w{0};
        int bad_count = 0;
        int worst_count = -1;
        uint64_t worst_trial = UINT64_MAX;
        Subspace worst_w{0};
    };
    std::vector<ChunkResult> results(std::max(1, threads));
    const Rng base(seed);

    parallel_chunks(trials, threads, [&](int chunk, uint64_t begin, uint64_t end) {
        ChunkResult& out = results[chunk];
        for (uint64_t t = begin; t < end; ++t) {
            Rng rng = base.fork(t);
            Subspace dual_w = random_subspace(fam.n, s, rng);  // W has codim exactly s
            int dependent = 0;
            for (const auto& dual : duals)
                if (intersect(dual, dual_w).dim() != 0) ++dependent;
            if (dependent > out.worst_count ||
                (dependent == out.worst_count && t < out.worst_trial)) {
                out.worst_count = dependent;
                out.worst_trial = t;
                out.worst_w = dual_space(dual_w);
            }
            if (dependent > h && t < out.first_bad) {
                out.first_bad = t;
                out.bad_w = dual_space(dual_w);
                out.bad_count = dependent;
            }
        }
    });

    // Merge by global trial index so the result is thread-count independent.
    ChunkResult merged;
    for (const auto& r : results) {
        if (r.first_bad < merged.first_bad) {
            merged.first_bad = r.first_bad;
            merged.bad_w = r.bad_w;
            merged.bad_count = r.bad_count;
        }
        if (r.worst_count > merged.worst_count ||
            (r.worst_count == merged.worst_count && r.worst_trial < merged.worst_trial)) {
            merged.worst_count = r.worst_count;
            merged.worst_trial = r.worst_trial;
            merged.worst_w = r.worst_w;
        }
    }

    MonteCarloOutcome out;
    if (merged.first_bad != UINT64_MAX) {
        out.violation = merged.bad_w;
        out.violating_trial = merged.first_bad;
        out.violation_count = merged.bad_count;
        return out;
    }
    DesignCertificate cert;
    cert.mode = CertMode::MonteCarlo;
    cert.s = s;
    cert.h = h;
    cert.trials = trials;
    cert.seed = seed;
    if (merged.worst_count >= 0) cert.worst_witness = merged.worst_w;
    out.certificate = std::move(cert);
    return out;
}

int hitting_check(const SubspaceFamily& fam, const AffineSubspace& w) {
    int count = 0;
    for (const auto& v : fam.members) {
        AffineSubspace linear_v(v, F2Vector(fam.n));
        if (affine_intersect(linear_v, w)) ++count;
    }
    return count;
}

SubspaceFamily random_design(int n, int dim, int m, uint64_t seed) {
    if (m < 1) throw std::invalid_argument("random_design needs m >= 1");
    std::vector<Subspace> members;
    members.reserve(m);
    Rng base(seed);
    for (int i = 0; i < m; ++i) {
        Rng rng = base.fork(i);
        members.push_back(random_subspace(n, dim, rng));
    }
    FamilyMeta meta;
    meta.seed = seed;
    meta.dim = dim;
    meta.name = "random";
    return make_family(n, std::move(members), meta);
}

SubspaceFamily random_pairwise_trivial_design(int n, int dim, int m, uint64_t seed,
                                              uint64_t max_redraws) {
    if (m < 1) throw std::invalid_argument("random_pairwise_trivial_design needs m >= 1");
    std::vector<Subspace> members;
    members.reserve(m);
    Rng base(seed);
    uint64_t draw = 0;
    while (static_cast<int>(members.size()) < m) {
        if (draw >= max_redraws)
            throw std::runtime_error("pairwise-trivial rejection sampling exceeded " +
                                     std::to_string(max_redraws) + " draws");
        Rng rng = base.fork(draw++);
        Subspace candidate = random_subspace(n, dim, rng);
        bool ok = true;
        for (const auto& prev : members) {
            if (sum(prev, candidate).dim() != prev.dim() + candidate.dim()) {
                ok = false;
                break;
            }
        }
        if (ok) members.push_back(std::move(candidate));
    }
    FamilyMeta meta;
    meta.seed = seed;
    meta.dim = dim;
    meta.name = "random-pairwise-trivial";
    return make_family(n, std::move(members), meta);
}

PaperPreset paper_preset(int n) { return PaperPreset{(2 * n) / 5, 100 * n}; }

}  // namespace larclab
