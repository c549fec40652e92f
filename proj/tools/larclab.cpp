// larclab: construct, certify and analyze unions of GF(2) subspaces.
//
// Subcommands: gen-design, verify-design, fourier, pdt-lb, conjecture, rect,
// report. Every randomized path takes an explicit --seed; seeded runs emit
// byte-identical JSON regardless of --threads.

#include "larclab/commlab.hpp"
#include "larclab/designs.hpp"
#include "larclab/f2.hpp"
#include "larclab/fourier.hpp"
#include "larclab/json_io.hpp"
#include "larclab/pdt.hpp"
#include "larclab/rng.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace larclab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

struct StreamSink {
    std::ofstream file;
    bool to_file = false;

    explicit StreamSink(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open for writing: " + path);
            to_file = true;
        }
    }
    void line(const Json& j) {
        if (to_file)
            file << j.dump() << "\n" << std::flush;
        else
            std::cout << j.dump() << "\n";
    }
};

int run_gen_design(int n, int dim, int m, bool preset, bool pairwise, uint64_t seed,
                   const std::string& out) {
    if (preset) {
        PaperPreset p = paper_preset(n);
        dim = p.dim;
        m = p.m;
    }
    if (dim < 0 || m < 1) throw CLI::ValidationError("gen-design needs --dim and --m (or --preset)");
    SubspaceFamily fam = pairwise ? random_pairwise_trivial_design(n, dim, m, seed)
                                  : random_design(n, dim, m, seed);
    emit(family_to_json(fam), out);
    return kExitOk;
}

int run_verify_design(const std::string& in, int s, int h, const std::string& mode,
                      uint64_t trials, std::optional<uint64_t> seed, int threads,
                      const std::string& out) {
    SubspaceFamily fam = family_from_json(read_json_file(in));
    PairwiseReport pw = pairwise_trivial(fam);

    if (mode == "exhaustive") {
        DesignCertificate cert = certify_dual_design_exhaustive(fam, s);
        Json j = certificate_to_json(cert);
        j["pairwise_trivial"] = pw.trivial;
        emit(j, out);
        if (h >= 0 && cert.h > h) return kExitViolation;
        return kExitOk;
    }
    if (mode != "montecarlo") throw CLI::ValidationError("--mode must be exhaustive or montecarlo");
    if (!seed) throw CLI::ValidationError("montecarlo verification requires --seed");
    if (h < 0) throw CLI::ValidationError("montecarlo verification requires --h");
    MonteCarloOutcome mc = certify_dual_design_montecarlo(fam, s, h, trials, *seed, threads);
    if (mc.violation) {
        Json j;
        j["mode"] = "montecarlo";
        j["verdict"] = "violation";
        j["s"] = s;
        j["h"] = h;
        j["trial"] = mc.violating_trial;
        j["dependent_members"] = mc.violation_count;
        j["witness"] = subspace_to_json(*mc.violation);
        emit(j, out);
        return kExitViolation;
    }
    Json j = certificate_to_json(*mc.certificate);
    j["pairwise_trivial"] = pw.trivial;
    j["verdict"] = "certificate";
    emit(j, out);
    return kExitOk;
}

int run_fourier(const std::string& in_fn, const std::string& from_design, const std::string& eps_s,
                const std::string& delta_s, int grolmusz_c, bool sparsify,
                std::optional<uint64_t> seed, const std::string& out) {
    PseudoBooleanFunction f = !in_fn.empty()
                                  ? function_from_json(read_json_file(in_fn))
                                  : union_function(family_from_json(read_json_file(from_design)));
    Rational eps = parse_fraction(eps_s);
    Rational delta = parse_fraction(delta_s);
    SpectralReport rep = spectral_report(f, eps, delta, grolmusz_c);
    Json j = spectral_report_to_json(rep);
    if (sparsify) {
        if (!seed) throw CLI::ValidationError("--sparsify requires --seed");
        GrolmuszOptions opts;
        opts.c = grolmusz_c;
        GrolmuszResult g = grolmusz_sparsify(f, eps, delta, *seed, opts);
        j["grolmusz"] = grolmusz_to_json(g);
    }
    emit(j, out);
    return kExitOk;
}

int run_pdt_lb(const std::string& design, const std::string& eps_s, int cmax, int threads,
               const std::string& out) {
    SubspaceFamily fam = family_from_json(read_json_file(design));
    PseudoBooleanFunction f = union_function(fam);
    CubeDistribution mu = hard_distribution_mu(fam);
    Rational eps = parse_fraction(eps_s);
    CorruptionScanResult scan =
        corruption_scan(f, mu, eps, cmax, kDefaultCertEnumCap, threads);
    Json j = scan_to_json(scan, eps);
    if (scan.no_witness()) j["rpdt_lower_bound"] = cmax + 1;  // RPDT_eps(f) > cmax
    emit(j, out);
    return kExitOk;
}

int run_conjecture(const std::string& design, const std::string& dist_path, bool search,
                   bool affine_sanity, bool conj2, const std::string& alpha_s, double beta, int k,
                   int s, int h, uint64_t budget, uint64_t trials, std::optional<uint64_t> seed,
                   const std::string& out) {
    SubspaceFamily fam = family_from_json(read_json_file(design));
    Rational alpha = parse_fraction(alpha_s);
    ConjectureParams params{alpha, beta, k, s, h};

    if (affine_sanity) {
        if (!seed) throw CLI::ValidationError("--affine-sanity requires --seed");
        StreamSink sink(out);
        Rng base(*seed);
        bool all_ok = true;
        for (uint64_t t = 0; t < trials; ++t) {
            Rng rng = base.fork(t);
            int codim = static_cast<int>(rng.below(uint64_t(s) + 1));
            Subspace space = random_subspace(fam.n, fam.n - codim, rng);
            F2Vector shift(fam.n);
            for (int i = 0; i < fam.n; ++i) shift.set(i, rng.next_u64() & 1);
            AffineSubspace w(space, shift);
            CubeDistribution x = CubeDistribution::uniform_over_affine(w);
            ConjectureReport rep = conj2 ? conjecture2_check(x, fam, alpha, beta)
                                         : conjecture_check(x, fam, params);
            Json line = conjecture_report_to_json(rep);
            line["trial"] = t;
            line["codim"] = codim;
            sink.line(line);
            if (rep.counterexample_candidate) all_ok = false;
        }
        return all_ok ? kExitOk : kExitViolation;
    }

    if (search) {
        if (!seed) throw CLI::ValidationError("--search requires --seed");
        StreamSink sink(out);
        CounterexampleSearchResult res = counterexample_search(fam, params, budget, *seed);
        for (const auto& step : res.trace) {
            Json line;
            line["iteration"] = step.iteration;
            line["score"] = step.score;
            line["far_count"] = step.far_count;
            line["entropy"] = step.entropy;
            sink.line(line);
        }
        Json final_line = conjecture_report_to_json(res.report);
        final_line["seed"] = *seed;
        final_line["support_size"] = res.support.size();
        sink.line(final_line);
        return res.report.counterexample_candidate ? kExitViolation : kExitOk;
    }

    if (dist_path.empty())
        throw CLI::ValidationError("conjecture needs one of --dist, --search, --affine-sanity");
    CubeDistribution x = distribution_from_json(read_json_file(dist_path));
    ConjectureReport rep =
        conj2 ? conjecture2_check(x, fam, alpha, beta) : conjecture_check(x, fam, params);
    emit(conjecture_report_to_json(rep), out);
    return rep.counterexample_candidate ? kExitViolation : kExitOk;
}

int run_rect(const std::string& design, const std::string& rect_path, bool search,
             const std::string& alpha_s, const std::string& eps_s, uint64_t budget,
             std::optional<uint64_t> seed, const std::string& out) {
    SubspaceFamily fam = family_from_json(read_json_file(design));
    Rational alpha = parse_fraction(alpha_s);

    if (search) {
        if (!seed) throw CLI::ValidationError("--search requires --seed");
        PseudoBooleanFunction f = union_function(fam);
        MonoRectangle mono = mono_rectangle_search(f, budget, *seed);
        Json j;
        j["mode"] = "mono-search";
        j["value"] = mono.value;
        j["pairs"] = mono.pair_count.str();
        j["A_size"] = mono.rect.count_a();
        j["B_size"] = mono.rect.count_b();
        j["rectangle"] = rectangle_to_json(mono.rect);
        emit(j, out);
        return kExitOk;
    }

    if (rect_path.empty()) throw CLI::ValidationError("rect needs --rect or --search");
    Rectangle r = rectangle_from_json(read_json_file(rect_path));
    ProjectionReport rep = rectangle_analysis(r, fam, alpha);
    Json j;
    j["alpha"] = to_fraction_string(alpha);
    j["projections"] = projection_report_to_json(rep);
    if (!eps_s.empty()) {
        NuDistribution nu(fam);
        Rational eps = parse_fraction(eps_s);
        // Lemma-style size gate at c = 0: nu(R) >= 2^{-3}
        RectCorruptionReport rc = corruption_rectangle_check(r, nu, eps, Rational(1, 8));
        Json cj;
        cj["one_mass"] = to_fraction_string(rc.one_mass);
        cj["total_mass"] = to_fraction_string(rc.total_mass);
        cj["corruption_ok"] = rc.corruption_ok;
        cj["large_enough"] = rc.large_enough;
        j["corruption"] = cj;
    }
    bool chain_ok = true;
    for (const auto& e : rep.entries) chain_ok = chain_ok && e.chain_holds;
    j["chain_holds"] = chain_ok;
    emit(j, out);
    return chain_ok ? kExitOk : kExitViolation;
}

int run_report(const std::string& design, const std::string& out) {
    SubspaceFamily fam = family_from_json(read_json_file(design));
    FamilyStats stats = family_stats(fam);
    Json j;
    j["n"] = fam.n;
    j["m"] = fam.size();
    Json dims = Json::array();
    for (const auto& v : fam.members) dims.push_back(v.dim());
    j["dims"] = dims;
    PairwiseReport pw = pairwise_trivial(fam);
    j["pairwise_trivial"] = pw.trivial;
    if (!pw.trivial) {
        j["first_violating_pair"] = Json::array({pw.first_i, pw.first_j});
    }
    j["union_size"] = stats.union_size.str();
    j["gamma"] = to_fraction_string(stats.gamma);
    if (fam.n <= truth_table_cap()) {
        FourierSpectrum spec = wht(union_function(fam));
        j["sparsity"] = spec.sparsity();
        j["spectral_norm"] = to_fraction_string(spec.spectral_norm());
    }
    emit(j, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laboratory for unions of GF(2) subspaces: designs, Fourier "
                 "analysis, parity-decision-tree and rectangle bounds"};
    app.require_subcommand(1);
    // --h is a parameter name here, so help is long-form only.
    app.set_help_flag("--help", "print help");

    // gen-design
    auto* gen = app.add_subcommand("gen-design", "sample a random subspace family");
    int gen_n = 0, gen_dim = -1, gen_m = -1;
    uint64_t gen_seed = 0;
    bool gen_preset = false, gen_pairwise = false;
    std::string gen_out;
    gen->add_option("--n", gen_n, "ambient dimension")->required();
    gen->add_option("--dim", gen_dim, "member dimension");
    gen->add_option("--m", gen_m, "number of members");
    gen->add_flag("--preset", gen_preset, "use the preset dim = 2n/5, m = 100n");
    gen->add_flag("--pairwise-trivial", gen_pairwise,
                  "redraw members until all pairwise intersections are trivial");
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // verify-design
    auto* verify = app.add_subcommand("verify-design", "certify (s,h)-dual-design parameters");
    verify->set_help_flag("--help", "print help");
    std::string ver_in, ver_mode = "exhaustive", ver_out;
    int ver_s = 0, ver_h = -1, ver_threads = 1;
    uint64_t ver_trials = 1000;
    std::optional<uint64_t> ver_seed;
    verify->add_option("--in", ver_in, "family JSON")->required();
    verify->add_option("--s", ver_s, "max codimension to test")->required();
    verify->add_option("--h", ver_h, "claimed bound on dependent members");
    verify->add_option("--mode", ver_mode, "exhaustive | montecarlo");
    verify->add_option("--trials", ver_trials, "montecarlo trials");
    verify->add_option("--seed", ver_seed, "RNG seed (montecarlo)");
    verify->add_option("--threads", ver_threads, "worker threads");
    verify->add_option("--out", ver_out, "output file (default stdout)");

    // fourier
    auto* fourier_cmd = app.add_subcommand("fourier", "exact spectral report");
    std::string f_in, f_design, f_eps = "0", f_delta = "1/10", f_out;
    int f_c = 4;
    bool f_sparsify = false;
    std::optional<uint64_t> f_seed;
    fourier_cmd->add_option("--in", f_in, "function JSON");
    fourier_cmd->add_option("--from-design", f_design, "family JSON; analyze its union function");
    fourier_cmd->add_option("--eps", f_eps, "approximator error (rational)");
    fourier_cmd->add_option("--delta", f_delta, "target sup-norm error (rational)");
    fourier_cmd->add_option("--grolmusz-c", f_c, "constant in the sample cap");
    fourier_cmd->add_flag("--sparsify", f_sparsify, "run the sampling sparsifier");
    fourier_cmd->add_option("--seed", f_seed, "RNG seed (--sparsify)");
    fourier_cmd->add_option("--out", f_out, "output file (default stdout)");

    // pdt-lb
    auto* pdt_cmd = app.add_subcommand("pdt-lb", "corruption scan under the hard distribution");
    std::string p_design, p_eps, p_out;
    int p_cmax = 1, p_threads = 1;
    pdt_cmd->add_option("--design", p_design, "family JSON")->required();
    pdt_cmd->add_option("--eps", p_eps, "error parameter (rational)")->required();
    pdt_cmd->add_option("--cmax", p_cmax, "max codimension to scan")->required();
    pdt_cmd->add_option("--threads", p_threads, "worker threads");
    pdt_cmd->add_option("--out", p_out, "output file (default stdout)");

    // conjecture
    auto* conj = app.add_subcommand("conjecture", "entropy-loss conjecture checks");
    conj->set_help_flag("--help", "print help");
    std::string c_design, c_dist, c_alpha = "1/2", c_out;
    bool c_search = false, c_sanity = false, c_conj2 = false;
    double c_beta = 0.1;
    int c_k = 1, c_s = 0, c_h = 0;
    uint64_t c_budget = 10000, c_trials = 50;
    std::optional<uint64_t> c_seed;
    conj->add_option("--design", c_design, "family JSON")->required();
    conj->add_option("--dist", c_dist, "distribution JSON to check");
    conj->add_flag("--search", c_search, "anneal for a counterexample candidate");
    conj->add_flag("--affine-sanity", c_sanity, "check uniform-affine inputs");
    conj->add_flag("--conj2", c_conj2, "use the m/3, n - beta*n specialization");
    conj->add_option("--alpha", c_alpha, "distance threshold (rational)");
    conj->add_option("--beta", c_beta, "entropy-loss rate");
    conj->add_option("--k", c_k, "hypothesis multiplier");
    conj->add_option("--s", c_s, "certificate parameter s");
    conj->add_option("--h", c_h, "certificate parameter h");
    conj->add_option("--budget", c_budget, "search iterations");
    conj->add_option("--trials", c_trials, "affine-sanity trials");
    conj->add_option("--seed", c_seed, "RNG seed");
    conj->add_option("--out", c_out, "output file; search/sanity stream JSON lines");

    // rect
    auto* rect_cmd = app.add_subcommand("rect", "rectangle projection analysis");
    std::string r_design, r_rect, r_alpha = "1/2", r_eps, r_out;
    bool r_search = false;
    uint64_t r_budget = 10000;
    std::optional<uint64_t> r_seed;
    rect_cmd->add_option("--design", r_design, "family JSON")->required();
    rect_cmd->add_option("--rect", r_rect, "rectangle JSON to analyze");
    rect_cmd->add_flag("--search", r_search, "grow a monochromatic rectangle");
    rect_cmd->add_option("--alpha", r_alpha, "distance threshold (rational)");
    rect_cmd->add_option("--eps", r_eps, "also run the corruption check at this eps");
    rect_cmd->add_option("--budget", r_budget, "search iterations");
    rect_cmd->add_option("--seed", r_seed, "RNG seed (--search)");
    rect_cmd->add_option("--out", r_out, "output file (default stdout)");

    // report
    auto* rep_cmd = app.add_subcommand("report", "summary statistics of a family");
    std::string rep_design, rep_out;
    rep_cmd->add_option("--design", rep_design, "family JSON")->required();
    rep_cmd->add_option("--out", rep_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_gen_design(gen_n, gen_dim, gen_m, gen_preset, gen_pairwise, gen_seed,
                                  gen_out);
        if (verify->parsed())
            return run_verify_design(ver_in, ver_s, ver_h, ver_mode, ver_trials, ver_seed,
                                     ver_threads, ver_out);
        if (fourier_cmd->parsed())
            return run_fourier(f_in, f_design, f_eps, f_delta, f_c, f_sparsify, f_seed, f_out);
        if (pdt_cmd->parsed()) return run_pdt_lb(p_design, p_eps, p_cmax, p_threads, p_out);
        if (conj->parsed())
            return run_conjecture(c_design, c_dist, c_search, c_sanity, c_conj2, c_alpha, c_beta,
                                  c_k, c_s, c_h, c_budget, c_trials, c_seed, c_out);
        if (rect_cmd->parsed())
            return run_rect(r_design, r_rect, r_search, r_alpha, r_eps, r_budget, r_seed, r_out);
        if (rep_cmd->parsed()) return run_report(rep_design, rep_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
