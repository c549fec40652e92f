#include "larclab/json_io.hpp"

#include <fstream>

namespace larclab {

Json subspace_to_json(const Subspace& s) {
    Json j;
    j["n"] = s.ambient();
    Json basis = Json::array();
    for (const auto& row : s.basis().rows) basis.push_back(row.to_hex());
    j["basis"] = basis;
    return j;
}

Subspace subspace_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    F2Matrix m(n);
    for (const auto& row : j.at("basis"))
        m.rows.push_back(F2Vector::from_hex(n, row.get<std::string>()));
    return Subspace::span(m);
}

Json affine_to_json(const AffineSubspace& w) {
    Json j = subspace_to_json(w.space());
    j["shift"] = w.shift().to_hex();
    return j;
}

AffineSubspace affine_from_json(const Json& j) {
    Subspace s = subspace_from_json(j);
    F2Vector shift = F2Vector::from_hex(s.ambient(), j.at("shift").get<std::string>());
    return AffineSubspace(std::move(s), shift);
}

Json family_to_json(const SubspaceFamily& fam) {
    Json j;
    j["n"] = fam.n;
    Json members = Json::array();
    for (const auto& v : fam.members) members.push_back(subspace_to_json(v));
    j["members"] = members;
    Json meta;
    meta["seed"] = fam.meta.seed;
    meta["dim"] = fam.meta.dim;
    meta["m"] = fam.meta.m;
    meta["name"] = fam.meta.name;
    j["meta"] = meta;
    return j;
}

SubspaceFamily family_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    std::vector<Subspace> members;
    for (const auto& mj : j.at("members")) members.push_back(subspace_from_json(mj));
    FamilyMeta meta;
    if (j.contains("meta")) {
        const auto& mj = j["meta"];
        meta.seed = mj.value("seed", uint64_t(0));
        meta.dim = mj.value("dim", -1);
        meta.name = mj.value("name", std::string());
    }
    return make_family(n, std::move(members), std::move(meta));
}

Json certificate_to_json(const DesignCertificate& cert) {
    Json j;
    j["mode"] = cert.mode == CertMode::Exhaustive ? "exhaustive" : "montecarlo";
    j["s"] = cert.s;
    j["h"] = cert.h;
    if (cert.mode == CertMode::MonteCarlo) {
        j["trials"] = cert.trials;
        j["seed"] = cert.seed;
        j["proof"] = false;  // statistical evidence, not a certificate of the property
    } else {
        j["proof"] = true;
    }
    j["witness"] = cert.worst_witness ? subspace_to_json(*cert.worst_witness) : Json(nullptr);
    return j;
}

DesignCertificate certificate_from_json(const Json& j) {
    DesignCertificate cert;
    cert.mode = j.at("mode").get<std::string>() == "exhaustive" ? CertMode::Exhaustive
                                                                : CertMode::MonteCarlo;
    cert.s = j.at("s").get<int>();
    cert.h = j.at("h").get<int>();
    cert.trials = j.value("trials", uint64_t(0));
    cert.seed = j.value("seed", uint64_t(0));
    if (j.contains("witness") && !j["witness"].is_null())
        cert.worst_witness = subspace_from_json(j["witness"]);
    return cert;
}

Json function_to_json(const PseudoBooleanFunction& f) {
    Json j;
    j["n"] = f.n;
    j["scale_pow2"] = f.scale_pow2;
    j["values"] = f.values;
    return j;
}

PseudoBooleanFunction function_from_json(const Json& j) {
    PseudoBooleanFunction f;
    f.n = j.at("n").get<int>();
    f.scale_pow2 = j.at("scale_pow2").get<int>();
    f.values = j.at("values").get<std::vector<int64_t>>();
    if (f.values.size() != (uint64_t(1) << f.n))
        throw std::invalid_argument("function table length is not 2^n");
    return f;
}

Json spectrum_to_json(const FourierSpectrum& spec) {
    Json j;
    j["n"] = spec.n;
    j["scale_pow2"] = spec.scale_pow2;
    j["values"] = spec.coeffs;
    return j;
}

Json spectral_report_to_json(const SpectralReport& rep) {
    Json j;
    j["sparsity"] = rep.sparsity;
    j["spectral_norm"] = to_fraction_string(rep.spectral_norm);
    j["approx_sparsity_bound"] = rep.approx_sparsity_bound;
    j["eps"] = to_fraction_string(rep.eps);
    j["delta"] = to_fraction_string(rep.delta);
    return j;
}

Json grolmusz_to_json(const GrolmuszResult& res) {
    Json j;
    j["verified"] = res.verified;
    j["sampled"] = res.sampled;
    j["t"] = res.t;
    j["t_cap"] = res.t_cap;
    j["sparsity"] = res.sparsity;
    j["sup_distance"] = to_fraction_string(res.sup_distance);
    j["coefficient_unit"] = to_fraction_string(res.coefficient_unit);
    Json terms = Json::array();
    for (const auto& [mask, count] : res.signed_counts) {
        Json t;
        t["mask"] = mask;
        t["count"] = count;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

Json scan_to_json(const CorruptionScanResult& res, const Rational& eps) {
    Json j;
    j["epsilon"] = to_fraction_string(eps);
    j["c_scanned"] = res.c_scanned;
    if (res.witness) {
        j["verdict"] = "witness";
        Json w;
        w["subspace"] = affine_to_json(res.witness->w);
        w["codim"] = res.witness->w.codim();
        w["one_mass"] = to_fraction_string(res.witness->one_mass);
        w["total_mass"] = to_fraction_string(res.witness->total_mass);
        j["witness"] = w;
    } else {
        j["verdict"] = "no-witness";
        j["witness"] = nullptr;
    }
    return j;
}

Json rectangle_to_json(const Rectangle& r) {
    Json j;
    j["n"] = r.n;
    j["A"] = r.a_hex();
    j["B"] = r.b_hex();
    return j;
}

Rectangle rectangle_from_json(const Json& j) {
    return Rectangle::from_hex(j.at("n").get<int>(), j.at("A").get<std::string>(),
                               j.at("B").get<std::string>());
}

Json distribution_to_json(const CubeDistribution& d) {
    Json j;
    j["n"] = d.n;
    Json probs = Json::array();
    for (const auto& p : d.probs) probs.push_back(to_fraction_string(p));
    j["probs"] = probs;
    return j;
}

CubeDistribution distribution_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    if (j.contains("support"))
        return CubeDistribution::uniform_over(n, j["support"].get<std::vector<uint64_t>>());
    CubeDistribution d{n, {}};
    for (const auto& p : j.at("probs")) d.probs.push_back(parse_fraction(p.get<std::string>()));
    d.validate();
    return d;
}

Json conjecture_report_to_json(const ConjectureReport& rep) {
    Json j;
    j["far_count"] = rep.far_count;
    j["required_far"] = rep.required_far;
    j["hypothesis_met"] = rep.hypothesis_met;
    j["entropy"] = rep.entropy;
    j["entropy_bound"] = rep.entropy_bound;
    j["margin"] = rep.margin;
    j["consistent"] = rep.consistent;
    j["verdict"] = rep.counterexample_candidate ? "COUNTEREXAMPLE-CANDIDATE" : "consistent";
    return j;
}

Json projection_report_to_json(const ProjectionReport& rep) {
    Json j = Json::array();
    for (const auto& e : rep.entries) {
        Json ej;
        ej["member"] = e.member;
        ej["codim"] = e.codim;
        ej["collision"] = to_fraction_string(e.collision);
        ej["dA"] = to_fraction_string(e.dist_a);
        ej["dB"] = to_fraction_string(e.dist_b);
        ej["far"] = e.far;
        ej["chain_holds"] = e.chain_holds;
        j.push_back(ej);
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return Json::parse(in);
}

}  // namespace larclab
