#include "ksr/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ksr/errors.hpp"

namespace ksr {

Json dist_to_json(const SubsetDistribution& dist) {
    Json j;
    j["m"] = dist.ground_size();
    Json sup = Json::array();
    for (const auto& [s, p] : dist.support()) {
        Json entry;
        entry["set"] = mask_to_indices(s);
        entry["p"] = rat_to_string(p);
        sup.push_back(std::move(entry));
    }
    j["support"] = std::move(sup);
    return j;
}

SubsetDistribution dist_from_json(const Json& j) {
    if (!j.contains("m") || !j.contains("support"))
        throw InvalidInputError("distribution JSON needs \"m\" and \"support\"");
    int m = j.at("m").get<int>();
    std::map<uint64_t, Rat> sup;
    for (const auto& entry : j.at("support")) {
        std::vector<int> idx = entry.at("set").get<std::vector<int>>();
        Rat p = rat_from_string(entry.at("p").get<std::string>());
        sup[indices_to_mask(idx)] += p;
    }
    return SubsetDistribution(m, std::move(sup));
}

SubsetDistribution dist_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open distribution file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("distribution file is not valid JSON: ") + e.what());
    }
    return dist_from_json(j);
}

Json multiaffine_to_json(const MultiAffinePoly& p) {
    Json terms = Json::array();
    for (const auto& [mask, c] : p.terms()) {
        Json t;
        std::vector<int> exps(p.vars(), 0);
        for (int i = 0; i < p.vars(); ++i)
            if (mask >> i & 1) exps[i] = 1;
        t["exps"] = exps;
        t["coeffs"] = std::vector<std::string>{rat_to_string(c)};
        terms.push_back(std::move(t));
    }
    return Json{{"terms", std::move(terms)}};
}

Json zx_to_json(const ZXPoly& p) {
    Json terms = Json::array();
    for (const auto& [key, coeff] : p.terms()) {
        Json t;
        std::vector<int> exps(p.vars(), 0);
        for (int i = 0; i < p.vars(); ++i)
            exps[i] = int(key.first >> i & 1) + int(key.second >> i & 1);
        t["exps"] = exps;
        t["coeffs"] = rat_vec_to_strings(coeff.coeffs());
        terms.push_back(std::move(t));
    }
    return Json{{"terms", std::move(terms)}};
}

Json univariate_to_json(const UnivariatePoly& p) {
    return Json{{"coeffs", rat_vec_to_strings(p.coeffs())}};
}

Json certificate_to_json(const SubsetCertificate& c) {
    Json j;
    j["set"] = mask_to_indices(c.set);
    j["spectral_norm"] = c.spectral_norm;
    j["mixed_root"] = c.mixed_root;
    j["bound"] = c.bound;
    j["eps1"] = c.eps1;
    j["eps2"] = c.eps2;
    j["barrier_bound"] = c.barrier_bound;
    return j;
}

Json maxent_model_to_json(const MaxEntModel& m) {
    Json j;
    j["gamma"] = m.gamma;
    j["lambda"] = m.lambda;
    j["target"] = m.target;
    j["residual"] = m.residual;
    j["iterations"] = m.iterations;
    return j;
}

Json thinness_to_json(const ThinnessCertificate& c) {
    Json j;
    j["tree"] = c.tree;
    j["alpha_spectral"] = c.alpha_spectral;
    j["alpha_combinatorial"] = c.alpha_combinatorial;
    j["k"] = c.k;
    j["eps"] = c.eps;
    j["eps_target"] = c.eps_target;
    j["sampled"] = c.sampled;
    j["maxent_fit_ok"] = c.maxent_fit_ok;
    j["d_cut_dominated"] = c.d_cut_dominated;
    j["max_marginal"] = c.max_marginal;
    return j;
}

Json bound_report_to_json(const BoundReport& r) {
    Json j;
    j["eps1"] = r.eps1;
    j["eps2"] = r.eps2;
    j["eps"] = r.eps;
    j["t"] = r.t;
    j["delta"] = r.delta;
    j["x_root_bound"] = r.x_root_bound;
    j["eigen_bound"] = r.eigen_bound;
    return j;
}

VectorSystem vectors_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open vectors file: " + path);
    std::string line;
    int d = -1, m = -1;
    std::vector<std::vector<Rat>> vectors;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (d < 0) {
            if (ls >> d >> m) {
                if (d < 1 || m < 0) throw InvalidInputError("vectors file: bad header");
            }
            continue;
        }
        std::vector<Rat> v;
        std::string tok;
        while (ls >> tok) v.push_back(rat_from_string(tok));
        if (v.empty()) continue;
        if (static_cast<int>(v.size()) != d)
            throw InvalidInputError("vectors file: row length does not match dimension");
        vectors.push_back(std::move(v));
    }
    if (d < 0) throw InvalidInputError("vectors file: missing \"d m\" header");
    if (static_cast<int>(vectors.size()) != m)
        throw InvalidInputError("vectors file: row count does not match header");
    return VectorSystem(d, std::move(vectors));
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw InvalidInputError("cannot open output file: " + tmp);
        out << content;
        if (!out.good()) throw InvalidInputError("failed writing output file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw InvalidInputError("failed to move output into place: " + path);
    }
}

}  // namespace ksr
