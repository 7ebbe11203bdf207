#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ksr/barrier.hpp"
#include "ksr/errors.hpp"
#include "ksr/graphs.hpp"
#include "ksr/instances.hpp"
#include "ksr/json_io.hpp"
#include "ksr/maxent.hpp"
#include "ksr/mixedchar.hpp"

namespace {

using ksr::Json;

struct GlobalOpts {
    uint64_t seed = 0;
    double tol = 1e-9;
    uint64_t budget = 1000000;
    std::string format = "json";
    std::string out;
};

void render_text(const Json& j, std::ostream& os, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) {
                os << prefix << k << ":\n";
                render_text(v, os, prefix + "  ");
            } else {
                os << prefix << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) render_text(v, os, prefix + "- ");
    } else {
        os << prefix << j.dump() << "\n";
    }
}

void emit(const Json& report, const GlobalOpts& g) {
    std::string payload;
    if (g.format == "text") {
        std::ostringstream os;
        render_text(report, os);
        payload = os.str();
    } else {
        payload = report.dump(2);
        payload.push_back('\n');
    }
    if (g.out.empty())
        std::cout << payload;
    else
        ksr::write_atomic(g.out, payload);
}

Eigen::MatrixXd matrix_from_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ksr::InvalidInputError("cannot open matrix file: " + path);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(in >> m(i, j))) throw ksr::InvalidInputError("matrix file too short: " + path);
    return m;
}

ksr::Rat tol_rat(double tol) { return ksr::rat_from_double(tol, 48); }

int run(int argc, char** argv) {
    CLI::App app{"strongly Rayleigh / Kadison-Singer toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (default 0)");
    app.add_option("--tol", g.tol, "root/marginal tolerance (default 1e-9)");
    app.add_option("--budget", g.budget, "enumeration budget (default 1e6)");
    app.add_option("--format", g.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", g.out, "output path (atomic write); stdout when absent");

    // verify-identity
    auto* vi = app.add_subcommand("verify-identity",
                                  "check the three mixed-characteristic-polynomial routes agree");
    std::string vi_dist, vi_vecs;
    int vi_m = 4, vi_d = 2, vi_trials = 20;
    bool vi_random = false;
    vi->add_option("--dist", vi_dist, "distribution JSON file");
    vi->add_option("--vecs", vi_vecs, "vectors file");
    vi->add_flag("--random", vi_random, "run randomized instances instead of files");
    vi->add_option("--m", vi_m, "max ground size for random instances");
    vi->add_option("--d", vi_d, "max vector dimension for random instances");
    vi->add_option("--trials", vi_trials, "number of random instances");

    // descend / certificate
    auto* de = app.add_subcommand("descend", "interlacing descent to a low-root support set");
    std::string de_dist, de_vecs;
    de->add_option("--dist", de_dist, "distribution JSON file")->required();
    de->add_option("--vecs", de_vecs, "vectors file")->required();

    auto* ce = app.add_subcommand("certificate", "descent plus the isotropic main-theorem bounds");
    std::string ce_dist, ce_vecs;
    ce->add_option("--dist", ce_dist, "distribution JSON file")->required();
    ce->add_option("--vecs", ce_vecs, "vectors file")->required();

    // maxent
    auto* me = app.add_subcommand("maxent", "fit lambda weights to target marginals");
    std::string me_vecs, me_target;
    int me_iters = 300;
    me->add_option("--vecs", me_vecs, "vectors file")->required();
    me->add_option("--target", me_target, "comma-separated target marginals")->required();
    me->add_option("--max-iter", me_iters, "Newton iteration cap");

    // thintree
    auto* tt = app.add_subcommand("thintree", "spectrally thin spanning tree pipeline");
    std::string tt_graph, tt_dmat;
    double tt_eps_target = 1.0;
    tt->add_option("graph", tt_graph, "edge list file")->required();
    tt->add_option("--d-matrix", tt_dmat, "optional PD matrix file (n x n, row major)");
    tt->add_option("--eps-target", tt_eps_target, "requested per-edge resistance bound (echoed)");

    // resistance
    auto* re = app.add_subcommand("resistance", "per-edge effective resistances");
    std::string re_graph;
    re->add_option("graph", re_graph, "edge list file")->required();

    // ksr
    auto* kr = app.add_subcommand("ksr", "r-partition with small per-part spectral norm");
    std::string kr_vecs;
    int kr_r = 2;
    kr->add_option("--vecs", kr_vecs, "vectors file (isotropic system)")->required();
    kr->add_option("--r", kr_r, "number of parts")->required();

    // sample
    auto* sa = app.add_subcommand("sample", "draw seeded samples from a subset distribution");
    std::string sa_dist;
    int sa_n = 1;
    sa->add_option("--dist", sa_dist, "distribution JSON file")->required();
    sa->add_option("--n", sa_n, "number of samples");

    CLI11_PARSE(app, argc, argv);

    if (vi->parsed()) {
        Json report;
        report["instances"] = Json::array();
        bool all_ok = true;
        auto check_one = [&](const ksr::SubsetDistribution& dist, const ksr::VectorSystem& vs,
                             const std::string& kind) {
            Json inst;
            inst["kind"] = kind;
            inst["m"] = dist.ground_size();
            inst["d"] = vs.dim();
            inst["d_mu"] = dist.degree();
            bool ok = true;
            try {
                ksr::MixedCharPoly a = ksr::mixed_enum(dist, vs);
                ksr::MixedCharPoly b = ksr::mixed_operator(dist, vs);
                ksr::MixedCharPoly c = ksr::mixed_closed_form(dist, vs);
                ok = a.poly == b.poly && b.poly == c.poly;
                inst["poly"] = ksr::univariate_to_json(a.poly);
                inst["max_root"] = a.max_root;
            } catch (const ksr::InternalConsistencyError& e) {
                ok = false;
                inst["error"] = e.what();
            }
            inst["ok"] = ok;
            all_ok = all_ok && ok;
            report["instances"].push_back(std::move(inst));
        };
        if (vi_random) {
            std::mt19937_64 rng(g.seed);
            for (int t = 0; t < vi_trials; ++t) {
                ksr::RandomInstance inst = ksr::random_instance(rng, vi_m, vi_d);
                check_one(inst.dist, inst.vs, inst.kind);
            }
        } else {
            if (vi_dist.empty() || vi_vecs.empty())
                throw ksr::InvalidInputError("verify-identity needs --dist/--vecs or --random");
            check_one(ksr::dist_from_file(vi_dist), ksr::vectors_from_file(vi_vecs), "file");
        }
        report["ok"] = all_ok;
        emit(report, g);
        return all_ok ? 0 : 1;
    }

    if (de->parsed()) {
        auto cert = ksr::descend(ksr::dist_from_file(de_dist), ksr::vectors_from_file(de_vecs),
                                 tol_rat(g.tol));
        emit(ksr::certificate_to_json(cert), g);
        return 0;
    }

    if (ce->parsed()) {
        auto cert = ksr::main_certificate(ksr::dist_from_file(ce_dist),
                                          ksr::vectors_from_file(ce_vecs), tol_rat(g.tol));
        emit(ksr::certificate_to_json(cert), g);
        return 0;
    }

    if (me->parsed()) {
        ksr::VectorSystem vs = ksr::vectors_from_file(me_vecs);
        std::vector<double> target;
        std::stringstream ts(me_target);
        std::string tok;
        while (std::getline(ts, tok, ',')) target.push_back(std::stod(tok));
        auto model = ksr::fit_lambda(vs, ksr::make_polytope_point(target), g.tol, me_iters);
        emit(ksr::maxent_model_to_json(model), g);
        return 0;
    }

    if (tt->parsed()) {
        ksr::WeightedGraph graph = ksr::WeightedGraph::from_edge_list_file(tt_graph);
        std::vector<int> f(graph.edge_count());
        for (int i = 0; i < graph.edge_count(); ++i) f[i] = i;
        Eigen::MatrixXd dmat;
        const Eigen::MatrixXd* dptr = nullptr;
        if (!tt_dmat.empty()) {
            dmat = matrix_from_file(tt_dmat, graph.vertex_count());
            dptr = &dmat;
        }
        auto cert = ksr::thin_tree_pipeline(graph, f, dptr, tt_eps_target, g.tol, g.budget, g.seed);
        emit(ksr::thinness_to_json(cert), g);
        return 0;
    }

    if (re->parsed()) {
        ksr::WeightedGraph graph = ksr::WeightedGraph::from_edge_list_file(re_graph);
        Json report;
        report["n"] = graph.vertex_count();
        report["edges"] = Json::array();
        double foster = 0.0;
        for (int i = 0; i < graph.edge_count(); ++i) {
            double r = ksr::effective_resistance(graph, i);
            foster += graph.edge(i).w * r;
            Json e;
            e["edge"] = {graph.edge(i).u, graph.edge(i).v};
            e["w"] = graph.edge(i).w;
            e["resistance"] = r;
            report["edges"].push_back(std::move(e));
        }
        report["foster_sum"] = foster;
        emit(report, g);
        return 0;
    }

    if (kr->parsed()) {
        ksr::VectorSystem vs = ksr::vectors_from_file(kr_vecs);
        auto part = ksr::ksr_partition(vs, kr_r, tol_rat(g.tol), g.budget);
        Json report;
        report["r"] = kr_r;
        report["parts"] = part.parts;
        report["part_norms"] = part.part_norms;
        report["bound"] = part.bound;
        report["lifted_certificate"] = ksr::certificate_to_json(part.lifted);
        emit(report, g);
        return 0;
    }

    if (sa->parsed()) {
        ksr::SubsetDistribution dist = ksr::dist_from_file(sa_dist);
        std::mt19937_64 rng(g.seed);
        std::map<uint64_t, int> counts;
        for (int i = 0; i < sa_n; ++i) ++counts[ksr::sample(dist, rng)];
        Json report;
        report["m"] = dist.ground_size();
        report["samples"] = sa_n;
        report["seed"] = g.seed;
        report["counts"] = Json::array();
        for (const auto& [s, c] : counts) {
            Json e;
            e["set"] = ksr::mask_to_indices(s);
            e["count"] = c;
            report["counts"].push_back(std::move(e));
        }
        emit(report, g);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ksr::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const ksr::InternalConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
