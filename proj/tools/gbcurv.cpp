// gbcurv: identity certification, curvature invariants, minimality verdicts,
// and first-variation experiments over the built-in immersion catalog or
// user-supplied grid immersions. All reports are JSON on stdout or --out.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gbcurv/geometry.hpp"
#include "gbcurv/identities.hpp"
#include "gbcurv/json_io.hpp"
#include "gbcurv/verification.hpp"

namespace {

using namespace gbcurv;

struct CommonOptions {
    std::uint64_t seed = 0;
    int trials = 200;
    int n_min = 2;
    int n_max = 6;
    int k = 1;
    std::string grid = "16";
    double tol = -1; // command-specific default when negative
    bool exact = false;
    bool deterministic = false;
    std::vector<std::string> immersion;
    std::string ambient = "euclidean";
    std::string field = "radial";
    double dt = 1e-3;
    bool dump_tensors = false;
    std::string out;
    std::string b_matrix;
};

std::vector<int> parse_grid(const std::string& spec, int axes) {
    std::vector<int> counts;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        counts.push_back(std::stoi(token));
    }
    if (counts.empty()) throw UsageError("--grid must list at least one count");
    if (static_cast<int>(counts.size()) == 1) counts.assign(axes, counts[0]);
    if (static_cast<int>(counts.size()) != axes) {
        throw UsageError("--grid must give one count, or one per parameter axis");
    }
    for (int c : counts) {
        if (c < 1) throw UsageError("--grid counts must be positive");
    }
    return counts;
}

std::unique_ptr<ImmersionChart> resolve_immersion(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw UsageError("--immersion is required");
    const std::string& name = tokens.front();
    if (std::filesystem::exists(name)) return load_grid_chart(name);
    ChartParams params;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::stringstream ss(tokens[i]);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            if (kv.empty()) continue;
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw UsageError("immersion parameters use key=value form: " + kv);
            }
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
    }
    return make_catalog_chart(name, params);
}

AmbientSpace parse_ambient(const std::string& s) {
    if (s == "euclidean") return AmbientSpace::euclidean();
    if (s == "sphere") return AmbientSpace::sphere(1.0);
    if (s.rfind("sphere:", 0) == 0) return AmbientSpace::sphere(std::stod(s.substr(7)));
    throw UsageError("--ambient must be euclidean, sphere, or sphere:<curvature>");
}

void emit(const Json& report, const CommonOptions& opt) {
    const std::string text = dump_json(report);
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out);
        if (!f) throw UsageError("cannot write " + opt.out);
        f << text;
    }
}

Json config_json(const CommonOptions& opt, std::initializer_list<const char*> keys) {
    Json j = Json::object();
    for (const char* key : keys) {
        const std::string k = key;
        if (k == "seed") j["seed"] = opt.seed;
        if (k == "trials") j["trials"] = opt.trials;
        if (k == "n_min") j["n_min"] = opt.n_min;
        if (k == "n_max") j["n_max"] = opt.n_max;
        if (k == "k") j["k"] = opt.k;
        if (k == "grid") j["grid"] = opt.grid;
        if (k == "exact") j["mode"] = opt.exact ? "exact" : "float";
        if (k == "immersion") j["immersion"] = opt.immersion;
        if (k == "ambient") j["ambient"] = opt.ambient;
        if (k == "field") j["field"] = opt.field;
        if (k == "dt") j["dt"] = opt.dt;
        if (k == "deterministic") j["deterministic"] = opt.deterministic;
    }
    return j;
}

void strip_timings(Json& j) {
    if (j.is_object()) {
        j.erase("timing_ms");
        for (auto& [key, value] : j.items()) strip_timings(value);
    } else if (j.is_array()) {
        for (auto& value : j) strip_timings(value);
    }
}

int finish(Json report, const CommonOptions& opt, bool pass) {
    if (opt.deterministic) strip_timings(report);
    emit(report, opt);
    return pass ? 0 : 1;
}

int cmd_identities(const CommonOptions& opt) {
    IdentityConfig cfg;
    cfg.n_min = opt.n_min;
    cfg.n_max = opt.n_max;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.exact = opt.exact;
    cfg.tolerance = opt.tol > 0 ? opt.tol : 1e-9;
    const auto results = run_identity_suite(cfg);
    bool all_pass = true;
    Json list = Json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        list.push_back(to_json(r));
    }
    Json report = config_json(opt, {"seed", "trials", "n_min", "n_max", "exact",
                                    "deterministic"});
    report["command"] = "identities";
    report["results"] = std::move(list);
    report["all_pass"] = all_pass;
    return finish(std::move(report), opt, all_pass);
}

int cmd_symm(const CommonOptions& opt) {
    Json matrix;
    if (std::filesystem::exists(opt.b_matrix)) {
        std::ifstream f(opt.b_matrix);
        f >> matrix;
    } else {
        try {
            matrix = Json::parse(opt.b_matrix);
        } catch (const std::exception&) {
            throw UsageError("--B must be a JSON matrix or a path to one");
        }
    }
    if (!matrix.is_array() || matrix.empty()) throw UsageError("--B must be a square matrix");
    const int n = static_cast<int>(matrix.size());
    DoubleForm raw(n, 1, 1);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(matrix[i].size()) != n) {
            throw UsageError("--B must be a square matrix");
        }
        for (int j = 0; j < n; ++j) raw.at(i, j) = matrix[i][j].get<double>();
    }
    const SymBilinearForm b(raw);
    if (opt.k < 0 || opt.k > n) throw UsageError("--k must satisfy 0 ≤ k ≤ n");

    const double s_k = elementary_symmetric(b, opt.k);
    const auto t_k = newton_transform(b, opt.k);
    Json t = Json::array();
    for (int i = 0; i < n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < n; ++j) row.push_back(t_k(i, j));
        t.push_back(std::move(row));
    }
    return finish(Json{{"s_k", s_k}, {"t_k", std::move(t)}}, opt, true);
}

int cmd_invariants(const CommonOptions& opt) {
    const auto chart = resolve_immersion(opt.immersion);
    const auto ambient = parse_ambient(opt.ambient);
    const auto samples = chart->sample_grid(parse_grid(opt.grid, chart->dim()));
    const double tol = opt.tol > 0 ? opt.tol : 1e-6;
    auto report = minimality_residual(*chart, opt.k, samples, ambient, tol);
    Json j = config_json(opt, {"immersion", "k", "grid", "ambient", "deterministic"});
    j["command"] = "invariants";
    j.update(to_json(report));
    if (opt.dump_tensors) {
        Json tensors = Json::array();
        for (const auto& rec : report.samples) {
            const auto shape = shape_at(*chart, rec.u, ambient);
            const auto r = riemann_of(shape, ambient);
            Json entry{{"u", to_json(rec.u)},
                       {"riemann", to_json(r.form())},
                       {"lovelock", to_json(lovelock_tensor(r, opt.k).tensor().form())}};
            Json bs = Json::array();
            for (const auto& b : shape.second_fundamental) bs.push_back(to_json(b.form()));
            entry["second_fundamental"] = std::move(bs);
            tensors.push_back(std::move(entry));
        }
        j["tensors"] = std::move(tensors);
    }
    return finish(std::move(j), opt, true);
}

int cmd_minimality(const CommonOptions& opt) {
    const auto chart = resolve_immersion(opt.immersion);
    const auto ambient = parse_ambient(opt.ambient);
    const auto samples = chart->sample_grid(parse_grid(opt.grid, chart->dim()));
    const double tol = opt.tol > 0 ? opt.tol : 1e-6;
    const auto report = minimality_residual(*chart, opt.k, samples, ambient, tol);
    Json j = config_json(opt, {"immersion", "k", "grid", "ambient", "deterministic"});
    j["command"] = "minimality";
    j.update(to_json(report));
    return finish(std::move(j), opt, true);
}

int cmd_harmonicity(const CommonOptions& opt) {
    const auto chart = resolve_immersion(opt.immersion);
    const auto samples = chart->sample_grid(parse_grid(opt.grid, chart->dim()));
    const double tol = opt.tol > 0 ? opt.tol : 1e-5;
    const auto report = coordinate_harmonicity(*chart, opt.k, samples);
    Json j = config_json(opt, {"immersion", "k", "grid", "deterministic"});
    j["command"] = "harmonicity";
    j.update(to_json(report));
    j["tolerance"] = tol;
    const bool identity_holds = report.max_identity_residual <= tol;
    j["identity_holds"] = identity_holds;
    return finish(std::move(j), opt, identity_holds);
}

int cmd_sphere_check(const CommonOptions& opt) {
    const auto chart = resolve_immersion(opt.immersion);
    const auto samples = chart->sample_grid(parse_grid(opt.grid, chart->dim()));
    const double tol = opt.tol > 0 ? opt.tol : 1e-6;
    const auto report = sphere_eigen_check(*chart, opt.k, samples, tol);
    Json j = config_json(opt, {"immersion", "k", "grid", "deterministic"});
    j["command"] = "sphere-check";
    j.update(to_json(report));
    return finish(std::move(j), opt, true);
}

int cmd_variation(const CommonOptions& opt) {
    const auto chart = resolve_immersion(opt.immersion);
    std::unique_ptr<VariationField> field;
    if (opt.field == "radial") {
        field = std::make_unique<PositionField>(*chart);
    } else if (opt.field == "rotation") {
        const int dim = chart->ambient_dim();
        Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i + 1 < dim; i += 2) {
            rot(i, i + 1) = -1;
            rot(i + 1, i) = 1;
        }
        field = std::make_unique<LinearMapField>(*chart, std::move(rot));
    } else if (opt.field == "normal-mix") {
        if (chart->dim() != 2 || chart->ambient_dim() != 4) {
            throw UsageError("--field normal-mix expects the flat 2-torus in ℝ⁴");
        }
        field = make_torus_normal_mix();
    } else {
        throw UsageError("--field must be radial, rotation, or normal-mix");
    }
    const auto res = first_variation(*chart, *field, opt.k,
                                     parse_grid(opt.grid, chart->dim()), opt.dt);
    Json j = config_json(opt, {"immersion", "field", "k", "grid", "dt", "deterministic"});
    j["command"] = "variation";
    j.update(to_json(res));
    return finish(std::move(j), opt, res.agree);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-form curvature calculus: identities, invariants, minimality"};
    app.require_subcommand(1);
    CommonOptions opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--tol", opt.tol, "tolerance override");
        cmd->add_flag("--deterministic", opt.deterministic,
                      "single-worker sweeps, timings stripped, byte-stable output");
        cmd->add_option("--out", opt.out, "write the JSON report to a file");
    };

    CLI::App* identities = app.add_subcommand("identities", "algebraic identity suites");
    identities->add_option("--trials", opt.trials, "instances per dimension");
    identities->add_option("--n-min", opt.n_min, "smallest dimension");
    identities->add_option("--n-max", opt.n_max, "largest dimension");
    identities->add_flag("--exact", opt.exact, "exact rational scalars");
    add_common(identities);

    CLI::App* symm = app.add_subcommand("symm", "symmetric functions of a bilinear form");
    symm->add_option("--B", opt.b_matrix, "JSON matrix or path")->required();
    symm->add_option("--k", opt.k, "order")->required();
    add_common(symm);

    auto add_geometry = [&](CLI::App* cmd, bool with_ambient) {
        cmd->add_option("--immersion", opt.immersion,
                        "catalog name (+ key=value params) or immersion file")
            ->required()
            ->expected(-1);
        cmd->add_option("--k", opt.k, "curvature order (2k)");
        cmd->add_option("--grid", opt.grid, "samples per axis (single or comma list)");
        if (with_ambient) {
            cmd->add_option("--ambient", opt.ambient, "euclidean | sphere | sphere:<c>");
        }
        add_common(cmd);
    };

    CLI::App* invariants =
        app.add_subcommand("invariants", "pointwise h, T-spectrum, h_odd sweep");
    add_geometry(invariants, true);
    invariants->add_flag("--dump-tensors", opt.dump_tensors,
                         "include R, T_2k, and B_N per sample");

    CLI::App* minimality = app.add_subcommand("minimality", "(2k)-minimality verdict");
    add_geometry(minimality, true);

    CLI::App* harmonicity =
        app.add_subcommand("harmonicity", "ℓ_2k of the coordinate functions");
    add_geometry(harmonicity, false);

    CLI::App* sphere_check =
        app.add_subcommand("sphere-check", "ℓ_2k F = φF test for unit-sphere charts");
    add_geometry(sphere_check, false);

    CLI::App* variation = app.add_subcommand("variation", "first variation of ∫h_2k");
    add_geometry(variation, false);
    variation->add_option("--field", opt.field, "radial | rotation | normal-mix");
    variation->add_option("--dt", opt.dt, "finite-difference step in t");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    if (opt.deterministic) {
        setenv("GBCURV_THREADS", "1", 1);
    }

    try {
        if (identities->parsed()) return cmd_identities(opt);
        if (symm->parsed()) return cmd_symm(opt);
        if (invariants->parsed()) return cmd_invariants(opt);
        if (minimality->parsed()) return cmd_minimality(opt);
        if (harmonicity->parsed()) return cmd_harmonicity(opt);
        if (sphere_check->parsed()) return cmd_sphere_check(opt);
        if (variation->parsed()) return cmd_variation(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DegreeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
