#include "gbcurv/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace gbcurv {

namespace {

std::string format_double(double x) {
    if (x == 0.0) x = 0.0; // normalize the sign of zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("0123456789") != std::string::npos) {
        s += ".0";
    }
    return s;
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in;
                out += Json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_rec(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

Json to_json(const DoubleForm& form) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < form.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < form.cols(); ++j) row.push_back(form.at(i, j));
        coeffs.push_back(std::move(row));
    }
    return Json{{"n", form.dimension()}, {"p", form.p()}, {"q", form.q()},
                {"coeffs", std::move(coeffs)}};
}

DoubleForm double_form_from_json(const Json& j) {
    DoubleForm form(j.at("n").get<int>(), j.at("p").get<int>(), j.at("q").get<int>());
    const auto& coeffs = j.at("coeffs");
    if (coeffs.size() != form.rows()) throw UsageError("double form coeffs shape mismatch");
    for (std::size_t r = 0; r < form.rows(); ++r) {
        if (coeffs[r].size() != form.cols()) {
            throw UsageError("double form coeffs shape mismatch");
        }
        for (std::size_t c = 0; c < form.cols(); ++c) {
            form.at(r, c) = coeffs[r][c].get<double>();
        }
    }
    return form;
}

Json to_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json to_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json to_json(const IdentityResult& r) {
    return Json{{"name", r.name},
                {"checks", r.checks},
                {"max_deviation", r.max_deviation},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

Json to_json(const InvariantReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        samples.push_back(Json{{"u", to_json(s.u)},
                               {"h", to_json(s.h_even)},
                               {"T_spectrum", to_json(s.t_spectrum)},
                               {"h_odd", to_json(s.h_odd)}});
    }
    return Json{{"k", r.k},
                {"tolerance", r.tolerance},
                {"samples", std::move(samples)},
                {"max_residual", r.max_residual},
                {"verdict", r.verdict},
                {"timing_ms", r.timing_ms}};
}

Json to_json(const HarmonicityReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        samples.push_back(Json{{"u", to_json(s.u)},
                               {"ell_F", to_json(s.ell_coordinates)},
                               {"normal_combination", to_json(s.normal_combination)},
                               {"identity_residual", s.identity_residual}});
    }
    return Json{{"k", r.k},
                {"samples", std::move(samples)},
                {"max_identity_residual", r.max_identity_residual},
                {"max_ell", r.max_ell},
                {"timing_ms", r.timing_ms}};
}

Json to_json(const SphereCheckReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        samples.push_back(
            Json{{"u", to_json(s.u)}, {"phi", s.phi}, {"residual", s.residual}});
    }
    return Json{{"k", r.k},
                {"tolerance", r.tolerance},
                {"samples", std::move(samples)},
                {"max_residual", r.max_residual},
                {"verdict", r.verdict},
                {"timing_ms", r.timing_ms}};
}

Json to_json(const VariationResult& r) {
    return Json{{"numeric", r.centered},
                {"numeric_richardson", r.richardson},
                {"predicted", r.predicted},
                {"dt", r.dt},
                {"ratio", r.ratio},
                {"agree", r.agree}};
}

std::unique_ptr<ImmersionChart> grid_chart_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    const auto& dom = j.at("domain");
    Box box;
    box.lo = Eigen::VectorXd::Zero(n);
    box.hi = Eigen::VectorXd::Zero(n);
    box.periodic.assign(n, false);
    for (int a = 0; a < n; ++a) {
        box.lo[a] = dom.at("min").at(a).get<double>();
        box.hi[a] = dom.at("max").at(a).get<double>();
        box.periodic[a] = dom.at("periodic").at(a).get<bool>();
    }
    std::vector<int> shape;
    for (const auto& m : j.at("grid")) shape.push_back(m.get<int>());
    const auto& pts = j.at("points");
    std::vector<Eigen::VectorXd> points;
    points.reserve(pts.size());
    for (const auto& row : pts) {
        Eigen::VectorXd x(n + p);
        if (static_cast<int>(row.size()) != n + p) {
            throw UsageError("immersion file: point with wrong ambient dimension");
        }
        for (int c = 0; c < n + p; ++c) x[c] = row.at(c).get<double>();
        points.push_back(std::move(x));
    }
    return std::make_unique<GridChart>(n, p, std::move(box), std::move(shape),
                                       std::move(points));
}

std::unique_ptr<ImmersionChart> load_grid_chart(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open immersion file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed immersion file: ") + e.what());
    }
    return grid_chart_from_json(j);
}

} // namespace gbcurv
