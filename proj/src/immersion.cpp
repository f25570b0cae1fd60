#include "gbcurv/immersion.hpp"

#include <cmath>
#include <numbers>

namespace gbcurv {

namespace {
constexpr double kPi = std::numbers::pi;
}

Jet2 Jet2::zeros(int m, int n) {
    Jet2 j;
    j.value = Eigen::VectorXd::Zero(m);
    j.d1 = Eigen::MatrixXd::Zero(m, n);
    j.d2.assign(m, Eigen::MatrixXd::Zero(n, n));
    return j;
}

Jet2& Jet2::axpy(double t, const Jet2& other) {
    value += t * other.value;
    d1 += t * other.d1;
    for (std::size_t c = 0; c < d2.size(); ++c) d2[c] += t * other.d2[c];
    return *this;
}

double TrigFactor::value(double u) const {
    const double x = freq * u + phase;
    switch (kind) {
        case FactorKind::one: return 1.0;
        case FactorKind::id: return x;
        case FactorKind::square: return x * x;
        case FactorKind::sin: return std::sin(x);
        case FactorKind::cos: return std::cos(x);
        case FactorKind::sinh: return std::sinh(x);
        case FactorKind::cosh: return std::cosh(x);
    }
    return 0.0;
}

double TrigFactor::d1(double u) const {
    const double x = freq * u + phase;
    switch (kind) {
        case FactorKind::one: return 0.0;
        case FactorKind::id: return freq;
        case FactorKind::square: return 2.0 * x * freq;
        case FactorKind::sin: return freq * std::cos(x);
        case FactorKind::cos: return -freq * std::sin(x);
        case FactorKind::sinh: return freq * std::cosh(x);
        case FactorKind::cosh: return freq * std::sinh(x);
    }
    return 0.0;
}

double TrigFactor::d2(double u) const {
    const double x = freq * u + phase;
    const double f2 = freq * freq;
    switch (kind) {
        case FactorKind::one: return 0.0;
        case FactorKind::id: return 0.0;
        case FactorKind::square: return 2.0 * f2;
        case FactorKind::sin: return -f2 * std::sin(x);
        case FactorKind::cos: return -f2 * std::cos(x);
        case FactorKind::sinh: return f2 * std::sinh(x);
        case FactorKind::cosh: return f2 * std::cosh(x);
    }
    return 0.0;
}

Jet2 evaluate_terms(const std::vector<TrigComponent>& components, const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(components.size());
    Jet2 j = Jet2::zeros(m, n);
    std::vector<double> val(n), der(n), der2(n);
    for (int c = 0; c < m; ++c) {
        for (const TrigTerm& term : components[c]) {
            for (int a = 0; a < n; ++a) {
                val[a] = term.factors[a].value(u[a]);
                der[a] = term.factors[a].d1(u[a]);
                der2[a] = term.factors[a].d2(u[a]);
            }
            double prod = term.coeff;
            for (int a = 0; a < n; ++a) prod *= val[a];
            j.value[c] += prod;
            for (int a = 0; a < n; ++a) {
                double da = term.coeff * der[a];
                for (int b = 0; b < n; ++b)
                    if (b != a) da *= val[b];
                j.d1(c, a) += da;
                double daa = term.coeff * der2[a];
                for (int b = 0; b < n; ++b)
                    if (b != a) daa *= val[b];
                j.d2[c](a, a) += daa;
                for (int b = a + 1; b < n; ++b) {
                    double dab = term.coeff * der[a] * der[b];
                    for (int e = 0; e < n; ++e)
                        if (e != a && e != b) dab *= val[e];
                    j.d2[c](a, b) += dab;
                    j.d2[c](b, a) += dab;
                }
            }
        }
    }
    return j;
}

std::vector<Eigen::VectorXd> ImmersionChart::sample_grid(const std::vector<int>& counts) const {
    if (static_cast<int>(counts.size()) != n_) {
        throw UsageError("sample grid needs one count per parameter axis");
    }
    std::vector<Eigen::VectorXd> out;
    long long total = 1;
    for (int c : counts) {
        if (c < 1) throw UsageError("sample counts must be positive");
        total *= c;
    }
    out.reserve(total);
    std::vector<int> idx(n_, 0);
    Eigen::VectorXd u(n_);
    while (true) {
        for (int a = 0; a < n_; ++a) {
            const double len = box_.hi[a] - box_.lo[a];
            u[a] = box_.periodic[a] ? box_.lo[a] + idx[a] * len / counts[a]
                                    : box_.lo[a] + (idx[a] + 0.5) * len / counts[a];
        }
        out.push_back(u);
        int a = n_ - 1;
        while (a >= 0 && ++idx[a] == counts[a]) idx[a--] = 0;
        if (a < 0) break;
    }
    return out;
}

std::optional<Quadrature> ImmersionChart::quadrature(const std::vector<int>& counts) const {
    if (!box_.all_periodic()) return std::nullopt;
    // periodic product trapezoid: uniform nodes, weight Πλ/m
    Quadrature q;
    q.nodes = sample_grid(counts);
    double w = 1.0;
    for (int a = 0; a < n_; ++a) w *= (box_.hi[a] - box_.lo[a]) / counts[a];
    q.weights.assign(q.nodes.size(), w);
    return q;
}

// ---------------------------------------------------------------------------
// Gauss–Gegenbauer rule (weight (1-x²)^α) via Golub–Welsch.
// ---------------------------------------------------------------------------

namespace {

void gauss_gegenbauer(int m, double alpha, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double bk = k * (k + 2 * alpha) /
                          ((2 * k + 2 * alpha + 1) * (2 * k + 2 * alpha - 1));
        jac(k - 1, k) = jac(k, k - 1) = std::sqrt(bk);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 =
        std::sqrt(kPi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
    x.resize(m);
    w.resize(m);
    for (int j = 0; j < m; ++j) {
        x[j] = es.eigenvalues()[j];
        const double v0 = es.eigenvectors()(0, j);
        w[j] = mu0 * v0 * v0;
    }
}

/// Product rule on spherical coordinates: Gauss–Gegenbauer in each polar
/// angle (weight sin^m θ folded into the nodes), trapezoid in the azimuth.
/// Weights are divided by the polar densities so that Σ f·√det g·w is the
/// spectral rule for smooth integrands.
Quadrature sphere_rule_impl(int n, const Box& box, const std::vector<int>& counts) {
    std::vector<std::vector<double>> axis_nodes(n), axis_weights(n);
    for (int a = 0; a < n - 1; ++a) {
        const int sin_power = n - 1 - a;
        std::vector<double> x, w;
        gauss_gegenbauer(counts[a], (sin_power - 1) / 2.0, x, w);
        for (int j = 0; j < counts[a]; ++j) {
            const double theta = std::acos(x[j]);
            const double s = std::sqrt(std::max(0.0, 1.0 - x[j] * x[j]));
            axis_nodes[a].push_back(theta);
            axis_weights[a].push_back(w[j] / std::pow(s, sin_power));
        }
    }
    {
        const int a = n - 1;
        const double len = box.hi[a] - box.lo[a];
        for (int j = 0; j < counts[a]; ++j) {
            axis_nodes[a].push_back(box.lo[a] + j * len / counts[a]);
            axis_weights[a].push_back(len / counts[a]);
        }
    }
    Quadrature q;
    std::vector<int> idx(n, 0);
    Eigen::VectorXd u(n);
    while (true) {
        double w = 1.0;
        for (int a = 0; a < n; ++a) {
            u[a] = axis_nodes[a][idx[a]];
            w *= axis_weights[a][idx[a]];
        }
        q.nodes.push_back(u);
        q.weights.push_back(w);
        int a = n - 1;
        while (a >= 0 && ++idx[a] == counts[a]) idx[a--] = 0;
        if (a < 0) break;
    }
    return q;
}

class SphereChart : public TrigProductChart {
public:
    SphereChart(int n, int p, Box box, std::vector<TrigComponent> comps)
        : TrigProductChart(n, p, std::move(box), std::move(comps)) {}

    bool closed() const override { return true; }
    std::optional<Quadrature> quadrature(const std::vector<int>& counts) const override {
        if (static_cast<int>(counts.size()) != dim()) {
            throw UsageError("quadrature needs one count per axis");
        }
        return sphere_rule_impl(dim(), domain(), counts);
    }
};

Box sphere_box(int n) {
    Box box;
    box.lo = Eigen::VectorXd::Zero(n);
    box.hi = Eigen::VectorXd::Constant(n, kPi);
    box.hi[n - 1] = 2 * kPi;
    box.periodic.assign(n, false);
    box.periodic[n - 1] = true;
    return box;
}

/// F_c = r·cos(θ_c)·Π_{a<c}sin(θ_a), F_n = r·Π sin(θ_a).
std::vector<TrigComponent> sphere_components(int n, double r) {
    std::vector<TrigComponent> comps(n + 1);
    for (int c = 0; c <= n; ++c) {
        TrigTerm term;
        term.coeff = r;
        term.factors.assign(n, TrigFactor{});
        for (int a = 0; a < std::min(c, n); ++a) term.factors[a].kind = FactorKind::sin;
        if (c < n) term.factors[c].kind = FactorKind::cos;
        comps[c].push_back(std::move(term));
    }
    return comps;
}

} // namespace

std::unique_ptr<ImmersionChart> make_round_sphere(int n, double r) {
    if (n < 1) throw UsageError("round_sphere needs n ≥ 1");
    if (r <= 0) throw UsageError("round_sphere needs r > 0");
    return std::make_unique<SphereChart>(n, 1, sphere_box(n), sphere_components(n, r));
}

std::unique_ptr<ImmersionChart> make_small_sphere_in_sphere(int n, double r) {
    if (n < 1) throw UsageError("small_sphere_in_sphere needs n ≥ 1");
    if (r <= 0 || r > 1) throw UsageError("small_sphere_in_sphere needs 0 < r ≤ 1");
    auto comps = sphere_components(n, r);
    TrigComponent height;
    TrigTerm constant;
    constant.coeff = std::sqrt(std::max(0.0, 1.0 - r * r));
    constant.factors.assign(n, TrigFactor{});
    height.push_back(std::move(constant));
    comps.push_back(std::move(height));
    return std::make_unique<SphereChart>(n, 2, sphere_box(n), std::move(comps));
}

std::unique_ptr<ImmersionChart> make_flat_torus(const std::vector<double>& radii) {
    const int m = static_cast<int>(radii.size());
    if (m < 1) throw UsageError("flat_torus needs at least one radius");
    Box box;
    box.lo = Eigen::VectorXd::Zero(m);
    box.hi = Eigen::VectorXd::Constant(m, 2 * kPi);
    box.periodic.assign(m, true);
    std::vector<TrigComponent> comps(2 * m);
    for (int a = 0; a < m; ++a) {
        if (radii[a] <= 0) throw UsageError("flat_torus radii must be positive");
        TrigTerm ct, st;
        ct.coeff = st.coeff = radii[a];
        ct.factors.assign(m, TrigFactor{});
        st.factors.assign(m, TrigFactor{});
        ct.factors[a].kind = FactorKind::cos;
        st.factors[a].kind = FactorKind::sin;
        comps[2 * a].push_back(std::move(ct));
        comps[2 * a + 1].push_back(std::move(st));
    }
    return std::make_unique<TrigProductChart>(m, m, std::move(box), std::move(comps));
}

std::unique_ptr<ImmersionChart> make_catenoid(double a) {
    if (a <= 0) throw UsageError("catenoid needs a > 0");
    Box box;
    box.lo = Eigen::VectorXd::Zero(2);
    box.hi = Eigen::VectorXd::Zero(2);
    box.lo[0] = -a;
    box.hi[0] = a;
    box.lo[1] = 0;
    box.hi[1] = 2 * kPi;
    box.periodic = {false, true};
    std::vector<TrigComponent> comps(3);
    TrigTerm t0, t1, t2;
    t0.factors = {TrigFactor{FactorKind::cosh}, TrigFactor{FactorKind::cos}};
    t1.factors = {TrigFactor{FactorKind::cosh}, TrigFactor{FactorKind::sin}};
    t2.factors = {TrigFactor{FactorKind::id}, TrigFactor{FactorKind::one}};
    comps[0].push_back(t0);
    comps[1].push_back(t1);
    comps[2].push_back(t2);
    return std::make_unique<TrigProductChart>(2, 1, std::move(box), std::move(comps));
}

std::unique_ptr<ImmersionChart> make_kahler_graph(double extent) {
    if (extent <= 0) throw UsageError("kahler_graph needs extent > 0");
    const int n = 4;
    Box box;
    box.lo = Eigen::VectorXd::Constant(n, -extent);
    box.hi = Eigen::VectorXd::Constant(n, extent);
    box.periodic.assign(n, false);
    // coordinates (x1, y1, x2, y2) ↦ (x1, y1, x2, y2, x1x2−y1y2, x1y2+x2y1)
    std::vector<TrigComponent> comps(6);
    auto id_at = [n](std::initializer_list<int> axes, double coeff) {
        TrigTerm t;
        t.coeff = coeff;
        t.factors.assign(n, TrigFactor{});
        for (int a : axes) t.factors[a].kind = FactorKind::id;
        return t;
    };
    for (int c = 0; c < 4; ++c) comps[c].push_back(id_at({c}, 1.0));
    comps[4].push_back(id_at({0, 2}, 1.0));
    comps[4].push_back(id_at({1, 3}, -1.0));
    comps[5].push_back(id_at({0, 3}, 1.0));
    comps[5].push_back(id_at({1, 2}, 1.0));
    return std::make_unique<TrigProductChart>(4, 2, std::move(box), std::move(comps));
}

std::unique_ptr<ImmersionChart> make_polynomial_graph(double a, double b, double c,
                                                      double extent) {
    if (extent <= 0) throw UsageError("graph_of_polynomial needs extent > 0");
    Box box;
    box.lo = Eigen::VectorXd::Constant(2, -extent);
    box.hi = Eigen::VectorXd::Constant(2, extent);
    box.periodic.assign(2, false);
    std::vector<TrigComponent> comps(3);
    TrigTerm u1, u2;
    u1.factors = {TrigFactor{FactorKind::id}, TrigFactor{}};
    u2.factors = {TrigFactor{}, TrigFactor{FactorKind::id}};
    comps[0].push_back(u1);
    comps[1].push_back(u2);
    TrigTerm qa, qb, qc;
    qa.coeff = a;
    qa.factors = {TrigFactor{FactorKind::square}, TrigFactor{}};
    qb.coeff = b;
    qb.factors = {TrigFactor{}, TrigFactor{FactorKind::square}};
    qc.coeff = c;
    qc.factors = {TrigFactor{FactorKind::id}, TrigFactor{FactorKind::id}};
    comps[2].push_back(qa);
    comps[2].push_back(qb);
    comps[2].push_back(qc);
    return std::make_unique<TrigProductChart>(2, 1, std::move(box), std::move(comps));
}

std::unique_ptr<ImmersionChart> make_catalog_chart(const std::string& name,
                                                   const ChartParams& params) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "round_sphere") {
        return make_round_sphere(static_cast<int>(get("n", 2)), get("r", 1.0));
    }
    if (name == "small_sphere_in_sphere") {
        return make_small_sphere_in_sphere(static_cast<int>(get("n", 2)), get("r", 1.0));
    }
    if (name == "flat_torus") {
        std::vector<double> radii;
        for (int i = 1;; ++i) {
            auto it = params.find("r" + std::to_string(i));
            if (it == params.end()) break;
            radii.push_back(it->second);
        }
        if (radii.empty()) radii = {1.0, 1.0};
        return make_flat_torus(radii);
    }
    if (name == "clifford_torus") {
        const double r = 1.0 / std::sqrt(2.0);
        return make_flat_torus({r, r});
    }
    if (name == "catenoid") return make_catenoid(get("a", 1.2));
    if (name == "kahler_graph") return make_kahler_graph(get("extent", 1.0));
    if (name == "graph_of_polynomial") {
        return make_polynomial_graph(get("a", 1.0), get("b", 1.0), get("c", 0.0),
                                     get("extent", 1.0));
    }
    throw UsageError("unknown catalog immersion: " + name);
}

Jet2 FiniteDifferenceChart::jet2(const Eigen::VectorXd& u) const {
    const int m = ambient_dim();
    Jet2 j = Jet2::zeros(m, n_);
    j.value = eval_(u);
    Eigen::VectorXd x = u;
    const double h = step_;
    for (int a = 0; a < n_; ++a) {
        x[a] = u[a] + h;
        const Eigen::VectorXd fp = eval_(x);
        x[a] = u[a] - h;
        const Eigen::VectorXd fm = eval_(x);
        x[a] = u[a];
        j.d1.col(a) = (fp - fm) / (2 * h);
        const Eigen::VectorXd second = (fp - 2 * j.value + fm) / (h * h);
        for (int c = 0; c < m; ++c) j.d2[c](a, a) = second[c];
        for (int b = a + 1; b < n_; ++b) {
            x[a] = u[a] + h;
            x[b] = u[b] + h;
            const Eigen::VectorXd fpp = eval_(x);
            x[b] = u[b] - h;
            const Eigen::VectorXd fpm = eval_(x);
            x[a] = u[a] - h;
            const Eigen::VectorXd fmm = eval_(x);
            x[b] = u[b] + h;
            const Eigen::VectorXd fmp = eval_(x);
            x[a] = u[a];
            x[b] = u[b];
            const Eigen::VectorXd cross = (fpp - fpm - fmp + fmm) / (4 * h * h);
            for (int c = 0; c < m; ++c) j.d2[c](a, b) = j.d2[c](b, a) = cross[c];
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// GridChart
// ---------------------------------------------------------------------------

GridChart::GridChart(int n, int p, Box box, std::vector<int> shape,
                     std::vector<Eigen::VectorXd> points)
    : ImmersionChart(n, p, std::move(box)), shape_(std::move(shape)),
      points_(std::move(points)) {
    if (static_cast<int>(shape_.size()) != n) {
        throw UsageError("grid shape must list one size per axis");
    }
    long long total = 1;
    step_ = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a) {
        if (shape_[a] < 3) throw UsageError("grid axes need at least 3 nodes");
        total *= shape_[a];
        const double len = box_.hi[a] - box_.lo[a];
        step_[a] = box_.periodic[a] ? len / shape_[a] : len / (shape_[a] - 1);
    }
    if (total != static_cast<long long>(points_.size())) {
        throw UsageError("grid point count does not match the shape");
    }
    for (const auto& pt : points_) {
        if (pt.size() != ambient_dim()) {
            throw UsageError("grid point has wrong ambient dimension");
        }
    }
}

const Eigen::VectorXd& GridChart::point(const std::vector<int>& idx) const {
    long long flat = 0;
    for (int a = 0; a < n_; ++a) {
        int i = idx[a];
        if (box_.periodic[a]) {
            i = ((i % shape_[a]) + shape_[a]) % shape_[a];
        } else if (i < 0 || i >= shape_[a]) {
            throw DegenerateImmersion("grid derivative would leave the chart");
        }
        flat = flat * shape_[a] + i;
    }
    return points_[flat];
}

Eigen::VectorXd GridChart::node_point(const std::vector<int>& idx) const {
    Eigen::VectorXd u(n_);
    for (int a = 0; a < n_; ++a) u[a] = box_.lo[a] + idx[a] * step_[a];
    return u;
}

std::vector<int> GridChart::locate(const Eigen::VectorXd& u) const {
    std::vector<int> idx(n_);
    for (int a = 0; a < n_; ++a) {
        const double x = (u[a] - box_.lo[a]) / step_[a];
        const int i = static_cast<int>(std::lround(x));
        if (std::abs(x - i) > 1e-9 * (1.0 + std::abs(x))) {
            throw UsageError("grid charts evaluate at lattice nodes only");
        }
        idx[a] = i;
    }
    return idx;
}

Jet2 GridChart::jet_at_node(const std::vector<int>& idx) const {
    const int m = ambient_dim();
    Jet2 j = Jet2::zeros(m, n_);
    j.value = point(idx);
    auto shifted = [&](int a, int da, int b, int db) {
        std::vector<int> id2 = idx;
        id2[a] += da;
        if (b >= 0) id2[b] += db;
        return point(id2);
    };
    for (int a = 0; a < n_; ++a) {
        const Eigen::VectorXd fp = shifted(a, +1, -1, 0);
        const Eigen::VectorXd fm = shifted(a, -1, -1, 0);
        j.d1.col(a) = (fp - fm) / (2 * step_[a]);
        const Eigen::VectorXd second =
            (fp - 2 * j.value + fm) / (step_[a] * step_[a]);
        for (int c = 0; c < m; ++c) j.d2[c](a, a) = second[c];
        for (int b = a + 1; b < n_; ++b) {
            const Eigen::VectorXd cross =
                (shifted(a, +1, b, +1) - shifted(a, +1, b, -1) - shifted(a, -1, b, +1) +
                 shifted(a, -1, b, -1)) /
                (4 * step_[a] * step_[b]);
            for (int c = 0; c < m; ++c) j.d2[c](a, b) = j.d2[c](b, a) = cross[c];
        }
    }
    return j;
}

Jet2 GridChart::jet2(const Eigen::VectorXd& u) const { return jet_at_node(locate(u)); }

std::vector<Eigen::VectorXd> GridChart::sample_grid(const std::vector<int>&) const {
    // the chart's own lattice; open axes keep one-node margins for stencils
    std::vector<Eigen::VectorXd> out;
    std::vector<int> idx(n_, 0);
    for (int a = 0; a < n_; ++a) idx[a] = box_.periodic[a] ? 0 : 1;
    while (true) {
        out.push_back(node_point(idx));
        int a = n_ - 1;
        while (a >= 0) {
            const int last = box_.periodic[a] ? shape_[a] - 1 : shape_[a] - 2;
            if (++idx[a] <= last) break;
            idx[a] = box_.periodic[a] ? 0 : 1;
            --a;
        }
        if (a < 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fields and derived charts
// ---------------------------------------------------------------------------

Jet2 LinearMapField::jet2(const Eigen::VectorXd& u) const {
    const Jet2 base = chart_->jet2(u);
    Jet2 out;
    out.value = a_ * base.value;
    out.d1 = a_ * base.d1;
    const int m = static_cast<int>(a_.rows());
    out.d2.assign(m, Eigen::MatrixXd::Zero(chart_->dim(), chart_->dim()));
    for (int c = 0; c < m; ++c) {
        for (int s = 0; s < static_cast<int>(base.d2.size()); ++s) {
            if (a_(c, s) != 0.0) out.d2[c] += a_(c, s) * base.d2[s];
        }
    }
    return out;
}

std::unique_ptr<VariationField> make_torus_normal_mix() {
    // cos(θ2)·(cosθ1, sinθ1, 0, 0) + cos(θ1)·(0, 0, cosθ2, sinθ2)
    auto term = [](FactorKind f0, FactorKind f1) {
        TrigTerm t;
        t.factors = {TrigFactor{f0}, TrigFactor{f1}};
        return t;
    };
    std::vector<TrigComponent> comps(4);
    comps[0].push_back(term(FactorKind::cos, FactorKind::cos));
    comps[1].push_back(term(FactorKind::sin, FactorKind::cos));
    comps[2].push_back(term(FactorKind::cos, FactorKind::cos));
    comps[3].push_back(term(FactorKind::cos, FactorKind::sin));
    return std::make_unique<TrigProductField>(std::move(comps));
}

Eigen::VectorXd ReparametrizedChart::map_point(const Eigen::VectorXd& u) const {
    return u + evaluate_terms(delta_, u).value;
}

Jet2 ReparametrizedChart::jet2(const Eigen::VectorXd& u) const {
    const Jet2 d = evaluate_terms(delta_, u);
    const int n = dim();
    const Eigen::VectorXd psi = u + d.value;
    const Eigen::MatrixXd dpsi = Eigen::MatrixXd::Identity(n, n) + d.d1;
    const Jet2 base = base_->jet2(psi);
    Jet2 out;
    out.value = base.value;
    out.d1 = base.d1 * dpsi;
    const int m = ambient_dim();
    out.d2.assign(m, Eigen::MatrixXd::Zero(n, n));
    for (int c = 0; c < m; ++c) {
        out.d2[c] = dpsi.transpose() * base.d2[c] * dpsi;
        for (int i = 0; i < n; ++i) out.d2[c] += base.d1(c, i) * d.d2[i];
    }
    return out;
}

} // namespace gbcurv
