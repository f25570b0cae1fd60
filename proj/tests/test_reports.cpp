#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <numbers>

#include "gbcurv/json_io.hpp"

using namespace gbcurv;

TEST_CASE("double form serialization round-trips losslessly") {
    RandomSource rng(1234);
    DoubleForm w(4, 2, 1);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) w.at(i, j) = rng.uniform_signed();
    const std::string text = dump_json(to_json(w));
    const DoubleForm back = double_form_from_json(Json::parse(text));
    CHECK(back.dimension() == 4);
    CHECK(back.p() == 2);
    CHECK(back.q() == 1);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) CHECK(back.at(i, j) == w.at(i, j));
}

TEST_CASE("floats print with 17 significant digits and a decimal marker") {
    const std::string text = dump_json(Json{{"x", 1.0 / 3.0}, {"y", 3.0}});
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(text.find("\"y\": 3.0") != std::string::npos);
}

TEST_CASE("invariant reports round-trip and serialize deterministically") {
    const auto torus = make_flat_torus({1.0, 1.0});
    const auto samples = torus->sample_grid({6, 6});
    auto report = minimality_residual(*torus, 1, samples);
    report.timing_ms = 0; // timings are stripped in deterministic mode
    const std::string once = dump_json(to_json(report));
    auto report2 = minimality_residual(*torus, 1, samples);
    report2.timing_ms = 0;
    const std::string twice = dump_json(to_json(report2));
    CHECK(once == twice);

    const Json parsed = Json::parse(once);
    CHECK(parsed.at("verdict") == "minimal");
    CHECK(parsed.at("max_residual").get<double>() == report.max_residual);
    CHECK(parsed.at("samples").size() == samples.size());
    // verdict invariant: "minimal" ⇔ max_residual < tolerance
    CHECK((parsed.at("max_residual").get<double>() < parsed.at("tolerance").get<double>()) ==
          (parsed.at("verdict") == "minimal"));
}

TEST_CASE("grid immersion files load and evaluate") {
    // serialize a flat torus lattice into the documented immersion format
    const auto torus = make_flat_torus({1.0, 1.0});
    const int m = 24;
    Json points = Json::array();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd u(2);
            u << i * 2 * std::numbers::pi / m, j * 2 * std::numbers::pi / m;
            points.push_back(to_json(Eigen::VectorXd(torus->jet2(u).value)));
        }
    }
    const Json file{
        {"n", 2},
        {"p", 2},
        {"domain",
         {{"min", {0.0, 0.0}},
          {"max", {2 * std::numbers::pi, 2 * std::numbers::pi}},
          {"periodic", {true, true}}}},
        {"grid", {m, m}},
        {"points", std::move(points)}};
    const std::string path = "test_torus_grid.json";
    {
        std::ofstream out(path);
        out << dump_json(file);
    }
    const auto chart = load_grid_chart(path);
    CHECK(chart->dim() == 2);
    CHECK(chart->codim() == 2);
    const auto report = minimality_residual(*chart, 1, chart->sample_grid({}));
    CHECK(report.verdict == "minimal");
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_grid_chart("does_not_exist.json"), UsageError);
}
