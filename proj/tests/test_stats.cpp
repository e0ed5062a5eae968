#include "cxlab/error.hpp"
#include "cxlab/rng.hpp"
#include "cxlab/stats.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

using namespace cxlab;

namespace {

using V = std::vector<double>;

V get(const nlohmann::json& j, const char* key) { return j.at(key).get<V>(); }

}

TEST_SUITE("stats") {

TEST_CASE("reference fixtures within 1e-6")
{
    std::ifstream in(CXLAB_TEST_DATA "/stats_reference.json");
    REQUIRE(in);
    const auto doc = nlohmann::json::parse(in);
    std::size_t n = 0;
    for (const auto& f : doc.at("fixtures")) {
        const auto kind = f.at("kind").get<std::string>();
        const auto& e = f.at("expected");
        CAPTURE(kind);
        CAPTURE(n);
        if (kind == "pearson") {
            CHECK(std::abs(pearson(get(f, "x"), get(f, "y")) - e.at("r").get<double>()) < 1e-6);
        } else if (kind == "spearman") {
            CHECK(std::abs(spearman(get(f, "x"), get(f, "y")) - e.at("rho").get<double>()) < 1e-6);
        } else if (kind == "ols") {
            const auto fit = ols(get(f, "x"), get(f, "y"));
            CHECK(std::abs(fit.intercept - e.at("intercept").get<double>()) < 1e-6);
            CHECK(std::abs(fit.slope - e.at("slope").get<double>()) < 1e-6);
            CHECK(std::abs(fit.r_squared - e.at("r_squared").get<double>()) < 1e-6);
        } else if (kind == "welch") {
            const auto t = welch_t(get(f, "a"), get(f, "b"));
            CHECK(std::abs(t.t - e.at("t").get<double>()) < 1e-6);
            CHECK(std::abs(t.df - e.at("df").get<double>()) < 1e-6);
            CHECK(std::abs(t.p_value - e.at("p_value").get<double>()) < 1e-6);
        } else if (kind == "kruskal") {
            const auto k = kruskal_wallis(f.at("groups").get<std::vector<V>>());
            CHECK(std::abs(k.h - e.at("h").get<double>()) < 1e-6);
            CHECK(std::abs(k.p_value - e.at("p_value").get<double>()) < 1e-6);
        } else {
            FAIL("unknown fixture kind");
        }
        ++n;
    }
    CHECK(n == 20);
}

TEST_CASE("hand-computed examples")
{
    CHECK(pearson(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5}) == doctest::Approx(0.8));
    const auto fit = ols(V{0, 1, 2}, V{0, 1, 1});
    CHECK(fit.slope == doctest::Approx(0.5));
    CHECK(fit.intercept == doctest::Approx(1.0 / 6));
    CHECK(fit.r_squared == doctest::Approx(0.75));
    CHECK(mid_ranks(V{10, 20, 20, 30}) == V{1, 2.5, 2.5, 4});
    CHECK(spearman(V{1, 2, 2, 3}, V{1, 2, 3, 4}) == doctest::Approx(0.9486832980505138));
    CHECK_THROWS_AS(pearson(V{1, 1, 1}, V{1, 2, 3}), ValidationError);
    CHECK_THROWS_AS(pearson(V{1, 2}, V{1, 2, 3}), ValidationError);
}

TEST_CASE("quantile regression matches a dense grid search")
{
    Rng rng(41);
    for (int t = 0; t < 12; ++t) {
        V xs, ys;
        const std::size_t n = 15 + rng.below(30);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = std::round(rng.uniform() * 40.0);
            xs.push_back(x);
            ys.push_back(2.0 + 0.5 * x + 3.0 * rng.normal());
        }
        for (double tau : {0.05, 0.14, 0.5, 0.95}) {
            const auto q = quantile_regression(xs, ys, tau);
            CHECK(q.loss == doctest::Approx(pinball_loss(xs, ys, tau, q.intercept, q.slope)).epsilon(1e-12));
            const double grid = oracle::grid_min_pinball(xs, ys, tau);
            CHECK(q.loss <= grid + 1e-9);
            CHECK(std::abs(q.loss - grid) < 1e-9);
        }
    }
}

TEST_CASE("quantile line passes through data points")
{
    const V xs{1, 2, 3, 4, 5}, ys{1, 2, 3, 4, 5};
    const auto q = quantile_regression(xs, ys, 0.5);
    CHECK(q.slope == doctest::Approx(1.0));
    CHECK(q.intercept == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.loss == doctest::Approx(0.0));
}

TEST_CASE("pareto sample recovers its exponent")
{
    Rng rng(9);
    V v;
    for (int i = 0; i < 5000; ++i)
        v.push_back(1.0 / std::pow(1.0 - rng.uniform(), 1.0 / 2.0));
    const auto f = fit_distribution(v, Family::Pareto);
    CHECK(std::abs(f.params[1] - 2.0) < 0.2);
    CHECK(rank_fits(v).front().family == Family::Pareto);
}

TEST_CASE("geometric sample prefers the geometric family")
{
    Rng rng(19);
    V v;
    for (int i = 0; i < 3000; ++i) {
        int k = 1;
        while (rng.uniform() > 0.3)
            ++k;
        v.push_back(k);
    }
    CHECK(rank_fits(v).front().family == Family::Geometric);
}

TEST_CASE("gaussian sample prefers the gaussian family")
{
    Rng rng(29);
    V v;
    for (int i = 0; i < 3000; ++i)
        v.push_back(50.0 + 5.0 * rng.normal());
    CHECK(rank_fits(v).front().family == Family::Gaussian);
}

TEST_CASE("fits need enough distinct data")
{
    CHECK_THROWS_AS(fit_distribution(V(5, 1.0), Family::Gaussian), ValidationError);
    CHECK_THROWS_AS(fit_distribution(V(30, 1.0), Family::Gaussian), ValidationError);
}

TEST_CASE("welch and kruskal-wallis on simulated data")
{
    Rng rng(50);
    V a, b, c;
    for (int i = 0; i < 200; ++i) {
        a.push_back(rng.normal());
        b.push_back(rng.normal() + 1.0);
        c.push_back(rng.normal());
    }
    CHECK(welch_t(a, b).p_value < 1e-6);
    CHECK(welch_t(a, c).p_value > 0.001);
    CHECK(kruskal_wallis({a, b, c}).p_value < 1e-6);
    CHECK(kruskal_wallis({a, c}).df == doctest::Approx(1.0));
}

TEST_CASE("cucconi detects location and scale shifts")
{
    Rng rng(60);
    V base, loc, scale;
    for (int i = 0; i < 60; ++i) {
        base.push_back(rng.normal());
        loc.push_back(rng.normal() + 1.0);
        scale.push_back(3.0 * rng.normal());
    }
    CHECK(cucconi(base, loc, 2000, 1).p_value < 0.05);
    CHECK(cucconi(base, scale, 2000, 2).p_value < 0.05);
    CHECK(cucconi(base, base, 2000, 4).p_value >= 0.05);

    // Null case: rejection rate near the nominal level.
    int rejected = 0;
    constexpr int kReps = 100;
    for (int r = 0; r < kReps; ++r) {
        V a, b;
        for (int i = 0; i < 40; ++i) {
            a.push_back(rng.normal());
            b.push_back(rng.normal());
        }
        rejected += cucconi(a, b, 400, 100 + r).p_value < 0.05;
    }
    CHECK(rejected <= 12);
    const auto r1 = cucconi(base, loc, 500, 7);
    const auto r2 = cucconi(base, loc, 500, 7);
    CHECK(r1.p_value == r2.p_value);
    CHECK(r1.permutations == 500);
}

TEST_CASE("roc auc")
{
    const std::vector<int> labels{0, 0, 1, 1};
    CHECK(roc_auc(V{0.1, 0.2, 0.8, 0.9}, labels) == doctest::Approx(1.0));
    CHECK(roc_auc(V{0.9, 0.8, 0.2, 0.1}, labels) == doctest::Approx(0.0));
    CHECK(roc_auc(V{0.5, 0.5, 0.5, 0.5}, labels) == doctest::Approx(0.5));
    CHECK(roc_auc(V{0.1, 0.4, 0.35, 0.8}, labels) == doctest::Approx(0.75));
    const auto curve = roc_curve(V{0.1, 0.4, 0.35, 0.8}, labels);
    CHECK(curve.front().fpr == 0.0);
    CHECK(curve.back().tpr == 1.0);
}

TEST_CASE("knn separates clusters")
{
    std::vector<std::vector<double>> f;
    std::vector<int> labels;
    Rng rng(70);
    for (int i = 0; i < 40; ++i) {
        const int lab = i % 2;
        f.push_back({lab * 5.0 + rng.normal(), lab * 5.0 + rng.normal()});
        labels.push_back(lab);
    }
    const auto r = knn_classify(f, labels, 5);
    CHECK(r.accuracy > 0.95);
    CHECK(r.auc > 0.95);
    CHECK(r.predictions.size() == 40);
}

TEST_CASE("summary and power law")
{
    const auto s = summarize(V{1, 2, 3, 4});
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.q1 == doctest::Approx(1.75));
    CHECK(s.mean == doctest::Approx(2.5));
    V xs, ys;
    for (int i = 1; i <= 20; ++i) {
        xs.push_back(i);
        ys.push_back(3.0 * std::pow(i, 0.5));
    }
    const auto p = fit_power_law(xs, ys);
    CHECK(p.coefficient == doctest::Approx(3.0));
    CHECK(p.exponent == doctest::Approx(0.5));
}

}
