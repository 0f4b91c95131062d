#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "disagvar/core/csv.hpp"
#include "disagvar/core/rng.hpp"
#include "disagvar/core/stats.hpp"
#include "disagvar/structural/bands.hpp"
#include "disagvar/structural/impulse.hpp"
#include "disagvar/structural/io.hpp"

namespace bv = disagvar::bvar;
namespace st = disagvar::structural;
namespace rng = disagvar::rng;
namespace stats = disagvar::stats;

namespace {

// Assemble a draws container directly from coefficient matrices; only the
// pieces the structural summaries read are filled.
bv::PosteriorDraws make_draws(std::vector<Eigen::MatrixXd> phi,
                              std::vector<Eigen::MatrixXd> lambda,
                              std::vector<Eigen::VectorXd> sigma2,
                              int n_lags) {
    bv::PosteriorDraws d;
    d.n_vars = static_cast<int>(phi.front().rows());
    d.n_lags = n_lags;
    d.n_factors = static_cast<int>(lambda.front().cols());
    d.t_obs = 0;
    d.phi = std::move(phi);
    d.lambda = std::move(lambda);
    d.sigma2 = std::move(sigma2);
    return d;
}

// Coefficient matrix [const | A1 | A2 | ...] from a list of lag matrices.
Eigen::MatrixXd phi_from_lags(const std::vector<Eigen::MatrixXd>& lags) {
    const int n = static_cast<int>(lags.front().rows());
    const int p = static_cast<int>(lags.size());
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, 1 + n * p);
    for (int l = 0; l < p; ++l)
        phi.block(0, 1 + n * l, n, n) = lags[l];
    return phi;
}

} // namespace

TEST_CASE("moving-average responses match closed forms on small systems",
          "[structural]") {
    SECTION("single-variable first-order case decays geometrically") {
        const double a = 0.7, lam = 1.3;
        Eigen::MatrixXd phi(1, 2);
        phi << 0.4, a; // constant is ignored by the response path
        Eigen::MatrixXd lambda(1, 1);
        lambda << lam;
        auto draws = make_draws({phi}, {lambda}, {Eigen::VectorXd::Ones(1)}, 1);
        const auto set = st::impulse_responses(draws, 12);
        REQUIRE(set.n_draws == 1);
        CHECK(set.at(0, 0, 0, 0) == lam); // impact equals the loading itself
        double expected = lam;
        for (int h = 1; h <= 12; ++h) {
            expected *= a;
            CHECK(set.at(0, 0, 0, h) == Catch::Approx(expected).epsilon(1e-13));
        }
    }

    SECTION("impact period reproduces the loading matrix exactly") {
        rng::Stream g = rng::Stream::derive(404, {1});
        Eigen::MatrixXd a1(3, 3);
        for (int i = 0; i < 9; ++i) a1(i / 3, i % 3) = 0.2 * g.normal();
        Eigen::MatrixXd lambda(3, 2);
        for (int i = 0; i < 6; ++i) lambda(i / 2, i % 2) = g.normal();
        auto draws = make_draws({phi_from_lags({a1})}, {lambda},
                                {Eigen::VectorXd::Ones(3)}, 1);
        const auto set = st::impulse_responses(draws, 4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(set.at(0, i, j, 0) == lambda(i, j));
    }

    SECTION("two-variable system matches explicit matrix powers") {
        Eigen::MatrixXd a1(2, 2);
        a1 << 0.5, 0.1, -0.2, 0.3;
        Eigen::MatrixXd lambda = Eigen::MatrixXd::Identity(2, 2);
        auto draws = make_draws({phi_from_lags({a1})}, {lambda},
                                {Eigen::VectorXd::Ones(2)}, 1);
        const int horizon = 20;
        const auto set = st::impulse_responses(draws, horizon);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(2, 2);
        for (int h = 0; h <= horizon; ++h) {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    INFO("h=" << h << " i=" << i << " j=" << j);
                    CHECK(std::abs(set.at(0, i, j, h) - power(i, j)) < 1e-12);
                }
            power = a1 * power; // brute-force repeated multiplication
        }
    }

    SECTION("second-order lags feed the companion recursion") {
        // y_t = A1 y_{t-1} + A2 y_{t-2}: responses satisfy the same recursion
        // run by hand on the stacked form.
        Eigen::MatrixXd a1(2, 2), a2(2, 2);
        a1 << 0.4, 0.1, 0.0, 0.2;
        a2 << 0.1, -0.1, 0.05, 0.15;
        Eigen::MatrixXd lambda(2, 1);
        lambda << 1.0, -0.5;
        auto draws = make_draws({phi_from_lags({a1, a2})}, {lambda},
                                {Eigen::VectorXd::Ones(2)}, 2);
        const auto set = st::impulse_responses(draws, 10);
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
        c.topLeftCorner(2, 2) = a1;
        c.topRightCorner(2, 2) = a2;
        c.bottomLeftCorner(2, 2).setIdentity();
        Eigen::VectorXd stacked(4);
        stacked << lambda(0, 0), lambda(1, 0), 0.0, 0.0;
        for (int h = 0; h <= 10; ++h) {
            CHECK(std::abs(set.at(0, 0, 0, h) - stacked(0)) < 1e-12);
            CHECK(std::abs(set.at(0, 1, 0, h) - stacked(1)) < 1e-12);
            stacked = c * stacked;
        }
    }

    SECTION("cumulated paths are running sums") {
        Eigen::MatrixXd phi(1, 2);
        phi << 0.0, 0.5;
        Eigen::MatrixXd lambda(1, 1);
        lambda << 2.0;
        auto draws = make_draws({phi}, {lambda}, {Eigen::VectorXd::Ones(1)}, 1);
        const auto cum = st::cumulative(st::impulse_responses(draws, 3));
        CHECK(cum.at(0, 0, 0, 0) == Catch::Approx(2.0));
        CHECK(cum.at(0, 0, 0, 1) == Catch::Approx(3.0));
        CHECK(cum.at(0, 0, 0, 2) == Catch::Approx(3.5));
        CHECK(cum.at(0, 0, 0, 3) == Catch::Approx(3.75));
    }
}

TEST_CASE("posterior bands summarize included draws pointwise",
          "[structural]") {
    Eigen::MatrixXd lambda_base(1, 1);
    lambda_base << 1.0;
    Eigen::MatrixXd phi(1, 2);
    phi << 0.0, 0.5;

    SECTION("identical draws collapse every band onto the path") {
        std::vector<Eigen::MatrixXd> phis(5, phi), lams(5, lambda_base);
        std::vector<Eigen::VectorXd> s2(5, Eigen::VectorXd::Ones(1));
        auto set = st::impulse_responses(make_draws(phis, lams, s2, 1), 6);
        const auto b = st::posterior_bands(set);
        for (int h = 0; h <= 6; ++h) {
            CHECK(b.at(0, 0, 0, h) == b.at(0, 0, 1, h));
            CHECK(b.at(0, 0, 1, h) == b.at(0, 0, 2, h));
        }
    }

    SECTION("three distinct draws give their middle value as the median") {
        std::vector<Eigen::MatrixXd> phis(3, phi), lams;
        for (double v : {1.0, 2.0, 3.0}) {
            Eigen::MatrixXd l(1, 1);
            l << v;
            lams.push_back(l);
        }
        std::vector<Eigen::VectorXd> s2(3, Eigen::VectorXd::Ones(1));
        auto set = st::impulse_responses(make_draws(phis, lams, s2, 1), 0);
        const auto b = st::posterior_bands(set);
        CHECK(b.at(0, 0, 1, 0) == Catch::Approx(2.0));
    }

    SECTION("quantiles agree with a sort-and-interpolate oracle") {
        rng::Stream g = rng::Stream::derive(505, {1});
        std::vector<Eigen::MatrixXd> phis, lams;
        std::vector<Eigen::VectorXd> s2;
        std::vector<double> impacts;
        for (int m = 0; m < 101; ++m) {
            Eigen::MatrixXd l(1, 1);
            l << g.normal();
            impacts.push_back(l(0, 0));
            lams.push_back(l);
            phis.push_back(phi);
            s2.push_back(Eigen::VectorXd::Ones(1));
        }
        auto set = st::impulse_responses(make_draws(phis, lams, s2, 1), 0);
        const auto b = st::posterior_bands(set, {0.16, 0.5, 0.84});
        std::sort(impacts.begin(), impacts.end());
        auto brute = [&](double q) {
            const double pos = q * double(impacts.size() - 1);
            const size_t lo = static_cast<size_t>(std::floor(pos));
            const size_t hi = std::min(lo + 1, impacts.size() - 1);
            const double w = pos - double(lo);
            return (1.0 - w) * impacts[lo] + w * impacts[hi];
        };
        CHECK(b.at(0, 0, 0, 0) == Catch::Approx(brute(0.16)).margin(1e-14));
        CHECK(b.at(0, 0, 1, 0) == Catch::Approx(brute(0.5)).margin(1e-14));
        CHECK(b.at(0, 0, 2, 0) == Catch::Approx(brute(0.84)).margin(1e-14));
    }

    SECTION("band levels are validated") {
        std::vector<Eigen::MatrixXd> phis(2, phi), lams(2, lambda_base);
        std::vector<Eigen::VectorXd> s2(2, Eigen::VectorXd::Ones(1));
        auto set = st::impulse_responses(make_draws(phis, lams, s2, 1), 1);
        CHECK_THROWS_AS(st::posterior_bands(set, {}), disagvar::config_error);
        CHECK_THROWS_AS(st::posterior_bands(set, {0.0}),
                        disagvar::config_error);
        CHECK_THROWS_AS(st::posterior_bands(set, {1.0}),
                        disagvar::config_error);
    }

    SECTION("a single draw is rejected") {
        auto set = st::impulse_responses(
            make_draws({phi}, {lambda_base}, {Eigen::VectorXd::Ones(1)}, 1), 1);
        CHECK_THROWS_AS(st::posterior_bands(set), disagvar::data_error);
    }
}

TEST_CASE("variance decomposition shares are exact on impact and additive",
          "[structural]") {
    SECTION("square impact matrix with zero idiosyncratic noise") {
        Eigen::MatrixXd a1(2, 2);
        a1 << 0.3, 0.1, 0.0, 0.4;
        Eigen::MatrixXd lambda(2, 2);
        lambda << 0.9, -0.4, 0.2, 0.7;
        Eigen::VectorXd s2 = Eigen::VectorXd::Zero(2);
        auto draws = make_draws({phi_from_lags({a1})}, {lambda}, {s2}, 1);
        const auto set = st::fevd(draws, 6);
        for (int i = 0; i < 2; ++i)
            for (int h = 0; h <= 6; ++h) {
                const double common =
                    set.at(0, i, 0, h) + set.at(0, i, 1, h);
                CHECK(common == Catch::Approx(1.0).margin(1e-12));
                CHECK(set.at(0, i, 2, h) == Catch::Approx(0.0).margin(1e-12));
            }
    }

    SECTION("impact-period shares are row-normalized squared loadings") {
        Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(3, 3);
        Eigen::MatrixXd lambda(3, 2);
        lambda << 0.8, -0.3, 0.5, 0.6, 0.0, 1.1;
        Eigen::VectorXd s2(3);
        s2 << 0.25, 0.16, 0.49;
        auto draws = make_draws({phi_from_lags({a1})}, {lambda}, {s2}, 1);
        const auto set = st::fevd(draws, 0);
        for (int i = 0; i < 3; ++i) {
            const double total = lambda(i, 0) * lambda(i, 0) +
                                 lambda(i, 1) * lambda(i, 1) + s2(i);
            CHECK(set.at(0, i, 0, 0) ==
                  Catch::Approx(lambda(i, 0) * lambda(i, 0) / total));
            CHECK(set.at(0, i, 1, 0) ==
                  Catch::Approx(lambda(i, 1) * lambda(i, 1) / total));
            CHECK(set.at(0, i, 2, 0) == Catch::Approx(s2(i) / total));
        }
    }

    SECTION("scaling one impact column rescales numerators by its square") {
        Eigen::MatrixXd a1(2, 2);
        a1 << 0.5, 0.1, -0.2, 0.3;
        Eigen::MatrixXd lambda(2, 2);
        lambda << 0.8, -0.3, 0.5, 0.6;
        Eigen::VectorXd s2(2);
        s2 << 0.3, 0.6;
        const double c = 2.5;
        Eigen::MatrixXd scaled = lambda;
        scaled.col(0) *= c;
        auto base = make_draws({phi_from_lags({a1})}, {lambda}, {s2}, 1);
        auto bumped = make_draws({phi_from_lags({a1})}, {scaled}, {s2}, 1);
        const int horizon = 8;
        const auto ir0 = st::impulse_responses(base, horizon);
        const auto ir1 = st::impulse_responses(bumped, horizon);
        const auto f0 = st::fevd(base, horizon);
        const auto f1 = st::fevd(bumped, horizon);
        for (int i = 0; i < 2; ++i)
            for (int h = 0; h <= horizon; ++h) {
                // response path of the scaled shock scales linearly; the
                // other column is untouched
                CHECK(ir1.at(0, i, 0, h) ==
                      Catch::Approx(c * ir0.at(0, i, 0, h)).epsilon(1e-12));
                CHECK(ir1.at(0, i, 1, h) == ir0.at(0, i, 1, h));
                // share ratios strip the common total, exposing the squared
                // scaling of the numerator
                const double ratio0 = f0.at(0, i, 0, h) / f0.at(0, i, 1, h);
                const double ratio1 = f1.at(0, i, 0, h) / f1.at(0, i, 1, h);
                CHECK(ratio1 == Catch::Approx(c * c * ratio0).epsilon(1e-10));
                const double resid0 = f0.at(0, i, 2, h) / f0.at(0, i, 1, h);
                const double resid1 = f1.at(0, i, 2, h) / f1.at(0, i, 1, h);
                CHECK(resid1 == Catch::Approx(resid0).epsilon(1e-10));
            }
    }

    SECTION("single-factor shares with zero noise stay pinned at one") {
        Eigen::MatrixXd a1(2, 2);
        a1 << 0.4, 0.0, 0.1, 0.3;
        Eigen::MatrixXd lambda(2, 1);
        lambda << 0.7, -0.2;
        Eigen::VectorXd s2 = Eigen::VectorXd::Zero(2);
        for (double c : {1.0, 3.0}) {
            Eigen::MatrixXd l = lambda * c;
            auto draws = make_draws({phi_from_lags({a1})}, {l}, {s2}, 1);
            const auto set = st::fevd(draws, 4);
            for (int i = 0; i < 2; ++i)
                for (int h = 0; h <= 4; ++h)
                    CHECK(set.at(0, i, 0, h) ==
                          Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("variance decomposition matches a simulated forecast-error oracle",
          "[structural][heavy]") {
    Eigen::MatrixXd a1(2, 2);
    a1 << 0.5, 0.1, -0.2, 0.3;
    Eigen::MatrixXd lambda(2, 2);
    lambda << 0.8, -0.3, 0.5, 0.6;
    Eigen::VectorXd s2(2);
    s2 << 0.3, 0.6;
    const int horizon = 2;
    auto draws = make_draws({phi_from_lags({a1})}, {lambda}, {s2}, 1);
    const auto set = st::fevd(draws, horizon);

    // Simulate the forecast error source by source: with all other shocks
    // silenced, the sample variance of the horizon-H state estimates that
    // source's numerator. Linearity makes the contributions additive.
    const size_t paths = 1000000;
    rng::Stream g = rng::Stream::derive(606, {1});
    Eigen::MatrixXd var_f = Eigen::MatrixXd::Zero(2, 3); // var x source
    for (int source = 0; source < 3; ++source) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(2);
        Eigen::VectorXd acc2 = Eigen::VectorXd::Zero(2);
        for (size_t m = 0; m < paths; ++m) {
            Eigen::Vector2d y = Eigen::Vector2d::Zero();
            for (int s = 0; s <= horizon; ++s) {
                y = a1 * y;
                if (source < 2)
                    y += lambda.col(source) * g.normal();
                else
                    for (int i = 0; i < 2; ++i)
                        y(i) += g.normal(0.0, std::sqrt(s2(i)));
            }
            acc += y;
            acc2 += y.cwiseProduct(y);
        }
        var_f.col(source) =
            acc2 / double(paths) -
            (acc / double(paths)).cwiseProduct(acc / double(paths));
    }
    for (int i = 0; i < 2; ++i) {
        const double total = var_f.row(i).sum();
        for (int slot = 0; slot < 3; ++slot) {
            const double simulated = var_f(i, slot) / total;
            const double analytic = set.at(0, i, slot, horizon);
            INFO("variable " << i << " slot " << slot << ": simulated "
                             << simulated << " analytic " << analytic);
            CHECK(std::abs(simulated - analytic) < 0.01 * analytic);
        }
    }
}

TEST_CASE("explosive draws are flagged and excluded from bands",
          "[structural]") {
    Eigen::MatrixXd stable(1, 2), hot(1, 2);
    stable << 0.0, 0.5;
    hot << 0.0, 1.05;
    Eigen::MatrixXd lam(1, 1);
    lam << 1.0;
    Eigen::VectorXd s2 = Eigen::VectorXd::Ones(1);

    SECTION("one explosive draw is dropped and counted") {
        auto draws = make_draws({stable, hot, stable}, {lam, lam, lam},
                                {s2, s2, s2}, 1);
        const auto set = st::impulse_responses(draws, 5);
        CHECK(set.excluded_count() == 1);
        CHECK(set.explosive[1] == 1);
        const auto b = st::posterior_bands(set);
        CHECK(b.draws_used == 2);
        CHECK(b.draws_excluded == 1);
        // both included draws are identical, so the bands sit on their path
        CHECK(b.at(0, 0, 1, 5) == Catch::Approx(0.5 * std::pow(0.5, 4)));
    }

    SECTION("a unit root counts as explosive") {
        Eigen::MatrixXd unit(1, 2);
        unit << 0.0, 1.0;
        auto draws = make_draws({unit, stable}, {lam, lam}, {s2, s2}, 1);
        CHECK(st::impulse_responses(draws, 3).excluded_count() == 1);
    }

    SECTION("all draws explosive leaves nothing to summarize") {
        auto draws = make_draws({hot, hot}, {lam, lam}, {s2, s2}, 1);
        const auto set = st::impulse_responses(draws, 3);
        CHECK_THROWS_AS(st::posterior_bands(set), disagvar::numeric_error);
    }
}

TEST_CASE("shares sum to one and bands are ordered on random stable systems",
          "[structural]") {
    rng::Stream g = rng::Stream::derive(707, {1});
    const int n = 3, r = 2, p = 2;
    std::vector<Eigen::MatrixXd> phis, lams;
    std::vector<Eigen::VectorXd> s2s;
    for (int m = 0; m < 40; ++m) {
        std::vector<Eigen::MatrixXd> lags;
        for (int l = 0; l < p; ++l) {
            Eigen::MatrixXd a(n, n);
            for (int i = 0; i < n * n; ++i) a(i / n, i % n) = g.normal();
            lags.push_back(a);
        }
        // rescale until comfortably stable
        Eigen::MatrixXd phi = phi_from_lags(lags);
        while (st::spectral_radius(st::companion_matrix(phi, p)) > 0.9)
            for (auto& a : lags) {
                a *= 0.7;
                phi = phi_from_lags(lags);
            }
        phis.push_back(phi);
        Eigen::MatrixXd lambda(n, r);
        for (int i = 0; i < n * r; ++i) lambda(i / r, i % r) = g.normal();
        lams.push_back(lambda);
        Eigen::VectorXd s2(n);
        for (int i = 0; i < n; ++i) s2(i) = 0.1 + g.uniform01();
        s2s.push_back(s2);
    }
    auto draws = make_draws(phis, lams, s2s, p);
    const int horizon = 10 * p + 4;
    const auto irfs = st::impulse_responses(draws, horizon);
    const auto shares = st::fevd(draws, horizon);
    REQUIRE(irfs.excluded_count() == 0);

    for (size_t d = 0; d < draws.size(); ++d) {
        double peak0 = 0.0, peak_far = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) {
                peak0 = std::max(peak0, std::abs(irfs.at(d, i, j, 0)));
                peak_far =
                    std::max(peak_far, std::abs(irfs.at(d, i, j, horizon)));
            }
        CHECK(peak_far < peak0); // geometric decay past ten lag lengths
        for (int i = 0; i < n; ++i)
            for (int h = 0; h <= horizon; ++h) {
                double sum = 0.0;
                for (int j = 0; j <= r; ++j) {
                    const double share = shares.at(d, i, j, h);
                    CHECK(share >= 0.0);
                    CHECK(share <= 1.0);
                    sum += share;
                }
                CHECK(std::abs(sum - 1.0) < 1e-10);
            }
    }

    const auto bands = st::posterior_bands(irfs);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j)
            for (int h = 0; h <= horizon; ++h) {
                CHECK(bands.at(i, j, 0, h) <= bands.at(i, j, 1, h));
                CHECK(bands.at(i, j, 1, h) <= bands.at(i, j, 2, h));
            }
}

TEST_CASE("structural outputs round-trip through csv", "[structural]") {
    Eigen::MatrixXd a1(2, 2);
    a1 << 0.5, 0.1, -0.2, 0.3;
    Eigen::MatrixXd lambda(2, 2);
    lambda << 0.8, -0.3, 0.5, 0.6;
    Eigen::VectorXd s2(2);
    s2 << 0.3, 0.6;
    std::vector<Eigen::MatrixXd> phis(7, phi_from_lags({a1})), lams;
    std::vector<Eigen::VectorXd> s2s(7, s2);
    for (int m = 0; m < 7; ++m)
        lams.push_back(lambda +
                       0.01 * double(m) * Eigen::MatrixXd::Ones(2, 2));
    auto draws = make_draws(phis, lams, s2s, 1);
    const int horizon = 5;
    const auto irfs = st::impulse_responses(draws, horizon);
    const auto irf_bands = st::posterior_bands(irfs);
    const auto cum_bands = st::posterior_bands(st::cumulative(irfs));
    const auto fevd_bands = st::posterior_bands(st::fevd(draws, horizon),
                                                std::vector<double>{0.5});

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "disagvar_structural_io";
    std::filesystem::remove_all(dir);
    st::write_structural(dir, irf_bands, cum_bands, fevd_bands,
                         {"output", "uncertainty"}, {"supply", "demand"});

    const auto irf_csv = disagvar::read_csv(dir / "irf.csv");
    REQUIRE(irf_csv.header ==
            std::vector<std::string>{"variable", "shock", "horizon", "q16",
                                     "q50", "q84"});
    CHECK(irf_csv.rows.size() == 2 * 2 * (horizon + 1));
    CHECK(irf_csv.rows.front()[0] == "output");
    CHECK(irf_csv.rows.front()[1] == "supply");

    const auto fevd_csv = disagvar::read_csv(dir / "fevd.csv");
    REQUIRE(fevd_csv.header ==
            std::vector<std::string>{"variable", "shock", "horizon", "q50"});
    CHECK(fevd_csv.rows.size() == 2 * 3 * (horizon + 1));
    bool saw_residual = false;
    for (const auto& row : fevd_csv.rows) {
        if (row[1] == "residual") saw_residual = true;
        const double v = disagvar::parse_double(row[3], "fevd");
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(saw_residual);

    // written medians parse back to the computed values bit for bit
    size_t row_idx = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h <= horizon; ++h, ++row_idx) {
                const auto& row = irf_csv.rows[row_idx];
                CHECK(disagvar::parse_double(row[4], "irf") ==
                      irf_bands.at(i, j, 1, h));
            }

    const auto cum_csv = disagvar::read_csv(dir / "irf_cumulative.csv");
    CHECK(cum_csv.rows.size() == irf_csv.rows.size());

    std::ifstream mf(dir / "manifest.json");
    REQUIRE(mf.good());
    nlohmann::json m;
    mf >> m;
    CHECK(m["draws_used"] == 7);
    CHECK(m["draws_excluded_explosive"] == 0);
    CHECK(m["horizon"] == horizon);
    CHECK(m["shocks"] == std::vector<std::string>({"supply", "demand"}));
    std::filesystem::remove_all(dir);
}
