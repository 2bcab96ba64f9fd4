#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mlm/shotnoise.hpp"
#include "oracles.hpp"

using namespace mlm;
using Catch::Approx;

TEST_CASE("point system basics") {
    auto ps = generate_points(42, 1000);
    for (std::size_t i = 1; i < ps.N; ++i) CHECK(ps.gamma[i] > ps.gamma[i - 1]);
    for (double v : ps.v) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    for (double s : ps.sign) CHECK(std::fabs(s) == 1.0);
    auto ps2 = generate_points(42, 1000);
    CHECK(ps.gamma == ps2.gamma);
    CHECK(ps.v == ps2.v);
    CHECK(ps.sign == ps2.sign);
    CHECK_THROWS_AS(generate_points(42, 0), std::domain_error);
}

TEST_CASE("arrival times have the right growth rate") {
    auto ps = generate_points(7, 100000);
    CHECK(ps.gamma.back() / 100000.0 > 0.98);
    CHECK(ps.gamma.back() / 100000.0 < 1.02);
}

TEST_CASE("extending N preserves the prefix") {
    auto small = generate_points(9, 500);
    auto big = generate_points(9, 2000);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(small.gamma[i] == big.gamma[i]);
        CHECK(small.v[i] == big.v[i]);
        CHECK(small.sign[i] == big.sign[i]);
    }
}

TEST_CASE("pointwise sum matches a naive oracle") {
    auto ps = generate_points(3, 1000);
    auto alpha = AlphaFunction::affine(1.2, 0.6);
    for (double t : {0.0, 0.37, 1.0}) {
        double naive = 0.0;
        double q = 1.0 / alpha.evaluate(t);
        for (std::size_t i = 0; i < ps.N; ++i)
            if (ps.v[i] <= t) naive += ps.sign[i] * std::pow(ps.gamma[i], -q);
        CHECK(eval_Y(ps, alpha, t) == Approx(naive).margin(1e-12));
    }
    CHECK_THROWS_AS(eval_Y(ps, alpha, 1.5), std::domain_error);
}

TEST_CASE("jump sizes") {
    auto ps = generate_points(3, 10);
    auto alpha = AlphaFunction::constant(1.5);
    double expect = ps.sign[0] * std::pow(oracle::stable_norm_constant(1.5), 2.0 / 3.0) *
                    std::pow(ps.gamma[0], -2.0 / 3.0);
    CHECK(jump_size(ps, alpha, 1) == Approx(expect).epsilon(1e-8));
    CHECK_THROWS_AS(jump_size(ps, alpha, 0), std::out_of_range);
    CHECK_THROWS_AS(jump_size(ps, alpha, 11), std::out_of_range);
}

TEST_CASE("grid paths agree with pointwise evaluation") {
    auto ps = generate_points(11, 2000);
    auto alpha = AlphaFunction::sinusoidal(1.5, 0.2, 1.0, 0.3);
    std::size_t n = 64;
    auto pathY = sample_path_Y(ps, alpha, n);
    auto pathD = sample_path_D(ps, alpha, n);
    for (std::size_t j = 0; j <= n; ++j) {
        double t = static_cast<double>(j) / n;
        CHECK(pathY.values[j] == Approx(eval_Y(ps, alpha, t)).margin(1e-10));
        double pref = stable_norm_root(alpha.evaluate(t));
        CHECK(pathD.values[j] == Approx(pref * eval_Y(ps, alpha, t)).margin(1e-10));
    }
}

TEST_CASE("structural identities between the processes") {
    auto ps = generate_points(17, 5000);
    auto varying = AlphaFunction::affine(1.2, 0.6);
    std::size_t n = 256;

    auto B = sample_path_B(ps, varying, n);
    auto Z = sample_path_Z(ps, varying, n);
    auto W = sample_path_W(ps, varying, n);
    for (std::size_t j = 0; j <= n; ++j)
        CHECK(W.values[j] + Z.values[j] == Approx(B.values[j]).margin(1e-12));
    CHECK(B.values[0] == 0.0);

    auto constant = AlphaFunction::constant(1.5);
    auto Bc = sample_path_B(ps, constant, n);
    auto Dc = sample_path_D(ps, constant, n);
    auto Yc = sample_path_Y(ps, constant, n);
    double root = stable_norm_root(1.5);
    for (std::size_t j = 0; j <= n; ++j) {
        CHECK(Dc.values[j] == Approx(Bc.values[j]).margin(1e-12));
        CHECK(Bc.values[j] == Approx(root * Yc.values[j]).margin(1e-12));
    }

    auto D = sample_path_D(ps, varying, n);
    auto A = smooth_part_A(B, D);
    CHECK(A.values[0] == 0.0);
    for (std::size_t j = 0; j <= n; ++j)
        CHECK(A.values[j] == Approx(D.values[j] - B.values[j]).margin(1e-14));
    CHECK_THROWS_AS(smooth_part_A(B, B), std::domain_error);
}

TEST_CASE("two-point varying-alpha path matches a hand-computed sum") {
    auto ps = generate_points(23, 2);
    auto alpha = AlphaFunction::affine(1.2, 0.6);
    std::size_t n = 8;
    auto D = sample_path_D(ps, alpha, n);
    for (std::size_t j = 0; j <= n; ++j) {
        double t = static_cast<double>(j) / n;
        double a = alpha.evaluate(t);
        double sum = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            if (ps.v[i] <= t) sum += ps.sign[i] * std::pow(ps.gamma[i], -1.0 / a);
        CHECK(D.values[j] == Approx(stable_norm_root(a) * sum).margin(1e-12));
    }
}

TEST_CASE("increments recover individual jumps") {
    auto ps = generate_points(5, 50);
    auto alpha = AlphaFunction::affine(1.2, 0.6);
    std::size_t n = 1 << 14;
    auto B = sample_path_B(ps, alpha, n);
    // pick a jump isolated in its grid cell
    for (std::size_t i = 1; i <= ps.N; ++i) {
        auto cell = static_cast<std::size_t>(std::ceil(ps.v[i - 1] * n));
        bool alone = true;
        for (std::size_t k = 1; k <= ps.N; ++k) {
            if (k == i) continue;
            if (static_cast<std::size_t>(std::ceil(ps.v[k - 1] * n)) == cell)
                alone = false;
        }
        if (!alone) continue;
        double inc = B.values[cell] - B.values[cell - 1];
        CHECK(inc == Approx(jump_size(ps, alpha, i)).margin(1e-12));
    }
}

TEST_CASE("truncation error report") {
    auto alpha = AlphaFunction::constant(1.5);
    CHECK(truncation_error_report(1, alpha, 128, 1000, 1000) == 0.0);
    double e12 = truncation_error_report(1, alpha, 128, 1000, 2000);
    double e13 = truncation_error_report(1, alpha, 128, 1000, 4000);
    double e23 = truncation_error_report(1, alpha, 128, 2000, 4000);
    CHECK(e13 <= e12 + e23 + 1e-12);
    CHECK_THROWS_AS(truncation_error_report(1, alpha, 128, 2000, 1000),
                    std::domain_error);
}

TEST_CASE("doubling the truncation shrinks the tail, median over seeds") {
    auto alpha = AlphaFunction::constant(1.5);
    int wins = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        double coarse = truncation_error_report(s, alpha, 128, 500, 1000);
        double fine = truncation_error_report(s, alpha, 128, 4000, 8000);
        if (fine < coarse) ++wins;
    }
    CHECK(wins >= 14);
}
