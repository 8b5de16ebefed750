#include <doctest.h>

#include <cmath>
#include <random>

#include "qpc/fourier.hpp"

using namespace qpc;

TEST_CASE("mat2 basics: det, adjugate, inverse, rotation") {
    Mat2 m{cplx(2.0, 1.0), cplx(0.5), cplx(-1.0), cplx(3.0, -2.0)};
    Mat2 id = m * m.inverse();
    CHECK((id - Mat2::identity()).norm() < 1e-14);
    CHECK(std::abs(m.adjugate().det() - m.det()) < 1e-14);

    // R_phi = [[cos 2pi phi, -sin], [sin, cos]]; real rotation for real phi.
    Mat2 r = rotation(cplx(0.25, 0.0));
    CHECK(std::abs(r.a) < 1e-15);
    CHECK(std::abs(r.c - cplx(1.0)) < 1e-15);
    CHECK(std::abs(r.det() - cplx(1.0)) < 1e-15);
    // R_{-0.1 i}: norm cosh(0.2 pi) + sinh(0.2 pi) = e^{0.2 pi}
    Mat2 ri = rotation(cplx(0.0, -0.1));
    CHECK(ri.a.real() == doctest::Approx(std::cosh(0.2 * kPi)).epsilon(1e-12));
    CHECK(std::abs(ri.det() - cplx(1.0)) < 1e-12);
}

TEST_CASE("projective action and sphere distance") {
    ProjPoint inf = ProjPoint::infinity();
    ProjPoint zero = ProjPoint::from_chart(cplx(0.0));
    CHECK(sphere_distance(inf, zero) == doctest::Approx(1.0));
    ProjPoint i = ProjPoint::from_chart(cplx(0.0, 1.0));
    ProjPoint mi = ProjPoint::from_chart(cplx(0.0, -1.0));
    CHECK(sphere_distance(i, mi) == doctest::Approx(1.0));
    CHECK(std::abs(disk_chart(i)) < 1e-15);

    // diag(2, 1/2) fixes 0 and infinity.
    Mat2 d{cplx(2.0), cplx(0.0), cplx(0.0), cplx(0.5)};
    CHECK(sphere_distance(act(d, inf), inf) < 1e-15);
    CHECK(sphere_distance(act(d, zero), zero) < 1e-15);
}

TEST_CASE("sphere distance is SU(2) invariant") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        // Random SU(2): [[a, b], [-conj b, conj a]], |a|^2 + |b|^2 = 1.
        cplx a(u(rng), u(rng)), b(u(rng), u(rng));
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n < 1e-3) continue;
        a /= n;
        b /= n;
        Mat2 g{a, b, -std::conj(b), std::conj(a)};
        ProjPoint x(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        ProjPoint y(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        double before = sphere_distance(x, y);
        double after = sphere_distance(act(g, x), act(g, y));
        CHECK(std::abs(before - after) < 1e-12);
    }
}

TEST_CASE("fourier fit is exact for trigonometric polynomials") {
    FourierMap f = FourierMap::fit_function(
        [](double x) { return std::exp(cplx(0.0, kTwoPi * x)); }, 64, 0.5);
    CHECK(f.max_mode() == 1);
    CHECK(std::abs(f.coef(1) - cplx(1.0)) < 1e-14);
    // e^{2 pi i z} at z = 0.3i -> e^{-0.6 pi}
    CHECK(std::abs(f.eval(cplx(0.0, 0.3)) - std::exp(-0.6 * kPi)) < 1e-13);
    CHECK(std::abs(f.eval(cplx(0.0, 0.3)).real() -
                   0.151836) < 1e-6);

    FourierMap g = FourierMap::fit_function(
        [](double x) { return 2.0 * std::cos(kTwoPi * x); }, 64, 0.5);
    // 2 cos(2 pi z) at z = i t -> 2 cosh(2 pi t)
    CHECK(std::abs(g.eval(cplx(0.0, 0.05)) - 2.0 * std::cosh(0.1 * kPi)) <
          1e-13);
    CHECK(g.eval(cplx(0.0, 0.05)).real() == doctest::Approx(2.0993).epsilon(1e-4));
    CHECK(g.is_real_symmetric());
}

TEST_CASE("strip and line norms match closed forms") {
    FourierMap f = FourierMap::fit_function(
        [](double x) { return std::exp(cplx(0.0, kTwoPi * x)); }, 128, 0.5);
    // sup over |Im z| <= 0.1 of |e^{2 pi i z}| = e^{0.2 pi}
    CHECK(f.strip_norm(0.1) == doctest::Approx(std::exp(0.2 * kPi)).epsilon(1e-12));
    CHECK(f.strip_norm(0.1) == doctest::Approx(1.8745).epsilon(1e-4));
    CHECK(f.line_norm(-0.1) == doctest::Approx(std::exp(0.2 * kPi)).epsilon(1e-12));
    CHECK(f.line_norm(0.1) == doctest::Approx(std::exp(-0.2 * kPi)).epsilon(1e-12));
}

TEST_CASE("reflect is an involution and detects real-symmetry") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> modes(9);
    for (auto& c : modes) c = cplx(u(rng), u(rng));
    FourierMap f = FourierMap::from_modes(std::move(modes), 0.2);
    FourierMap rr = f.reflect().reflect();
    for (int k = -4; k <= 4; ++k) CHECK(std::abs(rr.coef(k) - f.coef(k)) < 1e-15);
    CHECK(!f.is_real_symmetric(1e-3));
    FourierMap sym = cplx(0.5) * (f + f.reflect());
    CHECK(sym.is_real_symmetric(1e-12));
}

TEST_CASE("convolution product equals pointwise product") {
    FourierMap f = FourierMap::fit_function(
        [](double x) { return std::cos(kTwoPi * x) + 0.3; }, 64, 0.3);
    FourierMap g = FourierMap::fit_function(
        [](double x) { return std::sin(kTwoPi * 2.0 * x) - 1.1; }, 64, 0.3);
    FourierMap fg = f * g;
    for (int j = 0; j < 37; ++j) {
        cplx z(j / 37.0, 0.07);
        CHECK(std::abs(fg.eval(z) - f.eval(z) * g.eval(z)) < 1e-13);
    }
}

TEST_CASE("truncate reports a rigorous axis tail bound") {
    FourierMap f = FourierMap::fit_function(
        [](double x) {
            return std::cos(kTwoPi * x) + 0.01 * std::cos(3.0 * kTwoPi * x);
        },
        64, 0.3);
    auto [g, tail] = f.truncate(1);
    CHECK(g.max_mode() == 1);
    CHECK(tail == doctest::Approx(0.01).epsilon(1e-10));
    double dev = 0.0;
    for (int j = 0; j < 101; ++j) {
        double x = j / 101.0;
        dev = std::max(dev,
                       std::abs(g.eval(cplx(x, 0.0)) - f.eval(cplx(x, 0.0))));
    }
    CHECK(dev <= tail + 1e-12);
}

TEST_CASE("denoise drops noise-floor modes only") {
    std::vector<cplx> modes(2 * 40 + 1, cplx(0.0));
    modes[40] = 1.0;
    modes[41] = 0.5;
    modes[39] = 0.5;
    modes[80] = 1e-15;  // k = +40 noise
    FourierMap f = FourierMap::from_modes(std::move(modes), 0.1);
    FourierMap g = f.denoise(1e-12);
    CHECK(g.max_mode() == 1);
    CHECK(std::abs(g.coef(1) - cplx(0.5)) < 1e-15);
}

TEST_CASE("matrix fourier products and determinant defect") {
    MatFourier m = MatFourier::fit_function(
        [](double x) {
            double c = std::cos(kTwoPi * x), s = std::sin(kTwoPi * x);
            return Mat2{cplx(c), cplx(-s), cplx(s), cplx(c)};
        },
        64, 0.05);
    CHECK(m.det_defect(0.0) < 1e-13);
    CHECK(m.is_real_symmetric());
    MatFourier m2 = m * m.adjugate();
    for (int j = 0; j < 11; ++j) {
        cplx z(j / 11.0, 0.02);
        CHECK((m2.eval(z) - Mat2::identity()).norm() < 1e-10);
    }
}

TEST_CASE("fit of random trig polynomials round-trips coefficients") {
    std::mt19937 rng(123456);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        int K = 1 + static_cast<int>(rng() % 12);
        std::vector<cplx> modes(2 * static_cast<size_t>(K) + 1);
        for (auto& c : modes) c = cplx(u(rng), u(rng));
        FourierMap f = FourierMap::from_modes(std::vector<cplx>(modes), 0.3);
        FourierMap g = FourierMap::fit_function(
            [&](double x) { return f.eval(cplx(x, 0.0)); }, 128, 0.3);
        for (int k = -K; k <= K; ++k)
            CHECK(std::abs(g.coef(k) - modes[static_cast<size_t>(k + K)]) <
                  1e-12);
    }
}
