#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfsb/legendre.hpp"
#include "mfsb/spectrum.hpp"

using namespace mfsb;

namespace {

PressureParams params2() {
    PressureParams p;
    p.threads = 2;
    return p;
}

const PressureCurve& sb_curve() {
    static const PressureCurve c =
        build_pressure_curve(PressureMethod::induced_root, default_farey_theta_grid(), params2());
    return c;
}

const PressureCurve& pd_curve() {
    static const PressureCurve c =
        build_pressure_curve(PressureMethod::operator_eig, default_gauss_theta_grid(), params2());
    return c;
}

} // namespace

TEST_CASE("conjugate of an affine curve is a point mass at its slope") {
    PressureCurve line;
    line.theta = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (double t : line.theta) line.value.push_back(3.0 - 0.5 * t); // slope -1/2
    line.error_bound.assign(line.theta.size(), 0.0);
    // at t = slope the conjugate is -intercept; elsewhere the maximizer pins
    // to an edge
    const auto at_slope = legendre_transform(line, -0.5);
    CHECK(at_slope.value == doctest::Approx(-3.0).epsilon(1e-14));
    const auto off = legendre_transform(line, -0.4);
    CHECK(off.clipped_high);
    CHECK_THROWS_AS(legendre_transform(line, -0.4, false), std::domain_error);
}

TEST_CASE("legendre endpoints of the Farey pressure") {
    // conjugate value at t = 0 is -inf P = 0 up to the grid floor
    const auto p0 = legendre_transform(sb_curve(), 0.0);
    CHECK(std::abs(p0.value) < 1e-9);
    // at t = -2 log gamma the conjugate tends to 0; the sampled grid reaches
    // the asymptote to within its theta_min tail
    const auto pg = legendre_transform(sb_curve(), -constants().two_log_gamma);
    CHECK(std::abs(pg.value) < 0.01);
}

TEST_CASE("double conjugation recovers the curve at interior nodes") {
    const auto& c = sb_curve();
    const auto back = double_conjugate_at_nodes(c);
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        CHECK(std::abs(back[i] - c.value[i]) <= 1e-6);
    }
}

TEST_CASE("tau conventions and interior values") {
    const auto& c = sb_curve();
    const auto p0 = tau(c, 0.0);
    CHECK(p0.tau == 1.0);
    CHECK(p0.alpha_star.value == doctest::Approx(constants().chi));
    CHECK(p0.alpha_sharp.is_inf);
    const auto pe = tau(c, constants().two_log_gamma);
    CHECK(pe.tau == 0.0);
    CHECK_THROWS_AS(tau(c, -0.1), std::domain_error);
    CHECK_THROWS_AS(tau(c, 1.1), std::domain_error);

    // alpha0 = -P'(0): conjugate supremum sits at theta = 0 with P(0) = log 2
    PressureParams p = params2();
    const double q0 = beta(0.0, p);
    const auto [astar, asharp] = induced_pressure_gradient(0.0, q0, p);
    const double alpha0 = astar / asharp;
    const auto pt = tau(c, alpha0, p, false);
    CHECK(pt.tau == doctest::Approx(std::numbers::ln2 / alpha0).epsilon(1e-6));
    // t resolution is limited by the local grid spacing
    CHECK(std::abs(pt.t_of_alpha) <= 0.05);
}

TEST_CASE("t_of_alpha moves monotonically and clips at the edges") {
    const auto& c = sb_curve();
    double prev = 2.0;
    for (double a : {0.15, 0.3, 0.5, 0.7, 0.9, 0.95}) {
        bool clipped = false;
        const double t = t_of_alpha(c, a, &clipped);
        CHECK(t < prev);
        CHECK_FALSE(clipped);
        prev = t;
    }
    bool clipped = false;
    const double t_small = t_of_alpha(c, 0.004, &clipped);
    CHECK(clipped);
    CHECK(t_small > 0.999);
    t_of_alpha(c, constants().two_log_gamma - 1e-6, &clipped);
    CHECK(clipped); // divergent end reported as grid edge
}

TEST_CASE("gauss-side t at the Levy point") {
    bool clipped = false;
    const double t = t_of_alpha(pd_curve(), constants().chi, &clipped);
    CHECK(t == doctest::Approx(1.0).epsilon(5e-3));
    CHECK_FALSE(clipped);
}

TEST_CASE("tau_d shape") {
    const auto& c = pd_curve();
    const auto at_chi = tau_d(c, constants().chi);
    CHECK(at_chi.tau == doctest::Approx(1.0).epsilon(2e-3));
    const auto near_edge = tau_d(c, constants().two_log_gamma + 0.01);
    CHECK(near_edge.tau < 0.2);
    // steep ascent near the left edge on a shrinking mesh
    double prev_slope = 0.0;
    for (double off : {1e-2, 1e-3, 1e-4}) {
        const double h = off * 0.5;
        const double s = (tau_d(c, constants().two_log_gamma + off + h).tau -
                          tau_d(c, constants().two_log_gamma + off).tau) / h;
        CHECK(s > prev_slope * 0.5); // slopes keep growing
        prev_slope = s;
    }
    CHECK(prev_slope > 10.0);
    CHECK_THROWS_AS(tau_d(c, 0.5), std::domain_error);
}

TEST_CASE("farey tau prime identity") {
    // tau'(alpha) = -P(t(alpha))/alpha^2; on the sampled curve the conjugate
    // is piecewise in alpha and the identity holds exactly per segment
    const auto& c = sb_curve();
    PressureParams p = params2();
    for (double a : {0.45, 0.65, 0.85}) {
        const double h = 1e-7;
        const double fd = (tau(c, a + h, p, false).tau - tau(c, a - h, p, false).tau) / (2.0 * h);
        const auto nc = mfsb::detail::tau_node_conjugate(c, a);
        const double expect = -c.value[nc.node] / (a * a);
        CHECK(fd == doctest::Approx(expect).epsilon(1e-5));
        // and against the smooth curve with grid-limited tolerance
        const double smooth = -stern_brocot_pressure(t_of_alpha(c, a), p) / (a * a);
        CHECK(fd == doctest::Approx(smooth).epsilon(0.35));
    }
}

TEST_CASE("farey tau endpoint slope dives") {
    const auto& c = sb_curve();
    PressureParams p = params2();
    double prev = 0.0;
    for (double off : {3e-2, 1e-2, 3e-3}) {
        const double a = constants().two_log_gamma - off;
        const double h = off * 0.25;
        const double s = (tau(c, a + h, p, false).tau - tau(c, a - h, p, false).tau) / (2.0 * h);
        CHECK(s < 0.0);
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < -10.0);
}

TEST_CASE("alpha star and sharp identities") {
    PressureParams p = params2();
    for (double alpha : {0.3, 0.6, 0.9}) {
        const auto [astar, asharp] = alpha_star_sharp(alpha, p);
        REQUIRE_FALSE(astar.is_inf);
        REQUIRE_FALSE(asharp.is_inf);
        CHECK(std::abs(astar.value - alpha * asharp.value) <= 1e-6);
        CHECK(asharp.value > 1.0);
    }
    // towards alpha = 0 the mean block length grows and alpha* approaches chi
    const auto [astar_small, asharp_small] = alpha_star_sharp(0.18, p);
    CHECK(asharp_small.value > 5.0);
    CHECK(astar_small.value == doctest::Approx(constants().chi).epsilon(0.15));
    CHECK_THROWS_AS(alpha_star_sharp(0.0, p), std::domain_error);
    CHECK_THROWS_AS(alpha_star_sharp(1.0, p), std::domain_error);
}

TEST_CASE("spectrum curves: monotone structure") {
    PressureParams p = params2();
    const auto grid = linspace(0.0, constants().two_log_gamma, 102);
    const auto sc = build_spectrum(SpectrumKind::farey_tau, grid, sb_curve(), p, false);
    for (std::size_t i = 2; i + 1 < sc.points.size(); ++i) {
        CHECK(sc.points[i].tau < sc.points[i - 1].tau);
    }
    const auto dgrid = linspace(constants().two_log_gamma, 6.0, 101);
    const auto dc = build_spectrum(SpectrumKind::gauss_tau_d, dgrid, pd_curve(), p, false);
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < dc.points.size(); ++i) {
        if (dc.points[i].tau > dc.points[argmax].tau) argmax = i;
    }
    for (std::size_t i = 1; i <= argmax; ++i) {
        CHECK(dc.points[i].tau >= dc.points[i - 1].tau - 1e-9);
    }
    for (std::size_t i = argmax + 1; i < dc.points.size(); ++i) {
        CHECK(dc.points[i].tau <= dc.points[i - 1].tau + 1e-9);
    }
}

TEST_CASE("extended real formatting") {
    CHECK(ExtendedReal::infinity().str() == "inf");
    CHECK(ExtendedReal::finite(0.5).str() == "0.5");
}
