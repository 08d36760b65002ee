#include <doctest.h>

#include <cmath>

#include "qhsusy/swanson_metric.hpp"

using namespace qhsusy;

namespace {

// Reference values from a 40-digit Heisenberg-picture computation: rho acts on (a, a^dag) as the
// 2x2 exponential of the adjoint action of O, and mu, nu are read off the transformed H.
struct Oracle {
    double z, epsilon, mu, nu;
};
constexpr Oracle kOracles[] = {
    {-0.5, 0.055727982264279674369, 0.60835271328310828154, 5.5888630489558556246},
    {0.0, 0.1277064059414976708, 0.61270166537925831148, 5.5491933384829667541},
    {0.5, -0.76034599630094634753, 0.56666666666666666667, 6.0},
    {0.9, -0.10025449484172012651, 0.59899809274552150439, 5.6761449513403656664},
};

SwansonParams prototype() { return SwansonParams::make(2.0, 0.5, 0.3); }

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("Swanson parameter validation") {
    const auto p = prototype();
    CHECK(p.Omega == doctest::Approx(std::sqrt(3.4)).epsilon(1e-15));
    CHECK_THROWS_AS(SwansonParams::make(2.0, 0.4, 0.4), ParameterError);
    CHECK_THROWS_AS(SwansonParams::make(1.0, 1.0, 0.5), ParameterError);  // Omega^2 < 0
    CHECK_THROWS_AS(SwansonParams::make(std::nan(""), 0.5, 0.3), ParameterError);
    CHECK_THROWS_AS(SwansonParams::make(-2.0, 0.5, 0.3), ParameterError);
    CHECK_THROWS_AS(SwansonParams::make(0.0, 0.5, -0.3), ParameterError);
}

TEST_CASE("sinhc") {
    CHECK(sinhc(0.0) == 1.0);
    CHECK(sinhc(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    const double t = 5e-5;
    CHECK(std::abs(sinhc(t) - (1.0 + t * t / 6.0 + t * t * t * t / 120.0)) < 1e-16);
    CHECK(std::abs(sinhc(1.0001e-4) - std::sinh(1.0001e-4) / 1.0001e-4) < 1e-15);
}

TEST_CASE("epsilon, mu and nu against the reference values") {
    const auto p = prototype();
    for (const auto& o : kOracles) {
        CAPTURE(o.z);
        const auto mp = epsilon_of(p, o.z);
        CHECK(rel(mp.epsilon, o.epsilon) < 1e-13);
        CHECK(mp.theta == doctest::Approx(std::abs(o.epsilon) * std::sqrt(1.0 - o.z * o.z)));
        const auto ep = mu_nu(p, o.z);
        CHECK(rel(ep.mu, o.mu) < 1e-13);
        CHECK(rel(ep.nu, o.nu) < 1e-13);
        CHECK(rel(ep.mu * ep.nu, p.Omega * p.Omega) < 1e-13);
    }
}

TEST_CASE("endpoint limits") {
    const auto p = prototype();
    const auto up = mu_nu(p, 1.0);
    CHECK(rel(up.mu, 0.6) < 1e-10);
    CHECK(rel(up.nu, 17.0 / 3.0) < 1e-10);
    const auto down = mu_nu(p, -1.0);
    CHECK(rel(down.mu, 17.0 / 28.0) < 1e-10);
    CHECK(rel(down.nu, 5.6) < 1e-10);
    const auto lim = mu_nu_endpoint_limit(p, 1);
    CHECK(lim.relative_spread < 1e-6);
    // Closed endpoint epsilon: (alpha - beta) / (2 (alpha + beta - z omega)).
    CHECK(rel(epsilon_of(p, 1.0).epsilon, 0.2 / (2.0 * (0.8 - 2.0))) < 1e-14);
    CHECK(rel(epsilon_of(p, -1.0).epsilon, 0.2 / (2.0 * (0.8 + 2.0))) < 1e-14);
    for (double z : {1.0 - 1e-6, -1.0 + 1e-6}) {
        const auto ep = mu_nu(p, z);
        const auto lim_ep = mu_nu(p, z > 0 ? 1.0 : -1.0);
        CHECK(rel(ep.mu, lim_ep.mu) < 1e-5);
        CHECK(rel(ep.nu, lim_ep.nu) < 1e-5);
    }
}

TEST_CASE("metric domain") {
    const auto p = prototype();
    CHECK(metric_arctanh_argument(p, 0.3) == doctest::Approx(0.9539392014).epsilon(1e-9));
    CHECK_THROWS_AS(metric_arctanh_argument(p, 0.4), MetricUndefined);
    CHECK_THROWS_AS(epsilon_of(p, 0.4), MetricUndefined);
    CHECK_THROWS_AS(epsilon_of(p, 0.45), MetricUndefined);  // |argument| > 1
    CHECK_NOTHROW(epsilon_of(p, 0.3));
    CHECK_NOTHROW(epsilon_of(p, 0.5));
}

TEST_CASE("factorization parameters at z = 0 reduce to a pure K0 exponential") {
    const auto mp = epsilon_of(prototype(), 0.0);
    const auto fp = factorization_params(mp);
    CHECK(fp.p == 0.0);
    CHECK(fp.pprime == 0.0);
    CHECK(fp.q == doctest::Approx(2.0 * mp.epsilon).epsilon(1e-14));
    CHECK(fp.qprime == doctest::Approx(2.0 * mp.epsilon).epsilon(1e-14));
}

TEST_CASE("single-mode metric pipeline") {
    const auto p = prototype();
    const ModeLayout layout({Boson{80}});
    const auto gens = su11_single_mode(layout);
    const auto proj = quanta_projector(layout, 20);
    const auto [a, ad] = boson_ops(layout, 0);
    const auto H = build_H(gens, p);
    for (double z : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        CAPTURE(z);
        const auto metric = build_metric(gens, p, z);
        CHECK(metric.min_zeta_eigenvalue > 0.0);
        CHECK(all_pass(verify_quasi_hermiticity(H, metric, proj, 1e-8)));
        CHECK(all_pass(verify_bogoliubov(metric, a, ad, metric.params, proj, 1e-8)));
        CHECK(all_pass(verify_factorization(gens, metric, factorization_params(metric.params), proj, 1e-8)));
        const auto h = build_h(gens, p, z);
        CHECK(num::hermiticity_defect(h.matrix) < 1e-12);
        CHECK(all_pass(verify_equivalent_hermitian(h, H, metric, proj, 1e-8)));
        const auto O = observable_O(gens, z);
        CHECK((O.matrix * metric.rho.matrix - metric.rho.matrix * O.matrix).norm() < 1e-8 * metric.rho.matrix.norm());
    }
}

TEST_CASE("power form agrees with the exponential inside the open interval") {
    const auto p = prototype();
    const ModeLayout layout({Boson{60}});
    const auto gens = su11_single_mode(layout);
    const ProjectedView view(quanta_projector(layout, 15));
    for (double z : {-0.5, 0.0, 0.5}) {
        CAPTURE(z);
        const auto r1 = build_rho(gens, p, z);
        const auto r2 = rho_power_form(gens, p, z);
        CHECK(relative_residual(view.sandwich(r1.matrix), view.sandwich(r2.matrix)) < 1e-10);
    }
    CHECK_THROWS(rho_power_form(gens, p, 1.0));
}

TEST_CASE("negative controls") {
    const auto p = prototype();
    const ModeLayout layout({Boson{40}});
    const auto gens = su11_single_mode(layout);
    const auto proj = quanta_projector(layout, 10);
    const auto H = build_H(gens, p);
    // The identity metric cannot make a non-Hermitian H quasi-Hermitian.
    CHECK_FALSE(all_pass(verify_quasi_hermiticity(H, identity_metric(layout), proj, 1e-8)));
    // A metric built with the wrong z does not intertwine H with h.
    const auto h = build_h(gens, p, 0.0);
    CHECK_FALSE(all_pass(verify_equivalent_hermitian(h, H, build_metric(gens, p, -0.5), proj, 1e-8)));
}

TEST_CASE("truncated H reproduces the harmonic ladder (n + 1/2) Omega") {
    const auto p = prototype();
    const ModeLayout layout({Boson{80}});
    const auto gens = su11_single_mode(layout);
    const auto eig = num::eig_general(build_H(gens, p).matrix);
    for (Eigen::Index n = 0; n < 6; ++n) {
        const double expected = (static_cast<double>(n) + 0.5) * p.Omega;
        CHECK(std::abs(eig.eigenvalues(n) - Complex(expected, 0.0)) < 1e-6);
    }
    const auto h_vals = num::eigvals_hermitian(build_h(gens, p, 0.5).matrix);
    for (Eigen::Index n = 0; n < 6; ++n) {
        CHECK(std::abs(h_vals(n) - (static_cast<double>(n) + 0.5) * p.Omega) < 1e-6);
    }
}
