#include <doctest.h>

#include <cmath>

#include "qhsusy/susy_extension.hpp"

using namespace qhsusy;

namespace {

// Reference values from a 40-digit Heisenberg-picture computation: Qcal = rho^-1 Q rho with
// Q = (sqrt(nu) x - i sqrt(mu) p) b, expanded in a and a^dag.
struct CoeffOracle {
    double z, sigma, tau, varphi, chi;
};
constexpr CoeffOracle kOracles[] = {
    {-1.0, 2.6557435221733911955, 0.69089658396291099645, 2.8947892440402699235, 0.45185086209603226845},
    {-0.5, 2.6073927321809124889, 0.67831803661494512909, 2.9484694377002428415, 0.46022986303113568318},
    {0.0, 2.4402782727351144261, 0.63484290123461976187, 3.1503857034716329866, 0.49174719678793646271},
    {0.5, 5.4361080868272495834, 1.4142135623730950488, 1.4142135623730950488, 0.22074616266513061177},
    {0.9, 3.0072933638028774557, 0.78235292477542440198, 2.5563910310351342325, 0.39902990989962420942},
    {1.0, 2.9612701239057339236, 0.7703798938850694698, 2.5961217522356231813, 0.40523152221495872749},
};

SwansonParams prototype() { return SwansonParams::make(2.0, 0.5, 0.3); }

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

SuperchargeCoeffs general(const SwansonParams& p, double z) {
    return supercharge_coeffs(p, epsilon_of(p, z), mu_nu(p, z));
}

double coeff_distance(const SuperchargeCoeffs& a, const SuperchargeCoeffs& b) {
    return std::max({rel(a.sigma, b.sigma), rel(a.tau, b.tau), rel(a.varphi, b.varphi), rel(a.chi, b.chi)});
}

struct Fixture {
    SwansonParams params = prototype();
    ModeLayout layout{{Boson{80}, Fermion{}}};
    GeneratorSet gens = su11_single_mode(layout);
    LadderPair a = boson_ops(layout, 0);
    LadderPair b = fermion_ops(layout, 1);
    TruncatedOperator proj = quanta_projector(layout, 20);
};

}  // namespace

TEST_CASE("general coefficients against the reference values") {
    const auto p = prototype();
    for (const auto& o : kOracles) {
        CAPTURE(o.z);
        const auto c = general(p, o.z);
        const double tol = std::abs(o.z) == 1.0 ? 1e-9 : 1e-12;
        CHECK(rel(c.sigma, o.sigma) < tol);
        CHECK(rel(c.tau, o.tau) < tol);
        CHECK(rel(c.varphi, o.varphi) < tol);
        CHECK(rel(c.chi, o.chi) < tol);
        CHECK(closure_residuals(c, p).max() < 1e-12);
    }
}

TEST_CASE("closure residuals detect a broken coefficient") {
    const auto p = prototype();
    auto c = general(p, 0.0);
    c.sigma *= 1.0 + 1e-6;
    const auto r = closure_residuals(c, p);
    CHECK(r.sigma_chi == doctest::Approx(1e-6).epsilon(1e-3));
    CHECK(r.tau_varphi < 1e-14);
}

TEST_CASE("special cases agree with the general coefficients") {
    const auto p = prototype();
    const auto s1 = special_case_coeffs(p, 1);
    CHECK(rel(s1.coeffs.sigma, (std::sqrt(3.4) + 1.4) / std::sqrt(1.2)) < 1e-15);
    CHECK(coeff_distance(s1.coeffs, general(p, 1.0)) < 1e-9);
    CHECK(coeff_distance(special_case_coeffs(p, -1).coeffs, general(p, -1.0)) < 1e-9);
    const auto s0 = special_case_coeffs(p, 0);
    CHECK(coeff_distance(s0.coeffs, general(p, 0.0)) < 1e-12);
    REQUIRE(s0.gamma_plus.has_value());
    REQUIRE(s0.gamma_minus.has_value());
    const double gp = *s0.gamma_plus;
    const double gm = *s0.gamma_minus;
    CHECK(std::abs(gp * gp - gm * gm - 1.0) < 1e-14);
    CHECK_FALSE(s1.gamma_plus.has_value());
}

TEST_CASE("special case domains") {
    CHECK_THROWS_AS(special_case_coeffs(SwansonParams::make(2.0, -0.5, 0.3), 0), DomainError);
    CHECK_THROWS_AS(special_case_coeffs(SwansonParams::make(2.0, 1.5, 0.6), 1), DomainError);
    CHECK_NOTHROW(special_case_coeffs(SwansonParams::make(2.0, 1.5, 0.6), -1));
    CHECK_THROWS_AS(special_case_coeffs(prototype(), 2), DomainError);
}

TEST_CASE("quadrature coefficients") {
    const auto p = prototype();
    const auto c = general(p, 0.0);
    const auto xp = xp_coefficients(c, p.omega);
    const auto g = gamma_xp_coefficients(p);
    CHECK(std::abs(xp.A - g.A) < 1e-12);
    CHECK(std::abs(xp.B - g.B) < 1e-12);
    CHECK(std::abs(xp.C - g.C) < 1e-12);
    CHECK(std::abs(xp.D - g.D) < 1e-12);
    // Against the z = 0.5 reference coefficients.
    const auto half = xp_coefficients(general(p, 0.5), p.omega);
    const double n = 2.0 * std::sqrt(p.omega);
    CHECK(rel(half.A, (5.4361080868272495834 + 1.4142135623730950488) / n) < 1e-12);
    CHECK(rel(half.B, -(5.4361080868272495834 - 1.4142135623730950488) / n) < 1e-12);
    CHECK(rel(half.C, (1.4142135623730950488 + 0.22074616266513061177) / n) < 1e-12);
    CHECK(rel(half.D, (1.4142135623730950488 - 0.22074616266513061177) / n) < 1e-12);
}

TEST_CASE("quadrature and generator forms of the supercharges coincide") {
    Fixture f;
    const ProjectedView view(f.proj);
    for (double z : {-1.0, 0.0, 0.5}) {
        CAPTURE(z);
        const auto c = general(f.params, z);
        const auto gen = pseudo_supercharges(f.gens, c);
        const auto xp = pseudo_supercharges_xp(c, f.params.omega, f.layout);
        CHECK(relative_residual(view.sandwich(gen.charge.matrix), view.sandwich(xp.charge.matrix)) < 1e-12);
        CHECK(relative_residual(view.sandwich(gen.partner.matrix), view.sandwich(xp.partner.matrix)) < 1e-12);
        CHECK(grade_residual(gen.charge) == 0.0);
        CHECK(gen.charge.grade == Grade::Odd);
    }
}

TEST_CASE("cluster_eigenvalues") {
    RealVector v(5);
    v << 0.0, 1e-12, 1.0, 1.0 + 1e-10, 2.0;
    const auto c = cluster_eigenvalues(v, 1e-8);
    REQUIRE(c.size() == 3);
    CHECK(c[0].multiplicity == 2);
    CHECK(c[1].multiplicity == 2);
    CHECK(c[2].multiplicity == 1);
    CHECK(c[1].value == doctest::Approx(1.0));
}

TEST_CASE("tilde mode diagonalizes h") {
    Fixture f;
    const auto ep = mu_nu(f.params, 0.5);
    const auto t = tilde_mode(f.a.annihilator, f.a.creator, ep, f.params.omega);
    const ProjectedView view(f.proj);
    const ComplexMatrix comm = t.annihilator.matrix * t.creator.matrix - t.creator.matrix * t.annihilator.matrix;
    CHECK(relative_residual(view.sandwich(comm), view.sandwich(ComplexMatrix::Identity(160, 160))) < 1e-12);
    const auto gens_b = su11_single_mode(ModeLayout({Boson{80}, Fermion{}}));
    const auto h = build_h(gens_b, ep, f.params.omega);
    const ComplexMatrix hb =
        f.params.Omega * (t.creator.matrix * t.annihilator.matrix + 0.5 * ComplexMatrix::Identity(160, 160));
    CHECK(relative_residual(view.sandwich(h.matrix), view.sandwich(hb)) < 1e-10);

    // For the harmonic oscillator mu = 1/omega, nu = omega, and a~ reduces to a.
    const auto plain = tilde_mode(f.a.annihilator, f.a.creator, EquivParams{0.5, 2.0}, 2.0);
    CHECK((plain.creator.matrix - f.a.creator.matrix).norm() < 1e-14);
}

TEST_CASE("h_S has the supersymmetric ladder n Omega") {
    Fixture f;
    for (double z : {-1.0, 0.0, 0.5, 1.0}) {
        CAPTURE(z);
        const auto hS = build_hS(f.gens, f.params, mu_nu(f.params, z));
        const auto clusters = cluster_eigenvalues(num::eigvals_hermitian(hS.matrix), 1e-8);
        REQUIRE(clusters.size() > 6);
        CHECK(std::abs(clusters[0].value) < 1e-8);
        CHECK(clusters[0].multiplicity == 1);
        for (std::size_t n = 1; n < 6; ++n) {
            CHECK(std::abs(clusters[n].value - static_cast<double>(n) * f.params.Omega) < 1e-8);
            CHECK(clusters[n].multiplicity == 2);
        }
    }
    const auto HS = build_HS(f.gens, f.params);
    const auto eig = num::eig_general(HS.matrix);
    CHECK(std::abs(eig.eigenvalues(0)) < 1e-6);
    CHECK(std::abs(eig.eigenvalues(1) - f.params.Omega) < 1e-6);
    CHECK(std::abs(eig.eigenvalues(2) - f.params.Omega) < 1e-6);
}

TEST_CASE("pseudo-supersymmetry, Hermitian supersymmetry and intertwining") {
    Fixture f;
    for (double z : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        CAPTURE(z);
        const auto metric = build_metric(f.gens, f.params, z);
        const auto ep = mu_nu(f.params, z);
        const auto c = supercharge_coeffs(f.params, metric.params, ep);
        const auto pseudo = pseudo_supercharges(f.gens, c);
        const auto HS = build_HS(f.gens, f.params);
        const auto rows = verify_pseudo_susy(pseudo, HS, metric, f.gens, c, f.proj, PseudoSusyTolerances{});
        CHECK(all_pass(rows));
        CHECK(find_result(rows, "Qcal^2 = 0").residual < 1e-13);
        CHECK(find_result(rows, "Qcal#^2 = 0").residual < 1e-13);

        const auto t = tilde_mode(f.a.annihilator, f.a.creator, ep, f.params.omega);
        const auto herm = hermitian_supercharges(t.creator, f.b.annihilator, f.params.Omega);
        const auto hS = build_hS(f.gens, f.params, ep);
        CHECK(all_pass(verify_hermitian_susy(herm, hS, f.proj, 1e-13, 1e-8)));
        CHECK(all_pass(verify_intertwining(pseudo, herm, metric, f.proj, 1e-8)));
        CHECK(all_pass(verify_bch_relations(metric, f.gens, factorization_params(metric.params), f.proj, 1e-8)));
    }
}

TEST_CASE("pseudo-supersymmetry negative controls") {
    Fixture f;
    const double z = 0.0;
    const auto metric = build_metric(f.gens, f.params, z);
    auto c = general(f.params, z);
    const auto HS = build_HS(f.gens, f.params);

    auto skewed = c;
    skewed.sigma *= 1.0 + 1e-4;
    const auto bad = verify_pseudo_susy(pseudo_supercharges(f.gens, skewed), HS, metric, f.gens, skewed, f.proj,
                                        PseudoSusyTolerances{});
    CHECK_FALSE(find_result(bad, "{Qcal,Qcal#} = 2H_S").pass);
    CHECK(find_result(bad, "Qcal^2 = 0").pass);

    const auto flat = identity_metric(f.layout);
    const auto rows = verify_pseudo_susy(pseudo_supercharges(f.gens, c), HS, flat, f.gens, c, f.proj,
                                         PseudoSusyTolerances{});
    CHECK_FALSE(find_result(rows, "Qcal# = zeta^-1 Qcal^dag zeta").pass);

    const auto wrong_fp = factorization_params(epsilon_of(f.params, 0.5));
    CHECK_FALSE(all_pass(verify_bch_relations(metric, f.gens, wrong_fp, f.proj, 1e-8)));
}
