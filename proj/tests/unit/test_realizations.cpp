#include <doctest.h>

#include <cmath>

#include "qhsusy/realizations.hpp"
#include "qhsusy/susy_extension.hpp"

using namespace qhsusy;

namespace {

ComplexMatrix projected_comm(const ProjectedView& view, const ComplexMatrix& a, const ComplexMatrix& b) {
    return view.sandwich(a, b) - view.sandwich(b, a);
}

SwansonParams prototype() { return SwansonParams::make(2.0, 0.5, 0.3); }

}  // namespace

TEST_CASE("realization names and specs") {
    CHECK(parse_realization_kind("single_mode") == RealizationKind::SingleMode);
    CHECK(parse_realization_kind("n_mode") == RealizationKind::NMode);
    CHECK(parse_realization_kind("spin_orbit") == RealizationKind::SpinOrbit);
    CHECK(realization_name(RealizationKind::SpinOrbit) == "spin_orbit");
    CHECK_THROWS_AS(parse_realization_kind("two_mode"), ParameterError);
    CHECK_THROWS_AS(RealizationSpec::n_mode(1, 8).validate(), ParameterError);
    CHECK_NOTHROW(RealizationSpec::n_mode(3, 4).validate());
    CHECK(realization_layout(RealizationSpec::single_mode(80)).describe() == "B80xF");
    CHECK(realization_layout(RealizationSpec::n_mode(2, 8)).dimension() == 256);
    CHECK(realization_layout(RealizationSpec::spin_orbit(8)).dimension() == 2048);
    CHECK_THROWS_AS(spin_orbit_generators(RealizationSpec::n_mode(2, 4)), Error);
}

TEST_CASE("n-mode realization") {
    const auto spec = RealizationSpec::n_mode(2, 8);
    const auto r = build_realization(spec);
    CHECK(r.bosons.size() == 2);
    CHECK(r.fermions.size() == 2);
    CHECK_NOTHROW(r.gens.validate());
    const auto proj = relations_projector(spec, r.gens.layout, 4);
    CHECK(ProjectedView(proj).rank() == 15 * 4);  // total quanta <= 4 for two modes, times four fermion states
    const auto rel = check_relations(r.gens, standard_relation_table(), proj, 1e-10);
    CHECK(all_pass(rel));
    CHECK(all_pass(check_hermiticity(r.gens, proj, 1e-10)));

    // K0 = (N + n/2)/2 has ground value n/4, which is 1/2 for two modes.
    const auto k0 = num::eigvals_hermitian(r.gens.K0.matrix);
    CHECK(std::abs(k0(0) - 0.5) < 1e-14);

    // Y on the empty fermion state: (0 - n/2)/2.
    CHECK(std::abs(num::eigvals_hermitian(r.gens.Y->matrix)(0) + 0.5) < 1e-14);
}

TEST_CASE("n-mode h_S is nonnegative with a single near-zero mode") {
    const auto spec = RealizationSpec::n_mode(2, 8);
    const auto r = build_realization(spec);
    const auto p = prototype();
    const auto hS = build_hS(r.gens, p, mu_nu(p, 0.0));
    const auto vals = num::eigvals_hermitian(hS.matrix);
    // The truncated h_S is a compression of a positive operator: its ground value is nonnegative and
    // approaches the exact zero mode from above as the cutoff grows.
    CHECK(vals(0) > -1e-10);
    CHECK(vals(0) < 1e-4);
    CHECK(vals(1) > 1.0);
}

TEST_CASE("n-mode metric pipeline at a moderate cutoff") {
    const auto spec = RealizationSpec::n_mode(2, 12);
    const auto r = build_realization(spec);
    const auto p = prototype();
    const auto proj = low_lying_projector(spec, r.gens.layout);
    const auto H = build_H(r.gens, p);
    // Weak-metric points only: at z = 0.5 (epsilon near -0.76) cutoff 12 is too small.
    for (double z : {-1.0, -0.5, 0.0}) {
        CAPTURE(z);
        const auto metric = build_metric(r.gens, p, z);
        CHECK(all_pass(verify_quasi_hermiticity(H, metric, proj, 1e-8)));
        const auto c = supercharge_coeffs(p, metric.params, mu_nu(p, z));
        const auto pseudo = pseudo_supercharges(r.gens, c);
        const auto rows = verify_pseudo_susy(pseudo, build_HS(r.gens, p), metric, r.gens, c, proj,
                                             PseudoSusyTolerances{});
        CHECK(all_pass(rows));
    }
}

TEST_CASE("spin-orbit realization") {
    const auto spec = RealizationSpec::spin_orbit(6);
    const auto r = build_realization(spec);
    const auto& g = r.gens;
    CHECK_NOTHROW(g.validate());
    const auto proj = relations_projector(spec, g.layout, 4);
    const ProjectedView view(proj);

    CHECK(all_pass(check_relations(g, standard_relation_table(), proj, 1e-10)));
    CHECK(all_pass(check_hermiticity(g, proj, 1e-10)));

    // V+^dag = W- exactly.
    CHECK((g.Vplus->matrix.adjoint() - g.Wminus->matrix).norm() < 1e-14);
    // Y commutes with the su(1,1) generators.
    CHECK(projected_comm(view, g.K0.matrix, g.Y->matrix).norm() < 1e-12);
    CHECK(projected_comm(view, g.Kplus.matrix, g.Y->matrix).norm() < 1e-12);

    // Angular momentum closes on so(3) and commutes with K0.
    const auto L = angular_momentum(g.layout);
    const Complex i(0.0, 1.0);
    for (int a = 0; a < 3; ++a) {
        CHECK(num::hermiticity_defect(L[a].matrix) < 1e-14);
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        CHECK((projected_comm(view, L[a].matrix, L[b].matrix) - i * view.sandwich(L[c].matrix)).norm() < 1e-12);
        CHECK(projected_comm(view, L[a].matrix, g.K0.matrix).norm() < 1e-12);
    }
    const auto s = pauli_on_spin(g.layout);
    CHECK((s[0].matrix * s[1].matrix - i * s[2].matrix).norm() < 1e-14);
}

TEST_CASE("spin-orbit metric pipeline") {
    const auto spec = RealizationSpec::spin_orbit(6);
    const auto r = build_realization(spec);
    const auto p = prototype();
    const auto proj = low_lying_projector(spec, r.gens.layout);
    const auto H = build_H(r.gens, p);
    const double z = 0.0;
    const auto metric = build_metric(r.gens, p, z);
    CHECK(all_pass(verify_quasi_hermiticity(H, metric, proj, 1e-8)));
    CHECK(all_pass(verify_factorization(r.gens, metric, factorization_params(metric.params), proj, 1e-8)));
    const auto c = supercharge_coeffs(p, metric.params, mu_nu(p, z));
    CHECK(all_pass(verify_pseudo_susy(pseudo_supercharges(r.gens, c), build_HS(r.gens, p), metric, r.gens, c, proj,
                                      PseudoSusyTolerances{})));
}

TEST_CASE("projector validation") {
    const auto spec = RealizationSpec::n_mode(2, 8);
    const auto layout = realization_layout(spec);
    CHECK_THROWS_AS(relations_projector(spec, layout, 8), LayoutError);
    CHECK(ProjectedView(low_lying_projector(spec, layout)).rank() == 6 * 4);  // total quanta <= 2
}
