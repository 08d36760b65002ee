#include "qhsusy/susy_extension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qhsusy {

namespace {

double rel(double value, double target) {
    return std::abs(value - target) / std::max(std::abs(target), 1e-300);
}

double nilpotency_residual(const ProjectedView& view, const ComplexMatrix& q) {
    const double scale = view.sandwich(q).norm();
    return view.sandwich(q, q).norm() / (scale * scale + 1.0);
}

}  // namespace

double ClosureResiduals::max() const { return std::max({sum, difference, sigma_chi, tau_varphi}); }

ClosureResiduals closure_residuals(const SuperchargeCoeffs& c, const SwansonParams& params) {
    return {rel(c.sigma * c.varphi + c.tau * c.chi, 4.0 * params.omega),
            rel(c.sigma * c.varphi - c.tau * c.chi, 4.0 * params.Omega),
            rel(c.sigma * c.chi, 4.0 * params.beta),
            rel(c.tau * c.varphi, 4.0 * params.alpha)};
}

std::vector<SpectrumCluster> cluster_eigenvalues(const RealVector& ascending, double tol) {
    std::vector<SpectrumCluster> out;
    double first = 0.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ascending.size(); ++i) {
        const double v = ascending(i);
        if (!out.empty() && v - first <= tol) {
            auto& c = out.back();
            ++c.multiplicity;
            sum += v;
            c.value = sum / static_cast<double>(c.multiplicity);
        } else {
            out.push_back({v, 1});
            first = v;
            sum = v;
        }
    }
    return out;
}

TruncatedOperator build_HS(const GeneratorSet& gens, const SwansonParams& params) {
    if (!gens.Y) throw LayoutError("build_HS: generator set has no Y (odd sector missing)");
    auto h = build_H(gens, params);
    h.matrix += 2.0 * params.Omega * gens.Y->matrix;
    return h;
}

TruncatedOperator build_hS(const GeneratorSet& gens, const SwansonParams& params, const EquivParams& ep) {
    if (!gens.Y) throw LayoutError("build_hS: generator set has no Y (odd sector missing)");
    auto h = build_h(gens, ep, params.omega);
    h.matrix += 2.0 * params.Omega * gens.Y->matrix;
    return h;
}

ModePair tilde_mode(const TruncatedOperator& a, const TruncatedOperator& a_dagger, const EquivParams& ep,
                    double omega) {
    if (!(ep.mu > 0.0) || !(ep.nu > 0.0)) throw NonPositive("tilde_mode: mu and nu must be positive");
    const double up = std::pow(ep.nu / ep.mu, 0.25);
    const double down = std::pow(ep.mu / ep.nu, 0.25);
    const double norm = 1.0 / (2.0 * std::sqrt(omega));
    TruncatedOperator creator{a.layout,
                              norm * ((up - omega * down) * a.matrix + (up + omega * down) * a_dagger.matrix),
                              Grade::Even};
    auto annihilator = creator.adjoint();
    return {std::move(annihilator), std::move(creator)};
}

SuperchargePair hermitian_supercharges(const TruncatedOperator& tilde_a_dagger, const TruncatedOperator& b,
                                       double Omega) {
    auto q = Complex(std::sqrt(2.0 * Omega)) * (tilde_a_dagger * b);
    auto qd = q.adjoint();
    return {std::move(q), std::move(qd)};
}

SuperchargeCoeffs supercharge_coeffs(const SwansonParams& params, const MetricParams& mp, const EquivParams& ep) {
    const double w = params.omega;
    const double plus = w * std::sqrt(ep.mu) + std::sqrt(ep.nu);
    const double minus = w * std::sqrt(ep.mu) - std::sqrt(ep.nu);
    const double ch = std::cosh(mp.theta);
    const double es = mp.epsilon * sinhc(mp.theta);
    const double inv = 1.0 / std::sqrt(w);
    SuperchargeCoeffs c;
    c.sigma = inv * (plus * ch - (plus + mp.z * minus) * es);
    c.tau = inv * (-minus * ch - (minus + mp.z * plus) * es);
    c.varphi = inv * (plus * ch + (plus + mp.z * minus) * es);
    c.chi = inv * (-minus * ch + (minus + mp.z * plus) * es);
    const auto r = closure_residuals(c, params);
    if (!(r.max() <= 1e-10)) {
        throw IdentityViolation("supercharge coefficients violate a closure condition at z = " +
                                std::to_string(mp.z) + " (worst relative residual " + std::to_string(r.max()) + ")");
    }
    return c;
}

SpecialCaseCoeffs special_case_coeffs(const SwansonParams& params, int case_z) {
    const double w = params.omega;
    const double al = params.alpha;
    const double be = params.beta;
    const double Om = params.Omega;
    SpecialCaseCoeffs out;
    out.case_z = case_z;
    switch (case_z) {
        case 0: {
            if (!(al * be > 0.0)) throw DomainError("z = 0 closed forms need alpha beta > 0");
            const double root = std::sqrt(al * be);
            if (!(w - 2.0 * root >= 0.0)) throw DomainError("z = 0 closed forms need omega >= 2 sqrt(alpha beta)");
            const double sp = std::sqrt(w + 2.0 * root);
            const double sm = std::sqrt(w - 2.0 * root);
            const double r = std::pow(be / al, 0.25);
            const double rinv = std::pow(al / be, 0.25);
            out.coeffs = {r * (sp + sm), rinv * (sp - sm), rinv * (sp + sm), r * (sp - sm)};
            out.gamma_plus = 0.5 * (rinv + r);
            out.gamma_minus = 0.5 * (rinv - r);
            break;
        }
        case 1: {
            if (!(w - al - be > 0.0)) throw DomainError("z = 1 closed forms need omega - alpha - beta > 0");
            const double d = std::sqrt(w - al - be);
            out.coeffs = {(Om + w - 2.0 * be) / d, (Om - w + 2.0 * al) / d, (Om + w - 2.0 * al) / d,
                          (Om - w + 2.0 * be) / d};
            break;
        }
        case -1: {
            if (!(w + al + be > 0.0)) throw DomainError("z = -1 closed forms need omega + alpha + beta > 0");
            const double d = std::sqrt(w + al + be);
            out.coeffs = {(Om + w + 2.0 * be) / d, -(Om - w - 2.0 * al) / d, (Om + w + 2.0 * al) / d,
                          -(Om - w - 2.0 * be) / d};
            break;
        }
        default: throw DomainError("special cases exist only for z in {-1, 0, 1}");
    }
    return out;
}

SuperchargePair pseudo_supercharges(const GeneratorSet& gens, const SuperchargeCoeffs& c) {
    if (!gens.has_odd_part()) throw LayoutError("pseudo_supercharges: odd generators missing");
    TruncatedOperator q{gens.layout, c.sigma * gens.Wplus->matrix + c.tau * gens.Wminus->matrix, Grade::Odd};
    TruncatedOperator qs{gens.layout, c.varphi * gens.Vminus->matrix + c.chi * gens.Vplus->matrix, Grade::Odd};
    return {std::move(q), std::move(qs)};
}

SuperchargePair pseudo_supercharges_xp(const SuperchargeCoeffs& c, double omega, const ModeLayout& layout) {
    const auto bosons = layout.boson_indices();
    const auto fermions = layout.fermion_indices();
    if (bosons.size() != 1 || fermions.size() != 1 || layout.size() != 2) {
        throw LayoutError("pseudo_supercharges_xp: expected one boson and one fermion factor, got " +
                          layout.describe());
    }
    const auto [x, p] = quadratures(layout, bosons.front(), omega);
    const auto [b, bd] = fermion_ops(layout, fermions.front());
    const Complex i(0.0, 1.0);
    const double norm = 1.0 / (2.0 * std::sqrt(omega));
    const ComplexMatrix left = norm * ((c.sigma + c.tau) * omega * x.matrix - i * (c.sigma - c.tau) * p.matrix);
    const ComplexMatrix right = norm * ((c.varphi + c.chi) * omega * x.matrix + i * (c.varphi - c.chi) * p.matrix);
    return {{layout, left * b.matrix, Grade::Odd}, {layout, right * bd.matrix, Grade::Odd}};
}

XpCoefficients xp_coefficients(const SuperchargeCoeffs& c, double omega) {
    const double n = 1.0 / (2.0 * std::sqrt(omega));
    return {n * (c.sigma + c.tau), -n * (c.sigma - c.tau), n * (c.varphi + c.chi), n * (c.varphi - c.chi)};
}

XpCoefficients gamma_xp_coefficients(const SwansonParams& params) {
    const auto sc = special_case_coeffs(params, 0);
    const double gp = *sc.gamma_plus;
    const double gm = *sc.gamma_minus;
    const double root = std::sqrt(params.alpha * params.beta);
    const double sp = std::sqrt(params.omega + 2.0 * root);
    const double sm = std::sqrt(params.omega - 2.0 * root);
    const double n = 1.0 / std::sqrt(params.omega);
    return {n * (gp * sp - gm * sm), n * (gm * sp - gp * sm), n * (gp * sp + gm * sm), n * (gm * sp + gp * sm)};
}

ReportFragment verify_pseudo_susy(const SuperchargePair& pseudo, const TruncatedOperator& HS,
                                  const MetricOperators& metric, const GeneratorSet& gens,
                                  const SuperchargeCoeffs& c, const TruncatedOperator& projector,
                                  const PseudoSusyTolerances& tol) {
    const ProjectedView view(projector);
    const auto& q = pseudo.charge.matrix;
    const auto& qs = pseudo.partner.matrix;
    ReportFragment out;
    out.push_back(make_result("Qcal^2 = 0", nilpotency_residual(view, q), tol.nilpotency));
    out.push_back(make_result("Qcal#^2 = 0", nilpotency_residual(view, qs), tol.nilpotency));
    out.push_back(make_result("{Qcal,Qcal#} = 2H_S",
                              relative_residual(view.sandwich(q, qs) + view.sandwich(qs, q), 2.0 * view.sandwich(HS.matrix)),
                              tol.algebra));
    const bool bounded = metric.rho_bounded();
    const ComplexMatrix q_dag = q.adjoint();
    out.push_back(make_result("Qcal# = zeta^-1 Qcal^dag zeta",
                              conjugation_residual(view, qs, q_dag, metric.zeta.matrix, metric.zeta_inv.matrix, bounded),
                              tol.algebra));
    const ComplexMatrix lhs = c.varphi * gens.Vminus->matrix + c.chi * gens.Vplus->matrix;
    const ComplexMatrix rhs = c.sigma * gens.Vminus->matrix + c.tau * gens.Vplus->matrix;
    out.push_back(make_result("rho(phi V- + chi V+)rho^-1 = rho^-1(sigma V- + tau V+)rho",
                              conjugation_residual(view, lhs, rhs, metric.zeta.matrix, metric.zeta_inv.matrix, bounded),
                              tol.algebra));
    return out;
}

ReportFragment verify_bch_relations(const MetricOperators& metric, const GeneratorSet& gens,
                                    const FactorizationParams& fp, const TruncatedOperator& projector, double tol) {
    if (!gens.has_odd_part()) throw LayoutError("verify_bch_relations: odd generators missing");
    const ProjectedView view(projector);
    const auto& vp = gens.Vplus->matrix;
    const auto& vm = gens.Vminus->matrix;
    const double e_qp = std::exp(fp.qprime / 2.0);
    const double e_mq = std::exp(-fp.q / 2.0);
    const ComplexMatrix rho_vp = e_qp * (vp + fp.pprime * vm);
    const ComplexMatrix rho_vm = e_mq * (vm - fp.p * vp);
    const ComplexMatrix inv_vp = e_mq * (vp - fp.p * vm);
    const ComplexMatrix inv_vm = e_qp * (vm + fp.pprime * vp);
    const auto& r = metric.rho.matrix;
    const auto& ri = metric.rho_inv.matrix;
    const bool bounded = metric.rho_bounded();
    ReportFragment out;
    // rho X rho^-1 = Y  <=>  X = rho^-1 Y rho
    out.push_back(make_result("rho V+ rho^-1", conjugation_residual(view, vp, rho_vp, r, ri, bounded), tol));
    out.push_back(make_result("rho V- rho^-1", conjugation_residual(view, vm, rho_vm, r, ri, bounded), tol));
    out.push_back(make_result("rho^-1 V+ rho", conjugation_residual(view, inv_vp, vp, r, ri, bounded), tol));
    out.push_back(make_result("rho^-1 V- rho", conjugation_residual(view, inv_vm, vm, r, ri, bounded), tol));
    return out;
}

ReportFragment verify_hermitian_susy(const SuperchargePair& hermitian, const TruncatedOperator& hS,
                                     const TruncatedOperator& projector, double nil_tol, double tol) {
    const ProjectedView view(projector);
    const auto& q = hermitian.charge.matrix;
    const auto& qd = hermitian.partner.matrix;
    ReportFragment out;
    out.push_back(make_result("Q^2 = 0", nilpotency_residual(view, q), nil_tol));
    out.push_back(make_result("Q^dag^2 = 0", nilpotency_residual(view, qd), nil_tol));
    out.push_back(make_result("{Q,Q^dag} = 2h_S",
                              relative_residual(view.sandwich(q, qd) + view.sandwich(qd, q), 2.0 * view.sandwich(hS.matrix)),
                              tol));
    return out;
}

ReportFragment verify_intertwining(const SuperchargePair& pseudo, const SuperchargePair& hermitian,
                                   const MetricOperators& metric, const TruncatedOperator& projector, double tol) {
    const ProjectedView view(projector);
    const auto& r = metric.rho.matrix;
    const auto& ri = metric.rho_inv.matrix;
    const bool bounded = metric.rho_bounded();
    ReportFragment out;
    out.push_back(make_result("rho Qcal rho^-1 = Q",
                              conjugation_residual(view, pseudo.charge.matrix, hermitian.charge.matrix, r, ri, bounded),
                              tol));
    out.push_back(make_result("rho Qcal# rho^-1 = Q^dag",
                              conjugation_residual(view, pseudo.partner.matrix, hermitian.partner.matrix, r, ri, bounded),
                              tol));
    return out;
}

}  // namespace qhsusy
