#include "qhsusy/swanson_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qhsusy {

namespace {

constexpr double kEndpointBand = 1e-8;
constexpr std::array<long double, 3> kRichardsonSteps = {1e-4L, 1e-5L, 1e-6L};

void require_z(double z) {
    if (!std::isfinite(z) || std::abs(z) > 1.0) {
        throw DomainError("z = " + std::to_string(z) + " lies outside [-1, 1]");
    }
}

struct LongEquiv {
    long double mu;
    long double nu;
};

/// The printed closed forms for mu and nu, in extended precision.
LongEquiv mu_nu_closed(const SwansonParams& params, long double z) {
    const long double w = params.omega;
    const long double apb = static_cast<long double>(params.alpha) + params.beta;
    const long double amb = static_cast<long double>(params.alpha) - params.beta;
    const long double s = apb - w * z;
    const long double radicand = 1.0L - amb * amb * (1.0L - z * z) / (s * s);
    if (!(radicand >= 0.0L)) {
        throw MetricUndefined("mu/nu: negative radicand at z = " + std::to_string(static_cast<double>(z)));
    }
    const long double root = std::sqrt(radicand);
    const long double mu = (w - apb * z - s * root) / ((1.0L + z) * w);
    const long double nu = w * (w - apb * z + s * root) / (1.0L - z);
    return {mu, nu};
}

long double lagrange_at_zero(const std::array<long double, 3>& x, const std::array<long double, 3>& y,
                             std::size_t first, std::size_t count) {
    long double total = 0.0L;
    for (std::size_t i = first; i < first + count; ++i) {
        long double weight = 1.0L;
        for (std::size_t j = first; j < first + count; ++j) {
            if (j != i) weight *= (0.0L - x[j]) / (x[i] - x[j]);
        }
        total += weight * y[i];
    }
    return total;
}

void require_positive(const EquivParams& ep) {
    if (!(ep.mu > 0.0) || !(ep.nu > 0.0)) {
        throw NonPositive("mu = " + std::to_string(ep.mu) + ", nu = " + std::to_string(ep.nu) +
                          " must both be positive");
    }
}

ComplexMatrix combine(std::initializer_list<std::pair<double, const ComplexMatrix*>> terms) {
    auto it = terms.begin();
    ComplexMatrix out = it->first * *it->second;
    for (++it; it != terms.end(); ++it) out += it->first * *it->second;
    return out;
}

}  // namespace

SwansonParams SwansonParams::make(double omega, double alpha, double beta) {
    if (!std::isfinite(omega) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw ParameterError("Swanson parameters must be finite");
    }
    if (!(omega > 0.0)) {
        throw ParameterError("omega must be positive (got " + std::to_string(omega) + ")");
    }
    if (!(std::abs(alpha - beta) > 1e-12 * (std::abs(alpha) + std::abs(beta) + 1.0))) {
        throw ParameterError("alpha != beta is required (alpha = " + std::to_string(alpha) +
                             ", beta = " + std::to_string(beta) + ")");
    }
    const double omega2 = omega * omega - 4.0 * alpha * beta;
    if (!(omega2 > 0.0)) {
        throw ParameterError("Omega^2 = omega^2 - 4 alpha beta must be positive (got " + std::to_string(omega2) + ")");
    }
    return {omega, alpha, beta, std::sqrt(omega2)};
}

MetricParams MetricParams::make(double z, double epsilon) {
    require_z(z);
    if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
    return {z, epsilon, std::abs(epsilon) * std::sqrt(1.0 - z * z)};
}

double sinhc(double theta) {
    if (std::abs(theta) < 1e-4) {
        const double t2 = theta * theta;
        return 1.0 + t2 / 6.0 * (1.0 + t2 / 20.0 * (1.0 + t2 / 42.0));
    }
    return std::sinh(theta) / theta;
}

double metric_arctanh_argument(const SwansonParams& params, double z) {
    require_z(z);
    const double den = params.alpha + params.beta - z * params.omega;
    const double scale = std::abs(params.alpha) + std::abs(params.beta) + std::abs(params.omega);
    if (std::abs(den) <= 1e-12 * scale) {
        throw MetricUndefined("alpha + beta - z omega vanishes at z = " + std::to_string(z));
    }
    return (params.alpha - params.beta) * std::sqrt(1.0 - z * z) / den;
}

MetricParams epsilon_of(const SwansonParams& params, double z) {
    const double x = metric_arctanh_argument(params, z);
    if (!(std::abs(x) < 1.0)) {
        throw MetricUndefined("arctanh argument " + std::to_string(x) + " outside (-1, 1) at z = " +
                              std::to_string(z));
    }
    const double amb = params.alpha - params.beta;
    double eps = 0.0;
    if (z == 1.0) {
        eps = -amb / (2.0 * (params.omega - params.alpha - params.beta));
    } else if (z == -1.0) {
        eps = amb / (2.0 * (params.omega + params.alpha + params.beta));
    } else if (1.0 - std::abs(z) < kEndpointBand) {
        // arctanh(x)/s = (amb/den) (1 + x^2/3 + x^4/5 + x^6/7 + ...), |x| ~ 1e-4 here.
        const double den = params.alpha + params.beta - z * params.omega;
        const double x2 = x * x;
        eps = amb / (2.0 * den) * (1.0 + x2 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 / 7.0)));
    } else {
        eps = std::atanh(x) / (2.0 * std::sqrt(1.0 - z * z));
    }
    return MetricParams::make(z, eps);
}

EndpointLimit mu_nu_endpoint_limit(const SwansonParams& params, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("endpoint sign must be +1 or -1");
    std::array<long double, 3> mus{};
    std::array<long double, 3> nus{};
    for (std::size_t i = 0; i < kRichardsonSteps.size(); ++i) {
        const long double z = sign * (1.0L - kRichardsonSteps[i]);
        const auto v = mu_nu_closed(params, z);
        mus[i] = v.mu;
        nus[i] = v.nu;
    }
    EndpointLimit out;
    const auto stage = [&](std::size_t first, std::size_t count) {
        return EquivParams{static_cast<double>(lagrange_at_zero(kRichardsonSteps, mus, first, count)),
                           static_cast<double>(lagrange_at_zero(kRichardsonSteps, nus, first, count))};
    };
    out.stages = {stage(0, 2), stage(1, 2), stage(0, 3)};
    out.value = out.stages[2];
    double spread = 0.0;
    for (const auto& s : out.stages) {
        spread = std::max(spread, std::abs(s.mu - out.value.mu) / std::abs(out.value.mu));
        spread = std::max(spread, std::abs(s.nu - out.value.nu) / std::abs(out.value.nu));
    }
    out.relative_spread = spread;
    return out;
}

EquivParams mu_nu(const SwansonParams& params, double z) {
    // Shares the validity domain of the metric.
    (void)epsilon_of(params, z);
    EquivParams ep;
    if (1.0 - std::abs(z) < kEndpointBand) {
        ep = mu_nu_endpoint_limit(params, z > 0.0 ? 1 : -1).value;
    } else {
        const auto v = mu_nu_closed(params, z);
        ep = {static_cast<double>(v.mu), static_cast<double>(v.nu)};
    }
    require_positive(ep);
    return ep;
}

FactorizationParams factorization_params(const MetricParams& mp) {
    const double sh = sinhc(mp.theta);
    const double ch = std::cosh(mp.theta);
    const double minus = ch - mp.epsilon * sh;
    const double plus = ch + mp.epsilon * sh;
    if (!(minus > 0.0) || !(plus > 0.0)) {
        throw FactorizationUndefined("cosh(theta) -+ epsilon sinh(theta)/theta must be positive (got " +
                                     std::to_string(minus) + ", " + std::to_string(plus) + ")");
    }
    FactorizationParams fp;
    fp.q = -2.0 * std::log(minus);
    fp.p = mp.z * mp.epsilon * sh / minus;
    fp.qprime = 2.0 * std::log(plus);
    fp.pprime = mp.z * mp.epsilon * sh / plus;
    const double back_minus = std::exp(-fp.q / 2.0);
    const double back_plus = std::exp(fp.qprime / 2.0);
    if (std::abs(back_minus - minus) > 1e-13 * minus || std::abs(back_plus - plus) > 1e-13 * plus) {
        throw IdentityViolation("factorization exponents do not reproduce cosh(theta) -+ epsilon sinhc");
    }
    return fp;
}

TruncatedOperator build_H(const GeneratorSet& gens, const SwansonParams& params) {
    return {gens.layout,
            combine({{2.0 * params.omega, &gens.K0.matrix},
                     {2.0 * params.alpha, &gens.Kminus.matrix},
                     {2.0 * params.beta, &gens.Kplus.matrix}}),
            Grade::Even};
}

TruncatedOperator observable_O(const GeneratorSet& gens, double z) {
    require_z(z);
    return {gens.layout,
            combine({{2.0, &gens.K0.matrix}, {z, &gens.Kplus.matrix}, {z, &gens.Kminus.matrix}}),
            Grade::Even};
}

TruncatedOperator build_h(const GeneratorSet& gens, const EquivParams& ep, double omega) {
    require_positive(ep);
    const double c_nu = ep.nu / (2.0 * omega);
    const double c_mu = ep.mu * omega / 2.0;
    return {gens.layout,
            combine({{2.0 * (c_nu + c_mu), &gens.K0.matrix},
                     {c_nu - c_mu, &gens.Kplus.matrix},
                     {c_nu - c_mu, &gens.Kminus.matrix}}),
            Grade::Even};
}

TruncatedOperator build_h(const GeneratorSet& gens, const SwansonParams& params, double z) {
    return build_h(gens, mu_nu(params, z), params.omega);
}

MetricOperators metric_from_params(const GeneratorSet& gens, const MetricParams& mp) {
    const auto o = observable_O(gens, mp.z);
    const auto eig = num::eig_hermitian_real(o.matrix);
    const double eps = mp.epsilon;
    auto make = [&](double power) {
        ComplexMatrix m = num::hermitian_function(eig, [&](double lam) { return std::exp(power * eps * lam); });
        num::require_finite(m, "metric operator");
        return TruncatedOperator{gens.layout, std::move(m), Grade::Even};
    };
    double min_zeta = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        min_zeta = std::min(min_zeta, std::exp(2.0 * eps * eig.eigenvalues(i)));
    }
    return {mp, make(1.0), make(-1.0), make(2.0), make(-2.0), min_zeta};
}

MetricOperators build_metric(const GeneratorSet& gens, const SwansonParams& params, double z) {
    return metric_from_params(gens, epsilon_of(params, z));
}

MetricOperators identity_metric(const ModeLayout& layout) {
    const auto id = identity_operator(layout);
    return {MetricParams{0.0, 0.0, 0.0}, id, id, id, id, 1.0};
}

TruncatedOperator build_rho(const GeneratorSet& gens, const SwansonParams& params, double z) {
    const auto mp = epsilon_of(params, z);
    const auto o = observable_O(gens, z);
    return {gens.layout, num::expm_hermitian(mp.epsilon * o.matrix), Grade::Even};
}

TruncatedOperator rho_power_form(const GeneratorSet& gens, const SwansonParams& params, double z) {
    require_z(z);
    if (std::abs(z) == 1.0) {
        throw DomainError("rho_power_form: the power form is singular at |z| = 1");
    }
    (void)epsilon_of(params, z);
    const double s = std::sqrt(1.0 - z * z);
    const double lead = params.alpha + params.beta - params.omega * z;
    const double base = (lead + (params.alpha - params.beta) * s) / (lead - (params.alpha - params.beta) * s);
    const auto eig = num::eig_hermitian_real(observable_O(gens, z).matrix);
    return {gens.layout, num::hermitian_function(eig, [&](double lam) { return std::pow(base, lam / (4.0 * s)); }),
            Grade::Even};
}

TruncatedOperator rho_factorized(const GeneratorSet& gens, const FactorizationParams& fp, FactorOrder order) {
    const auto& kp = gens.Kplus.matrix;
    const auto& km = gens.Kminus.matrix;
    const auto& k0 = gens.K0.matrix;
    ComplexMatrix m;
    if (order == FactorOrder::PlusZeroMinus) {
        m = num::expm_general(fp.p * kp) * num::expm_general(fp.q * k0) * num::expm_general(fp.p * km);
    } else {
        m = num::expm_general(fp.pprime * km) * num::expm_general(fp.qprime * k0) * num::expm_general(fp.pprime * kp);
    }
    return {gens.layout, std::move(m), Grade::Even};
}

double conjugation_residual(const ProjectedView& view, const ComplexMatrix& x, const ComplexMatrix& y,
                            const ComplexMatrix& m, const ComplexMatrix& m_inv, bool m_bounded) {
    if (m_bounded) {
        return product_identity_residual(view, m, x, y, m);
    }
    return product_identity_residual(view, x, m_inv, m_inv, y);
}

ReportFragment verify_quasi_hermiticity(const TruncatedOperator& H, const MetricOperators& metric,
                                        const TruncatedOperator& projector, double tol) {
    const ProjectedView view(projector);
    const ComplexMatrix h_dag = H.matrix.adjoint();
    ReportFragment out;
    out.push_back(make_result("zeta H zeta^-1 = H^dag",
                              conjugation_residual(view, H.matrix, h_dag, metric.zeta.matrix,
                                                   metric.zeta_inv.matrix, metric.rho_bounded()),
                              tol));
    // Positivity row: residual is -min eigenvalue, passing iff the spectrum is strictly positive.
    CheckResult positive{"zeta positive definite", -metric.min_zeta_eigenvalue, 0.0,
                         metric.min_zeta_eigenvalue > 0.0};
    out.push_back(positive);
    return out;
}

ReportFragment verify_bogoliubov(const MetricOperators& metric, const TruncatedOperator& a,
                                 const TruncatedOperator& a_dagger, const MetricParams& mp,
                                 const TruncatedOperator& projector, double tol) {
    const ProjectedView view(projector);
    const double sh = sinhc(mp.theta);
    const double ch = std::cosh(mp.theta);
    const double e = mp.epsilon;
    const ComplexMatrix image_a = (ch + e * sh) * a.matrix + (mp.z * e * sh) * a_dagger.matrix;
    const ComplexMatrix image_ad = (ch - e * sh) * a_dagger.matrix - (mp.z * e * sh) * a.matrix;
    const bool bounded = metric.rho_bounded();
    ReportFragment out;
    out.push_back(make_result("rho^-1 a rho",
                              conjugation_residual(view, image_a, a.matrix, metric.rho.matrix,
                                                   metric.rho_inv.matrix, bounded),
                              tol));
    out.push_back(make_result("rho^-1 a^dag rho",
                              conjugation_residual(view, image_ad, a_dagger.matrix, metric.rho.matrix,
                                                   metric.rho_inv.matrix, bounded),
                              tol));
    return out;
}

ReportFragment verify_factorization(const GeneratorSet& gens, const MetricOperators& metric,
                                    const FactorizationParams& fp, const TruncatedOperator& projector, double tol) {
    const ProjectedView view(projector);
    const auto& kp = gens.Kplus.matrix;
    const auto& km = gens.Kminus.matrix;
    const auto& k0 = gens.K0.matrix;
    ReportFragment out;
    if (metric.rho_bounded()) {
        const ComplexMatrix e1 = num::expm_general(fp.p * kp);
        const ComplexMatrix e2 = num::expm_general(fp.q * k0);
        const ComplexMatrix e3 = num::expm_general(fp.p * km);
        out.push_back(make_result("rho = e^{pK+} e^{qK0} e^{pK-}",
                                  relative_residual(view.sandwich({&e1, &e2, &e3}), view.sandwich(metric.rho.matrix)),
                                  tol));
        const ComplexMatrix f1 = num::expm_general(fp.pprime * km);
        const ComplexMatrix f2 = num::expm_general(fp.qprime * k0);
        const ComplexMatrix f3 = num::expm_general(fp.pprime * kp);
        out.push_back(make_result("rho = e^{p'K-} e^{q'K0} e^{p'K+}",
                                  relative_residual(view.sandwich({&f1, &f2, &f3}), view.sandwich(metric.rho.matrix)),
                                  tol));
    } else {
        const ComplexMatrix e1 = num::expm_general(-fp.p * km);
        const ComplexMatrix e2 = num::expm_general(-fp.q * k0);
        const ComplexMatrix e3 = num::expm_general(-fp.p * kp);
        out.push_back(make_result("rho = e^{pK+} e^{qK0} e^{pK-}",
                                  relative_residual(view.sandwich({&e1, &e2, &e3}),
                                                    view.sandwich(metric.rho_inv.matrix)),
                                  tol));
        const ComplexMatrix f1 = num::expm_general(-fp.pprime * kp);
        const ComplexMatrix f2 = num::expm_general(-fp.qprime * k0);
        const ComplexMatrix f3 = num::expm_general(-fp.pprime * km);
        out.push_back(make_result("rho = e^{p'K-} e^{q'K0} e^{p'K+}",
                                  relative_residual(view.sandwich({&f1, &f2, &f3}),
                                                    view.sandwich(metric.rho_inv.matrix)),
                                  tol));
    }
    return out;
}

ReportFragment verify_equivalent_hermitian(const TruncatedOperator& h, const TruncatedOperator& H,
                                           const MetricOperators& metric, const TruncatedOperator& projector,
                                           double tol) {
    const ProjectedView view(projector);
    ReportFragment out;
    out.push_back(make_result("h = rho H rho^-1",
                              conjugation_residual(view, H.matrix, h.matrix, metric.rho.matrix, metric.rho_inv.matrix,
                                                   metric.rho_bounded()),
                              tol));
    out.push_back(make_result("h Hermitian", num::hermiticity_defect(h.matrix) / std::max(h.matrix.norm(), 1e-300),
                              tol));
    return out;
}

}  // namespace qhsusy
