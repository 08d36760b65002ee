#pragma once

#include <array>

#include "qhsusy/fockspace.hpp"
#include "qhsusy/report.hpp"
#include "qhsusy/superalgebra.hpp"

namespace qhsusy {

/// H = 2 omega K0 + 2 alpha K- + 2 beta K+, with alpha != beta and Omega^2 = omega^2 - 4 alpha beta > 0.
struct SwansonParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double Omega = 0.0;

    /// Validates the invariants and fills Omega = +sqrt(omega^2 - 4 alpha beta).
    static SwansonParams make(double omega, double alpha, double beta);
};

/// Metric exponent data: z in [-1, 1], epsilon, theta = |epsilon| sqrt(1 - z^2).
struct MetricParams {
    double z = 0.0;
    double epsilon = 0.0;
    double theta = 0.0;

    static MetricParams make(double z, double epsilon);
};

/// Coefficients of the equivalent Hermitian Hamiltonian.
struct EquivParams {
    double mu = 0.0;
    double nu = 0.0;
};

/// rho = exp(p K+) exp(q K0) exp(p K-) = exp(p' K-) exp(q' K0) exp(p' K+).
struct FactorizationParams {
    double p = 0.0;
    double q = 0.0;
    double pprime = 0.0;
    double qprime = 0.0;
};

/// sinh(theta)/theta, by Taylor series (through theta^6) for theta < 1e-4.
double sinhc(double theta);

/// (alpha - beta) sqrt(1 - z^2) / (alpha + beta - z omega); MetricUndefined when the
/// denominator vanishes.
double metric_arctanh_argument(const SwansonParams& params, double z);

/// epsilon = arctanh(x) / (2 sqrt(1 - z^2)) with the closed endpoint limits at |z| = 1 and a
/// series in x for 1 - |z| < 1e-8. MetricUndefined when |x| >= 1.
MetricParams epsilon_of(const SwansonParams& params, double z);

/// Closed forms for |z| < 1 - 1e-8; Richardson extrapolation from z = +-(1 - 1e-4, 1e-5, 1e-6)
/// at and near the endpoints. MetricUndefined / NonPositive on invalid inputs.
EquivParams mu_nu(const SwansonParams& params, double z);

/// Endpoint limit of mu and nu at z -> sign (sign = +1 or -1). `stages` holds the two first-order
/// extrapolations (nodes 1e-4,1e-5 and 1e-5,1e-6) and the final second-order one.
struct EndpointLimit {
    EquivParams value;
    std::array<EquivParams, 3> stages;
    double relative_spread = 0.0;  // max over mu, nu of max|stage - value| / |value|
};
EndpointLimit mu_nu_endpoint_limit(const SwansonParams& params, int sign);

FactorizationParams factorization_params(const MetricParams& mp);

TruncatedOperator build_H(const GeneratorSet& gens, const SwansonParams& params);

/// O = 2 K0 + z (K+ + K-).
TruncatedOperator observable_O(const GeneratorSet& gens, double z);

/// h = [nu (2K0 + K+ + K-) + mu omega^2 (2K0 - K+ - K-)] / (2 omega).
TruncatedOperator build_h(const GeneratorSet& gens, const EquivParams& ep, double omega);
TruncatedOperator build_h(const GeneratorSet& gens, const SwansonParams& params, double z);

/// rho, rho^-1, zeta = rho^2 and zeta^-1, all from one spectral decomposition of O.
struct MetricOperators {
    MetricParams params;
    TruncatedOperator rho;
    TruncatedOperator rho_inv;
    TruncatedOperator zeta;
    TruncatedOperator zeta_inv;
    double min_zeta_eigenvalue = 0.0;

    /// rho is the contracting factor when epsilon <= 0 (O is positive semidefinite); identities are
    /// cleared of inverses through whichever of rho, rho^-1 is bounded.
    bool rho_bounded() const { return params.epsilon <= 0.0; }
};

MetricOperators metric_from_params(const GeneratorSet& gens, const MetricParams& mp);
MetricOperators build_metric(const GeneratorSet& gens, const SwansonParams& params, double z);
MetricOperators identity_metric(const ModeLayout& layout);

/// rho = exp(epsilon O) via expm_hermitian.
TruncatedOperator build_rho(const GeneratorSet& gens, const SwansonParams& params, double z);

/// The closed power form base^(O / (4 sqrt(1 - z^2))) by spectral calculus; |z| < 1 only.
TruncatedOperator rho_power_form(const GeneratorSet& gens, const SwansonParams& params, double z);

enum class FactorOrder { PlusZeroMinus, MinusZeroPlus };

/// exp(p K+) exp(q K0) exp(p K-) or exp(p' K-) exp(q' K0) exp(p' K+) via expm_general.
TruncatedOperator rho_factorized(const GeneratorSet& gens, const FactorizationParams& fp, FactorOrder order);

/// Residual of X = M^-1 Y M on the projector, evaluated as M X = Y M when M is bounded and as
/// X M^-1 = M^-1 Y otherwise.
double conjugation_residual(const ProjectedView& view, const ComplexMatrix& x, const ComplexMatrix& y,
                            const ComplexMatrix& m, const ComplexMatrix& m_inv, bool m_bounded);

/// zeta H zeta^-1 = H^dag, plus the positivity of zeta (reported as a pass/fail row whose residual
/// is the negated minimum eigenvalue).
ReportFragment verify_quasi_hermiticity(const TruncatedOperator& H, const MetricOperators& metric,
                                        const TruncatedOperator& projector, double tol);

/// rho^-1 a rho = (cosh th + eps sinhc) a + z eps sinhc a^dag and
/// rho^-1 a^dag rho = (cosh th - eps sinhc) a^dag - z eps sinhc a.
ReportFragment verify_bogoliubov(const MetricOperators& metric, const TruncatedOperator& a,
                                 const TruncatedOperator& a_dagger, const MetricParams& mp,
                                 const TruncatedOperator& projector, double tol);

/// Both factorized forms against rho.
ReportFragment verify_factorization(const GeneratorSet& gens, const MetricOperators& metric,
                                    const FactorizationParams& fp, const TruncatedOperator& projector, double tol);

/// h = rho H rho^-1.
ReportFragment verify_equivalent_hermitian(const TruncatedOperator& h, const TruncatedOperator& H,
                                           const MetricOperators& metric, const TruncatedOperator& projector,
                                           double tol);

}  // namespace qhsusy
