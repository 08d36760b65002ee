#pragma once

#include <optional>
#include <vector>

#include "qhsusy/report.hpp"
#include "qhsusy/superalgebra.hpp"
#include "qhsusy/swanson_metric.hpp"

namespace qhsusy {

/// Pseudo-supercharge coefficients: Qcal = sigma W+ + tau W-, Qcal# = varphi V- + chi V+.
struct SuperchargeCoeffs {
    double sigma = 0.0;
    double tau = 0.0;
    double varphi = 0.0;
    double chi = 0.0;
};

/// Relative residuals of the four closure conditions
/// sigma varphi + tau chi = 4 omega, sigma varphi - tau chi = 4 Omega, sigma chi = 4 beta, tau varphi = 4 alpha.
struct ClosureResiduals {
    double sum = 0.0;
    double difference = 0.0;
    double sigma_chi = 0.0;
    double tau_varphi = 0.0;

    double max() const;
};

ClosureResiduals closure_residuals(const SuperchargeCoeffs& c, const SwansonParams& params);

/// Closed forms at z = -1, 0, +1; gamma+- only for z = 0.
struct SpecialCaseCoeffs {
    int case_z = 0;
    SuperchargeCoeffs coeffs;
    std::optional<double> gamma_plus;
    std::optional<double> gamma_minus;
};

/// Sorted eigenvalue cluster.
struct SpectrumCluster {
    double value = 0.0;  // mean of the members
    std::size_t multiplicity = 0;
};

/// Groups ascending eigenvalues: a value joins the current cluster when it lies within `tol` of
/// the cluster's first member.
std::vector<SpectrumCluster> cluster_eigenvalues(const RealVector& ascending, double tol);

/// H_S = 2 omega K0 + 2 alpha K- + 2 beta K+ + 2 Omega Y.
TruncatedOperator build_HS(const GeneratorSet& gens, const SwansonParams& params);

/// h_S = h + 2 Omega Y.
TruncatedOperator build_hS(const GeneratorSet& gens, const SwansonParams& params, const EquivParams& ep);

struct ModePair {
    TruncatedOperator annihilator;
    TruncatedOperator creator;
};

/// Bogoliubov-rotated boson whose number operator diagonalizes h: h_B = Omega (a~^dag a~ + 1/2).
ModePair tilde_mode(const TruncatedOperator& a, const TruncatedOperator& a_dagger, const EquivParams& ep,
                    double omega);

struct SuperchargePair {
    TruncatedOperator charge;   // Q or Qcal
    TruncatedOperator partner;  // Q^dag or Qcal#
};

/// Q = sqrt(2 Omega) a~^dag b, Q^dag its adjoint.
SuperchargePair hermitian_supercharges(const TruncatedOperator& tilde_a_dagger, const TruncatedOperator& b,
                                       double Omega);

/// General coefficients from (epsilon, theta, mu, nu); IdentityViolation when a closure
/// condition misses 1e-10.
SuperchargeCoeffs supercharge_coeffs(const SwansonParams& params, const MetricParams& mp, const EquivParams& ep);

/// Closed forms for z = 0 (needs alpha beta > 0 and omega >= 2 sqrt(alpha beta)), z = 1
/// (omega > alpha + beta) and z = -1 (omega + alpha + beta > 0). DomainError otherwise.
SpecialCaseCoeffs special_case_coeffs(const SwansonParams& params, int case_z);

SuperchargePair pseudo_supercharges(const GeneratorSet& gens, const SuperchargeCoeffs& coeffs);

/// The same operators from quadratures: (1/2 sqrt w)[(s+t) w x - i (s-t) p] b and
/// (1/2 sqrt w)[(f+c) w x + i (f-c) p] b^dag. Requires one boson and one fermion factor.
SuperchargePair pseudo_supercharges_xp(const SuperchargeCoeffs& coeffs, double omega, const ModeLayout& layout);

/// Quadrature coefficients: Qcal = (A w x + i B p) b and Qcal# = (C w x + i D p) b^dag.
struct XpCoefficients {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
};

/// A = (s+t)/(2 sqrt w), B = -(s-t)/(2 sqrt w), C = (f+c)/(2 sqrt w), D = (f-c)/(2 sqrt w).
XpCoefficients xp_coefficients(const SuperchargeCoeffs& coeffs, double omega);

/// The z = 0 closed forms written with gamma+-: A = (g+ s+ - g- s-)/sqrt w, B = (g- s+ - g+ s-)/sqrt w,
/// C = (g+ s+ + g- s-)/sqrt w, D = (g- s+ + g+ s-)/sqrt w with s+- = sqrt(w +- 2 sqrt(alpha beta)).
XpCoefficients gamma_xp_coefficients(const SwansonParams& params);

struct PseudoSusyTolerances {
    double nilpotency = 1e-13;
    double algebra = 1e-8;
};

/// Qcal^2 = Qcal#^2 = 0, {Qcal, Qcal#} = 2 H_S, Qcal# = zeta^-1 Qcal^dag zeta and
/// rho (varphi V- + chi V+) rho^-1 = rho^-1 (sigma V- + tau V+) rho.
ReportFragment verify_pseudo_susy(const SuperchargePair& pseudo, const TruncatedOperator& HS,
                                  const MetricOperators& metric, const GeneratorSet& gens,
                                  const SuperchargeCoeffs& coeffs, const TruncatedOperator& projector,
                                  const PseudoSusyTolerances& tol);

/// The four conjugations of V+- by rho and rho^-1.
ReportFragment verify_bch_relations(const MetricOperators& metric, const GeneratorSet& gens,
                                    const FactorizationParams& fp, const TruncatedOperator& projector, double tol);

/// Q^2 = 0 and {Q, Q^dag} = 2 h_S.
ReportFragment verify_hermitian_susy(const SuperchargePair& hermitian, const TruncatedOperator& hS,
                                     const TruncatedOperator& projector, double nil_tol, double tol);

/// rho Qcal rho^-1 = Q and rho Qcal# rho^-1 = Q^dag.
ReportFragment verify_intertwining(const SuperchargePair& pseudo, const SuperchargePair& hermitian,
                                   const MetricOperators& metric, const TruncatedOperator& projector, double tol);

}  // namespace qhsusy
