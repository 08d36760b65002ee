#pragma once

#include <string>
#include <vector>

#include "qhsusy/fockspace.hpp"

namespace qhsusy {

/// One verified identity: residual against tolerance.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

using ReportFragment = std::vector<CheckResult>;

bool all_pass(const ReportFragment& fragment);
double max_residual(const ReportFragment& fragment);
const CheckResult& find_result(const ReportFragment& fragment, const std::string& name);

CheckResult make_result(std::string name, double residual, double tolerance);

/// ||P(lhs - rhs)P||_F / max(||P lhs P||_F, ||P rhs P||_F), or the absolute residual when
/// both sides vanish on P.
double relative_residual(const ComplexMatrix& lhs_block, const ComplexMatrix& rhs_block);

/// Residual of the identity lhs1*lhs2 = rhs1*rhs2 on the projector.
double product_identity_residual(const ProjectedView& view, const ComplexMatrix& lhs1, const ComplexMatrix& lhs2,
                                 const ComplexMatrix& rhs1, const ComplexMatrix& rhs2);

}  // namespace qhsusy
