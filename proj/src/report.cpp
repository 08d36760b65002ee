#include "qhsusy/report.hpp"

#include <algorithm>
#include <cmath>

namespace qhsusy {

bool all_pass(const ReportFragment& fragment) {
    return std::all_of(fragment.begin(), fragment.end(), [](const CheckResult& r) { return r.pass; });
}

double max_residual(const ReportFragment& fragment) {
    double worst = 0.0;
    for (const auto& r : fragment) {
        if (std::isnan(r.residual)) return r.residual;
        worst = std::max(worst, r.residual);
    }
    return worst;
}

const CheckResult& find_result(const ReportFragment& fragment, const std::string& name) {
    const auto it = std::find_if(fragment.begin(), fragment.end(), [&](const CheckResult& r) { return r.name == name; });
    if (it == fragment.end()) throw Error("no check named '" + name + "' in report fragment");
    return *it;
}

CheckResult make_result(std::string name, double residual, double tolerance) {
    // NaN residuals never pass.
    const bool pass = residual <= tolerance;
    return {std::move(name), residual, tolerance, pass};
}

double relative_residual(const ComplexMatrix& lhs_block, const ComplexMatrix& rhs_block) {
    const double diff = (lhs_block - rhs_block).norm();
    const double scale = std::max(lhs_block.norm(), rhs_block.norm());
    if (scale == 0.0) return diff;
    return diff / scale;
}

double product_identity_residual(const ProjectedView& view, const ComplexMatrix& lhs1, const ComplexMatrix& lhs2,
                                 const ComplexMatrix& rhs1, const ComplexMatrix& rhs2) {
    return relative_residual(view.sandwich(lhs1, lhs2), view.sandwich(rhs1, rhs2));
}

}  // namespace qhsusy
