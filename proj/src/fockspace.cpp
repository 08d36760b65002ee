#include "qhsusy/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>


namespace qhsusy {

namespace {

std::size_t dim_of(const Factor& f) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Boson>) {
                return x.cutoff;
            } else if constexpr (std::is_same_v<T, Fermion>) {
                return 2;
            } else {
                return x.dim;
            }
        },
        f);
}

void require_same_layout(const TruncatedOperator& a, const TruncatedOperator& b, const char* what) {
    if (!(a.layout == b.layout)) {
        throw LayoutError(std::string(what) + ": operands act on different layouts (" +
                          a.layout.describe() + " vs " + b.layout.describe() + ")");
    }
}

ComplexMatrix parity_z() {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

ComplexMatrix fermion_lowering() {
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(0, 1) = 1.0;
    return b;
}

ComplexMatrix diagonal_projector(const ModeLayout& layout, std::size_t max_quanta) {
    const auto n = layout.dimension();
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (layout.total_boson_quanta(i) <= max_quanta) {
            const auto k = static_cast<Eigen::Index>(i);
            p(k, k) = 1.0;
        }
    }
    return p;
}

}  // namespace

ModeLayout::ModeLayout(std::vector<Factor> factors, std::size_t max_dimension)
    : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw LayoutError("ModeLayout: at least one factor is required");
    }
    for (const auto& f : factors_) {
        if (const auto* b = std::get_if<Boson>(&f); b && b->cutoff < kMinBosonCutoff) {
            throw LayoutError("ModeLayout: boson cutoff " + std::to_string(b->cutoff) + " below minimum " +
                              std::to_string(kMinBosonCutoff));
        }
        if (const auto* s = std::get_if<Spin>(&f); s && s->dim < 1) {
            throw LayoutError("ModeLayout: spin factor dimension must be >= 1");
        }
    }
    strides_.assign(factors_.size(), 1);
    dimension_ = 1;
    for (std::size_t k = factors_.size(); k-- > 0;) {
        strides_[k] = dimension_;
        const auto d = dim_of(factors_[k]);
        if (dimension_ > max_dimension / d) {
            throw LayoutError("ModeLayout: total dimension exceeds maximum " + std::to_string(max_dimension));
        }
        dimension_ *= d;
    }
    if (dimension_ > max_dimension) {
        throw LayoutError("ModeLayout: total dimension exceeds maximum " + std::to_string(max_dimension));
    }
}

std::size_t ModeLayout::factor_dim(std::size_t k) const { return dim_of(factors_.at(k)); }

std::vector<std::size_t> ModeLayout::boson_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (is_boson(k)) out.push_back(k);
    }
    return out;
}

std::vector<std::size_t> ModeLayout::fermion_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (is_fermion(k)) out.push_back(k);
    }
    return out;
}

std::size_t ModeLayout::min_boson_cutoff() const {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& f : factors_) {
        if (const auto* b = std::get_if<Boson>(&f)) best = std::min(best, b->cutoff);
    }
    return best;
}

std::vector<std::size_t> ModeLayout::decompose(std::size_t index) const {
    std::vector<std::size_t> occ(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        occ[k] = (index / strides_[k]) % dim_of(factors_[k]);
    }
    return occ;
}

std::size_t ModeLayout::total_boson_quanta(std::size_t index) const {
    std::size_t total = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (is_boson(k)) total += (index / strides_[k]) % dim_of(factors_[k]);
    }
    return total;
}

std::size_t ModeLayout::total_fermion_number(std::size_t index) const {
    std::size_t total = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (is_fermion(k)) total += (index / strides_[k]) % 2;
    }
    return total;
}

std::string ModeLayout::describe() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) os << 'x';
        std::visit(
            [&os](const auto& f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, Boson>) {
                    os << 'B' << f.cutoff;
                } else if constexpr (std::is_same_v<T, Fermion>) {
                    os << 'F';
                } else {
                    os << 'S' << f.dim;
                }
            },
            factors_[k]);
    }
    return os.str();
}

TruncatedOperator::TruncatedOperator(ModeLayout l, ComplexMatrix m, Grade g)
    : layout(std::move(l)), matrix(std::move(m)), grade(g) {
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    if (matrix.rows() != n || matrix.cols() != n) {
        throw DimensionError("TruncatedOperator: matrix is " + std::to_string(matrix.rows()) + "x" +
                             std::to_string(matrix.cols()) + " but layout " + layout.describe() +
                             " has dimension " + std::to_string(n));
    }
}

TruncatedOperator TruncatedOperator::adjoint() const { return {layout, matrix.adjoint(), grade}; }

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_layout(a, b, "operator+");
    if (a.grade != b.grade) throw GradeError("operator+: mixing even and odd operators");
    return {a.layout, a.matrix + b.matrix, a.grade};
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_layout(a, b, "operator-");
    if (a.grade != b.grade) throw GradeError("operator-: mixing even and odd operators");
    return {a.layout, a.matrix - b.matrix, a.grade};
}

TruncatedOperator operator*(Complex s, const TruncatedOperator& a) { return {a.layout, s * a.matrix, a.grade}; }

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_layout(a, b, "operator*");
    return {a.layout, a.matrix * b.matrix, a.grade + b.grade};
}

TruncatedOperator identity_operator(const ModeLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    return {layout, ComplexMatrix::Identity(n, n), Grade::Even};
}

TruncatedOperator zero_operator(const ModeLayout& layout, Grade grade) {
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    return {layout, ComplexMatrix::Zero(n, n), grade};
}

bool bracket_is_anticommutator(Grade a, Grade b) { return a == Grade::Odd && b == Grade::Odd; }

TruncatedOperator graded_bracket(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_layout(a, b, "graded_bracket");
    const double sign = bracket_is_anticommutator(a.grade, b.grade) ? 1.0 : -1.0;
    return {a.layout, a.matrix * b.matrix + sign * (b.matrix * a.matrix), a.grade + b.grade};
}

namespace {

// Dense Kronecker product that skips zero entries of the left factor; operator matrices here are
// very sparse, which makes this much faster than the generic expression.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() * br, a.cols() * bc);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Complex v = a(i, j);
            if (v == Complex(0.0, 0.0)) continue;
            out.block(i * br, j * bc, br, bc) = v * b;
        }
    }
    return out;
}

}  // namespace

ComplexMatrix kron_factors(const ModeLayout& layout,
                           const std::vector<std::pair<std::size_t, ComplexMatrix>>& locals) {
    ComplexMatrix result = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const auto d = static_cast<Eigen::Index>(layout.factor_dim(k));
        const auto it = std::find_if(locals.begin(), locals.end(), [k](const auto& e) { return e.first == k; });
        ComplexMatrix local;
        if (it == locals.end()) {
            local = ComplexMatrix::Identity(d, d);
        } else {
            if (it->second.rows() != d || it->second.cols() != d) {
                throw DimensionError("kron_factors: local matrix for factor " + std::to_string(k) +
                                     " has wrong size");
            }
            local = it->second;
        }
        result = kron(result, local);
    }
    return result;
}

ComplexMatrix annihilation_matrix(std::size_t cutoff) {
    const auto n = static_cast<Eigen::Index>(cutoff);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

LadderPair boson_ops(const ModeLayout& layout, std::size_t mode_index) {
    if (mode_index >= layout.size()) {
        throw LayoutError("boson_ops: mode index " + std::to_string(mode_index) + " out of range");
    }
    const auto* b = std::get_if<Boson>(&layout.factors()[mode_index]);
    if (!b) {
        throw LayoutError("boson_ops: factor " + std::to_string(mode_index) + " is not a boson");
    }
    TruncatedOperator a{layout, kron_factors(layout, {{mode_index, annihilation_matrix(b->cutoff)}}), Grade::Even};
    auto ad = a.adjoint();
    return {std::move(a), std::move(ad)};
}

LadderPair fermion_ops(const ModeLayout& layout, std::size_t mode_index) {
    if (mode_index >= layout.size()) {
        throw LayoutError("fermion_ops: mode index " + std::to_string(mode_index) + " out of range");
    }
    if (!layout.is_fermion(mode_index)) {
        throw LayoutError("fermion_ops: factor " + std::to_string(mode_index) + " is not a fermion");
    }
    std::vector<std::pair<std::size_t, ComplexMatrix>> locals;
    for (std::size_t k = 0; k < mode_index; ++k) {
        if (layout.is_fermion(k)) locals.emplace_back(k, parity_z());
    }
    locals.emplace_back(mode_index, fermion_lowering());
    TruncatedOperator b{layout, kron_factors(layout, locals), Grade::Odd};
    auto bd = b.adjoint();
    return {std::move(b), std::move(bd)};
}

Quadratures quadratures(const ModeLayout& layout, std::size_t mode_index, double omega) {
    if (!(omega > 0.0)) {
        throw DomainError("quadratures: omega must be positive");
    }
    const auto [a, ad] = boson_ops(layout, mode_index);
    const Complex i(0.0, 1.0);
    TruncatedOperator x{layout, (a.matrix + ad.matrix) / std::sqrt(2.0 * omega), Grade::Even};
    TruncatedOperator p{layout, i * std::sqrt(omega / 2.0) * (ad.matrix - a.matrix), Grade::Even};
    return {std::move(x), std::move(p)};
}

TruncatedOperator interior_projector(const ModeLayout& layout, std::size_t margin) {
    const auto bosons = layout.boson_indices();
    if (bosons.empty()) {
        return identity_operator(layout);
    }
    const auto cutoff = layout.min_boson_cutoff();
    if (margin >= cutoff) {
        throw LayoutError("interior_projector: margin " + std::to_string(margin) + " is not below cutoff " +
                          std::to_string(cutoff));
    }
    return {layout, diagonal_projector(layout, cutoff - 1 - margin), Grade::Even};
}

TruncatedOperator quanta_projector(const ModeLayout& layout, std::size_t max_quanta) {
    return {layout, diagonal_projector(layout, max_quanta), Grade::Even};
}

TruncatedOperator fermion_parity(const ModeLayout& layout) {
    const auto n = layout.dimension();
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        p(k, k) = (layout.total_fermion_number(i) % 2 == 0) ? 1.0 : -1.0;
    }
    return {layout, std::move(p), Grade::Even};
}

double grade_residual(const TruncatedOperator& op) {
    const auto n = op.layout.dimension();
    std::vector<int> parity(n);
    for (std::size_t i = 0; i < n; ++i) parity[i] = static_cast<int>(op.layout.total_fermion_number(i) % 2);
    const bool odd = op.grade == Grade::Odd;
    double bad = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool flips = parity[i] != parity[j];
            if (flips != odd) bad += std::norm(op.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    const double total = op.matrix.norm();
    return total == 0.0 ? 0.0 : std::sqrt(bad) / total;
}

ProjectedView::ProjectedView(const TruncatedOperator& projector) {
    const ComplexMatrix& p = projector.matrix;
    bool diagonal01 = true;
    for (Eigen::Index j = 0; j < p.cols() && diagonal01; ++j) {
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            const Complex v = p(i, j);
            if (i == j) {
                if (v == Complex(1.0)) {
                    support_.push_back(i);
                } else if (v != Complex(0.0)) {
                    diagonal01 = false;
                    break;
                }
            } else if (v != Complex(0.0)) {
                diagonal01 = false;
                break;
            }
        }
    }
    if (!diagonal01) {
        support_.clear();
        full_ = p;
    }
}

std::size_t ProjectedView::rank() const {
    if (full_) return static_cast<std::size_t>(std::llround(full_->trace().real()));
    return support_.size();
}

ComplexMatrix ProjectedView::sandwich(const ComplexMatrix& a) const {
    if (full_) return *full_ * a * *full_;
    return a(support_, support_);
}

ComplexMatrix ProjectedView::sandwich(const ComplexMatrix& a, const ComplexMatrix& b) const {
    if (full_) return *full_ * (a * (b * *full_));
    return a(support_, Eigen::all) * b(Eigen::all, support_);
}

ComplexMatrix ProjectedView::sandwich(std::initializer_list<const ComplexMatrix*> chain) const {
    if (chain.size() == 0) throw DimensionError("ProjectedView::sandwich: empty product");
    std::vector<const ComplexMatrix*> ops(chain);
    if (ops.size() == 1) return sandwich(*ops[0]);
    ComplexMatrix acc;
    if (full_) {
        acc = *ops.back() * *full_;
    } else {
        acc = (*ops.back())(Eigen::all, support_);
    }
    for (std::size_t k = ops.size() - 1; k-- > 1;) {
        acc = *ops[k] * acc;
    }
    if (full_) return *full_ * (*ops.front() * acc);
    return (*ops.front())(support_, Eigen::all) * acc;
}

}  // namespace qhsusy
