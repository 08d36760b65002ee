#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qhsusy/numkernel.hpp"

namespace qhsusy {

struct Boson {
    std::size_t cutoff;  // number of retained levels 0..cutoff-1
    bool operator==(const Boson&) const = default;
};
struct Fermion {
    bool operator==(const Fermion&) const = default;
};
struct Spin {
    std::size_t dim;
    bool operator==(const Spin&) const = default;
};

using Factor = std::variant<Boson, Fermion, Spin>;

/// Ordered tensor-product structure. The leftmost factor varies slowest in the
/// Kronecker product, so basis index = sum_k n_k * stride_k with stride of the last
/// factor equal to 1.
class ModeLayout {
public:
    static constexpr std::size_t kMinBosonCutoff = 2;
    static constexpr std::size_t kDefaultMaxDimension = 16384;

    explicit ModeLayout(std::vector<Factor> factors,
                        std::size_t max_dimension = kDefaultMaxDimension);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    std::size_t dimension() const { return dimension_; }
    std::size_t factor_dim(std::size_t k) const;
    std::size_t stride(std::size_t k) const { return strides_[k]; }

    bool is_boson(std::size_t k) const { return std::holds_alternative<Boson>(factors_.at(k)); }
    bool is_fermion(std::size_t k) const { return std::holds_alternative<Fermion>(factors_.at(k)); }

    std::vector<std::size_t> boson_indices() const;
    std::vector<std::size_t> fermion_indices() const;
    std::size_t min_boson_cutoff() const;

    /// Per-factor occupation numbers of basis state `index`.
    std::vector<std::size_t> decompose(std::size_t index) const;
    std::size_t total_boson_quanta(std::size_t index) const;
    std::size_t total_fermion_number(std::size_t index) const;

    /// Stable textual tag, e.g. "B80xF".
    std::string describe() const;

    bool operator==(const ModeLayout& other) const { return factors_ == other.factors_; }

private:
    std::vector<Factor> factors_;
    std::vector<std::size_t> strides_;
    std::size_t dimension_ = 1;
};

enum class Grade { Even = 0, Odd = 1 };

inline Grade operator+(Grade a, Grade b) {
    return static_cast<Grade>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

/// Dense operator on a ModeLayout with a Z2 grade under total fermion parity.
struct TruncatedOperator {
    ModeLayout layout;
    ComplexMatrix matrix;
    Grade grade = Grade::Even;

    TruncatedOperator(ModeLayout l, ComplexMatrix m, Grade g);

    std::size_t dim() const { return layout.dimension(); }
    TruncatedOperator adjoint() const;
};

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator*(Complex s, const TruncatedOperator& a);
TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);

TruncatedOperator identity_operator(const ModeLayout& layout);
TruncatedOperator zero_operator(const ModeLayout& layout, Grade grade = Grade::Even);

/// Graded bracket: anticommutator when both operands are odd, commutator otherwise.
TruncatedOperator graded_bracket(const TruncatedOperator& a, const TruncatedOperator& b);
bool bracket_is_anticommutator(Grade a, Grade b);

/// Kronecker product of per-factor matrices; factors absent from `locals` are identities.
/// No fermionic sign strings are inserted.
ComplexMatrix kron_factors(const ModeLayout& layout,
                           const std::vector<std::pair<std::size_t, ComplexMatrix>>& locals);

/// Single-mode truncated annihilator: a[n-1, n] = sqrt(n).
ComplexMatrix annihilation_matrix(std::size_t cutoff);

struct LadderPair {
    TruncatedOperator annihilator;
    TruncatedOperator creator;
};

LadderPair boson_ops(const ModeLayout& layout, std::size_t mode_index);
LadderPair fermion_ops(const ModeLayout& layout, std::size_t mode_index);

struct Quadratures {
    TruncatedOperator x;
    TruncatedOperator p;
};

Quadratures quadratures(const ModeLayout& layout, std::size_t mode_index, double omega);

/// Projector onto states with total boson quanta <= min_cutoff - 1 - margin.
TruncatedOperator interior_projector(const ModeLayout& layout, std::size_t margin);

/// Projector onto states with total boson quanta <= max_quanta.
TruncatedOperator quanta_projector(const ModeLayout& layout, std::size_t max_quanta);

TruncatedOperator fermion_parity(const ModeLayout& layout);

/// ||A - (+/-) P A P|| / (||A|| + 1) with P the fermion parity; zero for a correctly graded operator.
double grade_residual(const TruncatedOperator& op);

/// Evaluates projected products P A1 A2 ... Ak P. A diagonal 0/1 projector is reduced to its
/// support S, so only the rows S of A1 and the columns S of Ak are touched; the result is the
/// |S| x |S| block (same Frobenius norm as the full sandwich).
class ProjectedView {
public:
    explicit ProjectedView(const TruncatedOperator& projector);

    ComplexMatrix sandwich(const ComplexMatrix& a) const;
    ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) const;
    ComplexMatrix sandwich(std::initializer_list<const ComplexMatrix*> chain) const;

    bool is_diagonal() const { return full_.has_value() == false; }
    std::size_t rank() const;
    const std::vector<Eigen::Index>& support() const { return support_; }

private:
    std::vector<Eigen::Index> support_;
    std::optional<ComplexMatrix> full_;
};

}  // namespace qhsusy
