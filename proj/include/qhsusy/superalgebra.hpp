#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qhsusy/fockspace.hpp"
#include "qhsusy/report.hpp"

namespace qhsusy {

enum class Generator { K0, Kplus, Kminus, Y, Vplus, Vminus, Wplus, Wminus };

inline constexpr std::array<Generator, 8> kAllGenerators = {
    Generator::K0, Generator::Kplus,  Generator::Kminus, Generator::Y,
    Generator::Vplus, Generator::Vminus, Generator::Wplus,  Generator::Wminus};

std::string symbol_name(Generator g);
Grade generator_grade(Generator g);

/// Generators of su(1,1) (K0, K+, K-) optionally extended to su(1,1|1) by Y and the odd V+-, W+-.
struct GeneratorSet {
    ModeLayout layout;
    TruncatedOperator K0;
    TruncatedOperator Kplus;
    TruncatedOperator Kminus;
    std::optional<TruncatedOperator> Y;
    std::optional<TruncatedOperator> Vplus;
    std::optional<TruncatedOperator> Vminus;
    std::optional<TruncatedOperator> Wplus;
    std::optional<TruncatedOperator> Wminus;

    bool has(Generator g) const;
    bool has_odd_part() const;
    const TruncatedOperator& get(Generator g) const;

    /// Throws LayoutError / GradeError when the declared invariants do not hold.
    void validate(double grade_tol = 1e-12) const;
};

enum class BracketKind { Commutator, Anticommutator };

struct Term {
    std::optional<Generator> symbol;  // nullopt: identity
    double coefficient;
};

struct RelationEntry {
    BracketKind kind;
    Generator left;
    Generator right;
    std::vector<Term> rhs;  // empty: the bracket vanishes

    std::string label() const;
};

struct RelationTable {
    std::vector<RelationEntry> entries;
};

/// K0 = (a^dag a + 1/2)/2, K+ = a^dag^2/2, K- = a^2/2 on a layout with exactly one boson factor.
/// With one fermion factor also Y = (b^dag b - 1/2)/2, V+ = a^dag b^dag/sqrt2, V- = a b^dag/sqrt2,
/// W+ = a^dag b/sqrt2, W- = a b/sqrt2.
GeneratorSet su11_single_mode(const ModeLayout& layout);

/// All nonvanishing graded brackets of su(1,1|1) plus an explicit vanishing entry for every other
/// generator pair (and for each odd generator with itself). The bracket kind follows the grades.
RelationTable standard_relation_table();

/// The su(1,1) rows of the standard table.
RelationTable su11_relation_table();

/// Standard table when `gens` carries the odd sector, su(1,1) rows otherwise.
RelationTable relation_table_for(const GeneratorSet& gens);

/// Each entry: ||P([L,R]_+- - RHS)P||_F / (||P L P||_F ||P R P||_F + 1).
ReportFragment check_relations(const GeneratorSet& gens, const RelationTable& table,
                               const TruncatedOperator& projector, double tol);

/// K0^dag = K0, K+-^dag = K-+, and when present Y^dag = Y, V+-^dag = W-+ (and W-+^dag = V+-).
ReportFragment check_hermiticity(const GeneratorSet& gens, const TruncatedOperator& projector, double tol);

/// K0^2 - (K+K- + K-K+)/2.
TruncatedOperator su11_casimir(const GeneratorSet& gens);

}  // namespace qhsusy
