#include "qhsusy/superalgebra.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qhsusy {

std::string symbol_name(Generator g) {
    switch (g) {
        case Generator::K0: return "K0";
        case Generator::Kplus: return "K+";
        case Generator::Kminus: return "K-";
        case Generator::Y: return "Y";
        case Generator::Vplus: return "V+";
        case Generator::Vminus: return "V-";
        case Generator::Wplus: return "W+";
        case Generator::Wminus: return "W-";
    }
    return "?";
}

Grade generator_grade(Generator g) {
    switch (g) {
        case Generator::Vplus:
        case Generator::Vminus:
        case Generator::Wplus:
        case Generator::Wminus: return Grade::Odd;
        default: return Grade::Even;
    }
}

bool GeneratorSet::has(Generator g) const {
    switch (g) {
        case Generator::K0:
        case Generator::Kplus:
        case Generator::Kminus: return true;
        case Generator::Y: return Y.has_value();
        case Generator::Vplus: return Vplus.has_value();
        case Generator::Vminus: return Vminus.has_value();
        case Generator::Wplus: return Wplus.has_value();
        case Generator::Wminus: return Wminus.has_value();
    }
    return false;
}

bool GeneratorSet::has_odd_part() const {
    return Y && Vplus && Vminus && Wplus && Wminus;
}

const TruncatedOperator& GeneratorSet::get(Generator g) const {
    const std::optional<TruncatedOperator>* opt = nullptr;
    switch (g) {
        case Generator::K0: return K0;
        case Generator::Kplus: return Kplus;
        case Generator::Kminus: return Kminus;
        case Generator::Y: opt = &Y; break;
        case Generator::Vplus: opt = &Vplus; break;
        case Generator::Vminus: opt = &Vminus; break;
        case Generator::Wplus: opt = &Wplus; break;
        case Generator::Wminus: opt = &Wminus; break;
    }
    if (!opt || !opt->has_value()) {
        throw LayoutError("GeneratorSet: generator " + symbol_name(g) + " is not present");
    }
    return **opt;
}

void GeneratorSet::validate(double grade_tol) const {
    for (Generator g : kAllGenerators) {
        if (!has(g)) continue;
        const auto& op = get(g);
        if (!(op.layout == layout)) {
            throw LayoutError("GeneratorSet: " + symbol_name(g) + " acts on " + op.layout.describe() +
                              ", expected " + layout.describe());
        }
        if (op.grade != generator_grade(g)) {
            throw GradeError("GeneratorSet: " + symbol_name(g) + " carries the wrong declared grade");
        }
        const double r = grade_residual(op);
        if (r > grade_tol) {
            throw GradeError("GeneratorSet: " + symbol_name(g) + " violates its grade (residual " +
                             std::to_string(r) + ")");
        }
    }
}

std::string RelationEntry::label() const {
    const bool anti = kind == BracketKind::Anticommutator;
    return std::string(anti ? "{" : "[") + symbol_name(left) + "," + symbol_name(right) + (anti ? "}" : "]");
}

GeneratorSet su11_single_mode(const ModeLayout& layout) {
    const auto bosons = layout.boson_indices();
    const auto fermions = layout.fermion_indices();
    if (bosons.size() != 1 || fermions.size() > 1 || bosons.size() + fermions.size() != layout.size()) {
        throw LayoutError("su11_single_mode: expected one boson factor and at most one fermion factor, got " +
                          layout.describe());
    }
    const auto [a, ad] = boson_ops(layout, bosons.front());
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    GeneratorSet gens{layout,
                      {layout, 0.5 * (ad.matrix * a.matrix + 0.5 * id), Grade::Even},
                      {layout, 0.5 * (ad.matrix * ad.matrix), Grade::Even},
                      {layout, 0.5 * (a.matrix * a.matrix), Grade::Even},
                      {}, {}, {}, {}, {}};
    if (!fermions.empty()) {
        const auto [b, bd] = fermion_ops(layout, fermions.front());
        const double s = 1.0 / std::sqrt(2.0);
        gens.Y = TruncatedOperator{layout, 0.5 * (bd.matrix * b.matrix - 0.5 * id), Grade::Even};
        gens.Vplus = TruncatedOperator{layout, s * (ad.matrix * bd.matrix), Grade::Odd};
        gens.Vminus = TruncatedOperator{layout, s * (a.matrix * bd.matrix), Grade::Odd};
        gens.Wplus = TruncatedOperator{layout, s * (ad.matrix * b.matrix), Grade::Odd};
        gens.Wminus = TruncatedOperator{layout, s * (a.matrix * b.matrix), Grade::Odd};
    }
    return gens;
}

namespace {

using G = Generator;

std::map<std::pair<G, G>, std::vector<Term>> nonvanishing_brackets() {
    return {
        {{G::K0, G::Kplus}, {{G::Kplus, 1.0}}},
        {{G::K0, G::Kminus}, {{G::Kminus, -1.0}}},
        {{G::Kplus, G::Kminus}, {{G::K0, -2.0}}},
        {{G::K0, G::Vplus}, {{G::Vplus, 0.5}}},
        {{G::K0, G::Vminus}, {{G::Vminus, -0.5}}},
        {{G::K0, G::Wplus}, {{G::Wplus, 0.5}}},
        {{G::K0, G::Wminus}, {{G::Wminus, -0.5}}},
        {{G::Kplus, G::Vminus}, {{G::Vplus, -1.0}}},
        {{G::Kminus, G::Vplus}, {{G::Vminus, 1.0}}},
        {{G::Kplus, G::Wminus}, {{G::Wplus, -1.0}}},
        {{G::Kminus, G::Wplus}, {{G::Wminus, 1.0}}},
        {{G::Y, G::Vplus}, {{G::Vplus, 0.5}}},
        {{G::Y, G::Vminus}, {{G::Vminus, 0.5}}},
        {{G::Y, G::Wplus}, {{G::Wplus, -0.5}}},
        {{G::Y, G::Wminus}, {{G::Wminus, -0.5}}},
        {{G::Vplus, G::Wplus}, {{G::Kplus, 1.0}}},
        {{G::Vminus, G::Wminus}, {{G::Kminus, 1.0}}},
        {{G::Vplus, G::Wminus}, {{G::K0, 1.0}, {G::Y, -1.0}}},
        {{G::Vminus, G::Wplus}, {{G::K0, 1.0}, {G::Y, 1.0}}},
    };
}

RelationTable table_over(std::initializer_list<Generator> symbols) {
    const auto known = nonvanishing_brackets();
    const std::vector<Generator> syms(symbols);
    RelationTable table;
    for (std::size_t i = 0; i < syms.size(); ++i) {
        for (std::size_t j = i; j < syms.size(); ++j) {
            const G l = syms[i];
            const G r = syms[j];
            const bool anti = bracket_is_anticommutator(generator_grade(l), generator_grade(r));
            // An even generator trivially commutes with itself.
            if (i == j && !anti) continue;
            const auto it = known.find({l, r});
            table.entries.push_back({anti ? BracketKind::Anticommutator : BracketKind::Commutator, l, r,
                                     it == known.end() ? std::vector<Term>{} : it->second});
        }
    }
    return table;
}

ComplexMatrix rhs_block(const GeneratorSet& gens, const ProjectedView& view, const std::vector<Term>& rhs) {
    const auto k = static_cast<Eigen::Index>(view.rank());
    ComplexMatrix out = ComplexMatrix::Zero(k, k);
    if (!view.is_diagonal()) {
        const auto n = static_cast<Eigen::Index>(gens.layout.dimension());
        out = ComplexMatrix::Zero(n, n);
    }
    for (const auto& term : rhs) {
        if (term.symbol) {
            out += term.coefficient * view.sandwich(gens.get(*term.symbol).matrix);
        } else {
            const auto n = static_cast<Eigen::Index>(gens.layout.dimension());
            out += term.coefficient * view.sandwich(ComplexMatrix::Identity(n, n));
        }
    }
    return out;
}

}  // namespace

RelationTable standard_relation_table() {
    return table_over({G::K0, G::Kplus, G::Kminus, G::Y, G::Vplus, G::Vminus, G::Wplus, G::Wminus});
}

RelationTable su11_relation_table() { return table_over({G::K0, G::Kplus, G::Kminus}); }

RelationTable relation_table_for(const GeneratorSet& gens) {
    return gens.has_odd_part() ? standard_relation_table() : su11_relation_table();
}

ReportFragment check_relations(const GeneratorSet& gens, const RelationTable& table,
                               const TruncatedOperator& projector, double tol) {
    for (const auto& e : table.entries) {
        for (Generator g : {e.left, e.right}) {
            if (!gens.has(g)) throw LayoutError("check_relations: table references missing " + symbol_name(g));
        }
        for (const auto& t : e.rhs) {
            if (t.symbol && !gens.has(*t.symbol)) {
                throw LayoutError("check_relations: table references missing " + symbol_name(*t.symbol));
            }
        }
    }
    if (!(projector.layout == gens.layout)) {
        throw LayoutError("check_relations: projector layout differs from generator layout");
    }

    const ProjectedView view(projector);
    ReportFragment out;
    out.reserve(table.entries.size());
    for (const auto& e : table.entries) {
        const ComplexMatrix& l = gens.get(e.left).matrix;
        const ComplexMatrix& r = gens.get(e.right).matrix;
        const double sign = e.kind == BracketKind::Anticommutator ? 1.0 : -1.0;
        const ComplexMatrix bracket = view.sandwich(l, r) + sign * view.sandwich(r, l);
        const ComplexMatrix diff = bracket - rhs_block(gens, view, e.rhs);
        const double scale = view.sandwich(l).norm() * view.sandwich(r).norm() + 1.0;
        out.push_back(make_result(e.label(), diff.norm() / scale, tol));
    }
    return out;
}

ReportFragment check_hermiticity(const GeneratorSet& gens, const TruncatedOperator& projector, double tol) {
    if (!(projector.layout == gens.layout)) {
        throw LayoutError("check_hermiticity: projector layout differs from generator layout");
    }
    const std::vector<std::pair<G, G>> rows = {
        {G::K0, G::K0},         {G::Kplus, G::Kminus}, {G::Kminus, G::Kplus}, {G::Y, G::Y},
        {G::Vplus, G::Wminus},  {G::Vminus, G::Wplus}, {G::Wplus, G::Vminus}, {G::Wminus, G::Vplus},
    };
    const ProjectedView view(projector);
    ReportFragment out;
    for (const auto& [l, r] : rows) {
        if (!gens.has(l) || !gens.has(r)) continue;
        // P L^dag P = (P L P)^dag for a Hermitian projector.
        const ComplexMatrix lhs = view.sandwich(gens.get(l).matrix).adjoint();
        const ComplexMatrix rhs = view.sandwich(gens.get(r).matrix);
        out.push_back(make_result(symbol_name(l) + "^dag=" + symbol_name(r), relative_residual(lhs, rhs), tol));
    }
    return out;
}

TruncatedOperator su11_casimir(const GeneratorSet& gens) {
    const auto& k0 = gens.K0.matrix;
    const auto& kp = gens.Kplus.matrix;
    const auto& km = gens.Kminus.matrix;
    return {gens.layout, k0 * k0 - 0.5 * (kp * km + km * kp), Grade::Even};
}

}  // namespace qhsusy
