#include "qhsusy/realizations.hpp"

#include <cmath>
#include <utility>

namespace qhsusy {

namespace {

using Locals = std::vector<std::pair<std::size_t, ComplexMatrix>>;

const Complex kI(0.0, 1.0);

ComplexMatrix pauli(int i) {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    switch (i) {
        case 0: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 1: s(0, 1) = -kI; s(1, 0) = kI; break;
        default: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    }
    return s;
}

ComplexMatrix lowering() {
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(0, 1) = 1.0;
    return b;
}

ComplexMatrix parity() {
    ComplexMatrix z = ComplexMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    return z;
}

// Jordan-Wigner string on the fermion factors left of `target`, then `op` at `target`.
void add_fermion(const ModeLayout& layout, std::size_t target, const ComplexMatrix& op, Locals& locals) {
    for (std::size_t k = 0; k < target; ++k) {
        if (layout.is_fermion(k)) locals.emplace_back(k, parity());
    }
    locals.emplace_back(target, op);
}

std::size_t spin_index(const ModeLayout& layout) {
    for (std::size_t k = 0; k < layout.size(); ++k) {
        if (const auto* s = std::get_if<Spin>(&layout.factors()[k]); s && s->dim == 2) return k;
    }
    throw LayoutError("layout " + layout.describe() + " has no spin-1/2 factor");
}

// K0, K+, K- summed over the boson factors.
GeneratorSet su11_sum(const ModeLayout& layout) {
    const auto bosons = layout.boson_indices();
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    ComplexMatrix k0 = (0.25 * static_cast<double>(bosons.size())) * ComplexMatrix::Identity(n, n);
    ComplexMatrix kp = ComplexMatrix::Zero(n, n);
    for (auto i : bosons) {
        const ComplexMatrix a = annihilation_matrix(layout.factor_dim(i));
        const ComplexMatrix ad = a.adjoint();
        k0 += 0.5 * kron_factors(layout, {{i, ad * a}});
        kp += 0.5 * kron_factors(layout, {{i, ad * ad}});
    }
    ComplexMatrix km = kp.adjoint();
    return {layout, {layout, std::move(k0), Grade::Even}, {layout, std::move(kp), Grade::Even},
            {layout, std::move(km), Grade::Even}, {}, {}, {}, {}, {}};
}

std::vector<LadderPair> all_bosons(const ModeLayout& layout) {
    std::vector<LadderPair> out;
    for (auto i : layout.boson_indices()) out.push_back(boson_ops(layout, i));
    return out;
}

std::vector<LadderPair> all_fermions(const ModeLayout& layout) {
    std::vector<LadderPair> out;
    for (auto i : layout.fermion_indices()) out.push_back(fermion_ops(layout, i));
    return out;
}

void require_layout(const RealizationSpec& spec, RealizationKind kind, const char* who) {
    if (spec.kind != kind) throw LayoutError(std::string(who) + ": realization kind is " + realization_name(spec.kind));
    spec.validate();
}

}  // namespace

std::string realization_name(RealizationKind kind) {
    switch (kind) {
        case RealizationKind::SingleMode: return "single_mode";
        case RealizationKind::NMode: return "n_mode";
        case RealizationKind::SpinOrbit: return "spin_orbit";
    }
    return "?";
}

RealizationKind parse_realization_kind(const std::string& name) {
    if (name == "single_mode") return RealizationKind::SingleMode;
    if (name == "n_mode") return RealizationKind::NMode;
    if (name == "spin_orbit") return RealizationKind::SpinOrbit;
    throw ParameterError("unknown realization '" + name + "' (expected single_mode, n_mode or spin_orbit)");
}

RealizationSpec RealizationSpec::single_mode(std::size_t cutoff) {
    return {RealizationKind::SingleMode, 1, cutoff};
}

RealizationSpec RealizationSpec::n_mode(std::size_t n, std::size_t cutoff) {
    RealizationSpec s{RealizationKind::NMode, n, cutoff};
    s.validate();
    return s;
}

RealizationSpec RealizationSpec::spin_orbit(std::size_t cutoff) {
    return {RealizationKind::SpinOrbit, 3, cutoff};
}

void RealizationSpec::validate() const {
    switch (kind) {
        case RealizationKind::SingleMode:
            if (modes != 1) throw ParameterError("single_mode realization has exactly one boson mode");
            break;
        case RealizationKind::NMode:
            if (modes < 2) throw ParameterError("n_mode realization needs n >= 2 modes");
            break;
        case RealizationKind::SpinOrbit:
            if (modes != 3) throw ParameterError("spin_orbit realization has exactly three boson modes");
            break;
    }
    if (boson_cutoff < ModeLayout::kMinBosonCutoff) {
        throw ParameterError("boson cutoff must be at least " + std::to_string(ModeLayout::kMinBosonCutoff));
    }
}

ModeLayout realization_layout(const RealizationSpec& spec) {
    spec.validate();
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < spec.modes; ++i) factors.emplace_back(Boson{spec.boson_cutoff});
    if (spec.kind == RealizationKind::SpinOrbit) {
        factors.emplace_back(Spin{2});
        factors.emplace_back(Fermion{});
    } else {
        for (std::size_t i = 0; i < spec.modes; ++i) factors.emplace_back(Fermion{});
    }
    return ModeLayout(std::move(factors));
}

GeneratorSet single_mode_generators(const RealizationSpec& spec) {
    require_layout(spec, RealizationKind::SingleMode, "single_mode_generators");
    return su11_single_mode(realization_layout(spec));
}

GeneratorSet n_mode_generators(const RealizationSpec& spec) {
    require_layout(spec, RealizationKind::NMode, "n_mode_generators");
    const ModeLayout layout = realization_layout(spec);
    GeneratorSet gens = su11_sum(layout);
    const auto bosons = layout.boson_indices();
    const auto fermions = layout.fermion_indices();
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix a = annihilation_matrix(spec.boson_cutoff);
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix b = lowering();
    const ComplexMatrix bd = b.adjoint();

    ComplexMatrix y = (-0.25 * static_cast<double>(spec.modes)) * ComplexMatrix::Identity(n, n);
    ComplexMatrix vp = ComplexMatrix::Zero(n, n);
    ComplexMatrix vm = ComplexMatrix::Zero(n, n);
    ComplexMatrix wp = ComplexMatrix::Zero(n, n);
    ComplexMatrix wm = ComplexMatrix::Zero(n, n);
    auto pair_term = [&](std::size_t i, const ComplexMatrix& boson, const ComplexMatrix& fermion) {
        Locals locals{{bosons[i], boson}};
        add_fermion(layout, fermions[i], fermion, locals);
        return kron_factors(layout, locals);
    };
    for (std::size_t i = 0; i < spec.modes; ++i) {
        y += 0.5 * kron_factors(layout, {{fermions[i], bd * b}});
        vp += s * pair_term(i, ad, bd);
        vm += s * pair_term(i, a, bd);
        wp += s * pair_term(i, ad, b);
        wm += s * pair_term(i, a, b);
    }
    gens.Y = TruncatedOperator{layout, std::move(y), Grade::Even};
    gens.Vplus = TruncatedOperator{layout, std::move(vp), Grade::Odd};
    gens.Vminus = TruncatedOperator{layout, std::move(vm), Grade::Odd};
    gens.Wplus = TruncatedOperator{layout, std::move(wp), Grade::Odd};
    gens.Wminus = TruncatedOperator{layout, std::move(wm), Grade::Odd};
    return gens;
}

GeneratorSet spin_orbit_generators(const RealizationSpec& spec) {
    require_layout(spec, RealizationKind::SpinOrbit, "spin_orbit_generators");
    const ModeLayout layout = realization_layout(spec);
    GeneratorSet gens = su11_sum(layout);
    const auto bosons = layout.boson_indices();
    const std::size_t spin = spin_index(layout);
    const std::size_t grading = layout.fermion_indices().front();
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix a = annihilation_matrix(spec.boson_cutoff);
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix b = lowering();
    const ComplexMatrix bd = b.adjoint();
    const ComplexMatrix z = parity();

    // Y = (sigma.L + 3/2)/2 (x) Z with sigma.L = -i eps_ijk sigma_i a^dag_j a_k.
    ComplexMatrix y = 0.75 * kron_factors(layout, {{grading, z}});
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const ComplexMatrix sig = pauli(i);
        ComplexMatrix cross = kron_factors(layout, {{bosons[j], ad}, {bosons[k], a}, {spin, sig}, {grading, z}});
        cross -= kron_factors(layout, {{bosons[k], ad}, {bosons[j], a}, {spin, sig}, {grading, z}});
        y += (-0.5 * kI) * cross;
    }

    ComplexMatrix vp = ComplexMatrix::Zero(n, n);
    ComplexMatrix vm = ComplexMatrix::Zero(n, n);
    ComplexMatrix wp = ComplexMatrix::Zero(n, n);
    ComplexMatrix wm = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix sig = pauli(i);
        vp += s * kron_factors(layout, {{bosons[i], ad}, {spin, sig}, {grading, b}});
        vm += s * kron_factors(layout, {{bosons[i], a}, {spin, sig}, {grading, b}});
        wp += s * kron_factors(layout, {{bosons[i], ad}, {spin, sig}, {grading, bd}});
        wm += s * kron_factors(layout, {{bosons[i], a}, {spin, sig}, {grading, bd}});
    }
    gens.Y = TruncatedOperator{layout, std::move(y), Grade::Even};
    gens.Vplus = TruncatedOperator{layout, std::move(vp), Grade::Odd};
    gens.Vminus = TruncatedOperator{layout, std::move(vm), Grade::Odd};
    gens.Wplus = TruncatedOperator{layout, std::move(wp), Grade::Odd};
    gens.Wminus = TruncatedOperator{layout, std::move(wm), Grade::Odd};
    return gens;
}

GeneratorSet make_generators(const RealizationSpec& spec) {
    switch (spec.kind) {
        case RealizationKind::SingleMode: return single_mode_generators(spec);
        case RealizationKind::NMode: return n_mode_generators(spec);
        case RealizationKind::SpinOrbit: return spin_orbit_generators(spec);
    }
    throw ParameterError("unknown realization kind");
}

Realization build_realization(const RealizationSpec& spec) {
    GeneratorSet gens = make_generators(spec);
    auto bosons = all_bosons(gens.layout);
    auto fermions = all_fermions(gens.layout);
    return {spec, std::move(gens), std::move(bosons), std::move(fermions)};
}

TruncatedOperator relations_projector(const RealizationSpec& spec, const ModeLayout& layout, std::size_t margin) {
    if (spec.kind == RealizationKind::SingleMode) return interior_projector(layout, margin);
    if (margin >= spec.boson_cutoff) {
        throw LayoutError("relations_projector: margin " + std::to_string(margin) + " leaves no states at cutoff " +
                          std::to_string(spec.boson_cutoff));
    }
    return quanta_projector(layout, spec.boson_cutoff - margin);
}

TruncatedOperator low_lying_projector(const RealizationSpec& spec, const ModeLayout& layout) {
    return quanta_projector(layout, spec.boson_cutoff / 4);
}

std::array<TruncatedOperator, 3> angular_momentum(const ModeLayout& layout) {
    const auto bosons = layout.boson_indices();
    if (bosons.size() < 3) throw LayoutError("angular_momentum: needs three boson factors, got " + layout.describe());
    std::array<ComplexMatrix, 3> l;
    for (int i = 0; i < 3; ++i) {
        const auto j = bosons[static_cast<std::size_t>((i + 1) % 3)];
        const auto k = bosons[static_cast<std::size_t>((i + 2) % 3)];
        const ComplexMatrix aj = annihilation_matrix(layout.factor_dim(j));
        const ComplexMatrix ak = annihilation_matrix(layout.factor_dim(k));
        l[static_cast<std::size_t>(i)] =
            -kI * (kron_factors(layout, {{j, aj.adjoint()}, {k, ak}}) - kron_factors(layout, {{k, ak.adjoint()}, {j, aj}}));
    }
    return {TruncatedOperator{layout, std::move(l[0]), Grade::Even},
            TruncatedOperator{layout, std::move(l[1]), Grade::Even},
            TruncatedOperator{layout, std::move(l[2]), Grade::Even}};
}

std::array<TruncatedOperator, 3> pauli_on_spin(const ModeLayout& layout) {
    const std::size_t spin = spin_index(layout);
    return {TruncatedOperator{layout, kron_factors(layout, {{spin, pauli(0)}}), Grade::Even},
            TruncatedOperator{layout, kron_factors(layout, {{spin, pauli(1)}}), Grade::Even},
            TruncatedOperator{layout, kron_factors(layout, {{spin, pauli(2)}}), Grade::Even}};
}

}  // namespace qhsusy
