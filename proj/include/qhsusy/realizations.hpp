#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qhsusy/superalgebra.hpp"

namespace qhsusy {

enum class RealizationKind { SingleMode, NMode, SpinOrbit };

std::string realization_name(RealizationKind kind);
/// "single_mode", "n_mode" or "spin_orbit"; ParameterError otherwise.
RealizationKind parse_realization_kind(const std::string& name);

struct RealizationSpec {
    RealizationKind kind = RealizationKind::SingleMode;
    std::size_t modes = 1;  // boson modes: 1, n >= 2, or 3
    std::size_t boson_cutoff = 80;

    static RealizationSpec single_mode(std::size_t cutoff);
    static RealizationSpec n_mode(std::size_t n, std::size_t cutoff);
    static RealizationSpec spin_orbit(std::size_t cutoff);

    /// ParameterError when the mode count does not fit the kind.
    void validate() const;
};

/// single_mode: [B, F]; n_mode: [B x n, F x n]; spin_orbit: [B, B, B, Spin(2), F] with the last
/// fermion acting as the two-block grading.
ModeLayout realization_layout(const RealizationSpec& spec);

GeneratorSet single_mode_generators(const RealizationSpec& spec);

/// K0 = (sum a^dag a + n/2)/2, K+ = sum a^dag^2/2, Y = (sum b^dag b - n/2)/2,
/// V+ = sum a^dag_i b^dag_i/sqrt2, V- = sum a_i b^dag_i/sqrt2, W+ = sum a^dag_i b_i/sqrt2, W- = sum a_i b_i/sqrt2.
GeneratorSet n_mode_generators(const RealizationSpec& spec);

/// K's as in the 3-mode oscillator, Y = (sigma.L + 3/2)/2 (x) diag(1, -1), V+- = (sigma.a^dag, sigma.a)/sqrt2 (x) b
/// and W+- = (sigma.a^dag, sigma.a)/sqrt2 (x) b^dag.
GeneratorSet spin_orbit_generators(const RealizationSpec& spec);

GeneratorSet make_generators(const RealizationSpec& spec);

/// Generators plus the ladder operators of every boson mode and fermion factor.
struct Realization {
    RealizationSpec spec;
    GeneratorSet gens;
    std::vector<LadderPair> bosons;
    std::vector<LadderPair> fermions;
};

Realization build_realization(const RealizationSpec& spec);

/// Projector for the polynomial checks: interior projector with `margin` for the single mode,
/// total quanta <= cutoff - margin otherwise (cutoff 8, margin 4 keeps total quanta <= 4).
TruncatedOperator relations_projector(const RealizationSpec& spec, const ModeLayout& layout, std::size_t margin);

/// Total quanta <= cutoff / 4, where the truncated metric is indistinguishable from the exact one.
TruncatedOperator low_lying_projector(const RealizationSpec& spec, const ModeLayout& layout);

/// L_i = -i eps_ijk a^dag_j a_k over the first three boson factors of `layout`.
std::array<TruncatedOperator, 3> angular_momentum(const ModeLayout& layout);

/// Pauli matrices on the spin factor of `layout`.
std::array<TruncatedOperator, 3> pauli_on_spin(const ModeLayout& layout);

}  // namespace qhsusy
