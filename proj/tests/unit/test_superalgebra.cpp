#include <doctest.h>

#include <cmath>

#include "qhsusy/superalgebra.hpp"

using namespace qhsusy;

namespace {

GeneratorSet super_gens(std::size_t cutoff) { return su11_single_mode(ModeLayout({Boson{cutoff}, Fermion{}})); }

}  // namespace

TEST_CASE("generator metadata") {
    CHECK(generator_grade(Generator::K0) == Grade::Even);
    CHECK(generator_grade(Generator::Y) == Grade::Even);
    CHECK(generator_grade(Generator::Vplus) == Grade::Odd);
    CHECK(generator_grade(Generator::Wminus) == Grade::Odd);
    CHECK(symbol_name(Generator::Kplus) != symbol_name(Generator::Kminus));
}

TEST_CASE("relation tables") {
    const auto full = standard_relation_table();
    // Every unordered pair of the eight generators except the four even self-brackets.
    CHECK(full.entries.size() == 32);
    std::size_t anti = 0;
    for (const auto& e : full.entries) {
        const bool both_odd = generator_grade(e.left) == Grade::Odd && generator_grade(e.right) == Grade::Odd;
        CHECK((e.kind == BracketKind::Anticommutator) == both_odd);
        anti += e.kind == BracketKind::Anticommutator ? 1 : 0;
    }
    CHECK(anti == 10);  // four odd generators: 4 self pairs and 6 mixed pairs
    CHECK(su11_relation_table().entries.size() == 3);
}

TEST_CASE("single-mode su(1,1|1) relations hold on the interior") {
    const auto gens = super_gens(80);
    CHECK_NOTHROW(gens.validate());
    CHECK(gens.has_odd_part());
    const auto proj = interior_projector(gens.layout, 16);
    const auto rel = check_relations(gens, standard_relation_table(), proj, 1e-10);
    CHECK(rel.size() == 32);
    CHECK(all_pass(rel));
    CHECK(max_residual(rel) < 1e-12);
    CHECK(all_pass(check_hermiticity(gens, proj, 1e-10)));
}

TEST_CASE("bosonic-only layout carries the su(1,1) sector") {
    const auto gens = su11_single_mode(ModeLayout({Boson{30}}));
    CHECK_FALSE(gens.has_odd_part());
    CHECK(relation_table_for(gens).entries.size() == 3);
    CHECK(all_pass(check_relations(gens, su11_relation_table(), interior_projector(gens.layout, 4), 1e-10)));
    CHECK_THROWS_AS(check_relations(gens, standard_relation_table(), interior_projector(gens.layout, 4), 1e-10),
                    LayoutError);
}

TEST_CASE("single-mode Casimir is the Bargmann value -3/16") {
    // Both even and odd boson sectors have Bargmann index k = 1/4 or 3/4, so k(k - 1) = -3/16.
    const auto gens = su11_single_mode(ModeLayout({Boson{40}}));
    const auto c = su11_casimir(gens);
    const ProjectedView view(interior_projector(gens.layout, 4));
    const ComplexMatrix block = view.sandwich(c.matrix);
    const ComplexMatrix expected = -3.0 / 16.0 * ComplexMatrix::Identity(block.rows(), block.cols());
    CHECK((block - expected).norm() < 1e-12);
}

TEST_CASE("perturbed generators are detected") {
    auto gens = super_gens(40);
    const auto proj = interior_projector(gens.layout, 8);
    gens.Kplus = Complex(1.0 + 1e-3) * gens.Kplus;
    const auto rel = check_relations(gens, standard_relation_table(), proj, 1e-10);
    CHECK_FALSE(all_pass(rel));
    CHECK(max_residual(rel) > 1e-5);
    // [K0, K+] = K+ is invariant under rescaling K+, so that row still passes.
    CHECK(find_result(rel, RelationEntry{BracketKind::Commutator, Generator::K0, Generator::Kplus, {}}.label())
              .pass);

    auto bad_grade = super_gens(10);
    bad_grade.Vplus->grade = Grade::Even;
    CHECK_THROWS(bad_grade.validate());
}

TEST_CASE("hermiticity check flags a broken adjoint pair") {
    auto gens = super_gens(30);
    const auto proj = interior_projector(gens.layout, 4);
    gens.Wminus = Complex(0.0, 1.0) * *gens.Wminus;
    CHECK_FALSE(all_pass(check_hermiticity(gens, proj, 1e-10)));
}
