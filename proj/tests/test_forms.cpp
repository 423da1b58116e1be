#include <doctest.h>

#include <random>

#include "hopfstar/catalog.hpp"
#include "hopfstar/forms.hpp"
#include "support.hpp"

using namespace hopfstar;
using testsupport::num;
using testsupport::z;

namespace {

Matrix random_hermitian(const FieldContext& ctx, std::mt19937_64& rng, int n) {
    Matrix r = testsupport::random_matrix(ctx, rng, n, n, 0.3);
    return r + r.adjoint();
}

HermitianForm theorem2_form(int l, int r, int alpha = 1, int beta = 0) {
    const auto& ctx = FieldContext::get(l);
    return HermitianForm(theorem2_pattern(l, r, num(ctx, alpha), num(ctx, beta)));
}

Element random_element(const HopfPresentation& h, std::mt19937_64& rng, int terms = 4) {
    std::uniform_int_distribution<int> pick(0, h.dim() - 1);
    ElementBuilder b(h.context());
    for (int t = 0; t < terms; ++t) {
        b.add(pick(rng), Scalar(h.context(), testsupport::random_rational(rng, 4)));
    }
    return std::move(b).finish();
}

Subspace random_subspace(const FieldContext& ctx, std::mt19937_64& rng, int ambient) {
    std::uniform_int_distribution<int> k(0, ambient);
    const int rows = k(rng);
    return Subspace::row_space(testsupport::random_matrix(ctx, rng, rows, ambient, 0.5));
}

}  // namespace

TEST_CASE("form space dimensions") {
    for (int l : {3, 5}) {
        for (int r = 1; r < l; ++r) {
            auto f = invariant_form_space(module_P(l, r).module);
            CHECK(f.dim_real == 2);
            CHECK(f.dim_rational == 2 * FieldContext::get(l).real_subfield_degree());
            CHECK(f.module == "P_" + std::to_string(r));
            for (const auto& b : f.basis) {
                CHECK(HermitianForm(b).is_hermitian());
                CHECK(is_invariant(module_P(l, r).module, b));
            }
        }
    }
    // n=4, d=2, l=2, i=0: m s = 2s = 0 (mod 4) has s=0 < 2, so one form;
    // i=1 needs 2s = 2, s=1.  n=6, d=3, l=2, i=1: 2s = 2 (mod 6) gives s=1.
    // n=6, d=2, l=2, i=1: 3s = 2 (mod 6) has no solution.
    CHECK(invariant_form_space(module_M(6, 2, 2, 1)).dim_real == 0);
    CHECK(invariant_form_space(module_M(6, 2, 2, 0)).dim_real == 1);
    for (int n : {1, 2, 3, 6}) {
        auto f = invariant_form_space(character_module(n, {0}));
        CHECK(f.dim_real == 1);
        CHECK(f.dim_rational == FieldContext::get(n).real_subfield_degree());
    }
    // Two copies of one character: Hermitian 2x2 matrices, dimension 4 over E+.
    CHECK(invariant_form_space(character_module(3, {1, 1})).dim_real == 4);
}

TEST_CASE("P_r form pattern") {
    CHECK(matches_theorem2_pattern(invariant_form_space(module_P(3, 1).module), 1, 3));
    CHECK(matches_theorem2_pattern(invariant_form_space(module_P(5, 3).module), 3, 5));
    auto f = invariant_form_space(module_P(5, 3).module);
    FormSpace tampered = f;
    tampered.basis[0](0, 0) += num(FieldContext::get(5), 1);
    CHECK_FALSE(matches_theorem2_pattern(tampered, 3, 5));
    CHECK_FALSE(matches_theorem2_pattern(f, 2, 5));
    FormSpace one = f;
    one.basis.pop_back();
    one.dim_real = 1;
    CHECK_FALSE(matches_theorem2_pattern(one, 3, 5));
}

TEST_CASE("M(l,i) form pattern") {
    for (int i : {1, 3}) {
        auto f = invariant_form_space(module_M(4, 2, 2, i));
        CHECK(f.dim_real == 1);
        CHECK(matches_theorem3_pattern(f, 4, 2, 2, i));
        CHECK(is_nondegenerate(HermitianForm(f.basis[0])));
    }
    for (int i = 0; i < 2; ++i) {
        auto f = invariant_form_space(module_M(2, 2, 2, i));
        CHECK(matches_theorem3_pattern(f, 2, 2, 2, i));
        for (const auto& b : f.basis) {
            CHECK_FALSE(is_nondegenerate(HermitianForm(b)));
        }
    }
    // n=6, d=3, l=3, i=0: only s = 0, a degenerate form with a zero row at v_2.
    auto f = invariant_form_space(module_M(6, 3, 3, 0));
    CHECK(theorem3_sum(6, 3, 3, 0) == 0);
    REQUIRE(f.dim_real == 1);
    CHECK(matches_theorem3_pattern(f, 6, 3, 3, 0));
    CHECK(rank(f.basis[0]) == 1);
    CHECK(f.basis[0].row_vector(2) == zero_vector(FieldContext::get(6), 3));
    CHECK_FALSE(matches_theorem3_pattern(f, 6, 3, 3, 1));
    CHECK_FALSE(theorem3_pattern(6, 2, 2, 1).has_value());
}

TEST_CASE("non-degeneracy") {
    const auto& ctx = FieldContext::get(5);
    CHECK(is_nondegenerate(HermitianForm(Matrix::identity(ctx, 3))));
    CHECK_FALSE(is_nondegenerate(HermitianForm(Matrix(ctx, 3, 3))));
    for (int r = 1; r < 5; ++r) {
        CHECK(is_nondegenerate(theorem2_form(5, r)));
        CHECK_FALSE(is_nondegenerate(theorem2_form(5, r, 0, 1)));
    }
    CHECK_THROWS_AS(HermitianForm(Matrix(ctx, 2, 3)), std::invalid_argument);
}

TEST_CASE("polar examples") {
    const auto& ctx = FieldContext::get(5);
    auto f = theorem2_form(5, 2);
    CHECK(polar(f, Subspace::zero(ctx, 10)) == Subspace::full(ctx, 10));
    CHECK(polar(f, Subspace::full(ctx, 10)) == Subspace::zero(ctx, 10));
    for (int l : {3, 5, 7}) {
        for (int r = 1; r < l; ++r) {
            auto p = module_P(l, r);
            CHECK(polar(theorem2_form(l, r), p.V) == p.W);
            CHECK(polar(theorem2_form(l, r, 2, 3), p.V) == p.W);
        }
    }
}

TEST_CASE("induced forms on quotients") {
    for (int l : {3, 5}) {
        for (int r = 1; r < l; ++r) {
            auto p = module_P(l, r);
            auto q = induced_form_on_quotient(theorem2_form(l, r), p.W, p.V);
            CHECK(q.dim() == 2 * (l - r));
            CHECK(is_nondegenerate(q));
            CHECK(q.is_hermitian());
            CHECK(induced_form_on_quotient(theorem2_form(l, r), p.V, p.V).dim() == 0);
        }
    }
    // M(4, 3) in H_{8,4}: the form induced on v_1..v_3 / v_3 lives on a
    // module isomorphic to M(2, 1) and is invariant there.
    auto m = module_M(8, 4, 4, 3);
    const auto& ctx = m.context();
    auto f = HermitianForm(*theorem3_pattern(8, 4, 4, 3));
    auto h1 = Subspace::span(ctx, 4, {unit_vector(ctx, 4, 3)});
    auto h2 = polar(f, h1);
    CHECK(h2.dim() == 3);
    auto g = induced_form_on_quotient(f, h2, h1);
    std::vector<Vector> coords;
    for (const auto& v : h1.vectors()) {
        coords.push_back(h2.coordinates(v));
    }
    auto quot = quotient_rep(restrict_to(m, h2), Subspace::span(ctx, 3, coords)).module;
    CHECK(is_isomorphic(quot, module_M(8, 4, 2, 1)).has_value());
    CHECK(is_invariant(quot, g.gram));
    CHECK(is_nondegenerate(g));

    CHECK_THROWS_AS(induced_form_on_quotient(f, h1, h2), std::invalid_argument);
    CHECK_THROWS_AS(induced_form_on_quotient(f, Subspace::full(ctx, 4), h1), std::invalid_argument);
}

TEST_CASE("signature") {
    const auto& ctx = FieldContext::get(7);
    auto s = signature(HermitianForm(Matrix::identity(ctx, 4)));
    CHECK(s.positive == 4);
    CHECK(s.negative == 0);
    CHECK(s.zero == 0);
    for (int l : {3, 5, 7}) {
        for (int r = 1; r < l; ++r) {
            for (int k = 1; k < l; ++k) {
                auto sig = signature(theorem2_form(l, r), k);
                CHECK(sig.positive == l);
                CHECK(sig.negative == l);
                CHECK(sig.zero == 0);
            }
        }
    }
    auto degenerate = HermitianForm(*theorem3_pattern(6, 3, 3, 0));
    CHECK(signature(degenerate).zero == 2);
    auto deg2 = HermitianForm(*theorem3_pattern(8, 4, 4, 2));  // s = 2
    CHECK(theorem3_sum(8, 4, 4, 2) == 2);
    CHECK(signature(deg2, 3).zero == 1);

    CHECK_THROWS_AS(signature(theorem2_form(7, 2), 7), SignatureError);
    Matrix skew(ctx, 2, 2);
    skew(0, 1) = num(ctx, 1);
    CHECK_THROWS_AS(signature(HermitianForm(skew)), SignatureError);
    Matrix tiny = Matrix::identity(ctx, 2);
    tiny(1, 1) = num(ctx, 1, 1000000000000LL);
    CHECK_THROWS_AS(signature(HermitianForm(tiny)), SignatureError);
    CHECK(signature(HermitianForm(Matrix(ctx, 3, 3))).zero == 3);
}

TEST_CASE("invariance formulations agree") {
    std::mt19937_64 rng(41);
    SUBCASE("P_r, l = 3") {
        for (int r = 1; r < 3; ++r) {
            auto m = module_P(3, r).module;
            auto inv = verify_invariance_equivalences(m, theorem2_form(3, r, 1, 1));
            CHECK(inv.condition_i);
            CHECK(inv.condition_ii);
            CHECK(inv.condition_iii);
            CHECK(inv.agree());
            auto bad = verify_invariance_equivalences(m, HermitianForm(random_hermitian(m.context(), rng, 6)));
            CHECK_FALSE(bad.condition_iii);
            CHECK(bad.agree());
            CHECK(bad.first_failure_i.has_value());
            auto zero = verify_invariance_equivalences(m, HermitianForm(Matrix(m.context(), 6, 6)));
            CHECK(zero.condition_i);
            CHECK(zero.agree());
        }
    }
    SUBCASE("Taft and cyclic") {
        auto m = module_M(4, 2, 2, 1);
        auto good = verify_invariance_equivalences(m, HermitianForm(*theorem3_pattern(4, 2, 2, 1)));
        CHECK(good.condition_i);
        CHECK(good.agree());
        auto bad = verify_invariance_equivalences(m, HermitianForm(Matrix::identity(m.context(), 2)));
        CHECK_FALSE(bad.condition_ii);
        CHECK(bad.agree());
        auto c = character_module(6, {1, 2, 2});
        CHECK(verify_invariance_equivalences(c, HermitianForm(Matrix::identity(c.context(), 3))).condition_i);
    }
}

TEST_CASE("solver soundness on random algebra elements") {
    std::mt19937_64 rng(42);
    std::vector<ModuleRep> mods{module_P(3, 1).module, module_P(3, 2).module, module_P(5, 2).module,
                                module_M(4, 2, 2, 1), module_M(6, 3, 3, 2), character_module(3, {1, 1, 2})};
    int checked = 0;
    for (const auto& m : mods) {
        auto f = invariant_form_space(m);
        for (int t = 0; t < 50; ++t) {
            const Element h = random_element(m.algebra(), rng);
            for (const auto& b : f.basis) {
                CHECK(satisfies_adjoint(m, b, h));
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("generator conditions imply the condition on products") {
    std::mt19937_64 rng(43);
    std::vector<std::pair<ModuleRep, Matrix>> cases{
        {module_P(3, 1).module, theorem2_pattern(3, 1, num(FieldContext::get(3), 2), num(FieldContext::get(3), -1))},
        {module_P(5, 3).module, theorem2_pattern(5, 3, num(FieldContext::get(5), 1), num(FieldContext::get(5), 1))},
        {module_M(8, 4, 4, 3), *theorem3_pattern(8, 4, 4, 3)},
    };
    int checked = 0;
    for (const auto& [m, g] : cases) {
        REQUIRE(is_invariant(m, g));
        const auto& alg = m.algebra();
        std::uniform_int_distribution<int> gen(0, alg.generator_count() - 1);
        std::uniform_int_distribution<int> len(2, 6);
        for (int t = 0; t < 40; ++t) {
            Element h = alg.unit();
            const int k = len(rng);
            for (int i = 0; i < k; ++i) {
                h = alg.multiply(h, alg.basis_element(alg.generator_basis(gen(rng))));
            }
            CHECK(satisfies_adjoint(m, g, h));
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("double polar and dimension count") {
    std::mt19937_64 rng(44);
    std::vector<HermitianForm> forms{theorem2_form(3, 1), theorem2_form(5, 2, 1, 1), theorem2_form(7, 3, 3, -2),
                                     HermitianForm(*theorem3_pattern(8, 4, 4, 3))};
    int checked = 0;
    for (const auto& f : forms) {
        REQUIRE(is_nondegenerate(f));
        const auto& ctx = f.gram.context();
        for (int t = 0; t < 30; ++t) {
            Subspace s = random_subspace(ctx, rng, f.dim());
            Subspace p = polar(f, s);
            CHECK(polar(f, p) == s);
            CHECK(s.dim() + p.dim() == f.dim());
            Subspace bigger = subspace_sum(s, random_subspace(ctx, rng, f.dim()));
            CHECK(p.contains(polar(f, bigger)));
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("form space json") {
    auto f = invariant_form_space(module_M(4, 2, 2, 1));
    auto j = to_json(f);
    CHECK(j["module"] == "M(2,1)");
    CHECK(j["dim_real"] == 1);
    CHECK(j["basis"].size() == 1);
}
