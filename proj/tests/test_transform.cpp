#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seclin/factorize.hpp"
#include "test_util.hpp"

using namespace seclin;
using namespace testutil;

namespace {
const FieldSpec R = FieldSpec::real();

bool same_column_span(const Matrix& a, const Matrix& b) {
    const std::size_t ra = rank(a);
    return ra == rank(b) && rank(hstack(a, b)) == ra;
}
} // namespace

TEST_CASE("securing the bundled example") {
    const Scheme s = ex1_scheme(R);
    const SecuredScheme ss = secure(s);
    CHECK(ss.randomness_count == 2);
    CHECK(rank(ss.randomness_coeffs) == 2);
    CHECK(same_column_span(ss.randomness_coeffs, ex1_randomness(R)));
    CHECK(matmul(s.decoding, ss.encoding_aug) == hstack(s.requests, Matrix(R, 4, 2)));
    CHECK(ss.warnings.empty());
    for (const RankCheck& c : check_randomness_rank(ss)) CHECK(c.ok);
}

TEST_CASE("systematic decoders get the closed-form randomness span") {
    const FieldSpec f7 = FieldSpec::gf(7);
    const Matrix parity = Matrix::from_ints(f7, {{1, 2}, {3, 4}, {5, 6}});
    const Scheme s = systematic_factorize(Matrix::from_ints(f7, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                                          parity);
    const SecuredScheme ss = secure(s);
    CHECK(same_column_span(ss.randomness_coeffs, systematic_randomness(parity)));
}

TEST_CASE("square decoders have no randomness capacity") {
    const Matrix i3 = Matrix::identity(R, 3);
    const SecuredScheme ss = secure(make_scheme(R, i3, i3, i3));
    CHECK(ss.randomness_count == 0);
    CHECK(ss.encoding_aug == i3);
    REQUIRE(ss.warnings.size() == 1);
    CHECK(ss.warnings[0].find("no randomness capacity") != std::string::npos);
}

TEST_CASE("securing refuses inadmissible decoders") {
    // user 1 observes three of four servers: reduced decoder is a single
    // column with rank <= 1 < K-1
    const FieldSpec f2 = FieldSpec::gf(2);
    const Matrix d = Matrix::from_ints(f2, {{1, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
    REQUIRE(rank(d) == 3);
    const Matrix e = Matrix::identity(f2, 4);
    const Scheme s = make_scheme(f2, matmul(d, e), d, e);
    CHECK_THROWS_WITH_AS((void)secure(s), doctest::Contains("insecure factorization: user 1"),
                         SecrecyError);
}

TEST_CASE("degenerate encoding rows downgrade to a warning") {
    const Matrix d = Matrix::from_ints(R, {{1, 1, 0}, {0, 1, 1}});
    const Matrix e = Matrix::from_ints(R, {{1, 2}, {2, 4}, {0, 1}}); // rows 1,2 proportional
    const Scheme s = make_scheme(R, matmul(d, e), d, e);
    const SecuredScheme ss = secure(s);
    REQUIRE(ss.warnings.size() == 1);
    CHECK(ss.warnings[0].find("user 1") != std::string::npos);
    for (const RankCheck& c : check_randomness_rank(ss)) CHECK(c.ok);
}

TEST_CASE("augmented tasks split messages from randomness") {
    const SecuredScheme ss = ex1_secured_reference(R);
    const auto tasks = augmented_tasks(ss);
    REQUIRE(tasks.size() == 6);
    CHECK(tasks[2].message_deps == IndexSet::of({2, 3, 4}));   // server 3
    CHECK(tasks[2].randomness_deps == IndexSet::of({0}));      // first random symbol
    CHECK(tasks[5].message_deps == IndexSet::of({0, 1, 2, 3, 4})); // server 6
    CHECK(tasks[5].randomness_deps == IndexSet::of({1}));
}

TEST_CASE("an all-zero augmented row has empty task supports") {
    const Matrix d = Matrix::from_ints(R, {{1, 0, 0}, {0, 1, 0}});
    const Matrix e = Matrix::from_ints(R, {{1, 1}, {0, 1}, {0, 0}});
    const Scheme s = make_scheme(R, matmul(d, e), d, e);
    const SecuredScheme ss = make_secured(s, Matrix(R, 3, 0));
    const auto tasks = augmented_tasks(ss);
    CHECK(tasks[2].message_deps.empty());
    CHECK(tasks[2].randomness_deps.empty());
}

TEST_CASE("securing twice spans the same randomness") {
    const Scheme s = ex1_scheme(R);
    const SecuredScheme once = secure(s);
    const SecuredScheme twice = secure(once.base);
    CHECK(same_column_span(once.randomness_coeffs, twice.randomness_coeffs));
    CHECK(once.randomness_coeffs == twice.randomness_coeffs); // deterministic basis
}

TEST_CASE("make_secured validates its inputs") {
    const Scheme s = ex1_scheme(R);
    CHECK_THROWS_AS((void)make_secured(s, Matrix::identity(R, 6)), StructuralError); // D*C != 0
    CHECK_THROWS_AS((void)make_secured(s, Matrix(R, 5, 1)), StructuralError);        // wrong rows
    CHECK_THROWS_AS((void)make_secured(s, Matrix(FieldSpec::gf(7), 6, 1)), StructuralError);
}

TEST_CASE("imported randomness may be deficient; the report says so") {
    // keep only one of the two null-space directions
    const Matrix full = ex1_randomness(R);
    Matrix partial(R, 6, 1);
    for (std::size_t i = 0; i < 6; ++i) partial.at(i, 0) = full.at(i, 0);
    const SecuredScheme ss = make_secured(ex1_scheme(R), partial);
    const SecrecyReport rep = full_report(ss);
    CHECK_FALSE(rep.all_ok());
    int deficient = 0;
    for (const UserSecrecy& u : rep.per_user) {
        if (u.randomness_status == RandomnessRankStatus::deficient) ++deficient;
    }
    CHECK(deficient >= 1);
    CHECK(rep.per_user[2].randomness_status == RandomnessRankStatus::ok); // w_H = 2 user
}

TEST_CASE("secured schemes round-trip through JSON") {
    const SecuredScheme ss = ex1_secured_reference(R);
    const SecuredScheme back = load_secured(secured_to_json(ss));
    CHECK(back.randomness_coeffs == ss.randomness_coeffs);
    CHECK(back.encoding_aug == ss.encoding_aug);
    CHECK(back.base.requests == ss.base.requests);

    // a plain scheme file loads as "no randomness"
    const SecuredScheme plain = load_secured(scheme_to_json(ss.base));
    CHECK(plain.randomness_count == 0);
}

TEST_CASE("costs are preserved and randomness ranks hold on random schemes") {
    const FieldSpec f7 = FieldSpec::gf(7);
    Rng rng(2024);
    const std::size_t dims[5][2] = {{4, 2}, {5, 3}, {4, 3}, {6, 4}, {5, 2}};
    int secured_count = 0;
    int attempts = 0;
    while (secured_count < 200 && attempts < 20000) {
        ++attempts;
        const auto& [n, k] = dims[rng.uniform_mod(5)];
        auto s = try_random_scheme(rng, f7, n, k, k + rng.uniform_mod(2));
        if (!s || !passes_reduced_rank(*s)) continue;
        const CostReport before = costs(*s);
        const SecuredScheme ss = secure(*s);
        const CostReport after = costs(ss.base);
        REQUIRE(before.comm_cost == after.comm_cost);
        REQUIRE(before.comp_cost == after.comp_cost);
        for (const RankCheck& c : check_randomness_rank(ss)) REQUIRE(c.ok);
        ++secured_count;
    }
    CHECK(secured_count == 200);
}
