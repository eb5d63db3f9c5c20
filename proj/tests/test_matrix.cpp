#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace seclin;
using testutil::ex1_decoding;
using testutil::ex1_encoding;
using testutil::ex1_randomness;
using testutil::ex1_requests;
using testutil::random_matrix;

namespace {
const FieldSpec R = FieldSpec::real();
}

TEST_CASE("index sets validate and complement") {
    CHECK_THROWS_AS((void)IndexSet::of({2, 1}), StructuralError);
    CHECK_THROWS_AS((void)IndexSet::of({1, 1}), StructuralError);
    const IndexSet s = IndexSet::of({1, 3});
    CHECK(s.complement(5) == IndexSet::of({0, 2, 4}));
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK_THROWS_AS((void)s.complement(2), StructuralError);
}

TEST_CASE("rank of the example decoder and its reductions") {
    const Matrix d = ex1_decoding(R);
    CHECK(rank(d) == 4);
    CHECK(rank(Matrix(R, 3, 3)) == 0);
    const Matrix d_red_1 = delete_cols(d, IndexSet::of({0, 1, 2}));
    CHECK(d_red_1 == Matrix::from_ints(R, {{0, 0, 0}, {1, 0, 0}, {0, 3, 0}, {1, 1, 1}}));
    CHECK(rank(d_red_1) == 3);
}

TEST_CASE("null space of the example decoder spans the reference basis") {
    const Matrix d = ex1_decoding(R);
    const Matrix basis = null_space_basis(d);
    REQUIRE(basis.rows() == 6);
    REQUIRE(basis.cols() == 2);
    CHECK(matmul(d, basis).is_zero());
    const Matrix reference =
        Matrix::from_ints(R, {{-7, -1}, {8, 2}, {-6, 0}, {-2, -2}, {2, 0}, {0, 2}});
    // Span equality via mutual rank, not entrywise comparison.
    CHECK(rank(basis) == 2);
    CHECK(rank(reference) == 2);
    CHECK(rank(hstack(basis, reference)) == 2);
}

TEST_CASE("null space edge cases") {
    CHECK(null_space_basis(Matrix::identity(R, 4)).cols() == 0);
    const FieldSpec f2 = FieldSpec::gf(2);
    const Matrix m = Matrix::from_ints(f2, {{1, 1}});
    const Matrix b = null_space_basis(m);
    REQUIRE(b.cols() == 1);
    CHECK(b.at(0, 0) == f2.one());
    CHECK(b.at(1, 0) == f2.one());
}

TEST_CASE("row and column selection") {
    const Matrix c = ex1_randomness(R);
    CHECK(select_rows(c, IndexSet::of({2, 4})) == Matrix::from_ints(R, {{-6, 0}, {2, 0}}));
    const Matrix d = ex1_decoding(R);
    CHECK(select_cols(d, IndexSet::full(d.cols())) == d);
    CHECK_THROWS_AS((void)select_rows(d, IndexSet::of({9})), StructuralError);
    CHECK_THROWS_AS((void)select_cols(d, IndexSet::of({6})), StructuralError);
}

TEST_CASE("matrix products reproduce the example factorization") {
    const Matrix f = ex1_requests(R);
    const Matrix d = ex1_decoding(R);
    const Matrix e = ex1_encoding(R);
    CHECK(matmul(d, e) == f);
    const Matrix e_aug = hstack(e, ex1_randomness(R));
    const Matrix expect = hstack(f, Matrix(R, 4, 2)); // [F | 0]
    CHECK(matmul(d, e_aug) == expect);
    CHECK(matmul(Matrix::identity(R, 4), d) == d);
    CHECK_THROWS_AS((void)matmul(d, d), StructuralError);
}

TEST_CASE("rank-nullity and product rank bounds on random matrices") {
    const FieldSpec f7 = FieldSpec::gf(7);
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t rows = 1 + rng.uniform_mod(5);
        const std::size_t cols = 1 + rng.uniform_mod(5);
        const Matrix m = random_matrix(rng, f7, rows, cols);
        const Matrix basis = null_space_basis(m);
        REQUIRE(matmul(m, basis).is_zero());
        REQUIRE(rank(basis) == cols - rank(m));
        const Matrix other = random_matrix(rng, f7, cols, 1 + rng.uniform_mod(5));
        REQUIRE(rank(matmul(m, other)) <= std::min(rank(m), rank(other)));
    }
}

TEST_CASE("inverse on random nonsingular matrices") {
    const FieldSpec f7 = FieldSpec::gf(7);
    Rng rng(23);
    int done = 0;
    while (done < 20) {
        const Matrix m = random_matrix(rng, f7, 4, 4);
        if (rank(m) < 4) continue;
        CHECK(matmul(m, invert(m)) == Matrix::identity(f7, 4));
        ++done;
    }
    CHECK_THROWS_AS((void)invert(Matrix(R, 2, 2)), StructuralError);
    CHECK_THROWS_AS((void)invert(Matrix(R, 2, 3)), StructuralError);
}

TEST_CASE("eigenvalues of the example Gram matrices") {
    // X1 X1^T and Y1 Y1^T for the first user of the bundled example.
    const Matrix xg = Matrix::from_ints(R, {{14, 7}, {7, 11}});
    const auto xe = sym_eigs(xg);
    REQUIRE(xe.size() == 2);
    // Independent oracle: closed-form 2x2 eigenvalues from trace/determinant.
    const double tr = 25, det = 14 * 11 - 49;
    const double lo = (tr - std::sqrt(tr * tr - 4 * det)) / 2;
    const double hi = (tr + std::sqrt(tr * tr - 4 * det)) / 2;
    CHECK(xe[0] == doctest::Approx(lo).epsilon(1e-12));
    CHECK(xe[1] == doctest::Approx(hi).epsilon(1e-12));
    CHECK(xe[0] == doctest::Approx(5.34).epsilon(0.01));
    CHECK(xe[1] == doctest::Approx(19.66).epsilon(0.01));

    const Matrix yg = Matrix::from_ints(R, {{68, -48}, {-48, 36}});
    const auto ye = sym_eigs(yg);
    CHECK(ye[0] == doctest::Approx(1.4).epsilon(0.01));

    const auto id = sym_eigs(Matrix::identity(R, 3));
    for (double v : id) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("eigensolver input validation") {
    CHECK_THROWS_AS((void)sym_eigs(Matrix(R, 2, 3)), StructuralError);
    CHECK_THROWS_AS((void)sym_eigs(Matrix::from_ints(R, {{1, 2}, {3, 4}})), StructuralError);
    CHECK_THROWS_AS((void)sym_eigs(Matrix::identity(FieldSpec::gf(7), 2)), StructuralError);
    CHECK_THROWS_AS((void)sym_eigs(Matrix::identity(R, 2), 0.0), StructuralError);
}

TEST_CASE("eigenvalues of random Gram matrices are nonnegative and sum to the trace") {
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng.uniform_mod(5);
        const std::size_t m = 1 + rng.uniform_mod(5);
        std::vector<double> b(n * m);
        for (double& v : b) v = rng.gaussian();
        std::vector<double> g(n * n, 0.0);
        double trace = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < m; ++k) s += b[i * m + k] * b[j * m + k];
                g[i * n + j] = s;
            }
            trace += g[i * n + i];
        }
        const auto eigs = jacobi_eigenvalues(g, n, 1e-10);
        double sum = 0;
        for (double v : eigs) {
            REQUIRE(v >= -1e-10);
            sum += v;
        }
        REQUIRE(sum == doctest::Approx(trace).epsilon(1e-8));
    }
}
