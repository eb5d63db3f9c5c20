#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "seclin/field.hpp"

namespace seclin {

/// Strictly increasing, duplicate-free list of zero-based indices.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::size_t> idx);
    static IndexSet of(std::initializer_list<std::size_t> idx);
    static IndexSet full(std::size_t n);

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    std::size_t operator[](std::size_t i) const { return idx_[i]; }
    bool contains(std::size_t v) const;
    IndexSet complement(std::size_t universe) const;
    const std::vector<std::size_t>& values() const { return idx_; }

    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }
    bool operator==(const IndexSet& o) const = default;

private:
    std::vector<std::size_t> idx_;
};

/// Dense row-major matrix with exact entries over one FieldSpec.
class Matrix {
public:
    Matrix() : Matrix(FieldSpec::real(), 0, 0) {}
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
    static Matrix identity(FieldSpec field, std::size_t n);
    /// Builds a matrix from integer literals, reduced into the field.
    static Matrix from_ints(FieldSpec field,
                            const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    FieldElement& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    /// Support (nonzero positions) of a row / column.
    IndexSet row_support(std::size_t r) const;
    IndexSet col_support(std::size_t c) const;

private:
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by exact Gaussian elimination
/// (leftmost-pivot order, so the result is deterministic).
Echelon reduced_row_echelon(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of the right null space, one column per free column of the RREF,
/// ordered by free-column index. Returns a cols x (cols - rank) matrix
/// with m * basis = 0 exactly.
Matrix null_space_basis(const Matrix& m);

/// Inverse of a square matrix; throws StructuralError if singular.
Matrix invert(const Matrix& m);

Matrix select_rows(const Matrix& m, const IndexSet& idx);
Matrix select_cols(const Matrix& m, const IndexSet& idx);
Matrix delete_cols(const Matrix& m, const IndexSet& idx);

/// Eigenvalues of a symmetric real-field matrix, ascending, by cyclic
/// Jacobi rotations iterated until the off-diagonal Frobenius norm drops
/// below tol. Entries are converted rational -> double first.
std::vector<double> sym_eigs(const Matrix& m, double tol = 1e-10);

/// Same solver on a raw row-major double grid.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tol);

} // namespace seclin
