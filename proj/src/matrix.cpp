#include "seclin/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace seclin {

IndexSet::IndexSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) {
    for (std::size_t i = 1; i < idx_.size(); ++i) {
        if (idx_[i - 1] >= idx_[i]) {
            throw StructuralError("index set must be strictly increasing");
        }
    }
}

IndexSet IndexSet::of(std::initializer_list<std::size_t> idx) {
    return IndexSet(std::vector<std::size_t>(idx));
}

IndexSet IndexSet::full(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t v) const {
    return std::binary_search(idx_.begin(), idx_.end(), v);
}

IndexSet IndexSet::complement(std::size_t universe) const {
    std::vector<std::size_t> out;
    out.reserve(universe - std::min(universe, idx_.size()));
    std::size_t next = 0;
    for (std::size_t i = 0; i < universe; ++i) {
        if (next < idx_.size() && idx_[next] == i) {
            ++next;
        } else {
            out.push_back(i);
        }
    }
    if (next < idx_.size()) throw StructuralError("index set exceeds its universe");
    return IndexSet(std::move(out));
}

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

Matrix Matrix::from_ints(FieldSpec field, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw StructuralError("ragged row in matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = field.from_int(rows[i][j]);
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& e : a_) {
        if (!field_.is_zero(e)) return false;
    }
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

IndexSet Matrix::row_support(std::size_t r) const {
    std::vector<std::size_t> v;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!field_.is_zero(at(r, j))) v.push_back(j);
    }
    return IndexSet(std::move(v));
}

IndexSet Matrix::col_support(std::size_t c) const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!field_.is_zero(at(i, c))) v.push_back(i);
    }
    return IndexSet(std::move(v));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw StructuralError("field mismatch in matrix product");
    if (a.cols() != b.rows()) throw StructuralError("dimension mismatch in matrix product");
    const FieldSpec& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const FieldElement& aik = a.at(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
            }
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(j, i) = m.at(i, j);
    }
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field() || a.rows() != b.rows()) {
        throw StructuralError("incompatible operands in hstack");
    }
    Matrix out(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field() || a.cols() != b.cols()) {
        throw StructuralError("incompatible operands in vstack");
    }
    Matrix out(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    }
    return out;
}

Echelon reduced_row_echelon(const Matrix& m) {
    const FieldSpec& f = m.field();
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < r.rows() && f.is_zero(r.at(sel, col))) ++sel;
        if (sel == r.rows()) continue;
        if (sel != pivot_row) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pivot_row, j));
        }
        const FieldElement scale = f.inv(r.at(pivot_row, col));
        for (std::size_t j = col; j < r.cols(); ++j) {
            r.at(pivot_row, j) = f.mul(scale, r.at(pivot_row, j));
        }
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == pivot_row || f.is_zero(r.at(i, col))) continue;
            const FieldElement factor = r.at(i, col);
            for (std::size_t j = col; j < r.cols(); ++j) {
                r.at(i, j) = f.sub(r.at(i, j), f.mul(factor, r.at(pivot_row, j)));
            }
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return Echelon{std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).pivot_cols.size(); }

Matrix null_space_basis(const Matrix& m) {
    const FieldSpec& f = m.field();
    const Echelon ech = reduced_row_echelon(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

    Matrix basis(f, n, n - ech.pivot_cols.size());
    std::size_t out_col = 0;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(free_col, out_col) = f.one();
        for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
            basis.at(ech.pivot_cols[i], out_col) = f.neg(ech.reduced.at(i, free_col));
        }
        ++out_col;
    }
    return basis;
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw StructuralError("cannot invert a non-square matrix");
    const Echelon ech = reduced_row_echelon(hstack(m, Matrix::identity(m.field(), m.rows())));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i >= ech.pivot_cols.size() || ech.pivot_cols[i] != i) {
            throw StructuralError("cannot invert a singular matrix");
        }
    }
    std::vector<std::size_t> right(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) right[j] = m.cols() + j;
    return select_cols(ech.reduced, IndexSet(std::move(right)));
}

namespace {

void check_row_bounds(const Matrix& m, const IndexSet& idx) {
    if (!idx.empty() && idx.values().back() >= m.rows()) {
        throw StructuralError("row index out of range");
    }
}

void check_col_bounds(const Matrix& m, const IndexSet& idx) {
    if (!idx.empty() && idx.values().back() >= m.cols()) {
        throw StructuralError("column index out of range");
    }
}

} // namespace

Matrix select_rows(const Matrix& m, const IndexSet& idx) {
    check_row_bounds(m, idx);
    Matrix out(m.field(), idx.size(), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(idx[i], j);
    }
    return out;
}

Matrix select_cols(const Matrix& m, const IndexSet& idx) {
    check_col_bounds(m, idx);
    Matrix out(m.field(), m.rows(), idx.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, j) = m.at(i, idx[j]);
    }
    return out;
}

Matrix delete_cols(const Matrix& m, const IndexSet& idx) {
    check_col_bounds(m, idx);
    return select_cols(m, idx.complement(m.cols()));
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tol) {
    if (tol <= 0) throw StructuralError("eigensolver tolerance must be positive");
    auto off_norm = [&] {
        double s = 0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) s += 2 * a[p * n + q] * a[p * n + q];
        }
        return std::sqrt(s);
    };
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() >= tol; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                const double tau = s / (1 + c);
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0;
                a[q * n + p] = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r * n + p];
                    const double arq = a[r * n + q];
                    a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
                    a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    if (n > 0 && off_norm() >= tol) {
        throw Error("Jacobi eigensolver did not converge");
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> sym_eigs(const Matrix& m, double tol) {
    if (m.field().is_prime_field()) {
        throw StructuralError("eigenvalues are defined for real-field matrices only");
    }
    if (m.rows() != m.cols()) throw StructuralError("eigensolver needs a square matrix");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            if (m.at(i, j) != m.at(j, i)) {
                throw StructuralError("eigensolver needs a symmetric matrix");
            }
        }
    }
    std::vector<double> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m.field().to_double(m.at(i, j));
    }
    return jacobi_eigenvalues(std::move(a), m.rows(), tol);
}

} // namespace seclin
