#include "seclin/factorize.hpp"

#include "seclin/secrecy.hpp"

namespace seclin {

Scheme systematic_factorize(const Matrix& requests, const Matrix& parity,
                            const std::optional<Matrix>& encoding_tail) {
    const FieldSpec field = requests.field();
    if (parity.field() != field) throw StructuralError("field mismatch between F and P");
    const std::size_t users = requests.rows();
    const std::size_t messages = requests.cols();
    if (parity.rows() != users) throw StructuralError("P must have K rows");
    const std::size_t servers = users + parity.cols();

    Matrix decoding(field, users, servers);
    for (std::size_t i = 0; i < users; ++i) {
        decoding.at(i, i) = field.one();
        for (std::size_t j = 0; j < parity.cols(); ++j) {
            decoding.at(i, users + j) = parity.at(i, j);
        }
    }

    Matrix tail(field, parity.cols(), messages);
    if (encoding_tail) {
        if (encoding_tail->field() != field || encoding_tail->rows() != parity.cols() ||
            encoding_tail->cols() != messages) {
            throw StructuralError("encoding tail must be (N-K) x L over the scheme field");
        }
        tail = *encoding_tail;
    }

    // top = F - P * tail makes D * E = F regardless of the tail choice.
    Matrix top = requests;
    const Matrix mixed = matmul(parity, tail);
    for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = 0; j < messages; ++j) {
            top.at(i, j) = field.sub(top.at(i, j), mixed.at(i, j));
        }
    }
    return make_scheme(field, requests, std::move(decoding), vstack(top, tail));
}

Matrix systematic_randomness(const Matrix& parity) {
    const FieldSpec field = parity.field();
    const std::size_t users = parity.rows();
    const std::size_t extra = parity.cols();
    Matrix c(field, users + extra, extra);
    for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = 0; j < extra; ++j) c.at(i, j) = field.neg(parity.at(i, j));
    }
    for (std::size_t j = 0; j < extra; ++j) c.at(users + j, j) = field.one();
    return c;
}

CyclicCheck check_cyclic(const Matrix& decoding) {
    CyclicCheck out;
    const std::size_t rows = decoding.rows();
    const std::size_t cols = decoding.cols();
    out.is_circulant = rows > 0 && cols > 0;
    for (std::size_t i = 1; i < rows && out.is_circulant; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (decoding.at(i, (j + i) % cols) != decoding.at(0, j)) {
                out.is_circulant = false;
                break;
            }
        }
    }
    out.reduced_rank_ok = true;
    for (std::size_t r : reduced_decoder_ranks(decoding)) {
        out.reduced_rank_ok = out.reduced_rank_ok && r + 1 >= rows;
    }
    return out;
}

Scheme identity_scheme(const Matrix& requests, IdentityVariant variant) {
    const FieldSpec field = requests.field();
    const std::size_t users = requests.rows();
    if (variant == IdentityVariant::assigned_server) {
        return make_scheme(field, requests, Matrix::identity(field, users), requests);
    }
    if (rank(requests) < users) {
        throw StructuralError(
            "decentralized identity factorization needs a full-row-rank request matrix");
    }
    return make_scheme(field, requests, requests, Matrix::identity(field, requests.cols()));
}

Scheme to_systematic(const Scheme& s) {
    // Move the pivot columns of D to the front, clear them to an identity
    // block, then solve a fresh encoding matrix for the same requests.
    const Echelon ech = reduced_row_echelon(s.decoding);
    IndexSet pivots{std::vector<std::size_t>(ech.pivot_cols)};
    const Matrix block = select_cols(s.decoding, pivots);
    const Matrix reduced = matmul(invert(block), s.decoding);
    const Matrix tail_cols = delete_cols(reduced, pivots);
    return systematic_factorize(s.requests, tail_cols);
}

} // namespace seclin
