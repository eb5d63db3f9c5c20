#include "seclin/transform.hpp"

#include <fstream>

#include "seclin/secrecy.hpp"

namespace seclin {

SecuredScheme make_secured(Scheme s, Matrix randomness_coeffs,
                           std::vector<std::string> warnings) {
    if (randomness_coeffs.field() != s.field) {
        throw StructuralError("field mismatch between scheme and randomness matrix");
    }
    if (randomness_coeffs.rows() != s.servers) {
        throw StructuralError("randomness matrix must have one row per server");
    }
    if (!matmul(s.decoding, randomness_coeffs).is_zero()) {
        throw StructuralError("randomness matrix columns must lie in Null(D)");
    }
    // D has rank K, so no valid C can exceed N - K independent columns.
    if (rank(randomness_coeffs) > s.servers - s.users) {
        throw Error("internal inconsistency: rank(C) > N - K despite D*C = 0");
    }
    SecuredScheme ss;
    ss.randomness_count = randomness_coeffs.cols();
    ss.encoding_aug = hstack(s.encoding, randomness_coeffs);
    ss.randomness_coeffs = std::move(randomness_coeffs);
    ss.base = std::move(s);
    ss.warnings = std::move(warnings);
    return ss;
}

SecuredScheme unsecured(Scheme s) {
    Matrix empty(s.field, s.servers, 0);
    return make_secured(std::move(s), std::move(empty));
}

SecuredScheme secure(const Scheme& s) {
    const auto reduced = check_reduced_rank(s);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (!reduced[k].ok) {
            throw SecrecyError("insecure factorization: user " + std::to_string(k + 1) +
                               " reduced-rank = " + std::to_string(reduced[k].rank) + " < " +
                               std::to_string(s.users - 1));
        }
    }
    std::vector<std::string> warnings;
    const auto nondeg = check_nondegeneracy(s);
    for (std::size_t k = 0; k < nondeg.size(); ++k) {
        if (!nondeg[k]) {
            warnings.push_back("user " + std::to_string(k + 1) +
                               ": observed encoding rows are dependent; rank condition met but "
                               "the non-degeneracy assumption is violated");
        }
    }
    if (s.servers == s.users) {
        warnings.push_back("no randomness capacity: N = K leaves an empty null space");
        SecuredScheme ss = make_secured(s, Matrix(s.field, s.servers, 0), std::move(warnings));
        return ss;
    }

    Matrix basis = null_space_basis(s.decoding);
    if (rank(basis) != s.servers - s.users) {
        throw Error("internal inconsistency: null-space basis is rank-deficient");
    }
    SecuredScheme ss = make_secured(s, std::move(basis), std::move(warnings));

    // The appended basis must make every user's visible randomness span a
    // subspace of dimension (access count - 1); anything else is a bug.
    for (const RankCheck& c : check_randomness_rank(ss)) {
        if (!c.ok) throw Error("internal inconsistency: securing failed a randomness rank check");
    }
    return ss;
}

std::vector<ServerTask> augmented_tasks(const SecuredScheme& ss) {
    std::vector<ServerTask> tasks;
    const std::size_t messages = ss.base.messages;
    tasks.reserve(ss.base.servers);
    for (std::size_t n = 0; n < ss.base.servers; ++n) {
        std::vector<std::size_t> msg, rnd;
        for (std::size_t j : ss.encoding_aug.row_support(n)) {
            if (j < messages) {
                msg.push_back(j);
            } else {
                rnd.push_back(j - messages);
            }
        }
        tasks.push_back(ServerTask{IndexSet(std::move(msg)), IndexSet(std::move(rnd))});
    }
    return tasks;
}

SecuredScheme reduce_secured_mod(const SecuredScheme& ss, std::uint64_t p) {
    if (ss.base.field.is_prime_field()) {
        if (ss.base.field.modulus() == p) return ss;
        throw StructuralError("scheme is already over " + ss.base.field.name());
    }
    Scheme base = reduce_scheme_mod(ss.base, p);
    const FieldSpec gf = base.field;
    Matrix c(gf, ss.randomness_coeffs.rows(), ss.randomness_coeffs.cols());
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            c.at(i, j) = gf.from_rational(ss.randomness_coeffs.at(i, j).rational_value());
        }
    }
    return make_secured(std::move(base), std::move(c), ss.warnings);
}

SecuredScheme load_secured(const nlohmann::json& doc) {
    Scheme s = load_scheme(doc);
    if (!doc.contains("C")) return unsecured(std::move(s));
    Matrix c = matrix_from_json(s.field, doc.at("C"), "C");
    return make_secured(std::move(s), std::move(c));
}

SecuredScheme load_secured_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open scheme file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError("invalid JSON in " + path + ": " + e.what());
    }
    return load_secured(doc);
}

nlohmann::ordered_json secured_to_json(const SecuredScheme& ss) {
    nlohmann::ordered_json doc = scheme_to_json(ss.base);
    doc["C"] = matrix_to_json(ss.randomness_coeffs);
    return doc;
}

} // namespace seclin
