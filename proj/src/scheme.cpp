#include "seclin/scheme.hpp"

#include <algorithm>
#include <fstream>

namespace seclin {

Scheme make_scheme(FieldSpec field, Matrix requests, Matrix decoding, Matrix encoding) {
    const std::size_t users = requests.rows();
    const std::size_t messages = requests.cols();
    const std::size_t servers = decoding.cols();
    if (decoding.rows() != users || encoding.rows() != servers || encoding.cols() != messages) {
        throw StructuralError("dimension violation: F is " + std::to_string(users) + "x" +
                              std::to_string(messages) + " but D is " +
                              std::to_string(decoding.rows()) + "x" + std::to_string(servers) +
                              " and E is " + std::to_string(encoding.rows()) + "x" +
                              std::to_string(encoding.cols()));
    }
    if (requests.field() != field || decoding.field() != field || encoding.field() != field) {
        throw StructuralError("field mismatch between scheme matrices");
    }
    if (servers < users || messages < users) {
        throw StructuralError("dimension violation: need N >= K and L >= K");
    }
    if (matmul(decoding, encoding) != requests) {
        throw StructuralError("inconsistent factorization: D*E differs from F");
    }
    if (rank(decoding) != users) {
        throw StructuralError("rank-deficient decoder: rank(D) < K");
    }
    return Scheme{field, servers, users, messages,
                  std::move(requests), std::move(decoding), std::move(encoding)};
}

Matrix matrix_from_json(const FieldSpec& field, const nlohmann::json& value,
                        const std::string& what) {
    if (!value.is_array() || value.empty() || !value.front().is_array()) {
        throw StructuralError("matrix " + what + " must be a non-empty array of rows");
    }
    const std::size_t rows = value.size();
    const std::size_t cols = value.front().size();
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = value.at(i);
        if (!row.is_array() || row.size() != cols) {
            throw StructuralError("matrix " + what + " has ragged rows");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& e = row.at(j);
            if (e.is_number_integer()) {
                m.at(i, j) = field.from_int(e.get<long long>());
            } else if (e.is_string()) {
                m.at(i, j) = field.parse_entry(e.get<std::string>());
            } else {
                throw StructuralError("matrix " + what +
                                      " entries must be integers or \"a/b\" strings");
            }
        }
    }
    return m;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const FieldElement& e = m.at(i, j);
            if (m.field().is_prime_field()) {
                row.push_back(e.residue_value());
            } else {
                const mpq_class& q = e.rational_value();
                if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
                    row.push_back(q.get_num().get_si());
                } else {
                    row.push_back(q.get_str());
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Scheme load_scheme(const nlohmann::json& doc) {
    if (!doc.is_object()) throw StructuralError("scheme document must be a JSON object");
    for (const char* key : {"field", "N", "K", "L", "F", "D", "E"}) {
        if (!doc.contains(key)) {
            throw StructuralError(std::string("scheme document is missing \"") + key + "\"");
        }
    }
    const FieldSpec field = FieldSpec::parse(doc.at("field").get<std::string>());
    const auto n = doc.at("N").get<std::size_t>();
    const auto k = doc.at("K").get<std::size_t>();
    const auto l = doc.at("L").get<std::size_t>();
    Matrix requests = matrix_from_json(field, doc.at("F"), "F");
    Matrix decoding = matrix_from_json(field, doc.at("D"), "D");
    Matrix encoding = matrix_from_json(field, doc.at("E"), "E");
    if (requests.rows() != k || requests.cols() != l || decoding.rows() != k ||
        decoding.cols() != n || encoding.rows() != n || encoding.cols() != l) {
        throw StructuralError("dimension violation: declared N/K/L do not match matrix shapes");
    }
    return make_scheme(field, std::move(requests), std::move(decoding), std::move(encoding));
}

Scheme load_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open scheme file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError("invalid JSON in " + path + ": " + e.what());
    }
    return load_scheme(doc);
}

nlohmann::ordered_json scheme_to_json(const Scheme& s) {
    nlohmann::ordered_json doc;
    doc["field"] = s.field.name();
    doc["N"] = s.servers;
    doc["K"] = s.users;
    doc["L"] = s.messages;
    doc["F"] = matrix_to_json(s.requests);
    doc["D"] = matrix_to_json(s.decoding);
    doc["E"] = matrix_to_json(s.encoding);
    return doc;
}

Scheme reduce_scheme_mod(const Scheme& s, std::uint64_t p) {
    if (s.field.is_prime_field()) {
        if (s.field.modulus() == p) return s;
        throw StructuralError("scheme is already over " + s.field.name());
    }
    const FieldSpec gf = FieldSpec::gf(p);
    auto reduce = [&](const Matrix& m) {
        Matrix out(gf, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                out.at(i, j) = gf.from_rational(m.at(i, j).rational_value());
            }
        }
        return out;
    };
    return make_scheme(gf, reduce(s.requests), reduce(s.decoding), reduce(s.encoding));
}

BroadcastSchedule derive_schedule(const Scheme& s) {
    BroadcastSchedule sched;
    sched.server_audiences.reserve(s.servers);
    sched.user_sources.reserve(s.users);
    for (std::size_t n = 0; n < s.servers; ++n) {
        sched.server_audiences.push_back(s.decoding.col_support(n));
    }
    for (std::size_t k = 0; k < s.users; ++k) {
        sched.user_sources.push_back(s.decoding.row_support(k));
    }
    return sched;
}

CostReport costs(const Scheme& s) {
    CostReport r;
    std::size_t total_access = 0;
    for (std::size_t k = 0; k < s.users; ++k) {
        const std::size_t w = s.decoding.row_support(k).size();
        r.per_user_access.push_back(w);
        total_access += w;
    }
    std::size_t max_replication = 0;
    for (std::size_t l = 0; l < s.messages; ++l) {
        const std::size_t w = s.encoding.col_support(l).size();
        r.per_message_replication.push_back(w);
        max_replication = std::max(max_replication, w);
    }
    r.comm_cost = mpq_class(static_cast<unsigned long>(total_access),
                            static_cast<unsigned long>(s.users * s.servers));
    r.comm_cost.canonicalize();
    r.comp_cost = mpq_class(static_cast<unsigned long>(max_replication),
                            static_cast<unsigned long>(s.servers));
    r.comp_cost.canonicalize();
    return r;
}

std::vector<bool> check_nondegeneracy(const Scheme& s) {
    std::vector<bool> ok;
    ok.reserve(s.users);
    for (std::size_t k = 0; k < s.users; ++k) {
        const IndexSet sources = s.decoding.row_support(k);
        ok.push_back(rank(select_rows(s.encoding, sources)) == sources.size());
    }
    return ok;
}

} // namespace seclin
