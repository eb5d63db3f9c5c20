#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seclin/matrix.hpp"

namespace seclin {

/// A multi-user linearly-separable computing scheme: the factorization
/// requests = decoding * encoding over one field, with N servers, K users
/// and L messages.
///
/// Validated invariants: N >= K, L >= K, decoding has full row rank K, and
/// decoding * encoding reproduces the request matrix exactly.
struct Scheme {
    FieldSpec field = FieldSpec::real();
    std::size_t servers = 0;  // N
    std::size_t users = 0;    // K
    std::size_t messages = 0; // L
    Matrix requests;          // K x L, one request vector per user
    Matrix decoding;          // K x N, one aggregation vector per user
    Matrix encoding;          // N x L, one task vector per server
};

/// Who talks to whom, derived from the nonzero pattern of the decoding
/// matrix: server_audiences[n] lists the users hearing server n, and
/// user_sources[k] lists the servers user k listens to.
struct BroadcastSchedule {
    std::vector<IndexSet> server_audiences; // per server (tau)
    std::vector<IndexSet> user_sources;     // per user (support of decoding row)
};

struct CostReport {
    mpq_class comm_cost;                             // delta = sum_k |sources_k| / (K*N)
    mpq_class comp_cost;                             // gamma = max_l (servers computing l) / N
    std::vector<std::size_t> per_user_access;        // access count of each user
    std::vector<std::size_t> per_message_replication; // servers touching each message
};

Scheme make_scheme(FieldSpec field, Matrix requests, Matrix decoding, Matrix encoding);

/// Parses and validates a scheme document
/// { "field": "gf:11"|"real", "N":..,"K":..,"L":.., "F":[[..]],"D":[[..]],"E":[[..]] }
/// with integer or "a/b" string entries.
Scheme load_scheme(const nlohmann::json& doc);
Scheme load_scheme_file(const std::string& path);
nlohmann::ordered_json scheme_to_json(const Scheme& s);

/// Parses a matrix value (array of arrays of int / "a/b" string entries).
Matrix matrix_from_json(const FieldSpec& field, const nlohmann::json& value,
                        const std::string& what);
nlohmann::ordered_json matrix_to_json(const Matrix& m);

/// Reinterprets a real scheme with integer-compatible entries in GF(p).
Scheme reduce_scheme_mod(const Scheme& s, std::uint64_t p);

BroadcastSchedule derive_schedule(const Scheme& s);
CostReport costs(const Scheme& s);

/// For each user, whether the encoding rows it observes are linearly
/// independent (full rank equal to the user's access count).
std::vector<bool> check_nondegeneracy(const Scheme& s);

} // namespace seclin
