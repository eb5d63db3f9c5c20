#pragma once

#include <optional>
#include <vector>

#include "seclin/transform.hpp"

namespace seclin {

struct RankCheck {
    std::size_t rank = 0;
    bool ok = false;
};

/// Rank of the decoding matrix after deleting, for each user, the columns
/// of the servers that user observes. (Row k itself becomes zero, so the
/// rank is at most K-1; secrecy needs exactly K-1.)
std::vector<std::size_t> reduced_decoder_ranks(const Matrix& decoding);

/// Per-user reduced-rank criterion: rank(D minus observed columns) >= K-1.
std::vector<RankCheck> check_reduced_rank(const Scheme& s);

/// Per-user visible-randomness criterion: the randomness coefficients seen
/// by user k must have rank exactly (access count - 1), leaving a single
/// randomness-free decoding direction.
std::vector<RankCheck> check_randomness_rank(const SecuredScheme& ss);

/// Per-user access bound: a user observing more than N-K+1 servers cannot
/// be kept ignorant.
std::vector<bool> check_access_bound(const Scheme& s);

struct CostBoundCheck {
    mpq_class comm_cost;  // delta
    mpq_class limit;      // 1 - (K-1)/N
    bool ok = false;
};

/// Global communication-cost bound: delta <= 1 - (K-1)/N is necessary for
/// secrecy (exact rational comparison).
CostBoundCheck check_cost_bound(const Scheme& s);

enum class RandomnessRankStatus {
    not_applicable, // no randomness matrix given
    ok,             // rank == access count - 1
    deficient,      // rank <= access count - 2: leaking directions exist
    inconsistent    // rank == access count: impossible when D*C = 0 holds
};

struct UserSecrecy {
    std::size_t user = 0;         // zero-based
    std::size_t access_count = 0; // w_H of the user's decoding row
    std::size_t reduced_rank = 0;
    bool reduced_rank_ok = false;
    std::size_t access_limit = 0; // N - K + 1
    bool access_bound_ok = false;
    bool nondegenerate = true; // encoding rows seen by the user independent
    RandomnessRankStatus randomness_status = RandomnessRankStatus::not_applicable;
    std::size_t randomness_rank = 0;
    std::size_t randomness_required = 0; // access count - 1
};

struct SecrecyReport {
    std::vector<UserSecrecy> per_user;
    CostBoundCheck cost_bound;
    bool has_randomness = false;

    /// True when every applicable criterion passed. Non-degeneracy is an
    /// annotation (it qualifies the converse guarantee), not a failure.
    bool all_ok() const;
};

SecrecyReport full_report(const Scheme& s);
SecrecyReport full_report(const SecuredScheme& ss);

nlohmann::ordered_json secrecy_report_to_json(const SecrecyReport& r);

} // namespace seclin
