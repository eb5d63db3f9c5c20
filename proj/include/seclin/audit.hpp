#pragma once

#include <cstdint>

#include "seclin/transform.hpp"

namespace seclin {

struct GfLeakage {
    double bits = 0.0;          // conditional mutual information, in bits
    bool exactly_zero = false;  // decided by exact integer counting, not floats
    std::uint64_t states = 0;   // p^(L+x) assignments enumerated
    std::size_t visible_rank = 0; // rank of the randomness rows the user observes
};

/// Ground-truth leakage over GF(p): enumerates every (message, randomness)
/// assignment, tabulates the joint distribution of the user's responses
/// stratified by the value of its requested combination, and returns the
/// conditional mutual information between the messages and the responses
/// given that value. Zero is certified exactly: the counts must place every
/// response class on a single coset of the visible randomness image.
///
/// Throws AuditError when p^(L+x) exceeds max_states.
GfLeakage exact_leakage_gf(const SecuredScheme& ss, std::size_t user,
                           std::uint64_t max_states = 100'000'000);

/// Greedy lowest-index-first maximal linearly independent subset of the
/// randomness rows visible to the user. Entries are server indices.
IndexSet independent_visible_rows(const SecuredScheme& ss, std::size_t user);

/// Splits the user's observed responses into one response made redundant
/// by correctness and the rest: the dropped server is the lowest-index one
/// whose randomness row removal preserves the rank of the visible
/// randomness block, so the kept rows stay as informative as the whole.
struct ResponseSplit {
    std::size_t dropped = 0; // server index
    IndexSet kept;           // remaining observed servers
};
ResponseSplit redundant_response_split(const SecuredScheme& ss, std::size_t user);

struct RealBound {
    double bound = 0.0;           // nats
    double snr = 0.0;             // M = lambda_max(X X^T) / lambda_min(Y Y^T)
    double lambda_max_signal = 0.0;
    double lambda_min_noise = 0.0;
    IndexSet rows;                // servers whose encoding/randomness rows form X and Y
    std::size_t access_count = 0; // w_H of the user
};

/// Closed-form real-field leakage ceiling
///   (w_H - 1)/2 * log(1 + M * sigma_w^2 / sigma_c^2),
/// with X the kept encoding rows and Y the kept randomness rows. Requires
/// the visible-randomness rank criterion for the user; otherwise the noise
/// Gram is singular and the leakage is unbounded.
RealBound leakage_bound_real(const SecuredScheme& ss, std::size_t user, double sigma_w,
                             double sigma_c);

struct RealLeakage {
    double nats = 0.0;
    IndexSet rows; // kept servers entering the computation
};

/// Exact jointly-Gaussian conditional mutual information for a real-field
/// secured scheme: the entropy of the kept responses conditioned on the
/// requested value (Schur complement of the joint covariance) minus the
/// entropy of their randomness part.
RealLeakage exact_leakage_gaussian(const SecuredScheme& ss, std::size_t user, double sigma_w,
                                   double sigma_c);

/// Smallest randomness deviation driving the leakage ceiling down to
/// epsilon:  sigma_c^2 = M * sigma_w^2 / (exp(2 eps/(w_H - 1)) - 1).
/// A user observing a single response needs no randomness; returns 0.
double epsilon_to_sigma(const SecuredScheme& ss, std::size_t user, double sigma_w,
                        double epsilon);

} // namespace seclin
