#pragma once

#include <optional>

#include "seclin/scheme.hpp"

namespace seclin {

/// Builds a scheme with systematic decoding matrix D = [I_K | P]. The
/// encoding matrix is solved row-wise: its last N-K rows are the supplied
/// tail (zero by default) and the first K rows are F - P * tail, so
/// D * E = F by construction.
Scheme systematic_factorize(const Matrix& requests, const Matrix& parity,
                            const std::optional<Matrix>& encoding_tail = std::nullopt);

/// The canonical randomness matrix [-P^T | I]^T for a systematic decoder;
/// its columns span Null([I_K | P]).
Matrix systematic_randomness(const Matrix& parity);

struct CyclicCheck {
    bool is_circulant = false;   // every row is the previous one shifted right
    bool reduced_rank_ok = false; // all per-user reduced ranks >= K-1
};

/// Detects circulant row-shift structure in a decoding matrix and verifies
/// the per-user reduced-rank criterion by direct rank computation.
CyclicCheck check_cyclic(const Matrix& decoding);

enum class IdentityVariant {
    assigned_server, // D = I_K, E = F: each user has its own server
    decentralized    // D = F, E = I_N: each server computes one raw message
};

/// Degenerate single-purpose factorizations. The decentralized variant
/// requires the request matrix to have full row rank (it becomes the
/// decoder).
Scheme identity_scheme(const Matrix& requests, IdentityVariant variant);

/// Re-factorizes a scheme so its decoding matrix is systematic: the pivot
/// columns of D are moved to the front and cleared to an identity block,
/// and a fresh encoding matrix is solved for the same requests. Costs
/// generally change; the caller should re-derive them.
Scheme to_systematic(const Scheme& s);

} // namespace seclin
