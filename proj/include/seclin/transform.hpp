#pragma once

#include <string>
#include <vector>

#include "seclin/scheme.hpp"

namespace seclin {

/// A scheme with common randomness injected along null-space directions of
/// the decoding matrix: every server additionally mixes shared random
/// symbols into its response with coefficients from one row of the
/// randomness matrix C, so decoding * [E | C] = [F | 0] and every
/// legitimate decode cancels the randomness.
struct SecuredScheme {
    Scheme base;
    Matrix randomness_coeffs; // C: N x randomness_count
    Matrix encoding_aug;      // [E | C]: N x (L + randomness_count)
    std::size_t randomness_count = 0; // number of shared random symbols
    std::vector<std::string> warnings;
};

/// Validates (scheme, C) into a SecuredScheme: C must be N x x with
/// decoding * C = 0 exactly. secure() always emits a full null-space basis
/// (x = N - K); imported files may carry fewer or dependent columns, which
/// is accepted and surfaced through the secrecy report instead.
SecuredScheme make_secured(Scheme s, Matrix randomness_coeffs,
                           std::vector<std::string> warnings = {});

/// Wraps a plain scheme as "secured with zero randomness symbols" so the
/// audit machinery can run on unsecured schemes too.
SecuredScheme unsecured(Scheme s);

/// The cost-preserving securing transformation: appends a deterministic
/// (RREF-canonical) basis of Null(decoding) to the encoding matrix.
///
/// Requires every user's reduced decoding matrix to have rank >= K-1;
/// otherwise throws SecrecyError naming the offending user. A failed
/// non-degeneracy check only adds a warning. When N == K the scheme has no
/// randomness capacity and is returned unchanged with a warning.
SecuredScheme secure(const Scheme& s);

/// Per-server inputs after securing: which messages and which shared
/// random symbols the server needs to form its response.
struct ServerTask {
    IndexSet message_deps;    // indices into [0, L)
    IndexSet randomness_deps; // indices into [0, x)
};
std::vector<ServerTask> augmented_tasks(const SecuredScheme& ss);

/// Reinterprets a real secured scheme in GF(p) (entries reduced mod p).
SecuredScheme reduce_secured_mod(const SecuredScheme& ss, std::uint64_t p);

/// Secured scheme files are scheme files with an extra "C" matrix.
SecuredScheme load_secured(const nlohmann::json& doc);
SecuredScheme load_secured_file(const std::string& path);
nlohmann::ordered_json secured_to_json(const SecuredScheme& ss);

} // namespace seclin
