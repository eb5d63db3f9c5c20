#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "seclin/transform.hpp"

namespace seclin {

/// Deterministic random source: mt19937_64 with explicit rejection
/// sampling for residues and an explicit Box-Muller transform for
/// gaussians, so identical seeds give identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform residue in [0, p) by rejection.
    std::uint64_t uniform_mod(std::uint64_t p);

    /// Standard normal draw (Box-Muller).
    double gaussian();

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SimParams {
    std::uint64_t seed = 0;
    double sigma_w = 1.0;    // message std deviation (real field)
    double sigma_c = 1.0;    // randomness std deviation (real field)
    double tolerance = 1e-6; // relative recovery tolerance (real field)
};

/// One protocol round: messages and randomness are sampled, every server
/// forms its single response from its augmented encoding row, and every
/// user aggregates only the responses it is scheduled to receive.
struct TrialOutcome {
    std::uint64_t seed = 0;
    struct UserResult {
        std::string expected;  // requested linear combination of the messages
        std::string recovered; // aggregate the user computed
        bool match = false;
        double abs_error = 0.0; // real field only
    };
    std::vector<UserResult> users;
    bool all_match() const;
};

TrialOutcome run_trial(const SecuredScheme& ss, const SimParams& params);

struct BatchResult {
    std::size_t trials = 0;
    std::vector<double> success_rate; // per user
    double max_abs_error = 0.0;
    std::vector<TrialOutcome> outcomes; // kept only when requested
};

/// Runs `trials` independent rounds; trial i uses seed params.seed + i.
BatchResult run_batch(const SecuredScheme& ss, const SimParams& params, std::size_t trials,
                      bool keep_outcomes = false);

} // namespace seclin
