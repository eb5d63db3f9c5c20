#include "seclin/simulate.hpp"

#include <cmath>
#include <numbers>

namespace seclin {

std::uint64_t Rng::uniform_mod(std::uint64_t p) {
    if (p == 0) throw StructuralError("uniform_mod needs a positive modulus");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % p;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % p;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on uniform draws from (0, 1].
    const double scale = 1.0 / (static_cast<double>(std::numeric_limits<std::uint64_t>::max()) + 1.0);
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = (static_cast<double>(gen_()) + 1.0) * scale;
    const double u2 = static_cast<double>(gen_()) * scale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

bool TrialOutcome::all_match() const {
    for (const auto& u : users) {
        if (!u.match) return false;
    }
    return true;
}

namespace {

// Precomputed double/residue views of the secured scheme.
struct SimContext {
    bool prime = false;
    std::uint64_t p = 0;
    std::size_t servers, users, messages, randomness;
    // residue grids (prime field)
    std::vector<std::uint64_t> enc_aug_r, dec_r, req_r;
    // double grids (real field)
    std::vector<double> enc_aug_d, dec_d, req_d;
    std::vector<IndexSet> sources; // per user

    explicit SimContext(const SecuredScheme& ss) {
        const Scheme& s = ss.base;
        prime = s.field.is_prime_field();
        p = prime ? s.field.modulus() : 0;
        servers = s.servers;
        users = s.users;
        messages = s.messages;
        randomness = ss.randomness_count;
        auto fill = [&](const Matrix& m, std::vector<std::uint64_t>& ri, std::vector<double>& rd) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (prime) {
                        ri.push_back(m.at(i, j).residue_value());
                    } else {
                        rd.push_back(s.field.to_double(m.at(i, j)));
                    }
                }
            }
        };
        fill(ss.encoding_aug, enc_aug_r, enc_aug_d);
        fill(s.decoding, dec_r, dec_d);
        fill(s.requests, req_r, req_d);
        for (std::size_t k = 0; k < users; ++k) sources.push_back(s.decoding.row_support(k));
    }
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

TrialOutcome run_trial_ctx(const SimContext& c, const SimParams& params) {
    TrialOutcome out;
    out.seed = params.seed;
    Rng rng(params.seed);
    const std::size_t width = c.messages + c.randomness;

    if (c.prime) {
        std::vector<std::uint64_t> w_aug(width);
        for (auto& v : w_aug) v = rng.uniform_mod(c.p);
        std::vector<std::uint64_t> responses(c.servers, 0);
        for (std::size_t n = 0; n < c.servers; ++n) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < width; ++j) {
                acc = (acc + mulmod(c.enc_aug_r[n * width + j], w_aug[j], c.p)) % c.p;
            }
            responses[n] = acc;
        }
        for (std::size_t k = 0; k < c.users; ++k) {
            std::uint64_t recovered = 0;
            for (std::size_t n : c.sources[k]) { // only scheduled responses are touched
                recovered = (recovered + mulmod(c.dec_r[k * c.servers + n], responses[n], c.p)) % c.p;
            }
            std::uint64_t expected = 0;
            for (std::size_t l = 0; l < c.messages; ++l) {
                expected = (expected + mulmod(c.req_r[k * c.messages + l], w_aug[l], c.p)) % c.p;
            }
            TrialOutcome::UserResult u;
            u.expected = std::to_string(expected);
            u.recovered = std::to_string(recovered);
            u.match = expected == recovered;
            out.users.push_back(std::move(u));
        }
        return out;
    }

    if (params.sigma_w <= 0 || params.sigma_c <= 0) {
        throw StructuralError("sigma_w and sigma_c must be positive");
    }
    std::vector<double> w_aug(width);
    for (std::size_t j = 0; j < c.messages; ++j) w_aug[j] = params.sigma_w * rng.gaussian();
    for (std::size_t j = c.messages; j < width; ++j) w_aug[j] = params.sigma_c * rng.gaussian();
    std::vector<double> responses(c.servers, 0.0);
    for (std::size_t n = 0; n < c.servers; ++n) {
        double acc = 0;
        for (std::size_t j = 0; j < width; ++j) acc += c.enc_aug_d[n * width + j] * w_aug[j];
        responses[n] = acc;
    }
    for (std::size_t k = 0; k < c.users; ++k) {
        double recovered = 0;
        for (std::size_t n : c.sources[k]) recovered += c.dec_d[k * c.servers + n] * responses[n];
        double expected = 0;
        for (std::size_t l = 0; l < c.messages; ++l) {
            expected += c.req_d[k * c.messages + l] * w_aug[l];
        }
        TrialOutcome::UserResult u;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", expected);
        u.expected = buf;
        std::snprintf(buf, sizeof buf, "%.17g", recovered);
        u.recovered = buf;
        u.abs_error = std::abs(recovered - expected);
        u.match = u.abs_error <= params.tolerance * (1.0 + std::abs(expected));
        out.users.push_back(std::move(u));
    }
    return out;
}

} // namespace

TrialOutcome run_trial(const SecuredScheme& ss, const SimParams& params) {
    return run_trial_ctx(SimContext(ss), params);
}

BatchResult run_batch(const SecuredScheme& ss, const SimParams& params, std::size_t trials,
                      bool keep_outcomes) {
    if (trials < 1) throw StructuralError("need at least one trial");
    const SimContext ctx(ss);
    BatchResult agg;
    agg.trials = trials;
    std::vector<std::size_t> successes(ctx.users, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        SimParams p = params;
        p.seed = params.seed + t;
        TrialOutcome o = run_trial_ctx(ctx, p);
        for (std::size_t k = 0; k < ctx.users; ++k) {
            if (o.users[k].match) ++successes[k];
            agg.max_abs_error = std::max(agg.max_abs_error, o.users[k].abs_error);
        }
        if (keep_outcomes) agg.outcomes.push_back(std::move(o));
    }
    for (std::size_t k = 0; k < ctx.users; ++k) {
        agg.success_rate.push_back(static_cast<double>(successes[k]) / static_cast<double>(trials));
    }
    return agg;
}

} // namespace seclin
