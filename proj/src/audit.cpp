#include "seclin/audit.hpp"

#include <cmath>
#include <optional>
#include <unordered_map>

namespace seclin {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp,
                                         std::uint64_t cap) {
    unsigned __int128 v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) return std::nullopt;
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> residue_grid(const Matrix& m) {
    std::vector<std::uint64_t> g;
    g.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) g.push_back(m.at(i, j).residue_value());
    }
    return g;
}

// Joint counts keyed by (packed responses, requested value); dense when the
// key space is small, hashed otherwise.
class CountTable {
public:
    CountTable(std::uint64_t key_space)
        : dense_(key_space <= (1u << 22)), size_(key_space) {
        if (dense_) dense_counts_.assign(size_, 0);
    }

    void bump(std::uint64_t key) {
        if (dense_) {
            ++dense_counts_[key];
        } else {
            ++sparse_counts_[key];
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        if (dense_) {
            for (std::uint64_t k = 0; k < size_; ++k) {
                if (dense_counts_[k] != 0) fn(k, dense_counts_[k]);
            }
        } else {
            for (const auto& [k, n] : sparse_counts_) fn(k, n);
        }
    }

private:
    bool dense_;
    std::uint64_t size_;
    std::vector<std::int64_t> dense_counts_;
    std::unordered_map<std::uint64_t, std::int64_t> sparse_counts_;
};

std::vector<double> to_doubles(const Matrix& m) {
    std::vector<double> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.field().to_double(m.at(i, j)));
    }
    return out;
}

// rows x rows Gram product of a rows x cols grid.
std::vector<double> gram(const std::vector<double>& m, std::size_t rows, std::size_t cols) {
    std::vector<double> g(rows * rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < cols; ++k) s += m[i * cols + k] * m[j * cols + k];
            g[i * rows + j] = s;
        }
    }
    return g;
}

// log(det) of a symmetric positive definite matrix via Cholesky; reports the
// first non-positive pivot on failure.
bool cholesky_logdet(std::vector<double> a, std::size_t n, double& logdet, std::size_t& bad_row) {
    logdet = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0) {
                    bad_row = i;
                    return false;
                }
                a[i * n + i] = std::sqrt(s);
                logdet += 2 * std::log(a[i * n + i]);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    return true;
}

struct RealUserContext {
    IndexSet kept;
    std::size_t access_count = 0;
    std::size_t m = 0;              // kept.size() = access_count - 1
    std::vector<double> signal;     // kept encoding rows, m x L
    std::vector<double> noise;      // kept randomness rows, m x x
    std::vector<double> request;    // the user's request vector, length L
};

RealUserContext real_user_context(const SecuredScheme& ss, std::size_t user) {
    const Scheme& s = ss.base;
    if (s.field.is_prime_field()) {
        throw StructuralError("real-field audit needs a scheme over the real field");
    }
    if (user >= s.users) throw StructuralError("user index out of range");
    RealUserContext ctx;
    const ResponseSplit split = redundant_response_split(ss, user);
    ctx.kept = split.kept;
    ctx.access_count = s.decoding.row_support(user).size();
    ctx.m = ctx.kept.size();
    // The kept randomness rows must be independent (rank = access count - 1,
    // checked exactly); otherwise some unmasked direction leaks unboundedly.
    if (rank(select_rows(ss.randomness_coeffs, ctx.kept)) != ctx.m) {
        throw AuditError("visible randomness is rank-deficient for user " +
                         std::to_string(user + 1) + ": unbounded leakage direction");
    }
    ctx.signal = to_doubles(select_rows(s.encoding, ctx.kept));
    ctx.noise = to_doubles(select_rows(ss.randomness_coeffs, ctx.kept));
    for (std::size_t l = 0; l < s.messages; ++l) {
        ctx.request.push_back(s.field.to_double(s.requests.at(user, l)));
    }
    return ctx;
}

} // namespace

GfLeakage exact_leakage_gf(const SecuredScheme& ss, std::size_t user, std::uint64_t max_states) {
    const Scheme& s = ss.base;
    if (!s.field.is_prime_field()) {
        throw StructuralError("exhaustive audit needs a prime-field scheme");
    }
    if (user >= s.users) throw StructuralError("user index out of range");
    const std::uint64_t p = s.field.modulus();
    const std::size_t msgs = s.messages;
    const std::size_t rnd = ss.randomness_count;

    const auto states = checked_pow(p, msgs + rnd, max_states);
    if (!states) {
        throw AuditError("enumeration infeasible: p^(L+x) = " + std::to_string(p) + "^" +
                         std::to_string(msgs + rnd) + " exceeds " + std::to_string(max_states) +
                         " states");
    }

    const IndexSet support = s.decoding.row_support(user);
    const std::size_t wh = support.size();
    const Matrix enc_sel = select_rows(s.encoding, support);
    const Matrix rnd_sel = select_rows(ss.randomness_coeffs, support);
    const std::size_t visible_rank = rank(rnd_sel);

    // Response vectors are packed base p together with the requested value,
    // so the key space must fit alongside the state space.
    const auto key_space = checked_pow(p, wh + 1, std::uint64_t{1} << 62);
    if (!key_space) {
        throw AuditError("enumeration infeasible: response tuple space p^(w_H+1) overflows");
    }

    const std::vector<std::uint64_t> enc = residue_grid(enc_sel);
    const std::vector<std::uint64_t> rnd_grid = residue_grid(rnd_sel);
    std::vector<std::uint64_t> request(msgs);
    for (std::size_t l = 0; l < msgs; ++l) request[l] = s.requests.at(user, l).residue_value();

    const std::uint64_t msg_states = *checked_pow(p, msgs, max_states);
    const std::uint64_t rnd_states = *checked_pow(p, rnd, max_states);

    // Randomness contributions to each observed response, for all randomness
    // assignments (their count is small next to the full state space).
    std::vector<std::uint64_t> rnd_offsets(rnd_states * wh, 0);
    {
        std::vector<std::uint64_t> c(rnd, 0);
        for (std::uint64_t ci = 0; ci < rnd_states; ++ci) {
            for (std::size_t i = 0; i < wh; ++i) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j < rnd; ++j) {
                    acc = (acc + mulmod(rnd_grid[i * rnd + j], c[j], p)) % p;
                }
                rnd_offsets[ci * wh + i] = acc;
            }
            for (std::size_t j = 0; j < rnd; ++j) { // odometer
                if (++c[j] < p) break;
                c[j] = 0;
            }
        }
    }

    CountTable counts(*key_space);
    bool request_is_zero = true;
    for (std::size_t l = 0; l < msgs; ++l) request_is_zero = request_is_zero && request[l] == 0;

    std::vector<std::uint64_t> w(msgs, 0);
    std::vector<std::uint64_t> base(wh);
    for (std::uint64_t wi = 0; wi < msg_states; ++wi) {
        std::uint64_t g = 0;
        for (std::size_t l = 0; l < msgs; ++l) g = (g + mulmod(request[l], w[l], p)) % p;
        for (std::size_t i = 0; i < wh; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t l = 0; l < msgs; ++l) {
                acc = (acc + mulmod(enc[i * msgs + l], w[l], p)) % p;
            }
            base[i] = acc;
        }
        for (std::uint64_t ci = 0; ci < rnd_states; ++ci) {
            std::uint64_t key = 0;
            const std::uint64_t* off = &rnd_offsets[ci * wh];
            for (std::size_t i = 0; i < wh; ++i) {
                std::uint64_t a = base[i] + off[i];
                if (a >= p) a -= p;
                key = key * p + a;
            }
            counts.bump(key * p + g);
        }
        for (std::size_t l = 0; l < msgs; ++l) { // odometer
            if (++w[l] < p) break;
            w[l] = 0;
        }
    }

    // Message-class sizes: the requested combination is uniform when the
    // request vector is nonzero, otherwise everything sits in class 0.
    const std::uint64_t class_size = request_is_zero ? msg_states : msg_states / p;
    const std::uint64_t image_size = *checked_pow(p, visible_rank, std::uint64_t{1} << 62);

    // Exact zero test: leakage vanishes iff every (class, response) count
    // equals class_size * p^x / p^visible_rank, i.e. responses are uniform
    // over one randomness coset per class.
    bool zero = true;
    double bits = 0.0;
    const double total = static_cast<double>(*states);
    counts.for_each([&](std::uint64_t key, std::int64_t n) {
        const std::uint64_t g = key % p;
        const std::uint64_t n_class = (request_is_zero && g != 0) ? 0 : class_size;
        if (static_cast<unsigned __int128>(n) * image_size !=
            static_cast<unsigned __int128>(n_class) * rnd_states) {
            zero = false;
        }
        const double joint = static_cast<double>(n) / total;
        bits += joint * std::log2(static_cast<double>(n_class) * static_cast<double>(rnd_states) /
                                  static_cast<double>(n));
    });
    bits -= static_cast<double>(visible_rank) * std::log2(static_cast<double>(p));

    GfLeakage out;
    out.states = *states;
    out.visible_rank = visible_rank;
    out.exactly_zero = zero;
    out.bits = zero ? 0.0 : std::max(bits, 0.0);
    return out;
}

IndexSet independent_visible_rows(const SecuredScheme& ss, std::size_t user) {
    const Scheme& s = ss.base;
    if (user >= s.users) throw StructuralError("user index out of range");
    const IndexSet support = s.decoding.row_support(user);
    std::vector<std::size_t> picked;
    std::size_t current_rank = 0;
    for (std::size_t server : support) {
        std::vector<std::size_t> trial = picked;
        trial.push_back(server);
        const std::size_t r = rank(select_rows(ss.randomness_coeffs, IndexSet(trial)));
        if (r > current_rank) {
            picked = std::move(trial);
            current_rank = r;
        }
    }
    return IndexSet(std::move(picked));
}

ResponseSplit redundant_response_split(const SecuredScheme& ss, std::size_t user) {
    const Scheme& s = ss.base;
    if (user >= s.users) throw StructuralError("user index out of range");
    const IndexSet support = s.decoding.row_support(user);
    const std::size_t full_rank = rank(select_rows(ss.randomness_coeffs, support));
    for (std::size_t i = 0; i < support.size(); ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < support.size(); ++j) {
            if (j != i) rest.push_back(support[j]);
        }
        IndexSet kept(std::move(rest));
        if (rank(select_rows(ss.randomness_coeffs, kept)) == full_rank) {
            return ResponseSplit{support[i], std::move(kept)};
        }
    }
    // Unreachable for valid schemes: the user's own decoding row lies in the
    // left null space of its visible randomness block, so one row is always
    // dependent on the others.
    throw Error("internal inconsistency: no redundant response found");
}

RealBound leakage_bound_real(const SecuredScheme& ss, std::size_t user, double sigma_w,
                             double sigma_c) {
    if (sigma_w <= 0 || sigma_c <= 0) throw StructuralError("sigma_w and sigma_c must be positive");
    const RealUserContext ctx = real_user_context(ss, user);
    RealBound out;
    out.rows = ctx.kept;
    out.access_count = ctx.access_count;
    if (ctx.m == 0) return out; // single observed response: the bound is identically zero

    const auto signal_eigs =
        jacobi_eigenvalues(gram(ctx.signal, ctx.m, ss.base.messages), ctx.m, 1e-10);
    const auto noise_eigs =
        jacobi_eigenvalues(gram(ctx.noise, ctx.m, ss.randomness_count), ctx.m, 1e-10);
    out.lambda_max_signal = signal_eigs.back();
    out.lambda_min_noise = noise_eigs.front();
    if (out.lambda_min_noise <= 1e-12) {
        throw AuditError("visible randomness is rank-deficient for user " +
                         std::to_string(user + 1) + ": unbounded leakage direction");
    }
    out.snr = out.lambda_max_signal / out.lambda_min_noise;
    out.bound = 0.5 * static_cast<double>(ctx.m) *
                std::log1p(out.snr * sigma_w * sigma_w / (sigma_c * sigma_c));
    return out;
}

RealLeakage exact_leakage_gaussian(const SecuredScheme& ss, std::size_t user, double sigma_w,
                                   double sigma_c) {
    if (sigma_w <= 0 || sigma_c <= 0) throw StructuralError("sigma_w and sigma_c must be positive");
    const RealUserContext ctx = real_user_context(ss, user);
    RealLeakage out;
    out.rows = ctx.kept;
    if (ctx.m == 0) return out;

    const std::size_t msgs = ss.base.messages;
    const std::size_t m = ctx.m;
    const double sw2 = sigma_w * sigma_w;
    const double sc2 = sigma_c * sigma_c;

    // Covariance of the kept responses, conditioned on the requested value.
    std::vector<double> cov = gram(ctx.signal, m, msgs);
    for (double& v : cov) v *= sw2;
    {
        const std::vector<double> noise_gram = gram(ctx.noise, m, ss.randomness_count);
        for (std::size_t i = 0; i < m * m; ++i) cov[i] += sc2 * noise_gram[i];
    }
    double request_norm2 = 0;
    for (double v : ctx.request) request_norm2 += v * v;
    if (request_norm2 > 0) {
        std::vector<double> cross(m, 0.0); // Cov(responses, requested value) / sigma_w^2
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t l = 0; l < msgs; ++l) {
                cross[i] += ctx.signal[i * msgs + l] * ctx.request[l];
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                cov[i * m + j] -= sw2 * cross[i] * cross[j] / request_norm2;
            }
        }
    }

    std::vector<double> noise_cov = gram(ctx.noise, m, ss.randomness_count);
    for (double& v : noise_cov) v *= sc2;

    double logdet_cond = 0, logdet_noise = 0;
    std::size_t bad = 0;
    if (!cholesky_logdet(noise_cov, m, logdet_noise, bad)) {
        throw AuditError("visible randomness is rank-deficient for user " +
                         std::to_string(user + 1) + ": unbounded leakage direction");
    }
    if (!cholesky_logdet(cov, m, logdet_cond, bad)) {
        throw AuditError("singular conditioning covariance at observed response " +
                         std::to_string(bad + 1) + " of user " + std::to_string(user + 1));
    }
    out.nats = std::max(0.0, 0.5 * (logdet_cond - logdet_noise));
    return out;
}

double epsilon_to_sigma(const SecuredScheme& ss, std::size_t user, double sigma_w,
                        double epsilon) {
    if (epsilon <= 0) throw StructuralError("epsilon must be positive");
    if (sigma_w <= 0) throw StructuralError("sigma_w must be positive");
    const RealUserContext ctx = real_user_context(ss, user);
    if (ctx.m == 0) return 0.0; // a single observed response leaks nothing
    // Reuse the ceiling's spectral ingredients at an arbitrary sigma_c.
    const RealBound b = leakage_bound_real(ss, user, sigma_w, 1.0);
    const double denom = std::expm1(2.0 * epsilon / static_cast<double>(ctx.m));
    return std::sqrt(b.snr * sigma_w * sigma_w / denom);
}

} // namespace seclin
