// Acceptance suite: one self-contained check per release criterion, one
// PASS/FAIL line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "seclin/audit.hpp"
#include "seclin/secrecy.hpp"
#include "seclin/simulate.hpp"
#include "test_util.hpp"

using namespace seclin;
using namespace testutil;

namespace {

const std::string data_dir = SECLIN_DATA_DIR;
int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > budget_seconds) {
        error = "runtime " + std::to_string(secs) + "s exceeds the " +
                std::to_string(budget_seconds) + "s budget";
    }
    if (error.empty()) {
        std::printf("[PASS] criterion %d: %s (%.2fs)\n", number, title.c_str(), secs);
    } else {
        std::printf("[FAIL] criterion %d: %s (%.2fs)\n       %s\n", number, title.c_str(), secs,
                    error.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error("requirement failed: " + what);
}

// Deterministic pools of random schemes shared by criteria 6, 7 and 9.
struct SchemePool {
    std::vector<Scheme> admissible;      // pass the reduced-rank criterion everywhere
    std::vector<Scheme> violating;       // some user fails the access bound or rank equality
    std::vector<Scheme> over_cost_bound; // delta above the secrecy limit
};

SchemePool build_pool() {
    SchemePool pool;
    Rng rng(20240811);
    const std::size_t dims[4][3] = {{4, 3, 3}, {5, 3, 4}, {5, 4, 4}, {6, 4, 4}};
    const std::uint64_t primes[2] = {2, 3};

    while (pool.admissible.size() < 20) {
        const auto& d = dims[rng.uniform_mod(4)];
        const FieldSpec f = FieldSpec::gf(primes[rng.uniform_mod(2)]);
        auto s = try_random_scheme(rng, f, d[0], d[1], d[2]);
        if (s && passes_reduced_rank(*s)) pool.admissible.push_back(std::move(*s));
    }
    while (pool.violating.size() < 20) {
        const auto& d = dims[rng.uniform_mod(4)];
        const FieldSpec f = FieldSpec::gf(primes[rng.uniform_mod(2)]);
        auto s = try_random_scheme(rng, f, d[0], d[1], d[2]);
        if (!s || passes_reduced_rank(*s)) continue;
        // audit positivity needs the offending user to observe independent
        // encoding rows
        const SecuredScheme ss = make_secured(*s, null_space_basis(s->decoding));
        const auto rnd_checks = check_randomness_rank(ss);
        const auto nondeg = check_nondegeneracy(*s);
        bool usable = false;
        for (std::size_t k = 0; k < s->users; ++k) {
            usable = usable || (!rnd_checks[k].ok && nondeg[k]);
        }
        if (usable) pool.violating.push_back(std::move(*s));
    }
    while (pool.over_cost_bound.size() < 20) {
        const FieldSpec f = FieldSpec::gf(primes[rng.uniform_mod(2)]);
        const std::size_t users = 2 + rng.uniform_mod(3);
        const std::size_t servers = users + rng.uniform_mod(2);
        auto s = try_random_scheme(rng, f, servers, users, users);
        if (!s) continue;
        if (!check_cost_bound(*s).ok) pool.over_cost_bound.push_back(std::move(*s));
    }
    return pool;
}

} // namespace

int main() {
    const FieldSpec R = FieldSpec::real();
    const FieldSpec F11 = FieldSpec::gf(11);

    criterion(1, "bundled example reproduces the reference costs and schedule", 1.0, [&] {
        const Scheme s = load_scheme_file(data_dir + "/example1.json");
        const CostReport c = costs(s);
        require(c.comm_cost == mpq_class(11, 24), "delta == 11/24");
        require(c.comp_cost == mpq_class(2, 3), "gamma == 2/3");
        const BroadcastSchedule sched = derive_schedule(s);
        const std::vector<IndexSet> audiences = {IndexSet::of({0}),    IndexSet::of({0, 1}),
                                                 IndexSet::of({0, 1, 2}), IndexSet::of({1, 3}),
                                                 IndexSet::of({2, 3}), IndexSet::of({3})};
        require(sched.server_audiences == audiences, "broadcast sets match the reference table");
        const std::vector<IndexSet> sources = {IndexSet::of({0, 1, 2}), IndexSet::of({1, 2, 3}),
                                               IndexSet::of({2, 4}), IndexSet::of({3, 4, 5})};
        require(sched.user_sources == sources, "user supports match the reference table");
    });

    criterion(2, "reduced decoders all have rank K-1 = 3", 1.0, [&] {
        const Scheme s = load_scheme_file(data_dir + "/example1.json");
        for (const RankCheck& c : check_reduced_rank(s)) {
            require(c.rank == 3 && c.ok, "rank(D_red) == 3");
        }
    });

    criterion(3, "securing appends a rank-2 null-space basis with per-user ranks (2,2,1,2)", 1.0, [&] {
        const Scheme s = load_scheme_file(data_dir + "/example1.json");
        const SecuredScheme ss = secure(s);
        require(ss.randomness_count == 2, "two randomness symbols");
        require(rank(ss.randomness_coeffs) == 2, "rank(C) == 2");
        const std::vector<std::size_t> want = {2, 2, 1, 2};
        const auto checks = check_randomness_rank(ss);
        for (std::size_t k = 0; k < 4; ++k) {
            require(checks[k].rank == want[k] && checks[k].ok, "visible randomness rank");
        }
        require(matmul(s.decoding, ss.encoding_aug) == hstack(s.requests, Matrix(R, 4, 2)),
                "D * [E|C] == [F|0]");
    });

    criterion(4, "first-user eigenvalue figures and leakage ceiling", 1.0, [&] {
        const SecuredScheme ss = load_secured_file(data_dir + "/example1_secured.json");
        const RealBound b = leakage_bound_real(ss, 0, 1.0, 1.0);
        require(std::abs(b.lambda_max_signal - 19.66) <= 0.01, "lambda_max(X1 X1^T) ~ 19.66");
        require(std::abs(b.lambda_min_noise - 1.40) <= 0.01, "lambda_min(Y1 Y1^T) ~ 1.40");
        const double expected = std::log1p(b.lambda_max_signal / b.lambda_min_noise);
        require(std::abs(b.bound - expected) <= 1e-3, "bound == log(1 + 19.66/1.4)");
        require(b.rows == IndexSet::of({1, 2}), "X1/Y1 built from responses 2 and 3");
    });

    criterion(5, "exhaustive audit over GF(11): secured leaks zero, raw leaks", 60.0, [&] {
        const Scheme gf = load_scheme_file(data_dir + "/example1_gf11.json");
        const SecuredScheme ss = secure(gf);
        for (std::size_t k = 0; k < 4; ++k) {
            const GfLeakage leak = exact_leakage_gf(ss, k);
            require(leak.states == 19487171ull, "11^7 states enumerated");
            require(leak.exactly_zero && leak.bits == 0.0, "secured user leaks exactly zero");
        }
        const SecuredScheme raw = unsecured(gf);
        for (std::size_t k = 0; k < 4; ++k) {
            require(gf.decoding.row_support(k).size() >= 2, "all users observe >= 2 servers");
            const GfLeakage leak = exact_leakage_gf(raw, k);
            require(!leak.exactly_zero && leak.bits > 0.0, "raw user leaks");
        }
    });

    const SchemePool pool = build_pool();

    criterion(6, "20 random admissible schemes: zero leakage and perfect recovery", 300.0, [&] {
        require(pool.admissible.size() >= 20, "pool size");
        for (const Scheme& s : pool.admissible) {
            const SecuredScheme ss = secure(s);
            for (std::size_t k = 0; k < s.users; ++k) {
                require(exact_leakage_gf(ss, k).exactly_zero, "exactly zero leakage");
            }
            SimParams params;
            params.seed = 1;
            const BatchResult batch = run_batch(ss, params, 1000);
            for (double r : batch.success_rate) require(r == 1.0, "success rate 1.0");
        }
    });

    criterion(7, "20 violating schemes leak; cost-bound violations imply access violations", 300.0, [&] {
        require(pool.violating.size() >= 20, "pool size");
        for (const Scheme& s : pool.violating) {
            const SecuredScheme ss = make_secured(s, null_space_basis(s.decoding));
            const auto rnd_checks = check_randomness_rank(ss);
            const auto nondeg = check_nondegeneracy(s);
            bool confirmed = false;
            for (std::size_t k = 0; k < s.users; ++k) {
                if (rnd_checks[k].ok || !nondeg[k]) continue;
                const GfLeakage leak = exact_leakage_gf(ss, k);
                require(!leak.exactly_zero && leak.bits > 0.0,
                        "rank-deficient user has positive leakage");
                confirmed = true;
            }
            require(confirmed, "each violating scheme exposes a leaking user");
        }
        require(pool.over_cost_bound.size() >= 20, "pool size");
        for (const Scheme& s : pool.over_cost_bound) {
            const auto access = check_access_bound(s);
            bool some_violation = false;
            for (bool ok : access) some_violation = some_violation || !ok;
            require(some_violation, "delta over the limit forces an access violation");
        }
    });

    criterion(8, "gaussian leakage obeys its ceiling, inverts to epsilon, and is monotone", 10.0, [&] {
        const SecuredScheme ss = secure(load_scheme_file(data_dir + "/example1.json"));
        const double grid[5] = {0.5, 1.0, 2.0, 4.0, 8.0};
        for (double sw : grid) {
            for (double sc : grid) {
                for (std::size_t k = 0; k < 4; ++k) {
                    const double exact = exact_leakage_gaussian(ss, k, sw, sc).nats;
                    const double bound = leakage_bound_real(ss, k, sw, sc).bound;
                    require(exact <= bound + 1e-9, "exact <= bound on the grid");
                }
            }
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const double sc = epsilon_to_sigma(ss, k, 1.0, 0.01);
            require(std::abs(leakage_bound_real(ss, k, 1.0, sc).bound - 0.01) <= 1e-9,
                    "epsilon inversion drives the bound to epsilon");
            double prev_exact = 1e308, prev_bound = 1e308;
            for (double sigma : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double exact = exact_leakage_gaussian(ss, k, 1.0, sigma).nats;
                const double bound = leakage_bound_real(ss, k, 1.0, sigma).bound;
                require(exact <= prev_exact + 1e-12 && bound <= prev_bound + 1e-12,
                        "non-increasing in sigma_c");
                prev_exact = exact;
                prev_bound = bound;
            }
        }
    });

    criterion(9, "securing preserves both costs on every pooled scheme", 300.0, [&] {
        std::vector<const Scheme*> all;
        for (const Scheme& s : pool.admissible) all.push_back(&s);
        for (const Scheme& s : pool.violating) all.push_back(&s);
        for (const Scheme* s : all) {
            const CostReport before = costs(*s);
            const SecuredScheme ss = make_secured(*s, null_space_basis(s->decoding));
            const CostReport after = costs(ss.base);
            require(before.comm_cost == after.comm_cost, "delta unchanged");
            require(before.comp_cost == after.comp_cost, "gamma unchanged");
        }
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criterion(s) failed\n", failures);
    return 1;
}
