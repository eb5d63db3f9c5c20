#include "seclin/secrecy.hpp"

namespace seclin {

std::vector<std::size_t> reduced_decoder_ranks(const Matrix& decoding) {
    std::vector<std::size_t> ranks;
    ranks.reserve(decoding.rows());
    for (std::size_t k = 0; k < decoding.rows(); ++k) {
        ranks.push_back(rank(delete_cols(decoding, decoding.row_support(k))));
    }
    return ranks;
}

std::vector<RankCheck> check_reduced_rank(const Scheme& s) {
    std::vector<RankCheck> out;
    for (std::size_t r : reduced_decoder_ranks(s.decoding)) {
        out.push_back(RankCheck{r, r + 1 >= s.users});
    }
    return out;
}

std::vector<RankCheck> check_randomness_rank(const SecuredScheme& ss) {
    std::vector<RankCheck> out;
    const Scheme& s = ss.base;
    for (std::size_t k = 0; k < s.users; ++k) {
        const IndexSet sources = s.decoding.row_support(k);
        const std::size_t r = rank(select_rows(ss.randomness_coeffs, sources));
        out.push_back(RankCheck{r, r + 1 == sources.size()});
    }
    return out;
}

std::vector<bool> check_access_bound(const Scheme& s) {
    std::vector<bool> out;
    const std::size_t limit = s.servers - s.users + 1;
    for (std::size_t k = 0; k < s.users; ++k) {
        out.push_back(s.decoding.row_support(k).size() <= limit);
    }
    return out;
}

CostBoundCheck check_cost_bound(const Scheme& s) {
    CostBoundCheck c;
    c.comm_cost = costs(s).comm_cost;
    c.limit = 1 - mpq_class(static_cast<unsigned long>(s.users - 1),
                            static_cast<unsigned long>(s.servers));
    c.limit.canonicalize();
    c.ok = c.comm_cost <= c.limit;
    return c;
}

bool SecrecyReport::all_ok() const {
    if (!cost_bound.ok) return false;
    for (const UserSecrecy& u : per_user) {
        if (!u.reduced_rank_ok || !u.access_bound_ok) return false;
        if (has_randomness && u.randomness_status != RandomnessRankStatus::ok) return false;
    }
    return true;
}

namespace {

SecrecyReport build_report(const Scheme& s, const SecuredScheme* ss) {
    SecrecyReport rep;
    rep.has_randomness = ss != nullptr;
    rep.cost_bound = check_cost_bound(s);

    const auto reduced = check_reduced_rank(s);
    const auto bound = check_access_bound(s);
    const auto nondeg = check_nondegeneracy(s);
    std::vector<RankCheck> rnd;
    if (ss) rnd = check_randomness_rank(*ss);

    for (std::size_t k = 0; k < s.users; ++k) {
        UserSecrecy u;
        u.user = k;
        u.access_count = s.decoding.row_support(k).size();
        u.reduced_rank = reduced[k].rank;
        u.reduced_rank_ok = reduced[k].ok;
        u.access_limit = s.servers - s.users + 1;
        u.access_bound_ok = bound[k];
        u.nondegenerate = nondeg[k];
        if (ss) {
            u.randomness_rank = rnd[k].rank;
            u.randomness_required = u.access_count - (u.access_count > 0 ? 1 : 0);
            if (rnd[k].rank == u.randomness_required) {
                u.randomness_status = RandomnessRankStatus::ok;
            } else if (rnd[k].rank < u.randomness_required) {
                u.randomness_status = RandomnessRankStatus::deficient;
            } else {
                u.randomness_status = RandomnessRankStatus::inconsistent;
            }
        }
        rep.per_user.push_back(u);
    }
    return rep;
}

const char* status_name(RandomnessRankStatus s) {
    switch (s) {
        case RandomnessRankStatus::ok: return "ok";
        case RandomnessRankStatus::deficient: return "deficient";
        case RandomnessRankStatus::inconsistent: return "inconsistent";
        default: return "not_applicable";
    }
}

} // namespace

SecrecyReport full_report(const Scheme& s) { return build_report(s, nullptr); }

SecrecyReport full_report(const SecuredScheme& ss) { return build_report(ss.base, &ss); }

nlohmann::ordered_json secrecy_report_to_json(const SecrecyReport& r) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json users = nlohmann::ordered_json::array();
    for (const UserSecrecy& u : r.per_user) {
        nlohmann::ordered_json j;
        j["user"] = u.user + 1; // reports are one-based
        j["w_H"] = u.access_count;
        j["reduced_rank"] = u.reduced_rank;
        j["reduced_rank_required"] = r.per_user.size() - 1;
        j["reduced_rank_ok"] = u.reduced_rank_ok;
        j["access_limit"] = u.access_limit;
        j["access_bound_ok"] = u.access_bound_ok;
        j["nondegenerate"] = u.nondegenerate;
        if (r.has_randomness) {
            j["randomness_rank"] = u.randomness_rank;
            j["randomness_rank_required"] = u.randomness_required;
            j["randomness_status"] = status_name(u.randomness_status);
            j["randomness_rank_ok"] = u.randomness_status == RandomnessRankStatus::ok;
        }
        users.push_back(std::move(j));
    }
    doc["per_user"] = std::move(users);
    doc["global"]["delta"] = r.cost_bound.comm_cost.get_str();
    doc["global"]["delta_limit"] = r.cost_bound.limit.get_str();
    doc["global"]["cost_bound_ok"] = r.cost_bound.ok;
    doc["all_ok"] = r.all_ok();
    return doc;
}

} // namespace seclin
