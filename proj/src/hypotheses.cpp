#include "pvauction/hypotheses.hpp"

#include <algorithm>
#include <map>

namespace pvauction {

namespace {

SuiteEntry rank_entry(std::string id, std::string measure, std::string filter,
                      const std::vector<double>& group1, const std::vector<double>& group0) {
    SuiteEntry e;
    e.id = std::move(id);
    e.measure = std::move(measure);
    e.sample_filter = std::move(filter);
    if (group1.empty() || group0.empty()) {
        e.method = "mann_whitney";
        e.note = "insufficient group sizes (" + std::to_string(group1.size()) + "/" +
                 std::to_string(group0.size()) + ")";
        return e;
    }
    RankTestResult r = mann_whitney(group1, group0);
    e.method = r.method == RankPMethod::ExactEnumeration ? "mann_whitney_exact" : "mann_whitney_normal";
    e.status = SuiteStatus::Tested;
    e.statistic = r.u;
    e.p_value = r.p_value;
    e.group_means = {r.mean_a, r.mean_b};
    e.group_ns = {r.n_a, r.n_b};
    return e;
}

SuiteEntry correlation_entry(std::string id, std::string measure, std::string filter,
                             const std::vector<double>& x, const std::vector<double>& y) {
    SuiteEntry e;
    e.id = std::move(id);
    e.measure = std::move(measure);
    e.sample_filter = std::move(filter);
    e.method = "pearson";
    try {
        CorrelationResult r = pearson_test(x, y);
        e.status = SuiteStatus::Tested;
        e.statistic = r.r;
        e.p_value = r.p_value;
        e.group_means = {mean_of(x), mean_of(y)};
        e.group_ns = {r.n, r.n};
    } catch (const ValidationError& err) {
        e.note = err.what();
    }
    return e;
}

}  // namespace

SuiteResult hypothesis_suite(const std::vector<ProjectOutcome>& outcomes,
                             const std::vector<AuctionMetrics>& metrics) {
    SuiteResult result;

    // Built projects with a duration.
    auto split_duration = [&](auto indicator) {
        std::pair<std::vector<double>, std::vector<double>> groups;
        for (const auto& o : outcomes) {
            if (!o.status || !o.dur_days) continue;
            auto flag = indicator(o);
            if (!flag) continue;
            (*flag ? groups.first : groups.second).push_back(static_cast<double>(*o.dur_days));
        }
        return groups;
    };
    // Bid-value sample (observed or propagated, uniform-price auctions out).
    auto split_value = [&](auto indicator, auto value) {
        std::pair<std::vector<double>, std::vector<double>> groups;
        for (const auto& o : outcomes) {
            if (!o.in_bid_value_sample) continue;
            auto v = value(o);
            if (!v) continue;
            auto flag = indicator(o);
            if (!flag) continue;
            (*flag ? groups.first : groups.second).push_back(*v);
        }
        return groups;
    };

    auto by_loc = [](const ProjectOutcome& o) { return std::optional<int>(o.pen_loc); };
    auto by_reg = [](const ProjectOutcome& o) { return o.reg; };
    auto by_exp = [](const ProjectOutcome& o) { return std::optional<int>(o.exp); };
    auto bmg_of = [](const ProjectOutcome& o) { return o.bmg; };
    auto full_of = [](const ProjectOutcome& o) -> std::optional<double> {
        if (!o.bv_full) return std::nullopt;
        return o.bv_full->to_double();
    };

    {
        auto [g1, g0] = split_duration(by_loc);
        result.entries.push_back(rank_entry("H05.1", "duration by location change",
                                            "built projects", g1, g0));
    }
    {
        auto [g1, g0] = split_value(by_loc, bmg_of);
        result.entries.push_back(rank_entry("H05.2", "distance to marginal bid by location change",
                                            "bid-value sample", g1, g0));
    }
    {
        auto [g1, g0] = split_duration(by_reg);
        result.entries.push_back(rank_entry("H05.3", "duration by region (south=1)",
                                            "built projects", g1, g0));
    }
    {
        auto [g1, g0] = split_value(by_reg, full_of);
        result.entries.push_back(rank_entry("H05.4", "full bid value by region (south=1)",
                                            "bid-value sample", g1, g0));
    }

    // Entry-barrier share series per auction.
    std::map<int, std::pair<long, long>> new_counts;    // auction -> (new, total)
    std::map<int, std::pair<long, long>> small_counts;
    for (const auto& o : outcomes) {
        auto& nc = new_counts[o.auction_index];
        nc.first += o.new_dev;
        ++nc.second;
        auto& sc = small_counts[o.auction_index];
        sc.first += o.small_dev;
        ++sc.second;
    }
    std::vector<double> auction_axis, new_share, small_share;
    for (const auto& [idx, nc] : new_counts) {
        AuctionShare share;
        share.auction_index = idx;
        if (nc.second > 0) share.new_share = static_cast<double>(nc.first) / static_cast<double>(nc.second);
        const auto& sc = small_counts[idx];
        if (sc.second > 0)
            share.small_share = static_cast<double>(sc.first) / static_cast<double>(sc.second);
        result.shares.push_back(share);
        if (share.new_share && share.small_share) {
            auction_axis.push_back(static_cast<double>(idx));
            new_share.push_back(*share.new_share);
            small_share.push_back(*share.small_share);
        }
    }
    result.entries.push_back(correlation_entry("H06.1", "trend of new-developer share over auctions",
                                               "awarded projects per auction", auction_axis, new_share));
    result.entries.push_back(correlation_entry("H06.2", "trend of small-developer share over auctions",
                                               "awarded projects per auction", auction_axis, small_share));

    {
        std::vector<double> size, bmg;
        for (const auto& o : outcomes) {
            if (!o.in_bid_value_sample || !o.bmg) continue;
            size.push_back(o.developer_size_kw);
            bmg.push_back(*o.bmg);
        }
        result.entries.push_back(correlation_entry(
            "H06.3", "developer size vs distance to marginal bid", "bid-value sample", size, bmg));
    }
    {
        auto [g1, g0] = split_duration(by_exp);
        result.entries.push_back(rank_entry("H06.4", "duration by developer experience",
                                            "built projects", g1, g0));
    }
    {
        auto [g1, g0] = split_value(by_exp, full_of);
        result.entries.push_back(rank_entry("H06.5", "full bid value by developer experience",
                                            "bid-value sample", g1, g0));
    }

    // H07: regression of full bid values on normalized module cost index and
    // bid-to-cover ratio of the project's auction.
    {
        std::map<int, const AuctionMetrics*> by_auction;
        for (const auto& m : metrics) by_auction[m.auction_index] = &m;
        std::vector<double> y, pvc6, bcr;
        for (const auto& o : outcomes) {
            if (!o.in_bid_value_sample || !o.bv_full) continue;
            auto it = by_auction.find(o.auction_index);
            if (it == by_auction.end() || !it->second->pvc6 || !it->second->bcr) continue;
            y.push_back(o.bv_full->to_double());
            pvc6.push_back(*it->second->pvc6);
            bcr.push_back(*it->second->bcr);
        }
        SuiteEntry e;
        e.id = "H07";
        e.measure = "full bid value on normalized Pvc6+ and Bcr";
        e.method = "ols_normalized";
        e.sample_filter = "bid-value sample with module index and bid-to-cover ratio";
        try {
            RegressionResult reg = ols_normalized(y, pvc6, bcr);
            e.status = SuiteStatus::Tested;
            e.statistic = reg.f_statistic;
            e.p_value = reg.f_p_value;
            e.group_means = {reg.intercept, reg.beta_pvc6, reg.beta_bcr};
            e.group_ns = {reg.n};
            result.regression = reg;
        } catch (const ValidationError& err) {
            e.note = err.what();
        }
        result.entries.push_back(std::move(e));
    }
    return result;
}

}  // namespace pvauction
