#include "pvauction/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pvauction {

int pen_dline_indicator(Date commissioning, Date deadline_no_reduction) {
    return days_between(deadline_no_reduction, commissioning) > 0 ? 1 : 0;
}

int pen_loc_indicator(std::string_view loc_in, std::string_view loc_out) {
    return loc_in != loc_out ? 1 : 0;
}

AuctionAggregates aggregates_from_results(const AuctionResults& results, int auction_index) {
    const AuctionSpec* spec = results.find_auction(auction_index);
    if (!spec) throw ValidationError("aggregates_from_results: unknown auction " + std::to_string(auction_index));

    AuctionAggregates agg;
    agg.auction_index = auction_index;
    agg.date = spec->date;
    agg.pricing_rule = spec->pricing_rule;
    agg.tendered_kw = spec->tendered_capacity_kw;

    double weighted = 0;
    for (const auto& row : results.rows) {
        if (row.auction_index != auction_index) continue;
        agg.bid_kw += row.bid.capacity_kw;
        if (!row.awarded) continue;
        ++agg.awarded_bids;
        agg.awarded_kw += row.bid.capacity_kw;
        weighted += row.bid.capacity_kw * row.bid.price.to_double();
        if (!agg.mbid || row.bid.price > *agg.mbid) agg.mbid = row.bid.price;
        if (!agg.min_awarded || row.bid.price < *agg.min_awarded) agg.min_awarded = row.bid.price;
    }
    if (agg.awarded_kw > 0) agg.weighted_avg_bid = weighted / agg.awarded_kw;
    return agg;
}

std::vector<AuctionAggregates> all_aggregates(const AuctionResults& results) {
    std::vector<AuctionAggregates> out;
    out.reserve(results.auctions.size());
    for (const auto& a : results.auctions) out.push_back(aggregates_from_results(results, a.auction_index));
    return out;
}

std::vector<ProjectOutcome> project_outcomes(const std::vector<ProjectRecord>& projects,
                                             const std::vector<DeveloperProfile>& developers,
                                             const std::vector<AuctionAggregates>& aggregates,
                                             const std::vector<BidValueEstimate>& estimates,
                                             const AuctionResults& results,
                                             double small_threshold_kw) {
    if (!estimates.empty() && estimates.size() != projects.size())
        throw ValidationError("project_outcomes: estimates not aligned with projects");

    std::map<std::string, const DeveloperProfile*> profile_by_key;
    for (const auto& d : developers) profile_by_key[d.key] = &d;

    // First auction in which each developer won anything.
    std::map<std::string, int> first_auction_by_dev;
    for (const auto& p : projects) {
        auto it = first_auction_by_dev.find(p.developer_key);
        if (it == first_auction_by_dev.end() || p.auction_index < it->second)
            first_auction_by_dev[p.developer_key] = p.auction_index;
    }

    std::map<int, const AuctionAggregates*> agg_by_index;
    for (const auto& a : aggregates) agg_by_index[a.auction_index] = &a;

    std::vector<ProjectOutcome> outcomes;
    outcomes.reserve(projects.size());
    for (std::size_t i = 0; i < projects.size(); ++i) {
        const auto& p = projects[i];
        const AuctionSpec* spec = results.find_auction(p.auction_index);
        if (!spec) throw ValidationError("project_outcomes: unknown auction " + std::to_string(p.auction_index));

        ProjectOutcome o;
        o.project_id = p.project_id;
        o.auction_index = p.auction_index;
        o.capacity_kw = p.capacity_kw;
        o.developer_key = p.developer_key;
        o.status = p.status == ProjectStatus::Built ? 1 : 0;

        if (o.status) {
            if (!p.commissioning_date)
                throw ValidationError("project_outcomes: built project " +
                                      format_project_id(p.project_id) + " has no commissioning date");
            o.dur_days = days_between(spec->first_announcement, *p.commissioning_date);
            o.pen_dline = pen_dline_indicator(*p.commissioning_date, spec->deadline_no_reduction);
            o.pen_loc = pen_loc_indicator(p.loc_in, p.loc_out.value_or(p.loc_in));
            if (p.state) o.reg = is_southern(*p.state) ? 1 : 0;
        }

        auto first = first_auction_by_dev.find(p.developer_key);
        o.exp = (first != first_auction_by_dev.end() && first->second < p.auction_index) ? 1 : 0;
        o.new_dev = 1 - o.exp;

        auto profile = profile_by_key.find(p.developer_key);
        if (profile != profile_by_key.end()) {
            o.developer_size_kw = profile->second->size_kw;
            o.small_dev = profile->second->size_kw <= small_threshold_kw ? 1 : 0;
        }

        if (!estimates.empty()) {
            const auto& est = estimates[i];
            o.bv_net = est.consolidated_net;
            o.bv_full = est.consolidated_full;
            o.reliability = est.reliability;
            o.in_bid_value_sample = est.consolidated_full && (est.reliability == Reliability::Observed ||
                                                              est.reliability == Reliability::PropagatedFromBid);
            auto agg = agg_by_index.find(p.auction_index);
            if (est.consolidated_full && agg != agg_by_index.end() && agg->second->mbid)
                o.bmg = (*agg->second->mbid - *est.consolidated_full).to_double();
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

AuctionMetrics auction_metrics(const std::vector<ProjectOutcome>& outcomes,
                               const AuctionAggregates& aggregates,
                               const std::vector<PvCostIndexEntry>& pv_index) {
    AuctionMetrics m;
    m.auction_index = aggregates.auction_index;
    m.awarded_capacity_kw = aggregates.awarded_kw;
    m.tendered_kw = aggregates.tendered_kw;
    m.bid_capacity_kw = aggregates.bid_kw;

    for (const auto& o : outcomes) {
        if (o.auction_index != aggregates.auction_index) continue;
        if (o.status) {
            ++m.n_built;
            m.built_capacity_kw += o.capacity_kw;
            if (o.dur_days) {
                m.dur_sum_days += static_cast<double>(*o.dur_days);
                m.dur_capacity_weighted_sum += o.capacity_kw * static_cast<double>(*o.dur_days);
            }
            if (o.pen_dline) {
                ++m.n_late;
                m.late_capacity_kw += o.capacity_kw;
            }
            if (o.pen_loc) {
                ++m.n_relocated;
                m.relocated_capacity_kw += o.capacity_kw;
            }
        }
        if (o.bv_full && o.bv_net) {
            m.gap_sum += (*o.bv_full - *o.bv_net).to_double();
            ++m.n_gap;
        }
    }

    if (aggregates.awarded_kw > 0) m.rr = m.built_capacity_kw / aggregates.awarded_kw;
    if (m.n_built > 0) {
        m.dur_mean_days = m.dur_sum_days / static_cast<double>(m.n_built);
        m.dur_capacity_weighted_days = m.dur_capacity_weighted_sum / m.built_capacity_kw;
        m.bl = static_cast<double>(m.n_late) / static_cast<double>(m.n_built);
        m.lchg = static_cast<double>(m.n_relocated) / static_cast<double>(m.n_built);
        m.bl_capacity = m.late_capacity_kw / m.built_capacity_kw;
        m.lchg_capacity = m.relocated_capacity_kw / m.built_capacity_kw;
    }
    if (aggregates.tendered_kw > 0) m.bcr = aggregates.bid_kw / aggregates.tendered_kw;
    if (m.n_gap > 0) m.net_vs_full_gap = m.gap_sum / static_cast<double>(m.n_gap);

    // Module price index six months after the auction month.
    YearMonth lagged = add_months(month_of(aggregates.date), 6);
    for (const auto& e : pv_index)
        if (e.month == lagged) m.pvc6 = e.index_value;
    return m;
}

ProgrammeAggregate programme_aggregates(const std::vector<AuctionMetrics>& metrics,
                                        int from_auction, int to_auction) {
    ProgrammeAggregate agg;
    agg.from_auction = from_auction;
    agg.to_auction = to_auction;

    double awarded = 0, built = 0, dur_sum = 0, dur_cap_sum = 0;
    double late_cap = 0, reloc_cap = 0, gap_sum = 0;
    long n_built = 0, n_late = 0, n_reloc = 0, n_gap = 0;
    bool any = false;
    for (const auto& m : metrics) {
        if (m.auction_index < from_auction || m.auction_index > to_auction) continue;
        any = true;
        awarded += m.awarded_capacity_kw;
        built += m.built_capacity_kw;
        dur_sum += m.dur_sum_days;
        dur_cap_sum += m.dur_capacity_weighted_sum;
        late_cap += m.late_capacity_kw;
        reloc_cap += m.relocated_capacity_kw;
        gap_sum += m.gap_sum;
        n_built += m.n_built;
        n_late += m.n_late;
        n_reloc += m.n_relocated;
        n_gap += m.n_gap;
    }
    if (!any)
        throw ValidationError("programme_aggregates: no auction in range " +
                              std::to_string(from_auction) + ".." + std::to_string(to_auction));

    if (awarded > 0) agg.rr = built / awarded;
    if (n_built > 0) {
        agg.dur_mean_days = dur_sum / static_cast<double>(n_built);
        agg.dur_capacity_weighted_days = dur_cap_sum / built;
        agg.bl = static_cast<double>(n_late) / static_cast<double>(n_built);
        agg.lchg = static_cast<double>(n_reloc) / static_cast<double>(n_built);
        agg.bl_capacity = late_cap / built;
        agg.lchg_capacity = reloc_cap / built;
    }
    if (n_gap > 0) agg.net_vs_full_gap = gap_sum / static_cast<double>(n_gap);
    return agg;
}

}  // namespace pvauction
