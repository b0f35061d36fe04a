#pragma once

// Derived project variables (duration, penalty indicators, region, developer
// experience/size) and the per-auction and programme-level aggregates built
// from them.

#include <optional>
#include <vector>

#include "pvauction/linkage.hpp"
#include "pvauction/registers.hpp"

namespace pvauction {

// Penalty indicators shared by metrics and the bid-value inversion.
int pen_dline_indicator(Date commissioning, Date deadline_no_reduction);
int pen_loc_indicator(std::string_view loc_in, std::string_view loc_out);

struct ProjectOutcome {
    ProjectId project_id;
    int auction_index = 0;
    int status = 0;  // 1 = built
    double capacity_kw = 0;
    std::optional<long> dur_days;
    int pen_dline = 0;
    int pen_loc = 0;
    std::optional<int> reg;  // 1 = southern state, absent when not built
    int exp = 0;
    int new_dev = 1;  // 1 - exp
    int small_dev = 0;
    std::optional<double> bmg;  // mbid^a - BV_full, ct/kWh
    std::optional<Deci4> bv_net;
    std::optional<Deci4> bv_full;
    Reliability reliability = Reliability::Unreliable;
    bool in_bid_value_sample = false;  // Observed or PropagatedFromBid
    std::string developer_key;
    double developer_size_kw = 0;
};

// Published-side aggregates of one auction, recomputed from the results rows.
struct AuctionAggregates {
    int auction_index = 0;
    Date date{};
    PricingRule pricing_rule = PricingRule::PayAsBid;
    double tendered_kw = 0;
    double awarded_kw = 0;  // ac
    double bid_kw = 0;      // bc
    std::size_t awarded_bids = 0;
    std::optional<Deci4> mbid;
    std::optional<Deci4> min_awarded;
    std::optional<double> weighted_avg_bid;
};

AuctionAggregates aggregates_from_results(const AuctionResults& results, int auction_index);
std::vector<AuctionAggregates> all_aggregates(const AuctionResults& results);

std::vector<ProjectOutcome> project_outcomes(const std::vector<ProjectRecord>& projects,
                                             const std::vector<DeveloperProfile>& developers,
                                             const std::vector<AuctionAggregates>& aggregates,
                                             const std::vector<BidValueEstimate>& estimates,
                                             const AuctionResults& results,
                                             double small_threshold_kw = 2000.0);

struct AuctionMetrics {
    int auction_index = 0;
    std::optional<double> rr;
    std::optional<double> dur_mean_days;
    std::optional<double> dur_capacity_weighted_days;
    std::optional<double> bl;
    std::optional<double> lchg;
    std::optional<double> bl_capacity;
    std::optional<double> lchg_capacity;
    std::optional<double> bcr;
    std::optional<double> pvc6;
    std::optional<double> net_vs_full_gap;  // mean consolidated full - net

    // Raw sums kept so ranges pool exactly.
    double awarded_capacity_kw = 0;
    double tendered_kw = 0;
    double bid_capacity_kw = 0;
    double built_capacity_kw = 0;
    long n_built = 0;
    long n_late = 0;
    long n_relocated = 0;
    double late_capacity_kw = 0;
    double relocated_capacity_kw = 0;
    double dur_sum_days = 0;
    double dur_capacity_weighted_sum = 0;  // sum cap_i * dur_i
    double gap_sum = 0;
    long n_gap = 0;
};

AuctionMetrics auction_metrics(const std::vector<ProjectOutcome>& outcomes,
                               const AuctionAggregates& aggregates,
                               const std::vector<PvCostIndexEntry>& pv_index);

struct ProgrammeAggregate {
    int from_auction = 0;
    int to_auction = 0;
    std::optional<double> rr;
    std::optional<double> dur_mean_days;
    std::optional<double> dur_capacity_weighted_days;
    std::optional<double> bl;
    std::optional<double> lchg;
    std::optional<double> bl_capacity;
    std::optional<double> lchg_capacity;
    std::optional<double> net_vs_full_gap;
};

// Pools the metrics of auctions with from <= index <= to. Throws when the
// range covers no auction.
ProgrammeAggregate programme_aggregates(const std::vector<AuctionMetrics>& metrics,
                                        int from_auction, int to_auction);

}  // namespace pvauction
