#pragma once

// Auction mechanism: merit-order clearing, pay-as-bid / uniform pricing,
// bid bonds, non-compliance penalties, additive tariff reductions, and the
// yearly tender-volume carryover schedule.

#include <optional>
#include <vector>

#include "pvauction/registers.hpp"

namespace pvauction {

struct AwardedBid {
    BidId bid_id;
    double capacity_kw = 0;  // awarded capacity
    Deci4 price;             // submitted bid value
    Deci4 pay_tariff;        // what the bid is actually paid per kWh
};

struct AwardOutcome {
    int auction_index = 0;
    std::vector<AwardedBid> awarded_bids;
    double awarded_capacity_kw = 0;   // ac
    double total_bid_capacity_kw = 0;  // bc, admissible bids only
    std::optional<Deci4> max_awarded_bid;  // mbid
    std::optional<Deci4> min_awarded_bid;
    std::optional<double> weighted_avg_bid;  // capacity weighted, ct/kWh
};

struct BidRejection {
    BidId bid_id;
    std::string reason;
};

// What happens to the first bid that does not fit into the remaining volume.
// The regulation is silent; awarding it in full reproduces the observed
// over-awarding, the alternatives stay selectable.
enum class MarginalBidPolicy { AwardInFull, Curtail, Reject };

struct ClearingResult {
    AwardOutcome outcome;
    std::vector<BidRejection> rejections;
};

// Bids above the ceiling are rejected before clearing. Duplicate bid ids are
// an error. Result does not depend on the order of `bids`.
ClearingResult clear_auction(const AuctionSpec& spec, const std::vector<SubmittedBid>& bids,
                             MarginalBidPolicy policy = MarginalBidPolicy::AwardInFull);

struct SecuritySchedule {
    double first_eur_per_kw = 5;
    double second_eur_per_kw = 45;  // 15 with land-use documentation
    double total_eur_per_kw = 50;
};

SecuritySchedule security_schedule(const SubmittedBid& bid);
double bond_amount_eur(const SubmittedBid& bid);

struct PenaltyAssessment {
    double forfeited_first_security_eur = 0;
    double cancellation_penalty_eur = 0;
    Deci4 tariff_reduction;  // 0, 0.3 or 0.6 ct/kWh, applied to realised capacity
};

PenaltyAssessment assess_penalty(const SubmittedBid& bid, double realised_capacity_kw,
                                 bool second_security_paid, bool late, bool relocated);

struct TenderReductions {
    double eu_cross_border_kw = 0;
    double non_auction_large_pv_kw = 0;
    double neutral_auction_solar_kw = 0;  // enters with half weight
};

// Adds the prior-year shortfall and subtracts the reduction factors, both
// spread equally over the year's tender dates; volumes never go below zero.
std::vector<double> tender_schedule(const std::vector<double>& base_plan_kw,
                                    double prior_year_unawarded_kw,
                                    const TenderReductions& reductions);

}  // namespace pvauction
