#include "pvauction/clearing.hpp"

#include <algorithm>
#include <set>

namespace pvauction {

ClearingResult clear_auction(const AuctionSpec& spec, const std::vector<SubmittedBid>& bids,
                             MarginalBidPolicy policy) {
    ClearingResult result;
    result.outcome.auction_index = spec.auction_index;

    std::set<std::string> seen;
    for (const auto& b : bids) {
        std::string key = format_bid_id(b.bid_id);
        if (!seen.insert(key).second)
            throw ValidationError("clear_auction: duplicate bid id '" + key + "'");
    }

    std::vector<const SubmittedBid*> admissible;
    admissible.reserve(bids.size());
    for (const auto& b : bids) {
        if (b.price > spec.ceiling_price) {
            result.rejections.push_back({b.bid_id, "price " + b.price.str() + " above ceiling " +
                                                       spec.ceiling_price.str()});
        } else {
            admissible.push_back(&b);
            result.outcome.total_bid_capacity_kw += b.capacity_kw;
        }
    }

    // Merit order: price, then smaller capacity, then arrival sequence.
    std::sort(admissible.begin(), admissible.end(), [](const SubmittedBid* a, const SubmittedBid* b) {
        if (a->price != b->price) return a->price < b->price;
        if (a->capacity_kw != b->capacity_kw) return a->capacity_kw < b->capacity_kw;
        return a->bid_id < b->bid_id;
    });

    double remaining = spec.tendered_capacity_kw;
    for (const SubmittedBid* b : admissible) {
        if (remaining <= 0) break;
        double award_kw = b->capacity_kw;
        if (b->capacity_kw > remaining) {
            if (policy == MarginalBidPolicy::Reject) break;
            if (policy == MarginalBidPolicy::Curtail) award_kw = remaining;
        }
        result.outcome.awarded_bids.push_back({b->bid_id, award_kw, b->price, b->price});
        remaining -= b->capacity_kw;
    }

    auto& out = result.outcome;
    if (!out.awarded_bids.empty()) {
        Deci4 max_bid = out.awarded_bids.front().price;
        Deci4 min_bid = max_bid;
        double weighted = 0;
        for (const auto& a : out.awarded_bids) {
            out.awarded_capacity_kw += a.capacity_kw;
            max_bid = std::max(max_bid, a.price);
            min_bid = std::min(min_bid, a.price);
            weighted += a.capacity_kw * a.price.to_double();
        }
        out.max_awarded_bid = max_bid;
        out.min_awarded_bid = min_bid;
        out.weighted_avg_bid = weighted / out.awarded_capacity_kw;
        if (spec.pricing_rule == PricingRule::UniformPrice)
            for (auto& a : out.awarded_bids) a.pay_tariff = max_bid;
    }
    return result;
}

SecuritySchedule security_schedule(const SubmittedBid& bid) {
    SecuritySchedule s;
    if (bid.land_use_docs) {
        s.second_eur_per_kw = 15;
        s.total_eur_per_kw = 20;
    }
    return s;
}

double bond_amount_eur(const SubmittedBid& bid) {
    return security_schedule(bid).total_eur_per_kw * bid.capacity_kw;
}

PenaltyAssessment assess_penalty(const SubmittedBid& bid, double realised_capacity_kw,
                                 bool second_security_paid, bool late, bool relocated) {
    if (realised_capacity_kw > bid.capacity_kw)
        throw ValidationError("assess_penalty: realised capacity " +
                              std::to_string(realised_capacity_kw) + " exceeds bid capacity " +
                              std::to_string(bid.capacity_kw));
    PenaltyAssessment p;
    if (!second_security_paid) {
        // Award expires; only the initial security is lost.
        p.forfeited_first_security_eur = 5.0 * bid.capacity_kw;
        return p;
    }
    double cancelled_kw = bid.capacity_kw - realised_capacity_kw;
    if (cancelled_kw >= 0.05 * bid.capacity_kw) {
        double rate = bid.land_use_docs ? 25.0 : 50.0;
        p.cancellation_penalty_eur = rate * cancelled_kw;
    }
    Deci4 step = Deci4::parse("0.3");
    if (late) p.tariff_reduction += step;
    if (relocated) p.tariff_reduction += step;
    return p;
}

std::vector<double> tender_schedule(const std::vector<double>& base_plan_kw,
                                    double prior_year_unawarded_kw,
                                    const TenderReductions& reductions) {
    if (base_plan_kw.empty()) throw ValidationError("tender_schedule: empty base plan");
    for (double v : base_plan_kw)
        if (v < 0) throw ValidationError("tender_schedule: negative base volume");
    if (prior_year_unawarded_kw < 0)
        throw ValidationError("tender_schedule: negative prior-year shortfall");
    if (reductions.eu_cross_border_kw < 0 || reductions.non_auction_large_pv_kw < 0 ||
        reductions.neutral_auction_solar_kw < 0)
        throw ValidationError("tender_schedule: negative reduction factor");

    double total_reduction = reductions.eu_cross_border_kw + reductions.non_auction_large_pv_kw +
                             0.5 * reductions.neutral_auction_solar_kw;
    double per_date = (prior_year_unawarded_kw - total_reduction) / static_cast<double>(base_plan_kw.size());

    std::vector<double> adjusted;
    adjusted.reserve(base_plan_kw.size());
    for (double v : base_plan_kw) adjusted.push_back(std::max(0.0, v + per_date));
    return adjusted;
}

}  // namespace pvauction
