#pragma once

// The H0 suite: rank tests on duration and subsidy level by location change,
// region and experience, entry-barrier share trends, the size-accuracy
// correlation, and the competition/cost regression.

#include <optional>
#include <string>
#include <vector>

#include "pvauction/metrics.hpp"
#include "pvauction/stats.hpp"

namespace pvauction {

enum class SuiteStatus { Tested, Untestable };

struct SuiteEntry {
    std::string id;       // "H05.1" ...
    std::string measure;  // what is compared
    std::string method;
    std::string sample_filter;
    SuiteStatus status = SuiteStatus::Untestable;
    double statistic = 0;  // U for rank tests, r for correlations, F for the regression
    double p_value = 1;
    std::vector<double> group_means;
    std::vector<std::size_t> group_ns;
    std::string note;

    bool reject_at(double alpha) const { return status == SuiteStatus::Tested && p_value < alpha; }
};

struct AuctionShare {
    int auction_index = 0;
    std::optional<double> new_share;
    std::optional<double> small_share;
};

struct SuiteResult {
    std::vector<SuiteEntry> entries;
    std::optional<RegressionResult> regression;
    std::vector<AuctionShare> shares;  // per-auction new/small developer shares
};

SuiteResult hypothesis_suite(const std::vector<ProjectOutcome>& outcomes,
                             const std::vector<AuctionMetrics>& metrics);

}  // namespace pvauction
