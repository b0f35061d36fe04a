#pragma once

// Unit-identification pipeline: match awarded bids to commissioned units,
// attach TSO payment streams, keep only regular market-premium payments,
// invert the sliding premium into net/full bid values and consolidate them
// per project and per bid. Address-based developer aggregation lives here
// as well.
//
// The per-project reconstruction loop is data-parallel; the OpenMP variant
// must produce byte-identical results to the serial reference, which tests
// assert.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvauction/registers.hpp"

namespace pvauction {

enum class ProjectStatus { Built, NotFound };

std::string_view project_status_name(ProjectStatus s);

struct ProjectRecord {
    ProjectId project_id;
    BidId bid_id;
    int auction_index = 0;
    std::optional<UnitId> unit_id;
    ProjectStatus status = ProjectStatus::NotFound;
    double capacity_kw = 0;
    std::optional<Date> commissioning_date;
    std::string loc_in;                    // postal code from the bid
    std::optional<std::string> loc_out;    // postal code of the unit
    std::optional<State> state;
    std::string developer_key;
};

enum class Reliability { Observed, PropagatedFromBid, Unreliable, ZeroPremium, Excluded };

std::string_view reliability_name(Reliability r);

struct MonthlyValue {
    YearMonth month;
    double mp = 0;       // effective market premium, ct/kWh
    double bv_net = 0;   // mp + market value
    double bv_full = 0;  // bv_net + 0.3 per penalty indicator
};

struct BidValueEstimate {
    ProjectId project_id;
    int auction_index = 0;
    std::vector<MonthlyValue> monthly;  // positive-premium months, ascending
    std::optional<Deci4> consolidated_net;
    std::optional<Deci4> consolidated_full;
    Reliability reliability = Reliability::Unreliable;
    bool has_payments = false;
    int zero_premium_months = 0;
    int months_without_market_value = 0;
    int zero_generation_rows = 0;
};

struct DeveloperProfile {
    std::string key;  // normalized address (or name-keyed fallback)
    std::string canonical_address;
    std::vector<std::string> member_names;  // distinct raw developer names
    std::vector<ProjectId> projects;        // all identified projects (J^d)
    double size_kw = 0;                     // built capacity, programme-wide
};

// ---------------------------------------------------------------------------
// Step 1: identify projects.

std::vector<ProjectRecord> identify_projects(const AuctionResults& results,
                                             const std::vector<UnitRecord>& units,
                                             std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Step 2: attach payment streams (index-aligned with `projects`).

std::vector<std::vector<PaymentRecord>> attach_payments(
    const std::vector<ProjectRecord>& projects, const std::vector<PaymentRecord>& payments);

// ---------------------------------------------------------------------------
// Step 3: clean and invert.

// Keeps rows whose tariff is the regular market premium. Throws on tariff ids
// missing from the register.
std::vector<PaymentRecord> select_market_premium(const std::vector<PaymentRecord>& stream,
                                                 const std::vector<TariffEntry>& tariffs);

// payment / generation in ct/kWh; nullopt when generation is zero.
std::optional<double> effective_premium(const PaymentRecord& row);

double net_bid_value(double mp, Deci4 market_value);
double full_bid_value(double bv_net, int pen_loc, int pen_dline);

enum class Exec { Serial, Parallel };

struct LinkageOptions {
    double tau = 0.005;  // ct/kWh, time-invariance tolerance
    Exec exec = Exec::Parallel;
};

// Steps 3.1-3.3 for every project: monthly premium, net and full bid values.
// Only months with a strictly positive premium and a known market value enter
// `monthly`; the rest are counted on the estimate.
std::vector<BidValueEstimate> monthly_bid_values(const std::vector<ProjectRecord>& projects,
                                                 const std::vector<std::vector<PaymentRecord>>& streams,
                                                 const std::vector<TariffEntry>& tariffs,
                                                 const std::vector<MarketValue>& market_values,
                                                 const AuctionResults& results,
                                                 const LinkageOptions& options = {});

// Consolidation: per-project time invariance within tau, per-bid propagation,
// uniform-price exclusion. Mutates the estimates in place.
void consolidate_bid_values(std::vector<BidValueEstimate>& estimates,
                            const std::vector<ProjectRecord>& projects,
                            const AuctionResults& results, double tau,
                            std::vector<std::string>* diagnostics = nullptr);

// ---------------------------------------------------------------------------
// Developer aggregation.

std::string normalize_address(std::string_view address);

std::vector<DeveloperProfile> aggregate_developers(const AuctionResults& results,
                                                   const std::vector<ProjectRecord>& projects,
                                                   std::vector<std::string>* warnings = nullptr);
// Spec-shaped overload: identifies projects internally.
std::vector<DeveloperProfile> aggregate_developers(const AuctionResults& results,
                                                   const std::vector<UnitRecord>& units,
                                                   std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Whole pipeline, as driven by `link`.

struct PipelineCounts {
    int auction_index = 0;
    std::size_t awarded_bids = 0;
    std::size_t awarded_projects = 0;
    std::size_t built_projects = 0;
    std::size_t unit_ids = 0;
    std::size_t payments_found = 0;
    std::size_t reliable_values = 0;
    std::size_t final_bid_values = 0;  // consolidated value present
};

struct LinkageOutput {
    std::vector<ProjectRecord> projects;
    std::vector<BidValueEstimate> estimates;
    std::vector<DeveloperProfile> developers;
    std::vector<PipelineCounts> counts;
    std::vector<std::string> warnings;
};

LinkageOutput run_linkage(const AuctionResults& results, const std::vector<UnitRecord>& units,
                          const std::vector<PaymentRecord>& payments,
                          const std::vector<TariffEntry>& tariffs,
                          const std::vector<MarketValue>& market_values,
                          const LinkageOptions& options = {});

}  // namespace pvauction
