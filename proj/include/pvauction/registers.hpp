#pragma once

// Canonical data model for the five public data sources and their CSV
// representations:
//
//   auction_results.csv   one row per submitted bid, with the auction header
//                         fields repeated per row
//   unit_register.csv     commissioned units (Marktstammdatenregister cut)
//   payments.csv          monthly TSO payment rows, four TSO files may be
//                         concatenated before or after loading
//   tariffs.csv           subsidy tariff catalogue
//   market_values.csv     monthly solar market values
//   pv_cost_index.csv     monthly module price index
//
// Loaders validate every row against the documented invariants. Rows that
// fail are never silently dropped: they are returned as diagnostics and
// input_rows == rows.size() + rejected.size() always holds.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pvauction/dates.hpp"
#include "pvauction/decimal.hpp"
#include "pvauction/errors.hpp"
#include "pvauction/ids.hpp"

namespace pvauction {

// ---------------------------------------------------------------------------
// German states and the north/south partition used by the regional indicator.

enum class State {
    BadenWuerttemberg,
    Bavaria,
    Berlin,
    Brandenburg,
    Bremen,
    Hamburg,
    Hesse,
    LowerSaxony,
    MecklenburgWesternPomerania,
    NorthRhineWestphalia,
    RhinelandPalatinate,
    Saarland,
    Saxony,
    SaxonyAnhalt,
    SchleswigHolstein,
    Thuringia,
};

std::string_view state_name(State s);
State parse_state(std::string_view name);  // throws ParseError
bool is_southern(State s);

// Optional fallback for unit rows missing the state column: longest postal
// prefix wins. File format: postal_prefix,state
struct StateMap {
    std::vector<std::pair<std::string, State>> prefixes;

    static StateMap load(const std::filesystem::path& path);
    std::optional<State> lookup(std::string_view postal_code) const;
};

// ---------------------------------------------------------------------------
// Domain rows.

enum class PricingRule { PayAsBid, UniformPrice };

std::string_view pricing_rule_name(PricingRule r);
PricingRule parse_pricing_rule(std::string_view text);

struct AuctionSpec {
    int auction_index = 0;  // AU1...
    Date date{};
    double tendered_capacity_kw = 0;
    PricingRule pricing_rule = PricingRule::PayAsBid;
    Deci4 ceiling_price;
    Date first_announcement{};
    Date final_announcement{};      // first + 7 days
    Date deadline_no_reduction{};   // final + 18 calendar months
    Date deadline_expiry{};         // final + 24 calendar months

    // Fills the three derived dates from first_announcement.
    void derive_deadlines();
};

struct SubmittedBid {
    BidId bid_id;
    std::string developer_name;
    std::string developer_address;
    double capacity_kw = 0;  // 750..10,000
    Deci4 price;             // ct/kWh
    std::string postal_code;  // 5 digits, planned site
    bool land_use_docs = false;
};

struct ResultRow {
    int auction_index = 0;
    SubmittedBid bid;
    bool awarded = false;
};

struct AuctionResults {
    std::vector<AuctionSpec> auctions;  // ascending auction_index
    std::vector<ResultRow> rows;

    const AuctionSpec* find_auction(int auction_index) const;
};

struct UnitRecord {
    UnitId unit_id;
    std::optional<BidId> bid_id;
    double capacity_kw = 0;
    Date commissioning_date{};
    std::string postal_code;  // 5 digits, final site
    State state = State::Bavaria;
    std::string developer_address;
};

struct PaymentRecord {
    UnitId unit_id;
    YearMonth month;
    std::string tariff_id;
    double generation_kwh = 0;
    double payment_ct = 0;  // gross payment in currency subunits (ct)
};

enum class TariffCategory { MarketPremium, SidePayment };

struct TariffEntry {
    std::string tariff_id;
    std::string description;
    TariffCategory category = TariffCategory::MarketPremium;
};

struct MarketValue {
    YearMonth month;
    Deci4 value;  // ct/kWh, may be negative
};

struct PvCostIndexEntry {
    YearMonth month;
    double index_value = 0;
};

// ---------------------------------------------------------------------------
// Loading.

struct RowDiagnostic {
    std::size_t line = 0;  // 1-based line in the source file
    std::string field;
    std::string message;
};

template <typename Row>
struct LoadResult {
    std::vector<Row> rows;
    std::vector<RowDiagnostic> rejected;
    std::size_t input_rows = 0;

    bool clean() const { return rejected.empty(); }
};

// Raises ValidationError summarising up to the first few diagnostics.
void throw_if_rejected(const std::vector<RowDiagnostic>& rejected, const std::string& file);

struct AuctionResultsLoad {
    AuctionResults data;
    std::vector<RowDiagnostic> rejected;
    std::size_t input_rows = 0;

    bool clean() const { return rejected.empty(); }
};

AuctionResultsLoad load_auction_results(const std::filesystem::path& path);
LoadResult<UnitRecord> load_unit_register(const std::filesystem::path& path,
                                          const StateMap* state_fallback = nullptr);
// Concatenates the per-TSO files; the duplicate-key check spans all of them.
LoadResult<PaymentRecord> load_payments(const std::vector<std::filesystem::path>& paths);
LoadResult<TariffEntry> load_tariffs(const std::filesystem::path& path);
LoadResult<MarketValue> load_market_values(const std::filesystem::path& path);
LoadResult<PvCostIndexEntry> load_pv_cost_index(const std::filesystem::path& path);

}  // namespace pvauction
