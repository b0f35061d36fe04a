#include "pvauction/registers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "pvauction/csv.hpp"

namespace pvauction {

namespace {

struct StateNames {
    State state;
    std::string_view name;
};

constexpr StateNames kStates[] = {
    {State::BadenWuerttemberg, "Baden-Wuerttemberg"},
    {State::Bavaria, "Bavaria"},
    {State::Berlin, "Berlin"},
    {State::Brandenburg, "Brandenburg"},
    {State::Bremen, "Bremen"},
    {State::Hamburg, "Hamburg"},
    {State::Hesse, "Hesse"},
    {State::LowerSaxony, "Lower Saxony"},
    {State::MecklenburgWesternPomerania, "Mecklenburg-Western Pomerania"},
    {State::NorthRhineWestphalia, "North-Rhine Westphalia"},
    {State::RhinelandPalatinate, "Rhineland-Palatinate"},
    {State::Saarland, "Saarland"},
    {State::Saxony, "Saxony"},
    {State::SaxonyAnhalt, "Saxony-Anhalt"},
    {State::SchleswigHolstein, "Schleswig-Holstein"},
    {State::Thuringia, "Thuringia"},
};

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

double parse_double_strict(std::string_view s, const char* what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(std::string(what) + ": not a number '" + std::string(s) + "'");
    return v;
}

long parse_long_strict(std::string_view s, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(std::string(what) + ": not an integer '" + std::string(s) + "'");
    return v;
}

bool parse_bool(std::string_view s, const char* what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ParseError(std::string(what) + ": expected true/false, got '" + std::string(s) + "'");
}

// Runs `fn` over every row; a ParseError/ValidationError from the row handler
// becomes a diagnostic instead of aborting the load.
template <typename Fn>
void for_each_row(const CsvTable& t, std::vector<RowDiagnostic>& rejected, Fn&& fn) {
    for (std::size_t r = 0; r < t.rows(); ++r) {
        try {
            fn(r);
        } catch (const ParseError& e) {
            rejected.push_back({t.line_of(r), "", e.what()});
        } catch (const ValidationError& e) {
            rejected.push_back({t.line_of(r), "", e.what()});
        }
    }
}

}  // namespace

std::string_view state_name(State s) {
    for (const auto& e : kStates)
        if (e.state == s) return e.name;
    return "?";
}

State parse_state(std::string_view name) {
    for (const auto& e : kStates)
        if (e.name == name) return e.state;
    throw ParseError("state: unknown state '" + std::string(name) + "'");
}

bool is_southern(State s) {
    switch (s) {
        case State::BadenWuerttemberg:
        case State::Bavaria:
        case State::Hesse:
        case State::RhinelandPalatinate:
        case State::Thuringia:
        case State::Saarland:
        case State::Saxony:
            return true;
        default:
            return false;
    }
}

StateMap StateMap::load(const std::filesystem::path& path) {
    CsvTable t = CsvTable::read_file(path);
    int c_prefix = t.require_column("postal_prefix");
    int c_state = t.require_column("state");
    StateMap map;
    for (std::size_t r = 0; r < t.rows(); ++r)
        map.prefixes.emplace_back(t.cell(r, c_prefix), parse_state(t.cell(r, c_state)));
    // longest prefix first
    std::sort(map.prefixes.begin(), map.prefixes.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    return map;
}

std::optional<State> StateMap::lookup(std::string_view postal_code) const {
    for (const auto& [prefix, state] : prefixes)
        if (postal_code.substr(0, prefix.size()) == prefix) return state;
    return std::nullopt;
}

std::string_view pricing_rule_name(PricingRule r) {
    return r == PricingRule::PayAsBid ? "pay_as_bid" : "uniform_price";
}

PricingRule parse_pricing_rule(std::string_view text) {
    if (text == "pay_as_bid") return PricingRule::PayAsBid;
    if (text == "uniform_price") return PricingRule::UniformPrice;
    throw ParseError("pricing_rule: expected pay_as_bid or uniform_price, got '" + std::string(text) + "'");
}

void AuctionSpec::derive_deadlines() {
    final_announcement = add_days(first_announcement, 7);
    deadline_no_reduction = add_months_clamped(final_announcement, 18);
    deadline_expiry = add_months_clamped(final_announcement, 24);
}

const AuctionSpec* AuctionResults::find_auction(int auction_index) const {
    for (const auto& a : auctions)
        if (a.auction_index == auction_index) return &a;
    return nullptr;
}

void throw_if_rejected(const std::vector<RowDiagnostic>& rejected, const std::string& file) {
    if (rejected.empty()) return;
    std::string msg = file + ": " + std::to_string(rejected.size()) + " rejected row(s)";
    std::size_t shown = std::min<std::size_t>(rejected.size(), 5);
    for (std::size_t i = 0; i < shown; ++i)
        msg += "\n  line " + std::to_string(rejected[i].line) + ": " + rejected[i].message;
    if (shown < rejected.size()) msg += "\n  ...";
    throw ValidationError(msg);
}

AuctionResultsLoad load_auction_results(const std::filesystem::path& path) {
    CsvTable t = CsvTable::read_file(path);
    int c_idx = t.require_column("auction_index");
    int c_date = t.require_column("date");
    int c_tc = t.require_column("tendered_kw");
    int c_rule = t.require_column("pricing_rule");
    int c_ceiling = t.require_column("ceiling");
    int c_first = t.require_column("first_announcement");
    int c_bid = t.require_column("bid_id");
    int c_name = t.require_column("developer_name");
    int c_addr = t.require_column("developer_address");
    int c_cap = t.require_column("capacity_kw");
    int c_price = t.require_column("price_ct_kwh");
    int c_postal = t.require_column("postal_code");
    int c_docs = t.require_column("land_use_docs");
    int c_awarded = t.require_column("awarded");

    AuctionResultsLoad out;
    out.input_rows = t.rows();
    std::map<int, AuctionSpec> specs;
    std::set<std::string> seen_bids;

    for_each_row(t, out.rejected, [&](std::size_t r) {
        ResultRow row;
        row.auction_index = static_cast<int>(parse_long_strict(t.cell(r, c_idx), "auction_index"));
        if (row.auction_index < 1) throw ValidationError("auction_index: must be >= 1");

        AuctionSpec spec;
        spec.auction_index = row.auction_index;
        spec.date = parse_date(t.cell(r, c_date));
        spec.tendered_capacity_kw = parse_double_strict(t.cell(r, c_tc), "tendered_kw");
        if (spec.tendered_capacity_kw <= 0) throw ValidationError("tendered_kw: must be > 0");
        spec.pricing_rule = parse_pricing_rule(t.cell(r, c_rule));
        spec.ceiling_price = Deci4::parse(t.cell(r, c_ceiling));
        if (spec.ceiling_price <= Deci4{}) throw ValidationError("ceiling: must be > 0");
        spec.first_announcement = parse_date(t.cell(r, c_first));
        spec.derive_deadlines();

        auto [it, inserted] = specs.emplace(spec.auction_index, spec);
        if (!inserted) {
            const AuctionSpec& prev = it->second;
            if (prev.date != spec.date || prev.tendered_capacity_kw != spec.tendered_capacity_kw ||
                prev.pricing_rule != spec.pricing_rule || prev.ceiling_price != spec.ceiling_price ||
                prev.first_announcement != spec.first_announcement)
                throw ValidationError("auction header fields disagree with earlier rows of auction " +
                                      std::to_string(spec.auction_index));
        }

        row.bid.bid_id = parse_bid_id(t.cell(r, c_bid));
        std::string key = format_bid_id(row.bid.bid_id);
        if (!seen_bids.insert(key).second)
            throw ValidationError("bid_id: duplicate '" + key + "'");
        row.bid.developer_name = t.cell(r, c_name);
        row.bid.developer_address = t.cell(r, c_addr);
        row.bid.capacity_kw = parse_double_strict(t.cell(r, c_cap), "capacity_kw");
        if (row.bid.capacity_kw < 750 || row.bid.capacity_kw > 10'000)
            throw ValidationError("capacity_kw: outside 750..10000 (" + t.cell(r, c_cap) + ")");
        row.bid.price = Deci4::parse(t.cell(r, c_price));
        if (row.bid.price <= Deci4{}) throw ValidationError("price_ct_kwh: must be > 0");
        row.bid.postal_code = t.cell(r, c_postal);
        if (row.bid.postal_code.size() != 5 || !all_digits(row.bid.postal_code))
            throw ValidationError("postal_code: expected 5 digits, got '" + row.bid.postal_code + "'");
        row.bid.land_use_docs = parse_bool(t.cell(r, c_docs), "land_use_docs");
        row.awarded = parse_bool(t.cell(r, c_awarded), "awarded");

        out.data.rows.push_back(std::move(row));
    });

    for (auto& [idx, spec] : specs) out.data.auctions.push_back(spec);
    return out;
}

LoadResult<UnitRecord> load_unit_register(const std::filesystem::path& path,
                                          const StateMap* state_fallback) {
    CsvTable t = CsvTable::read_file(path);
    int c_unit = t.require_column("unit_id");
    int c_bid = t.require_column("bid_id");
    int c_cap = t.require_column("capacity_kw");
    int c_date = t.require_column("commissioning_date");
    int c_postal = t.require_column("postal_code");
    int c_state = t.require_column("state");
    int c_addr = t.require_column("developer_address");

    LoadResult<UnitRecord> out;
    out.input_rows = t.rows();
    std::set<std::string> seen_units;

    for_each_row(t, out.rejected, [&](std::size_t r) {
        UnitRecord u;
        u.unit_id = parse_unit_id(t.cell(r, c_unit));
        if (!seen_units.insert(u.unit_id.code).second)
            throw ValidationError("unit_id: duplicate '" + u.unit_id.code + "'");
        const std::string& bid = t.cell(r, c_bid);
        if (!bid.empty()) u.bid_id = parse_bid_id(bid);
        u.capacity_kw = parse_double_strict(t.cell(r, c_cap), "capacity_kw");
        if (u.capacity_kw <= 0) throw ValidationError("capacity_kw: must be > 0");
        u.commissioning_date = parse_date(t.cell(r, c_date));
        u.postal_code = t.cell(r, c_postal);
        if (u.postal_code.size() != 5 || !all_digits(u.postal_code))
            throw ValidationError("postal_code: expected 5 digits, got '" + u.postal_code + "'");
        const std::string& state = t.cell(r, c_state);
        if (!state.empty()) {
            u.state = parse_state(state);
        } else if (state_fallback) {
            auto mapped = state_fallback->lookup(u.postal_code);
            if (!mapped)
                throw ValidationError("state: empty and postal code '" + u.postal_code +
                                      "' not covered by the state map");
            u.state = *mapped;
        } else {
            throw ValidationError("state: empty (supply --state-map to derive from postal codes)");
        }
        u.developer_address = t.cell(r, c_addr);
        out.rows.push_back(std::move(u));
    });
    return out;
}

LoadResult<PaymentRecord> load_payments(const std::vector<std::filesystem::path>& paths) {
    LoadResult<PaymentRecord> out;
    std::set<std::string> seen_keys;
    for (const auto& path : paths) {
        CsvTable t = CsvTable::read_file(path);
        int c_unit = t.require_column("unit_id");
        int c_month = t.require_column("month");
        int c_tariff = t.require_column("tariff_id");
        int c_gen = t.require_column("generation_kwh");
        int c_pay = t.require_column("payment");
        out.input_rows += t.rows();

        for_each_row(t, out.rejected, [&](std::size_t r) {
            PaymentRecord p;
            p.unit_id = parse_unit_id(t.cell(r, c_unit));
            p.month = parse_month(t.cell(r, c_month));
            p.tariff_id = t.cell(r, c_tariff);
            if (p.tariff_id.empty()) throw ValidationError("tariff_id: empty");
            p.generation_kwh = parse_double_strict(t.cell(r, c_gen), "generation_kwh");
            if (p.generation_kwh < 0) throw ValidationError("generation_kwh: must be >= 0");
            p.payment_ct = parse_double_strict(t.cell(r, c_pay), "payment");
            std::string key = p.unit_id.code + "|" + format_month(p.month) + "|" + p.tariff_id;
            if (!seen_keys.insert(key).second)
                throw ValidationError("duplicate (unit, month, tariff) key: " + key);
            out.rows.push_back(std::move(p));
        });
    }
    return out;
}

LoadResult<TariffEntry> load_tariffs(const std::filesystem::path& path) {
    CsvTable t = CsvTable::read_file(path);
    int c_id = t.require_column("tariff_id");
    int c_desc = t.require_column("description");
    int c_cat = t.require_column("category");

    LoadResult<TariffEntry> out;
    out.input_rows = t.rows();
    std::set<std::string> seen;
    for_each_row(t, out.rejected, [&](std::size_t r) {
        TariffEntry e;
        e.tariff_id = t.cell(r, c_id);
        if (e.tariff_id.empty()) throw ValidationError("tariff_id: empty");
        if (!seen.insert(e.tariff_id).second)
            throw ValidationError("tariff_id: duplicate '" + e.tariff_id + "'");
        e.description = t.cell(r, c_desc);
        const std::string& cat = t.cell(r, c_cat);
        if (cat == "market_premium")
            e.category = TariffCategory::MarketPremium;
        else if (cat == "side_payment")
            e.category = TariffCategory::SidePayment;
        else
            throw ParseError("category: expected market_premium or side_payment, got '" + cat + "'");
        out.rows.push_back(std::move(e));
    });
    return out;
}

LoadResult<MarketValue> load_market_values(const std::filesystem::path& path) {
    CsvTable t = CsvTable::read_file(path);
    int c_month = t.require_column("month");
    int c_value = t.require_column("value");

    LoadResult<MarketValue> out;
    out.input_rows = t.rows();
    std::set<std::pair<int, unsigned>> seen;
    for_each_row(t, out.rejected, [&](std::size_t r) {
        MarketValue v;
        v.month = parse_month(t.cell(r, c_month));
        if (!seen.insert({v.month.year, v.month.month}).second)
            throw ValidationError("month: duplicate '" + format_month(v.month) + "'");
        v.value = Deci4::parse(t.cell(r, c_value));
        out.rows.push_back(v);
    });
    return out;
}

LoadResult<PvCostIndexEntry> load_pv_cost_index(const std::filesystem::path& path) {
    CsvTable t = CsvTable::read_file(path);
    int c_month = t.require_column("month");
    int c_value = t.require_column("index_value");

    LoadResult<PvCostIndexEntry> out;
    out.input_rows = t.rows();
    std::set<std::pair<int, unsigned>> seen;
    for_each_row(t, out.rejected, [&](std::size_t r) {
        PvCostIndexEntry v;
        v.month = parse_month(t.cell(r, c_month));
        if (!seen.insert({v.month.year, v.month.month}).second)
            throw ValidationError("month: duplicate '" + format_month(v.month) + "'");
        v.index_value = parse_double_strict(t.cell(r, c_value), "index_value");
        out.rows.push_back(v);
    });
    return out;
}

}  // namespace pvauction
