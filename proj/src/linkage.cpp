#include "pvauction/linkage.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pvauction/metrics.hpp"

namespace pvauction {

std::string_view project_status_name(ProjectStatus s) {
    return s == ProjectStatus::Built ? "built" : "not_found";
}

std::string_view reliability_name(Reliability r) {
    switch (r) {
        case Reliability::Observed: return "observed";
        case Reliability::PropagatedFromBid: return "propagated_from_bid";
        case Reliability::Unreliable: return "unreliable";
        case Reliability::ZeroPremium: return "zero_premium";
        case Reliability::Excluded: return "excluded";
    }
    return "?";
}

// ---------------------------------------------------------------------------

std::vector<ProjectRecord> identify_projects(const AuctionResults& results,
                                             const std::vector<UnitRecord>& units,
                                             std::vector<std::string>* warnings) {
    std::map<std::string, std::vector<const UnitRecord*>> units_by_bid;
    std::set<std::string> awarded_keys;
    for (const auto& row : results.rows)
        if (row.awarded) awarded_keys.insert(format_bid_id(row.bid.bid_id));

    for (const auto& u : units) {
        if (!u.bid_id) continue;
        std::string key = format_bid_id(*u.bid_id);
        if (!awarded_keys.count(key)) {
            if (warnings)
                warnings->push_back("unit " + u.unit_id.code + " references bid " + key +
                                    " absent from the auction results");
            continue;
        }
        units_by_bid[key].push_back(&u);
    }

    std::vector<ProjectRecord> projects;
    for (const auto& row : results.rows) {
        if (!row.awarded) continue;
        std::string key = format_bid_id(row.bid.bid_id);
        auto it = units_by_bid.find(key);
        if (it == units_by_bid.end() || it->second.empty()) {
            ProjectRecord p;
            p.project_id = ProjectId{row.bid.bid_id, 1};
            p.bid_id = row.bid.bid_id;
            p.auction_index = row.auction_index;
            p.status = ProjectStatus::NotFound;
            p.capacity_kw = row.bid.capacity_kw;
            p.loc_in = row.bid.postal_code;
            projects.push_back(std::move(p));
            continue;
        }
        auto matched = it->second;
        std::sort(matched.begin(), matched.end(), [](const UnitRecord* a, const UnitRecord* b) {
            if (a->commissioning_date != b->commissioning_date)
                return a->commissioning_date < b->commissioning_date;
            return a->unit_id.code < b->unit_id.code;
        });
        int index = 1;
        for (const UnitRecord* u : matched) {
            ProjectRecord p;
            p.project_id = ProjectId{row.bid.bid_id, index++};
            p.bid_id = row.bid.bid_id;
            p.auction_index = row.auction_index;
            p.unit_id = u->unit_id;
            p.status = ProjectStatus::Built;
            p.capacity_kw = u->capacity_kw;
            p.commissioning_date = u->commissioning_date;
            p.loc_in = row.bid.postal_code;
            p.loc_out = u->postal_code;
            p.state = u->state;
            projects.push_back(std::move(p));
        }
    }

    std::sort(projects.begin(), projects.end(),
              [](const ProjectRecord& a, const ProjectRecord& b) { return a.project_id < b.project_id; });
    return projects;
}

std::vector<std::vector<PaymentRecord>> attach_payments(
    const std::vector<ProjectRecord>& projects, const std::vector<PaymentRecord>& payments) {
    std::unordered_map<std::string, std::vector<const PaymentRecord*>> by_unit;
    for (const auto& p : payments) by_unit[p.unit_id.code].push_back(&p);

    std::vector<std::vector<PaymentRecord>> streams(projects.size());
    for (std::size_t i = 0; i < projects.size(); ++i) {
        if (!projects[i].unit_id) continue;
        auto it = by_unit.find(projects[i].unit_id->code);
        if (it == by_unit.end()) continue;
        auto& stream = streams[i];
        stream.reserve(it->second.size());
        for (const PaymentRecord* r : it->second) stream.push_back(*r);
        std::sort(stream.begin(), stream.end(), [](const PaymentRecord& a, const PaymentRecord& b) {
            if (a.month != b.month) return a.month < b.month;
            return a.tariff_id < b.tariff_id;
        });
    }
    return streams;
}

std::vector<PaymentRecord> select_market_premium(const std::vector<PaymentRecord>& stream,
                                                 const std::vector<TariffEntry>& tariffs) {
    std::unordered_map<std::string, TariffCategory> categories;
    for (const auto& t : tariffs) categories.emplace(t.tariff_id, t.category);

    std::vector<PaymentRecord> filtered;
    for (const auto& row : stream) {
        auto it = categories.find(row.tariff_id);
        if (it == categories.end())
            throw ValidationError("select_market_premium: unknown tariff id '" + row.tariff_id + "'");
        if (it->second == TariffCategory::MarketPremium) filtered.push_back(row);
    }
    return filtered;
}

std::optional<double> effective_premium(const PaymentRecord& row) {
    if (row.generation_kwh <= 0) return std::nullopt;
    return row.payment_ct / row.generation_kwh;
}

double net_bid_value(double mp, Deci4 market_value) {
    return mp + market_value.to_double();
}

double full_bid_value(double bv_net, int pen_loc, int pen_dline) {
    return bv_net + 0.3 * pen_loc + 0.3 * pen_dline;
}

// ---------------------------------------------------------------------------

namespace {

BidValueEstimate reconstruct_one(const ProjectRecord& project,
                                 const std::vector<PaymentRecord>& stream,
                                 const std::vector<TariffEntry>& tariffs,
                                 const std::map<YearMonth, Deci4>& mv_by_month,
                                 const AuctionSpec* spec) {
    BidValueEstimate est;
    est.project_id = project.project_id;
    est.auction_index = project.auction_index;
    est.has_payments = !stream.empty();
    if (stream.empty()) return est;

    int pen_loc = 0, pen_dline = 0;
    if (project.status == ProjectStatus::Built && project.commissioning_date && spec) {
        pen_dline = pen_dline_indicator(*project.commissioning_date, spec->deadline_no_reduction);
        pen_loc = pen_loc_indicator(project.loc_in, project.loc_out.value_or(project.loc_in));
    }

    std::vector<PaymentRecord> premium_rows = select_market_premium(stream, tariffs);

    // A month can carry several market-premium rows (tariff id changes); the
    // effective premium divides the month's gross payment by its generation.
    std::map<YearMonth, std::pair<double, double>> by_month;  // gen, payment
    for (const auto& row : premium_rows) {
        if (row.generation_kwh <= 0) {
            ++est.zero_generation_rows;
            continue;
        }
        auto& acc = by_month[row.month];
        acc.first += row.generation_kwh;
        acc.second += row.payment_ct;
    }

    for (const auto& [month, acc] : by_month) {
        double mp = acc.second / acc.first;
        if (mp <= 0) {
            ++est.zero_premium_months;
            continue;
        }
        auto mv = mv_by_month.find(month);
        if (mv == mv_by_month.end()) {
            ++est.months_without_market_value;
            continue;
        }
        MonthlyValue v;
        v.month = month;
        v.mp = mp;
        v.bv_net = net_bid_value(mp, mv->second);
        v.bv_full = full_bid_value(v.bv_net, pen_loc, pen_dline);
        est.monthly.push_back(v);
    }
    return est;
}

}  // namespace

std::vector<BidValueEstimate> monthly_bid_values(const std::vector<ProjectRecord>& projects,
                                                 const std::vector<std::vector<PaymentRecord>>& streams,
                                                 const std::vector<TariffEntry>& tariffs,
                                                 const std::vector<MarketValue>& market_values,
                                                 const AuctionResults& results,
                                                 const LinkageOptions& options) {
    if (streams.size() != projects.size())
        throw ValidationError("monthly_bid_values: streams not aligned with projects");

    // Fail on unknown tariff ids before entering the parallel region.
    std::unordered_set<std::string> known;
    for (const auto& t : tariffs) known.insert(t.tariff_id);
    for (const auto& stream : streams)
        for (const auto& row : stream)
            if (!known.count(row.tariff_id))
                throw ValidationError("monthly_bid_values: unknown tariff id '" + row.tariff_id + "'");

    std::map<YearMonth, Deci4> mv_by_month;
    for (const auto& mv : market_values) mv_by_month[mv.month] = mv.value;

    std::vector<BidValueEstimate> estimates(projects.size());
    const long n = static_cast<long>(projects.size());
    if (options.exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i)
            estimates[i] = reconstruct_one(projects[i], streams[i], tariffs, mv_by_month,
                                           results.find_auction(projects[i].auction_index));
    } else {
        for (long i = 0; i < n; ++i)
            estimates[i] = reconstruct_one(projects[i], streams[i], tariffs, mv_by_month,
                                           results.find_auction(projects[i].auction_index));
    }
    return estimates;
}

namespace {

Deci4 round_to_grid(double v) {
    return Deci4::from_double(v);
}

}  // namespace

void consolidate_bid_values(std::vector<BidValueEstimate>& estimates,
                            const std::vector<ProjectRecord>& projects,
                            const AuctionResults& results, double tau,
                            std::vector<std::string>* diagnostics) {
    if (estimates.size() != projects.size())
        throw ValidationError("consolidate_bid_values: estimates not aligned with projects");

    // Initial per-project reliability from the monthly evidence.
    for (auto& est : estimates) {
        if (!est.monthly.empty())
            est.reliability = Reliability::Observed;  // provisional, checked below
        else if (est.zero_premium_months > 0)
            est.reliability = Reliability::ZeroPremium;
        else
            est.reliability = Reliability::Unreliable;
    }

    std::map<std::string, std::vector<std::size_t>> by_bid;
    for (std::size_t i = 0; i < estimates.size(); ++i)
        by_bid[format_bid_id(projects[i].bid_id)].push_back(i);

    for (auto& [bid_key, members] : by_bid) {
        // Per-project time invariance.
        std::vector<std::size_t> observed;
        for (std::size_t i : members) {
            auto& est = estimates[i];
            if (est.monthly.empty()) continue;
            double lo = est.monthly.front().bv_full, hi = lo;
            for (const auto& m : est.monthly) {
                lo = std::min(lo, m.bv_full);
                hi = std::max(hi, m.bv_full);
            }
            if (hi - lo > tau) {
                est.reliability = Reliability::Unreliable;
                if (diagnostics)
                    diagnostics->push_back("project " + format_project_id(est.project_id) +
                                           ": monthly full bid values spread " +
                                           format_double(hi - lo) + " exceeds tolerance");
            } else {
                observed.push_back(i);
            }
        }
        if (observed.empty()) continue;

        // All projects of one bid share one full bid value; check the pooled
        // months, then consolidate to their mean on the tariff grid.
        double lo = 0, hi = 0, sum = 0;
        std::size_t count = 0;
        for (std::size_t i : observed) {
            for (const auto& m : estimates[i].monthly) {
                if (count == 0) lo = hi = m.bv_full;
                lo = std::min(lo, m.bv_full);
                hi = std::max(hi, m.bv_full);
                sum += m.bv_full;
                ++count;
            }
        }
        if (hi - lo > tau) {
            for (std::size_t i : observed) {
                estimates[i].reliability = Reliability::Unreliable;
                estimates[i].consolidated_net.reset();
                estimates[i].consolidated_full.reset();
            }
            if (diagnostics)
                diagnostics->push_back("bid " + bid_key + ": observed full bid values disagree (spread " +
                                       format_double(hi - lo) + "), all projects marked unreliable");
            continue;
        }
        Deci4 bid_full = round_to_grid(sum / static_cast<double>(count));

        for (std::size_t i : observed) {
            auto& est = estimates[i];
            est.consolidated_full = bid_full;
            // The net value keeps the project-specific reduction.
            double reduction = est.monthly.front().bv_full - est.monthly.front().bv_net;
            est.consolidated_net = bid_full - round_to_grid(reduction);
            est.reliability = Reliability::Observed;
        }

        // Propagation: built projects without their own usable months inherit
        // the bid's full value (their net value stays unknown).
        for (std::size_t i : members) {
            auto& est = estimates[i];
            if (est.consolidated_full) continue;
            if (est.reliability == Reliability::Unreliable && !est.monthly.empty()) continue;
            if (projects[i].status != ProjectStatus::Built) continue;
            est.consolidated_full = bid_full;
            est.reliability = Reliability::PropagatedFromBid;
        }
    }

    // Uniform-price auctions do not reveal real bids; their projects are
    // excluded from the bid-value sample (values retained for validation).
    for (auto& est : estimates) {
        const AuctionSpec* spec = results.find_auction(est.auction_index);
        if (spec && spec->pricing_rule == PricingRule::UniformPrice)
            est.reliability = Reliability::Excluded;
    }
}

// ---------------------------------------------------------------------------

std::string normalize_address(std::string_view address) {
    std::string out;
    out.reserve(address.size());
    bool pending_space = false;
    for (unsigned char c : address) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (std::ispunct(c)) continue;
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

std::vector<DeveloperProfile> aggregate_developers(const AuctionResults& results,
                                                   const std::vector<ProjectRecord>& projects,
                                                   std::vector<std::string>* warnings) {
    struct Group {
        std::string canonical_address;
        std::set<std::string> names;
        std::vector<ProjectId> project_ids;
        double size_kw = 0;
    };
    std::map<std::string, Group> groups;
    std::map<std::string, std::string> key_by_bid;

    for (const auto& row : results.rows) {
        if (!row.awarded) continue;
        std::string key = normalize_address(row.bid.developer_address);
        if (key.empty()) {
            key = "name:" + row.bid.developer_name;
            if (warnings)
                warnings->push_back("bid " + format_bid_id(row.bid.bid_id) +
                                    ": empty developer address, keyed by name");
        }
        auto& g = groups[key];
        if (g.canonical_address.empty()) g.canonical_address = normalize_address(row.bid.developer_address);
        g.names.insert(row.bid.developer_name);
        key_by_bid[format_bid_id(row.bid.bid_id)] = key;
    }

    for (const auto& p : projects) {
        auto it = key_by_bid.find(format_bid_id(p.bid_id));
        if (it == key_by_bid.end()) continue;
        auto& g = groups[it->second];
        g.project_ids.push_back(p.project_id);
        if (p.status == ProjectStatus::Built) g.size_kw += p.capacity_kw;
    }

    std::vector<DeveloperProfile> profiles;
    profiles.reserve(groups.size());
    for (auto& [key, g] : groups) {
        DeveloperProfile d;
        d.key = key;
        d.canonical_address = g.canonical_address;
        d.member_names.assign(g.names.begin(), g.names.end());
        d.projects = std::move(g.project_ids);
        d.size_kw = g.size_kw;
        profiles.push_back(std::move(d));
    }
    return profiles;
}

std::vector<DeveloperProfile> aggregate_developers(const AuctionResults& results,
                                                   const std::vector<UnitRecord>& units,
                                                   std::vector<std::string>* warnings) {
    return aggregate_developers(results, identify_projects(results, units, warnings), warnings);
}

// ---------------------------------------------------------------------------

LinkageOutput run_linkage(const AuctionResults& results, const std::vector<UnitRecord>& units,
                          const std::vector<PaymentRecord>& payments,
                          const std::vector<TariffEntry>& tariffs,
                          const std::vector<MarketValue>& market_values,
                          const LinkageOptions& options) {
    LinkageOutput out;
    out.projects = identify_projects(results, units, &out.warnings);
    auto streams = attach_payments(out.projects, payments);
    out.estimates = monthly_bid_values(out.projects, streams, tariffs, market_values, results, options);
    consolidate_bid_values(out.estimates, out.projects, results, options.tau, &out.warnings);
    out.developers = aggregate_developers(results, out.projects, &out.warnings);

    // Developer keys onto the project records.
    std::map<std::string, std::string> key_by_bid;
    for (const auto& d : out.developers)
        for (const auto& pid : d.projects) key_by_bid[format_bid_id(pid.bid)] = d.key;
    for (auto& p : out.projects) {
        auto it = key_by_bid.find(format_bid_id(p.bid_id));
        if (it != key_by_bid.end()) p.developer_key = it->second;
    }

    std::map<int, PipelineCounts> counts;
    for (const auto& row : results.rows) {
        if (!row.awarded) continue;
        auto& c = counts[row.auction_index];
        c.auction_index = row.auction_index;
        ++c.awarded_bids;
    }
    for (std::size_t i = 0; i < out.projects.size(); ++i) {
        const auto& p = out.projects[i];
        const auto& est = out.estimates[i];
        auto& c = counts[p.auction_index];
        c.auction_index = p.auction_index;
        ++c.awarded_projects;
        if (p.status == ProjectStatus::Built) {
            ++c.built_projects;
            ++c.unit_ids;
            if (est.has_payments) ++c.payments_found;
        }
        if (est.consolidated_full) {
            ++c.final_bid_values;
            if (!est.monthly.empty()) ++c.reliable_values;
        }
    }
    for (auto& [idx, c] : counts) out.counts.push_back(c);
    return out;
}

}  // namespace pvauction
