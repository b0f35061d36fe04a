#pragma once

// Hierarchical identifiers tying auction results to commissioned units.
//
//   bid      FFA15-1/129      programme, 2-digit year, round, arrival number
//   project  FFA15-1/129-2    bid id plus per-bid project index
//   unit     33-digit code    unit register key

#include <compare>
#include <string>
#include <string_view>

namespace pvauction {

enum class Programme { FFA, SOL };

std::string_view programme_token(Programme p);

struct BidId {
    Programme programme = Programme::FFA;
    int year = 0;   // two digits, 0..99
    int round = 1;  // >= 1
    int sequence = 1;  // order of arrival, >= 1

    friend constexpr auto operator<=>(const BidId&, const BidId&) = default;
};

struct ProjectId {
    BidId bid;
    int index = 1;  // >= 1, per-bid

    friend constexpr auto operator<=>(const ProjectId&, const ProjectId&) = default;
};

struct UnitId {
    std::string code;  // exactly 33 decimal digits

    friend auto operator<=>(const UnitId&, const UnitId&) = default;
};

BidId parse_bid_id(std::string_view text);
std::string format_bid_id(const BidId& id);

ProjectId parse_project_id(std::string_view text);
std::string format_project_id(const ProjectId& id);

UnitId parse_unit_id(std::string_view text);

}  // namespace pvauction
