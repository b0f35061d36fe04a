#include "pvauction/ids.hpp"

#include <cctype>
#include <cstdio>

#include "pvauction/errors.hpp"

namespace pvauction {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

int to_int(std::string_view s, const char* field, std::string_view whole) {
    if (!all_digits(s))
        throw ParseError(std::string("bid id: non-numeric ") + field + " in '" + std::string(whole) + "'");
    if (s.size() > 6)
        throw ParseError(std::string("bid id: ") + field + " out of range in '" + std::string(whole) + "'");
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

std::string_view programme_token(Programme p) {
    return p == Programme::FFA ? "FFA" : "SOL";
}

BidId parse_bid_id(std::string_view text) {
    if (text.size() < 8)
        throw ParseError("bid id: malformed pattern '" + std::string(text) + "'");
    std::string_view token = text.substr(0, 3);
    Programme programme;
    if (token == "FFA")
        programme = Programme::FFA;
    else if (token == "SOL")
        programme = Programme::SOL;
    else
        throw ParseError("bid id: unknown programme token '" + std::string(token) + "' in '" +
                         std::string(text) + "'");

    std::string_view year_part = text.substr(3, 2);
    if (!all_digits(year_part))
        throw ParseError("bid id: non-numeric year in '" + std::string(text) + "'");
    int year = (year_part[0] - '0') * 10 + (year_part[1] - '0');

    std::size_t dash = text.find('-', 5);
    std::size_t slash = text.find('/', 5);
    if (dash != 5 || slash == std::string_view::npos || slash <= dash + 1)
        throw ParseError("bid id: malformed pattern '" + std::string(text) + "'");

    int round = to_int(text.substr(6, slash - 6), "round", text);
    int sequence = to_int(text.substr(slash + 1), "sequence", text);
    if (round < 1) throw ParseError("bid id: round must be >= 1 in '" + std::string(text) + "'");
    if (sequence < 1) throw ParseError("bid id: sequence must be >= 1 in '" + std::string(text) + "'");
    return BidId{programme, year, round, sequence};
}

std::string format_bid_id(const BidId& id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02d-%d/%03d", std::string(programme_token(id.programme)).c_str(),
                  id.year, id.round, id.sequence);
    return buf;
}

ProjectId parse_project_id(std::string_view text) {
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos)
        throw ParseError("project id: malformed pattern '" + std::string(text) + "'");
    std::size_t dash = text.find('-', slash);
    if (dash == std::string_view::npos)
        throw ParseError("project id: missing '-<index>' suffix in '" + std::string(text) + "'");
    BidId bid = parse_bid_id(text.substr(0, dash));
    std::string_view index_part = text.substr(dash + 1);
    if (!all_digits(index_part))
        throw ParseError("project id: non-numeric index in '" + std::string(text) + "'");
    int index = to_int(index_part, "index", text);
    if (index < 1) throw ParseError("project id: index must be >= 1 in '" + std::string(text) + "'");
    return ProjectId{bid, index};
}

std::string format_project_id(const ProjectId& id) {
    return format_bid_id(id.bid) + "-" + std::to_string(id.index);
}

UnitId parse_unit_id(std::string_view text) {
    if (text.size() != 33)
        throw ParseError("unit id: expected 33 digits, got " + std::to_string(text.size()) +
                         " in '" + std::string(text) + "'");
    if (!all_digits(text))
        throw ParseError("unit id: non-digit character in '" + std::string(text) + "'");
    return UnitId{std::string(text)};
}

}  // namespace pvauction
