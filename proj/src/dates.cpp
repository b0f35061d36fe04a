#include "pvauction/dates.hpp"

#include <cctype>
#include <cstdio>

#include "pvauction/errors.hpp"

namespace pvauction {

namespace {

int parse_int_field(std::string_view text, std::size_t pos, std::size_t len, const char* what) {
    if (pos + len > text.size()) throw ParseError(std::string("date: truncated ") + what + " in '" + std::string(text) + "'");
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError(std::string("date: non-digit in ") + what + " of '" + std::string(text) + "'");
        v = v * 10 + (text[i] - '0');
    }
    return v;
}

}  // namespace

Date make_date(int year, unsigned month, unsigned day) {
    Date d = std::chrono::year(year) / std::chrono::month(month) / std::chrono::day(day);
    if (!d.ok()) throw ValidationError("date: invalid calendar date " + format_date(d));
    return d;
}

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ParseError("date: expected YYYY-MM-DD, got '" + std::string(text) + "'");
    int y = parse_int_field(text, 0, 4, "year");
    int m = parse_int_field(text, 5, 2, "month");
    int d = parse_int_field(text, 8, 2, "day");
    Date date = std::chrono::year(y) / std::chrono::month(static_cast<unsigned>(m)) /
                std::chrono::day(static_cast<unsigned>(d));
    if (!date.ok()) throw ParseError("date: invalid calendar date '" + std::string(text) + "'");
    return date;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

long days_between(Date from, Date to) {
    return (std::chrono::sys_days(to) - std::chrono::sys_days(from)).count();
}

Date add_days(Date d, int days) {
    return Date(std::chrono::sys_days(d) + std::chrono::days(days));
}

Date add_months_clamped(Date d, int months) {
    Date shifted = d + std::chrono::months(months);
    if (!shifted.ok()) shifted = shifted.year() / shifted.month() / std::chrono::last;
    return shifted;
}

YearMonth parse_month(std::string_view text) {
    if (text.size() != 7 || text[4] != '-')
        throw ParseError("month: expected YYYY-MM, got '" + std::string(text) + "'");
    int y = parse_int_field(text, 0, 4, "year");
    int m = parse_int_field(text, 5, 2, "month");
    if (m < 1 || m > 12) throw ParseError("month: out of range in '" + std::string(text) + "'");
    return YearMonth{y, static_cast<unsigned>(m)};
}

std::string format_month(YearMonth m) {
    char buf[12];
    std::snprintf(buf, sizeof buf, "%04d-%02u", m.year, m.month);
    return buf;
}

YearMonth add_months(YearMonth m, int months) {
    int linear = m.year * 12 + static_cast<int>(m.month) - 1 + months;
    int year = linear / 12;
    int mon = linear % 12;
    if (mon < 0) {
        mon += 12;
        --year;
    }
    return YearMonth{year, static_cast<unsigned>(mon + 1)};
}

YearMonth month_of(Date d) {
    return YearMonth{static_cast<int>(d.year()), static_cast<unsigned>(d.month())};
}

int months_between(YearMonth from, YearMonth to) {
    return (to.year * 12 + static_cast<int>(to.month)) - (from.year * 12 + static_cast<int>(from.month));
}

}  // namespace pvauction
