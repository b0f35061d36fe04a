#pragma once

// Calendar dates (no time of day) and year-month arithmetic. Month addition
// clamps to the end of the target month (2015-01-31 + 1 month = 2015-02-28).

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace pvauction {

using Date = std::chrono::year_month_day;

Date parse_date(std::string_view text);  // ISO-8601 "2015-04-15"
std::string format_date(Date d);
long days_between(Date from, Date to);  // to - from
Date add_days(Date d, int days);
Date add_months_clamped(Date d, int months);
Date make_date(int year, unsigned month, unsigned day);

struct YearMonth {
    int year = 0;
    unsigned month = 1;  // 1..12

    friend constexpr auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

YearMonth parse_month(std::string_view text);  // "2015-04"
std::string format_month(YearMonth m);
YearMonth add_months(YearMonth m, int months);
YearMonth month_of(Date d);
int months_between(YearMonth from, YearMonth to);  // to - from

}  // namespace pvauction
