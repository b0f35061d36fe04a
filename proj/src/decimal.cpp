#include "pvauction/decimal.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "pvauction/errors.hpp"

namespace pvauction {

Deci4 Deci4::from_double(double value) {
    double scaled = value * static_cast<double>(kScale);
    double rounded = (scaled >= 0.0) ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
    return from_raw(static_cast<std::int64_t>(rounded));
}

Deci4 Deci4::parse(std::string_view text) {
    if (text.empty()) throw ParseError("decimal: empty string");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw ParseError("decimal: missing digits in '" + std::string(text) + "'");

    std::int64_t integer = 0;
    bool any_int = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        integer = integer * 10 + (text[pos] - '0');
        if (integer > 900'000'000'000'000) throw ParseError("decimal: value out of range '" + std::string(text) + "'");
        any_int = true;
        ++pos;
    }

    std::int64_t frac = 0;
    int frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (frac_digits == 4)
                throw ParseError("decimal: more than 4 fractional digits in '" + std::string(text) + "'");
            frac = frac * 10 + (text[pos] - '0');
            ++frac_digits;
            ++pos;
        }
        if (frac_digits == 0) throw ParseError("decimal: trailing '.' in '" + std::string(text) + "'");
    }
    if (!any_int && frac_digits == 0)
        throw ParseError("decimal: no digits in '" + std::string(text) + "'");
    if (pos != text.size())
        throw ParseError("decimal: unexpected character '" + std::string(1, text[pos]) + "' in '" +
                         std::string(text) + "'");

    while (frac_digits < 4) {
        frac *= 10;
        ++frac_digits;
    }
    std::int64_t raw = integer * kScale + frac;
    return from_raw(negative ? -raw : raw);
}

std::string Deci4::str() const {
    std::int64_t v = raw_;
    bool negative = v < 0;
    if (negative) v = -v;
    std::int64_t whole = v / kScale;
    std::int64_t frac = v % kScale;
    std::string out = negative ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(frac));
        std::string f(buf);
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += '.';
        out += f;
    }
    return out;
}

}  // namespace pvauction
