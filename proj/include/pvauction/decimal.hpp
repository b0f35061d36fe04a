#pragma once

// Fixed-point amount with 4 fractional digits, the canonical unit for all
// tariff-like quantities (ct/kWh). Keeping bids, market values and penalty
// reductions on one decimal grid makes file round-trips and additive penalty
// arithmetic exact; floating point is reserved for derived statistics.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pvauction {

class Deci4 {
  public:
    static constexpr std::int64_t kScale = 10'000;

    constexpr Deci4() = default;

    static constexpr Deci4 from_raw(std::int64_t raw) {
        Deci4 d;
        d.raw_ = raw;
        return d;
    }

    // Nearest grid point, ties away from zero.
    static Deci4 from_double(double value);

    // Strict decimal literal: optional sign, digits, at most 4 fractional
    // digits. Throws ParseError otherwise.
    static Deci4 parse(std::string_view text);

    constexpr std::int64_t raw() const { return raw_; }
    constexpr double to_double() const { return static_cast<double>(raw_) / kScale; }

    // Canonical form: no trailing fractional zeros ("8.49", "0.3", "6").
    std::string str() const;

    friend constexpr Deci4 operator+(Deci4 a, Deci4 b) { return from_raw(a.raw_ + b.raw_); }
    friend constexpr Deci4 operator-(Deci4 a, Deci4 b) { return from_raw(a.raw_ - b.raw_); }
    constexpr Deci4 operator-() const { return from_raw(-raw_); }
    constexpr Deci4& operator+=(Deci4 o) {
        raw_ += o.raw_;
        return *this;
    }

    friend constexpr auto operator<=>(Deci4, Deci4) = default;

  private:
    std::int64_t raw_ = 0;
};

}  // namespace pvauction
