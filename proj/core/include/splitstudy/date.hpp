#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace splitstudy {

/// Calendar date with day resolution, stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    explicit constexpr Date(std::chrono::sys_days d) : days_(d.time_since_epoch().count()) {}
    Date(int year, unsigned month, unsigned day);

    /// Parses strict ISO-8601 "YYYY-MM-DD". Throws InputError on anything else.
    static Date parse(std::string_view text);
    static constexpr Date from_serial(std::int32_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    constexpr std::int32_t serial() const noexcept { return days_; }
    std::chrono::sys_days sys_days() const noexcept {
        return std::chrono::sys_days{std::chrono::days{days_}};
    }
    std::chrono::year_month_day ymd() const noexcept { return {sys_days()}; }
    int year() const noexcept { return static_cast<int>(ymd().year()); }
    bool is_weekday() const noexcept;

    Date plus_days(std::int32_t n) const noexcept { return from_serial(days_ + n); }
    std::string to_string() const;

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::int32_t days_ = 0;
};

/// Number of Monday-Friday days in the half-open range (from, to], negative
/// when `to` precedes `from`. Both endpoints are expected to be weekdays.
std::int32_t business_days_between(Date from, Date to) noexcept;

/// Next weekday strictly after `d`.
Date next_business_day(Date d) noexcept;

}  // namespace splitstudy
