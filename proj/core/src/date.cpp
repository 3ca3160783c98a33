#include "splitstudy/date.hpp"

#include <charconv>
#include <cstdio>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

using namespace std::chrono;

// Weekdays in [1969-12-29 (a Monday), serial).
std::int64_t weekdays_before(std::int64_t serial) noexcept {
    const std::int64_t k = serial + 3;
    std::int64_t weeks = k / 7;
    std::int64_t rem = k % 7;
    if (rem < 0) {
        rem += 7;
        --weeks;
    }
    return weeks * 5 + (rem < 5 ? rem : 5);
}

template <typename T>
bool parse_digits(std::string_view text, T& out) {
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Date::Date(int y, unsigned m, unsigned d) {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) {
        throw InputError("invalid calendar date " + std::to_string(y) + "-" + std::to_string(m) +
                         "-" + std::to_string(d));
    }
    days_ = static_cast<std::int32_t>(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

Date Date::parse(std::string_view text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d)) {
        throw InputError("expected date as YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    return Date(y, m, d);
}

bool Date::is_weekday() const noexcept {
    const std::chrono::weekday wd{sys_days()};
    return wd != Saturday && wd != Sunday;
}

std::string Date::to_string() const {
    const auto v = ymd();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(v.year()),
                  static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day()));
    return buf;
}

std::int32_t business_days_between(Date from, Date to) noexcept {
    return static_cast<std::int32_t>(weekdays_before(std::int64_t{to.serial()} + 1) -
                                     weekdays_before(std::int64_t{from.serial()} + 1));
}

Date next_business_day(Date d) noexcept {
    Date next = d.plus_days(1);
    while (!next.is_weekday()) next = next.plus_days(1);
    return next;
}

}  // namespace splitstudy
