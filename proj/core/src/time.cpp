#include "collabpred/time.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace collabpred {

namespace {

// Howard Hinnant's civil-date algorithms; exact over the full int64 range
// we care about, independent of the C library and time zone database.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += (m <= 2);
}

bool parse_digits(std::string_view s, std::size_t pos, std::size_t n, std::int64_t& out) {
    if (pos + n > s.size()) return false;
    std::int64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace

std::string format_iso8601(Timestamp t) {
    std::int64_t ms = ms_since_epoch(t);
    std::int64_t days = ms / 86400000;
    std::int64_t rem = ms % 86400000;
    if (rem < 0) {
        rem += 86400000;
        --days;
    }
    std::int64_t y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    const int hh = static_cast<int>(rem / 3600000);
    const int mi = static_cast<int>(rem / 60000 % 60);
    const int ss = static_cast<int>(rem / 1000 % 60);
    const int fff = static_cast<int>(rem % 1000);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03d+00:00",
                  static_cast<long long>(y), mo, d, hh, mi, ss, fff);
    return buf;
}

std::optional<Timestamp> parse_iso8601(std::string_view s) {
    std::int64_t y, mo, d, hh, mi, ss;
    if (!parse_digits(s, 0, 4, y)) return std::nullopt;
    if (s.size() < 19 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!parse_digits(s, 5, 2, mo) || !parse_digits(s, 8, 2, d) ||
        !parse_digits(s, 11, 2, hh) || !parse_digits(s, 14, 2, mi) ||
        !parse_digits(s, 17, 2, ss))
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || hh > 23 || mi > 59 || ss > 60)
        return std::nullopt;

    std::size_t pos = 19;
    std::int64_t fff = 0;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
        ++pos;
        std::size_t n = 0;
        std::int64_t v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (n < 3) v = v * 10 + (s[pos] - '0');
            ++pos;
            ++n;
        }
        if (n == 0) return std::nullopt;
        while (n < 3) {
            v *= 10;
            ++n;
        }
        fff = v;
    }

    std::int64_t offset_min = 0;
    if (pos < s.size()) {
        const char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const int sign = c == '+' ? 1 : -1;
            ++pos;
            std::int64_t oh, om = 0;
            if (!parse_digits(s, pos, 2, oh)) return std::nullopt;
            pos += 2;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos < s.size()) {
                if (!parse_digits(s, pos, 2, om)) return std::nullopt;
                pos += 2;
            }
            if (oh > 14 || om > 59) return std::nullopt;
            offset_min = sign * (oh * 60 + om);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo),
                                              static_cast<unsigned>(d));
    std::int64_t ms = days * 86400000 + hh * 3600000 + mi * 60000 + ss * 1000 + fff;
    ms -= offset_min * 60000;
    return timestamp_from_ms(ms);
}

} // namespace collabpred
