#include <doctest.h>

#include "collabpred/time.hpp"

using namespace collabpred;

TEST_SUITE("time") {

TEST_CASE("formats epoch and known instants") {
    CHECK(format_iso8601(timestamp_from_ms(0)) == "1970-01-01T00:00:00.000+00:00");
    CHECK(format_iso8601(timestamp_from_ms(1704067200000)) ==
          "2024-01-01T00:00:00.000+00:00");
    CHECK(format_iso8601(timestamp_from_ms(1706693400250)) ==
          "2024-01-31T09:30:00.250+00:00");
}

TEST_CASE("parses offsets and fractions") {
    CHECK(parse_iso8601("2024-01-01T00:00:00.000+00:00") ==
          timestamp_from_ms(1704067200000));
    CHECK(parse_iso8601("2024-01-01T00:00:00Z") == timestamp_from_ms(1704067200000));
    CHECK(parse_iso8601("2024-01-01 00:00:00") == timestamp_from_ms(1704067200000));
    CHECK(parse_iso8601("2024-01-01T02:00:00+02:00") ==
          timestamp_from_ms(1704067200000));
    CHECK(parse_iso8601("2024-01-01T02:00:00+0200") ==
          timestamp_from_ms(1704067200000));
    // Fractions beyond milliseconds truncate.
    CHECK(parse_iso8601("2024-01-01T00:00:00.1234567Z") ==
          timestamp_from_ms(1704067200123));
    CHECK(parse_iso8601("2024-01-01T00:00:00.5Z") == timestamp_from_ms(1704067200500));
}

TEST_CASE("rejects malformed input") {
    CHECK(!parse_iso8601(""));
    CHECK(!parse_iso8601("not-a-date"));
    CHECK(!parse_iso8601("2024-13-01T00:00:00Z"));
    CHECK(!parse_iso8601("2024-01-01T25:00:00Z"));
    CHECK(!parse_iso8601("2024-01-01T00:00:00.Z"));
    CHECK(!parse_iso8601("2024-01-01T00:00:00+25:00"));
    CHECK(!parse_iso8601("2024-01-01T00:00:00Zjunk"));
}

TEST_CASE("format/parse round-trip") {
    for (std::int64_t ms : {0LL, 1LL, 999LL, 1704067200000LL, 4102444799999LL}) {
        const auto t = timestamp_from_ms(ms);
        CHECK(parse_iso8601(format_iso8601(t)) == t);
    }
}

} // TEST_SUITE
