#include <doctest.h>

#include "collabpred/io.hpp"
#include "collabpred/simulate.hpp"
#include "collabpred/xes.hpp"

#include "../support/generators.hpp"

using namespace collabpred;

namespace {

std::string wrap_event(const std::string& inner) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<log>\n <trace>\n  <string key=\"concept:name\" value=\"c1\"/>\n"
           "  <event>\n" +
           inner +
           "  </event>\n </trace>\n</log>\n";
}

const std::string kBaseAttrs =
    "   <string key=\"concept:name\" value=\"Receive disease info\"/>\n"
    "   <date key=\"time:timestamp\" value=\"2024-01-01T10:00:00.000+00:00\"/>\n"
    "   <string key=\"participant\" value=\"Gynecologist\"/>\n";

} // namespace

TEST_SUITE("ingest_xes") {

TEST_CASE("message event with fromParticipant maps to a receive") {
    const EventLog log = parse_xes(wrap_event(
        kBaseAttrs +
        "   <string key=\"elemType\" value=\"message\"/>\n"
        "   <string key=\"fromParticipant\" value=\"Gynecologist2\"/>\n"));
    REQUIRE(log.traces.size() == 1);
    const Event& e = log.traces[0].events[0];
    CHECK(e.elem_type == ElemType::Message);
    CHECK(e.direction == Direction::Receive);
    CHECK(e.counterpart == "Gynecologist2");
    CHECK(e.activity == "Receive disease info");
}

TEST_CASE("elemType is case-insensitive and defaults to user") {
    const EventLog with_caps = parse_xes(wrap_event(
        kBaseAttrs +
        "   <string key=\"elemType\" value=\"MESSAGE\"/>\n"
        "   <string key=\"toParticipant\" value=\"Laboratory\"/>\n"));
    CHECK(with_caps.traces[0].events[0].elem_type == ElemType::Message);
    CHECK(with_caps.traces[0].events[0].direction == Direction::Send);

    const EventLog plain = parse_xes(wrap_event(kBaseAttrs));
    CHECK(plain.traces[0].events[0].elem_type == ElemType::User);
    CHECK(plain.traces[0].events[0].direction == Direction::None);
}

TEST_CASE("an event carrying both counterpart attributes is rejected") {
    CHECK_THROWS_WITH_AS(
        parse_xes(wrap_event(
            kBaseAttrs +
            "   <string key=\"elemType\" value=\"message\"/>\n"
            "   <string key=\"fromParticipant\" value=\"A\"/>\n"
            "   <string key=\"toParticipant\" value=\"B\"/>\n")),
        doctest::Contains("BothFromAndTo"), Error);
}

TEST_CASE("missing concept name or timestamp is rejected") {
    CHECK_THROWS_WITH_AS(
        parse_xes(wrap_event(
            "   <date key=\"time:timestamp\" value=\"2024-01-01T10:00:00Z\"/>\n"
            "   <string key=\"participant\" value=\"P\"/>\n")),
        doctest::Contains("MissingConceptName"), Error);
    CHECK_THROWS_WITH_AS(
        parse_xes(wrap_event(
            "   <string key=\"concept:name\" value=\"a\"/>\n"
            "   <string key=\"participant\" value=\"P\"/>\n")),
        doctest::Contains("MissingTimestamp"), Error);
}

TEST_CASE("malformed XML is rejected with a line number") {
    CHECK_THROWS_WITH_AS(parse_xes("<log><trace>"), doctest::Contains("MalformedXml"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_xes("not xml at all"),
                         doctest::Contains("MalformedXml"), Error);
    CHECK_THROWS_WITH_AS(parse_xes("<notlog/>"), doctest::Contains("MalformedXml"),
                         Error);
}

TEST_CASE("out-of-order event timestamps propagate the validation error") {
    const std::string doc =
        "<log>\n <trace>\n  <string key=\"concept:name\" value=\"c1\"/>\n"
        "  <event>\n"
        "   <string key=\"concept:name\" value=\"late\"/>\n"
        "   <date key=\"time:timestamp\" value=\"2024-01-01T10:00:00Z\"/>\n"
        "   <string key=\"participant\" value=\"P\"/>\n"
        "  </event>\n"
        "  <event>\n"
        "   <string key=\"concept:name\" value=\"early\"/>\n"
        "   <date key=\"time:timestamp\" value=\"2024-01-01T09:00:00Z\"/>\n"
        "   <string key=\"participant\" value=\"P\"/>\n"
        "  </event>\n"
        " </trace>\n</log>\n";
    CHECK_THROWS_WITH_AS(parse_xes(doc), doctest::Contains("NonMonotoneTimestamps"),
                         Error);
}

TEST_CASE("unknown string attributes pass through to extra") {
    const EventLog log = parse_xes(wrap_event(
        kBaseAttrs + "   <string key=\"org:resource\" value=\"nurse-7\"/>\n"));
    CHECK(log.traces[0].events[0].extra.at("org:resource") == "nurse-7");
}

TEST_CASE("empty log round-trips as a document with zero traces") {
    const std::string doc = write_xes(EventLog{});
    CHECK(doc.find("<trace>") == std::string::npos);
    CHECK(parse_xes(doc) == EventLog{});
}

TEST_CASE("single-event log emits exactly one trace and one event") {
    Trace t;
    t.case_id = "c1";
    Event e;
    e.case_id = "c1";
    e.activity = "ship";
    e.participant = "Alpha";
    e.timestamp = timestamp_from_ms(42);
    t.events = {e};
    const EventLog log = EventLog::from_traces({t});
    const std::string doc = write_xes(log);
    CHECK(doc.find("<trace>") == doc.rfind("<trace>"));
    CHECK(doc.find("<event>") == doc.rfind("<event>"));
    CHECK(parse_xes(doc) == log);
}

TEST_CASE("random logs round-trip exactly") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        testing::GenOptions opts;
        opts.nasty_values = true;
        const EventLog log = testing::random_log(seed, opts);
        CHECK(parse_xes(write_xes(log)) == log);
    }
}

TEST_CASE("simulated logs round-trip exactly") {
    for (const std::string& name : builtin_model_names()) {
        SimConfig cfg;
        cfg.n_cases = 10;
        cfg.seed = 7;
        const EventLog log = simulate(builtin_model(name), cfg);
        CHECK(parse_xes(write_xes(log)) == log);
    }
}

TEST_CASE("the committed example file parses") {
    const EventLog log = parse_xes(read_file(std::string(COLLABPRED_DOCS_DIR) +
                                             "/examples/sample.xes"));
    REQUIRE(log.traces.size() == 1);
    CHECK(log.traces[0].case_id == "case_1");
    REQUIRE(log.traces[0].events.size() == 3);
    CHECK(log.traces[0].events[1].direction == Direction::Send);
    CHECK(log.participants ==
          std::set<std::string>{"Buyer", "Reseller"});
}

} // TEST_SUITE
