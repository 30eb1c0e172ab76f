#include <doctest.h>

#include "collabpred/csv.hpp"
#include "collabpred/io.hpp"
#include "collabpred/simulate.hpp"

#include "../support/generators.hpp"

using namespace collabpred;

TEST_SUITE("ingest_csv") {

TEST_CASE("rows group by case and sort by timestamp") {
    const std::string doc =
        "case_id,activity,timestamp,participant\n"
        "c1,a,2024-01-01T00:00:02.000+00:00,P\n"
        "c2,x,2024-01-01T00:00:00.000+00:00,Q\n"
        "c1,b,2024-01-01T00:00:01.000+00:00,P\n"
        "c2,y,2024-01-01T00:00:03.000+00:00,Q\n";
    const EventLog log = parse_csv(doc, ColumnMapping{});
    REQUIRE(log.traces.size() == 2);
    // Case order follows first appearance; events re-sorted by timestamp.
    CHECK(log.traces[0].case_id == "c1");
    CHECK(log.traces[0].events[0].activity == "b");
    CHECK(log.traces[0].events[1].activity == "a");
    CHECK(log.traces[1].case_id == "c2");
    REQUIRE(log.traces[1].events.size() == 2);
}

TEST_CASE("timestamp ties keep input order") {
    const std::string doc =
        "case_id,activity,timestamp,participant\n"
        "c1,first,2024-01-01T00:00:00.000+00:00,P\n"
        "c1,second,2024-01-01T00:00:00.000+00:00,P\n";
    const EventLog log = parse_csv(doc, ColumnMapping{});
    CHECK(log.traces[0].events[0].activity == "first");
    CHECK(log.traces[0].events[1].activity == "second");
}

TEST_CASE("header-only file yields the empty log") {
    CHECK(parse_csv("case_id,activity,timestamp,participant\n", ColumnMapping{}) ==
          EventLog{});
}

TEST_CASE("unparseable timestamp names the row") {
    const std::string doc =
        "case_id,activity,timestamp,participant\n"
        "c1,a,not-a-date,P\n";
    CHECK_THROWS_WITH_AS(parse_csv(doc, ColumnMapping{}),
                         doctest::Contains("UnparseableTimestamp"), Error);
    try {
        parse_csv(doc, ColumnMapping{});
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("missing mandatory column is rejected by name") {
    CHECK_THROWS_WITH_AS(parse_csv("case_id,activity,timestamp\nx,y,z\n",
                                   ColumnMapping{}),
                         doctest::Contains("participant"), Error);
    CHECK_THROWS_WITH_AS(parse_csv("", ColumnMapping{}),
                         doctest::Contains("MissingColumn"), Error);
}

TEST_CASE("direction comes from the counterpart columns") {
    const std::string doc =
        "case_id,activity,timestamp,participant,elemType,fromParticipant,toParticipant\n"
        "c1,Send m1,2024-01-01T00:00:00.000+00:00,Buyer,message,,Reseller\n"
        "c1,Receive m1,2024-01-01T00:01:00.000+00:00,Reseller,message,Buyer,\n";
    const EventLog log = parse_csv(doc, ColumnMapping{});
    CHECK(log.traces[0].events[0].direction == Direction::Send);
    CHECK(log.traces[0].events[0].counterpart == "Reseller");
    CHECK(log.traces[0].events[1].direction == Direction::Receive);

    const std::string both =
        "case_id,activity,timestamp,participant,elemType,fromParticipant,toParticipant\n"
        "c1,Send m1,2024-01-01T00:00:00.000+00:00,Buyer,message,Reseller,Reseller\n";
    CHECK_THROWS_WITH_AS(parse_csv(both, ColumnMapping{}),
                         doctest::Contains("BothFromAndTo"), Error);
}

TEST_CASE("unknown columns pass through to extra") {
    const std::string doc =
        "case_id,activity,timestamp,participant,cost\n"
        "c1,a,2024-01-01T00:00:00.000+00:00,P,12.50\n"
        "c1,b,2024-01-01T00:01:00.000+00:00,P,\n";
    const EventLog log = parse_csv(doc, ColumnMapping{});
    CHECK(log.traces[0].events[0].extra.at("cost") == "12.50");
    CHECK(!log.traces[0].events[1].extra.contains("cost"));
}

TEST_CASE("msgName column feeds the message label") {
    const std::string doc =
        "case_id,activity,timestamp,participant,elemType,toParticipant,msgName\n"
        "c1,Send order form,2024-01-01T00:00:00.000+00:00,Buyer,message,Reseller,m1\n";
    const EventLog log = parse_csv(doc, ColumnMapping{});
    CHECK(message_label(log.traces[0].events[0]) == "m1");
    CHECK(log.message_labels == std::set<std::string>{"m1"});
}

TEST_CASE("deterministic output: same log writes identical bytes") {
    const EventLog log = testing::random_log(11);
    CHECK(write_csv(log, ColumnMapping{}) == write_csv(log, ColumnMapping{}));
}

TEST_CASE("empty log writes the header line only") {
    const std::string out = write_csv(EventLog{}, ColumnMapping{});
    CHECK(out ==
          "case_id,activity,timestamp,participant,elemType,fromParticipant,"
          "toParticipant,msgName\n");
}

TEST_CASE("random logs round-trip exactly, including nasty values") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        testing::GenOptions opts;
        opts.nasty_values = true;
        const EventLog log = testing::random_log(seed, opts);
        CHECK(parse_csv(write_csv(log, ColumnMapping{}), ColumnMapping{}) == log);
    }
}

TEST_CASE("simulated logs round-trip exactly") {
    for (const std::string& name : builtin_model_names()) {
        SimConfig cfg;
        cfg.n_cases = 10;
        cfg.seed = 7;
        const EventLog log = simulate(builtin_model(name), cfg);
        CHECK(parse_csv(write_csv(log, ColumnMapping{}), ColumnMapping{}) == log);
    }
}

TEST_CASE("custom column names and token timestamp format") {
    ColumnMapping m;
    m.case_col = "case";
    m.activity_col = "event";
    m.timestamp_col = "when";
    m.participant_col = "org";
    m.elem_type_col = "";
    m.from_col = "";
    m.to_col = "";
    m.msg_name_col = "";
    m.timestamp_format = "%d/%m/%Y %H:%M:%S";
    const std::string doc =
        "case,event,when,org\n"
        "c1,a,31/01/2024 09:30:00,P\n";
    const EventLog log = parse_csv(doc, m);
    CHECK(format_iso8601(log.traces[0].events[0].timestamp) ==
          "2024-01-31T09:30:00.000+00:00");
    CHECK(parse_csv(write_csv(log, m), m) == log);
}

TEST_CASE("the committed example file parses") {
    const EventLog log = parse_csv(
        read_file(std::string(COLLABPRED_DOCS_DIR) + "/examples/sample.csv"),
        ColumnMapping{});
    REQUIRE(log.traces.size() == 2);
    CHECK(log.traces[0].events.size() == 3);
    CHECK(log.message_labels == std::set<std::string>{"m1"});
}

} // TEST_SUITE
