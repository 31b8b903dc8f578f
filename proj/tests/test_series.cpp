#include <doctest.h>

#include <cmath>

#include "evdet/error.hpp"
#include "evdet/rng.hpp"
#include "evdet/series.hpp"
#include "evdet/textio.hpp"

#include "support/tempdir.hpp"

using namespace evdet;
using testsupport::TempDir;

namespace {

void write(const std::string& path, const std::string& content) {
    textio::write_file(path, content);
}

} // namespace

TEST_CASE("load_series parses a minimal file") {
    TempDir dir("series");
    const auto path = dir.file("s.csv");
    write(path, "time,x\n0,1.5\n1,2.5\n2,3.5\n");
    const TimeSeries s = load_series(path, "time", {"x"});
    CHECK(s.steps() == 3);
    CHECK(s.features() == 1);
    CHECK(s.spacing == 1.0);
    CHECK(s.start_time == 0.0);
    CHECK(s.value(2, 0) == 3.5);
}

TEST_CASE("load_series rejects non-uniform sampling") {
    TempDir dir("series");
    const auto path = dir.file("s.csv");
    write(path, "time,x\n0,1\n1,2\n2.5,3\n");
    CHECK_THROWS_WITH_AS(load_series(path, "time", {"x"}), doctest::Contains("NonUniformSampling"),
                         Error);
}

TEST_CASE("load_series handles a 29-feature file") {
    // A width-2 window over 29 features gives the documented 1,201-parameter
    // model: (2*29 + 1)*20 + 21.
    TempDir dir("series");
    const auto path = dir.file("s.csv");
    std::string header = "time";
    for (int k = 1; k <= 29; ++k) header += ",v" + std::to_string(k);
    std::string body;
    for (int row = 0; row < 3; ++row) {
        body += std::to_string(row);
        for (int k = 0; k < 29; ++k) body += "," + std::to_string(row + k);
        body += "\n";
    }
    write(path, header + "\n" + body);
    const TimeSeries s = load_series(path, "time", {});
    CHECK(s.features() == 29);
    const std::size_t w = 2;
    const std::size_t q = 20;
    CHECK((w * s.features() + 1) * q + (q + 1) == 1201);
}

TEST_CASE("load_series error paths") {
    TempDir dir("series");
    const auto path = dir.file("s.csv");
    write(path, "time,x\n0,1\n1,nan\n");
    CHECK_THROWS_AS(load_series(path, "time", {"x"}), Error);

    write(path, "time,x\n0,1\n1,2\n");
    CHECK_THROWS_WITH_AS(load_series(path, "time", {"y"}), doctest::Contains("MissingColumn"),
                         Error);
    CHECK_THROWS_WITH_AS(load_series(path, "ts", {"x"}), doctest::Contains("MissingColumn"), Error);

    write(path, "time,x\n0,1\n");
    CHECK_THROWS_AS(load_series(path, "time", {"x"}), Error);
}

TEST_CASE("series round-trips bit-identically") {
    TempDir dir("series");
    TimeSeries s;
    s.start_time = -3.25;
    s.spacing = 0.125;
    s.feature_names = {"a", "b"};
    Rng rng(99);
    for (int i = 0; i < 40; ++i) s.values.push_back(rng.normal() * 1e3);
    const auto path = dir.file("s.csv");
    save_series(s, path);
    const TimeSeries back = load_series(path, "time", {"a", "b"});
    CHECK(back.values == s.values);
    CHECK(back.start_time == s.start_time);
    CHECK(back.spacing == s.spacing);

    save_series(back, dir.file("s2.csv"));
    CHECK(textio::read_file(path) == textio::read_file(dir.file("s2.csv")));
}

TEST_CASE("load_events validates and sorts") {
    TempDir dir("events");
    const auto path = dir.file("e.csv");
    write(path, "start,end\n30,40\n10,20\n");
    const EventSet set = load_events(path);
    REQUIRE(set.size() == 2);
    CHECK(set.events[0].start == 10.0);
    CHECK(set.events[1].start == 30.0);

    write(path, "start,end\n10,20\n15,25\n");
    CHECK_THROWS_WITH_AS(load_events(path), doctest::Contains("OverlappingEvents"), Error);

    write(path, "start,end\n10,5\n");
    CHECK_THROWS_WITH_AS(load_events(path), doctest::Contains("InvertedInterval"), Error);

    write(path, "start,end\n");
    CHECK(load_events(path).empty());
}

TEST_CASE("labels_to_events centers events on labeled steps") {
    TimeSeries s;
    s.start_time = 0.0;
    s.spacing = 1.0;
    s.feature_names = {"x"};
    s.values = {0, 0, 0, 0};

    SUBCASE("single label") {
        const EventSet set = labels_to_events(s, {0, 1, 0, 0}, 1.0);
        REQUIRE(set.size() == 1);
        CHECK(set.events[0].start == 0.5);
        CHECK(set.events[0].end == 1.5);
    }
    SUBCASE("no labels") { CHECK(labels_to_events(s, {0, 0, 0, 0}, 1.0).empty()); }
    SUBCASE("labels closer than the duration") {
        TimeSeries fine = s;
        fine.spacing = 0.5;
        CHECK_THROWS_WITH_AS(labels_to_events(fine, {0, 0, 1, 1}, 1.0),
                             doctest::Contains("OverlappingEvents"), Error);
    }
    SUBCASE("non-binary labels rejected") {
        CHECK_THROWS_AS(labels_to_events(s, {0, 0.5, 0, 0}, 1.0), Error);
    }
    SUBCASE("midpoints recover the labeled timestamps exactly") {
        const EventSet set = labels_to_events(s, {1, 0, 1, 0}, 1.0);
        REQUIRE(set.size() == 2);
        CHECK(set.events[0].midpoint() == s.time_at(0));
        CHECK(set.events[1].midpoint() == s.time_at(2));
    }
}

TEST_CASE("adjust_events re-centers with fixed duration") {
    SUBCASE("interval event") {
        EventSet set;
        set.events = {{10, 20}};
        const AdjustedEventSet adj = adjust_events(set, 4.0);
        REQUIRE(adj.size() == 1);
        CHECK(adj.events[0].start == 13.0);
        CHECK(adj.events[0].end == 17.0);
        CHECK(adj.source_midpoints[0] == 15.0);
    }
    SUBCASE("point event") {
        EventSet set;
        set.events = {{10, 10}};
        const AdjustedEventSet adj = adjust_events(set, 2.0);
        CHECK(adj.events[0].start == 9.0);
        CHECK(adj.events[0].end == 11.0);
    }
    SUBCASE("midpoints closer than the duration") {
        EventSet set;
        set.events = {{100, 100}, {100.5, 100.5}};
        CHECK_THROWS_WITH_AS(adjust_events(set, 2.0), doctest::Contains("OverlappingEvents"),
                             Error);
    }
    SUBCASE("idempotent on already-adjusted sets") {
        EventSet set;
        Rng rng(7);
        double t = 0.0;
        for (int i = 0; i < 50; ++i) {
            t += 3.0 + 10.0 * rng.uniform();
            const double len = rng.uniform();
            set.events.push_back({t, t + len});
            t += len;
        }
        const AdjustedEventSet once = adjust_events(set, 2.5);
        const AdjustedEventSet twice = adjust_events(once, 2.5);
        REQUIRE(once.size() == twice.size());
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK(once.events[i].start == twice.events[i].start);
            CHECK(once.events[i].end == twice.events[i].end);
        }
    }
}

TEST_CASE("event files round-trip") {
    TempDir dir("events");
    EventSet set;
    set.events = {{0.125, 1.25}, {7.5, 9.875}};
    const auto path = dir.file("e.csv");
    save_events(set, path);
    const EventSet back = load_events(path);
    REQUIRE(back.size() == 2);
    CHECK(back.events[0].start == 0.125);
    CHECK(back.events[1].end == 9.875);
}

TEST_CASE("slice_steps keeps spacing and shifts the origin") {
    TimeSeries s;
    s.start_time = 5.0;
    s.spacing = 2.0;
    s.feature_names = {"x", "y"};
    for (int i = 0; i < 20; ++i) s.values.push_back(i);
    const TimeSeries cut = slice_steps(s, 3, 7);
    CHECK(cut.steps() == 4);
    CHECK(cut.start_time == 11.0);
    CHECK(cut.value(0, 0) == s.value(3, 0));
    CHECK_THROWS_AS(slice_steps(s, 7, 3), Error);
}

TEST_CASE("window_duration matches the step arithmetic") {
    CHECK(window_duration(2, 1.0) == 1.0);
    CHECK(window_duration(76, 4.0) == 300.0);
}
