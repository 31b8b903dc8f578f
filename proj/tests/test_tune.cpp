#include <doctest.h>

#include <cmath>

#include "evdet/error.hpp"
#include "evdet/labeling.hpp"
#include "evdet/rng.hpp"
#include "evdet/textio.hpp"
#include "evdet/tune.hpp"

#include "support/tempdir.hpp"

using namespace evdet;

namespace {

// Noiseless overlap profile with three events, plus its truth set.
struct Fixture {
    OverlapSeries op;
    AdjustedEventSet truth;
    double width = 0.0;
};

Fixture make_fixture() {
    TimeSeries flat;
    flat.spacing = 1.0;
    flat.feature_names = {"x"};
    flat.values.assign(300, 0.0);
    EventSet set;
    set.events = {{50.0, 50.0}, {150.0, 150.0}, {250.0, 250.0}};
    Fixture f;
    f.width = window_duration(5, 1.0);
    f.truth = adjust_events(set, f.width);
    f.op = compute_overlap_series(flat, f.truth, 5);
    return f;
}

} // namespace

TEST_CASE("expand_grid follows the canonical order") {
    const TuneGrid grid{{1.0, 2.0}, {3, 4}, {0.5}};
    const auto points = expand_grid(grid);
    REQUIRE(points.size() == 4);
    CHECK(points[0].sigma == 1.0);
    CHECK(points[0].radius == 3);
    CHECK(points[1].sigma == 1.0);
    CHECK(points[1].radius == 4);
    CHECK(points[2].sigma == 2.0);
    CHECK(points[3].radius == 4);

    CHECK_THROWS_AS(expand_grid(TuneGrid{{}, {3}, {0.5}}), Error);
}

TEST_CASE("default points pair each sigma with a three-sigma radius") {
    const auto points = default_tune_points();
    REQUIRE(points.size() == 45);
    CHECK(points[0].sigma == 0.5);
    CHECK(points[0].radius == 2);
    CHECK(points[0].threshold == 0.1);
    CHECK(points[44].sigma == 8.0);
    CHECK(points[44].radius == 24);
    CHECK(points[44].threshold == 0.9);
}

TEST_CASE("tune finds a perfect setting on a noiseless profile") {
    const Fixture f = make_fixture();
    const TuneGrid grid{{0.5}, {1}, {0.9}};
    const TuneResult result = tune(f.op, f.truth, grid, f.width, f.width);
    CHECK(result.best_f1 == 1.0);
    CHECK(result.table.size() == 1);
}

TEST_CASE("unreachable thresholds tie at zero and keep grid order") {
    const Fixture f = make_fixture();
    const TuneGrid grid{{0.5, 1.0}, {2}, {2.0, 3.0}};
    const TuneResult result = tune(f.op, f.truth, grid, f.width, f.width);
    CHECK(result.best_f1 == 0.0);
    CHECK(result.best.sigma == 0.5);
    CHECK(result.best.radius == 2);
    CHECK(result.best.threshold == 2.0);
    for (const TuneEntry& e : result.table) CHECK(e.f1 == 0.0);
}

TEST_CASE("tune is reproducible and at least as good as any grid point") {
    const Fixture f = make_fixture();
    const TuneGrid grid{{0.5, 1.0, 2.0}, {2, 4}, {0.3, 0.6, 0.9}};
    const TuneResult a = tune(f.op, f.truth, grid, f.width, f.width);
    const TuneResult b = tune(f.op, f.truth, grid, f.width, f.width);
    REQUIRE(a.table.size() == b.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) {
        CHECK(a.table[i].f1 == b.table[i].f1);
        CHECK(a.table[i].precision == b.table[i].precision);
    }
    for (const TuneEntry& e : a.table) CHECK(a.best_f1 >= e.f1);
}

TEST_CASE("tune rejects empty inputs") {
    const Fixture f = make_fixture();
    CHECK_THROWS_AS(tune(OverlapSeries{}, f.truth, std::vector<SmoothParams>{{1, 2, 0.5}}, f.width,
                         f.width),
                    Error);
    CHECK_THROWS_AS(tune(f.op, f.truth, std::vector<SmoothParams>{}, f.width, f.width), Error);
}

TEST_CASE("tune table and best round-trip through files") {
    testsupport::TempDir dir("tune");
    const Fixture f = make_fixture();
    const TuneResult result = tune(f.op, f.truth, TuneGrid{{0.5, 1.0}, {2}, {0.5, 0.9}}, f.width,
                                   f.width);
    save_tune_table(result, dir.file("table.csv"));
    save_tune_best(result, dir.file("best.csv"));

    const auto lines = textio::read_lines(dir.file("table.csv"));
    CHECK(lines[0] == "sigma,radius,threshold,precision,recall,f1");
    CHECK(lines.size() == result.table.size() + 1);

    const SmoothParams best = load_tune_best(dir.file("best.csv"));
    CHECK(best.sigma == result.best.sigma);
    CHECK(best.radius == result.best.radius);
    CHECK(best.threshold == result.best.threshold);
}

TEST_CASE("tuned threshold recovers exactly three peaks under mild noise") {
    Fixture f = make_fixture();
    Rng rng(88);
    for (double& v : f.op.values) v += 0.05 * (2.0 * rng.uniform() - 1.0);

    const TuneResult result = tune(f.op, f.truth, default_tune_points(), f.width, f.width);
    CHECK(result.best_f1 == 1.0);
    const OverlapSeries smoothed = smooth(f.op, {result.best.sigma, result.best.radius});
    const PeakList peaks = find_peaks(smoothed, result.best.threshold);
    CHECK(peaks.size() == 3);
}
