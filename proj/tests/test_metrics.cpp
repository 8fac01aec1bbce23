#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "tsnlab/metrics/csv.hpp"
#include "tsnlab/metrics/key_ledger.hpp"
#include "tsnlab/metrics/metrics.hpp"

using namespace tsnlab;
using namespace tsnlab::metrics;

namespace {

std::vector<TimeNs> periodic(std::size_t n, TimeNs cycle, TimeNs start = 0) {
    std::vector<TimeNs> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(start + static_cast<TimeNs>(i) * cycle);
    return t;
}

Summary with_rtt(double mean_us, const std::string& key = "k") {
    Summary s;
    s.comparable_key = key;
    s.rtt.mean_us = mean_us;
    s.rtt.count = 10;
    return s;
}

} // namespace

TEST_CASE("drop rates are percentages of the published count") {
    DropCounts c;
    c.b_to_l = 7;
    const auto r = compute_drop_rates(700000, c);
    CHECK(r.d_b_to_l == doctest::Approx(0.001));
    CHECK(r.d_sigma == doctest::Approx(0.001));

    DropCounts mixed{1, 2, 3, 4};
    const auto m = compute_drop_rates(1000, mixed);
    CHECK(m.d_p == doctest::Approx(0.1));
    CHECK(m.d_l == doctest::Approx(0.2));
    CHECK(m.d_b_to_p == doctest::Approx(0.4));
    CHECK(m.d_sigma == doctest::Approx(m.d_p + m.d_l + m.d_b_to_l + m.d_b_to_p));

    CHECK(compute_drop_rates(5, DropCounts{}).d_sigma == 0);
    CHECK_THROWS_AS(compute_drop_rates(0, DropCounts{}), std::invalid_argument);
    CHECK_THROWS_AS(compute_drop_rates(3, mixed), std::invalid_argument);
}

TEST_CASE("rtt statistics") {
    const auto s = compute_rtt_stats({500'000, 502'000, 501'000, 503'000});
    CHECK(s.count == 4);
    CHECK(s.mean_us == doctest::Approx(501.5));
    CHECK(s.median_us == doctest::Approx(501.5));
    CHECK(s.max_us == doctest::Approx(503));
    CHECK(compute_rtt_stats({}).count == 0);
}

TEST_CASE("jitter of a periodic series is zero") {
    const auto j = compute_jitter(periodic(100, 250'000, 17), 250'000);
    CHECK(j.mean_abs_dev_us == 0);
    CHECK(j.max_dev_us == 0);
    CHECK(j.peak_to_peak_us == 0);
    CHECK(j.spacings == 99);
}

TEST_CASE("alternating spacings give one microsecond of jitter") {
    std::vector<TimeNs> t{0};
    for (int i = 0; i < 100; ++i) t.push_back(t.back() + (i % 2 ? 251'000 : 249'000));
    const auto j = compute_jitter(t, 250'000);
    CHECK(j.mean_abs_dev_us == doctest::Approx(1.0));
    CHECK(j.max_dev_us == doctest::Approx(1.0));
    CHECK(j.peak_to_peak_us == doctest::Approx(2.0));
    CHECK(j.std_us == doctest::Approx(1.0));
}

TEST_CASE("a missing frame shows up as a double spacing") {
    auto t = periodic(10, 250'000);
    t.erase(t.begin() + 5);
    const auto j = compute_jitter(t, 250'000);
    CHECK(j.max_dev_us == doctest::Approx(250));
    CHECK(j.mean_abs_dev_us == doctest::Approx(250.0 / 8));
    const auto is = inter_arrival_spacings(t);
    CHECK(near_multiple(*std::max_element(is.begin(), is.end()), 250'000, 1000) == 2);
}

TEST_CASE("jitter needs two arrivals") {
    CHECK_THROWS_AS(compute_jitter({}, 250'000), std::invalid_argument);
    CHECK_THROWS_AS(compute_jitter({5}, 250'000), std::invalid_argument);
    CHECK_THROWS_AS(compute_is_ecdf({5}, 250'000), std::invalid_argument);
}

TEST_CASE("ecdf of spacing deviations") {
    const std::vector<TimeNs> t{0, 249'000, 500'000, 750'000, 1'001'000};
    const auto e = compute_is_ecdf(t, 250'000);
    const std::vector<EcdfPoint> expected{{-1000, 0.25}, {0, 0.5}, {1000, 1.0}};
    CHECK(e == expected);
    CHECK(ecdf_of_deviations({}).empty());
}

TEST_CASE("ecdf is monotone and ends at one") {
    std::mt19937_64 rng(3);
    std::vector<TimeNs> dev;
    for (int i = 0; i < 1000; ++i) dev.push_back(static_cast<TimeNs>(rng() % 2001) - 1000);
    const auto e = ecdf_of_deviations(dev);
    REQUIRE_FALSE(e.empty());
    for (std::size_t i = 1; i < e.size(); ++i) {
        CHECK(e[i].deviation_ns > e[i - 1].deviation_ns);
        CHECK(e[i].fraction > e[i - 1].fraction);
    }
    CHECK(e.back().fraction == doctest::Approx(1.0));
}

TEST_CASE("bridge latency from paired summaries") {
    CHECK(estimate_bridge_latency(with_rtt(547), with_rtt(500)) == doctest::Approx(47));
    CHECK(estimate_bridge_latency(with_rtt(280), with_rtt(250)) == doctest::Approx(30));
    CHECK(estimate_bridge_latency(with_rtt(500), with_rtt(500)) == 0);
    CHECK_THROWS_AS(estimate_bridge_latency(with_rtt(547, "a"), with_rtt(500, "b")), std::invalid_argument);
    Summary empty = with_rtt(500);
    empty.rtt.count = 0;
    CHECK_THROWS_AS(estimate_bridge_latency(with_rtt(547), empty), std::invalid_argument);
}

TEST_CASE("near multiple") {
    CHECK(near_multiple(500'300, 250'000, 1000) == 2);
    CHECK(near_multiple(-249'500, 250'000, 1000) == -1);
    CHECK_FALSE(near_multiple(125'000, 250'000, 1000));
    CHECK_THROWS_AS(near_multiple(1, 0, 1), std::invalid_argument);
}

TEST_CASE("ledger attributes each lost key to one segment") {
    KeyLedger l;
    // 1: returns. 2: lost before egress. 3: lost on the way to L.
    // 4: lost inside L. 5: lost on the way back. 6: reached P but was not delivered.
    for (std::int64_t k = 1; k <= 6; ++k) l.reach(k, Stage::Published);
    for (std::int64_t k : {1, 3, 4, 5, 6}) l.on_tap(TapPoint::PEgress, k, k * 1000);
    for (std::int64_t k : {1, 4, 5, 6}) l.on_tap(TapPoint::LIngress, k, k * 1000 + 100);
    for (std::int64_t k : {1, 5, 6}) {
        l.reach(k, Stage::LDelivered);
        l.reach(k, Stage::LPublished);
        l.on_tap(TapPoint::LEgress, k, k * 1000 + 200);
    }
    l.on_tap(TapPoint::PIngress, 1, 1500);
    l.on_tap(TapPoint::PIngress, 6, 6500);
    l.on_returned(1, 1500);

    CHECK(l.published() == 6);
    CHECK(l.returned() == 1);
    const auto d = l.drop_counts();
    CHECK(d.p == 2);
    CHECK(d.b_to_l == 1);
    CHECK(d.l == 1);
    CHECK(d.b_to_p == 1);
    CHECK(l.returned() + d.total() == l.published());
    REQUIRE(l.rtts().size() == 1);
    CHECK(l.rtts()[0] == 500);
    CHECK(l.returned_keys() == std::vector<std::int64_t>{1});
    CHECK(l.returned_times() == std::vector<TimeNs>{1500});
    CHECK(l.furthest(4) == Stage::LIngress);
    CHECK(l.furthest(99) == Stage::None);
}

TEST_CASE("ledger conserves keys under random loss") {
    std::mt19937_64 rng(11);
    KeyLedger l;
    const Stage path[] = {Stage::PEgress, Stage::LIngress, Stage::LDelivered, Stage::LPublished,
                          Stage::LEgress, Stage::PIngress};
    for (std::int64_t k = 1; k <= 5000; ++k) {
        l.reach(k, Stage::Published);
        bool lost = false;
        for (Stage s : path) {
            if (rng() % 50 == 0) {
                lost = true;
                break;
            }
            l.reach(k, s);
        }
        if (!lost) l.on_returned(k, k);
    }
    CHECK(l.returned() + l.drop_counts().total() == l.published());
}

TEST_CASE("ledger keeps the first egress time and ignores repeat returns") {
    KeyLedger l;
    l.reach(1, Stage::Published);
    l.on_tap(TapPoint::PEgress, 1, 100);
    l.on_tap(TapPoint::PEgress, 1, 350);
    l.on_returned(1, 600);
    l.on_returned(1, 900);
    CHECK(l.returned() == 1);
    CHECK(l.rtts() == std::vector<TimeNs>{500});
    CHECK_THROWS_AS(l.reach(0, Stage::Published), std::invalid_argument);
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(501.308) == "501.308");
    CHECK(format_number(std::int64_t{-7}) == "-7");
    CHECK(format_number(std::uint64_t{700000}) == "700000");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("csv escaping") {
    std::ostringstream out;
    CsvWriter w(out);
    w.row({"a", "b,c", "say \"hi\""});
    CHECK(out.str() == "a,\"b,c\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("summary csv has a header and one row per summary") {
    Summary s;
    s.published = 10;
    s.returned = 9;
    std::ostringstream out;
    write_summary_csv(out, {s, s});
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    std::size_t commas = std::count(header.begin(), header.end(), ',');
    CHECK(commas + 1 == summary_columns().size());
    CHECK(header.rfind("config_hash,", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) == commas);
    }
    CHECK(rows == 2);
    CHECK(summary_row(s).size() == summary_columns().size());
}

TEST_CASE("tap names") {
    CHECK(tap_name(TapPoint::LIngress) == "L_ingress");
    CHECK(tap_name(TapPoint::BIngressFromP) == "B_ingress_from_P");
}
