#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "darksts/error.hpp"
#include "darksts/geo.hpp"
#include "darksts/synth.hpp"
#include "support/oracles.hpp"

using namespace darksts;
using namespace darksts::geo;

TEST_SUITE("geo") {

TEST_CASE("construction validates and normalizes") {
    CHECK_THROWS_AS(GeoPoint(90.5, 0), Error);
    CHECK_THROWS_AS(GeoPoint(std::nan(""), 0), Error);
    CHECK(GeoPoint(0, 180).lon() == doctest::Approx(-180));
    CHECK(GeoPoint(0, 190).lon() == doctest::Approx(-170));
    CHECK(GeoPoint(0, -540).lon() == doctest::Approx(-180));
    try {
        GeoPoint(-91, 0);
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OutOfRange);
    }
}

TEST_CASE("haversine fixed values") {
    const GeoPoint p(45.25, 36.5);
    CHECK(haversine_distance(p, p) == 0.0);
    CHECK(haversine_distance({0, 0}, {0, 180}) == doctest::Approx(std::numbers::pi * kEarthRadiusM).epsilon(1e-12));
    CHECK(haversine_distance({0, 0}, {0, 180}) == doctest::Approx(20'015'114).epsilon(1e-6));
    // 0.0064 deg of longitude at 45.25 N on this sphere
    const double d = haversine_distance(p, {45.25, 36.5064});
    CHECK(d == doctest::Approx(testsupport::chord_distance(p, {45.25, 36.5064})).epsilon(1e-9));
    CHECK(d == doctest::Approx(501.0).epsilon(1e-3));
}

TEST_CASE("haversine agrees with the chord formula and obeys the metric axioms") {
    synth::Rng rng(11);
    const auto random_point = [&] { return GeoPoint(rng.uniform(-89, 89), rng.uniform(-180, 180)); };
    for (int i = 0; i < 2000; ++i) {
        const GeoPoint a = random_point(), b = random_point(), c = random_point();
        const double ab = haversine_distance(a, b);
        CHECK(ab == doctest::Approx(testsupport::chord_distance(a, b)).epsilon(1e-9));
        CHECK(ab == haversine_distance(b, a));
        CHECK(haversine_distance(a, c) <= ab + haversine_distance(b, c) + 1e-6);
        CHECK(ab > 0.0);
    }
    // near neighbours, including across the antimeridian
    for (int i = 0; i < 500; ++i) {
        const GeoPoint a(rng.uniform(-60, 60), rng.uniform(179.99, 180.0));
        const GeoPoint b(a.lat() + rng.uniform(-0.01, 0.01), a.lon() + rng.uniform(0.0, 0.02));
        CHECK(haversine_distance(a, b) == doctest::Approx(testsupport::chord_distance(a, b)).epsilon(1e-7));
        CHECK(haversine_distance(a, b) == haversine_distance(b, a));
    }
    CHECK(haversine_distance({10, 180}, {10, -180}) == 0.0);
}

TEST_CASE("local offset basics") {
    const GeoPoint o(45.0, 36.0);
    const auto zero = local_offset(o, o);
    CHECK(zero.east == 0.0);
    CHECK(zero.north == 0.0);
    const auto north = local_offset(o, {45.0 + 500.0 / kMetersPerDegree, 36.0});
    CHECK(north.east == doctest::Approx(0.0));
    CHECK(north.north == doctest::Approx(500.0).epsilon(1e-12));
    CHECK_THROWS_AS(local_offset(o, {46.0, 36.0}), Error);
}

TEST_CASE("local offset tracks the great-circle distance at short range") {
    synth::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const GeoPoint o(rng.uniform(-60, 60), rng.uniform(-180, 180));
        const double r = rng.uniform(1, 1'000), th = rng.uniform(0, 2 * std::numbers::pi);
        const GeoPoint p = offset_to_geo({r * std::cos(th), r * std::sin(th)}, o);
        const double h = testsupport::chord_distance(o, p);
        CHECK(std::abs(local_offset(o, p).norm() - h) <= 1e-4 * h);
    }
}

TEST_CASE("offset round trip within 10 km") {
    synth::Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const GeoPoint o(rng.uniform(-70, 70), rng.uniform(-180, 180));
        const double r = rng.uniform(0, 10'000), th = rng.uniform(0, 2 * std::numbers::pi);
        const GeoPoint p = offset_to_geo({r * std::cos(th), r * std::sin(th)}, o);
        const GeoPoint back = offset_to_geo(local_offset(o, p), o);
        CHECK(std::abs(back.lat() - p.lat()) <= 1e-9);
        CHECK(std::abs(lon_delta(back.lon(), p.lon())) <= 1e-9);
    }
}

TEST_CASE("interpolation") {
    const GeoPoint a(10, 179.0), b(12, -179.0);
    const GeoPoint m = interpolate(a, b, 0.5);
    CHECK(m.lat() == doctest::Approx(11));
    CHECK(std::abs(m.lon()) == doctest::Approx(180));
    CHECK(interpolate(a, b, 0.0) == a);
}

TEST_CASE("point in footprint") {
    const std::vector<GeoPoint> square{{45, 36}, {45, 37}, {46, 37}, {46, 36}};
    CHECK(point_in_footprint({45.5, 36.5}, square));
    CHECK_FALSE(point_in_footprint({45.5, 38.5}, square));
    CHECK_FALSE(point_in_footprint({44.4, 36.5}, square));
    for (const auto& v : square) CHECK(point_in_footprint(v, square));
    CHECK(point_in_footprint({45, 36.5}, square));  // on an edge

    auto closed = square;
    closed.push_back(square.front());
    CHECK(point_in_footprint({45.5, 36.5}, closed));

    const std::vector<GeoPoint> two{{45, 36}, {46, 37}};
    CHECK_THROWS_AS(point_in_footprint({45, 36}, two), Error);
    const std::vector<GeoPoint> flat{{45, 36}, {45.5, 36.5}, {46, 37}};
    try {
        point_in_footprint({45, 36}, flat);
        FAIL("expected DegeneratePolygon");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegeneratePolygon);
    }
}

TEST_CASE("point in a concave footprint") {
    // U shape open to the north
    const std::vector<GeoPoint> u{{0, 0}, {0, 3}, {3, 3}, {3, 2}, {1, 2}, {1, 1}, {3, 1}, {3, 0}};
    CHECK(point_in_footprint({0.5, 1.5}, u));
    CHECK_FALSE(point_in_footprint({2, 1.5}, u));
    CHECK(point_in_footprint({2, 0.5}, u));
}

}  // TEST_SUITE
