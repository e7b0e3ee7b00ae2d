#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "toricap/extremal.hpp"
#include "toricap/rng.hpp"

using toricap::contains;
using toricap::eval_extremal;
using toricap::eval_geodesic;
using toricap::GeneratorSet;
using toricap::GeodesicSpec;
using toricap::grid_llt_oracle;
using toricap::interpolate;
using toricap::legendre_image;
using toricap::Point;
using toricap::scale;
using toricap::WeightedExtremal;

namespace {

GeneratorSet random_set(toricap::rng::Stream& stream, int dim) {
    const int count = 1 + static_cast<int>(stream.next_below(4));
    std::vector<Point> gens;
    for (int i = 0; i < count; ++i) {
        Point g(static_cast<std::size_t>(dim));
        for (auto& v : g) v = stream.next_in(-3.0, -0.2);
        gens.push_back(std::move(g));
    }
    return toricap::reduce(GeneratorSet(dim, std::move(gens), 0.2));
}

GeodesicSpec random_spec(toricap::rng::Stream& stream, int dim) {
    return GeodesicSpec(WeightedExtremal(random_set(stream, dim), stream.next_in(0.5, 2.0)),
                        WeightedExtremal(random_set(stream, dim), stream.next_in(0.5, 2.0)));
}

Point random_interior(toricap::rng::Stream& stream, int dim) {
    Point s(static_cast<std::size_t>(dim));
    for (auto& v : s) v = stream.next_in(-3.5, -0.05);
    return s;
}

}  // namespace

TEST_CASE("legendre image of a weighted extremal function") {
    const WeightedExtremal u(GeneratorSet(2, {{-1.0, -1.0}}), 1.0);
    CHECK(legendre_image(u, {0.0, 0.0}) == 1.0);
    CHECK(legendre_image(u, {2.0, 3.0}) == 0.0);
    CHECK(legendre_image(u, {0.25, 0.25}) == Catch::Approx(0.5).margin(1e-15));
    CHECK_THROWS_AS(legendre_image(u, {-0.1, 0.0}), std::invalid_argument);
}

TEST_CASE("extremal function of the unit-log disk in one variable") {
    const GeneratorSet q(1, {{-1.0}});
    CHECK(eval_extremal(q, 1.0, {-0.5}) == Catch::Approx(-0.5).margin(1e-10));
    CHECK(eval_extremal(q, 1.0, {-2.0}) == Catch::Approx(-1.0).margin(1e-10));
    // Value climbs to 0 toward the orthant boundary.
    CHECK(std::abs(eval_extremal(q, 1.0, {-1e-3})) <= 1e-3 + 1e-12);

    toricap::rng::Stream stream(1);
    for (int i = 0; i < 1000; ++i) {
        const double s = stream.next_in(-4.0, -1e-3);
        const double expected = std::max(s, -1.0);
        CHECK(eval_extremal(q, 1.0, {s}) == Catch::Approx(expected).margin(1e-9));
    }
}

TEST_CASE("geodesic endpoints and degenerate specs") {
    toricap::rng::Stream stream(12);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 1 + static_cast<int>(stream.next_below(3));
        const GeodesicSpec spec = random_spec(stream, dim);
        const Point s = random_interior(stream, dim);
        CHECK(eval_geodesic(spec, 0.0, s) ==
              Catch::Approx(eval_extremal(spec.u0.set, spec.u0.weight, s)).margin(1e-9));
        CHECK(eval_geodesic(spec, 1.0, s) ==
              Catch::Approx(eval_extremal(spec.u1.set, spec.u1.weight, s)).margin(1e-9));

        const GeodesicSpec flat(spec.u0, spec.u0);
        const double v0 = eval_geodesic(flat, 0.0, s);
        CHECK(eval_geodesic(flat, 0.37, s) == Catch::Approx(v0).margin(1e-10));
        CHECK(eval_geodesic(flat, 1.0, s) == Catch::Approx(v0).margin(1e-10));
    }
}

TEST_CASE("halved set with doubled weight: geodesic value at the generators") {
    const GeneratorSet q0(2, {{-1.0, -2.0}, {-2.0, -1.0}});
    const GeodesicSpec spec(WeightedExtremal(q0, 2.0), WeightedExtremal(scale(q0, 0.5), 1.0));
    for (double t : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        for (const auto& g : q0.generators()) {
            CHECK(eval_geodesic(spec, t, g) == Catch::Approx(-2.0 + t).margin(1e-9));
        }
    }
}

TEST_CASE("geodesic minimum") {
    const GeneratorSet q0(2, {{-1.0, -1.0}});
    const GeneratorSet q1(2, {{-0.5, -0.5}});
    const GeodesicSpec spec(WeightedExtremal(q0, 2.0), WeightedExtremal(q1, 1.0));
    CHECK(toricap::geodesic_min(spec, 0.5) == Catch::Approx(-1.5).margin(1e-12));
    CHECK(toricap::geodesic_min(spec, 0.0) == Catch::Approx(-2.0).margin(1e-12));

    const GeodesicSpec unit(WeightedExtremal(q0, 1.0), WeightedExtremal(q1, 1.0));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        CHECK(toricap::geodesic_min(unit, t) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("contact set test") {
    toricap::rng::Stream stream(77);
    const GeneratorSet q0 = random_set(stream, 2);
    const GeneratorSet q1 = random_set(stream, 2);
    const GeodesicSpec spec(WeightedExtremal(q0, 1.3), WeightedExtremal(q1, 0.8));
    const double t = 0.4;

    for (const auto& g0 : q0.generators()) {
        for (const auto& g1 : q1.generators()) {
            Point s(g0.size());
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = (1 - t) * g0[k] + t * g1[k];
            CHECK(toricap::contact_set_test(spec, t, s));
        }
    }

    CHECK_FALSE(toricap::contact_set_test(spec, t, {-0.05, -3.5}));
    CHECK(toricap::contact_set_test(spec, 0.0, q0.generators().front()));
    CHECK_THROWS_AS(toricap::contact_set_test(spec, t, {-1.0, -1.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("contact set agrees with membership away from the boundary band") {
    toricap::rng::Stream stream(555);
    for (int trial = 0; trial < 4; ++trial) {
        const int dim = 1 + static_cast<int>(stream.next_below(3));
        const GeodesicSpec spec = random_spec(stream, dim);
        const double t = stream.next_in(0.1, 0.9);
        const GeneratorSet qt = interpolate(spec.u0.set, spec.u1.set, t);
        const double margin = 1e-4;
        int used = 0;
        for (int i = 0; used < 100 && i < 4000; ++i) {
            const Point s = random_interior(stream, dim);
            Point up = s, down = s;
            for (auto& v : up) v += margin;
            for (auto& v : down) v -= margin;
            bool usable = true;
            for (double v : up) usable = usable && v <= -1e-9;
            if (!usable) continue;
            const bool deep_inside = contains(qt, up);
            const bool deep_outside = !contains(qt, down);
            if (deep_inside == deep_outside) continue;  // boundary band
            ++used;
            CHECK(toricap::contact_set_test(spec, t, s, 1e-6) == deep_inside);
        }
        CHECK(used >= 50);
    }
}

TEST_CASE("geodesic range and convexity") {
    toricap::rng::Stream stream(31337);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + static_cast<int>(stream.next_below(3));
        const GeodesicSpec spec = random_spec(stream, dim);
        const Point s = random_interior(stream, dim);
        const double t = stream.next_uniform();
        const double v = eval_geodesic(spec, t, s);
        CHECK(v >= -spec.weight_at(t) - 1e-9);
        CHECK(v < 0.0);

        // Convexity along t.
        const double h = stream.next_in(0.05, 0.2);
        const double t2 = stream.next_in(h, 1.0 - h);
        const double va = eval_geodesic(spec, t2 - h, s);
        const double vb = eval_geodesic(spec, t2, s);
        const double vc = eval_geodesic(spec, t2 + h, s);
        CHECK(va - 2.0 * vb + vc >= -1e-9);

        // Convexity along a random segment in s.
        const Point s2 = random_interior(stream, dim);
        Point mid(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) mid[k] = 0.5 * (s[k] + s2[k]);
        const double w1 = eval_geodesic(spec, t, s);
        const double w2 = eval_geodesic(spec, t, mid);
        const double w3 = eval_geodesic(spec, t, s2);
        CHECK(w1 - 2.0 * w2 + w3 >= -1e-9);
    }
}

TEST_CASE("grid oracle lower-bounds the evaluation and closes its gap") {
    // Weight 1.3 puts the objective kink off the a-grid, so the restricted
    // supremum is genuinely below the true one.
    const GeneratorSet q(1, {{-1.0}});
    const GeodesicSpec spec(WeightedExtremal(q, 1.3), WeightedExtremal(q, 1.3));
    const double box_extent = 2.5, box_margin = 0.5;

    const auto coarse = grid_llt_oracle(spec, 0.3, box_extent, box_margin, 17);
    const auto fine = grid_llt_oracle(spec, 0.3, box_extent, box_margin, 33);
    CHECK(fine.gap_bound == Catch::Approx(0.5 * coarse.gap_bound).epsilon(1e-12));

    double worst_coarse = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const Point s = coarse.point_at(i);
        const double truth = 1.3 * std::max(s[0], -1.0);  // c * max(s/r, -1), r = 1
        CHECK(coarse.values[i] <= truth + 1e-9);
        const double gap = truth - coarse.values[i];
        CHECK(gap <= coarse.gap_bound + 1e-12);
        worst_coarse = std::max(worst_coarse, gap);

        // The refined a-grid is nested, so the bound can only improve at
        // shared evaluation points.
        const double fine_v = fine.values[2 * i];
        CHECK(fine_v >= coarse.values[i] - 1e-12);
        CHECK(truth - fine_v <= fine.gap_bound + 1e-12);
    }
    CHECK(worst_coarse > 0.0);  // the restriction is genuinely lossy

    CHECK_THROWS_AS(grid_llt_oracle(spec, 0.3, 0.5, 2.5, 17), std::invalid_argument);
    CHECK_THROWS_AS(grid_llt_oracle(spec, 0.3, 2.5, 0.5, 8), std::invalid_argument);
}

TEST_CASE("grid oracle against the program on a two-dimensional spec") {
    toricap::rng::Stream stream(8);
    const GeodesicSpec spec(WeightedExtremal(random_set(stream, 2), 1.4),
                            WeightedExtremal(random_set(stream, 2), 0.9));
    const double t = 0.45;
    const auto grid = grid_llt_oracle(spec, t, 3.0, 0.4, 16);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point s = grid.point_at(i);
        const double lp_value = eval_geodesic(spec, t, s);
        CHECK(grid.values[i] <= lp_value + 1e-9);
        CHECK(lp_value - grid.values[i] <= grid.gap_bound + 1e-12);
    }
}

TEST_CASE("equality case detection") {
    const GeneratorSet q0(2, {{-1.0, -1.0}});
    const GeneratorSet q1(2, {{-0.5, -0.5}});
    CHECK(toricap::equality_case_detect(
        GeodesicSpec(WeightedExtremal(q0, 2.0), WeightedExtremal(q1, 1.0))));

    const GeneratorSet a(2, {{-1.0, -2.0}});
    const GeneratorSet b(2, {{-2.0, -1.0}});
    CHECK_FALSE(toricap::equality_case_detect(
        GeodesicSpec(WeightedExtremal(a, 1.0), WeightedExtremal(b, 1.0))));
    CHECK_FALSE(toricap::equality_case_detect(
        GeodesicSpec(WeightedExtremal(a, 2.0), WeightedExtremal(b, 1.0))));

    CHECK(toricap::equality_case_detect(
        GeodesicSpec(WeightedExtremal(a, 1.3), WeightedExtremal(a, 1.3))));
}

TEST_CASE("evaluation rejects boundary and out-of-range arguments") {
    const GeneratorSet q(2, {{-1.0, -1.0}});
    const GeodesicSpec spec(WeightedExtremal(q, 1.0), WeightedExtremal(q, 1.0));
    CHECK_THROWS_AS(eval_geodesic(spec, 0.5, {-1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(eval_geodesic(spec, 0.5, {-1.0, 1e-12}), std::invalid_argument);
    CHECK_THROWS_AS(eval_geodesic(spec, -0.1, {-1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(eval_geodesic(spec, 1.1, {-1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(eval_geodesic(spec, 0.5, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GeodesicSpec(WeightedExtremal(q, 0.0), WeightedExtremal(q, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(GeodesicSpec(WeightedExtremal(q, 1.0),
                                 WeightedExtremal(GeneratorSet(1, {{-1.0}}), 1.0)),
                    std::invalid_argument);
}
