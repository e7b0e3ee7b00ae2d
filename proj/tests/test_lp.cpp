#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "toricap/lp.hpp"
#include "toricap/rng.hpp"

using toricap::lp::Result;
using toricap::lp::Status;

namespace {

// Independent oracle for 2-variable programs: enumerate all vertices from
// constraint pairs (plus the axes), keep feasible ones, take the best.
double brute_force_max_2d(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b, const std::vector<double>& c) {
    std::vector<std::vector<double>> rows = a;
    std::vector<double> rhs = b;
    rows.push_back({-1.0, 0.0});
    rhs.push_back(0.0);
    rows.push_back({0.0, -1.0});
    rhs.push_back(0.0);

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if (std::abs(det) < 1e-12) continue;
            const double x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
            const double y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
            bool feasible = x >= -1e-9 && y >= -1e-9;
            for (std::size_t k = 0; k < rows.size() && feasible; ++k)
                feasible = rows[k][0] * x + rows[k][1] * y <= rhs[k] + 1e-9;
            if (feasible) best = std::max(best, c[0] * x + c[1] * y);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("simple maximization hits the right vertex") {
    const Result r = toricap::lp::maximize({{1.0, 1.0}, {1.0, 3.0}}, {4.0, 6.0}, {3.0, 2.0});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.objective == Catch::Approx(12.0).margin(1e-10));
    CHECK(r.x[0] == Catch::Approx(4.0).margin(1e-10));
    CHECK(r.x[1] == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("negative right-hand sides go through phase 1") {
    // x >= 1, x <= 3
    const Result lo = toricap::lp::maximize({{-1.0}, {1.0}}, {-1.0, 3.0}, {-1.0});
    REQUIRE(lo.status == Status::optimal);
    CHECK(lo.objective == Catch::Approx(-1.0).margin(1e-10));
    const Result hi = toricap::lp::maximize({{-1.0}, {1.0}}, {-1.0, 3.0}, {1.0});
    REQUIRE(hi.status == Status::optimal);
    CHECK(hi.objective == Catch::Approx(3.0).margin(1e-10));
}

TEST_CASE("equality encoded as an inequality pair") {
    // x + y = 1, maximize x
    const Result r =
        toricap::lp::maximize({{1.0, 1.0}, {-1.0, -1.0}}, {1.0, -1.0}, {1.0, 0.0});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.objective == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("infeasible and unbounded programs are reported") {
    const Result inf = toricap::lp::maximize({{1.0}}, {-1.0}, {1.0});
    CHECK(inf.status == Status::infeasible);
    CHECK(inf.infeasibility > 0.5);

    const Result unb = toricap::lp::maximize({{-1.0}}, {0.0}, {1.0});
    CHECK(unb.status == Status::unbounded);
}

TEST_CASE("degenerate ties terminate (Bland)") {
    const Result r = toricap::lp::maximize(
        {{1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 2.0}}, {0.0, 0.0, 0.0, 0.0}, {1.0, 1.0});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.objective == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("matches brute-force vertex enumeration on random 2d programs") {
    toricap::rng::Stream stream(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        const int extra = 1 + static_cast<int>(stream.next_below(4));
        for (int i = 0; i < extra; ++i) {
            a.push_back({stream.next_in(-1.0, 2.0), stream.next_in(-1.0, 2.0)});
            b.push_back(stream.next_in(0.2, 2.0));  // origin stays feasible
        }
        a.push_back({1.0, 0.0});
        b.push_back(3.0);
        a.push_back({0.0, 1.0});
        b.push_back(3.0);
        const std::vector<double> c = {stream.next_in(-1.0, 2.0), stream.next_in(-1.0, 2.0)};

        const Result r = toricap::lp::maximize(a, b, c);
        REQUIRE(r.status == Status::optimal);
        const double expected = brute_force_max_2d(a, b, c);
        CHECK(r.objective == Catch::Approx(expected).margin(1e-8));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(toricap::lp::maximize({{1.0, 2.0}}, {1.0, 2.0}, {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(toricap::lp::maximize({{1.0}}, {1.0}, {1.0, 0.0}), std::invalid_argument);
}
