#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ccrig/core/rng.hpp"

using namespace ccrig;

TEST_CASE("identical seeds give identical streams") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("split streams are independent of parent consumption") {
    Rng parent(99);
    Rng child1 = parent.split("actor");
    parent.next_u64();
    parent.next_u64();
    Rng child2 = Rng(99).split("actor");
    for (int i = 0; i < 20; ++i) CHECK(child1.next_u64() == child2.next_u64());
    // distinct labels diverge
    Rng other = Rng(99).split("critic");
    CHECK(other.next_u64() != Rng(99).split("actor").next_u64());
}

TEST_CASE("uniform stays in [0,1) with sane mean") {
    Rng rng(7);
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        acc += u;
    }
    CHECK(std::fabs(acc / n - 0.5) < 0.005);
}

TEST_CASE("uniform_int covers the range uniformly") {
    Rng rng(13);
    const int n = 15, draws = 150000;
    std::vector<int> counts(n, 0);
    for (int i = 0; i < draws; ++i) {
        int v = rng.uniform_int(n);
        REQUIRE(v >= 0);
        REQUIRE(v < n);
        counts[v]++;
    }
    double expected = static_cast<double>(draws) / n;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 14 dof, p=0.01 critical value is 29.14
    CHECK(chi2 < 29.14);
}

TEST_CASE("normal draws have unit moments") {
    Rng rng(21);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    double mean = s / n;
    double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(var > 0.97);
    CHECK(var < 1.03);
}

TEST_CASE("counter-based draws do not repeat over short horizons") {
    Rng rng(3);
    std::set<uint64_t> seen;
    for (int i = 0; i < 10000; ++i) seen.insert(rng.next_u64());
    CHECK(seen.size() == 10000);
}
