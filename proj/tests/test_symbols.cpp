#include <cmath>

#include <doctest.h>

#include "nlslab/symbols.hpp"

using namespace nlslab;

namespace {

FrequencyTriple triple(double r1, double r2, double r3) {
    FrequencyTriple t;
    t.N1 = r1;
    t.N2 = r2;
    t.N3 = r3;
    t.xi1 = {r1, 0.0};
    t.xi2 = {0.0, r2};
    t.xi3 = {r3 / std::sqrt(2.0), r3 / std::sqrt(2.0)};
    return t;
}

}  // namespace

TEST_CASE("region classification implements the factor-4 thresholds") {
    const double N = 8.0;  // N/4 = 2
    CHECK(classify(1.0, 1.0, 0.5, N) == RegionTag::Omega1);
    CHECK(classify(4.0, 1.0, 1.0, N) == RegionTag::Omega2);
    CHECK(classify(4.0, 4.0, 1.0, N) == RegionTag::Omega3);
    CHECK(classify(4.0, 2.0, 2.0, N) == RegionTag::Omega4);
    CHECK(classify(2.0, 1.0, 0.5, N) == RegionTag::Omega2);  // boundary N1 = N/4
    CHECK_THROWS(classify(1.0, 2.0, 1.0, N));
}

TEST_CASE("sigma vanishes when every mode sits below the cutoff") {
    const FrequencyTriple t = triple(0.5, 0.5, 0.5);
    CHECK(sigma(t, 8.0, 0.45) == 0.0);
}

TEST_CASE("normalized symbol applies the region prefactor") {
    const double N = 8.0, s = 0.45;
    const FrequencyTriple t = triple(16.0, 8.0, 4.0);
    const double sg = sigma(t, N, s);
    const double r1 = std::hypot(t.xi1[0], t.xi1[1]);
    const double r2 = std::hypot(t.xi2[0], t.xi2[1]);
    const double r3 = std::hypot(t.xi3[0], t.xi3[1]);
    CHECK(normalized_symbol(t, N, s, RegionTag::Omega2) ==
          doctest::Approx(N / (r1 * r2) * sg).epsilon(1e-13));
    CHECK(normalized_symbol(t, N, s, RegionTag::Omega4) ==
          doctest::Approx(N * N / (r1 * r2 * r3) * sg).epsilon(1e-13));
    CHECK_THROWS(normalized_symbol(t, N, s, RegionTag::Omega1));
}

TEST_CASE("scan is deterministic in its seed and exact on Omega1") {
    const ScanResult a = scan_bounds(RegionTag::Omega3, 8.0, 0.45, 2000, 99);
    const ScanResult b = scan_bounds(RegionTag::Omega3, 8.0, 0.45, 2000, 99);
    CHECK(a.sup_abs == b.sup_abs);
    CHECK(a.samples == b.samples);

    const ScanResult o1 = scan_bounds(RegionTag::Omega1, 8.0, 0.45, 2000, 99);
    CHECK(o1.sup_abs == 0.0);
    CHECK(o1.samples == 2000);
}

TEST_CASE("scan rejects undersized sample budgets") {
    CHECK_THROWS(scan_bounds(RegionTag::Omega2, 8.0, 0.45, 100, 1));
}

TEST_CASE("scanned suprema stay modest on a small budget") {
    for (RegionTag tag : {RegionTag::Omega2, RegionTag::Omega3, RegionTag::Omega4}) {
        const ScanResult r = scan_bounds(tag, 8.0, 0.45, 5000, 7);
        CHECK(r.sup_abs >= 0.0);
        CHECK(r.sup_abs <= 10.0);
    }
}

TEST_CASE("triple validation enforces sorted shells and membership") {
    FrequencyTriple bad = triple(1.0, 2.0, 0.5);
    CHECK_THROWS(bad.validate());
    FrequencyTriple off = triple(2.0, 1.0, 0.5);
    off.xi1 = {10.0, 0.0};  // outside [N1, 2 N1)
    CHECK_THROWS(off.validate());
    FrequencyTriple ok = triple(2.0, 1.0, 0.5);
    CHECK_NOTHROW(ok.validate());
}
