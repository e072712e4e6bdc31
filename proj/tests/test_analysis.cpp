#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pirpsi/analysis.hpp"
#include "pirpsi/construct.hpp"

using namespace pirpsi;

TEST_CASE("rational arithmetic") {
    CHECK(rational(4, 8) == rational(1, 2));
    CHECK(rational(-4, -8) == rational(1, 2));
    CHECK(rational(4, -8).num == -1);
    CHECK(rational(4, -8).den == 2);
    CHECK(rational(0, 5) == rational(0, 7));
    CHECK(rational(1, 3) < rational(1, 2));
    CHECK_THROWS_AS(rational(1, 0), scheme_error);
}

TEST_CASE("rate table K=7 row") {
    const auto rows = rate_table(7, 7);
    REQUIRE(rows.size() == 1);
    const rate_row& r = rows[0];
    CHECK(r.k == 7);
    CHECK(r.rate_this_scheme == rational(32, 63));
    CHECK(r.rate_mds_psi == rational(16, 31));
    CHECK(r.rate_no_si == rational(64, 127));
    CHECK(r.download_bits == 126);
    CHECK(r.demand_bits == 64);
}

TEST_CASE("rate table K=3 row") {
    const auto rows = rate_table(3, 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rate_this_scheme == rational(1, 1));
    CHECK(rows[0].rate_mds_psi == rational(1, 1));
    CHECK(rows[0].rate_no_si == rational(4, 7));
    CHECK(rows[0].download_bits == 2);
    CHECK(rows[0].demand_bits == 2);
}

TEST_CASE("closed forms for K=4..20") {
    const auto rows = rate_table(4, 20);
    for (const auto& r : rows) {
        CAPTURE(r.k);
        const long long h = 1LL << (r.k - 2);
        CHECK(r.rate_this_scheme == rational(h, 2 * h - 1));
        CHECK(r.rate_mds_psi == rational(h / 2, h - 1));
        CHECK(r.rate_no_si == rational(2 * h, 4 * h - 1));
        CHECK(r.download_bits == static_cast<std::uint64_t>(2 * (2 * h - 1)));
        CHECK(r.demand_bits == static_cast<std::uint64_t>(2 * h));
        // strict ordering between the three schemes
        CHECK(r.rate_this_scheme < r.rate_mds_psi);
        CHECK(r.rate_no_si < r.rate_this_scheme);
    }
}

TEST_CASE("measured rate equals the closed form") {
    const auto rows = rate_table(3, 12);
    for (const auto& r : rows) {
        CAPTURE(r.k);
        const code c = build_canonical_code(r.k);
        const long long downloaded = static_cast<long long>(
            c.query_n1.codewords.size() + c.query_n2.codewords.size());
        const rational measured(msg_len(r.k), downloaded);
        CHECK(measured == r.rate_this_scheme);
        CHECK(static_cast<std::uint64_t>(downloaded) == r.download_bits);
    }
}

TEST_CASE("rate table input validation") {
    CHECK_THROWS_AS(rate_table(2, 5), scheme_error);
    CHECK_THROWS_AS(rate_table(6, 5), scheme_error);
    CHECK_THROWS_AS(rate_table(3, 61), scheme_error);
}

TEST_CASE("xor cost of concrete codes") {
    const cost_report k4 = xor_cost(build_canonical_code(4));
    CHECK(k4.xor_count == 16);
    CHECK(k4.download_bits == 14);
    CHECK(k4.multiplications == 0);

    const cost_report k7 = xor_cost(build_canonical_code(7));
    CHECK(k7.xor_count == 184);
    CHECK(k7.download_bits == 126);
    CHECK(k7.multiplications == 0);
    // reference arithmetic costs of the MDS-coded alternative at K=7
    CHECK(k7.mds_reference_multiplications == 91);
    CHECK(k7.mds_reference_additions == 78);
}
