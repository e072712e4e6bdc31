#pragma once

#include "pirpsi/core.hpp"

#include <cstdint>
#include <vector>

namespace pirpsi {

// Exact rational number (always reduced, positive denominator).
struct rational {
    long long num = 0;
    long long den = 1;

    rational() = default;
    rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const rational&, const rational&) = default;
    friend bool operator<(const rational& a, const rational& b) {
        return a.num * b.den < b.num * a.den;
    }
};

// One row of the closed-form rate table.
struct rate_row {
    int k = 0;
    rational rate_this_scheme;  // demand bits per downloaded bit, this scheme
    rational rate_mds_psi;      // MDS-coded PSI reference scheme
    rational rate_no_si;        // plain two-server scheme without side information
    std::uint64_t download_bits = 0;  // total bits fetched from both databases
    std::uint64_t demand_bits = 0;    // demand message length
};

// Closed-form rates and download totals for K = kmin..kmax (kmin >= 3).
std::vector<rate_row> rate_table(int kmin, int kmax);

// Decoding work and traffic for one concrete code, measured from the
// decoding plan.  The reference costs quote the MDS-coded alternative's
// arithmetic count for one retrieval at K = 7.
struct cost_report {
    std::uint64_t xor_count = 0;
    std::uint64_t download_bits = 0;
    std::uint64_t multiplications = 0;  // always zero: the scheme is XOR-only
    std::uint64_t mds_reference_multiplications = 91;
    std::uint64_t mds_reference_additions = 78;
};

cost_report xor_cost(const code& c);

}  // namespace pirpsi
