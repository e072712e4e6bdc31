#include "pirpsi/analysis.hpp"

#include "pirpsi/retrieve.hpp"

#include <numeric>

namespace pirpsi {

rational::rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw scheme_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::vector<rate_row> rate_table(int kmin, int kmax) {
    if (kmin < 3 || kmin > kmax)
        throw scheme_error("rate table needs 3 <= kmin <= kmax");
    if (kmax > 60) throw scheme_error("rate table limited to K <= 60");
    auto pow2 = [](int e) { return 1LL << e; };
    std::vector<rate_row> rows;
    rows.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    for (int k = kmin; k <= kmax; ++k) {
        rate_row r;
        r.k = k;
        if (k == 3) {
            // Degenerate case: one codeword per database, both demand bits
            // recovered, so the scheme transfers exactly as many bits as it
            // yields.
            r.rate_this_scheme = rational(1, 1);
            r.rate_mds_psi = rational(1, 1);
            r.download_bits = 2;
            r.demand_bits = 2;
        } else {
            r.rate_this_scheme = rational(pow2(k - 2), pow2(k - 1) - 1);
            r.rate_mds_psi = rational(pow2(k - 3), pow2(k - 2) - 1);
            r.download_bits = static_cast<std::uint64_t>(2 * (pow2(k - 1) - 1));
            r.demand_bits = static_cast<std::uint64_t>(pow2(k - 1));
        }
        r.rate_no_si = rational(pow2(k - 1), pow2(k) - 1);
        rows.push_back(r);
    }
    return rows;
}

cost_report xor_cost(const code& c) {
    const decode_trace trace = decode_plan(c);
    cost_report rep;
    rep.xor_count = trace.xor_count;
    rep.download_bits = static_cast<std::uint64_t>(c.query_n1.codewords.size() +
                                                   c.query_n2.codewords.size());
    return rep;
}

}  // namespace pirpsi
