#include "pirpsi/core.hpp"

#include <algorithm>

namespace pirpsi {

int msg_len(int k) {
    if (k < 3) throw scheme_error("message count K must be at least 3");
    if (k == 3) return 2;
    return 1 << (k - 1);
}

int half_len(int k) {
    if (k < 3) throw scheme_error("message count K must be at least 3");
    if (k == 3) return 1;
    return 1 << (k - 2);
}

void scheme_params::validate() const {
    if (k < 3) throw scheme_error("message count K must be at least 3");
    if (k > 30) throw scheme_error("message count K too large");
    auto in_range = [this](int m) { return m >= 1 && m <= k; };
    if (!in_range(demand)) throw scheme_error("demand id out of range");
    if (!in_range(si.first) || !in_range(si.second))
        throw scheme_error("side-information id out of range");
    if (si.first == si.second || si.first == demand || si.second == demand)
        throw scheme_error("demand and side-information ids must be distinct");
}

scheme_params make_params(int k, int demand, int si_a, int si_b) {
    scheme_params p{k, demand, {std::min(si_a, si_b), std::max(si_a, si_b)}};
    p.validate();
    return p;
}

bool codeword_less(const codeword& a, const codeword& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    // Message-id sequence first; index sequence only as final tiebreak.
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
    }
    ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return false;
}

query canonical_order(query q) {
    std::stable_sort(q.codewords.begin(), q.codewords.end(), codeword_less);
    return q;
}

std::string render_codeword(const codeword& cw) {
    std::string out;
    for (const auto& [msg, index] : cw) {
        if (!out.empty()) out += '+';
        if (msg >= 1 && msg <= 7) {
            out += static_cast<char>('A' + msg - 1);
            out += std::to_string(index);
        } else {
            out += 'M';
            out += std::to_string(msg);
            out += '_';
            out += std::to_string(index);
        }
    }
    return out;
}

std::string render(const query& q) {
    std::string out;
    for (const auto& cw : q.codewords) {
        if (!out.empty()) out += '\n';
        out += render_codeword(cw);
    }
    return out;
}

void validate_query(const query& q, int k) {
    if (q.codewords.empty()) throw scheme_error("query has no codewords");
    std::set<bit_ref> seen;
    for (const auto& cw : q.codewords) {
        if (cw.empty()) throw scheme_error("empty codeword");
        for (const auto& [msg, index] : cw) {
            if (msg < 1 || msg > k) throw scheme_error("message id out of range");
            if (index < 1) throw scheme_error("bit index must be positive");
            if (!seen.insert({msg, index}).second)
                throw scheme_error("bit reference repeats within query");
        }
    }
}

}  // namespace pirpsi
