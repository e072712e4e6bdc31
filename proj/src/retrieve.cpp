#include "pirpsi/retrieve.hpp"

#include "pirpsi/gf2.hpp"

#include <random>

namespace pirpsi {

namespace {

std::size_t var_of(int msg, int index, int message_len) {
    return static_cast<std::size_t>(msg - 1) * message_len + (index - 1);
}

}  // namespace

void message_store::validate() const {
    if (k < 3) throw scheme_error("message count K must be at least 3");
    if (message_len != msg_len(k)) throw scheme_error("message length mismatch");
    if (bits.size() != static_cast<std::size_t>(k))
        throw scheme_error("store row count mismatch");
    for (const auto& row : bits) {
        if (row.size() != static_cast<std::size_t>(message_len))
            throw scheme_error("store row length mismatch");
        for (auto b : row)
            if (b > 1) throw scheme_error("store bits must be 0 or 1");
    }
}

message_store random_store(int k, std::uint64_t seed) {
    message_store s{k, msg_len(k), {}};
    std::mt19937_64 rng(seed);
    s.bits.assign(k, std::vector<std::uint8_t>(s.message_len, 0));
    for (auto& row : s.bits)
        for (auto& b : row) b = static_cast<std::uint8_t>(rng() & 1);
    return s;
}

answer_vector answer_query(const message_store& store, const query& q) {
    store.validate();
    answer_vector out;
    out.reserve(q.codewords.size());
    for (const auto& cw : q.codewords) {
        std::uint8_t v = 0;
        for (const auto& [msg, index] : cw) {
            if (msg < 1 || msg > store.k || index < 1 || index > store.message_len)
                throw scheme_error("codeword term out of store bounds: " +
                                   render_codeword(cw));
            v ^= store.bits[msg - 1][index - 1];
        }
        out.push_back(v);
    }
    return out;
}

si_bits si_from_store(const message_store& store, const scheme_params& params) {
    store.validate();
    params.validate();
    if (store.k != params.k) throw scheme_error("store/params K mismatch");
    si_bits si;
    si.rows[params.si.first] = store.bits[params.si.first - 1];
    si.rows[params.si.second] = store.bits[params.si.second - 1];
    return si;
}

decode_trace decode_plan(const code& c) {
    const scheme_params& p = c.params;
    p.validate();
    validate_query(c.query_n1, p.k);
    validate_query(c.query_n2, p.k);
    const int L = p.message_len();
    const auto [a, b] = p.si;
    const std::size_t nvars = static_cast<std::size_t>(p.k) * L;

    struct known_row {
        int db;
        int pos;
        detail::bitrow vec;
        std::vector<bit_ref> si_terms;
    };
    std::vector<known_row> known;
    struct demand_row {
        int db;
        int pos;
        int demand_index;
        std::vector<bit_ref> si_terms;
        detail::bitrow w_vec;
        bool has_w;
    };
    std::vector<demand_row> demands;

    const query* queries[2] = {&c.query_n1, &c.query_n2};
    for (int db = 1; db <= 2; ++db) {
        const query& q = *queries[db - 1];
        for (std::size_t pos = 0; pos < q.codewords.size(); ++pos) {
            const codeword& cw = q.codewords[pos];
            std::vector<bit_ref> si_terms;
            detail::bitrow w(nvars);
            bool has_w = false;
            int demand_index = 0;
            for (const auto& [msg, index] : cw) {
                if (msg == p.demand) {
                    demand_index = index;
                } else if (msg == a || msg == b) {
                    si_terms.push_back({msg, index});
                } else {
                    w.set(var_of(msg, index, L));
                    has_w = true;
                }
            }
            if (demand_index != 0) {
                demands.push_back({db, static_cast<int>(pos), demand_index,
                                   std::move(si_terms), std::move(w), has_w});
            } else if (has_w) {
                known.push_back({db, static_cast<int>(pos), std::move(w),
                                 std::move(si_terms)});
            }
        }
    }

    detail::gf2_system sys(nvars, known.size());
    for (std::size_t rid = 0; rid < known.size(); ++rid)
        sys.insert(known[rid].vec, rid);

    decode_trace trace;
    std::vector<char> covered(L, 0);
    for (const auto& d : demands) {
        detail::bitrow combo;
        if (!sys.solve(d.w_vec, &combo))
            throw scheme_error("no cancellation plan for demand bit " +
                               std::to_string(d.demand_index));
        decode_step step{d.db, d.pos, d.demand_index, d.si_terms, {}};
        trace.xor_count += static_cast<long long>(step.si_cancel.size());
        for (std::size_t rid = 0; rid < known.size(); ++rid) {
            if (!combo.test(rid)) continue;
            const known_row& kr = known[rid];
            step.partners.push_back({kr.db, kr.pos, kr.si_terms});
            trace.xor_count += 1 + static_cast<long long>(kr.si_terms.size());
        }
        if (d.demand_index < 1 || d.demand_index > L)
            throw scheme_error("demand index out of range");
        if (covered[d.demand_index - 1])
            throw scheme_error("demand index covered twice");
        covered[d.demand_index - 1] = 1;
        trace.steps.push_back(std::move(step));
    }
    for (int j = 0; j < L; ++j)
        if (!covered[j])
            throw scheme_error("demand bit " + std::to_string(j + 1) +
                               " never covered");
    return trace;
}

decode_result decode_demand(const code& c, const answer_vector& ans1,
                            const answer_vector& ans2, const si_bits& si) {
    decode_trace trace = decode_plan(c);
    const int L = c.params.message_len();
    if (ans1.size() != c.query_n1.codewords.size() ||
        ans2.size() != c.query_n2.codewords.size())
        throw scheme_error("answer length mismatch");
    auto si_bit = [&](const bit_ref& r) -> std::uint8_t {
        auto it = si.rows.find(r.msg);
        if (it == si.rows.end() ||
            r.index < 1 || static_cast<std::size_t>(r.index) > it->second.size())
            throw scheme_error("missing side-information bit");
        return it->second[r.index - 1];
    };
    const answer_vector* answers[2] = {&ans1, &ans2};
    decode_result out;
    out.demand_bits.assign(L, 0);
    long long xors = 0;
    for (const auto& step : trace.steps) {
        std::uint8_t v = (*answers[step.db - 1])[step.pos];
        for (const auto& r : step.si_cancel) {
            v ^= si_bit(r);
            ++xors;
        }
        for (const auto& partner : step.partners) {
            v ^= (*answers[partner.db - 1])[partner.pos];
            ++xors;
            for (const auto& r : partner.si_cancel) {
                v ^= si_bit(r);
                ++xors;
            }
        }
        out.demand_bits[step.demand_index - 1] = v;
    }
    if (xors != trace.xor_count) throw scheme_error("xor accounting mismatch");
    out.trace = std::move(trace);
    return out;
}

oracle_report decodability_oracle(const code& c) {
    const scheme_params& p = c.params;
    p.validate();
    const int L = p.message_len();
    const int h = half_len(p.k);
    const std::size_t nvars = static_cast<std::size_t>(p.k) * L;
    detail::gf2_system sys(nvars, 0);
    oracle_report rep;
    auto insert_query = [&](const query& q) {
        for (const auto& cw : q.codewords) {
            detail::bitrow v(nvars);
            for (const auto& [msg, index] : cw) v.set(var_of(msg, index, L));
            ++rep.rows;
            sys.insert(std::move(v), 0);
        }
    };
    insert_query(c.query_n1);
    insert_query(c.query_n2);
    for (int msg : {p.si.first, p.si.second}) {
        for (int j = 1; j <= h; ++j) {
            detail::bitrow v(nvars);
            v.set(var_of(msg, j, L));
            ++rep.rows;
            sys.insert(std::move(v), 0);
        }
    }
    rep.rank = sys.rank();
    for (int j = 1; j <= L; ++j) {
        detail::bitrow v(nvars);
        v.set(var_of(p.demand, j, L));
        if (sys.solve(std::move(v))) ++rep.covered_demand_bits;
    }
    rep.decodable = rep.covered_demand_bits == L;
    return rep;
}

}  // namespace pirpsi
