#include "pirpsi/construct.hpp"

#include <algorithm>
#include <map>

namespace pirpsi {

namespace {

bool subset_less(const std::set<int>& a, const std::set<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

skeleton canonical_sorted(skeleton s) {
    std::sort(s.begin(), s.end(), subset_less);
    return s;
}

}  // namespace

skeleton power_set_skeleton(const std::set<int>& ids) {
    std::vector<int> v(ids.begin(), ids.end());
    skeleton out;
    out.reserve(std::size_t{1} << v.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
        skeleton_element e;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask >> i & 1) e.insert(v[i]);
        out.push_back(std::move(e));
    }
    return canonical_sorted(std::move(out));
}

skeleton tensor_sum(const skeleton& a, const skeleton& b) {
    std::set<int> ids_a, ids_b;
    for (const auto& e : a) ids_a.insert(e.begin(), e.end());
    for (const auto& e : b) ids_b.insert(e.begin(), e.end());
    for (int m : ids_a)
        if (ids_b.count(m))
            throw scheme_error("tensor sum requires disjoint message-id sets");
    skeleton out;
    out.reserve(a.size() * b.size());
    for (const auto& ea : a) {
        for (const auto& eb : b) {
            skeleton_element e = ea;
            e.insert(eb.begin(), eb.end());
            out.push_back(std::move(e));
        }
    }
    return canonical_sorted(std::move(out));
}

std::vector<std::set<int>> query_skeleton(int k) {
    if (k < 3) throw scheme_error("message count K must be at least 3");
    if (k == 3) return {{1, 2, 3}};
    // Middle-block subsets over messages 3..K-1, enumerated in canonical
    // order with X_K membership tracked per column.
    std::set<int> middle;
    for (int m = 3; m < k; ++m) middle.insert(m);
    std::vector<std::set<int>> rows;
    for (const auto& v : power_set_skeleton(middle)) {
        if (v.empty()) continue;
        const int n = static_cast<int>(v.size());
        const bool top = k > 7 && n == k - 3;
        std::set<int> c1a = v, c1b = v, c2a = v, c2b = v;
        if (n == 1 || n == 2 || top) {
            c1a.insert(k);
            c1b.insert({1, 2, k});
            c2a.insert(1);
            c2b.insert(2);
        } else {
            c1a.insert({1, k});
            c1b.insert({2, k});
            c2b.insert({1, 2});
        }
        rows.push_back(std::move(c1a));
        rows.push_back(std::move(c1b));
        rows.push_back(std::move(c2a));
        rows.push_back(std::move(c2b));
    }
    rows.push_back({1});
    rows.push_back({2, k});
    rows.push_back({1, 2});
    // The lone demand+X3 pair picks up an extra X_K copy.
    for (auto& s : rows) {
        if (s == std::set<int>{1, 3}) s.insert(k);
    }
    std::sort(rows.begin(), rows.end(), subset_less);
    if (rows.size() != std::size_t(msg_len(k) == 2 ? 1 : (1 << (k - 1)) - 1) ||
        std::adjacent_find(rows.begin(), rows.end()) != rows.end())
        throw scheme_error("query skeleton construction failed");
    return rows;
}

query build_query_n1(int k) {
    query q;
    std::map<int, int> next_index;
    for (const auto& s : query_skeleton(k)) {
        codeword cw;
        for (int m : s) cw[m] = ++next_index[m];
        q.codewords.push_back(std::move(cw));
    }
    return q;
}

byproduct_ledger classify_byproducts(const query& q, const scheme_params& params) {
    params.validate();
    validate_query(q, params.k);
    const auto [a, b] = params.si;
    struct entry {
        std::vector<int> shape;    // byproduct message ids, ascending
        std::vector<int> indexes;  // their bit indexes, in shape order
        codeword w;
        int pos;
    };
    std::vector<entry> unknown, known;
    for (std::size_t pos = 0; pos < q.codewords.size(); ++pos) {
        const codeword& cw = q.codewords[pos];
        entry e;
        e.pos = static_cast<int>(pos);
        for (const auto& [msg, index] : cw) {
            if (msg == params.demand || msg == a || msg == b) continue;
            e.shape.push_back(msg);
            e.indexes.push_back(index);
            e.w[msg] = index;
        }
        if (e.shape.empty()) continue;
        (cw.count(params.demand) ? unknown : known).push_back(std::move(e));
    }
    auto key_less = [](const entry& x, const entry& y) {
        if (x.shape.size() != y.shape.size()) return x.shape.size() < y.shape.size();
        if (x.shape != y.shape) return x.shape < y.shape;
        return x.indexes < y.indexes;
    };
    std::sort(unknown.begin(), unknown.end(), key_less);
    std::sort(known.begin(), known.end(), key_less);

    byproduct_ledger ledger;
    std::size_t ki = 0;
    for (std::size_t ui = 0; ui < unknown.size(); ++ui) {
        if (ki >= known.size() || known[ki].shape != unknown[ui].shape)
            throw scheme_error("unpaired byproduct combination: " +
                               render_codeword(unknown[ui].w));
        ledger.pairs.push_back({unknown[ui].w, known[ki].w, unknown[ui].pos,
                                known[ki].pos});
        ++ki;
    }
    if (ki != known.size())
        throw scheme_error("unpaired byproduct combination: " +
                           render_codeword(known[ki].w));
    return ledger;
}

query build_query_n2(const query& query_n1, const scheme_params& params) {
    params.validate();
    if (params.demand != 1 || params.si != std::pair<int, int>{2, 3})
        throw scheme_error(
            "second-query construction requires the canonical assignment "
            "(demand X1, side information {X2, X3}); other assignments are "
            "synthesized by the privacy module");
    const byproduct_ledger ledger = classify_byproducts(query_n1, params);
    std::map<int, codeword> swap_at;  // position -> replacement byproduct terms
    for (const auto& p : ledger.pairs) {
        swap_at[p.unknown_pos] = p.known;
        swap_at[p.known_pos] = p.unknown;
    }
    const int h = half_len(params.k);
    query q2 = query_n1;
    int d = h;
    for (std::size_t pos = 0; pos < q2.codewords.size(); ++pos) {
        codeword& cw = q2.codewords[pos];
        if (auto it = cw.find(params.demand); it != cw.end()) it->second = ++d;
        if (auto sw = swap_at.find(static_cast<int>(pos)); sw != swap_at.end()) {
            for (const auto& [msg, index] : sw->second) cw[msg] = index;
        }
    }
    if (d != 2 * h) throw scheme_error("demand row count mismatch");
    return q2;
}

code build_canonical_code(int k) {
    code c;
    c.params = make_params(k, 1, 2, 3);
    c.query_n1 = build_query_n1(k);
    c.query_n2 = build_query_n2(c.query_n1, c.params);
    return c;
}

}  // namespace pirpsi
