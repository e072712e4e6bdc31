#include "pirpsi/privacy.hpp"

#include "pirpsi/construct.hpp"
#include "pirpsi/privacy_detail.hpp"
#include "pirpsi/retrieve.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace pirpsi {

namespace {

using detail::edit_list;
using row_set = std::set<int>;
using layout = std::vector<row_set>;

// Internal synthesis failure: callers either translate it into scheme_error
// or treat it as "this candidate does not work" during search.
struct assign_fail : scheme_error {
    using scheme_error::scheme_error;
};

row_set to_set(const std::vector<int>& v) { return row_set(v.begin(), v.end()); }

bool is_subset(const row_set& sub, const row_set& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

row_set set_minus(const row_set& a, const row_set& b) {
    row_set out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
    return out;
}

// ------------------------------------------------------------ relabel/replace

std::map<int, int> swap_perm(int x, int y) { return {{x, y}, {y, x}}; }

layout apply_perm(const layout& rows, const std::map<int, int>& perm) {
    layout out;
    out.reserve(rows.size());
    for (const auto& s : rows) {
        row_set t;
        for (int m : s) {
            auto it = perm.find(m);
            t.insert(it == perm.end() ? m : it->second);
        }
        out.push_back(std::move(t));
    }
    return out;
}

// Extends source->target pairs to a permutation: leftover targets map back to
// leftover sources in ascending order.
std::map<int, int> completion(std::map<int, int> p) {
    std::set<int> keys, values;
    for (const auto& [s, t] : p) {
        keys.insert(s);
        values.insert(t);
    }
    std::vector<int> rest_s, rest_t;
    for (int v : values)
        if (!keys.count(v)) rest_s.push_back(v);
    for (int s : keys)
        if (!values.count(s)) rest_t.push_back(s);
    for (std::size_t i = 0; i < rest_s.size(); ++i) p[rest_s[i]] = rest_t[i];
    std::set<int> domain, range;
    for (const auto& [s, t] : p) {
        domain.insert(s);
        range.insert(t);
    }
    if (domain != range) throw assign_fail("relabeling is not a permutation");
    return p;
}

void replace_one(layout& rows, const row_set& src, const row_set& dst) {
    int hits = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] == src) {
            ++hits;
            where = i;
        }
    }
    if (hits != 1)
        throw assign_fail("substitution source matched " + std::to_string(hits) +
                          " rows");
    rows[where] = dst;
}

void apply_edits(layout& rows, const edit_list& edits) {
    for (const auto& e : edits) replace_one(rows, to_set(e.src), to_set(e.dst));
}

// Generic manipulation list for the demand-X3 case without X1/X2/X4 in the
// side information (parameters i < j are the SI ids).
edit_list demand_x3_mods(int i, int j, int K) {
    return {
        {{i, j}, {K, j}},
        {{K, 1}, {K, i}},
        {{K, 2}, {3, 2}},
        {{K, 3, 2}, {j, 3, 2}},
        {{2, K, j, 3}, {1, 4, i, 3}},
        {{j, 1, 4, 3}, {j, 1, 2, K}},
        {{j, i, 1, 2, 3}, {1, K, 2, 4, j}},
        {{j, K, i, 1, 2, 4}, {1, 2, K, 3, i, j}},
    };
}

// Generic manipulation list for the demand-X2 case (SI {Xp, Xq}, p >= 4).
edit_list demand_x2_mods(int p, int q, int K) {
    return {
        {{1, 3}, {1, p}},
        {{2, q, K}, {1, 2, q}},
        {{1, 2, p, q}, {2, 3, q, K}},
    };
}

// -------------------------------------------------------------- case layouts

layout base_skeleton(int k) { return query_skeleton(k); }

// Demand X_K, SI {X3, Xi}.  Base relabeling A<->D plus the frozen per-K
// manipulation list; i != 4 conjugates with (4 i).  i == 0 means "base form".
layout case_xk_si_x3(int k, int i) {
    layout out = apply_perm(base_skeleton(k), swap_perm(1, 4));
    static const edit_list empty;
    const edit_list* mods = nullptr;
    if (k == 7) {
        mods = &detail::xk_demand_si_x3_k7_edits();
    } else if (k == 5 || k == 6) {
        mods = detail::frozen_edits("xk_si_x3", k, 0, 0, 0);
        if (!mods) mods = &empty;
    } else {
        throw assign_fail("demand-X_K/SI-X3 case supports K in 5..7");
    }
    apply_edits(out, *mods);
    if (i != 0 && i != 4) out = apply_perm(out, swap_perm(4, i));
    return out;
}

// Demand X_K, SI {Xp, Xq} with p,q >= 4.
layout case_xk_si_generic(int k, int p, int q) {
    layout out = apply_perm(case_xk_si_x3(k, 0), completion({{3, p}, {4, q}}));
    if (const edit_list* e = detail::frozen_edits("xk_si_generic", k, p, q, 0)) {
        apply_edits(out, *e);
        return out;
    }
    replace_one(out, row_set{1, p, q}, row_set{1, 3, p});
    replace_one(out, row_set{1, 3, p, k}, row_set{1, p, q, k});
    return out;
}

// Demand X_K, SI {X1, Xi}.
layout case_xk_si_x1(int k, int i) {
    layout out = apply_perm(base_skeleton(k), swap_perm(3, i));
    replace_one(out, row_set{1}, row_set{3});
    replace_one(out, row_set{3, k}, row_set{1, k});
    return out;
}

// Demand X_K, SI {X2, Xi}.
layout case_xk_si_x2(int k, int i) {
    std::map<int, int> pm{{1, 2}, {2, 1}, {3, i}, {i, 3}};
    layout out = apply_perm(base_skeleton(k), pm);
    replace_one(out, row_set{3, k}, row_set{2, k});
    replace_one(out, row_set{2}, row_set{k});
    replace_one(out, row_set{2, 1, i, k}, row_set{2, 1, i, 3});
    return out;
}

// Demand X2, SI {Xp, Xq} with p >= 4.
layout case_demand_x2_generic(int k, int p, int q) {
    layout out = apply_perm(case_xk_si_generic(k, p, q), swap_perm(2, k));
    if (const edit_list* e = detail::frozen_edits("demand_x2_extra", k, p, q, 0)) {
        apply_edits(out, *e);
        return out;
    }
    apply_edits(out, demand_x2_mods(p, q, k));
    return out;
}

// Demand X3, SI {Xp, Xq} with p >= 4.
layout case_demand_x3_generic(int k, int p, int q) {
    layout out = apply_perm(case_demand_x2_generic(k, p, q), swap_perm(2, 3));
    if (const edit_list* e =
            detail::frozen_edits("demand_x3_generic", k, p, q, 0)) {
        apply_edits(out, *e);
        return out;
    }
    if (p == 4) return out;  // frozen per-instance fixes applied by the caller
    if (k == 7) apply_edits(out, demand_x3_mods(p, q, k));
    return out;
}

// ------------------------------------------------- byproduct combos + assign

struct bp_entry {
    row_set shape;
    std::vector<int> indexes;  // bit indexes in shape order
    codeword w;
    int pos;
};

// Unknown/known byproduct combinations of a query in ledger order
// (ascending shape size, lexicographic shape, ascending indexes).
std::pair<std::vector<bp_entry>, std::vector<bp_entry>> byproduct_combos(
    int gamma, std::pair<int, int> si, const query& q) {
    const auto [a, b] = si;
    std::vector<bp_entry> unknown, known;
    for (std::size_t pos = 0; pos < q.codewords.size(); ++pos) {
        const codeword& cw = q.codewords[pos];
        bp_entry e;
        e.pos = static_cast<int>(pos);
        for (const auto& [msg, index] : cw) {
            if (msg == gamma || msg == a || msg == b) continue;
            e.shape.insert(msg);
            e.indexes.push_back(index);
            e.w[msg] = index;
        }
        if (e.shape.empty()) continue;
        (cw.count(gamma) ? unknown : known).push_back(std::move(e));
    }
    auto key_less = [](const bp_entry& x, const bp_entry& y) {
        if (x.shape.size() != y.shape.size()) return x.shape.size() < y.shape.size();
        if (x.shape != y.shape)
            return std::lexicographical_compare(x.shape.begin(), x.shape.end(),
                                                y.shape.begin(), y.shape.end());
        return x.indexes < y.indexes;
    };
    std::sort(unknown.begin(), unknown.end(), key_less);
    std::sort(known.begin(), known.end(), key_less);
    return {std::move(unknown), std::move(known)};
}

// Gives bit indexes to a synthesized second-query layout.  The demand walks
// fresh upper-half indexes and each side-information message a lower-half
// walk, both in row order.  Byproduct indexes are then fixed by two
// exact-cover phases: (A) every byproduct group attached to a demand row is
// partitioned into whole known combinations of the first query, making its
// value a sum of already-known downloads; (B) every unknown combination of
// the first query is served by demand-free rows of this query — an identical
// row, a row split, or a superset row padded with spare known combinations.
// Untouched positions are filled with the remaining indexes ascending.
query assign_indexes(int k, int gamma, std::pair<int, int> si, const query& n1q,
                     const layout& sets2) {
    const int H = half_len(k);
    const auto [a, b] = si;
    std::vector<codeword> n2(sets2.size());
    int d = H;
    std::map<int, int> si_next;
    for (std::size_t p = 0; p < sets2.size(); ++p) {
        if (sets2[p].count(gamma)) n2[p][gamma] = ++d;
        for (int m : {a, b})
            if (sets2[p].count(m)) n2[p][m] = ++si_next[m];
    }
    if (d != 2 * H) throw assign_fail("demand row count mismatch");

    auto [u1, k1] = byproduct_combos(gamma, si, n1q);

    struct slot {
        row_set set;
        int pos;
    };
    std::vector<slot> uslots, kslots;
    for (std::size_t p = 0; p < sets2.size(); ++p) {
        row_set w;
        for (int m : sets2[p])
            if (m != gamma && m != a && m != b) w.insert(m);
        if (w.empty()) continue;
        (sets2[p].count(gamma) ? uslots : kslots)
            .push_back({std::move(w), static_cast<int>(p)});
    }

    auto place = [&](int pos, const codeword& bits, const row_set* only = nullptr) {
        for (const auto& [m, i] : bits) {
            if (only && !only->count(m)) continue;
            n2[pos][m] = i;
        }
    };

    // ----- phase A: partition every unknown slot into whole known combos
    std::vector<char> k1_used(k1.size(), 0);
    std::vector<std::vector<int>> cover_of(uslots.size());

    std::function<bool(std::size_t)> cover_a = [&](std::size_t i) -> bool {
        if (i == uslots.size()) return true;
        const row_set& target = uslots[i].set;
        std::vector<int> chosen;
        std::function<bool(const row_set&)> part = [&](const row_set& rem) -> bool {
            if (rem.empty()) {
                cover_of[i] = chosen;
                if (cover_a(i + 1)) return true;
                cover_of[i].clear();
                return false;
            }
            const int lo = *rem.begin();
            std::vector<int> cands;
            for (std::size_t j = 0; j < k1.size(); ++j) {
                if (!k1_used[j] && k1[j].shape.count(lo) &&
                    is_subset(k1[j].shape, rem))
                    cands.push_back(static_cast<int>(j));
            }
            std::sort(cands.begin(), cands.end(), [&](int x, int y) {
                const int ex = k1[x].shape == target ? 0 : 1;
                const int ey = k1[y].shape == target ? 0 : 1;
                if (ex != ey) return ex < ey;
                if (k1[x].shape.size() != k1[y].shape.size())
                    return k1[x].shape.size() > k1[y].shape.size();
                return x < y;
            });
            for (int j : cands) {
                k1_used[j] = 1;
                chosen.push_back(j);
                if (part(set_minus(rem, k1[j].shape))) return true;
                chosen.pop_back();
                k1_used[j] = 0;
            }
            return false;
        };
        return part(target);
    };
    if (!cover_a(0)) throw assign_fail("unknown-slot cover");
    for (std::size_t i = 0; i < uslots.size(); ++i)
        for (int j : cover_of[i]) place(uslots[i].pos, k1[j].w);
    std::vector<int> spares;
    for (std::size_t j = 0; j < k1.size(); ++j)
        if (!k1_used[j]) spares.push_back(static_cast<int>(j));

    // ----- phase B: serve every unknown combo of the first query
    struct plan_entry {
        enum { exact, split, pad } kind = exact;
        int sx = -1;
        std::vector<int> extra;  // split: slot list; pad: spare combo list
    };
    std::vector<char> slot_used(kslots.size(), 0), spare_used(k1.size(), 0);
    std::vector<plan_entry> plan(u1.size());

    std::function<std::optional<std::vector<int>>(const row_set&)> spare_cover =
        [&](const row_set& need) -> std::optional<std::vector<int>> {
        std::vector<int> acc;
        std::function<bool(const row_set&)> rec = [&](const row_set& rem) -> bool {
            if (rem.empty()) return true;
            const int lo = *rem.begin();
            std::vector<int> cands;
            for (int j : spares) {
                if (!spare_used[j] && k1[j].shape.count(lo) &&
                    is_subset(k1[j].shape, rem))
                    cands.push_back(j);
            }
            std::sort(cands.begin(), cands.end(), [&](int x, int y) {
                if (k1[x].shape.size() != k1[y].shape.size())
                    return k1[x].shape.size() > k1[y].shape.size();
                return x < y;
            });
            for (int j : cands) {
                spare_used[j] = 1;
                acc.push_back(j);
                if (rec(set_minus(rem, k1[j].shape))) return true;
                acc.pop_back();
                spare_used[j] = 0;
            }
            return false;
        };
        if (rec(need)) return acc;
        return std::nullopt;
    };

    std::function<bool(std::size_t)> serve_b = [&](std::size_t t) -> bool {
        if (t == u1.size()) return true;
        const row_set& w = u1[t].shape;
        // (a) identical demand-free row
        for (std::size_t sx = 0; sx < kslots.size(); ++sx) {
            if (!slot_used[sx] && kslots[sx].set == w) {
                slot_used[sx] = 1;
                plan[t] = {plan_entry::exact, static_cast<int>(sx), {}};
                if (serve_b(t + 1)) return true;
                slot_used[sx] = 0;
            }
        }
        // (b) split across several rows (first feasible split)
        {
            std::vector<int> acc;
            std::function<bool(const row_set&)> split = [&](const row_set& rem) -> bool {
                if (rem.empty()) return true;
                const int lo = *rem.begin();
                for (std::size_t sx = 0; sx < kslots.size(); ++sx) {
                    const row_set& s = kslots[sx].set;
                    if (!slot_used[sx] && s.count(lo) && is_subset(s, rem)) {
                        slot_used[sx] = 1;
                        acc.push_back(static_cast<int>(sx));
                        if (split(set_minus(rem, s))) return true;
                        acc.pop_back();
                        slot_used[sx] = 0;
                    }
                }
                return false;
            };
            if (split(w)) {
                const std::vector<int> parts = acc;
                plan[t] = {plan_entry::split, -1, parts};
                if (serve_b(t + 1)) return true;
                for (int sx : parts) slot_used[sx] = 0;
            }
        }
        // (c) superset row padded with spare known combos
        std::vector<int> supers;
        for (std::size_t sx = 0; sx < kslots.size(); ++sx) {
            if (!slot_used[sx] && w != kslots[sx].set &&
                is_subset(w, kslots[sx].set))
                supers.push_back(static_cast<int>(sx));
        }
        std::sort(supers.begin(), supers.end(), [&](int x, int y) {
            if (kslots[x].set.size() != kslots[y].set.size())
                return kslots[x].set.size() < kslots[y].set.size();
            return x < y;
        });
        for (int sx : supers) {
            auto pads = spare_cover(set_minus(kslots[sx].set, w));
            if (!pads) continue;
            slot_used[sx] = 1;
            plan[t] = {plan_entry::pad, sx, *pads};
            if (serve_b(t + 1)) return true;
            slot_used[sx] = 0;
            for (int j : *pads) spare_used[j] = 0;
        }
        plan[t] = {};
        return false;
    };
    if (!serve_b(0)) throw assign_fail("unknown-combo serve");

    for (std::size_t t = 0; t < u1.size(); ++t) {
        const plan_entry& pl = plan[t];
        if (pl.kind == plan_entry::exact) {
            place(kslots[pl.sx].pos, u1[t].w);
        } else if (pl.kind == plan_entry::split) {
            for (int sx : pl.extra) place(kslots[sx].pos, u1[t].w, &kslots[sx].set);
        } else {
            place(kslots[pl.sx].pos, u1[t].w);
            for (int j : pl.extra) place(kslots[pl.sx].pos, k1[j].w);
        }
    }

    // ----- phase C: leftover fill, ascending
    std::map<int, std::vector<int>> free_of;
    for (int m = 1; m <= k; ++m) {
        if (m == gamma || m == a || m == b) continue;
        std::set<int> used;
        for (const auto& cw : n2) {
            auto it = cw.find(m);
            if (it != cw.end()) used.insert(it->second);
        }
        for (int i = 1; i <= H; ++i)
            if (!used.count(i)) free_of[m].push_back(i);
    }
    for (std::size_t p = 0; p < sets2.size(); ++p) {
        for (int m : sets2[p]) {
            if (n2[p].count(m)) continue;
            auto& pool = free_of[m];
            if (pool.empty()) throw assign_fail("filler exhausted");
            n2[p][m] = pool.front();
            pool.erase(pool.begin());
        }
    }

    // ----- validation
    for (std::size_t p = 0; p < sets2.size(); ++p) {
        row_set have;
        for (const auto& [m, i] : n2[p]) have.insert(m);
        if (have != sets2[p]) throw assign_fail("incomplete row");
    }
    for (int m = 1; m <= k; ++m) {
        std::vector<int> idxs;
        for (const auto& cw : n2) {
            auto it = cw.find(m);
            if (it != cw.end()) idxs.push_back(it->second);
        }
        std::sort(idxs.begin(), idxs.end());
        std::vector<int> want;
        const int lo = m == gamma ? H + 1 : 1;
        for (int i = lo; i < lo + H; ++i) want.push_back(i);
        if (idxs != want)
            throw assign_fail("index multiset of message " + std::to_string(m));
    }
    query out;
    out.codewords = std::move(n2);
    return out;
}

bool oracle_ok(int k, int gamma, std::pair<int, int> si, const query& n1q,
               const query& q2) {
    code c{make_params(k, gamma, si.first, si.second), n1q, q2};
    return decodability_oracle(c).decodable;
}

// Demand X_t with t >= 4 and SI without X1/X2: conjugate the demand-X3 case
// and, when needed, move one singleton download between a {1,K}-byproduct row
// and a {1,demand} row (validated by assignment + oracle).
layout case_demand_mid_generic(int k, int gamma, std::pair<int, int> si,
                               const query& n1q) {
    row_set base_si;
    for (int m : {si.first, si.second}) base_si.insert(m == 3 ? gamma : m);
    auto it = base_si.begin();
    const int bp = *it++;
    const int bq = *it;
    layout out = apply_perm(case_demand_x3_generic(k, bp, bq), swap_perm(3, gamma));
    const std::vector<int> sil{si.first, si.second};
    const row_set sil_set(sil.begin(), sil.end());
    std::vector<int> cands1, cands2;
    for (std::size_t p = 0; p < out.size(); ++p) {
        const row_set rest = set_minus(out[p], sil_set);
        if (!out[p].count(gamma) && rest == row_set{1, k})
            cands1.push_back(static_cast<int>(p));
        if (out[p].count(gamma) && rest == row_set{1, gamma})
            cands2.push_back(static_cast<int>(p));
    }
    for (int p1 : cands1) {
        for (int p2 : cands2) {
            for (int s_let : sil) {
                if (out[p1].count(s_let) || !out[p2].count(s_let)) continue;
                layout t = out;
                t[p1].erase(k);
                t[p1].insert(s_let);
                t[p2].erase(s_let);
                t[p2].insert(k);
                try {
                    query q2 = assign_indexes(k, gamma, si, n1q, t);
                    if (oracle_ok(k, gamma, si, n1q, q2)) return t;
                } catch (const assign_fail&) {
                }
            }
        }
    }
    return out;  // bare conjugation (valid for several triples)
}

// ------------------------------------------------------------- the dispatcher

struct synth_out {
    std::string case_id;
    layout rows;
};

synth_out synth_structure(int k, int gamma, std::pair<int, int> si,
                          const query& n1q) {
    const int p = si.first, q = si.second;
    auto has = [&](int m) { return p == m || q == m; };
    synth_out out;
    if (k == 3) {
        out = {"trivial-k3", base_skeleton(k)};
    } else if (has(k)) {
        out = {"si-has-xk", base_skeleton(k)};
    } else if (gamma == k) {
        if ((p == 1 && q == 3) || (p == 2 && q == 3))
            out = {"demand-xk-copy", base_skeleton(k)};
        else if (p == 1)
            out = {"demand-xk-si-x1", case_xk_si_x1(k, q)};
        else if (p == 2)
            out = {"demand-xk-si-x2", case_xk_si_x2(k, q)};
        else if (p == 3)
            out = {"demand-xk-si-x3", case_xk_si_x3(k, q)};
        else
            out = {"demand-xk-generic", case_xk_si_generic(k, p, q)};
    } else if (gamma == 1) {
        if (has(2))
            out = {"demand-x1-copy", base_skeleton(k)};
        else
            out = {"demand-x1-generic",
                   apply_perm(apply_perm(case_xk_si_x3(k, 0),
                                         completion({{3, p}, {4, q}})),
                              swap_perm(1, k))};
    } else if (gamma == 2) {
        if (has(1))
            out = {"demand-x2-copy", base_skeleton(k)};
        else if (p == 3)
            out = {"demand-x2-si-x3",
                   apply_perm(apply_perm(case_xk_si_x3(k, 0),
                                         completion({{3, 3}, {4, q}})),
                              swap_perm(2, k))};
        else
            out = {"demand-x2-generic", case_demand_x2_generic(k, p, q)};
    } else if (gamma == 3) {
        if (has(1))
            out = {"demand-x3-si-x1", apply_perm(case_xk_si_x1(k, q), swap_perm(3, k))};
        else if (has(2))
            out = {"demand-x3-si-x2", apply_perm(case_xk_si_x2(k, q), swap_perm(3, k))};
        else
            out = {"demand-x3-generic", case_demand_x3_generic(k, p, q)};
    } else if (has(1) || has(2)) {
        out = {"demand-mid-copy", base_skeleton(k)};
    } else {
        out = {"demand-mid-generic", case_demand_mid_generic(k, gamma, si, n1q)};
    }
    if (const edit_list* fix = detail::frozen_edits("final_fix", k, gamma, p, q))
        apply_edits(out.rows, *fix);
    return out;
}

query_structure layout_structure(const layout& rows) {
    query_structure st;
    for (const auto& s : rows) {
        ++st.block_histogram[static_cast<int>(s.size())];
        for (int m : s) ++st.message_frequency[m];
    }
    return st;
}

void require_canonical_n1(const query& n1, int k) {
    if (!(n1 == build_query_n1(k)))
        throw scheme_error("first query must be the canonical construction");
}

}  // namespace

query_structure structure_of(const query& q) {
    query_structure st;
    for (const auto& cw : q.codewords) {
        ++st.block_histogram[static_cast<int>(cw.size())];
        for (const auto& [m, i] : cw) ++st.message_frequency[m];
    }
    return st;
}

transform_step swap_step(int a, int b) {
    transform_step st;
    st.kind = transform_step::kind_t::swap_ids;
    st.a = a;
    st.b = b;
    return st;
}

transform_step swap_pair_step(int a, int b, int c, int d) {
    transform_step st;
    st.kind = transform_step::kind_t::swap_id_pairs;
    st.a = a;
    st.b = b;
    st.c = c;
    st.d = d;
    return st;
}

transform_step replace_step(std::set<int> source, std::set<int> target) {
    transform_step st;
    st.kind = transform_step::kind_t::replace_codeword;
    st.source = std::move(source);
    st.target = std::move(target);
    return st;
}

query apply_transform(const query& q, const std::vector<transform_step>& steps) {
    query out = q;
    for (const auto& st : steps) {
        switch (st.kind) {
            case transform_step::kind_t::swap_ids:
            case transform_step::kind_t::swap_id_pairs: {
                if (st.a == st.b ||
                    (st.kind == transform_step::kind_t::swap_id_pairs && st.c == st.d))
                    throw scheme_error("swap operands must be distinct");
                std::map<int, int> perm = swap_perm(st.a, st.b);
                if (st.kind == transform_step::kind_t::swap_id_pairs) {
                    perm[st.c] = st.d;
                    perm[st.d] = st.c;
                }
                for (auto& cw : out.codewords) {
                    codeword next;
                    for (const auto& [m, i] : cw) {
                        auto it = perm.find(m);
                        next[it == perm.end() ? m : it->second] = i;
                    }
                    cw = std::move(next);
                }
                break;
            }
            case transform_step::kind_t::replace_codeword: {
                int hits = 0;
                std::size_t where = 0;
                for (std::size_t i = 0; i < out.codewords.size(); ++i) {
                    row_set ids;
                    for (const auto& [m, idx] : out.codewords[i]) ids.insert(m);
                    if (ids == st.source) {
                        ++hits;
                        where = i;
                    }
                }
                if (hits != 1)
                    throw scheme_error("replace source matched " +
                                       std::to_string(hits) + " codewords");
                codeword next;
                const codeword old = out.codewords[where];
                for (int m : st.target) {
                    auto it = old.find(m);
                    if (it != old.end()) {
                        next[m] = it->second;
                        continue;
                    }
                    std::set<int> used;
                    for (std::size_t i = 0; i < out.codewords.size(); ++i) {
                        if (i == where) continue;
                        auto jt = out.codewords[i].find(m);
                        if (jt != out.codewords[i].end()) used.insert(jt->second);
                    }
                    int idx = 1;
                    while (used.count(idx)) ++idx;
                    next[m] = idx;
                }
                out.codewords[where] = std::move(next);
                break;
            }
        }
    }
    return out;
}

std::string synthesis_case(int k, int demand, std::pair<int, int> si) {
    const scheme_params params = make_params(k, demand, si.first, si.second);
    const int p = params.si.first, q = params.si.second, gamma = params.demand;
    auto has = [&](int m) { return p == m || q == m; };
    if (k == 3) return "trivial-k3";
    if (has(k)) return "si-has-xk";
    if (gamma == k) {
        if ((p == 1 && q == 3) || (p == 2 && q == 3)) return "demand-xk-copy";
        if (p == 1) return "demand-xk-si-x1";
        if (p == 2) return "demand-xk-si-x2";
        if (p == 3) return "demand-xk-si-x3";
        return "demand-xk-generic";
    }
    if (gamma == 1) return has(2) ? "demand-x1-copy" : "demand-x1-generic";
    if (gamma == 2) {
        if (has(1)) return "demand-x2-copy";
        if (p == 3) return "demand-x2-si-x3";
        return "demand-x2-generic";
    }
    if (gamma == 3) {
        if (has(1)) return "demand-x3-si-x1";
        if (has(2)) return "demand-x3-si-x2";
        return "demand-x3-generic";
    }
    return has(1) || has(2) ? "demand-mid-copy" : "demand-mid-generic";
}

query synthesize_n2(const query& query_n1, int k, int demand,
                    std::pair<int, int> si) {
    const scheme_params params = make_params(k, demand, si.first, si.second);
    if (k > 7)
        throw scheme_error("second-query synthesis is supported for K = 3..7");
    require_canonical_n1(query_n1, k);
    if (k == 3) {
        codeword cw;
        cw[params.demand] = 2;
        cw[params.si.first] = 1;
        cw[params.si.second] = 1;
        return query{{cw}};
    }
    synth_out s = synth_structure(k, params.demand, params.si, query_n1);
    try {
        return assign_indexes(k, params.demand, params.si, query_n1, s.rows);
    } catch (const assign_fail& e) {
        throw scheme_error("synthesis failed for case " + s.case_id + ": " +
                           e.what());
    }
}

bool audit_report::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass()) return false;
    return !entries.empty();
}

audit_report audit_privacy(int k, bool use_search_oracle) {
    if (use_search_oracle ? (k < 4 || k > 5) : (k < 4 || k > 7))
        throw scheme_error(use_search_oracle
                               ? "search audit supports K = 4..5"
                               : "table audit supports K = 4..7");
    const query n1 = build_query_n1(k);
    const query_structure want =
        structure_of(build_query_n2(n1, make_params(k, 1, 2, 3)));
    audit_report rep;
    rep.k = k;
    rep.used_search = use_search_oracle;
    for (int gamma = 1; gamma <= k; ++gamma) {
        for (int a = 1; a <= k; ++a) {
            if (a == gamma) continue;
            for (int b = a + 1; b <= k; ++b) {
                if (b == gamma) continue;
                audit_entry e;
                e.demand = gamma;
                e.si = {a, b};
                e.case_id = synthesis_case(k, gamma, {a, b});
                try {
                    std::optional<query> q2;
                    if (use_search_oracle)
                        q2 = search_synthesize_n2(n1, k, gamma, {a, b});
                    else
                        q2 = synthesize_n2(n1, k, gamma, {a, b});
                    if (!q2) {
                        e.note = "no witness found";
                    } else {
                        e.structure_match = structure_of(*q2) == want;
                        e.decodable = oracle_ok(k, gamma, {a, b}, n1, *q2);
                    }
                } catch (const scheme_error& ex) {
                    e.note = ex.what();
                }
                rep.entries.push_back(std::move(e));
            }
        }
    }
    return rep;
}

std::optional<query> search_synthesize_n2(const query& query_n1, int k,
                                          int demand, std::pair<int, int> si,
                                          const query_structure* required) {
    const scheme_params params = make_params(k, demand, si.first, si.second);
    if (k < 4 || k > 5)
        throw scheme_error("search synthesis is supported for K = 4..5");
    require_canonical_n1(query_n1, k);
    const auto [a, b] = params.si;
    const int gamma = params.demand;
    const int H = half_len(k);
    const layout sets2 = synth_structure(k, gamma, params.si, query_n1).rows;
    if (required && !(layout_structure(sets2) == *required)) return std::nullopt;

    auto [u1, k1] = byproduct_combos(gamma, params.si, query_n1);

    struct slot {
        int pos;
        row_set w;
    };
    std::vector<slot> uslots, kslots;
    for (std::size_t p = 0; p < sets2.size(); ++p) {
        row_set w;
        for (int m : sets2[p])
            if (m != gamma && m != a && m != b) w.insert(m);
        if (w.empty()) continue;
        (sets2[p].count(gamma) ? uslots : kslots)
            .push_back({static_cast<int>(p), std::move(w)});
    }

    // Enumerates partitions of `w` into whole known combos drawn from `avail`.
    std::function<bool(const row_set&, const std::set<int>&, std::vector<int>&,
                       const std::function<bool()>&)>
        cover_slot = [&](const row_set& w, const std::set<int>& avail,
                         std::vector<int>& acc,
                         const std::function<bool()>& done) -> bool {
        if (w.empty()) return done();
        const int lo = *w.begin();
        for (int j : avail) {
            if (!k1[j].shape.count(lo) || !is_subset(k1[j].shape, w)) continue;
            std::set<int> rest = avail;
            rest.erase(j);
            acc.push_back(j);
            if (cover_slot(set_minus(w, k1[j].shape), rest, acc, done)) return true;
            acc.pop_back();
        }
        return false;
    };

    std::map<int, std::vector<int>> slotcov;   // uslot pos -> k1 ids
    std::map<int, codeword> slotdict;          // kslot pos -> fixed terms
    std::optional<query> result;

    auto finish = [&]() -> bool {
        std::vector<codeword> q2(sets2.size());
        int dmd = H;
        std::map<int, int> nxt;
        for (std::size_t pos = 0; pos < sets2.size(); ++pos) {
            codeword cw;
            if (auto it = slotcov.find(static_cast<int>(pos)); it != slotcov.end()) {
                for (int j : it->second)
                    for (const auto& [m, i] : k1[j].w) cw[m] = i;
            } else if (auto jt = slotdict.find(static_cast<int>(pos));
                       jt != slotdict.end()) {
                cw = jt->second;
            }
            for (int m : sets2[pos]) {
                if (cw.count(m)) continue;
                if (m == gamma)
                    cw[m] = ++dmd;
                else if (m == a || m == b)
                    cw[m] = ++nxt[m];
                else
                    cw[m] = 0;  // placeholder, filled below
            }
            q2[pos] = std::move(cw);
        }
        std::map<int, std::vector<int>> rem;
        for (int m = 1; m <= k; ++m) {
            if (m == gamma || m == a || m == b) continue;
            std::set<int> used;
            for (const auto& cw : q2) {
                auto it = cw.find(m);
                if (it != cw.end() && it->second != 0) used.insert(it->second);
            }
            for (int i = 1; i <= H; ++i)
                if (!used.count(i)) rem[m].push_back(i);
        }
        for (auto& cw : q2) {
            for (auto& [m, i] : cw) {
                if (i != 0) continue;
                auto& pool = rem[m];
                if (pool.empty()) return false;
                i = pool.front();
                pool.erase(pool.begin());
            }
        }
        for (int m = 1; m <= k; ++m) {
            std::vector<int> idxs;
            for (const auto& cw : q2) {
                auto it = cw.find(m);
                if (it != cw.end()) idxs.push_back(it->second);
            }
            std::sort(idxs.begin(), idxs.end());
            std::vector<int> want;
            const int lo = m == gamma ? H + 1 : 1;
            for (int i = lo; i < lo + H; ++i) want.push_back(i);
            if (idxs != want) return false;
        }
        query candidate;
        candidate.codewords = std::move(q2);
        if (!oracle_ok(k, gamma, params.si, query_n1, candidate)) return false;
        result = std::move(candidate);
        return true;
    };

    std::set<int> free_kpos;
    for (const auto& s : kslots) free_kpos.insert(s.pos);

    std::function<bool(std::size_t, std::set<int>, std::set<int>)> serve =
        [&](std::size_t i, std::set<int> freek, std::set<int> avail) -> bool {
        if (i == u1.size()) return finish();
        const row_set& w = u1[i].shape;
        const codeword& dct = u1[i].w;
        // (a) exact
        for (const auto& s : kslots) {
            if (!freek.count(s.pos) || s.w != w) continue;
            slotdict[s.pos] = dct;
            std::set<int> fk = freek;
            fk.erase(s.pos);
            if (serve(i + 1, std::move(fk), avail)) return true;
            slotdict.erase(s.pos);
        }
        // (b) split across several slots
        {
            std::vector<int> combo;
            std::function<bool(const row_set&, std::set<int>,
                               const std::function<bool()>&)>
                splits = [&](const row_set& rem, std::set<int> pool,
                             const std::function<bool()>& done) -> bool {
                if (rem.empty()) return done();
                const int lo = *rem.begin();
                for (const auto& s : kslots) {
                    if (!pool.count(s.pos) || !s.w.count(lo) || !is_subset(s.w, rem))
                        continue;
                    std::set<int> rest = pool;
                    rest.erase(s.pos);
                    combo.push_back(s.pos);
                    if (splits(set_minus(rem, s.w), std::move(rest), done))
                        return true;
                    combo.pop_back();
                }
                return false;
            };
            if (splits(w, freek, [&]() -> bool {
                    if (combo.size() < 2) return false;
                    std::map<int, row_set> kmap;
                    for (const auto& s : kslots) kmap[s.pos] = s.w;
                    for (int pos : combo) {
                        codeword part;
                        for (int m : kmap[pos]) part[m] = dct.at(m);
                        slotdict[pos] = std::move(part);
                    }
                    std::set<int> fk = freek;
                    for (int pos : combo) fk.erase(pos);
                    if (serve(i + 1, std::move(fk), avail)) return true;
                    for (int pos : combo) slotdict.erase(pos);
                    return false;
                }))
                return true;
        }
        // (c) padded superset slot
        for (const auto& s : kslots) {
            if (!freek.count(s.pos) || s.w == w || !is_subset(w, s.w)) continue;
            std::vector<int> cov;
            if (cover_slot(set_minus(s.w, w), avail, cov, [&]() -> bool {
                    codeword d = dct;
                    for (int j : cov)
                        for (const auto& [m, idx] : k1[j].w) d[m] = idx;
                    slotdict[s.pos] = std::move(d);
                    std::set<int> fk = freek;
                    fk.erase(s.pos);
                    std::set<int> av = avail;
                    for (int j : cov) av.erase(j);
                    if (serve(i + 1, std::move(fk), std::move(av))) return true;
                    slotdict.erase(s.pos);
                    return false;
                }))
                return true;
        }
        return false;
    };

    std::function<bool(std::size_t, std::set<int>)> assign_all =
        [&](std::size_t si_i, std::set<int> avail) -> bool {
        if (si_i == uslots.size()) {
            std::set<int> freek = free_kpos;
            return serve(0, std::move(freek), avail);
        }
        std::vector<int> acc;
        return cover_slot(uslots[si_i].w, avail, acc, [&]() -> bool {
            slotcov[uslots[si_i].pos] = acc;
            std::set<int> rest = avail;
            for (int j : acc) rest.erase(j);
            if (assign_all(si_i + 1, std::move(rest))) return true;
            slotcov.erase(uslots[si_i].pos);
            return false;
        });
    };

    std::set<int> all_avail;
    for (std::size_t j = 0; j < k1.size(); ++j) all_avail.insert(static_cast<int>(j));
    assign_all(0, std::move(all_avail));
    return result;
}

}  // namespace pirpsi
