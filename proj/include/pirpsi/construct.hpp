#pragma once

#include "pirpsi/core.hpp"

namespace pirpsi {

// A skeleton element is a subset of message ids; the empty subset is the
// identity of the tensor-sum operator.
using skeleton_element = std::set<int>;
using skeleton = std::vector<skeleton_element>;

// All 2^|ids| subsets including the empty one, in canonical order
// (ascending size, then lexicographic).
skeleton power_set_skeleton(const std::set<int>& ids);

// Pairwise unions of the two skeletons' elements, in canonical order.
// Throws scheme_error when the operands' message-id sets overlap.
skeleton tensor_sum(const skeleton& a, const skeleton& b);

// Message-id layout of the canonical first-database query, one subset per
// codeword, in final (canonical) row order.
std::vector<std::set<int>> query_skeleton(int k);

// Canonical first-database query for demand X1 with side information
// {X2, X3}: 2^(K-1)-1 codewords, each message appearing 2^(K-2) times,
// indexes assigned in first-appearance order.
query build_query_n1(int k);

// One matched pair of byproduct combinations: the same message-id set
// appears once alongside the demand (unknown) and once without it (known),
// with disjoint index assignments.
struct ledger_pair {
    codeword unknown;      // byproduct terms of the demand-bearing codeword
    codeword known;        // byproduct terms of the demand-free partner
    int unknown_pos = -1;  // codeword positions within the query
    int known_pos = -1;
};

struct byproduct_ledger {
    std::vector<ledger_pair> pairs;
};

// Pairs every unknown byproduct combination with a same-message-set known
// one, in ledger order (ascending tuple length, lexicographic by ids,
// ascending indexes).  Throws scheme_error when any combination is unpaired.
byproduct_ledger classify_byproducts(const query& q, const scheme_params& params);

// Second-database query derived from the canonical first query: identical
// codeword structure, demand indexes shifted to the upper half, side
// information unchanged, and the two sides of every ledger pair exchanging
// their index assignments.  Requires the canonical assignment (demand X1,
// SI {X2, X3}).
query build_query_n2(const query& query_n1, const scheme_params& params);

// Both queries plus parameters for the canonical assignment.
code build_canonical_code(int k);

}  // namespace pirpsi
