#pragma once

#include "pirpsi/core.hpp"

#include <optional>

namespace pirpsi {

// Structural census of a query: how many codewords of each block size, and
// how often each message id occurs.  Two queries with equal structure are
// indistinguishable at the level the scheme's privacy condition checks.
struct query_structure {
    std::map<int, int> block_histogram;    // block size -> count
    std::map<int, int> message_frequency;  // message id -> occurrences
    bool operator==(const query_structure&) const = default;
};

query_structure structure_of(const query& q);

// One transformation primitive.
//   swap_ids:          relabel a <-> b everywhere (indexes travel).
//   swap_id_pairs:     two relabelings applied as one atomic step.
//   replace_codeword:  substitute the unique codeword whose message-id set
//                      equals `source` with `target`; ids retained by the
//                      target keep their indexes, introduced ids take the
//                      smallest index not used by that message elsewhere.
struct transform_step {
    enum class kind_t { swap_ids, swap_id_pairs, replace_codeword };
    kind_t kind = kind_t::swap_ids;
    int a = 0, b = 0, c = 0, d = 0;  // swap operands
    std::set<int> source, target;    // replace operands
};

transform_step swap_step(int a, int b);
transform_step swap_pair_step(int a, int b, int c, int d);
transform_step replace_step(std::set<int> source, std::set<int> target);

// Applies the steps in order.  Throws scheme_error when a replace source
// matches zero or several codewords, or a swap names equal ids.
query apply_transform(const query& q, const std::vector<transform_step>& steps);

// Case id the synthesis dispatcher would use for this assignment.
std::string synthesis_case(int k, int demand, std::pair<int, int> si);

// Builds the second-database query for an arbitrary (demand, SI) assignment
// with the canonical first query fixed.  The result preserves the canonical
// query structure and passes the decodability oracle.  Supported for K=3..7;
// `query_n1` must be the canonical first query for k.
query synthesize_n2(const query& query_n1, int k, int demand,
                    std::pair<int, int> si);

struct audit_entry {
    int demand = 0;
    std::pair<int, int> si{0, 0};
    std::string case_id;
    bool structure_match = false;
    bool decodable = false;
    std::string note;  // nonempty when synthesis itself failed
    bool pass() const { return structure_match && decodable && note.empty(); }
};

struct audit_report {
    int k = 0;
    bool used_search = false;
    std::vector<audit_entry> entries;
    bool all_pass() const;
};

// Checks every (demand, SI) assignment: the synthesized second query must
// match the canonical second query's structure and the code must pass the
// decodability oracle.  `use_search_oracle` switches from the table-driven
// synthesis (K=4..7) to the independent backtracking search (K=4..5).
audit_report audit_privacy(int k, bool use_search_oracle = false);

// Independent existence witness: exhaustively re-assigns indexes over the
// synthesized message-id layout and returns the first query passing both
// privacy conditions, or nothing.  When `required` is given, layouts whose
// census differs are rejected up front.  K=4..5.
std::optional<query> search_synthesize_n2(const query& query_n1, int k,
                                          int demand, std::pair<int, int> si,
                                          const query_structure* required = nullptr);

}  // namespace pirpsi
