#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pirpsi {

// Domain-rule violation (bad parameters, malformed query, undecodable code).
// The CLI maps this to exit status 1, as opposed to usage errors (status 2).
struct scheme_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One XOR term: 1-based bit `index` of message `msg`.
struct bit_ref {
    int msg = 0;
    int index = 0;
    auto operator<=>(const bit_ref&) const = default;
};

// A codeword XORs at most one bit per message: message id -> bit index.
// The ordered map keeps terms sorted by message id, which is also the
// rendering order.
using codeword = std::map<int, int>;

// Ordered list of codewords submitted to one database.
struct query {
    std::vector<codeword> codewords;
    bool operator==(const query&) const = default;
};

// L: bits per message.  2^(K-1) in general; the K=3 scheme is the trivial
// single-codeword exchange and uses two bits so that both databases can
// contribute one fresh demand bit each (total rate exactly 1).
int msg_len(int k);

// 2^(K-2): per-database demand-bit yield and per-message index budget of one
// query.  1 for K=3.
int half_len(int k);

struct scheme_params {
    int k = 0;                 // number of messages, K >= 3
    int demand = 0;            // demanded message id
    std::pair<int, int> si{0, 0};  // side-information pair, normalized a < b

    int message_len() const { return msg_len(k); }
    // Throws scheme_error unless k >= 3, ids are in [1..k], and demand and
    // both side-information ids are pairwise distinct.
    void validate() const;
};

// Validated + si-normalized constructor.
scheme_params make_params(int k, int demand, int si_a, int si_b);

// The pair of queries submitted to the two databases.
struct code {
    scheme_params params;
    query query_n1;
    query query_n2;
};

// Canonical total order on codewords: ascending block size, then the
// message-id sequence lexicographically, then the index sequence.
bool codeword_less(const codeword& a, const codeword& b);

// Sorts the codewords canonically (block-size groups ascending, lexicographic
// by message-id sequence within a group, bit index as final tiebreak).
// Idempotent.
query canonical_order(query q);

// "A2+B1" style text: messages 1..7 render as letters A..G, higher ids as
// "M<id>_<index>" to keep multi-digit ids unambiguous.
std::string render_codeword(const codeword& cw);

// One line per codeword.
std::string render(const query& q);

// Checks codeword well-formedness (nonempty, ids in [1..k], positive
// indexes) and that no bit reference repeats within the query.
void validate_query(const query& q, int k);

}  // namespace pirpsi
