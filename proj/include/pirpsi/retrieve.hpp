#pragma once

#include "pirpsi/core.hpp"

#include <cstdint>
#include <map>

namespace pirpsi {

// K messages of message_len bits each, values 0/1.
struct message_store {
    int k = 0;
    int message_len = 0;
    std::vector<std::vector<std::uint8_t>> bits;  // k rows x message_len

    void validate() const;  // throws scheme_error on dimension/value errors
};

// Uniformly random store; deterministic for a given seed.
message_store random_store(int k, std::uint64_t seed);

// One bit per query codeword, in query order.
using answer_vector = std::vector<std::uint8_t>;

// bit i = XOR over the terms of codeword i.  Throws on out-of-bounds terms.
answer_vector answer_query(const message_store& store, const query& q);

// The user's local side information: full rows of the two SI messages.
struct si_bits {
    std::map<int, std::vector<std::uint8_t>> rows;
};

si_bits si_from_store(const message_store& store, const scheme_params& params);

// One cancellation download: a demand-free codeword position whose byproduct
// terms participate in recovering a demand bit, with its own side-information
// cancellations.
struct decode_partner {
    int db = 0;   // 1 or 2
    int pos = 0;  // codeword position within that query
    std::vector<bit_ref> si_cancel;
};

// Recovery plan for one demand bit.
struct decode_step {
    int db = 0;
    int pos = 0;
    int demand_index = 0;
    std::vector<bit_ref> si_cancel;      // SI terms inside the codeword itself
    std::vector<decode_partner> partners;
};

struct decode_trace {
    std::vector<decode_step> steps;      // one per demand bit
    long long xor_count = 0;             // total XOR operations on answer bits
};

// Precomputes the recovery plan from the code alone: for every demand-bearing
// codeword, its byproduct combination is solved over GF(2) against the
// demand-free codewords of both queries; side-information terms cancel
// directly.  Throws scheme_error when some demand bit has no plan.
decode_trace decode_plan(const code& c);

struct decode_result {
    std::vector<std::uint8_t> demand_bits;  // all message_len bits of the demand
    decode_trace trace;
};

// Executes the plan against the two answer vectors.  XOR-only.
decode_result decode_demand(const code& c, const answer_vector& ans1,
                            const answer_vector& ans2, const si_bits& si);

struct oracle_report {
    bool decodable = false;
    int rank = 0;                 // rank of codeword rows + SI unit vectors
    int rows = 0;                 // number of rows offered to elimination
    int covered_demand_bits = 0;  // demand unit vectors inside the span
};

// Independent certificate: builds the GF(2) system of all codewords of both
// queries plus unit vectors for every side-information bit, and checks that
// every demand unit vector lies in the span.
oracle_report decodability_oracle(const code& c);

}  // namespace pirpsi
