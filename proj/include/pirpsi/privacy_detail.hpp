#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace pirpsi::detail {

// One whole-codeword substitution at the message-id-set level.
struct replace_edit {
    std::vector<int> src;
    std::vector<int> dst;
};
using edit_list = std::vector<replace_edit>;

// 21-step manipulation list for the demand-X_K / SI-{X3,X4} case at K=7
// (other SI mates of X3 are reached by conjugation with a transposition).
const edit_list& xk_demand_si_x3_k7_edits();

// Frozen per-case, per-parameter edit tables (see privacy_tables.cpp).
// Returns nullptr when no entry exists for the key.
const edit_list* frozen_edits(std::string_view tag, int a, int b, int c, int d);

}  // namespace pirpsi::detail
