#include "pirpsi/privacy_detail.hpp"

// Frozen manipulation scripts for the second-query synthesis cases.  Every
// entry is an ordered list of whole-codeword substitutions (source id set ->
// target id set) applied after the case's relabeling step.  The audit tests
// exercise each entry: the synthesized query must keep the canonical block
// histogram and per-message frequency and must pass the decodability oracle.
namespace pirpsi::detail {
namespace {

struct frozen_row {
    const char* tag;
    std::array<int, 4> key;
    edit_list edits;
};

const std::vector<frozen_row>& frozen_rows() {
    static const std::vector<frozen_row> rows = {
    {"demand_x2_extra", {6, 4, 5, 0},
     {}},
    {"demand_x2_extra", {7, 4, 6, 0},
     {
         {{1,3},{1,6}},
         {{1,2,6},{1,2,3}},
         {{2,6,7},{1,2,6}},
         {{1,2,3,6},{2,3,6,7}},
     }},
    {"demand_x3_generic", {6, 4, 5, 0},
     {
         {{1,2,6},{2,5,6}},
         {{2,3,5,6},{1,2,3,6}},
         {{2,3,6},{1,2,6}},
         {{1,2,5},{2,3,5}},
     }},
    {"demand_x3_generic", {7, 4, 5, 0},
     {
         {{1,7},{2,3}},
         {{2,7},{4,7}},
         {{4,5},{5,7}},
         {{2,3,7},{2,3,5}},
         {{1,3,5,6},{1,2,5,7}},
         {{2,3,5,7},{1,3,4,6}},
         {{1,2,3,4,5},{1,2,5,6,7}},
         {{1,2,4,5,6,7},{1,2,3,4,5,7}},
     }},
    {"demand_x3_generic", {7, 4, 6, 0},
     {
         {{1,7},{6,7}},
         {{2,3,6,7},{1,2,3,7}},
         {{1,6},{1,4}},
         {{4,5,7},{5,6,7}},
         {{1,2,3},{2,3,4}},
         {{4,6},{1,6}},
         {{6,7},{4,7}},
         {{2,4,7},{2,6,7}},
         {{5,7},{6,7}},
         {{1,4,6},{1,4,5}},
         {{2,3,7},{3,6,7}},
         {{1,4,5,6,7},{1,2,4,5,7}},
         {{1,3,4,6,7},{1,4,5,6,7}},
         {{1,4,5},{1,3,4}},
     }},
    {"final_fix", {5, 2, 1, 4},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,5},{1,5}},
         {{1,3,5},{2,3,5}},
     }},
    {"final_fix", {5, 4, 1, 2},
     {
         {{3,5},{1,5}},
         {{1},{3}},
         {{1,3,4},{1,2,4}},
         {{1,2,4,5},{1,3,4,5}},
     }},
    {"final_fix", {6, 2, 1, 4},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,6},{1,6}},
         {{1,3,6},{2,3,6}},
     }},
    {"final_fix", {6, 2, 1, 5},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,6},{1,6}},
         {{1,3,6},{2,3,6}},
     }},
    {"final_fix", {6, 4, 1, 2},
     {
         {{3,6},{1,6}},
         {{1},{3}},
         {{1,3,4},{1,2,4}},
         {{1,2,4,6},{1,3,4,6}},
     }},
    {"final_fix", {6, 4, 1, 5},
     {
         {{3,6},{1,6}},
         {{1},{3}},
         {{4,5,6},{1,5,6}},
         {{1,5},{4,5}},
         {{1,3,4},{1,2,3}},
         {{1,2,3,6},{1,3,4,6}},
     }},
    {"final_fix", {6, 4, 2, 5},
     {
         {{1,3,4},{1,2,3}},
         {{2,5},{4,5}},
         {{4,6},{1,6}},
         {{1},{4}},
     }},
    {"final_fix", {6, 5, 1, 2},
     {
         {{3,6},{1,6}},
         {{1},{3}},
         {{1,3,5},{1,2,5}},
         {{1,2,5,6},{1,3,5,6}},
     }},
    {"final_fix", {6, 5, 1, 4},
     {
         {{3,6},{1,6}},
         {{1},{3}},
         {{4,5,6},{1,4,6}},
         {{1,4},{4,5}},
         {{1,3,5},{1,2,3}},
         {{1,2,3,6},{1,3,5,6}},
     }},
    {"final_fix", {6, 5, 2, 4},
     {
         {{1,3,5},{1,2,3}},
         {{2,4},{4,5}},
         {{5,6},{1,6}},
         {{1},{5}},
     }},
    {"final_fix", {7, 2, 1, 4},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,7},{1,7}},
         {{1,3,7},{2,3,7}},
     }},
    {"final_fix", {7, 2, 1, 5},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,7},{1,7}},
         {{1,3,7},{2,3,7}},
     }},
    {"final_fix", {7, 2, 1, 6},
     {
         {{2,3},{1,3}},
         {{1},{2}},
         {{2,7},{1,7}},
         {{1,3,7},{2,3,7}},
     }},
    {"final_fix", {7, 4, 1, 2},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{1,3,4},{1,2,4}},
         {{1,2,4,7},{1,3,4,7}},
     }},
    {"final_fix", {7, 4, 1, 5},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{4,5,7},{1,5,7}},
         {{1,5},{4,5}},
         {{1,3,4},{1,2,3}},
         {{1,2,3,7},{1,3,4,7}},
     }},
    {"final_fix", {7, 4, 1, 6},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{4,6,7},{1,6,7}},
         {{1,6},{4,6}},
         {{1,3,4},{1,2,3}},
         {{1,2,3,7},{1,3,4,7}},
     }},
    {"final_fix", {7, 4, 2, 5},
     {
         {{1,3,4},{1,2,3}},
         {{2,5},{4,5}},
         {{4,7},{1,7}},
         {{1},{4}},
     }},
    {"final_fix", {7, 4, 2, 6},
     {
         {{1,3,4},{1,2,3}},
         {{2,6},{4,6}},
         {{4,7},{1,7}},
         {{1},{4}},
     }},
    {"final_fix", {7, 4, 5, 6},
     {
         {{1,6,7},{1,5,6}},
         {{1,3,4,5},{1,3,4,7}},
     }},
    {"final_fix", {7, 5, 1, 2},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{1,3,5},{1,2,5}},
         {{1,2,5,7},{1,3,5,7}},
     }},
    {"final_fix", {7, 5, 1, 4},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{4,5,7},{1,4,7}},
         {{1,4},{4,5}},
         {{1,3,5},{1,2,3}},
         {{1,2,3,7},{1,3,5,7}},
     }},
    {"final_fix", {7, 5, 1, 6},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{5,6,7},{1,6,7}},
         {{1,6},{5,6}},
         {{1,3,5},{1,2,3}},
         {{1,2,3,7},{1,3,5,7}},
     }},
    {"final_fix", {7, 5, 2, 4},
     {
         {{1,3,5},{1,2,3}},
         {{2,4},{4,5}},
         {{5,7},{1,7}},
         {{1},{5}},
     }},
    {"final_fix", {7, 5, 2, 6},
     {
         {{1,3,5},{1,2,3}},
         {{2,6},{5,6}},
         {{5,7},{1,7}},
         {{1},{5}},
     }},
    {"final_fix", {7, 5, 4, 6},
     {
         {{1,6,7},{1,4,6}},
         {{1,3,4,5},{1,3,5,7}},
     }},
    {"final_fix", {7, 6, 1, 2},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{1,3,6},{1,2,6}},
         {{1,2,6,7},{1,3,6,7}},
     }},
    {"final_fix", {7, 6, 1, 4},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{4,6,7},{1,4,7}},
         {{1,4},{4,6}},
         {{1,3,6},{1,2,3}},
         {{1,2,3,7},{1,3,6,7}},
     }},
    {"final_fix", {7, 6, 1, 5},
     {
         {{3,7},{1,7}},
         {{1},{3}},
         {{5,6,7},{1,5,7}},
         {{1,5},{5,6}},
         {{1,3,6},{1,2,3}},
         {{1,2,3,7},{1,3,6,7}},
     }},
    {"final_fix", {7, 6, 2, 4},
     {
         {{1,3,6},{1,2,3}},
         {{2,4},{4,6}},
         {{6,7},{1,7}},
         {{1},{6}},
     }},
    {"final_fix", {7, 6, 2, 5},
     {
         {{1,3,6},{1,2,3}},
         {{2,5},{5,6}},
         {{6,7},{1,7}},
         {{1},{6}},
     }},
    {"final_fix", {7, 6, 4, 5},
     {
         {{2,6},{1,3}},
         {{1,2,4},{1,2,5}},
         {{1,2,6},{1,4,5}},
         {{1,3,5},{1,4,6}},
         {{1,5,7},{2,5,7}},
         {{2,4,7},{3,4,6}},
         {{3,4,7},{3,5,7}},
         {{3,5,6},{5,6,7}},
         {{1,3,4,6},{1,2,6,7}},
         {{1,3,5,7},{1,3,6,7}},
         {{1,2,3,5,7},{1,2,3,4,7}},
         {{1,4,5,6,7},{1,2,4,5,6}},
         {{1,2,4,5,6,7},{1,2,3,4,5,7}},
     }},
    {"xk_si_generic", {6, 4, 5, 0},
     {
         {{3,6},{3,5}},
         {{5},{6}},
     }},
    {"xk_si_generic", {7, 4, 6, 0},
     {
         {{1,3,7},{1,6,7}},
         {{1,6},{1,3}},
     }},
    {"xk_si_x3", {6, 0, 0, 0},
     {
         {{4,5},{4,6}},
         {{1,2,4,6},{1,2,4,5}},
         {{2,5},{3,5}},
         {{3,5,6},{2,5,6}},
     }},
    };
    return rows;
}

}  // namespace

// 21-step list for the demand-X_K / SI-{X3,X4} case at K=7; other SI mates
// of X3 are reached by conjugating with a transposition.
const edit_list& xk_demand_si_x3_k7_edits() {
    static const edit_list v = {
        {{4},{7}},
        {{2,4},{3,4}},
        {{2,3},{3,5}},
        {{2,6},{5,6}},
        {{2,7},{4,7}},
        {{5,7},{1,5}},
        {{6,7},{3,6}},
        {{1,4,5},{1,2,4}},
        {{4,5,6},{4,6,7}},
        {{1,3,5},{2,5,7}},
        {{1,3,6},{2,4,7}},
        {{1,3,7},{2,3,7}},
        {{3,5,6},{2,3,4}},
        {{3,6,7},{2,6,7}},
        {{2,3,4,7},{1,3,5,7}},
        {{1,2,4,7},{1,2,4,6}},
        {{2,4,5,7},{2,4,5,6}},
        {{2,4,6,7},{1,4,6,7}},
        {{1,2,4,5,6},{1,3,4,5,6}},
        {{1,4,5,6,7},{1,3,5,6,7}},
        {{1,3,4,5,6,7},{1,2,4,5,6,7}},
    };
    return v;
}

const edit_list* frozen_edits(std::string_view tag, int a, int b, int c, int d) {
    const std::array<int, 4> key{a, b, c, d};
    for (const auto& row : frozen_rows()) {
        if (tag == row.tag && key == row.key) return &row.edits;
    }
    return nullptr;
}

}  // namespace pirpsi::detail
