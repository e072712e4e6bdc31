#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pirpsi::detail {

// Dense GF(2) vector, bit-packed into 64-bit words.
class bitrow {
  public:
    bitrow() = default;
    explicit bitrow(std::size_t nbits) : words_((nbits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    // Highest set bit, or -1 when zero.
    int top() const {
        for (std::size_t wi = words_.size(); wi-- > 0;) {
            if (words_[wi])
                return static_cast<int>(wi * 64 + 63 - __builtin_clzll(words_[wi]));
        }
        return -1;
    }
    bitrow& operator^=(const bitrow& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

  private:
    std::vector<std::uint64_t> words_;
};

// Incremental Gaussian elimination keyed by highest-bit pivot.  Each basis
// row optionally carries a companion "combo" vector recording which inserted
// rows XOR to it, so solutions can be expressed in terms of the inputs.
class gf2_system {
  public:
    gf2_system(std::size_t nbits, std::size_t ncombo)
        : nbits_(nbits), ncombo_(ncombo), pivot_row_(nbits, -1) {}

    // Inserts `v`; returns true when it enlarged the span.
    bool insert(bitrow v, std::size_t combo_id) {
        bitrow combo(ncombo_);
        if (ncombo_) combo.set(combo_id);
        while (true) {
            int p = v.top();
            if (p < 0) return false;
            int r = pivot_row_[p];
            if (r < 0) {
                pivot_row_[p] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(v));
                combos_.push_back(std::move(combo));
                return true;
            }
            v ^= rows_[r];
            combo ^= combos_[r];
        }
    }

    // Reduces `v` against the basis.  On success (`v` in span) returns true
    // and writes the combination of inserted rows into `combo_out` when combo
    // tracking is enabled.
    bool solve(bitrow v, bitrow* combo_out = nullptr) const {
        bitrow combo(ncombo_);
        while (true) {
            int p = v.top();
            if (p < 0) break;
            int r = pivot_row_[p];
            if (r < 0) return false;
            v ^= rows_[r];
            if (ncombo_) combo ^= combos_[r];
        }
        if (combo_out) *combo_out = std::move(combo);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    std::size_t nbits_;
    std::size_t ncombo_;
    std::vector<int> pivot_row_;
    std::vector<bitrow> rows_;
    std::vector<bitrow> combos_;
};

}  // namespace pirpsi::detail
