#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace mee {

// Packed truth table over n ordered variables. Row index i assigns to the
// variable at position j the bit (i >> (n-1-j)) & 1, so position 0 is the
// most significant bit.
class TruthTable {
public:
    TruthTable() = default;
    explicit TruthTable(int num_vars, bool fill = false);

    static TruthTable variable(int num_vars, int position);

    int num_vars() const { return num_vars_; }
    std::uint64_t num_rows() const { return std::uint64_t{1} << num_vars_; }

    bool get(std::uint64_t row) const { return (words_[row >> 6] >> (row & 63)) & 1; }
    void set(std::uint64_t row, bool value);

    bool is_zero() const;
    bool is_ones() const;
    std::uint64_t count() const;
    // Lowest set row, or num_rows() when the table is zero.
    std::uint64_t first_one() const;
    // True iff every row set in *this is also set in other.
    bool subset_of(const TruthTable& other) const;

    TruthTable& operator&=(const TruthTable& o);
    TruthTable& operator|=(const TruthTable& o);
    TruthTable& operator^=(const TruthTable& o);
    TruthTable operator~() const;

    friend TruthTable operator&(TruthTable a, const TruthTable& b) { return a &= b; }
    friend TruthTable operator|(TruthTable a, const TruthTable& b) { return a |= b; }
    friend TruthTable operator^(TruthTable a, const TruthTable& b) { return a ^= b; }
    friend bool operator==(const TruthTable&, const TruthTable&) = default;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::size_t hash() const;

private:
    void mask_tail();

    int num_vars_ = 0;
    std::vector<std::uint64_t> words_{0};
};

struct TruthTableHash {
    std::size_t operator()(const TruthTable& t) const { return t.hash(); }
};

}  // namespace mee
