#include "mee/truth_table.hpp"

#include <bit>
#include <stdexcept>

namespace mee {

namespace {

std::size_t word_count(int num_vars) {
    return num_vars <= 6 ? 1 : std::size_t{1} << (num_vars - 6);
}

}  // namespace

TruthTable::TruthTable(int num_vars, bool fill)
    : num_vars_(num_vars), words_(word_count(num_vars), fill ? ~std::uint64_t{0} : 0) {
    if (num_vars < 0 || num_vars > 40) throw std::invalid_argument("truth table variable count out of range");
    mask_tail();
}

TruthTable TruthTable::variable(int num_vars, int position) {
    TruthTable t(num_vars);
    const int shift = num_vars - 1 - position;
    if (shift < 6) {
        // Pattern repeats inside each word.
        std::uint64_t pattern = 0;
        for (int b = 0; b < 64; ++b)
            if ((b >> shift) & 1) pattern |= std::uint64_t{1} << b;
        for (auto& w : t.words_) w = pattern;
    } else {
        const std::size_t block = std::size_t{1} << (shift - 6);
        for (std::size_t i = 0; i < t.words_.size(); ++i)
            t.words_[i] = ((i / block) & 1) ? ~std::uint64_t{0} : 0;
    }
    t.mask_tail();
    return t;
}

void TruthTable::set(std::uint64_t row, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (row & 63);
    if (value)
        words_[row >> 6] |= bit;
    else
        words_[row >> 6] &= ~bit;
}

void TruthTable::mask_tail() {
    if (num_vars_ < 6) words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << num_vars_)) - 1;
}

bool TruthTable::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

bool TruthTable::is_ones() const { return (~*this).is_zero(); }

std::uint64_t TruthTable::count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

bool TruthTable::subset_of(const TruthTable& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

TruthTable& TruthTable::operator&=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

TruthTable& TruthTable::operator|=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

TruthTable& TruthTable::operator^=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

TruthTable TruthTable::operator~() const {
    TruthTable r = *this;
    for (auto& w : r.words_) w = ~w;
    r.mask_tail();
    return r;
}

std::size_t TruthTable::hash() const {
    std::size_t h = static_cast<std::size_t>(num_vars_) * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t TruthTable::first_one() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return (w << 6) + static_cast<std::uint64_t>(std::countr_zero(words_[w]));
    return num_rows();
}

}  // namespace mee
