#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <vector>

namespace lzdg {

// square bit matrix stored row-major in 64-bit words
class BitRows {
  public:
    BitRows() = default;
    BitRows(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), words_(static_cast<size_t>((cols + 63) / 64)),
          data_(rows * words_, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t words_per_row() const { return words_; }

    void set(size_t r, size_t c) {
        data_[r * words_ + c / 64] |= (uint64_t{1} << (c % 64));
    }
    bool get(size_t r, size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1;
    }
    const uint64_t* row(size_t r) const { return data_.data() + r * words_; }
    uint64_t* row(size_t r) { return data_.data() + r * words_; }

    bool rows_equal(size_t a, size_t b) const {
        return std::memcmp(row(a), row(b), words_ * 8) == 0;
    }

    size_t popcount_row(size_t r) const {
        size_t total = 0;
        const uint64_t* w = row(r);
        for (size_t k = 0; k < words_; ++k) total += std::popcount(w[k]);
        return total;
    }

    bool row_intersects(size_t r, const uint64_t* mask) const {
        const uint64_t* w = row(r);
        for (size_t k = 0; k < words_; ++k)
            if (w[k] & mask[k]) return true;
        return false;
    }

    uint64_t hash_row(size_t r) const {
        // FNV-1a over the row words, stable across runs
        uint64_t h = 1469598103934665603ull;
        const uint64_t* w = row(r);
        for (size_t k = 0; k < words_; ++k) {
            uint64_t v = w[k];
            for (int byte = 0; byte < 8; ++byte) {
                h ^= (v >> (8 * byte)) & 0xff;
                h *= 1099511628211ull;
            }
        }
        return h;
    }

  private:
    size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> data_;
};

} // namespace lzdg
