#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qldpc {

// Bit-packed binary vector, 64 bits per machine word. Bit i of the vector is
// character i of its string form. Trailing bits of the last word stay zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        if (v)
            w_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    std::size_t weight() const;
    bool any() const;

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    bool operator==(const BitVec&) const = default;

    // index of the lowest set bit, or size() when none
    std::size_t lowest_set() const;
    std::vector<std::uint32_t> support() const;

    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> w_;
};

// Dense bit-packed matrix over GF(2), row-major, fixed word stride per row.
// Immutable in spirit: construction code fills it, algorithms share const refs.
class BitMat {
public:
    BitMat() = default;
    BitMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    static BitMat identity(std::size_t n);
    static BitMat from_strings(const std::vector<std::string>& rows);
    // permutation matrix with row i carrying a single 1 at column perm[i]
    static BitMat permutation(const std::vector<std::uint32_t>& perm);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        if (v)
            data_[r * wpr_ + (c >> 6)] |= std::uint64_t(1) << (c & 63);
        else
            data_[r * wpr_ + (c >> 6)] &= ~(std::uint64_t(1) << (c & 63));
    }

    const std::uint64_t* row_data(std::size_t r) const { return data_.data() + r * wpr_; }
    std::uint64_t* row_data(std::size_t r) { return data_.data() + r * wpr_; }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void xor_row(std::size_t r, const BitVec& v);
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    std::size_t row_weight(std::size_t r) const;
    bool row_any(std::size_t r) const;

    bool operator==(const BitMat&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

}  // namespace qldpc
