#include "qldpc/bits.hpp"

#include <bit>
#include <stdexcept>

namespace qldpc {

BitVec BitVec::from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
    return v;
}

std::size_t BitVec::weight() const {
    std::size_t w = 0;
    for (std::uint64_t x : w_) w += std::popcount(x);
    return w;
}

bool BitVec::any() const {
    for (std::uint64_t x : w_)
        if (x) return true;
    return false;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (len_ != o.len_) throw std::invalid_argument("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    if (len_ != o.len_) throw std::invalid_argument("BitVec and: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

std::size_t BitVec::lowest_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return len_;
}

std::vector<std::uint32_t> BitVec::support() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t x = w_[i];
        while (x) {
            out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitMat BitMat::identity(std::size_t n) {
    BitMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMat BitMat::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) return BitMat();
    BitMat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw std::invalid_argument("BitMat::from_strings: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (rows[r][c] == '1')
                m.set(r, c, true);
            else if (rows[r][c] != '0')
                throw std::invalid_argument("BitMat::from_strings: bad character");
        }
    }
    return m;
}

BitMat BitMat::permutation(const std::vector<std::uint32_t>& perm) {
    BitMat m(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m.set(i, perm[i], true);
    return m;
}

BitVec BitMat::row(std::size_t r) const {
    BitVec v(cols_);
    const std::uint64_t* src = row_data(r);
    for (std::size_t i = 0; i < wpr_; ++i) v.words()[i] = src[i];
    return v;
}

void BitMat::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMat::set_row: length mismatch");
    std::uint64_t* dst = row_data(r);
    for (std::size_t i = 0; i < wpr_; ++i) dst[i] = v.words()[i];
}

void BitMat::xor_row(std::size_t r, const BitVec& v) {
    std::uint64_t* dst = row_data(r);
    for (std::size_t i = 0; i < wpr_; ++i) dst[i] ^= v.words()[i];
}

void BitMat::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row_data(dst);
    const std::uint64_t* s = row_data(src);
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMat::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = row_data(a);
    std::uint64_t* pb = row_data(b);
    for (std::size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

std::size_t BitMat::row_weight(std::size_t r) const {
    const std::uint64_t* p = row_data(r);
    std::size_t w = 0;
    for (std::size_t i = 0; i < wpr_; ++i) w += std::popcount(p[i]);
    return w;
}

bool BitMat::row_any(std::size_t r) const {
    const std::uint64_t* p = row_data(r);
    for (std::size_t i = 0; i < wpr_; ++i)
        if (p[i]) return true;
    return false;
}

}  // namespace qldpc
