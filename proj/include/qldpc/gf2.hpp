#pragma once

#include <cstdint>
#include <vector>

#include "qldpc/bits.hpp"

namespace qldpc {

// Reduced row-echelon form with zero rows dropped; pivots[i] is the pivot
// column of row i, strictly increasing.
struct Rref {
    BitMat mat;
    std::vector<std::uint32_t> pivots;
};

Rref rref(const BitMat& m);
std::size_t rank(const BitMat& m);

// Basis of {x : m x^T = 0}. A 0xN matrix has kernel I_N.
BitMat kernel(const BitMat& m);

BitMat transpose(const BitMat& m);
BitMat matmul(const BitMat& a, const BitMat& b);

// Inverse of a square matrix over GF(2); throws std::invalid_argument if
// the matrix is singular.
BitMat inverse(const BitMat& m);
BitMat kron(const BitMat& a, const BitMat& b);
BitMat hstack(const BitMat& a, const BitMat& b);
BitMat vstack(const BitMat& a, const BitMat& b);

// parity of the overlap |x & y| (the GF(2) inner product)
bool parity(const BitVec& x, const BitVec& y);

// elementwise AND of two equal-length vectors
BitVec dot_rows(const BitVec& x, const BitVec& y);

// Reduce v by an rref basis; result is zero iff v lies in the row span.
BitVec reduce_by(const Rref& basis, BitVec v);
bool in_rowspan(const Rref& basis, const BitVec& v);

// All i-fold elementwise products of distinct rows of m, one row per
// i-subset of row indices in lexicographic subset order. i=1 returns m.
// Subsets whose running product is already zero are still emitted (the
// caller sees the zero row), keeping the row <-> subset correspondence.
BitMat fold_products(const BitMat& m, unsigned i);

// |xor of all rows| mod 2^q, computed directly and via the inclusion-
// exclusion expansion over AND-products truncated at order q; the two must
// agree (asserted) and the common value is returned.
std::uint64_t xor_weight_expand(const BitMat& rows, unsigned q);

}  // namespace qldpc
