#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qldpc/bits.hpp"
#include "qldpc/css.hpp"

namespace qldpc {

// A Tanner code description: each vertex (row of i0) is replaced by the rows
// of the local code c0, with assignment[v] telling which c0 column lands on
// the vertex's t-th incident edge (edges taken in ascending index order).
struct TannerSpec {
    BitMat i0;
    BitMat c0;
    std::vector<std::vector<std::uint32_t>> assignment;
};

// Identity assignment (slot t gets column t) for every vertex.
TannerSpec default_assignment(BitMat i0, BitMat c0);

BitMat tanner(const TannerSpec& spec);

// Permutation pair (rho, gamma) with i0[rho(v), e] == i0[v, gamma(e)],
// given as permutation matrices P[i, perm(i)] = 1.
struct IncidenceSymmetry {
    BitMat rho;
    BitMat gamma;
};

// Chooses a column assignment compatible with every generator, so that the
// lifted row permutation rho x I_r and the edge permutation gamma are a
// symmetry of the Tanner matrix. Assignments are seeded with the identity
// at the lowest-index vertex of each orbit and propagated; a conflicting
// propagation or a non-bijective result throws std::logic_error. The lifted
// symmetry (rho x I_r) A == A gamma^T is re-verified constructively.
TannerSpec symmetric_assignment(const BitMat& i0, const BitMat& c0,
                                const std::vector<IncidenceSymmetry>& gens);

// Row/column symmetry of a single matrix a: r a == a c^T with r^order == I,
// c^order == I and every orbit of length exactly `order`.
struct SymmetryPair {
    BitMat r;
    BitMat c;
    unsigned order = 1;
};

// h_x = [a^T | I+c], h_z = [I+r | a]; the first rows(a) qubits form the
// left block. Logical representatives are left empty.
CssCode balanced_product(const BitMat& a, const SymmetryPair& sym);

// h_x = [a x I | I x b^T], h_z = [I x b | a^T x I].
CssCode hypergraph_product(const BitMat& a, const BitMat& b);

// Installs one logical pair per orbit of the row symmetry: l_x covers the
// orbit's vertex blocks (left region), l_z places z_local on the local rows
// of the orbit representative (lowest vertex index). z_local must have odd
// weight and lie in the right kernel so the pair is genuine; validated.
void structured_logicals_balanced(CssCode& code, const SymmetryPair& sym,
                                  unsigned local_rows, const BitVec& z_local);

// For hypergraph products whose left factor is I_copies x (local block):
// l_x[i] = e_i x v_local x u and l_z[i] = e_i x v_local x e_b on the left
// region, with u in ker(b) and e_b a unit with u . e_b = 1.
void structured_logicals_hyper(CssCode& code, std::size_t copies, const BitVec& v_local,
                               const BitVec& u, const BitVec& e_b);

// Assembles the code with A^T = I_{k d_x} x c0, C = r0 x I_{k r},
// R = r0^T x I_{k s} and installs the structured logicals
// l_x[kappa] = J_{d_x} x e_kappa x J_s, l_z[kappa] = e_0 x e_kappa x J_s.
// Requires r0 to be a d_x-cycle and the transposed local code to satisfy
// the fold-product weight conditions for level q.
CssCode direct_construction(const BitMat& c0, unsigned k, unsigned d_x,
                            const BitMat& r0, unsigned q);

enum class BoostDirection { X, Z };

// Distance balancing against a full-rank classical check matrix h_c.
// BoostDirection::X multiplies the X distance and preserves the left-block
// transversality structure; BoostDirection::Z is the swapped variant (it
// generally breaks transversality). Logicals are extended as tensor
// products with the kernel basis of h_c and its paired unit vectors.
// A 0x1 h_c returns the input unchanged.
CssCode distance_balance(const CssCode& code, const BitMat& h_c, BoostDirection dir);

// Lifts a second symmetry of the underlying a (r2 a == a c2^T) to row and
// column permutations of h_x: s_l = c2, s_r = diag(r2, c2^T). The identity
// s_l h_x s_r == h_x is verified, not assumed.
std::pair<BitMat, BitMat> lift_intra_symmetry(const CssCode& code, const BitMat& r2,
                                              const BitMat& c2);

}  // namespace qldpc
