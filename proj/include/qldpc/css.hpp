#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qldpc/bits.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

enum class PauliKind { X, Z };

// A CSS code given by X/Z check matrices plus paired logical representatives.
// k counts the retained logical pairs (rows of l_x); full_k is the code
// dimension n - rank(h_x) - rank(h_z). When k < full_k the retained rows
// define a subsystem code and the marker is set.
struct CssCode {
    BitMat h_x;
    BitMat h_z;
    BitMat l_x;
    BitMat l_z;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t full_k = 0;
    bool subsystem = false;
};

// Builds a code from its check matrices after verifying h_x h_z^T == 0;
// throws std::invalid_argument naming the first anticommuting row pair.
// Logical representatives are left empty.
CssCode assemble(BitMat h_x, BitMat h_z);

// Fills l_x / l_z with a full set of paired representatives (k == full_k):
// kernel of the opposite check matrix, reduced modulo the stabilizer span,
// then l_z adjusted so that l_x l_z^T == I.
void compute_logicals(CssCode& code);

// Replaces the logical representatives with caller-supplied rows and
// re-validates; sets the subsystem marker when fewer than full_k are kept.
void override_logicals(CssCode& code, BitMat l_x, BitMat l_z);

// Checks every CssCode invariant (orthogonality, logical commutation,
// pairing, span independence); throws std::logic_error on the first failure.
void validate(const CssCode& code);

struct DistanceCertificate {
    PauliKind pauli_kind = PauliKind::X;
    bool found = false;
    std::uint32_t weight_found = 0;
    std::vector<std::uint32_t> witness;
    // All supports of weight < exhausted_below were enumerated and none is a
    // logical operator.
    std::uint32_t exhausted_below = 0;
};

// Exhaustive minimum-weight search for logical operators of one type up to
// w_max. Supports are enumerated in colexicographic order and the first hit
// per weight class is kept, so the certificate is deterministic for any
// thread count.
DistanceCertificate distance_search(const CssCode& code, PauliKind kind,
                                    std::uint32_t w_max, unsigned threads = 1);

// Classical-factor escape hatch from the transversal-gate no-go: a parity
// check matrix a with k = cols - rank(a) > cols/2 is not robust.
struct RobustnessReport {
    std::size_t n = 0;
    std::size_t k = 0;
    bool not_robust = false;
};
RobustnessReport check_robustness(const BitMat& a);

// (max row weight over h_x and h_z, max column weight of the stacked checks);
// a qubit's column weight counts every check of either type acting on it
std::pair<std::size_t, std::size_t> max_check_weight(const CssCode& code);

}  // namespace qldpc
