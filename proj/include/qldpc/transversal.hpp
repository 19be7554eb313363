#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qldpc/bits.hpp"

namespace qldpc {

// Per-qubit exponents of the applied diagonal gate diag(1, e^{2 pi i p_t / 2^q}).
struct PhaseVector {
    unsigned q = 0;
    std::vector<std::uint32_t> entries;
};

PhaseVector uniform_phase(unsigned q, std::size_t n, std::uint32_t value, const BitVec& support);

// One failed weight condition: the masked sum of p over the AND of the
// selected h_x and l_x rows is `residue` instead of 0 mod `modulus`.
struct Violation {
    unsigned i = 0;
    unsigned j = 0;
    std::vector<std::uint32_t> hx_rows;
    std::vector<std::uint32_t> lx_rows;
    std::uint64_t residue = 0;
    std::uint64_t modulus = 0;
};

struct TransversalityReport {
    unsigned q = 0;
    std::vector<std::uint64_t> w;  // per logical: sum of p over its support, mod 2^q
    bool passed = false;
    std::vector<Violation> violations;
};

// Decides whether applying the phase gates p transversally preserves the
// codespace and acts diagonally on the logicals: for every i h_x rows and
// j l_x rows with 1 <= i+j <= q, except (i,j) = (0,1), the sum of p over
// the support of the row AND must vanish mod 2^{q+1-i-j}. The (0,1) sums
// are reported as the logical phase exponents w. Subsets whose AND is zero
// are skipped; they cannot contribute. Violations are sorted by
// (i, j, rows) regardless of thread count.
TransversalityReport check_transversality(const BitMat& h_x, const BitMat& l_x,
                                          const PhaseVector& p, unsigned threads = 1);

// True when all l_x rows act on pairwise disjoint qubit sets; the j >= 2
// conditions of check_transversality are then vacuous.
bool logicals_disjoint(const BitMat& l_x);

// Searches for a p supported on `support` that passes check_transversality
// with every logical exponent odd. Tries uniform value 1 on the support
// first, then solves the congruence system bit plane by bit plane (greedy,
// no backtracking across planes, free variables zero). Absence of a result
// does not prove no such p exists.
std::optional<PhaseVector> find_phase_vector(const BitMat& h_x, const BitMat& l_x,
                                             unsigned q, const BitVec& support);

}  // namespace qldpc
