#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qldpc/css.hpp"
#include "qldpc/transversal.hpp"

namespace qldpc {

struct GateOp {
    enum class Kind { DiagonalPhase, LogicalX, TransversalCnot, PhysicalCz };
    struct CzPair {
        unsigned b1 = 0;
        std::uint32_t i = 0;
        unsigned b2 = 0;
        std::uint32_t j = 0;
    };

    Kind kind = Kind::DiagonalPhase;
    unsigned block = 0;
    unsigned block2 = 0;                // cnot target; `block` is the control
    std::vector<std::uint32_t> phase;   // per-qubit exponents, mod 2^q
    std::size_t logical = 0;            // l_x row applied by LogicalX
    std::vector<CzPair> cz_pairs;
    std::uint32_t cz_exponent = 0;

    static GateOp diagonal_phase(unsigned block, std::vector<std::uint32_t> p);
    static GateOp logical_x(unsigned block, std::size_t logical);
    static GateOp transversal_cnot(unsigned control, unsigned target);
    static GateOp physical_cz(std::vector<CzPair> pairs, std::uint32_t exponent);
};

// Exhaustive phase-tracking state over every codeword basis string
// v l_x + u h_x of each block, holding one phase exponent mod 2^q per
// string. The orbit of these strings under the supported gates stays inside
// the enumerated set for gates that genuinely act on the codespace;
// anything else is reported by logical_map().
class PhaseState {
  public:
    // Throws std::length_error when the total enumeration
    // 2^(sum of rank(h_x)+k) would exceed 2^24 states.
    PhaseState(std::vector<const CssCode*> blocks, unsigned q);

    void apply(const GateOp& op);
    void apply(const std::vector<GateOp>& ops);

    struct LogicalMap {
        bool diagonal = false;
        // label packs each block's logical bits, block 0 lowest; phases are
        // normalized so label 0 maps to 0
        std::map<std::uint64_t, std::uint32_t> phases;
        std::string failure;  // first offending basis string when not diagonal
    };
    LogicalMap logical_map() const;

    unsigned q() const { return q_; }
    std::size_t state_count() const { return phases_.size(); }

  private:
    struct Block {
        std::size_t n = 0;
        std::size_t byte_offset = 0;
        std::size_t byte_len = 0;
        std::vector<std::string> lx_bytes;  // logical X rows as slice masks
        std::size_t label_shift = 0;
    };

    bool key_bit(const std::string& key, unsigned block, std::uint32_t qubit) const;

    unsigned q_ = 0;
    std::uint32_t phase_mod_ = 0;
    std::vector<Block> blocks_;
    std::unordered_map<std::string, std::uint32_t> phases_;
    std::unordered_map<std::string, std::uint64_t> label_of_;
};

struct SimVerdict {
    bool passed = false;
    std::string detail;
    std::map<std::uint64_t, std::uint32_t> observed;
};

// Runs the ops and compares the resulting diagonal logical action against
// `expected` (labels absent from the map must come out 0).
SimVerdict verify_logical_diagonal(const std::vector<const CssCode*>& blocks, unsigned q,
                                   const std::vector<GateOp>& ops,
                                   const std::map<std::uint64_t, std::uint32_t>& expected);

// Conjugating the transversal phase gate by a logical X flips the sign of
// the phase it imparts; the pair of pairs below therefore cancels the gate
// everywhere except on the chosen logical qubit.
std::vector<GateOp> localized_phase_ops(unsigned block, const PhaseVector& p, std::size_t logical);
std::vector<GateOp> inverse_localized_phase_ops(unsigned block, const PhaseVector& p,
                                                std::size_t logical);

// CNOT / localized-phase ladder acting as an exact logical CZ between
// logical `logical` of block 0 and of block 1 (two copies of one code).
std::vector<GateOp> cross_block_cphase_ops(const PhaseVector& p, std::size_t logical);

// Structural requirements for the in-block controlled-phase trick: a
// check-preserving permutation pair carrying l1 onto the disjoint, odd
// weight l2.
struct IntraCzPreconditions {
    bool symmetry = false;
    bool disjoint = false;
    bool maps_l1_to_l2 = false;
    bool l2_odd = false;
    bool all() const { return symmetry && disjoint && maps_l1_to_l2 && l2_odd; }
};
IntraCzPreconditions check_intra_preconditions(const BitMat& h_x, const BitMat& s_l,
                                               const BitMat& s_r, const BitVec& l1,
                                               const BitVec& l2);

// Applies CZ^(2^{q-1}) to every qubit pair in supp(l_x[la]) x supp(l_x[lb])
// and checks that the net action is the logical CZ between la and lb.
SimVerdict verify_intra_cz(const CssCode& code, std::size_t la, std::size_t lb, unsigned q);

}  // namespace qldpc
