#include "qldpc/simverify.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qldpc/gf2.hpp"

namespace qldpc {

GateOp GateOp::diagonal_phase(unsigned block, std::vector<std::uint32_t> p) {
    GateOp op;
    op.kind = Kind::DiagonalPhase;
    op.block = block;
    op.phase = std::move(p);
    return op;
}

GateOp GateOp::logical_x(unsigned block, std::size_t logical) {
    GateOp op;
    op.kind = Kind::LogicalX;
    op.block = block;
    op.logical = logical;
    return op;
}

GateOp GateOp::transversal_cnot(unsigned control, unsigned target) {
    GateOp op;
    op.kind = Kind::TransversalCnot;
    op.block = control;
    op.block2 = target;
    return op;
}

GateOp GateOp::physical_cz(std::vector<CzPair> pairs, std::uint32_t exponent) {
    GateOp op;
    op.kind = Kind::PhysicalCz;
    op.cz_pairs = std::move(pairs);
    op.cz_exponent = exponent;
    return op;
}

namespace {

std::string slice_mask(const BitVec& v, std::size_t byte_len) {
    std::string bytes(byte_len, '\0');
    for (std::uint32_t t : v.support())
        bytes[t / 8] = static_cast<char>(bytes[t / 8] | (1u << (t % 8)));
    return bytes;
}

void xor_slice(std::string& key, std::size_t offset, const std::string& mask) {
    for (std::size_t i = 0; i < mask.size(); ++i)
        key[offset + i] = static_cast<char>(key[offset + i] ^ mask[i]);
}

std::string bits_of_key(const std::string& key, std::size_t offset, std::size_t n) {
    std::string out(n, '0');
    for (std::size_t t = 0; t < n; ++t)
        if ((key[offset + t / 8] >> (t % 8)) & 1) out[t] = '1';
    return out;
}

}  // namespace

PhaseState::PhaseState(std::vector<const CssCode*> blocks, unsigned q) {
    if (q == 0 || q > 24) throw std::invalid_argument("PhaseState: q out of range");
    q_ = q;
    phase_mod_ = std::uint32_t(1) << q;

    std::size_t total_exponent = 0;
    std::size_t byte_offset = 0;
    std::size_t label_shift = 0;
    std::vector<Rref> stab;
    for (const CssCode* code : blocks) {
        Block b;
        b.n = code->n;
        b.byte_offset = byte_offset;
        b.byte_len = (code->n + 7) / 8;
        b.label_shift = label_shift;
        Rref r = rref(code->h_x);
        total_exponent += r.pivots.size() + code->k;
        label_shift += code->k;
        byte_offset += b.byte_len;
        for (std::size_t m = 0; m < code->l_x.rows(); ++m)
            b.lx_bytes.push_back(slice_mask(code->l_x.row(m), b.byte_len));
        blocks_.push_back(std::move(b));
        stab.push_back(std::move(r));
    }
    if (total_exponent > 24)
        throw std::length_error("PhaseState: " + std::to_string(total_exponent) +
                                " coset bits exceed the 2^24 enumeration guard");

    // Per block, every string v l_x + u h_x tagged with its logical label v.
    std::vector<std::vector<std::pair<std::uint64_t, std::string>>> per_block;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const Block& b = blocks_[bi];
        const BitMat& sm = stab[bi].mat;
        std::vector<std::string> stab_bytes;
        for (std::size_t r = 0; r < sm.rows(); ++r)
            stab_bytes.push_back(slice_mask(sm.row(r), b.byte_len));
        std::vector<std::pair<std::uint64_t, std::string>> states;
        const std::size_t kb = b.lx_bytes.size();
        const std::size_t rb = sm.rows();
        states.reserve(std::size_t(1) << (kb + rb));
        std::string cur(b.byte_len, '\0');
        // Gray-code walk over (v, u) bits: exactly one row xor per step.
        const std::size_t total = std::size_t(1) << (kb + rb);
        std::uint64_t gray_prev = 0;
        std::uint64_t label = 0;
        for (std::size_t it = 0; it < total; ++it) {
            if (it) {
                const std::uint64_t gray = it ^ (it >> 1);
                const unsigned bit = static_cast<unsigned>(std::countr_zero(gray ^ gray_prev));
                gray_prev = gray;
                if (bit < kb) {
                    xor_slice(cur, 0, b.lx_bytes[bit]);
                    label ^= std::uint64_t(1) << bit;
                } else {
                    xor_slice(cur, 0, stab_bytes[bit - kb]);
                }
            }
            states.emplace_back(label, cur);
        }
        per_block.push_back(std::move(states));
    }

    std::size_t total_states = 1;
    for (const auto& s : per_block) total_states *= s.size();
    phases_.reserve(total_states * 2);
    label_of_.reserve(total_states * 2);

    std::string key;
    for (const Block& b : blocks_) key.append(b.byte_len, '\0');
    auto rec = [&](auto&& self, std::size_t bi, std::uint64_t label) -> void {
        if (bi == blocks_.size()) {
            phases_.emplace(key, 0);
            label_of_.emplace(key, label);
            return;
        }
        const Block& b = blocks_[bi];
        for (const auto& [lab, bytes] : per_block[bi]) {
            key.replace(b.byte_offset, b.byte_len, bytes);
            self(self, bi + 1, label | (lab << b.label_shift));
        }
    };
    rec(rec, 0, 0);
}

bool PhaseState::key_bit(const std::string& key, unsigned block, std::uint32_t qubit) const {
    const Block& b = blocks_.at(block);
    return (key[b.byte_offset + qubit / 8] >> (qubit % 8)) & 1;
}

void PhaseState::apply(const GateOp& op) {
    switch (op.kind) {
        case GateOp::Kind::DiagonalPhase: {
            const Block& b = blocks_.at(op.block);
            if (op.phase.size() != b.n)
                throw std::invalid_argument("PhaseState: phase vector length mismatch");
            for (auto& [key, phase] : phases_) {
                std::uint64_t s = 0;
                for (std::size_t i = 0; i < b.byte_len; ++i) {
                    unsigned byte = static_cast<unsigned char>(key[b.byte_offset + i]);
                    while (byte) {
                        const unsigned bit = std::countr_zero(byte);
                        s += op.phase[i * 8 + bit];
                        byte &= byte - 1;
                    }
                }
                phase = static_cast<std::uint32_t>((phase + s) % phase_mod_);
            }
            return;
        }
        case GateOp::Kind::LogicalX: {
            const Block& b = blocks_.at(op.block);
            const std::string& mask = b.lx_bytes.at(op.logical);
            std::unordered_map<std::string, std::uint32_t> next;
            next.reserve(phases_.size() * 2);
            for (const auto& [key, phase] : phases_) {
                std::string moved = key;
                xor_slice(moved, b.byte_offset, mask);
                next.emplace(std::move(moved), phase);
            }
            phases_ = std::move(next);
            return;
        }
        case GateOp::Kind::TransversalCnot: {
            const Block& c = blocks_.at(op.block);
            const Block& t = blocks_.at(op.block2);
            if (c.n != t.n)
                throw std::invalid_argument("PhaseState: cnot between unequal blocks");
            std::unordered_map<std::string, std::uint32_t> next;
            next.reserve(phases_.size() * 2);
            for (const auto& [key, phase] : phases_) {
                std::string moved = key;
                for (std::size_t i = 0; i < t.byte_len; ++i)
                    moved[t.byte_offset + i] =
                        static_cast<char>(moved[t.byte_offset + i] ^ key[c.byte_offset + i]);
                next.emplace(std::move(moved), phase);
            }
            phases_ = std::move(next);
            return;
        }
        case GateOp::Kind::PhysicalCz: {
            for (auto& [key, phase] : phases_) {
                std::uint64_t s = 0;
                for (const GateOp::CzPair& pr : op.cz_pairs)
                    if (key_bit(key, pr.b1, pr.i) && key_bit(key, pr.b2, pr.j))
                        s += op.cz_exponent;
                phase = static_cast<std::uint32_t>((phase + s) % phase_mod_);
            }
            return;
        }
    }
    throw std::logic_error("PhaseState: unknown gate kind");
}

void PhaseState::apply(const std::vector<GateOp>& ops) {
    for (const GateOp& op : ops) apply(op);
}

PhaseState::LogicalMap PhaseState::logical_map() const {
    LogicalMap out;
    auto pretty = [&](const std::string& key) {
        std::string s;
        for (const Block& b : blocks_) {
            if (!s.empty()) s += '|';
            s += bits_of_key(key, b.byte_offset, b.n);
        }
        return s;
    };
    std::map<std::uint64_t, std::uint32_t> rep;
    for (const auto& [key, phase] : phases_) {
        auto it = label_of_.find(key);
        if (it == label_of_.end()) {
            out.failure = "state left the codespace at basis string " + pretty(key);
            return out;
        }
        auto [rit, inserted] = rep.emplace(it->second, phase);
        if (!inserted && rit->second != phase) {
            out.failure = "phase is not constant on logical label " +
                          std::to_string(it->second) + " (basis string " + pretty(key) + ")";
            return out;
        }
    }
    const std::uint32_t offset = rep.at(0);
    for (auto& [label, phase] : rep)
        out.phases[label] = static_cast<std::uint32_t>((phase + phase_mod_ - offset) % phase_mod_);
    out.diagonal = true;
    return out;
}

SimVerdict verify_logical_diagonal(const std::vector<const CssCode*>& blocks, unsigned q,
                                   const std::vector<GateOp>& ops,
                                   const std::map<std::uint64_t, std::uint32_t>& expected) {
    PhaseState state(blocks, q);
    state.apply(ops);
    PhaseState::LogicalMap map = state.logical_map();
    SimVerdict verdict;
    if (!map.diagonal) {
        verdict.detail = map.failure;
        return verdict;
    }
    verdict.observed = map.phases;
    for (const auto& [label, phase] : map.phases) {
        auto it = expected.find(label);
        const std::uint32_t want = (it == expected.end()) ? 0 : it->second;
        if (phase != want) {
            verdict.detail = "label " + std::to_string(label) + ": phase " +
                             std::to_string(phase) + ", expected " + std::to_string(want);
            return verdict;
        }
    }
    verdict.passed = true;
    return verdict;
}

namespace {

std::vector<std::uint32_t> negate_phase(const PhaseVector& p) {
    const std::uint32_t mod = std::uint32_t(1) << p.q;
    std::vector<std::uint32_t> out(p.entries.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (mod - p.entries[i]) % mod;
    return out;
}

}  // namespace

std::vector<GateOp> localized_phase_ops(unsigned block, const PhaseVector& p, std::size_t logical) {
    return {GateOp::diagonal_phase(block, p.entries), GateOp::logical_x(block, logical),
            GateOp::diagonal_phase(block, negate_phase(p)), GateOp::logical_x(block, logical)};
}

std::vector<GateOp> inverse_localized_phase_ops(unsigned block, const PhaseVector& p,
                                                std::size_t logical) {
    return {GateOp::diagonal_phase(block, negate_phase(p)), GateOp::logical_x(block, logical),
            GateOp::diagonal_phase(block, p.entries), GateOp::logical_x(block, logical)};
}

std::vector<GateOp> cross_block_cphase_ops(const PhaseVector& p, std::size_t logical) {
    std::vector<GateOp> ops;
    ops.push_back(GateOp::transversal_cnot(0, 1));
    for (GateOp& op : localized_phase_ops(1, p, logical)) ops.push_back(std::move(op));
    ops.push_back(GateOp::transversal_cnot(0, 1));
    for (GateOp& op : inverse_localized_phase_ops(1, p, logical)) ops.push_back(std::move(op));
    for (GateOp& op : inverse_localized_phase_ops(0, p, logical)) ops.push_back(std::move(op));
    return ops;
}

IntraCzPreconditions check_intra_preconditions(const BitMat& h_x, const BitMat& s_l,
                                               const BitMat& s_r, const BitVec& l1,
                                               const BitVec& l2) {
    IntraCzPreconditions pre;
    pre.symmetry = matmul(matmul(s_l, h_x), s_r) == h_x;
    pre.disjoint = !dot_rows(l1, l2).any();
    BitMat row(1, l1.size());
    row.set_row(0, l1);
    pre.maps_l1_to_l2 = matmul(row, s_r).row(0) == l2;
    pre.l2_odd = l2.weight() % 2 == 1;
    return pre;
}

SimVerdict verify_intra_cz(const CssCode& code, std::size_t la, std::size_t lb, unsigned q) {
    const BitVec l1 = code.l_x.row(la);
    const BitVec l2 = code.l_x.row(lb);
    std::vector<GateOp::CzPair> pairs;
    for (std::uint32_t i : l1.support())
        for (std::uint32_t j : l2.support()) pairs.push_back({0, i, 0, j});
    const std::uint32_t exponent = std::uint32_t(1) << (q - 1);
    std::map<std::uint64_t, std::uint32_t> expected;
    for (std::uint64_t label = 0; label < (std::uint64_t(1) << code.k); ++label)
        if (((label >> la) & 1) && ((label >> lb) & 1)) expected[label] = exponent;
    return verify_logical_diagonal({&code}, q, {GateOp::physical_cz(std::move(pairs), exponent)},
                                   expected);
}

}  // namespace qldpc
