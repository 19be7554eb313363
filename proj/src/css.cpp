#include "qldpc/css.hpp"

#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace qldpc {

CssCode assemble(BitMat h_x, BitMat h_z) {
    if (h_x.cols() != h_z.cols())
        throw std::invalid_argument("assemble: h_x and h_z column counts differ");
    for (std::size_t i = 0; i < h_x.rows(); ++i)
        for (std::size_t j = 0; j < h_z.rows(); ++j)
            if (parity(h_x.row(i), h_z.row(j)))
                throw std::invalid_argument("assemble: h_x row " + std::to_string(i) +
                                            " anticommutes with h_z row " + std::to_string(j));
    CssCode code;
    code.n = h_x.cols();
    code.full_k = code.n - rank(h_x) - rank(h_z);
    code.h_x = std::move(h_x);
    code.h_z = std::move(h_z);
    code.l_x = BitMat(0, code.n);
    code.l_z = BitMat(0, code.n);
    return code;
}

namespace {

// Representatives of ker(opposite checks) modulo the stabilizer row span,
// in reduced echelon form.
BitMat quotient_basis(const BitMat& opposite, const BitMat& span) {
    Rref span_r = rref(span);
    BitMat ker = kernel(opposite);
    BitMat reduced(ker.rows(), ker.cols());
    for (std::size_t i = 0; i < ker.rows(); ++i)
        reduced.set_row(i, reduce_by(span_r, ker.row(i)));
    return rref(reduced).mat;
}

}  // namespace

void compute_logicals(CssCode& code) {
    BitMat lx = quotient_basis(code.h_z, code.h_x);
    BitMat lz = quotient_basis(code.h_x, code.h_z);
    if (lx.rows() != code.full_k || lz.rows() != code.full_k)
        throw std::logic_error("compute_logicals: quotient dimension mismatch");
    if (code.full_k) {
        // M = lx lz^T is invertible (the logical pairing is perfect); replace
        // lz by M^-T lz so that lx lz^T == I.
        BitMat m = matmul(lx, transpose(lz));
        lz = matmul(transpose(inverse(m)), lz);
    }
    code.l_x = std::move(lx);
    code.l_z = std::move(lz);
    code.k = code.full_k;
    code.subsystem = false;
    validate(code);
}

void override_logicals(CssCode& code, BitMat l_x, BitMat l_z) {
    if (l_x.rows() != l_z.rows())
        throw std::invalid_argument("override_logicals: row count mismatch");
    if (l_x.rows() > code.full_k)
        throw std::invalid_argument("override_logicals: more rows than logical qubits");
    CssCode trial = code;
    trial.l_x = std::move(l_x);
    trial.l_z = std::move(l_z);
    trial.k = trial.l_x.rows();
    trial.subsystem = trial.k < trial.full_k;
    try {
        validate(trial);
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(std::string("override_logicals: ") + e.what());
    }
    code = std::move(trial);
}

void validate(const CssCode& code) {
    for (std::size_t i = 0; i < code.h_x.rows(); ++i)
        for (std::size_t j = 0; j < code.h_z.rows(); ++j)
            if (parity(code.h_x.row(i), code.h_z.row(j)))
                throw std::logic_error("validate: checks anticommute");
    for (std::size_t i = 0; i < code.l_x.rows(); ++i)
        for (std::size_t j = 0; j < code.h_z.rows(); ++j)
            if (parity(code.l_x.row(i), code.h_z.row(j)))
                throw std::logic_error("validate: l_x row " + std::to_string(i) +
                                       " anticommutes with h_z");
    for (std::size_t i = 0; i < code.l_z.rows(); ++i)
        for (std::size_t j = 0; j < code.h_x.rows(); ++j)
            if (parity(code.l_z.row(i), code.h_x.row(j)))
                throw std::logic_error("validate: l_z row " + std::to_string(i) +
                                       " anticommutes with h_x");
    for (std::size_t i = 0; i < code.l_x.rows(); ++i)
        for (std::size_t j = 0; j < code.l_z.rows(); ++j)
            if (parity(code.l_x.row(i), code.l_z.row(j)) != (i == j))
                throw std::logic_error("validate: logical pairing is not the identity");
    if (code.l_x.rows()) {
        if (rank(vstack(code.h_x, code.l_x)) != rank(code.h_x) + code.l_x.rows())
            throw std::logic_error("validate: l_x rows not independent of the stabilizers");
        if (rank(vstack(code.h_z, code.l_z)) != rank(code.h_z) + code.l_z.rows())
            throw std::logic_error("validate: l_z rows not independent of the stabilizers");
    }
}

namespace {

struct SearchContext {
    // Per qubit: the syndrome column (bits over check rows) followed by the
    // residual of e_t modulo the same-type stabilizer span, packed into one
    // block of words. A support is a logical operator iff the xor of its
    // blocks has zero syndrome part and nonzero residual part.
    std::vector<std::uint64_t> blocks;
    std::size_t words_per_block = 0;
    std::size_t syndrome_words = 0;
    std::size_t n = 0;
};

SearchContext make_context(const CssCode& code, PauliKind kind) {
    const BitMat& chk = (kind == PauliKind::X) ? code.h_z : code.h_x;
    const BitMat& span = (kind == PauliKind::X) ? code.h_x : code.h_z;
    Rref span_r = rref(span);

    SearchContext ctx;
    ctx.n = code.n;
    ctx.syndrome_words = (chk.rows() + 63) / 64;
    const std::size_t res_words = (code.n + 63) / 64;
    ctx.words_per_block = ctx.syndrome_words + res_words;
    ctx.blocks.assign(code.n * ctx.words_per_block, 0);
    for (std::size_t t = 0; t < code.n; ++t) {
        std::uint64_t* blk = ctx.blocks.data() + t * ctx.words_per_block;
        for (std::size_t r = 0; r < chk.rows(); ++r)
            if (chk.get(r, t)) blk[r / 64] |= std::uint64_t(1) << (r % 64);
        BitVec e(code.n);
        e.set(t, true);
        BitVec res = reduce_by(span_r, e);
        for (std::size_t wi = 0; wi < res_words; ++wi)
            blk[ctx.syndrome_words + wi] = res.words()[wi];
    }
    return ctx;
}

bool block_is_witness(const std::uint64_t* acc, const SearchContext& ctx) {
    for (std::size_t wi = 0; wi < ctx.syndrome_words; ++wi)
        if (acc[wi]) return false;
    for (std::size_t wi = ctx.syndrome_words; wi < ctx.words_per_block; ++wi)
        if (acc[wi]) return true;
    return false;
}

// Enumerates w-subsets of [0, limit) in colexicographic order, xoring qubit
// blocks into acc levels; returns the first witness support or empty.
bool colex_rec(const SearchContext& ctx, unsigned w, std::size_t limit,
               std::uint64_t* acc, std::vector<std::uint32_t>& chosen) {
    const std::size_t wpb = ctx.words_per_block;
    if (w == 0) {
        if (!block_is_witness(acc, ctx)) return false;
        return true;
    }
    std::uint64_t* next = acc + wpb;
    for (std::size_t m = w - 1; m < limit; ++m) {
        const std::uint64_t* blk = ctx.blocks.data() + m * wpb;
        for (std::size_t wi = 0; wi < wpb; ++wi) next[wi] = acc[wi] ^ blk[wi];
        chosen.push_back(static_cast<std::uint32_t>(m));
        if (colex_rec(ctx, w - 1, m, next, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

// First witness of weight w in colex order, or empty. Partitioned across
// threads by the largest support element; each worker scans its own largest
// elements in order and the smallest winning largest-element is kept, which
// reproduces the single-threaded answer.
std::vector<std::uint32_t> search_weight(const SearchContext& ctx, unsigned w, unsigned threads) {
    const std::size_t n = ctx.n;
    if (w > n) return {};
    std::atomic<std::size_t> next_top{w - 1};
    std::atomic<std::size_t> best_top{n};
    std::vector<std::vector<std::uint32_t>> results(threads);

    auto worker = [&](unsigned id) {
        std::vector<std::uint64_t> scratch(ctx.words_per_block * (w + 1), 0);
        std::vector<std::uint32_t> chosen;
        for (;;) {
            const std::size_t top = next_top.fetch_add(1);
            if (top >= n || top >= best_top.load()) return;
            const std::uint64_t* blk = ctx.blocks.data() + top * ctx.words_per_block;
            std::uint64_t* acc = scratch.data();
            for (std::size_t wi = 0; wi < ctx.words_per_block; ++wi) acc[wi] = blk[wi];
            chosen.assign(1, static_cast<std::uint32_t>(top));
            if (colex_rec(ctx, w - 1, top, acc, chosen)) {
                std::size_t cur = best_top.load();
                while (top < cur && !best_top.compare_exchange_weak(cur, top)) {
                }
                if (results[id].empty() || results[id].front() > top) results[id] = chosen;
                return;
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint32_t> best;
    for (auto& r : results)
        if (!r.empty() && (best.empty() || r.front() < best.front())) best = r;
    if (!best.empty()) {
        // chosen is recorded largest-first; report ascending support
        std::vector<std::uint32_t> sorted(best.rbegin(), best.rend());
        return sorted;
    }
    return {};
}

}  // namespace

DistanceCertificate distance_search(const CssCode& code, PauliKind kind,
                                    std::uint32_t w_max, unsigned threads) {
    if (threads == 0) threads = 1;
    SearchContext ctx = make_context(code, kind);
    DistanceCertificate cert;
    cert.pauli_kind = kind;
    for (std::uint32_t w = 1; w <= w_max; ++w) {
        std::vector<std::uint32_t> hit = search_weight(ctx, w, threads);
        if (!hit.empty()) {
            cert.found = true;
            cert.weight_found = w;
            cert.witness = std::move(hit);
            cert.exhausted_below = w;
            return cert;
        }
    }
    cert.exhausted_below = w_max + 1;
    return cert;
}

RobustnessReport check_robustness(const BitMat& a) {
    RobustnessReport rep;
    rep.n = a.cols();
    rep.k = a.cols() - rank(a);
    rep.not_robust = 2 * rep.k > rep.n;
    return rep;
}

std::pair<std::size_t, std::size_t> max_check_weight(const CssCode& code) {
    std::size_t row_max = 0;
    for (std::size_t r = 0; r < code.h_x.rows(); ++r)
        row_max = std::max(row_max, code.h_x.row_weight(r));
    for (std::size_t r = 0; r < code.h_z.rows(); ++r)
        row_max = std::max(row_max, code.h_z.row_weight(r));
    std::size_t col_max = 0;
    for (std::size_t c = 0; c < code.n; ++c) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < code.h_x.rows(); ++r) w += code.h_x.get(r, c);
        for (std::size_t r = 0; r < code.h_z.rows(); ++r) w += code.h_z.get(r, c);
        col_max = std::max(col_max, w);
    }
    return {row_max, col_max};
}

}  // namespace qldpc
