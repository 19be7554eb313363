#include "qldpc/transversal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <thread>

#include "qldpc/gf2.hpp"

namespace qldpc {

PhaseVector uniform_phase(unsigned q, std::size_t n, std::uint32_t value, const BitVec& support) {
    if (support.size() != n) throw std::invalid_argument("uniform_phase: support length mismatch");
    if (q == 0 || q > 30) throw std::invalid_argument("uniform_phase: q out of range");
    if (value >= (std::uint32_t(1) << q)) throw std::invalid_argument("uniform_phase: value >= 2^q");
    PhaseVector p;
    p.q = q;
    p.entries.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t)
        if (support.get(t)) p.entries[t] = value;
    return p;
}

namespace {

std::uint64_t masked_sum(const BitVec& mask, const std::vector<std::uint32_t>& p) {
    std::uint64_t s = 0;
    for (std::size_t wi = 0; wi < mask.words().size(); ++wi) {
        std::uint64_t x = mask.words()[wi];
        while (x) {
            s += p[wi * 64 + static_cast<std::size_t>(std::countr_zero(x))];
            x &= x - 1;
        }
    }
    return s;
}

struct LSubset {
    std::vector<std::uint32_t> rows;
    BitVec mask;
};

// All j-subsets of l_x rows, j = 0..max_j, with nonzero AND (the empty
// subset carries the all-ones mask). Subsets with zero AND are dropped:
// their masked sums vanish identically.
std::vector<LSubset> l_subsets(const BitMat& l_x, unsigned max_j) {
    std::vector<LSubset> out;
    BitVec ones(l_x.cols());
    for (std::size_t t = 0; t < l_x.cols(); ++t) ones.set(t, true);
    std::vector<std::uint32_t> rows;
    auto rec = [&](auto&& self, std::size_t start, const BitVec& acc) -> void {
        out.push_back({rows, acc});
        if (rows.size() == max_j) return;
        for (std::size_t m = start; m < l_x.rows(); ++m) {
            BitVec next = dot_rows(acc, l_x.row(m));
            if (!next.any()) continue;
            rows.push_back(static_cast<std::uint32_t>(m));
            self(self, m + 1, next);
            rows.pop_back();
        }
    };
    rec(rec, 0, ones);
    return out;
}

struct CheckShared {
    const BitMat& h_x;
    const std::vector<std::uint32_t>& p;
    unsigned q;
};

void check_dfs(const CheckShared& sh, unsigned j, const std::vector<std::uint32_t>& lrows,
               std::vector<std::uint32_t>& hrows, const BitVec& mask,
               std::vector<Violation>& out) {
    const unsigned i = static_cast<unsigned>(hrows.size());
    const std::uint64_t modulus = std::uint64_t(1) << (sh.q + 1 - i - j);
    const std::uint64_t residue = masked_sum(mask, sh.p) % modulus;
    if (residue != 0) out.push_back({i, j, hrows, lrows, residue, modulus});
    if (i + j >= sh.q) return;
    for (std::size_t m = hrows.back() + 1; m < sh.h_x.rows(); ++m) {
        BitVec next = dot_rows(mask, sh.h_x.row(m));
        if (!next.any()) continue;
        hrows.push_back(static_cast<std::uint32_t>(m));
        check_dfs(sh, j, lrows, hrows, next, out);
        hrows.pop_back();
    }
}

bool violation_less(const Violation& a, const Violation& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    if (a.hx_rows != b.hx_rows) return a.hx_rows < b.hx_rows;
    return a.lx_rows < b.lx_rows;
}

}  // namespace

TransversalityReport check_transversality(const BitMat& h_x, const BitMat& l_x,
                                          const PhaseVector& p, unsigned threads) {
    if (p.q == 0 || p.q > 30) throw std::invalid_argument("check_transversality: q out of range");
    if (h_x.cols() != l_x.cols() || p.entries.size() != h_x.cols())
        throw std::invalid_argument("check_transversality: dimension mismatch");
    const std::uint64_t phase_mod = std::uint64_t(1) << p.q;
    for (std::uint32_t e : p.entries)
        if (e >= phase_mod) throw std::invalid_argument("check_transversality: entry >= 2^q");
    if (threads == 0) threads = 1;

    TransversalityReport rep;
    rep.q = p.q;
    for (std::size_t m = 0; m < l_x.rows(); ++m)
        rep.w.push_back(masked_sum(l_x.row(m), p.entries) % phase_mod);

    std::vector<LSubset> subsets = l_subsets(l_x, p.q);
    CheckShared sh{h_x, p.entries, p.q};

    std::vector<Violation> violations;
    // i = 0 conditions (j >= 2; (0,1) is the logical exponent, not a constraint)
    for (const LSubset& ls : subsets) {
        const unsigned j = static_cast<unsigned>(ls.rows.size());
        if (j < 2) continue;
        const std::uint64_t modulus = std::uint64_t(1) << (p.q + 1 - j);
        const std::uint64_t residue = masked_sum(ls.mask, p.entries) % modulus;
        if (residue != 0) violations.push_back({0, j, {}, ls.rows, residue, modulus});
    }

    // i >= 1 conditions: one task per (l-subset, leading h row)
    struct Task {
        std::uint32_t subset;
        std::uint32_t h0;
    };
    std::vector<Task> tasks;
    for (std::uint32_t s = 0; s < subsets.size(); ++s) {
        if (subsets[s].rows.size() >= p.q) continue;  // no room for an h row
        for (std::uint32_t h0 = 0; h0 < h_x.rows(); ++h0) tasks.push_back({s, h0});
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<Violation>> found(threads);
    auto worker = [&](unsigned id) {
        std::vector<std::uint32_t> hrows;
        for (;;) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= tasks.size()) return;
            const Task& t = tasks[ti];
            const LSubset& ls = subsets[t.subset];
            BitVec mask = dot_rows(ls.mask, h_x.row(t.h0));
            if (!mask.any()) continue;
            hrows.assign(1, t.h0);
            check_dfs(sh, static_cast<unsigned>(ls.rows.size()), ls.rows, hrows, mask, found[id]);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (auto& f : found) violations.insert(violations.end(), f.begin(), f.end());
    std::sort(violations.begin(), violations.end(), violation_less);
    rep.violations = std::move(violations);
    rep.passed = rep.violations.empty();
    return rep;
}

bool logicals_disjoint(const BitMat& l_x) {
    for (std::size_t a = 0; a < l_x.rows(); ++a)
        for (std::size_t b = a + 1; b < l_x.rows(); ++b)
            if (dot_rows(l_x.row(a), l_x.row(b)).any()) return false;
    return true;
}

namespace {

struct Condition {
    BitVec mask;        // already restricted to the support
    unsigned mod_bits;  // constraint: sum over mask == 0 mod 2^mod_bits
};

void collect_conditions(const BitMat& h_masked, const BitMat& l_masked, unsigned q,
                        std::vector<Condition>& out) {
    std::vector<LSubset> subsets = l_subsets(l_masked, q);
    for (const LSubset& ls : subsets) {
        const unsigned j = static_cast<unsigned>(ls.rows.size());
        if (j >= 2) out.push_back({ls.mask, q + 1 - j});
        if (j >= q) continue;
        auto rec = [&](auto&& self, std::size_t start, const BitVec& acc, unsigned i) -> void {
            if (i >= 1) out.push_back({acc, q + 1 - i - j});
            if (i + j >= q) return;
            for (std::size_t m = start; m < h_masked.rows(); ++m) {
                BitVec next = dot_rows(acc, h_masked.row(m));
                if (!next.any()) continue;
                self(self, m + 1, next, i + 1);
            }
        };
        rec(rec, 0, ls.mask, 0);
    }
}

bool all_odd(const std::vector<std::uint64_t>& w) {
    for (std::uint64_t x : w)
        if (x % 2 == 0) return false;
    return true;
}

// Solves the GF(2) system rows * x = rhs (each row: variable mask plus rhs
// bit appended); returns false when inconsistent. Free variables are zero.
bool solve_gf2(BitMat system, std::size_t vars, std::vector<std::uint8_t>& x) {
    Rref r = rref(system);
    x.assign(vars, 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == vars) return false;  // 0 == 1 row
        x[r.pivots[i]] = r.mat.get(i, vars);
    }
    return true;
}

}  // namespace

std::optional<PhaseVector> find_phase_vector(const BitMat& h_x, const BitMat& l_x,
                                             unsigned q, const BitVec& support) {
    const std::size_t n = h_x.cols();
    if (support.size() != n || l_x.cols() != n)
        throw std::invalid_argument("find_phase_vector: dimension mismatch");

    auto accept = [&](const PhaseVector& p) {
        TransversalityReport rep = check_transversality(h_x, l_x, p);
        return rep.passed && all_odd(rep.w);
    };

    PhaseVector uniform = uniform_phase(q, n, 1, support);
    if (accept(uniform)) return uniform;

    // Per-position solve over the support, one bit plane at a time. Masking
    // every row by the support up front is sound: positions off the support
    // contribute nothing to any masked sum.
    std::vector<std::uint32_t> positions = support.support();
    const std::size_t nv = positions.size();
    if (nv == 0) return std::nullopt;
    std::vector<std::size_t> var_of(n, SIZE_MAX);
    for (std::size_t v = 0; v < nv; ++v) var_of[positions[v]] = v;

    BitMat hm(h_x.rows(), n), lm(l_x.rows(), n);
    for (std::size_t r = 0; r < h_x.rows(); ++r) hm.set_row(r, dot_rows(h_x.row(r), support));
    for (std::size_t r = 0; r < l_x.rows(); ++r) lm.set_row(r, dot_rows(l_x.row(r), support));

    std::vector<Condition> conds;
    collect_conditions(hm, lm, q, conds);

    std::vector<std::uint64_t> partial(nv, 0);
    auto known_sum = [&](const BitVec& mask) {
        std::uint64_t s = 0;
        for (std::uint32_t t : mask.support()) s += partial[var_of[t]];
        return s;
    };

    for (unsigned plane = 0; plane < q; ++plane) {
        std::vector<BitVec> rows;
        for (const Condition& c : conds) {
            if (c.mod_bits <= plane) continue;
            BitVec row(nv + 1);
            for (std::uint32_t t : c.mask.support()) row.set(var_of[t], true);
            row.set(nv, (known_sum(c.mask) >> plane) & 1);
            rows.push_back(std::move(row));
        }
        if (plane == 0) {
            for (std::size_t m = 0; m < lm.rows(); ++m) {
                BitVec row(nv + 1);
                bool nonempty = false;
                for (std::uint32_t t : lm.row(m).support()) row.set(var_of[t], true), nonempty = true;
                if (!nonempty) return std::nullopt;  // this logical exponent is stuck at 0
                row.set(nv, true);
                rows.push_back(std::move(row));
            }
        }
        BitMat system(rows.size(), nv + 1);
        for (std::size_t r = 0; r < rows.size(); ++r) system.set_row(r, rows[r]);
        std::vector<std::uint8_t> x;
        if (!solve_gf2(std::move(system), nv, x)) return std::nullopt;
        for (std::size_t v = 0; v < nv; ++v)
            if (x[v]) partial[v] |= std::uint64_t(1) << plane;
    }

    PhaseVector p;
    p.q = q;
    p.entries.assign(n, 0);
    for (std::size_t v = 0; v < nv; ++v)
        p.entries[positions[v]] = static_cast<std::uint32_t>(partial[v]);
    if (accept(p)) return p;
    return std::nullopt;
}

}  // namespace qldpc
