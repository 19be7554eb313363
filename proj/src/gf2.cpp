#include "qldpc/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace qldpc {

Rref rref(const BitMat& m) {
    BitMat a = m;
    std::vector<std::uint32_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && !a.get(sel, c)) ++sel;
        if (sel == a.rows()) continue;
        a.swap_rows(r, sel);
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && a.get(i, c)) a.xor_row(i, r);
        pivots.push_back(static_cast<std::uint32_t>(c));
        ++r;
    }
    Rref out;
    out.mat = BitMat(r, a.cols());
    for (std::size_t i = 0; i < r; ++i) out.mat.set_row(i, a.row(i));
    out.pivots = std::move(pivots);
    return out;
}

std::size_t rank(const BitMat& m) { return rref(m).pivots.size(); }

BitMat kernel(const BitMat& m) {
    const std::size_t n = m.cols();
    Rref r = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::uint32_t p : r.pivots) is_pivot[p] = true;

    BitMat out(n - r.pivots.size(), n);
    std::size_t row = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        out.set(row, f, true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.get(i, f)) out.set(row, r.pivots[i], true);
        ++row;
    }
    return out;
}

BitMat transpose(const BitMat& m) {
    BitMat out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const std::uint64_t* p = m.row_data(r);
        for (std::size_t wi = 0; wi < m.words_per_row(); ++wi) {
            std::uint64_t x = p[wi];
            while (x) {
                std::size_t c = wi * 64 + std::countr_zero(x);
                out.set(c, r, true);
                x &= x - 1;
            }
        }
    }
    return out;
}

BitMat matmul(const BitMat& a, const BitMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    BitMat out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const std::uint64_t* p = a.row_data(r);
        for (std::size_t wi = 0; wi < a.words_per_row(); ++wi) {
            std::uint64_t x = p[wi];
            while (x) {
                std::size_t j = wi * 64 + std::countr_zero(x);
                out.xor_row(r, b.row(j));
                x &= x - 1;
            }
        }
    }
    return out;
}

BitMat inverse(const BitMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    BitMat a = m;
    BitMat inv = BitMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && !a.get(sel, c)) ++sel;
        if (sel == n) throw std::invalid_argument("inverse: matrix is singular");
        a.swap_rows(c, sel);
        inv.swap_rows(c, sel);
        for (std::size_t i = 0; i < n; ++i)
            if (i != c && a.get(i, c)) {
                a.xor_row(i, c);
                inv.xor_row(i, c);
            }
    }
    return inv;
}

BitMat kron(const BitMat& a, const BitMat& b) {
    BitMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            if (!a.get(ra, ca)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                const std::uint64_t* p = b.row_data(rb);
                for (std::size_t wi = 0; wi < b.words_per_row(); ++wi) {
                    std::uint64_t x = p[wi];
                    while (x) {
                        std::size_t cb = wi * 64 + std::countr_zero(x);
                        out.set(ra * b.rows() + rb, ca * b.cols() + cb, true);
                        x &= x - 1;
                    }
                }
            }
        }
    return out;
}

BitMat hstack(const BitMat& a, const BitMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row count mismatch");
    BitMat out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (b.get(r, c)) out.set(r, a.cols() + c, true);
    }
    return out;
}

BitMat vstack(const BitMat& a, const BitMat& b) {
    if (a.rows() && b.rows() && a.cols() != b.cols())
        throw std::invalid_argument("vstack: column count mismatch");
    const std::size_t cols = a.rows() ? a.cols() : b.cols();
    BitMat out(a.rows() + b.rows(), cols);
    for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) out.set_row(a.rows() + r, b.row(r));
    return out;
}

bool parity(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("parity: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.words().size(); ++i) acc ^= x.words()[i] & y.words()[i];
    return std::popcount(acc) & 1;
}

BitVec dot_rows(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot_rows: length mismatch");
    BitVec out = x;
    out &= y;
    return out;
}

BitVec reduce_by(const Rref& basis, BitVec v) {
    for (std::size_t i = 0; i < basis.pivots.size(); ++i)
        if (v.get(basis.pivots[i])) v ^= basis.mat.row(i);
    return v;
}

bool in_rowspan(const Rref& basis, const BitVec& v) { return !reduce_by(basis, v).any(); }

namespace {

void fold_rec(const BitMat& m, unsigned depth, std::size_t start, const BitVec& acc,
              BitMat& out, std::size_t& row) {
    if (depth == 0) {
        out.set_row(row++, acc);
        return;
    }
    for (std::size_t i = start; i + depth <= m.rows(); ++i)
        fold_rec(m, depth - 1, i + 1, dot_rows(acc, m.row(i)), out, row);
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

BitMat fold_products(const BitMat& m, unsigned i) {
    if (i == 0) throw std::invalid_argument("fold_products: order must be >= 1");
    if (i == 1) return m;
    BitMat out(binom(m.rows(), i), m.cols());
    BitVec ones(m.cols());
    for (std::size_t t = 0; t < m.cols(); ++t) ones.set(t, true);
    std::size_t row = 0;
    fold_rec(m, i, 0, ones, out, row);
    return out;
}

std::uint64_t xor_weight_expand(const BitMat& rows, unsigned q) {
    if (q == 0) throw std::invalid_argument("xor_weight_expand: q must be >= 1");
    const std::uint64_t mod = std::uint64_t(1) << q;

    BitVec x(rows.cols());
    for (std::size_t r = 0; r < rows.rows(); ++r) x ^= rows.row(r);
    const std::uint64_t direct = x.weight() % mod;

    // |r1 xor ... xor rm| = sum_i (-1)^{i+1} 2^{i-1} sum_{|T|=i} |and_T|;
    // terms with i > q vanish mod 2^q, so the truncated sum matches mod 2^q.
    long long expansion = 0;
    const unsigned top = std::min<unsigned>(q, static_cast<unsigned>(rows.rows()));
    for (unsigned i = 1; i <= top; ++i) {
        BitMat prods = fold_products(rows, i);
        long long total = 0;
        for (std::size_t r = 0; r < prods.rows(); ++r)
            total += static_cast<long long>(prods.row_weight(r));
        const long long term = (1LL << (i - 1)) * total;
        expansion += (i % 2 == 1) ? term : -term;
    }
    const std::uint64_t folded =
        static_cast<std::uint64_t>(((expansion % static_cast<long long>(mod)) +
                                    static_cast<long long>(mod))) % mod;
    if (folded != direct)
        throw std::logic_error("xor_weight_expand: direct and expanded weights disagree");
    return direct;
}

}  // namespace qldpc
