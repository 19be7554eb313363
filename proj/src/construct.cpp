#include "qldpc/construct.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "qldpc/gf2.hpp"

namespace qldpc {

namespace {

// Extracts perm(i) from a permutation matrix with P[i, perm(i)] = 1;
// throws unless every row and column has weight exactly 1.
std::vector<std::uint32_t> perm_vector(const BitMat& p, const char* what) {
    if (p.rows() != p.cols())
        throw std::invalid_argument(std::string(what) + ": permutation matrix not square");
    std::vector<std::uint32_t> perm(p.rows());
    std::vector<bool> hit(p.rows(), false);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (p.row_weight(i) != 1)
            throw std::invalid_argument(std::string(what) + ": row weight != 1");
        const std::uint32_t j = p.row(i).lowest_set();
        if (hit[j]) throw std::invalid_argument(std::string(what) + ": duplicate column");
        hit[j] = true;
        perm[i] = j;
    }
    return perm;
}

std::vector<std::vector<std::uint32_t>> orbits_of(const std::vector<std::uint32_t>& perm) {
    std::vector<std::vector<std::uint32_t>> orbits;
    std::vector<bool> seen(perm.size(), false);
    for (std::uint32_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::uint32_t> orbit{i};
        seen[i] = true;
        for (std::uint32_t j = perm[i]; j != i; j = perm[j]) {
            orbit.push_back(j);
            seen[j] = true;
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

void require_orbit_length(const std::vector<std::uint32_t>& perm, unsigned order,
                          const char* what) {
    for (const auto& orbit : orbits_of(perm))
        if (orbit.size() != order)
            throw std::invalid_argument(std::string(what) + ": orbit of length " +
                                        std::to_string(orbit.size()) + ", expected " +
                                        std::to_string(order));
}

std::vector<std::uint32_t> row_support_sorted(const BitMat& m, std::size_t r) {
    return m.row(r).support();
}

}  // namespace

TannerSpec default_assignment(BitMat i0, BitMat c0) {
    TannerSpec spec;
    const std::size_t s = c0.cols();
    spec.assignment.resize(i0.rows());
    for (std::size_t v = 0; v < i0.rows(); ++v) {
        if (i0.row_weight(v) != s)
            throw std::invalid_argument("default_assignment: i0 row " + std::to_string(v) +
                                        " weight != local code length");
        spec.assignment[v].resize(s);
        for (std::uint32_t t = 0; t < s; ++t) spec.assignment[v][t] = t;
    }
    spec.i0 = std::move(i0);
    spec.c0 = std::move(c0);
    return spec;
}

BitMat tanner(const TannerSpec& spec) {
    const std::size_t s = spec.c0.cols();
    const std::size_t r = spec.c0.rows();
    if (spec.assignment.size() != spec.i0.rows())
        throw std::invalid_argument("tanner: assignment size mismatch");
    BitMat a(spec.i0.rows() * r, spec.i0.cols());
    for (std::size_t v = 0; v < spec.i0.rows(); ++v) {
        const std::vector<std::uint32_t> edges = row_support_sorted(spec.i0, v);
        if (edges.size() != s)
            throw std::invalid_argument("tanner: i0 row " + std::to_string(v) +
                                        " weight != local code length");
        const auto& asg = spec.assignment[v];
        if (asg.size() != s) throw std::invalid_argument("tanner: assignment entry size mismatch");
        std::vector<bool> used(s, false);
        for (std::uint32_t col : asg) {
            if (col >= s || used[col])
                throw std::invalid_argument("tanner: assignment entry is not a permutation");
            used[col] = true;
        }
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t t = 0; t < s; ++t)
                if (spec.c0.get(c, asg[t])) a.set(v * r + c, edges[t], true);
    }
    return a;
}

TannerSpec symmetric_assignment(const BitMat& i0, const BitMat& c0,
                                const std::vector<IncidenceSymmetry>& gens) {
    const std::size_t m = i0.rows();
    const std::size_t e = i0.cols();
    const std::size_t s = c0.cols();
    const std::size_t r = c0.rows();

    std::vector<std::vector<std::uint32_t>> rhos, gammas;
    for (const IncidenceSymmetry& g : gens) {
        std::vector<std::uint32_t> rho = perm_vector(g.rho, "symmetric_assignment rho");
        std::vector<std::uint32_t> gamma = perm_vector(g.gamma, "symmetric_assignment gamma");
        if (rho.size() != m || gamma.size() != e)
            throw std::invalid_argument("symmetric_assignment: permutation size mismatch");
        if (matmul(g.rho, i0) != matmul(i0, transpose(g.gamma)))
            throw std::invalid_argument(
                "symmetric_assignment: (rho, gamma) is not an incidence symmetry");
        rhos.push_back(std::move(rho));
        gammas.push_back(std::move(gamma));
    }

    // col[v][edge] = local column placed on that edge, -1 while unknown.
    std::vector<std::vector<std::int32_t>> col(m, std::vector<std::int32_t>(e, -1));
    std::vector<bool> assigned(m, false);
    for (std::size_t v0 = 0; v0 < m; ++v0) {
        if (assigned[v0]) continue;
        const std::vector<std::uint32_t> edges0 = row_support_sorted(i0, v0);
        if (edges0.size() != s)
            throw std::invalid_argument("symmetric_assignment: i0 row weight mismatch");
        for (std::uint32_t t = 0; t < s; ++t) col[v0][edges0[t]] = static_cast<std::int32_t>(t);
        assigned[v0] = true;
        std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(v0)};
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const std::uint32_t v2 = rhos[g][v];
                bool fresh = !assigned[v2];
                for (std::uint32_t e2 : row_support_sorted(i0, v2)) {
                    const std::int32_t want = col[v][gammas[g][e2]];
                    if (want < 0)
                        throw std::logic_error("symmetric_assignment: propagation hit an edge "
                                               "outside the source vertex");
                    if (col[v2][e2] >= 0 && col[v2][e2] != want)
                        throw std::logic_error(
                            "symmetric_assignment: conflicting column propagation at vertex " +
                            std::to_string(v2));
                    col[v2][e2] = want;
                }
                if (fresh) {
                    assigned[v2] = true;
                    queue.push_back(v2);
                }
            }
        }
    }

    TannerSpec spec;
    spec.i0 = i0;
    spec.c0 = c0;
    spec.assignment.resize(m);
    for (std::size_t v = 0; v < m; ++v) {
        const std::vector<std::uint32_t> edges = row_support_sorted(i0, v);
        std::vector<bool> used(s, false);
        spec.assignment[v].resize(s);
        for (std::uint32_t t = 0; t < s; ++t) {
            const std::int32_t c = col[v][edges[t]];
            if (c < 0 || used[c])
                throw std::logic_error(
                    "symmetric_assignment: assignment at vertex " + std::to_string(v) +
                    " is not a bijection");
            used[c] = true;
            spec.assignment[v][t] = static_cast<std::uint32_t>(c);
        }
    }

    BitMat a = tanner(spec);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        BitMat lifted = kron(gens[g].rho, BitMat::identity(r));
        if (matmul(lifted, a) != matmul(a, transpose(gens[g].gamma)))
            throw std::logic_error("symmetric_assignment: lifted symmetry check failed");
    }
    return spec;
}

CssCode balanced_product(const BitMat& a, const SymmetryPair& sym) {
    const std::size_t nr = a.rows();
    const std::size_t nc = a.cols();
    std::vector<std::uint32_t> rperm = perm_vector(sym.r, "balanced_product r");
    std::vector<std::uint32_t> cperm = perm_vector(sym.c, "balanced_product c");
    if (rperm.size() != nr || cperm.size() != nc)
        throw std::invalid_argument("balanced_product: permutation size mismatch");
    if (sym.order == 0) throw std::invalid_argument("balanced_product: order must be positive");
    require_orbit_length(rperm, sym.order, "balanced_product r");
    require_orbit_length(cperm, sym.order, "balanced_product c");
    if (matmul(sym.r, a) != matmul(a, transpose(sym.c)))
        throw std::invalid_argument("balanced_product: r a != a c^T");

    BitMat i_plus_c = sym.c;
    for (std::size_t i = 0; i < nc; ++i)
        i_plus_c.set(i, i, !i_plus_c.get(i, i));
    BitMat i_plus_r = sym.r;
    for (std::size_t i = 0; i < nr; ++i)
        i_plus_r.set(i, i, !i_plus_r.get(i, i));

    return assemble(hstack(transpose(a), i_plus_c), hstack(i_plus_r, a));
}

CssCode hypergraph_product(const BitMat& a, const BitMat& b) {
    BitMat h_x = hstack(kron(a, BitMat::identity(b.cols())),
                        kron(BitMat::identity(a.rows()), transpose(b)));
    BitMat h_z = hstack(kron(BitMat::identity(a.cols()), b),
                        kron(transpose(a), BitMat::identity(b.rows())));
    return assemble(std::move(h_x), std::move(h_z));
}

void structured_logicals_balanced(CssCode& code, const SymmetryPair& sym,
                                  unsigned local_rows, const BitVec& z_local) {
    const std::size_t nr = sym.r.rows();
    if (local_rows == 0 || nr % local_rows != 0)
        throw std::invalid_argument("structured_logicals_balanced: bad local row count");
    if (z_local.size() != local_rows)
        throw std::invalid_argument("structured_logicals_balanced: z_local length mismatch");
    const std::size_t nv = nr / local_rows;
    std::vector<std::uint32_t> rperm = perm_vector(sym.r, "structured_logicals_balanced r");

    // The lifted row permutation acts blockwise; recover the vertex action.
    std::vector<std::uint32_t> vperm(nv);
    for (std::size_t v = 0; v < nv; ++v) vperm[v] = rperm[v * local_rows] / local_rows;

    const auto orbits = orbits_of(vperm);
    BitMat lx(orbits.size(), code.n), lz(orbits.size(), code.n);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        for (std::uint32_t v : orbits[o])
            for (std::size_t t = 0; t < local_rows; ++t) lx.set(o, v * local_rows + t, true);
        const std::uint32_t rep = *std::min_element(orbits[o].begin(), orbits[o].end());
        for (std::size_t t = 0; t < local_rows; ++t)
            if (z_local.get(t)) lz.set(o, rep * local_rows + t, true);
    }
    override_logicals(code, std::move(lx), std::move(lz));
}

void structured_logicals_hyper(CssCode& code, std::size_t copies, const BitVec& v_local,
                               const BitVec& u, const BitVec& e_b) {
    if (u.size() != e_b.size())
        throw std::invalid_argument("structured_logicals_hyper: u and e_b length mismatch");
    const std::size_t nb = u.size();
    const std::size_t local = v_local.size();
    if (copies * local * nb > code.n)
        throw std::invalid_argument("structured_logicals_hyper: left region exceeds n");
    BitMat lx(copies, code.n), lz(copies, code.n);
    for (std::size_t i = 0; i < copies; ++i)
        for (std::uint32_t av : v_local.support())
            for (std::size_t b = 0; b < nb; ++b) {
                const std::size_t qubit = (i * local + av) * nb + b;
                if (u.get(b)) lx.set(i, qubit, true);
                if (e_b.get(b)) lz.set(i, qubit, true);
            }
    override_logicals(code, std::move(lx), std::move(lz));
}

CssCode direct_construction(const BitMat& c0, unsigned k, unsigned d_x,
                            const BitMat& r0, unsigned q) {
    if (k == 0 || d_x == 0) throw std::invalid_argument("direct_construction: k, d_x >= 1");
    const std::size_t r = c0.rows();
    const std::size_t s = c0.cols();
    std::vector<std::uint32_t> r0perm = perm_vector(r0, "direct_construction r0");
    if (r0perm.size() != d_x)
        throw std::invalid_argument("direct_construction: r0 must be d_x x d_x");
    require_orbit_length(r0perm, d_x, "direct_construction r0");

    // Local transversality of the transposed code at level q.
    BitMat c0t = transpose(c0);
    for (unsigned i = 1; i <= q && i <= c0t.rows(); ++i) {
        const std::uint64_t modulus = std::uint64_t(1) << (q + 1 - i);
        BitMat prods = fold_products(c0t, i);
        for (std::size_t row = 0; row < prods.rows(); ++row)
            if (prods.row_weight(row) % modulus != 0)
                throw std::invalid_argument(
                    "direct_construction: local code fails the order-" + std::to_string(i) +
                    " weight condition for q=" + std::to_string(q));
    }

    BitMat a = kron(BitMat::identity(k * d_x), c0t);
    SymmetryPair sym;
    sym.c = kron(r0, BitMat::identity(k * r));
    sym.r = kron(transpose(r0), BitMat::identity(k * s));
    sym.order = d_x;
    CssCode code = balanced_product(a, sym);

    BitMat lx(k, code.n), lz(k, code.n);
    for (unsigned kappa = 0; kappa < k; ++kappa)
        for (unsigned delta = 0; delta < d_x; ++delta)
            for (std::size_t t = 0; t < s; ++t) {
                lx.set(kappa, (std::size_t(delta) * k + kappa) * s + t, true);
                if (delta == 0) lz.set(kappa, (std::size_t(delta) * k + kappa) * s + t, true);
            }
    override_logicals(code, std::move(lx), std::move(lz));
    return code;
}

CssCode distance_balance(const CssCode& code, const BitMat& h_c, BoostDirection dir) {
    const std::size_t mc = h_c.rows();
    const std::size_t nc = h_c.cols();
    if (mc == 0 && nc == 1) return code;
    if (rank(h_c) != mc) throw std::invalid_argument("distance_balance: h_c is rank-deficient");

    const BitMat& same = (dir == BoostDirection::X) ? code.h_x : code.h_z;
    const BitMat& other = (dir == BoostDirection::X) ? code.h_z : code.h_x;

    // boosted same-type checks: [same x I | I x h_c^T]
    BitMat boosted = hstack(kron(same, BitMat::identity(nc)),
                            kron(BitMat::identity(same.rows()), transpose(h_c)));
    // boosted other-type checks: [other x I | 0] over [I x h_c | same^T x I]
    BitMat top = hstack(kron(other, BitMat::identity(nc)),
                        BitMat(other.rows() * nc, same.rows() * mc));
    BitMat bottom = hstack(kron(BitMat::identity(code.n), h_c),
                           kron(transpose(same), BitMat::identity(mc)));
    BitMat stacked = vstack(std::move(top), std::move(bottom));

    CssCode out = (dir == BoostDirection::X) ? assemble(std::move(boosted), std::move(stacked))
                                             : assemble(std::move(stacked), std::move(boosted));

    // kernel() yields one row per free column, carrying a single 1 on that
    // free column outside the pivots, so unit vectors at the free columns
    // are dual to the kernel basis.
    BitMat l_c = kernel(h_c);
    std::vector<std::uint32_t> free_cols;
    {
        Rref rr = rref(h_c);
        std::vector<bool> is_pivot(nc, false);
        for (std::uint32_t p : rr.pivots) is_pivot[p] = true;
        for (std::uint32_t c = 0; c < nc; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    const std::size_t kc = l_c.rows();

    const BitMat& same_l = (dir == BoostDirection::X) ? code.l_x : code.l_z;
    const BitMat& other_l = (dir == BoostDirection::X) ? code.l_z : code.l_x;
    BitMat boosted_same_l(code.k * kc, out.n), boosted_other_l(code.k * kc, out.n);
    for (std::size_t m = 0; m < code.k; ++m)
        for (std::size_t b = 0; b < kc; ++b) {
            const std::size_t row = m * kc + b;
            for (std::uint32_t t : same_l.row(m).support())
                for (std::uint32_t c : l_c.row(b).support())
                    boosted_same_l.set(row, std::size_t(t) * nc + c, true);
            for (std::uint32_t t : other_l.row(m).support())
                boosted_other_l.set(row, std::size_t(t) * nc + free_cols[b], true);
        }
    if (dir == BoostDirection::X)
        override_logicals(out, std::move(boosted_same_l), std::move(boosted_other_l));
    else
        override_logicals(out, std::move(boosted_other_l), std::move(boosted_same_l));
    return out;
}

std::pair<BitMat, BitMat> lift_intra_symmetry(const CssCode& code, const BitMat& r2,
                                              const BitMat& c2) {
    const std::size_t nr = r2.rows();
    const std::size_t nc = c2.rows();
    perm_vector(r2, "lift_intra_symmetry r2");
    perm_vector(c2, "lift_intra_symmetry c2");
    if (nr + nc != code.n || code.h_x.rows() != nc)
        throw std::invalid_argument("lift_intra_symmetry: shape mismatch with the code");

    BitMat s_l = c2;
    BitMat c2t = transpose(c2);
    BitMat s_r(code.n, code.n);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::uint32_t j : r2.row(i).support()) s_r.set(i, j, true);
    for (std::size_t i = 0; i < nc; ++i)
        for (std::uint32_t j : c2t.row(i).support()) s_r.set(nr + i, nr + j, true);

    if (matmul(matmul(s_l, code.h_x), s_r) != code.h_x)
        throw std::logic_error("lift_intra_symmetry: s_l h_x s_r != h_x");
    return {std::move(s_l), std::move(s_r)};
}

}  // namespace qldpc
