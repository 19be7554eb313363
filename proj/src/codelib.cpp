#include "qldpc/codelib.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/gf2.hpp"

namespace qldpc {

namespace {

// [7,4] Hamming check matrix in the systematic form used throughout.
const std::vector<std::string> kSteaneHx = {
    "1001011",
    "0101101",
    "0010111",
};

// Symmetric 7x7 matrix whose row space is the [7,4] Hamming code.
const std::vector<std::string> kHamming7Sym = {
    "1001101",
    "0101011",
    "0010111",
    "1100110",
    "1011010",
    "0111100",
    "1110001",
};

// Symmetric 15x15 matrix whose row space is the [15,11] Hamming code.
const std::vector<std::string> kHamming15Sym = {
    "100011100011101",
    "010010011011011",
    "001001010110111",
    "000100101101111",
    "110001111000110",
    "101010110101010",
    "100111001110010",
    "011011001101100",
    "010110110110100",
    "001101111011000",
    "111000101110001",
    "110101010101001",
    "101110011000101",
    "011111100000011",
    "111100000011110",
};

// Point-block incidence of a Kirkman triple system on 15 points
// (35 triples, every point on 7 triples, every triple of size 3).
const std::vector<std::string> kKirkmanI0 = {
    "10001100101000010000100000000000000",
    "11000010010100001000010000000000000",
    "01100101000010000100001000000000000",
    "00110010100001000010000100000000000",
    "00011001010000100001000010000000000",
    "10000000000010100000000101000110000",
    "01000000001001000000000011100001000",
    "00100000000100100000100000110000100",
    "00010000001010000000010000011000010",
    "00001000000101000000001000001100001",
    "00000100000000000011010001000000101",
    "00000010000000010001001000100010010",
    "00000001000000011000000100010001001",
    "00000000100000001100000010001010100",
    "00000000010000000110100000000101010",
};

// Vertex-edge incidence of a 3-regular graph on 10 vertices with 15 edges,
// invariant under a free 5-cycle on the vertices.
const std::vector<std::string> kCycle10I0 = {
    "100001000010000",
    "010000100001000",
    "001000010000100",
    "000100001000010",
    "000010000100001",
    "100000000100100",
    "010001000000010",
    "001000100000001",
    "000100010010000",
    "000010001001000",
};

// Repetition code check matrix and the cyclic 3x3 variant.
const std::vector<std::string> kRep3 = {
    "110",
    "011",
};

const std::vector<std::string> kCyclic3 = {
    "110",
    "011",
    "101",
};

// Vertex-edge incidence of a 3-regular graph on 6 vertices (9 edges).
const std::vector<std::string> kGraph6I0 = {
    "100001100",
    "110000010",
    "011000001",
    "001100010",
    "000110100",
    "000011001",
};

// Tanner matrix of kGraph6I0 with the repetition local code; kept as a
// registry entry so the expansion step can be cross-checked.
const std::vector<std::string> kColourfulA = {
    "100001000",
    "000001100",
    "100000010",
    "110000000",
    "001000001",
    "011000000",
    "001100000",
    "000100010",
    "000100100",
    "000010100",
    "000001001",
    "000011000",
};

// Permutation matrix cycling positions inside each consecutive block of
// `len`, by `shift` (blocks * len positions total); P[i, pi(i)] = 1.
BitMat block_cycle(std::size_t blocks, std::size_t len, std::size_t shift) {
    std::vector<std::uint32_t> pi(blocks * len);
    for (std::size_t i = 0; i < pi.size(); ++i)
        pi[i] = static_cast<std::uint32_t>((i / len) * len + (i % len + shift) % len);
    return BitMat::permutation(pi);
}

// Complete graph K16: vertices x edges, edges = unordered pairs in
// lexicographic order.
BitMat k16_incidence_matrix() {
    BitMat m(16, 120);
    std::size_t e = 0;
    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t b = a + 1; b < 16; ++b) {
            m.set(a, e, true);
            m.set(b, e, true);
            ++e;
        }
    return m;
}

std::size_t k16_edge_index(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    // edges (0,1), (0,2), ..., (0,15), (1,2), ... in row-major pair order
    return a * 16 - a * (a + 1) / 2 + (b - a - 1);
}

// Vertex relabelling v -> v+1 mod 16 of K16: rho shifts vertices, gamma is
// the matching edge permutation with (a,b) appearing at gamma(e) whenever
// (a+1, b+1) sits at e.
void k16_shift_perms(std::vector<std::uint32_t>& rho, std::vector<std::uint32_t>& gamma) {
    rho.resize(48);
    for (std::size_t v = 0; v < 48; ++v)
        rho[v] = static_cast<std::uint32_t>(3 * ((v / 3 + 1) % 16) + v % 3);
    std::vector<std::uint32_t> eunshift(120);
    std::size_t e = 0;
    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t b = a + 1; b < 16; ++b) {
            eunshift[e] = static_cast<std::uint32_t>(k16_edge_index((a + 15) % 16, (b + 15) % 16));
            ++e;
        }
    gamma.resize(360);
    for (std::size_t j = 0; j < 360; ++j)
        gamma[j] = 3 * eunshift[j / 3] + static_cast<std::uint32_t>(j % 3);
}

bool is_permutation_matrix(const BitMat& m) {
    if (m.rows() != m.cols()) return false;
    std::vector<char> seen(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.row_weight(r) != 1) return false;
        std::size_t c = m.row(r).lowest_set();
        if (seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("codelib: self-check failed: " + what);
}

void check_weights(const BitMat& m, std::size_t row_w, std::size_t col_w,
                   const std::string& name) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        require(m.row_weight(r) == row_w, name + " row weight");
    std::vector<std::size_t> cw(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) ++cw[c];
    for (std::size_t c = 0; c < m.cols(); ++c)
        require(cw[c] == col_w, name + " column weight");
}

void check_incidence_symmetry(const std::map<std::string, BitMat>& reg, const std::string& i0,
                              const std::string& rho, const std::string& gamma) {
    const BitMat& m = reg.at(i0);
    require(is_permutation_matrix(reg.at(rho)), rho + " is a permutation");
    require(is_permutation_matrix(reg.at(gamma)), gamma + " is a permutation");
    require(matmul(reg.at(rho), m) == matmul(m, transpose(reg.at(gamma))),
            i0 + " symmetry under (" + rho + ", " + gamma + ")");
}

std::map<std::string, BitMat> make_registry() {
    std::map<std::string, BitMat> reg;
    reg.emplace("steane_hx", BitMat::from_strings(kSteaneHx));
    reg.emplace("hamming7_sym", BitMat::from_strings(kHamming7Sym));
    reg.emplace("hamming15_sym", BitMat::from_strings(kHamming15Sym));
    reg.emplace("kirkman_i0", BitMat::from_strings(kKirkmanI0));
    reg.emplace("cycle10_i0", BitMat::from_strings(kCycle10I0));
    reg.emplace("k16_incidence", k16_incidence_matrix());
    reg.emplace("rep3", BitMat::from_strings(kRep3));
    reg.emplace("cyclic3", BitMat::from_strings(kCyclic3));
    reg.emplace("graph6_i0", BitMat::from_strings(kGraph6I0));
    reg.emplace("colourful_a", BitMat::from_strings(kColourfulA));

    reg.emplace("kirkman_r0", block_cycle(3, 5, 1));
    reg.emplace("kirkman_c", block_cycle(7, 5, 4));
    reg.emplace("cycle10_r0", block_cycle(2, 5, 1));
    reg.emplace("cycle10_c", block_cycle(3, 5, 4));
    reg.emplace("k16_r0", block_cycle(16, 3, 1));
    reg.emplace("k16_c", block_cycle(120, 3, 2));
    {
        std::vector<std::uint32_t> rho, gamma;
        k16_shift_perms(rho, gamma);
        reg.emplace("k16_r0_shift", BitMat::permutation(rho));
        reg.emplace("k16_c_shift", BitMat::permutation(gamma));
    }

    require(rank(reg.at("steane_hx")) == 3, "steane_hx rank");
    for (std::size_t r = 0; r < 3; ++r)
        require(reg.at("steane_hx").row_weight(r) == 4, "steane_hx row weight");

    require(reg.at("hamming7_sym") == transpose(reg.at("hamming7_sym")), "hamming7_sym symmetric");
    require(rank(reg.at("hamming7_sym")) == 3, "hamming7_sym rank");
    check_weights(reg.at("hamming7_sym"), 4, 4, "hamming7_sym");

    require(reg.at("hamming15_sym") == transpose(reg.at("hamming15_sym")),
            "hamming15_sym symmetric");
    require(rank(reg.at("hamming15_sym")) == 4, "hamming15_sym rank");
    check_weights(reg.at("hamming15_sym"), 8, 8, "hamming15_sym");

    check_weights(reg.at("kirkman_i0"), 7, 3, "kirkman_i0");
    check_weights(reg.at("cycle10_i0"), 3, 2, "cycle10_i0");
    check_weights(reg.at("k16_incidence"), 15, 2, "k16_incidence");
    check_weights(reg.at("graph6_i0"), 3, 2, "graph6_i0");

    check_incidence_symmetry(reg, "kirkman_i0", "kirkman_r0", "kirkman_c");
    check_incidence_symmetry(reg, "cycle10_i0", "cycle10_r0", "cycle10_c");
    {
        BitMat lifted = kron(reg.at("k16_incidence"), BitMat::identity(3));
        reg.emplace("k16_i0", std::move(lifted));
        check_incidence_symmetry(reg, "k16_i0", "k16_r0", "k16_c");
        check_incidence_symmetry(reg, "k16_i0", "k16_r0_shift", "k16_c_shift");
    }
    return reg;
}

const std::map<std::string, BitMat>& registry() {
    static const std::map<std::string, BitMat> reg = make_registry();
    return reg;
}

}  // namespace

const std::vector<std::string>& codelib_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, mat] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

const BitMat& codelib_get(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("codelib_get: unknown entry '" + name + "'");
    return it->second;
}

bool codelib_has(const std::string& name) { return registry().count(name) != 0; }

CssCode build_steane() {
    CssCode code = assemble(codelib_get("steane_hx"), codelib_get("steane_hx"));
    BitMat ones(1, 7);
    for (std::size_t c = 0; c < 7; ++c) ones.set(0, c, true);
    override_logicals(code, ones, ones);
    return code;
}

CssCode build_cycle10() {
    std::vector<IncidenceSymmetry> gens;
    gens.push_back({codelib_get("cycle10_r0"), codelib_get("cycle10_c")});
    TannerSpec spec = symmetric_assignment(codelib_get("cycle10_i0"), codelib_get("cyclic3"), gens);
    BitMat a = tanner(spec);
    SymmetryPair sym{kron(codelib_get("cycle10_r0"), BitMat::identity(3)),
                     codelib_get("cycle10_c"), 5};
    CssCode code = balanced_product(a, sym);
    structured_logicals_balanced(code, sym, 3, BitVec::from_string("111"));
    return code;
}

CssCode build_kirkman() {
    std::vector<IncidenceSymmetry> gens;
    gens.push_back({codelib_get("kirkman_r0"), codelib_get("kirkman_c")});
    TannerSpec spec =
        symmetric_assignment(codelib_get("kirkman_i0"), codelib_get("hamming7_sym"), gens);
    BitMat a = tanner(spec);
    SymmetryPair sym{kron(codelib_get("kirkman_r0"), BitMat::identity(7)),
                     codelib_get("kirkman_c"), 5};
    CssCode code = balanced_product(a, sym);
    structured_logicals_balanced(code, sym, 7, BitVec::from_string("0001110"));
    return code;
}

CssCode build_k16() {
    std::vector<IncidenceSymmetry> gens;
    gens.push_back({codelib_get("k16_r0"), codelib_get("k16_c")});
    gens.push_back({codelib_get("k16_r0_shift"), codelib_get("k16_c_shift")});
    TannerSpec spec = symmetric_assignment(codelib_get("k16_i0"), codelib_get("hamming15_sym"), gens);
    BitMat a = tanner(spec);
    SymmetryPair sym{kron(codelib_get("k16_r0"), BitMat::identity(15)), codelib_get("k16_c"), 3};
    CssCode code = balanced_product(a, sym);
    BitVec ones(15);
    for (std::size_t t = 0; t < 15; ++t) ones.set(t, true);
    structured_logicals_balanced(code, sym, 15, ones);
    return code;
}

CssCode build_direct(const std::string& local_code, unsigned k, unsigned d_x, unsigned q) {
    std::vector<std::uint32_t> cyc(d_x);
    for (unsigned i = 0; i < d_x; ++i) cyc[i] = (i + 1) % d_x;
    return direct_construction(codelib_get(local_code), k, d_x, BitMat::permutation(cyc), q);
}

std::pair<BitMat, BitMat> k16_intra_symmetry(const CssCode& k16) {
    BitMat r2 = kron(codelib_get("k16_r0_shift"), BitMat::identity(15));
    return lift_intra_symmetry(k16, r2, codelib_get("k16_c_shift"));
}

}  // namespace qldpc
