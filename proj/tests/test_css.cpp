#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qldpc/bits.hpp"
#include "qldpc/css.hpp"
#include "qldpc/gf2.hpp"

using namespace qldpc;

namespace {

const std::vector<std::string> kSteane = {"1001011", "0101101", "0010111"};

BitMat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    BitMat m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c, true);
    return m;
}

// Random CSS pair: arbitrary h_x, h_z rows drawn from the kernel of h_x.
CssCode random_css(std::mt19937_64& rng, std::size_t n) {
    BitMat h_x = random_mat(rng, 1 + rng() % 4, n, 0.5);
    BitMat kx = kernel(h_x);
    std::size_t zrows = 1 + rng() % 4;
    BitMat h_z(zrows, n);
    for (std::size_t r = 0; r < zrows; ++r) {
        BitVec acc(n);
        for (std::size_t b = 0; b < kx.rows(); ++b)
            if (rng() & 1) acc ^= kx.row(b);
        h_z.set_row(r, acc);
    }
    return assemble(std::move(h_x), std::move(h_z));
}

// Minimum weight over all 2^n vectors that commute with the opposite checks
// but are outside the stabilizer span; 0 when none exists.
std::uint32_t dense_min_weight(const CssCode& code, PauliKind kind) {
    const BitMat& opp = kind == PauliKind::X ? code.h_z : code.h_x;
    const BitMat& own = kind == PauliKind::X ? code.h_x : code.h_z;
    Rref span = rref(own);
    std::size_t n = code.n;
    std::uint32_t best = 0;
    for (std::uint64_t v = 1; v < (std::uint64_t(1) << n); ++v) {
        BitVec x(n);
        x.words()[0] = v;
        bool ok = true;
        for (std::size_t r = 0; r < opp.rows() && ok; ++r)
            if (parity(opp.row(r), x)) ok = false;
        if (!ok) continue;
        if (!reduce_by(span, x).any()) continue;
        std::uint32_t w = static_cast<std::uint32_t>(x.weight());
        if (best == 0 || w < best) best = w;
    }
    return best;
}

bool is_logical(const CssCode& code, PauliKind kind, const std::vector<std::uint32_t>& supp) {
    const BitMat& opp = kind == PauliKind::X ? code.h_z : code.h_x;
    const BitMat& own = kind == PauliKind::X ? code.h_x : code.h_z;
    BitVec x(code.n);
    for (std::uint32_t t : supp) x.set(t, true);
    for (std::size_t r = 0; r < opp.rows(); ++r)
        if (parity(opp.row(r), x)) return false;
    return reduce_by(rref(own), x).any();
}

}  // namespace

TEST_CASE("assemble keeps commuting checks and rejects the rest") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    CHECK(code.n == 7);
    CHECK(code.full_k == 1);
    CHECK(code.k == 0);

    BitMat bad_z = BitMat::from_strings({"1000000"});
    CHECK_THROWS_AS(assemble(BitMat::from_strings(kSteane), bad_z), std::invalid_argument);
}

TEST_CASE("compute_logicals pairs a full logical basis") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    compute_logicals(code);
    CHECK(code.k == 1);
    CHECK_FALSE(code.subsystem);
    CHECK(matmul(code.l_x, transpose(code.l_z)) == BitMat::identity(1));
    CHECK_NOTHROW(validate(code));
}

TEST_CASE("compute_logicals on random codes always validates") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        CssCode code = random_css(rng, 6 + rng() % 7);
        compute_logicals(code);
        CHECK(code.k == code.full_k);
        CHECK_NOTHROW(validate(code));
    }
}

TEST_CASE("override_logicals validates and marks subsystem codes") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    BitMat ones(1, 7);
    for (std::size_t c = 0; c < 7; ++c) ones.set(0, c, true);
    override_logicals(code, ones, ones);
    CHECK(code.k == 1);
    CHECK_FALSE(code.subsystem);

    // dropping to zero retained logicals flags a subsystem code
    override_logicals(code, BitMat(0, 7), BitMat(0, 7));
    CHECK(code.k == 0);
    CHECK(code.subsystem);

    // a stabilizer row is not a logical
    CssCode code2 = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    BitMat row0 = BitMat::from_strings({"1001011"});
    CHECK_THROWS_AS(override_logicals(code2, row0, row0), std::invalid_argument);
}

TEST_CASE("distance_search finds the Steane distance with a valid witness") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    for (PauliKind kind : {PauliKind::X, PauliKind::Z}) {
        DistanceCertificate cert = distance_search(code, kind, 4);
        CHECK(cert.found);
        CHECK(cert.weight_found == 3);
        CHECK(cert.exhausted_below == 3);
        CHECK(cert.witness.size() == 3);
        CHECK(is_logical(code, kind, cert.witness));
    }
}

TEST_CASE("distance_search reports exhaustion when the cutoff is too low") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    DistanceCertificate cert = distance_search(code, PauliKind::X, 2);
    CHECK_FALSE(cert.found);
    CHECK(cert.weight_found == 0);
    CHECK(cert.witness.empty());
    CHECK(cert.exhausted_below == 3);
}

TEST_CASE("distance_search is deterministic across thread counts") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    DistanceCertificate a = distance_search(code, PauliKind::Z, 3, 1);
    DistanceCertificate b = distance_search(code, PauliKind::Z, 3, 4);
    CHECK(a.found == b.found);
    CHECK(a.weight_found == b.weight_found);
    CHECK(a.witness == b.witness);
    CHECK(a.exhausted_below == b.exhausted_below);
}

TEST_CASE("distance_search matches a dense enumeration oracle") {
    std::mt19937_64 rng(20260815);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 6 + rng() % 7;  // up to 12 qubits
        CssCode code = random_css(rng, n);
        for (PauliKind kind : {PauliKind::X, PauliKind::Z}) {
            std::uint32_t expected = dense_min_weight(code, kind);
            DistanceCertificate cert =
                distance_search(code, kind, static_cast<std::uint32_t>(n), 2);
            if (expected == 0) {
                CHECK_FALSE(cert.found);
                CHECK(cert.exhausted_below == n + 1);
            } else {
                CHECK(cert.found);
                CHECK(cert.weight_found == expected);
                CHECK(cert.exhausted_below == expected);
                CHECK(cert.witness.size() == expected);
                CHECK(is_logical(code, kind, cert.witness));
            }
        }
    }
}

TEST_CASE("distance_search ignores dependent opposite-check rows") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    BitMat hz_dep = BitMat::from_strings(
        {"1001011", "0101101", "0010111", "1100110", "0000000"});  // added row = r0 ^ r1
    CssCode dep = assemble(BitMat::from_strings(kSteane), hz_dep);
    for (PauliKind kind : {PauliKind::X, PauliKind::Z}) {
        DistanceCertificate a = distance_search(code, kind, 3);
        DistanceCertificate b = distance_search(dep, kind, 3);
        CHECK(a.weight_found == b.weight_found);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("check_robustness flags high-dimension kernels") {
    // direct-construction factor: two copies of the symmetric 15x15 local
    // matrix give n = 30, k = 22 > 15
    BitMat h15 = BitMat::from_strings({
        "100011100011101", "010010011011011", "001001010110111", "000100101101111",
        "110001111000110", "101010110101010", "100111001110010", "011011001101100",
        "010110110110100", "001101111011000", "111000101110001", "110101010101001",
        "101110011000101", "011111100000011", "111100000011110"});
    BitMat a = kron(BitMat::identity(2), transpose(h15));
    RobustnessReport rep = check_robustness(a);
    CHECK(rep.n == 30);
    CHECK(rep.k == 22);
    CHECK(rep.not_robust);

    BitMat h7 = BitMat::from_strings({"1001101", "0101011", "0010111", "1100110", "1011010",
                                      "0111100", "1110001"});
    RobustnessReport rep7 = check_robustness(h7);
    CHECK(rep7.n == 7);
    CHECK(rep7.k == 4);
    CHECK(rep7.not_robust);

    // a full-rank square matrix is robust
    RobustnessReport id = check_robustness(BitMat::identity(4));
    CHECK_FALSE(id.not_robust);
}

TEST_CASE("max_check_weight on the Steane code") {
    CssCode code = assemble(BitMat::from_strings(kSteane), BitMat::from_strings(kSteane));
    auto [row_w, col_w] = max_check_weight(code);
    CHECK(row_w == 4);
    // qubit 6 sits in all three checks of both types
    CHECK(col_w == 6);
}
