#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qldpc/codelib.hpp"
#include "qldpc/css.hpp"
#include "qldpc/formats.hpp"
#include "qldpc/simverify.hpp"
#include "qldpc/transversal.hpp"

using namespace qldpc;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qldpc_test_formats";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

void replace_first(std::string& text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
}

BitVec ones(std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, true);
    return v;
}

}  // namespace

TEST_CASE("bmat writes and reads back the same matrix") {
    BitMat m = BitMat::from_strings({"10110", "01011", "00000"});
    std::ostringstream out;
    write_bmat(out, m);
    CHECK(out.str() == "3 5\n10110\n01011\n00000\n");
    std::istringstream in(out.str());
    CHECK(read_bmat(in) == m);

    BitMat empty(0, 4);
    std::ostringstream out2;
    write_bmat(out2, empty);
    std::istringstream in2(out2.str());
    BitMat back = read_bmat(in2);
    CHECK(back.rows() == 0);
    CHECK(back.cols() == 4);
}

TEST_CASE("bmat file round trip") {
    auto path = temp_dir() / "round_trip.bmat";
    BitMat m = codelib_get("steane_hx");
    write_bmat_file(path.string(), m);
    CHECK(read_bmat_file(path.string()) == m);
    CHECK_THROWS_AS(read_bmat_file((temp_dir() / "missing.bmat").string()),
                    std::invalid_argument);
}

TEST_CASE("bmat rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_bmat(in);
    };
    CHECK_THROWS_AS(parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse("2 3\n101\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("1 3\n10\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("1 3\n1021\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("1 3\n102\n"), std::invalid_argument);
}

TEST_CASE("descriptor survives a save and load round trip") {
    CodeDescriptor d;
    d.code = build_steane();
    d.construction = "steane";
    d.q = 2;
    d.left_block = 7;
    d.transversality_expected = true;
    auto path = temp_dir() / "steane.json";
    save_descriptor(path.string(), d);
    CodeDescriptor back = load_descriptor(path.string());
    CHECK(back.construction == "steane");
    CHECK(back.q == 2);
    CHECK(back.left_block == 7);
    CHECK(back.transversality_expected);
    CHECK(back.code.n == 7);
    CHECK(back.code.k == 1);
    CHECK(back.code.full_k == 1);
    CHECK_FALSE(back.code.subsystem);
    CHECK(back.code.h_x == d.code.h_x);
    CHECK(back.code.h_z == d.code.h_z);
    CHECK(back.code.l_x == d.code.l_x);
    CHECK(back.code.l_z == d.code.l_z);
}

TEST_CASE("descriptor load rejects tampered files") {
    CodeDescriptor d;
    d.code = build_steane();
    d.construction = "steane";
    d.q = 2;
    d.left_block = 7;
    auto path = temp_dir() / "tampered.json";

    save_descriptor(path.string(), d);
    std::string text = slurp(path);
    replace_first(text, "\"full_k\": 1", "\"full_k\": 2");
    spit(path, text);
    CHECK_THROWS_AS(load_descriptor(path.string()), std::invalid_argument);

    save_descriptor(path.string(), d);
    text = slurp(path);
    replace_first(text, "qldpc-code-v1", "qldpc-code-v9");
    spit(path, text);
    CHECK_THROWS_AS(load_descriptor(path.string()), std::invalid_argument);

    save_descriptor(path.string(), d);
    text = slurp(path);
    replace_first(text, "\"k\": 1", "\"k\": 0");
    spit(path, text);
    CHECK_THROWS_AS(load_descriptor(path.string()), std::invalid_argument);

    spit(path, "not json at all");
    CHECK_THROWS_AS(load_descriptor(path.string()), std::invalid_argument);
}

TEST_CASE("build summary has stable fields") {
    CodeDescriptor d;
    d.code = build_steane();
    d.construction = "steane";
    d.q = 2;
    d.left_block = 7;
    d.transversality_expected = true;
    CHECK(format_build_summary("steane", d) ==
          "[[7,1]] name=steane construction=steane n=7 k=1 full_k=1 subsystem=false "
          "left_block=7 q=2 transversality_expected=true");
}

TEST_CASE("transversality report text is stable") {
    CssCode code = build_steane();
    PhaseVector pass = uniform_phase(2, 7, 1, ones(7));
    std::string text = format_transversality_report(
        "steane", "all", check_transversality(code.h_x, code.l_x, pass));
    CHECK(text ==
          "report: transversality\n"
          "code: steane\n"
          "q: 2\n"
          "support: all\n"
          "w: 3\n"
          "passed: true\n"
          "violations: 0\n");

    PhaseVector bad = uniform_phase(3, 7, 1, ones(7));
    std::string failed = format_transversality_report(
        "steane", "all", check_transversality(code.h_x, code.l_x, bad), 2);
    CHECK(failed.find("passed: false\n") != std::string::npos);
    CHECK(failed.find("violations: 7\n") != std::string::npos);
    CHECK(failed.find("violation: i=1 j=0 hx_rows=0 lx_rows= residue=4 modulus=8\n") !=
          std::string::npos);
    CHECK(failed.find("violations_omitted: 5\n") != std::string::npos);
}

TEST_CASE("distance certificate text is stable") {
    DistanceCertificate cert;
    cert.pauli_kind = PauliKind::Z;
    cert.found = true;
    cert.weight_found = 3;
    cert.witness = {3, 4, 5};
    cert.exhausted_below = 3;
    CHECK(format_distance_certificate("kirkman", cert) ==
          "report: distance\n"
          "code: kirkman\n"
          "pauli_kind: Z\n"
          "found: true\n"
          "weight_found: 3\n"
          "witness: 3 4 5\n"
          "exhausted_below: 3\n");

    DistanceCertificate none;
    none.pauli_kind = PauliKind::X;
    none.found = false;
    none.weight_found = 0;
    none.exhausted_below = 5;
    CHECK(format_distance_certificate("kirkman", none) ==
          "report: distance\n"
          "code: kirkman\n"
          "pauli_kind: X\n"
          "found: false\n"
          "weight_found: 0\n"
          "witness: none\n"
          "exhausted_below: 5\n");
}

TEST_CASE("sim report text is stable") {
    SimVerdict verdict;
    verdict.passed = true;
    verdict.observed = {{0, 0}, {1, 3}};
    CHECK(format_sim_report("steane", 1, 2, 16, verdict) ==
          "report: sim\n"
          "code: steane\n"
          "blocks: 1\n"
          "q: 2\n"
          "states: 16\n"
          "passed: true\n"
          "labels: 0:0 1:3\n");

    SimVerdict failed;
    failed.passed = false;
    failed.detail = "state is not diagonal";
    CHECK(format_sim_report("steane", 2, 2, 256, failed) ==
          "report: sim\n"
          "code: steane\n"
          "blocks: 2\n"
          "q: 2\n"
          "states: 256\n"
          "passed: false\n"
          "detail: state is not diagonal\n"
          "labels:\n");
}

TEST_CASE("sha256 matches published vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");

    auto path = temp_dir() / "digest.txt";
    spit(path, "abc");
    CHECK(sha256_file(path.string()) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(sha256_file((temp_dir() / "absent.txt").string()), std::invalid_argument);
}

TEST_CASE("provenance sidecar lists command, inputs, and output") {
    auto in_path = temp_dir() / "prov_input.txt";
    auto out_path = temp_dir() / "prov_output.txt";
    spit(in_path, "abc");
    spit(out_path, "");
    write_provenance(out_path.string(), {"qldpc", "check", in_path.string()},
                     {in_path.string()});
    std::string text = slurp(out_path.string() + ".prov");
    CHECK(text ==
          "command: qldpc check " + in_path.string() + "\n" +
          "input: ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad  " +
          in_path.string() + "\n" +
          "output: e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855  " +
          out_path.string() + "\n");
}

TEST_CASE("gate sequence parser accepts the full grammar") {
    std::istringstream in(
        "# two blocks of the same code\n"
        "blocks 2\n"
        "q 2\n"
        "phase 0 uniform 1 all  # transversal P\n"
        "phase 1 uniform 7 left\n"
        "phase 0 explicit 0 1 2 3 4 5 6\n"
        "lx 1 0\n"
        "cnot 0 1\n"
        "cz 1 0:0:1:0 0:6:1:6\n"
        "expect 0 0\n"
        "expect 3 2\n");
    GateSequence seq = parse_gate_sequence(in, 7, 7);
    CHECK(seq.blocks == 2);
    CHECK(seq.q == 2);
    REQUIRE(seq.ops.size() == 6);
    CHECK(seq.ops[0].kind == GateOp::Kind::DiagonalPhase);
    CHECK(seq.ops[0].block == 0);
    CHECK(seq.ops[0].phase == std::vector<std::uint32_t>(7, 1));
    CHECK(seq.ops[1].phase == std::vector<std::uint32_t>(7, 3));
    CHECK(seq.ops[2].phase == std::vector<std::uint32_t>({0, 1, 2, 3, 0, 1, 2}));
    CHECK(seq.ops[3].kind == GateOp::Kind::LogicalX);
    CHECK(seq.ops[3].block == 1);
    CHECK(seq.ops[3].logical == 0);
    CHECK(seq.ops[4].kind == GateOp::Kind::TransversalCnot);
    CHECK(seq.ops[4].block == 0);
    CHECK(seq.ops[4].block2 == 1);
    CHECK(seq.ops[5].kind == GateOp::Kind::PhysicalCz);
    CHECK(seq.ops[5].cz_exponent == 1);
    REQUIRE(seq.ops[5].cz_pairs.size() == 2);
    CHECK(seq.ops[5].cz_pairs[1].b1 == 0);
    CHECK(seq.ops[5].cz_pairs[1].i == 6);
    CHECK(seq.ops[5].cz_pairs[1].b2 == 1);
    CHECK(seq.ops[5].cz_pairs[1].j == 6);
    REQUIRE(seq.expected.size() == 2);
    CHECK(seq.expected.at(0) == 0);
    CHECK(seq.expected.at(3) == 2);
}

TEST_CASE("gate sequence parser rejects malformed programs") {
    auto parse = [](const std::string& text, std::size_t n = 7, std::size_t left = 7) {
        std::istringstream in(text);
        return parse_gate_sequence(in, n, left);
    };
    // q must exist and come first
    CHECK_THROWS_AS(parse("blocks 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("phase 0 uniform 1 all\nq 2\n"), std::invalid_argument);
    // blocks constraints
    CHECK_THROWS_AS(parse("blocks 0\nq 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("blocks 9\nq 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nlx 0 0\nblocks 2\n"), std::invalid_argument);
    // operand validation
    CHECK_THROWS_AS(parse("q 2\nphase 1 uniform 1 all\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nphase 0 uniform 1 middle\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nphase 0 uniform 1 left\n", 7, 0), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nphase 0 explicit 1 1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nphase 0 explicit 1 1 1 1 1 1 1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("blocks 2\nq 2\ncnot 0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("blocks 2\nq 2\ncnot 0 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\ncz 1 0:0:1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\ncz 1 0:9:0:0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\ncz 1\n"), std::invalid_argument);
    // junk
    CHECK_THROWS_AS(parse("q 2 junk\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nwiggle 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("q 2\nlx 0 0 0\n"), std::invalid_argument);
}

TEST_CASE("explicit phase entries reduce modulo two to the q") {
    std::istringstream in("q 2\nphase 0 explicit 4 5 6 7 8 9 10\n");
    GateSequence seq = parse_gate_sequence(in, 7, 7);
    CHECK(seq.ops.at(0).phase == std::vector<std::uint32_t>({0, 1, 2, 3, 0, 1, 2}));
}
