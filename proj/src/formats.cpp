#include "qldpc/formats.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qldpc/gf2.hpp"

namespace qldpc {

namespace {

using nlohmann::json;

constexpr char kDescriptorFormat[] = "qldpc-code-v1";

struct Sha256 {
    std::uint32_t h[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                          0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
    std::uint64_t total = 0;
    unsigned char buf[64];
    std::size_t fill = 0;

    static std::uint32_t rotr(std::uint32_t x, unsigned n) { return (x >> n) | (x << (32 - n)); }

    void compress(const unsigned char* p) {
        static const std::uint32_t k[64] = {
            0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u,
            0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u,
            0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u,
            0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau,
            0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
            0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu, 0x53380d13u,
            0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
            0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u,
            0x19a4c116u, 0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au,
            0x5b9cca4fu, 0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
            0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = std::uint32_t(p[4 * i]) << 24 | std::uint32_t(p[4 * i + 1]) << 16 |
                   std::uint32_t(p[4 * i + 2]) << 8 | std::uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
        std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }

    void update(const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        total += len;
        while (len > 0) {
            std::size_t take = std::min(len, std::size_t(64) - fill);
            std::memcpy(buf + fill, p, take);
            fill += take;
            p += take;
            len -= take;
            if (fill == 64) {
                compress(buf);
                fill = 0;
            }
        }
    }

    std::string hex_digest() {
        std::uint64_t bits = total * 8;
        unsigned char pad = 0x80;
        update(&pad, 1);
        unsigned char zero = 0;
        while (fill != 56) update(&zero, 1);
        unsigned char len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(len_be, 8);
        static const char* digits = "0123456789abcdef";
        std::string out(64, '0');
        for (int i = 0; i < 8; ++i)
            for (int b = 0; b < 8; ++b) out[8 * i + b] = digits[(h[i] >> (28 - 4 * b)) & 0xf];
        return out;
    }
};

json mat_to_json(const BitMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).to_string());
    return rows;
}

BitMat mat_from_json(const json& j, std::size_t cols, const std::string& field) {
    if (!j.is_array())
        throw std::invalid_argument("load_descriptor: field '" + field + "' must be an array");
    std::vector<std::string> rows;
    for (const auto& entry : j) {
        if (!entry.is_string())
            throw std::invalid_argument("load_descriptor: field '" + field +
                                        "' must hold row strings");
        rows.push_back(entry.get<std::string>());
        if (rows.back().size() != cols)
            throw std::invalid_argument("load_descriptor: field '" + field + "' row length " +
                                        std::to_string(rows.back().size()) + ", expected " +
                                        std::to_string(cols));
    }
    if (rows.empty()) return BitMat(0, cols);
    return BitMat::from_strings(rows);
}

void append_u64_list(std::string& out, const std::vector<std::uint64_t>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += i == 0 ? " " : " ";
        out += std::to_string(xs[i]);
    }
}

std::string join_u32(const std::vector<std::uint32_t>& xs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace

BitMat read_bmat(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols))
        throw std::invalid_argument("read_bmat: missing '<rows> <cols>' header");
    BitMat m(rows, cols);
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!(in >> line))
            throw std::invalid_argument("read_bmat: expected " + std::to_string(rows) +
                                        " rows, got " + std::to_string(r));
        if (line.size() != cols)
            throw std::invalid_argument("read_bmat: row " + std::to_string(r) + " has length " +
                                        std::to_string(line.size()) + ", expected " +
                                        std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            if (line[c] == '1')
                m.set(r, c, true);
            else if (line[c] != '0')
                throw std::invalid_argument("read_bmat: row " + std::to_string(r) +
                                            " contains a character other than 0/1");
        }
    }
    return m;
}

BitMat read_bmat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("read_bmat_file: cannot open '" + path + "'");
    return read_bmat(in);
}

void write_bmat(std::ostream& out, const BitMat& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) out << m.row(r).to_string() << '\n';
}

void write_bmat_file(const std::string& path, const BitMat& m) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("write_bmat_file: cannot open '" + path + "'");
    write_bmat(out, m);
    if (!out) throw std::runtime_error("write_bmat_file: write to '" + path + "' failed");
}

void save_descriptor(const std::string& path, const CodeDescriptor& d) {
    json j;
    j["format"] = kDescriptorFormat;
    j["construction"] = d.construction;
    j["n"] = d.code.n;
    j["k"] = d.code.k;
    j["full_k"] = d.code.full_k;
    j["subsystem"] = d.code.subsystem;
    j["q"] = d.q;
    j["left_block"] = d.left_block;
    j["transversality_expected"] = d.transversality_expected;
    j["h_x"] = mat_to_json(d.code.h_x);
    j["h_z"] = mat_to_json(d.code.h_z);
    j["l_x"] = mat_to_json(d.code.l_x);
    j["l_z"] = mat_to_json(d.code.l_z);
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_descriptor: cannot open '" + path + "'");
    out << j.dump(1) << '\n';
    if (!out) throw std::runtime_error("save_descriptor: write to '" + path + "' failed");
}

CodeDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_descriptor: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("load_descriptor: '" + path + "' is not valid JSON: " +
                                    e.what());
    }
    if (!j.is_object() || j.value("format", "") != kDescriptorFormat)
        throw std::invalid_argument("load_descriptor: '" + path + "' lacks the '" +
                                    std::string(kDescriptorFormat) + "' format tag");
    CodeDescriptor d;
    try {
        d.construction = j.at("construction").get<std::string>();
        d.code.n = j.at("n").get<std::size_t>();
        d.code.k = j.at("k").get<std::size_t>();
        d.code.full_k = j.at("full_k").get<std::size_t>();
        d.code.subsystem = j.at("subsystem").get<bool>();
        d.q = j.at("q").get<unsigned>();
        d.left_block = j.at("left_block").get<std::size_t>();
        d.transversality_expected = j.at("transversality_expected").get<bool>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("load_descriptor: '" + path + "' missing field: " + e.what());
    }
    d.code.h_x = mat_from_json(j.at("h_x"), d.code.n, "h_x");
    d.code.h_z = mat_from_json(j.at("h_z"), d.code.n, "h_z");
    d.code.l_x = mat_from_json(j.at("l_x"), d.code.n, "l_x");
    d.code.l_z = mat_from_json(j.at("l_z"), d.code.n, "l_z");
    if (d.code.k != d.code.l_x.rows())
        throw std::invalid_argument("load_descriptor: k=" + std::to_string(d.code.k) +
                                    " does not match the " + std::to_string(d.code.l_x.rows()) +
                                    " l_x rows");
    std::size_t full = d.code.n - rank(d.code.h_x) - rank(d.code.h_z);
    if (d.code.full_k != full)
        throw std::invalid_argument("load_descriptor: stored full_k=" +
                                    std::to_string(d.code.full_k) + ", checks give " +
                                    std::to_string(full));
    if (d.code.subsystem != (d.code.k < d.code.full_k))
        throw std::invalid_argument("load_descriptor: subsystem marker inconsistent with k");
    if (d.left_block > d.code.n)
        throw std::invalid_argument("load_descriptor: left_block exceeds n");
    validate(d.code);
    return d;
}

std::string format_build_summary(const std::string& name, const CodeDescriptor& d) {
    std::string out = "[[" + std::to_string(d.code.n) + "," + std::to_string(d.code.full_k) + "]]";
    out += " name=" + name;
    out += " construction=" + d.construction;
    out += " n=" + std::to_string(d.code.n);
    out += " k=" + std::to_string(d.code.k);
    out += " full_k=" + std::to_string(d.code.full_k);
    out += d.code.subsystem ? " subsystem=true" : " subsystem=false";
    out += " left_block=" + std::to_string(d.left_block);
    out += " q=" + std::to_string(d.q);
    out += d.transversality_expected ? " transversality_expected=true"
                                     : " transversality_expected=false";
    return out;
}

std::string format_transversality_report(const std::string& code_name,
                                         const std::string& support_desc,
                                         const TransversalityReport& rep,
                                         std::size_t max_violations) {
    std::string out;
    out += "report: transversality\n";
    out += "code: " + code_name + "\n";
    out += "q: " + std::to_string(rep.q) + "\n";
    out += "support: " + support_desc + "\n";
    out += "w:";
    append_u64_list(out, rep.w);
    out += "\n";
    out += rep.passed ? "passed: true\n" : "passed: false\n";
    out += "violations: " + std::to_string(rep.violations.size()) + "\n";
    std::size_t shown = std::min(max_violations, rep.violations.size());
    for (std::size_t v = 0; v < shown; ++v) {
        const Violation& viol = rep.violations[v];
        out += "violation: i=" + std::to_string(viol.i) + " j=" + std::to_string(viol.j);
        out += " hx_rows=" + join_u32(viol.hx_rows, ',');
        out += " lx_rows=" + join_u32(viol.lx_rows, ',');
        out += " residue=" + std::to_string(viol.residue);
        out += " modulus=" + std::to_string(viol.modulus) + "\n";
    }
    if (shown < rep.violations.size())
        out += "violations_omitted: " + std::to_string(rep.violations.size() - shown) + "\n";
    return out;
}

std::string format_distance_certificate(const std::string& code_name,
                                        const DistanceCertificate& cert) {
    std::string out;
    out += "report: distance\n";
    out += "code: " + code_name + "\n";
    out += std::string("pauli_kind: ") + (cert.pauli_kind == PauliKind::X ? "X" : "Z") + "\n";
    out += cert.found ? "found: true\n" : "found: false\n";
    out += "weight_found: " + std::to_string(cert.weight_found) + "\n";
    out += "witness: " + (cert.found ? join_u32(cert.witness, ' ') : std::string("none")) + "\n";
    out += "exhausted_below: " + std::to_string(cert.exhausted_below) + "\n";
    return out;
}

std::string format_sim_report(const std::string& code_name, unsigned blocks, unsigned q,
                              std::size_t states, const SimVerdict& verdict) {
    std::string out;
    out += "report: sim\n";
    out += "code: " + code_name + "\n";
    out += "blocks: " + std::to_string(blocks) + "\n";
    out += "q: " + std::to_string(q) + "\n";
    out += "states: " + std::to_string(states) + "\n";
    out += verdict.passed ? "passed: true\n" : "passed: false\n";
    if (!verdict.detail.empty()) out += "detail: " + verdict.detail + "\n";
    out += "labels:";
    for (const auto& [label, phase] : verdict.observed)
        out += " " + std::to_string(label) + ":" + std::to_string(phase);
    out += "\n";
    return out;
}

std::string sha256_hex(const std::string& data) {
    Sha256 s;
    s.update(data.data(), data.size());
    return s.hex_digest();
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("sha256_file: cannot open '" + path + "'");
    Sha256 s;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        s.update(buf, static_cast<std::size_t>(in.gcount()));
    return s.hex_digest();
}

void write_provenance(const std::string& out_path, const std::vector<std::string>& argv,
                      const std::vector<std::string>& inputs) {
    std::string text = "command:";
    for (const std::string& a : argv) text += " " + a;
    text += "\n";
    for (const std::string& p : inputs) text += "input: " + sha256_file(p) + "  " + p + "\n";
    text += "output: " + sha256_file(out_path) + "  " + out_path + "\n";
    std::ofstream out(out_path + ".prov");
    if (!out) throw std::invalid_argument("write_provenance: cannot open '" + out_path + ".prov'");
    out << text;
    if (!out) throw std::runtime_error("write_provenance: write failed for '" + out_path + ".prov'");
}

GateSequence parse_gate_sequence(std::istream& in, std::size_t n, std::size_t left_block) {
    GateSequence seq;
    bool blocks_set = false;
    bool q_set = false;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&lineno](const std::string& msg) -> void {
        throw std::invalid_argument("parse_gate_sequence: line " + std::to_string(lineno) + ": " +
                                    msg);
    };
    auto need_q = [&]() {
        if (!q_set) fail("the q directive must come before any gate");
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (std::size_t pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        const std::string directive = word;
        if (word == "blocks") {
            unsigned b = 0;
            if (!(ls >> b) || b == 0 || b > 8) fail("blocks takes a count between 1 and 8");
            if (!seq.ops.empty()) fail("blocks must come before any gate");
            seq.blocks = b;
            blocks_set = true;
        } else if (word == "q") {
            unsigned q = 0;
            if (!(ls >> q) || q == 0 || q > 24) fail("q takes a level between 1 and 24");
            seq.q = q;
            q_set = true;
        } else if (word == "phase") {
            need_q();
            unsigned b = 0;
            std::string mode;
            if (!(ls >> b >> mode)) fail("phase takes a block and a mode");
            if (b >= seq.blocks) fail("phase block out of range");
            std::uint32_t mask = (seq.q >= 32) ? ~std::uint32_t(0)
                                               : ((std::uint32_t(1) << seq.q) - 1);
            std::vector<std::uint32_t> p(n, 0);
            if (mode == "uniform") {
                std::uint32_t c = 0;
                std::string where;
                if (!(ls >> c >> where)) fail("phase uniform takes a value and all|left");
                std::size_t lim = 0;
                if (where == "all") {
                    lim = n;
                } else if (where == "left") {
                    if (left_block == 0) fail("code has no left block");
                    lim = left_block;
                } else {
                    fail("phase region must be all or left");
                }
                for (std::size_t t = 0; t < lim; ++t) p[t] = c & mask;
            } else if (mode == "explicit") {
                std::uint32_t v = 0;
                std::size_t t = 0;
                while (ls >> v) {
                    if (t >= n) fail("phase explicit has more than n entries");
                    p[t++] = v & mask;
                }
                if (t != n)
                    fail("phase explicit needs " + std::to_string(n) + " entries, got " +
                         std::to_string(t));
            } else {
                fail("phase mode must be uniform or explicit");
            }
            seq.ops.push_back(GateOp::diagonal_phase(b, std::move(p)));
        } else if (word == "lx") {
            need_q();
            unsigned b = 0;
            std::size_t idx = 0;
            if (!(ls >> b >> idx)) fail("lx takes a block and a logical index");
            if (b >= seq.blocks) fail("lx block out of range");
            seq.ops.push_back(GateOp::logical_x(b, idx));
        } else if (word == "cnot") {
            need_q();
            unsigned c = 0, t = 0;
            if (!(ls >> c >> t)) fail("cnot takes a control block and a target block");
            if (c >= seq.blocks || t >= seq.blocks || c == t) fail("cnot blocks out of range");
            seq.ops.push_back(GateOp::transversal_cnot(c, t));
        } else if (word == "cz") {
            need_q();
            std::uint32_t exp = 0;
            if (!(ls >> exp)) fail("cz takes an exponent");
            std::vector<GateOp::CzPair> pairs;
            std::string tok;
            while (ls >> tok) {
                std::vector<std::uint64_t> fields;
                std::size_t start = 0;
                bool ok = true;
                while (start <= tok.size()) {
                    std::size_t colon = tok.find(':', start);
                    std::string piece = tok.substr(
                        start, colon == std::string::npos ? std::string::npos : colon - start);
                    if (piece.empty() ||
                        piece.find_first_not_of("0123456789") != std::string::npos) {
                        ok = false;
                        break;
                    }
                    fields.push_back(std::stoull(piece));
                    if (colon == std::string::npos) break;
                    start = colon + 1;
                }
                if (!ok || fields.size() != 4) fail("cz pair '" + tok + "' is not B:I:B:J");
                GateOp::CzPair pr;
                pr.b1 = static_cast<unsigned>(fields[0]);
                pr.i = static_cast<std::uint32_t>(fields[1]);
                pr.b2 = static_cast<unsigned>(fields[2]);
                pr.j = static_cast<std::uint32_t>(fields[3]);
                if (pr.b1 >= seq.blocks || pr.b2 >= seq.blocks) fail("cz pair block out of range");
                if (pr.i >= n || pr.j >= n) fail("cz pair qubit out of range");
                pairs.push_back(pr);
            }
            if (pairs.empty()) fail("cz needs at least one pair");
            seq.ops.push_back(GateOp::physical_cz(std::move(pairs), exp));
        } else if (word == "expect") {
            need_q();
            std::uint64_t label = 0;
            std::uint32_t phase = 0;
            if (!(ls >> label >> phase)) fail("expect takes a label and a phase");
            seq.expected[label] = phase;
        } else {
            fail("unknown directive '" + word + "'");
        }
        if (ls >> word) fail("trailing tokens after " + directive);
    }
    if (!q_set)
        throw std::invalid_argument("parse_gate_sequence: the q directive is required");
    (void)blocks_set;
    return seq;
}

}  // namespace qldpc
