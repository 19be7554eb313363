#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qldpc/codelib.hpp"
#include "qldpc/construct.hpp"
#include "qldpc/css.hpp"
#include "qldpc/formats.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/simverify.hpp"
#include "qldpc/transversal.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qldpc;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Raised for problems with the recipe text itself, as opposed to a
// construction that fails on well-formed inputs; build maps the former to
// the usage exit code and the latter to the failure exit code.
struct RecipeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const json& field(const json& j, const std::string& name) {
    auto it = j.find(name);
    if (!j.is_object() || it == j.end())
        throw RecipeError("recipe: missing field '" + name + "'");
    return *it;
}

template <class T>
T field_as(const json& j, const std::string& name) {
    try {
        return field(j, name).get<T>();
    } catch (const json::exception&) {
        throw RecipeError("recipe: field '" + name + "' has the wrong type");
    }
}

BitVec bitvec_field(const json& j, const std::string& name) {
    std::string s = field_as<std::string>(j, name);
    if (s.find_first_not_of("01") != std::string::npos)
        throw RecipeError("recipe: field '" + name + "' must be a 0/1 string");
    return BitVec::from_string(s);
}

// Matrix sources: "codelib:<entry>", a bmat file path relative to the
// recipe, or an inline array of row strings.
BitMat resolve_matrix(const json& src, const fs::path& dir, std::vector<std::string>& files) {
    if (src.is_string()) {
        std::string s = src.get<std::string>();
        if (s.rfind("codelib:", 0) == 0) {
            std::string entry = s.substr(8);
            if (!codelib_has(entry))
                throw RecipeError("recipe: unknown codelib entry '" + entry + "'");
            return codelib_get(entry);
        }
        fs::path p = dir / s;
        try {
            BitMat m = read_bmat_file(p.string());
            files.push_back(p.string());
            return m;
        } catch (const std::exception& e) {
            throw RecipeError(std::string("recipe: ") + e.what());
        }
    }
    if (src.is_array()) {
        std::vector<std::string> rows;
        for (const auto& r : src) {
            if (!r.is_string())
                throw RecipeError("recipe: inline matrix rows must be strings");
            rows.push_back(r.get<std::string>());
        }
        if (rows.empty()) throw RecipeError("recipe: inline matrix has no rows");
        try {
            return BitMat::from_strings(rows);
        } catch (const std::exception& e) {
            throw RecipeError(std::string("recipe: ") + e.what());
        }
    }
    throw RecipeError("recipe: matrix source must be codelib:<entry>, a path, or row strings");
}

BitMat cycle_matrix(unsigned order) {
    std::vector<std::uint32_t> cyc(order);
    for (unsigned i = 0; i < order; ++i) cyc[i] = (i + 1) % order;
    return BitMat::permutation(cyc);
}

CodeDescriptor build_from_recipe(const json& j, const fs::path& dir,
                                 std::vector<std::string>& files) {
    std::string kind = field_as<std::string>(j, "construction");
    CodeDescriptor d;
    if (j.contains("q")) d.q = field_as<unsigned>(j, "q");

    if (kind == "steane") {
        d.code = build_steane();
        d.construction = "steane";
        d.left_block = d.code.n;
        return d;
    }

    if (kind == "balanced_tanner") {
        BitMat i0 = resolve_matrix(field(j, "incidence"), dir, files);
        BitMat c0 = resolve_matrix(field(j, "local_code"), dir, files);
        const json& gj = field(j, "generators");
        if (!gj.is_array() || gj.empty())
            throw RecipeError("recipe: generators must be a non-empty array");
        std::vector<IncidenceSymmetry> gens;
        for (const auto& g : gj)
            gens.push_back({resolve_matrix(field(g, "rho"), dir, files),
                            resolve_matrix(field(g, "gamma"), dir, files)});
        unsigned order = field_as<unsigned>(j, "order");
        BitVec z_local = bitvec_field(j, "z_local");

        TannerSpec spec = symmetric_assignment(i0, c0, gens);
        BitMat a = tanner(spec);
        SymmetryPair sym{kron(gens[0].rho, BitMat::identity(c0.rows())), gens[0].gamma, order};
        d.code = balanced_product(a, sym);
        structured_logicals_balanced(d.code, sym, static_cast<unsigned>(c0.rows()), z_local);
        d.construction = "balanced_tanner";
        d.left_block = a.rows();
        return d;
    }

    if (kind == "direct") {
        BitMat c0 = resolve_matrix(field(j, "local_code"), dir, files);
        unsigned k = field_as<unsigned>(j, "k");
        unsigned d_x = field_as<unsigned>(j, "d_x");
        unsigned q = field_as<unsigned>(j, "q");
        if (k == 0 || d_x == 0) throw RecipeError("recipe: k and d_x must be positive");
        d.q = q;
        d.code = direct_construction(c0, k, d_x, cycle_matrix(d_x), q);
        d.construction = "direct";
        d.left_block = std::size_t(k) * d_x * c0.cols();
        return d;
    }

    if (kind == "hypergraph_product") {
        BitMat a = resolve_matrix(field(j, "a"), dir, files);
        BitMat b = resolve_matrix(field(j, "b"), dir, files);
        d.code = hypergraph_product(a, b);
        if (j.contains("logicals")) {
            const json& lg = j.at("logicals");
            structured_logicals_hyper(d.code, field_as<std::size_t>(lg, "copies"),
                                      bitvec_field(lg, "v_local"), bitvec_field(lg, "u"),
                                      bitvec_field(lg, "e_b"));
        } else {
            compute_logicals(d.code);
        }
        d.construction = "hypergraph_product";
        d.left_block = a.cols() * b.cols();
        return d;
    }

    if (kind == "distance_balance") {
        CodeDescriptor base = build_from_recipe(field(j, "base"), dir, files);
        BitMat h_c = resolve_matrix(field(j, "h_c"), dir, files);
        std::string dir_s = field_as<std::string>(j, "direction");
        if (dir_s != "x" && dir_s != "z")
            throw RecipeError("recipe: direction must be x or z");
        BoostDirection bd = dir_s == "x" ? BoostDirection::X : BoostDirection::Z;
        d.code = distance_balance(base.code, h_c, bd);
        d.construction = "distance_balance_" + dir_s + "(" + base.construction + ")";
        if (d.code.n == base.code.n) {
            d.left_block = base.left_block;
        } else {
            std::size_t base_left = base.left_block == 0 ? base.code.n : base.left_block;
            d.left_block = base_left * h_c.cols();
        }
        d.transversality_expected =
            base.transversality_expected && bd == BoostDirection::X;
        if (d.q == 0) d.q = base.q;
        return d;
    }

    throw RecipeError("recipe: unknown construction '" + kind + "'");
}

std::string path_stem(const std::string& path) { return fs::path(path).stem().string(); }

unsigned resolve_threads(unsigned flag) {
    if (flag != 0) return flag;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

BitVec parse_support(const std::string& spec, const CodeDescriptor& d, std::string& desc,
                     std::vector<std::string>& files) {
    const std::size_t n = d.code.n;
    BitVec s(n);
    if (spec == "all") {
        for (std::size_t t = 0; t < n; ++t) s.set(t, true);
        desc = "all (" + std::to_string(n) + " qubits)";
    } else if (spec == "left") {
        if (d.left_block == 0 || d.left_block > n)
            throw std::invalid_argument("check: descriptor has no usable left block");
        for (std::size_t t = 0; t < d.left_block; ++t) s.set(t, true);
        desc = "left (" + std::to_string(d.left_block) + " of " + std::to_string(n) + ")";
    } else if (spec.rfind("mask:", 0) == 0) {
        std::string path = spec.substr(5);
        BitMat m = read_bmat_file(path);
        if (m.rows() != 1 || m.cols() != n)
            throw std::invalid_argument("check: support mask must be a 1 x " +
                                        std::to_string(n) + " bmat");
        s = m.row(0);
        files.push_back(path);
        desc = "mask (" + std::to_string(s.weight()) + " of " + std::to_string(n) + ")";
    } else {
        throw std::invalid_argument("check: --support must be all, left, or mask:<path>");
    }
    return s;
}

void emit_report(const std::string& text, const std::string& out_path,
                 const std::vector<std::string>& argv_echo,
                 const std::vector<std::string>& inputs) {
    std::cout << text;
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output '" + out_path + "'");
    out << text;
    out.close();
    write_provenance(out_path, argv_echo, inputs);
}

int cmd_build(const std::string& recipe_path, const std::string& out_path,
              const std::vector<std::string>& argv_echo) {
    json j;
    {
        std::ifstream in(recipe_path);
        if (!in) {
            std::cerr << "error: cannot open recipe '" << recipe_path << "'\n";
            return kUsage;
        }
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            std::cerr << "error: recipe is not valid JSON: " << e.what() << "\n";
            return kUsage;
        }
    }
    std::string name = j.is_object() ? j.value("name", path_stem(recipe_path))
                                     : path_stem(recipe_path);
    std::vector<std::string> files{recipe_path};
    CodeDescriptor d;
    try {
        d = build_from_recipe(j, fs::path(recipe_path).parent_path(), files);
    } catch (const RecipeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: construction failed: " << e.what() << "\n";
        return kFail;
    }
    save_descriptor(out_path, d);
    write_provenance(out_path, argv_echo, files);
    std::cout << format_build_summary(name, d) << "\n";
    return kPass;
}

int cmd_check(const std::string& desc_path, unsigned q_flag, const std::string& support_spec,
              std::uint32_t pval, unsigned threads, const std::string& out_path,
              const std::vector<std::string>& argv_echo) {
    CodeDescriptor d = load_descriptor(desc_path);
    unsigned q = q_flag != 0 ? q_flag : d.q;
    if (q == 0)
        throw std::invalid_argument("check: no --q given and the descriptor declares none");
    std::vector<std::string> files{desc_path};
    std::string support_desc;
    BitVec support = parse_support(support_spec, d, support_desc, files);
    PhaseVector p = uniform_phase(q, d.code.n, pval, support);
    TransversalityReport rep =
        check_transversality(d.code.h_x, d.code.l_x, p, resolve_threads(threads));
    emit_report(format_transversality_report(path_stem(desc_path), support_desc, rep), out_path,
                argv_echo, files);
    return rep.passed ? kPass : kFail;
}

int cmd_distance(const std::string& desc_path, const std::string& kind_s, std::uint32_t wmax_flag,
                 unsigned threads, const std::string& out_path,
                 const std::vector<std::string>& argv_echo) {
    CodeDescriptor d = load_descriptor(desc_path);
    if (kind_s != "x" && kind_s != "z")
        throw std::invalid_argument("distance: --kind must be x or z");
    PauliKind kind = kind_s == "x" ? PauliKind::X : PauliKind::Z;
    std::uint32_t wmax = wmax_flag != 0 ? wmax_flag : (d.code.n <= 200 ? 5 : 3);
    DistanceCertificate cert =
        distance_search(d.code, kind, wmax, resolve_threads(threads));
    emit_report(format_distance_certificate(path_stem(desc_path), cert), out_path, argv_echo,
                {desc_path});
    return kPass;
}

int cmd_verify_sim(const std::string& desc_path, const std::string& seq_path,
                   const std::string& out_path, const std::vector<std::string>& argv_echo) {
    CodeDescriptor d = load_descriptor(desc_path);
    std::ifstream in(seq_path);
    if (!in) throw std::invalid_argument("verify-sim: cannot open sequence '" + seq_path + "'");
    GateSequence seq = parse_gate_sequence(in, d.code.n, d.left_block);
    for (const GateOp& op : seq.ops)
        if (op.kind == GateOp::Kind::LogicalX && op.logical >= d.code.k)
            throw std::invalid_argument("verify-sim: lx index out of range");
    std::vector<const CssCode*> blocks(seq.blocks, &d.code);
    std::size_t bits = seq.blocks * (rank(d.code.h_x) + d.code.k);
    SimVerdict verdict = verify_logical_diagonal(blocks, seq.q, seq.ops, seq.expected);
    std::size_t states = bits >= 64 ? 0 : (std::size_t(1) << bits);
    emit_report(format_sim_report(path_stem(desc_path), seq.blocks, seq.q, states, verdict),
                out_path, argv_echo, {desc_path, seq_path});
    return verdict.passed ? kPass : kFail;
}

int cmd_list() {
    for (const std::string& name : codelib_names()) {
        const BitMat& m = codelib_get(name);
        std::cout << name << " " << m.rows() << "x" << m.cols() << "\n";
    }
    return kPass;
}

int cmd_export(const std::string& name, const std::string& out_path,
               const std::vector<std::string>& argv_echo) {
    if (!codelib_has(name))
        throw std::invalid_argument("export: unknown codelib entry '" + name + "'");
    write_bmat_file(out_path, codelib_get(name));
    write_provenance(out_path, argv_echo, {});
    const BitMat& m = codelib_get(name);
    std::cout << "wrote " << out_path << " (" << m.rows() << "x" << m.cols() << ")\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toolkit for asymmetric CSS codes with transversal phase gates"};
    app.require_subcommand(1);

    std::string recipe_path, desc_path, seq_path, out_path, name;
    std::string support_spec = "all";
    std::string kind_s;
    unsigned q_flag = 0;
    unsigned threads = 0;
    std::uint32_t pval = 1;
    std::uint32_t wmax = 0;

    CLI::App* build = app.add_subcommand("build", "build a code from a recipe file");
    build->add_option("recipe", recipe_path, "recipe JSON path")->required();
    build->add_option("--out", out_path, "descriptor output path")->required();

    CLI::App* check = app.add_subcommand("check", "check transversality of a diagonal gate");
    check->add_option("descriptor", desc_path, "code descriptor path")->required();
    check->add_option("--q", q_flag, "gate level (default: descriptor value)");
    check->add_option("--support", support_spec, "phase support: all, left, or mask:<bmat>");
    check->add_option("--pval", pval, "uniform phase exponent on the support (default 1)");
    check->add_option("--threads", threads, "worker cap, 0 = hardware");
    check->add_option("--out", out_path, "report output path");

    CLI::App* distance = app.add_subcommand("distance", "certify minimum logical weight");
    distance->add_option("descriptor", desc_path, "code descriptor path")->required();
    distance->add_option("--kind", kind_s, "logical type: x or z")->required();
    distance->add_option("--wmax", wmax, "search cutoff (default: 5 for n<=200 else 3)");
    distance->add_option("--threads", threads, "worker cap, 0 = hardware");
    distance->add_option("--out", out_path, "certificate output path");

    CLI::App* verify = app.add_subcommand("verify-sim", "replay a gate sequence on all basis states");
    verify->add_option("descriptor", desc_path, "code descriptor path")->required();
    verify->add_option("sequence", seq_path, "gate sequence path")->required();
    verify->add_option("--out", out_path, "report output path");

    app.add_subcommand("list", "list the built-in matrix registry");

    CLI::App* exp = app.add_subcommand("export", "write a registry matrix as bmat");
    exp->add_option("name", name, "registry entry")->required();
    exp->add_option("--out", out_path, "bmat output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    std::vector<std::string> argv_echo;
    argv_echo.push_back(argc > 0 ? fs::path(argv[0]).filename().string() : "qldpc");
    for (int i = 1; i < argc; ++i) argv_echo.push_back(argv[i]);

    try {
        if (build->parsed()) return cmd_build(recipe_path, out_path, argv_echo);
        if (check->parsed())
            return cmd_check(desc_path, q_flag, support_spec, pval, threads, out_path, argv_echo);
        if (distance->parsed())
            return cmd_distance(desc_path, kind_s, wmax, threads, out_path, argv_echo);
        if (verify->parsed()) return cmd_verify_sim(desc_path, seq_path, out_path, argv_echo);
        if (exp->parsed()) return cmd_export(name, out_path, argv_echo);
        return cmd_list();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
