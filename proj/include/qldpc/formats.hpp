#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qldpc/bits.hpp"
#include "qldpc/css.hpp"
#include "qldpc/simverify.hpp"
#include "qldpc/transversal.hpp"

namespace qldpc {

// Plain-text matrix format: a "<rows> <cols>" header line followed by one
// row of '0'/'1' characters per line. Anything else is rejected with
// std::invalid_argument.
BitMat read_bmat(std::istream& in);
BitMat read_bmat_file(const std::string& path);
void write_bmat(std::ostream& out, const BitMat& m);
void write_bmat_file(const std::string& path, const BitMat& m);

// A built code plus the metadata the tools carry around with it. Saved as
// JSON with the matrices spelled out as row strings.
struct CodeDescriptor {
    CssCode code;
    std::string construction;        // free-form provenance label
    unsigned q = 0;                  // declared gate level, 0 when unset
    std::size_t left_block = 0;      // size of the left qubit region, 0 when n/a
    bool transversality_expected = true;
};

void save_descriptor(const std::string& path, const CodeDescriptor& d);
CodeDescriptor load_descriptor(const std::string& path);

// One-line parameter summary: [[n,full_k]] plus the metadata fields.
std::string format_build_summary(const std::string& name, const CodeDescriptor& d);

// Reports are deterministic plain text with stable field names and no
// timestamps; byte-identical reruns are part of the contract.
std::string format_transversality_report(const std::string& code_name,
                                         const std::string& support_desc,
                                         const TransversalityReport& rep,
                                         std::size_t max_violations = 32);
std::string format_distance_certificate(const std::string& code_name,
                                        const DistanceCertificate& cert);
std::string format_sim_report(const std::string& code_name, unsigned blocks, unsigned q,
                              std::size_t states, const SimVerdict& verdict);

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

// Writes "<out_path>.prov" next to an emitted artifact, recording the exact
// command line and the digest of every input consumed and of the output.
void write_provenance(const std::string& out_path, const std::vector<std::string>& argv,
                      const std::vector<std::string>& inputs);

// A gate program for the phase simulator, parsed from plain text. All
// blocks are instances of the same code (length n, given left block).
//
//   blocks N
//   q N
//   phase B uniform C all|left
//   phase B explicit p0 p1 ... p{n-1}
//   lx B INDEX
//   cnot CONTROL TARGET
//   cz EXP B:I:B:J [B:I:B:J ...]
//   expect LABEL PHASE
//
// '#' starts a comment. Unknown directives or malformed arguments throw
// std::invalid_argument with the line number.
struct GateSequence {
    unsigned blocks = 1;
    unsigned q = 0;
    std::vector<GateOp> ops;
    std::map<std::uint64_t, std::uint32_t> expected;
};

GateSequence parse_gate_sequence(std::istream& in, std::size_t n, std::size_t left_block);

}  // namespace qldpc
