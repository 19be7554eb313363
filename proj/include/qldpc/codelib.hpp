#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qldpc/bits.hpp"
#include "qldpc/construct.hpp"
#include "qldpc/css.hpp"

namespace qldpc {

// Read-only registry of the named matrices used by the example codes:
// check matrices, incidence matrices, local codes and their symmetry
// permutations. Entries are validated once on first access (weights,
// symmetry, rank facts) and a failed self-check throws std::logic_error.
const std::vector<std::string>& codelib_names();
const BitMat& codelib_get(const std::string& name);
bool codelib_has(const std::string& name);

// Canonical example codes, assembled from registry entries.
CssCode build_steane();
CssCode build_cycle10();
CssCode build_kirkman();
CssCode build_k16();

// Direct-construction instances: local code, retained k, d_x, gate level q.
CssCode build_direct(const std::string& local_code, unsigned k, unsigned d_x, unsigned q);

// The lifted second symmetry of the k16 code (vertex relabelling), giving
// row/column permutations (s_l, s_r) of h_x that carry each orbit logical
// onto the next one.
std::pair<BitMat, BitMat> k16_intra_symmetry(const CssCode& k16);

}  // namespace qldpc
