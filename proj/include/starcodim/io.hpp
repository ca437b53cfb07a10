#pragma once

#include <iosfwd>
#include <string>

#include "starcodim/algebra.hpp"

namespace starcodim {

// Line-based algebra definition format:
//   name <identifier>
//   dim <d>
//   basis <label_1> ... <label_d>
//   involution sign <s_1> ... <s_d>          (each s_i in {1,-1})
//   involution matrix                        (followed by d rows of d rationals)
//   prod <i> <j> <k> <rational>              (e_i e_j += c e_k, 1-based)
// Unlisted products are zero; duplicate (i,j,k) triples are a parse error.
// Blank lines and lines starting with '#' are ignored.
AlgebraPtr load_algebra(std::istream& in, const std::string& source_name = "<stream>");
AlgebraPtr load_algebra_file(const std::string& path);

void save_algebra(const AlgebraWithInvolution& a, std::ostream& out);
std::string algebra_to_string(const AlgebraWithInvolution& a);

}  // namespace starcodim
