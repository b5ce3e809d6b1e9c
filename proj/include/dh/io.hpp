// File formats: Coxeter matrix files, simplicial complex files, quotient
// recipes. `#` starts a comment anywhere; blank lines are ignored.

#ifndef DH_IO_HPP
#define DH_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dh/coxeter.hpp"
#include "dh/simplicial.hpp"

namespace dh {

/// Parse a Coxeter matrix file:
///   coxeter <n>
///   <name_1> ... <name_n>
///   n rows of n entries, each a positive integer or `inf`
CoxeterSystem parse_coxeter(std::string_view text);

/// Parse a simplicial complex file:
///   complex <vertex-count>
///   <name_1> ... <name_k>
///   one facet per line, as space-separated vertex names
SimplicialComplex parse_complex(std::string_view text);

std::string format_coxeter(const CoxeterSystem& W);
std::string format_complex(const SimplicialComplex& K);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// FNV-1a hash of file contents, as fixed-width hex; used for input digests.
std::string content_digest(std::string_view text);

} // namespace dh

#endif
