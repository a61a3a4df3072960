#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rkhs/kernel.hpp"

namespace rkhs {

/// Loader used to resolve file= references inside spec strings; returns the
/// file contents. The default reads the filesystem.
using FileLoader = std::function<std::string(const std::string& path)>;

/// Parses the kernel-spec mini-language:
///   dhb:alpha=<float>            fock:beta=<float>        da:n=<int>
///   finite-length-example        radial-bergman:file=<moments.json>
///   radial-bergman:moments=[..]  custom:file=<gram.json>
///   product(<spec>,<spec>)       power(<spec>,<float>)
///   rescale(<spec>,<builtin-G>)  direct-sum(<spec>,<spec>)
/// Whitespace-insensitive, case-sensitive keys. Throws ParseError with the
/// offending position.
Kernel parse_kernel_spec(const std::string& text, FileLoader loader = {});

/// Parsed form of a subspace spec string:
///   vanish:points=[...];orders=[...]     hardy-inner:zeros=[...]
/// Complex literals in lists are written (re,im).
struct SubspaceSpecString {
  enum class Kind { vanish_on, hardy_inner };
  Kind kind = Kind::vanish_on;
  std::vector<Complex> points;  // vanish points or Theta zeros
  std::vector<int> orders;      // empty means all 1
};
SubspaceSpecString parse_subspace_spec(const std::string& text);

}  // namespace rkhs
