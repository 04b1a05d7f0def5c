#pragma once

// Matrix family text format:
//
//   n N p
//   N blocks of n lines, each with n complex entries `re+imj`
//
// Blank lines and `#` comments are skipped. p may be `inf`. Entries may also
// be written as a plain real (`3`) or a pure imaginary (`2j`).

#include <filesystem>
#include <string>
#include <string_view>

#include "sphlab/ncmax.hpp"

namespace sphlab::lab {

/// Throws FormatError(what, line) on a malformed token.
Complex parse_complex(std::string_view token, std::size_t line = 0);
std::string format_complex(Complex value);

/// Throws FormatError with the offending line number.
MaxNormProblem parse_matrix_family(std::string_view text);
MaxNormProblem load_matrix_family(const std::filesystem::path& path);
std::string format_matrix_family(const MaxNormProblem& problem);

}  // namespace sphlab::lab
