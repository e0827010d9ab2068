#pragma once

#include <complex>
#include <string>
#include <vector>

namespace corrdyn {

/// Parses "a+bi" (no spaces; a bare real is also accepted). Throws
/// ParameterError on malformed input.
std::complex<double> parse_complex(const std::string& text);

std::string format_complex(std::complex<double> z);

/// Reads "key=value" lines; '#' starts a comment. Later command-line flags
/// override file values.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Entry point behind the corrdyn binary. Exit codes: 0 success,
/// 1 invariant failure, 2 usage error, 3 numeric failure.
int run(int argc, const char* const* argv);

int run(const std::vector<std::string>& args);

}  // namespace corrdyn
