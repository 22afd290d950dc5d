#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace braidgate::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line.  `args` excludes the program name.  Reports go to
/// `out`, diagnostics and wall time to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Complex scalar from "[re,im]", "a+bi", or any constant expression.
std::complex<double> parse_complex(const std::string& text);

/// Splits on `sep` outside brackets and parentheses.
std::vector<std::string> split_top(const std::string& text, char sep);

}  // namespace braidgate::cli
