#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recipgrowth {

/// Entry point of the recipgrowth command line tool, callable in-process
/// for testing. Subcommands: fit, segment, diverge, classify, case, plot.
/// Analysis results are printed as JSON on `out`; diagnostics go to `err`.
/// Returns 0 on success, 1 when a case study's expectations fail, 2 on
/// usage errors or malformed data.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv form used by the installed binary; forwards to the stream overload
/// with std::cout / std::cerr.
int cli_main(int argc, const char* const* argv);

} // namespace recipgrowth
