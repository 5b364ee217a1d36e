#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wfree/verify.hpp"

namespace wfree {

enum ExitCode { ExitPass = 0, ExitFail = 1, ExitInput = 2, ExitResource = 3 };

// args excludes the program name
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// format: json, csv or text; csv and text tables use a single dim column when single_dim is set
std::string emit_report(const Report& r, const std::string& command, const std::string& format,
                        bool single_dim = false);

}  // namespace wfree
