#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gralg {

/// Command dispatch for the toolkit. Subcommands: check-indices, build,
/// laws, analyze, scaffold, represent, classify, diagram. Returns 0 on
/// pass/success, 1 on reported violations, 2 on parse or usage errors.
/// Reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gralg
