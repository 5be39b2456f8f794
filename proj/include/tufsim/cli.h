#ifndef TUFSIM_CLI_H_
#define TUFSIM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace tufsim {

/// Runs the command line `args` (program name excluded). The report goes to
/// `out` unless `--output` names a file; diagnostics, warnings and verbose
/// event matches go to `err`. Returns 0 iff the report was fully written.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tufsim

#endif  // TUFSIM_CLI_H_
