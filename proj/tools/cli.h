// The dmmads command line: solve, bench and fronts subcommands.

#ifndef DMULTI_TOOLS_CLI_H_
#define DMULTI_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dmulti/problems.h"
#include "dmulti/solver.h"

namespace dmulti::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlackboxIo = 3;
inline constexpr int kFormatVersion = 1;

// Runs the command line and returns the process exit status. `args`
// excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

// Artifact writers, shared with the tests.
void WriteHistory(std::ostream& out, const RunResult& result,
                  const ProblemSpec& spec);
void WriteFrontWithX(std::ostream& out, const std::vector<Evaluation>& front,
                     const ProblemSpec& spec, bool with_h);

// Starting points from a text file: one point per line, values separated
// by commas or whitespace; blank lines and '#' comments are skipped.
std::vector<Vector> ReadStartsFile(const std::string& path);

}  // namespace dmulti::cli

#endif  // DMULTI_TOOLS_CLI_H_
