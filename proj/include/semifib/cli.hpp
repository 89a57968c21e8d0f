#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semifib {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;      // internal error or failed verification
inline constexpr int bad_input = 2;    // parse errors, unknown names, unsupported modes
inline constexpr int degenerate = 3;   // every delta in the refinement degenerated
}  // namespace exit_code

// Entry point behind the semifib binary; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace semifib
