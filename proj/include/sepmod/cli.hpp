// Command-line front door. The dispatcher is a library function so the
// acceptance suite can drive the exact command surface in-process.
//
// Exit protocol: 0 verdict-true / built / verified; 1 verdict-false or
// refusal or verification failure; 2 usage or precondition error;
// 3 incomplete verification.

#ifndef SEPMOD_CLI_HPP
#define SEPMOD_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sepmod::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sepmod::cli

#endif
