#pragma once

// Text format for network codes:
//
//   sumnet-code 1
//   m <m> n <n> p <p> alpha <alpha> r <r> c <c> construction <name>
//   matrix                       then r lines of c characters over {0,1}
//   encoder <i>                  then alpha*n lines of m*(r+c) integers
//   ...
//   decoder <t> inputs <e...>    then m lines of alpha*n*(#inputs) integers
//   ...
//   end
//
// Encoder and terminal numbers are 1-based; edge ids are 0-based positions
// in the network's edge list. Writing a parsed file reproduces it exactly.

#include "sumnet/codegen.hpp"

#include <iosfwd>
#include <string>

namespace sumnet {

void write_code(std::ostream& out, const NetworkCode& code);
std::string write_code(const NetworkCode& code);

/// Throws std::invalid_argument with the offending line number on malformed input.
NetworkCode read_code(std::istream& in);
NetworkCode read_code(const std::string& text);

}  // namespace sumnet
