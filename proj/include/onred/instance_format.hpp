// Line-oriented instance text format.
//
//   problem <asg|bdis|sp|sch|cli|mcs|mm> t=<int|inf> [k=<int>]
//   req <payload> true=<0|1> pred=<0|1>
//
// payload: `-` (asg), `edges=<1-based earlier indices>` (bdis/cli/mcs),
// `set=<tokens>` (sp), `interval=<lo>,<hi>` (sch), `edge=<u>,<v>` (mm).
// Lists are comma separated; `#` starts a comment.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "onred/problems.hpp"
#include "onred/types.hpp"

namespace onred {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParsedInstance {
  Instance instance;
  ValidityReport validity;
};

/// Syntax errors throw ParseError. A well-formed but inadmissible instance is
/// returned with its validity report flagging the problem.
ParsedInstance parse_instance(std::string_view text);

/// Parses without running validate_instance.
Instance parse_instance_text(std::string_view text);

/// Canonical form: one header line, one `req` line per request, no comments.
std::string serialize_instance(const Instance& instance);

std::string serialize_payload(const RequestPayload& payload);

}  // namespace onred
