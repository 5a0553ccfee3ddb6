#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

enum class ParseErrorKind {
  kUnknownToken,
  kNegativeCoefficient,
  kDuplicateEdge,  // warning: the duplicate statement is dropped
  kSelfLoop,
  kEmptyFile,
  kBadDeclaration,
};

const char* to_string(ParseErrorKind kind);

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  ParseErrorKind kind = ParseErrorKind::kUnknownToken;
  std::string message;
};

struct ParseResult {
  std::optional<EGraph> graph;
  std::optional<ParseError> error;       // set iff !graph
  std::vector<ParseError> warnings;      // duplicate-edge statements, dropped

  bool ok() const { return graph.has_value(); }
};

// Parses the reaction-network text format:
//   - one statement per line; '#' starts a comment; blank lines ignored
//   - optional first statement "species NAME..." fixing the species order;
//     species not declared are registered in order of first use
//   - a reaction is "complex -> complex" or "complex <-> complex" (the latter
//     contributes both directions)
//   - a complex is "0" or a sum of terms "c*S" with positive integer c; the
//     "*" and a coefficient of 1 may be omitted
// Stops at the first error. Duplicate reactions are dropped with a warning.
ParseResult parse_network(const std::string& text);

// Canonical text form: one species line, then one reaction line per edge in
// canonical edge order. parse_network(serialize_network(g)) reproduces g up
// to vertex storage order. Isolated vertices are not representable in the
// text format and are omitted.
std::string serialize_network(const EGraph& g);

}  // namespace crn
