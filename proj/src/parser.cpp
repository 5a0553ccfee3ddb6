#include "crn/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace crn {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kUnknownToken: return "unknown-token";
    case ParseErrorKind::kNegativeCoefficient: return "negative-coefficient";
    case ParseErrorKind::kDuplicateEdge: return "duplicate-edge";
    case ParseErrorKind::kSelfLoop: return "self-loop";
    case ParseErrorKind::kEmptyFile: return "empty-file";
    case ParseErrorKind::kBadDeclaration: return "bad-declaration";
  }
  return "unknown-token";
}

namespace {

enum class TokKind { kIdent, kInt, kPlus, kStar, kArrow, kBidir };

struct Token {
  TokKind kind;
  std::string text;
  long value = 0;  // kInt only
  int column = 0;  // 1-based
};

struct Term {
  std::string species;
  long coeff = 1;
};

// A complex is a list of terms; empty list = the zero complex.
struct ReactionStmt {
  std::vector<Term> lhs, rhs;
  bool bidirectional = false;
  int line = 0;
  int arrow_column = 0;
};

struct LineError {
  int column;
  ParseErrorKind kind;
  std::string message;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenizes one line with the comment already stripped. Columns refer to the
// original line text.
bool tokenize(const std::string& line, std::vector<Token>& out, LineError& err) {
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '+') {
      out.push_back({TokKind::kPlus, "+", 0, col});
      ++i;
      continue;
    }
    if (c == '*') {
      out.push_back({TokKind::kStar, "*", 0, col});
      ++i;
      continue;
    }
    if (c == '<') {
      if (line.compare(i, 3, "<->") == 0) {
        out.push_back({TokKind::kBidir, "<->", 0, col});
        i += 3;
        continue;
      }
      err = {col, ParseErrorKind::kUnknownToken, "expected '<->'"};
      return false;
    }
    if (c == '-') {
      if (i + 1 < line.size() && line[i + 1] == '>') {
        out.push_back({TokKind::kArrow, "->", 0, col});
        i += 2;
        continue;
      }
      if (i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1]))) {
        err = {col, ParseErrorKind::kNegativeCoefficient,
               "coefficients must be positive integers"};
        return false;
      }
      err = {col, ParseErrorKind::kUnknownToken, "stray '-'"};
      return false;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      const std::string digits = line.substr(i, j - i);
      if (digits.size() > 12) {
        err = {col, ParseErrorKind::kUnknownToken, "coefficient too large: " + digits};
        return false;
      }
      out.push_back({TokKind::kInt, digits, std::stol(digits), col});
      i = j;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back({TokKind::kIdent, line.substr(i, j - i), 0, col});
      i = j;
      continue;
    }
    err = {col, ParseErrorKind::kUnknownToken, std::string("unexpected character '") + c + "'"};
    return false;
  }
  return true;
}

// complex := '0' | term ('+' term)* ; term := [INT ['*']] IDENT
bool parse_complex(const std::vector<Token>& toks, std::size_t& pos, std::vector<Term>& out,
                   LineError& err) {
  const auto at_end_of_complex = [&](std::size_t p) {
    return p >= toks.size() || toks[p].kind == TokKind::kArrow || toks[p].kind == TokKind::kBidir;
  };
  if (pos < toks.size() && toks[pos].kind == TokKind::kInt && toks[pos].value == 0 &&
      at_end_of_complex(pos + 1)) {
    ++pos;  // the zero complex
    return true;
  }
  while (true) {
    long coeff = 1;
    if (pos < toks.size() && toks[pos].kind == TokKind::kInt) {
      coeff = toks[pos].value;
      if (coeff <= 0) {
        err = {toks[pos].column, ParseErrorKind::kNegativeCoefficient,
               "coefficients must be positive integers"};
        return false;
      }
      ++pos;
      if (pos < toks.size() && toks[pos].kind == TokKind::kStar) ++pos;
    }
    if (pos >= toks.size() || toks[pos].kind != TokKind::kIdent) {
      const int col = pos < toks.size() ? toks[pos].column
                                        : (pos > 0 ? toks[pos - 1].column + 1 : 1);
      err = {col, ParseErrorKind::kUnknownToken, "expected species name"};
      return false;
    }
    out.push_back({toks[pos].text, coeff});
    ++pos;
    if (pos < toks.size() && toks[pos].kind == TokKind::kPlus) {
      ++pos;
      continue;
    }
    return true;
  }
}

}  // namespace

ParseResult parse_network(const std::string& text) {
  ParseResult result;
  const auto fail = [&](int line, int column, ParseErrorKind kind, std::string message) {
    result.error = ParseError{line, column, kind, std::move(message)};
    return result;
  };

  std::vector<std::string> decl_names;
  std::vector<ReactionStmt> reactions;
  int statement_count = 0;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);

    std::vector<Token> toks;
    LineError lerr{};
    if (!tokenize(line, toks, lerr))
      return fail(line_no, lerr.column, lerr.kind, std::move(lerr.message));
    if (toks.empty()) continue;
    ++statement_count;

    const bool has_arrow = [&] {
      for (const Token& t : toks)
        if (t.kind == TokKind::kArrow || t.kind == TokKind::kBidir) return true;
      return false;
    }();

    if (toks[0].kind == TokKind::kIdent && toks[0].text == "species" && !has_arrow) {
      if (statement_count != 1)
        return fail(line_no, toks[0].column, ParseErrorKind::kBadDeclaration,
                    "species declaration must be the first statement");
      if (toks.size() == 1)
        return fail(line_no, toks[0].column, ParseErrorKind::kBadDeclaration,
                    "species declaration lists no names");
      std::set<std::string> seen;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].kind != TokKind::kIdent)
          return fail(line_no, toks[i].column, ParseErrorKind::kBadDeclaration,
                      "species names must be identifiers");
        if (!seen.insert(toks[i].text).second)
          return fail(line_no, toks[i].column, ParseErrorKind::kBadDeclaration,
                      "duplicate species name: " + toks[i].text);
        decl_names.push_back(toks[i].text);
      }
      continue;
    }

    ReactionStmt stmt;
    stmt.line = line_no;
    std::size_t pos = 0;
    if (!parse_complex(toks, pos, stmt.lhs, lerr))
      return fail(line_no, lerr.column, lerr.kind, std::move(lerr.message));
    if (pos >= toks.size() ||
        (toks[pos].kind != TokKind::kArrow && toks[pos].kind != TokKind::kBidir))
      return fail(line_no, pos < toks.size() ? toks[pos].column : static_cast<int>(line.size()) + 1,
                  ParseErrorKind::kUnknownToken, "expected '->' or '<->'");
    stmt.bidirectional = toks[pos].kind == TokKind::kBidir;
    stmt.arrow_column = toks[pos].column;
    ++pos;
    if (!parse_complex(toks, pos, stmt.rhs, lerr))
      return fail(line_no, lerr.column, lerr.kind, std::move(lerr.message));
    if (pos != toks.size())
      return fail(line_no, toks[pos].column, ParseErrorKind::kUnknownToken,
                  "unexpected trailing tokens");
    reactions.push_back(std::move(stmt));
  }

  if (reactions.empty()) {
    if (statement_count == 0)
      return fail(1, 1, ParseErrorKind::kEmptyFile, "no statements");
    return fail(1, 1, ParseErrorKind::kEmptyFile, "no reaction statements");
  }

  // Species order: declared names first, then first use.
  std::vector<std::string> species_names = decl_names;
  std::set<std::string> known(decl_names.begin(), decl_names.end());
  for (const ReactionStmt& stmt : reactions)
    for (const std::vector<Term>* side : {&stmt.lhs, &stmt.rhs})
      for (const Term& term : *side)
        if (known.insert(term.species).second) species_names.push_back(term.species);

  std::map<std::string, int> species_index;
  for (std::size_t i = 0; i < species_names.size(); ++i)
    species_index[species_names[i]] = static_cast<int>(i);
  const int n = static_cast<int>(species_names.size());

  const auto coords_of = [&](const std::vector<Term>& side) {
    std::vector<long> coords(n, 0);
    for (const Term& term : side) coords[species_index.at(term.species)] += term.coeff;
    return coords;
  };

  std::vector<VertexComplex> vertices;
  std::map<std::vector<long>, int> vertex_index;
  const auto vertex_of = [&](std::vector<long> coords) {
    auto [it, inserted] = vertex_index.try_emplace(std::move(coords), 0);
    if (inserted) {
      it->second = static_cast<int>(vertices.size());
      vertices.push_back({it->first});
    }
    return it->second;
  };

  std::vector<Reaction> edges;
  std::set<std::pair<int, int>> edge_set;
  SpeciesTable table{species_names};
  for (const ReactionStmt& stmt : reactions) {
    const int lhs = vertex_of(coords_of(stmt.lhs));
    const int rhs = vertex_of(coords_of(stmt.rhs));
    if (lhs == rhs)
      return fail(stmt.line, stmt.arrow_column, ParseErrorKind::kSelfLoop,
                  "reaction maps " + complex_name(table, vertices[lhs]) + " to itself");
    const auto add_edge = [&](int s, int t) {
      if (edge_set.insert({s, t}).second) {
        edges.push_back({s, t});
      } else {
        result.warnings.push_back({stmt.line, stmt.arrow_column, ParseErrorKind::kDuplicateEdge,
                                   "duplicate reaction " + complex_name(table, vertices[s]) +
                                       " -> " + complex_name(table, vertices[t]) + " ignored"});
      }
    };
    add_edge(lhs, rhs);
    if (stmt.bidirectional) add_edge(rhs, lhs);
  }

  result.graph.emplace(std::move(table), std::move(vertices), std::move(edges));
  return result;
}

std::string serialize_network(const EGraph& g) {
  std::string out = "species";
  for (const std::string& name : g.species().names) out += " " + name;
  out += "\n";
  for (const Reaction& e : g.edges()) {
    out += complex_name(g.species(), g.vertices()[e.source]);
    out += " -> ";
    out += complex_name(g.species(), g.vertices()[e.target]);
    out += "\n";
  }
  return out;
}

}  // namespace crn
