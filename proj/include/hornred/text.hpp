#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hornred/clause.hpp"

namespace hornred {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `P0(x1,x2) :- P1(x1,x3), P2(x2,x3).`
///
/// Predicate identifiers start with an uppercase letter, term identifiers
/// with a lowercase one. Names of the form `P<n>` / `x<n>` keep the number
/// n as their id; any other name receives the next unused id, so printing
/// and re-parsing preserves such clauses exactly. A clause without head is
/// written `:- A, B.`; a zero-arity atom is written `P3()`.
Clause parse_clause(std::string_view text);

/// One clause per line; blank lines and lines starting with `#` are skipped.
std::vector<Clause> parse_theory(std::istream& in);
std::vector<Clause> parse_theory_text(std::string_view text);
std::vector<Clause> read_theory_file(const std::string& path);

std::string to_string(const PredVar& p);
std::string to_string(const TermVar& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Substitution& s);

}  // namespace hornred
