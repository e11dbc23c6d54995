#include "hornred/text.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hornred {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(line ? "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + msg
                              : "column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct RawAtom {
  std::string pred;
  std::vector<std::string> args;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return pos_ + 1; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

RawAtom parse_atom(Lexer& lex) {
  RawAtom a;
  a.column = lex.column();
  a.pred = lex.identifier();
  if (!std::isupper(static_cast<unsigned char>(a.pred[0])))
    lex.fail("predicate variable '" + a.pred + "' must start with an uppercase letter");
  lex.expect("(");
  if (lex.accept(")")) return a;
  do {
    std::string t = lex.identifier();
    if (!std::islower(static_cast<unsigned char>(t[0])))
      lex.fail("term variable '" + t + "' must start with a lowercase letter");
    a.args.push_back(std::move(t));
  } while (lex.accept(","));
  lex.expect(")");
  return a;
}

// `P12` -> 12 when the name is exactly prefix + digits.
std::optional<int> numbered(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  return value;
}

Clause parse_clause_line(std::string_view text, std::size_t line) {
  Lexer lex(text, line);
  std::optional<RawAtom> head;
  std::vector<RawAtom> body;
  if (!lex.accept(":-")) {
    head = parse_atom(lex);
    if (lex.accept(":-")) {
      do body.push_back(parse_atom(lex));
      while (lex.accept(","));
    }
  } else if (lex.peek() != '.') {
    do body.push_back(parse_atom(lex));
    while (lex.accept(","));
  }
  lex.expect(".");
  if (!lex.at_end()) lex.fail("trailing input after '.'");

  // Numbered names keep their number; others are assigned past the maximum.
  std::map<std::string, int> pred_ids, term_ids;
  std::map<std::string, int> pred_arity;
  int next_pred = 0, next_term = 1;
  auto scan = [&](const RawAtom& a) {
    if (auto n = numbered(a.pred, 'P')) next_pred = std::max(next_pred, *n + 1);
    for (const auto& t : a.args)
      if (auto n = numbered(t, 'x')) next_term = std::max(next_term, *n + 1);
  };
  if (head) scan(*head);
  for (const auto& a : body) scan(a);

  auto convert = [&](const RawAtom& a) {
    int arity = static_cast<int>(a.args.size());
    auto [ait, fresh] = pred_arity.try_emplace(a.pred, arity);
    if (!fresh && ait->second != arity)
      throw ParseError("predicate variable '" + a.pred + "' used with arities " +
                           std::to_string(ait->second) + " and " + std::to_string(arity),
                       line, a.column);
    auto pit = pred_ids.find(a.pred);
    if (pit == pred_ids.end()) {
      auto n = numbered(a.pred, 'P');
      pit = pred_ids.emplace(a.pred, n ? *n : next_pred++).first;
    }
    Atom out{PredVar{pit->second, arity}, {}};
    for (const auto& t : a.args) {
      auto tit = term_ids.find(t);
      if (tit == term_ids.end()) {
        auto n = numbered(t, 'x');
        tit = term_ids.emplace(t, n ? *n : next_term++).first;
      }
      out.args.push_back(TermVar{tit->second});
    }
    return out;
  };
  Clause c;
  if (head) c.head = convert(*head);
  for (const auto& a : body) c.body.push_back(convert(a));
  return c;
}

}  // namespace

Clause parse_clause(std::string_view text) { return parse_clause_line(text, 0); }

std::vector<Clause> parse_theory(std::istream& in) {
  std::vector<Clause> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_clause_line(line, lineno));
  }
  return out;
}

std::vector<Clause> parse_theory_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_theory(in);
}

std::vector<Clause> read_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open theory file '" + path + "'");
  return parse_theory(in);
}

std::string to_string(const PredVar& p) { return "P" + std::to_string(p.id); }
std::string to_string(const TermVar& t) { return "x" + std::to_string(t.id); }

std::string to_string(const Atom& a) {
  std::string out = to_string(a.pred) + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.args[i]);
  }
  return out + ")";
}

std::string to_string(const Clause& c) {
  std::string out;
  if (c.head) out += to_string(*c.head);
  if (!c.body.empty() || !c.head) out += c.head ? " :- " : ":- ";
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(c.body[i]);
  }
  return out + ".";
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [id, to] : s.pred_map()) {
    out += (first ? "" : ", ") + to_string(PredVar{id, to.arity}) + "->" + to_string(to);
    first = false;
  }
  for (const auto& [id, to] : s.term_map()) {
    out += (first ? "" : ", ") + to_string(TermVar{id}) + "->" + to_string(to);
    first = false;
  }
  return out + "}";
}

}  // namespace hornred
