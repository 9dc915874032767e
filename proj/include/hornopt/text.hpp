#pragma once

// Plain-text polynomial interchange format.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer | identifier ['^' positive-integer]
//
// Whitespace (including newlines) is insignificant between tokens.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/polynomial.hpp"

namespace hornopt {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      advance();
    }
    parse_term(negative);
    for (;;) {
      skip_space();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+', '-' or '*' but found '") + c + "'");
      advance();
      parse_term(c == '-');
    }
    std::vector<std::string> names;
    names.reserve(seen_.size());
    for (const auto& [name, unused] : seen_) names.push_back(name);
    VarTable vars = VarTable::sorted(std::move(names));
    std::vector<Term> terms;
    terms.reserve(raw_.size());
    for (auto& r : raw_) {
      Exponents e(vars.size(), 0);
      for (const auto& [name, power] : r.powers) e[vars.index(name)] += power;
      terms.push_back(Term{std::move(r.coeff), std::move(e)});
    }
    return Polynomial(std::move(vars), std::move(terms));
  }

 private:
  struct RawTerm {
    BigInt coeff;
    std::map<std::string, Exponent> powers;
  };

  void parse_term(bool negative) {
    RawTerm t{negative ? BigInt(-1) : BigInt(1), {}};
    parse_factor(t);
    for (;;) {
      skip_space();
      if (at_end() || peek() != '*') break;
      advance();
      parse_factor(t);
    }
    raw_.push_back(std::move(t));
  }

  void parse_factor(RawTerm& t) {
    skip_space();
    if (at_end()) fail("unexpected end of input, expected a number or variable");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      t.coeff *= BigInt(read_digits());
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::string name = read_identifier();
      Exponent power = 1;
      skip_space();
      if (!at_end() && peek() == '^') {
        advance();
        skip_space();
        if (at_end() || std::isdigit(static_cast<unsigned char>(peek())) == 0) fail("expected exponent after '^'");
        const std::size_t line = line_;
        const std::size_t col = col_;
        std::string digits = read_digits();
        BigInt value(digits);
        if (value == 0) throw ParseError("exponent must be positive", line, col);
        if (value > BigInt(1'000'000)) throw ParseError("exponent too large", line, col);
        power = static_cast<Exponent>(value);
      }
      seen_.emplace(name, true);
      t.powers[name] += power;
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string read_digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      out.push_back(peek());
      advance();
    }
    return out;
  }

  std::string read_identifier() {
    std::string out;
    while (!at_end()) {
      auto u = static_cast<unsigned char>(peek());
      if (std::isalnum(u) == 0 && u != '_') break;
      out.push_back(peek());
      advance();
    }
    return out;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) advance();
  }

  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return text_[pos_]; }

  void advance() noexcept {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::vector<RawTerm> raw_;
  std::map<std::string, bool> seen_;
};

}  // namespace detail

/// Parses the interchange grammar into a collected, canonical polynomial.
/// Variables are ordered by natural name order. Throws ParseError.
inline Polynomial parse_polynomial(std::string_view text) { return detail::PolyParser(text).parse(); }

inline std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : p.terms()) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const BigInt mag = abs(t.coeff);
    bool wrote = false;
    if (mag != 1 || t.degree() == 0) {
      out << mag;
      wrote = true;
    }
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] == 0) continue;
      if (wrote) out << '*';
      out << p.vars().name(static_cast<VarIndex>(v));
      if (t.exps[v] > 1) out << '^' << t.exps[v];
      wrote = true;
    }
  }
  return out.str();
}

inline Polynomial read_polynomial_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polynomial(buf.str());
}

inline void write_polynomial_file(const std::string& path, const Polynomial& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_polynomial(p) << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace hornopt
