#pragma once

// Line-oriented model text:
//
//   # comment
//   flag non-simply-connected
//   gen <name> <degree>
//   d <name> = <polynomial>
//
// Polynomials use integer or p/q coefficients, '*', '^', '+', '-' and
// parentheses. Declaration order fixes the generator order.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

namespace detail {

inline bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

struct Located {
  GradedPolynomial poly;
  std::optional<int> degree;  // nullopt for zero
};

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t line, std::size_t offset, const GradedAlgebra& algebra,
             const std::map<std::string, std::size_t>& names, std::size_t defined)
      : text_(text), line_(line), offset_(offset), A_(algebra), names_(names), defined_(defined) {}

  GradedPolynomial parse() {
    skip();
    if (pos_ == text_.size()) fail("expected a polynomial");
    GradedPolynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, offset_ + pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(line_, offset_ + pos + 1, msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  GradedPolynomial expr() {
    GradedPolynomial acc;
    bool first = true;
    for (;;) {
      skip();
      Rational sign = 1;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        if (text_[pos_] == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        break;
      }
      GradedPolynomial t = term();
      t *= sign;
      acc += t;
      first = false;
      skip();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return acc;
  }

  GradedPolynomial term() {
    GradedPolynomial acc = factor();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        acc = A_.multiply(acc, factor());
      } else {
        return acc;
      }
    }
  }

  GradedPolynomial factor() {
    skip();
    GradedPolynomial base = atom();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      long e = integer();
      if (e < 0) fail_at(start, "negative exponent");
      base = A_.power(base, static_cast<int>(e));
    }
    return base;
  }

  long integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    try {
      return std::stol(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail_at(start, "integer out of range");
    }
  }

  GradedPolynomial atom() {
    if (pos_ >= text_.size()) fail("unexpected end of polynomial");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GradedPolynomial inner = expr();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string num(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t dstart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected a denominator");
        std::string den(text_.substr(dstart, pos_ - dstart));
        if (den.find_first_not_of('0') == std::string::npos) fail_at(dstart, "zero denominator");
        num += "/" + den;
      }
      Rational q(num);
      q.canonicalize();
      return q * GradedPolynomial::one(A_.size());
    }
    if (is_name_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = names_.find(name);
      if (it == names_.end()) fail_at(start, "unknown generator '" + name + "'");
      if (it->second >= defined_)
        fail_at(start, "non-triangular reference: '" + name + "' is not declared before the defined generator");
      return GradedPolynomial::generator(A_.size(), it->second);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
  const GradedAlgebra& A_;
  const std::map<std::string, std::size_t>& names_;
  std::size_t defined_;
};

inline std::vector<std::string_view> split_words(std::string_view s, std::vector<std::size_t>& columns) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back(s.substr(i, j - i));
    columns.push_back(i + 1);
    i = j;
  }
  return out;
}

}  // namespace detail

/// Parses model text and validates the result. Syntax and reference errors
/// raise ParseError with a 1-based line and column; violations of the
/// minimal-algebra conditions raise ValidationError.
inline SullivanModel parse_model(std::string_view text, std::string name = {}) {
  struct GenLine {
    std::string name;
    int degree;
    std::size_t line;
  };
  struct DiffLine {
    std::string target;
    std::size_t line;
    std::size_t target_column;
    std::size_t body_column;
    std::string body;
  };

  std::vector<GenLine> gens;
  std::vector<DiffLine> diffs;
  bool simply_connected = true;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    std::vector<std::size_t> cols;
    auto words = detail::split_words(raw, cols);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view kw = words[0];
    if (kw == "gen") {
      if (words.size() != 3) throw ParseError(line_no, cols[0], "expected 'gen <name> <degree>'");
      const std::string gname(words[1]);
      if (!detail::is_name_start(gname[0]) ||
          gname.find_first_of("+-*^/()=") != std::string::npos)
        throw ParseError(line_no, cols[1], "invalid generator name '" + gname + "'");
      for (char ch : gname)
        if (!detail::is_name_char(ch)) throw ParseError(line_no, cols[1], "invalid generator name '" + gname + "'");
      for (const auto& g : gens)
        if (g.name == gname)
          throw ParseError(line_no, cols[1],
                           "duplicate definition of generator '" + gname + "' (first at line " +
                               std::to_string(g.line) + ")");
      int degree = 0;
      try {
        std::size_t used = 0;
        degree = std::stoi(std::string(words[2]), &used);
        if (used != words[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, cols[2], "expected an integer degree");
      }
      if (degree < 1) throw ParseError(line_no, cols[2], "generator degree must be positive");
      gens.push_back({gname, degree, line_no});
    } else if (kw == "d") {
      auto eq = raw.find('=');
      if (words.size() < 2 || eq == std::string_view::npos)
        throw ParseError(line_no, cols[0], "expected 'd <name> = <polynomial>'");
      std::vector<std::size_t> lhs_cols;
      auto lhs = detail::split_words(raw.substr(0, eq), lhs_cols);
      if (lhs.size() != 2) throw ParseError(line_no, cols[0], "expected 'd <name> = <polynomial>'");
      diffs.push_back({std::string(lhs[1]), line_no, lhs_cols[1], eq + 1, std::string(raw.substr(eq + 1))});
    } else if (kw == "flag") {
      if (words.size() != 2 || words[1] != "non-simply-connected")
        throw ParseError(line_no, cols[0], "unknown flag; expected 'flag non-simply-connected'");
      simply_connected = false;
    } else {
      throw ParseError(line_no, cols[0], "unknown keyword '" + std::string(kw) + "'");
    }
    if (end == text.size()) break;
  }

  std::vector<Generator> generators;
  std::map<std::string, std::size_t> index;
  for (const auto& g : gens) {
    index.emplace(g.name, generators.size());
    generators.push_back({g.name, g.degree});
  }
  GradedAlgebra algebra(generators);
  std::vector<GradedPolynomial> differential(generators.size());
  std::vector<std::optional<std::size_t>> defined_at(generators.size());

  for (const auto& dl : diffs) {
    auto it = index.find(dl.target);
    if (it == index.end()) throw ParseError(dl.line, dl.target_column, "unknown generator '" + dl.target + "'");
    const std::size_t i = it->second;
    if (defined_at[i])
      throw ParseError(dl.line, dl.target_column,
                       "duplicate definition of d(" + dl.target + ") (first at line " +
                           std::to_string(*defined_at[i]) + ")");
    defined_at[i] = dl.line;
    detail::PolyParser pp(dl.body, dl.line, dl.body_column, algebra, index, i);
    GradedPolynomial p = pp.parse();
    const int want = generators[i].degree + 1;
    for (const auto& [m, c] : p.terms()) {
      const int got = algebra.degree(m);
      if (got != want)
        throw ParseError(dl.line, dl.body_column + 1,
                         "degree mismatch: d(" + dl.target + ") must have degree " + std::to_string(want) +
                             " but has a term of degree " + std::to_string(got));
    }
    differential[i] = std::move(p);
  }

  return validate(SullivanModel(std::move(generators), std::move(differential), simply_connected, std::move(name)));
}

inline std::string format_monomial(const GradedAlgebra& A, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const int e = m.exponents[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += A.generators()[i].name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

/// Terms in canonical monomial order; every monomial is written in generator
/// order so that reparsing introduces no Koszul signs.
inline std::string format_polynomial(const GradedAlgebra& A, const GradedPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const bool unit = mag == 1;
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (!unit) out += mag.get_str() + "*";
      out += format_monomial(A, m);
    }
  }
  return out;
}

/// Model text accepted by parse_model; parse_model(print_model(m)) == m.
inline std::string print_model(const SullivanModel& model) {
  std::ostringstream os;
  if (!model.name().empty()) os << "# " << model.name() << "\n";
  if (!model.simply_connected()) os << "flag non-simply-connected\n";
  for (const auto& g : model.generators()) os << "gen " << g.name << " " << g.degree << "\n";
  for (std::size_t i = 0; i < model.size(); ++i)
    if (!model.d(i).is_zero())
      os << "d " << model.generators()[i].name << " = " << format_polynomial(model.algebra(), model.d(i)) << "\n";
  return os.str();
}

}  // namespace sullivan
