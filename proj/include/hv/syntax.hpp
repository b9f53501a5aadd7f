#ifndef HV_SYNTAX_HPP
#define HV_SYNTAX_HPP

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/errors.hpp"
#include "hv/modules.hpp"
#include "hv/rational.hpp"
#include "hv/uea.hpp"

// Element syntax:
//   element := ['-'] term { ('+'|'-') term }
//   term    := coeff | [coeff '*'] factor { '*' factor }
//   factor  := gen ['^' nat] | 'w'
//   gen     := 'L[' int ']' | 'I[' int ']' | 'z0' | 'z1' | 'z2' | 'z3'
//   coeff   := nat ['/' nat]
// 'w' may only close a term; terms with 'w' denote module vectors.

namespace hv {

struct ParsedTerm {
  Rational coeff{1};
  Word word;
  bool has_w = false;
};

struct ParsedElement {
  std::vector<ParsedTerm> terms;
  bool is_module = false;
};

namespace detail {

class ElementParser {
public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  ParsedElement parse() {
    ParsedElement out;
    skip_ws();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    bool first = true;
    for (;;) {
      skip_ws();
      const std::size_t term_line = line_, term_col = col_;
      ParsedTerm term = parse_term();
      if (negative) term.coeff = -term.coeff;
      if (first) {
        out.is_module = term.has_w;
        first = false;
      } else if (term.has_w != out.is_module) {
        throw ParseError("mixed module and algebra terms", term_line, term_col);
      }
      out.terms.push_back(std::move(term));
      skip_ws();
      if (at_end()) break;
      if (peek() == '+') {
        negative = false;
      } else if (peek() == '-') {
        negative = true;
      } else {
        fail(std::string("unexpected '") + peek() + "'");
      }
      advance();
    }
    return out;
  }

private:
  ParsedTerm parse_term() {
    ParsedTerm term;
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term.coeff = parse_coeff();
      skip_ws();
      if (peek() != '*') return term;
      advance();
    }
    for (;;) {
      skip_ws();
      if (term.has_w) fail("'w' must be the last factor of a term");
      parse_factor(term);
      skip_ws();
      if (peek() != '*') break;
      advance();
    }
    return term;
  }

  void parse_factor(ParsedTerm& term) {
    const char c = peek();
    if (c == 'w') {
      advance();
      term.has_w = true;
      return;
    }
    Generator g = Generator::L(0);
    if (c == 'L' || c == 'I') {
      advance();
      expect('[');
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        advance();
        skip_ws();
      }
      long k = parse_nat();
      skip_ws();
      expect(']');
      int idx = static_cast<int>(neg ? -k : k);
      g = c == 'L' ? Generator::L(idx) : Generator::I(idx);
    } else if (c == 'z') {
      advance();
      const char d = peek();
      if (d < '0' || d > '3') fail("expected z0, z1, z2 or z3");
      advance();
      g = d == '0' ? Generator::z0() : Generator::Z(d - '0');
    } else {
      fail(at_end() ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    }
    skip_ws();
    long power = 1;
    if (peek() == '^') {
      advance();
      skip_ws();
      power = parse_nat();
    }
    for (long r = 0; r < power; ++r) term.word.push_back(g);
  }

  Rational parse_coeff() {
    std::string num = digits();
    skip_ws();
    if (peek() != '/') return Rational::parse(num);
    advance();
    skip_ws();
    std::string den = digits();
    if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
    return Rational::parse(num + "/" + den);
  }

  long parse_nat() {
    std::string d = digits();
    if (d.size() > 9) fail("number too large");
    return std::stol(d);
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      d += peek();
      advance();
    }
    if (d.empty()) fail("expected a number");
    return d;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline std::string join_terms(const std::vector<std::pair<Rational, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, body] : terms) {
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (body.empty()) {
      out += mag.str();
    } else if (mag.is_one()) {
      out += body;
    } else {
      out += mag.str() + "*" + body;
    }
  }
  return out;
}

inline void push_factor(std::string& s, const std::string& f, int e) {
  if (e <= 0) return;
  if (!s.empty()) s += "*";
  s += f;
  if (e != 1) s += "^" + std::to_string(e);
}

inline std::string monomial_body(const std::array<int, 4>& t, const std::map<int, int>& l_exp,
                                 const std::map<int, int>& i_exp) {
  std::string s;
  for (int i = 0; i < 4; ++i) push_factor(s, "z" + std::to_string(i), t[static_cast<std::size_t>(i)]);
  for (const auto& [k, e] : l_exp) push_factor(s, Generator::L(k).str(), e);
  for (const auto& [k, e] : i_exp) push_factor(s, Generator::I(k).str(), e);
  return s;
}

}  // namespace detail

/// Parses text in the element syntax. Throws ParseError with line and column.
inline ParsedElement parse_element(std::string_view text) {
  return detail::ElementParser(text).parse();
}

inline UEAElement to_uea(const ParsedElement& e) {
  if (e.is_module) throw UsageError("expected an algebra element, got a module vector");
  UEAElement out;
  for (const auto& t : e.terms) out.add(normal_form(t.word), t.coeff);
  return out;
}

/// Requires every term to be a single generator.
inline LieElement to_lie(const ParsedElement& e) {
  if (e.is_module) throw UsageError("expected a Lie algebra element, got a module vector");
  LieElement out;
  for (const auto& t : e.terms) {
    if (t.word.size() != 1) throw UsageError("Lie algebra terms must be single generators");
    out.add(t.word.front(), t.coeff);
  }
  return out;
}

inline ModuleVector to_module_vector(const ParsedElement& e, const WhittakerModule& module) {
  if (!e.is_module) throw UsageError("expected a module vector (terms ending in 'w')");
  ModuleVector out(module.spec());
  for (const auto& t : e.terms)
    out += t.coeff * module.act_uea(normal_form(t.word), module.cyclic());
  return out;
}

inline std::string format_generator(Generator g) { return g.str(); }

inline std::string format_index(const BasisIndex& idx) {
  std::map<int, int> l, i;
  for (const auto& [k, m] : idx.lambda.mult()) l[-k] = m;
  for (const auto& [k, m] : idx.mu.mult()) i[-k] = m;
  std::string body = detail::monomial_body(idx.t, l, i);
  return body.empty() ? "w" : body + "*w";
}

inline std::string format_monomial(const PBWMonomial& m) {
  return detail::monomial_body(m.t, m.l_exp, m.i_exp);
}

using DisplayTerms = std::vector<std::pair<Rational, std::string>>;

/// Terms in descending generator order, so centrals come last.
inline DisplayTerms display_terms(const LieElement& x) {
  DisplayTerms terms;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
    terms.emplace_back(it->second, it->first.str());
  return terms;
}

/// Terms by descending PBW degree, ties in monomial order. The identity prints as "".
inline DisplayTerms display_terms(const UEAElement& u) {
  std::vector<std::pair<const PBWMonomial*, Rational>> sorted;
  for (const auto& [m, c] : u.terms()) sorted.emplace_back(&m, c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first->degree() > b.first->degree();
  });
  DisplayTerms terms;
  for (const auto& [m, c] : sorted) terms.emplace_back(c, format_monomial(*m));
  return terms;
}

inline DisplayTerms display_terms(const ModuleVector& v) {
  DisplayTerms terms;
  for (const auto& [idx, c] : v.terms()) terms.emplace_back(c, format_index(idx));
  return terms;
}

inline std::string format_element(const LieElement& x) { return detail::join_terms(display_terms(x)); }
inline std::string format_element(const UEAElement& u) { return detail::join_terms(display_terms(u)); }
inline std::string format_element(const ModuleVector& v) { return detail::join_terms(display_terms(v)); }

}  // namespace hv

#endif  // HV_SYNTAX_HPP
