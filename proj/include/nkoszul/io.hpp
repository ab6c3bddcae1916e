#pragma once

// Plain-text algebra definitions:
//
//   # comment
//   field rational            (or gf:P; optional, default rational)
//   generators x y
//   degree 2
//   relation 1*x.y - 1*y.x
//
// A relation is a signed sum of terms `coef*word` or `word`, coefficients
// being integers or fractions a/b, words generator names joined by '.'.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "nkoszul/algebra.hpp"
#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"

namespace nkoszul {

struct Term {
  mpq_class coefficient;
  std::vector<std::size_t> word;  // generator indices

  friend bool operator==(const Term& a, const Term& b) {
    return a.coefficient == b.coefficient && a.word == b.word;
  }
};

struct AlgebraDefinition {
  std::string field = "rational";
  std::vector<std::string> generators;
  std::size_t degree = 0;
  std::vector<std::vector<Term>> relations;

  friend bool operator==(const AlgebraDefinition&, const AlgebraDefinition&) = default;
};

namespace detail {

struct Cursor {
  std::string_view line;
  std::size_t line_no;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
    throw ParseError(line_no, (at ? *at : pos) + 1, what);
  }
  void skip_space() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= line.size();
  }
  char peek() { return done() ? '\0' : line[pos]; }
  std::string_view take_while(auto pred) {
    const std::size_t start = pos;
    while (pos < line.size() && pred(line[pos])) ++pos;
    return line.substr(start, pos - start);
  }
};

inline bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

inline std::size_t parse_count(Cursor& c, const char* what) {
  c.skip_space();
  const std::size_t at = c.pos;
  const auto tok = c.take_while([](char ch) { return !std::isspace(static_cast<unsigned char>(ch)); });
  if (tok.empty() || tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), digit))
    c.fail(std::string("expected a non-negative integer for ") + what, at);
  return std::stoul(std::string(tok));
}

/// Validates a field spec; `at` is the column used for errors.
inline std::string check_field_spec(const std::string& spec, const Cursor* c, std::size_t at) {
  auto fail = [&](const std::string& what) {
    if (c) c->fail(what, at);
    throw std::invalid_argument(what);
  };
  if (spec == "rational") return spec;
  if (spec.rfind("gf:", 0) == 0) {
    const std::string num = spec.substr(3);
    if (num.empty() || num.size() > 10 || !std::all_of(num.begin(), num.end(), digit))
      fail("bad modulus in field '" + spec + "'");
    const auto p = std::stoull(num);
    if (p > 0xffffffffULL || !is_prime(p)) fail("modulus " + num + " is not a prime below 2^32");
    return "gf:" + std::to_string(p);
  }
  fail("unknown field '" + spec + "' (expected rational or gf:P)");
  return {};
}

inline mpq_class parse_coefficient(Cursor& c, const std::string& field) {
  const std::size_t at = c.pos;
  const auto num = c.take_while(digit);
  mpz_class n{std::string(num)}, d{1};
  if (c.pos < c.line.size() && c.line[c.pos] == '/') {
    ++c.pos;
    const auto den = c.take_while(digit);
    if (den.empty()) c.fail("expected a denominator", c.pos);
    d = mpz_class(std::string(den));
    if (d == 0) c.fail("zero denominator", at);
  }
  if (field != "rational") {
    const mpz_class p(field.substr(3));
    if (d % p == 0) c.fail("denominator vanishes modulo " + field.substr(3), at);
  }
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline std::vector<std::size_t> parse_word(Cursor& c, const AlgebraDefinition& def) {
  std::vector<std::size_t> word;
  const std::size_t start = c.pos;
  for (;;) {
    const std::size_t at = c.pos;
    if (c.pos >= c.line.size() || !name_start(c.line[c.pos])) c.fail("expected a generator name", at);
    const std::string name(c.take_while(name_char));
    const auto it = std::find(def.generators.begin(), def.generators.end(), name);
    if (it == def.generators.end()) c.fail("unknown generator '" + name + "'", at);
    word.push_back(static_cast<std::size_t>(it - def.generators.begin()));
    if (c.pos < c.line.size() && c.line[c.pos] == '.') {
      ++c.pos;
      continue;
    }
    break;
  }
  if (word.size() != def.degree)
    c.fail("word has length " + std::to_string(word.size()) + " but the degree is " + std::to_string(def.degree),
           start);
  return word;
}

inline std::vector<Term> parse_relation(Cursor& c, const AlgebraDefinition& def) {
  std::vector<Term> terms;
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    const char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = ch == '-' ? -1 : 1;
      ++c.pos;
      c.skip_space();
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    Term t{mpq_class(1), {}};
    if (c.pos < c.line.size() && digit(c.line[c.pos])) {
      t.coefficient = parse_coefficient(c, def.field);
      c.skip_space();
      if (c.pos >= c.line.size() || c.line[c.pos] != '*') c.fail("expected '*' after coefficient");
      ++c.pos;
      c.skip_space();
    }
    t.word = parse_word(c, def);
    if (sign < 0) t.coefficient = -t.coefficient;
    terms.push_back(std::move(t));
    first = false;
  }
  if (terms.empty()) c.fail("empty relation");
  return terms;
}

}  // namespace detail

/// Checks "rational" or "gf:P" with P prime; returns the normalized spec.
inline std::string normalize_field_spec(const std::string& spec) {
  return detail::check_field_spec(spec, nullptr, 0);
}

inline AlgebraDefinition parse_definition(std::string_view text) {
  AlgebraDefinition def;
  bool have_field = false, have_generators = false, have_degree = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    detail::Cursor c{line, line_no};
    if (c.done()) continue;
    const std::size_t kw_at = c.pos;
    const std::string keyword(c.take_while(detail::name_char));
    if (keyword == "field") {
      if (have_field) c.fail("field declared twice", kw_at);
      if (!def.relations.empty()) c.fail("field must come before relations", kw_at);
      c.skip_space();
      const std::size_t at = c.pos;
      const std::string spec(c.take_while([](char ch) { return !std::isspace(static_cast<unsigned char>(ch)); }));
      def.field = detail::check_field_spec(spec, &c, at);
      have_field = true;
    } else if (keyword == "generators") {
      if (have_generators) c.fail("generators declared twice", kw_at);
      while (!c.done()) {
        const std::size_t at = c.pos;
        if (!detail::name_start(c.line[c.pos])) c.fail("bad generator name", at);
        std::string name(c.take_while(detail::name_char));
        if (c.pos < line.size() && !std::isspace(static_cast<unsigned char>(line[c.pos])))
          c.fail("bad generator name", at);
        if (std::find(def.generators.begin(), def.generators.end(), name) != def.generators.end())
          c.fail("duplicate generator '" + name + "'", at);
        def.generators.push_back(std::move(name));
      }
      if (def.generators.empty()) c.fail("no generators given");
      have_generators = true;
      continue;
    } else if (keyword == "degree") {
      if (have_degree) c.fail("degree declared twice", kw_at);
      const std::size_t at = c.pos;
      def.degree = detail::parse_count(c, "degree");
      if (def.degree < 2) c.fail("degree must be at least 2", at + 1);
      have_degree = true;
    } else if (keyword == "relation") {
      if (!have_generators || !have_degree) c.fail("relation before generators and degree", kw_at);
      def.relations.push_back(detail::parse_relation(c, def));
      continue;
    } else {
      c.fail(keyword.empty() ? "expected a keyword" : "unknown keyword '" + keyword + "'", kw_at);
    }
    if (!c.done()) c.fail("unexpected text");
  }
  if (!have_generators) throw ParseError(line_no, 1, "missing 'generators'");
  if (!have_degree) throw ParseError(line_no, 1, "missing 'degree'");
  return def;
}

inline std::string serialize(const AlgebraDefinition& def) {
  std::ostringstream out;
  out << "field " << def.field << "\n";
  out << "generators";
  for (const auto& g : def.generators) out << ' ' << g;
  out << "\ndegree " << def.degree << "\n";
  for (const auto& rel : def.relations) {
    out << "relation";
    for (std::size_t k = 0; k < rel.size(); ++k) {
      const auto& t = rel[k];
      const bool negative = sgn(t.coefficient) < 0;
      if (k == 0)
        out << ' ' << (negative ? "-" : "");
      else
        out << (negative ? " - " : " + ");
      out << mpq_class(abs(t.coefficient)).get_str() << '*';
      for (std::size_t j = 0; j < t.word.size(); ++j) out << (j ? "." : "") << def.generators[t.word[j]];
    }
    out << "\n";
  }
  return out.str();
}

template <Field F>
typename F::value_type from_rational(const F& f, const mpq_class& q) {
  return f.from_fraction(q.get_num(), q.get_den());
}

template <Field F>
mpq_class to_rational(const F&, const typename F::value_type& v) {
  if constexpr (std::is_same_v<typename F::value_type, mpq_class>)
    return v;
  else
    return mpq_class(static_cast<unsigned long>(v));
}

template <Field F>
NHomogeneousAlgebra<F> to_algebra(const AlgebraDefinition& def, const F& f, std::string label = {}) {
  const std::size_t d = def.generators.size();
  const std::size_t ambient = ipow(d, def.degree);
  const WordBasis basis(d, def.degree);
  std::vector<Vector<F>> rows;
  for (const auto& rel : def.relations) {
    Vector<F> v(ambient, f.zero());
    for (const auto& t : rel) {
      Word w;
      for (auto g : t.word) w.letters.push_back(static_cast<Letter>(g));
      auto& slot = v[basis.index(w)];
      slot = f.add(slot, from_rational(f, t.coefficient));
    }
    rows.push_back(std::move(v));
  }
  return {d, def.degree, Subspace<F>::span(f, ambient, rows), std::move(label)};
}

/// A definition whose relations are the canonical basis of R.
template <Field F>
AlgebraDefinition from_algebra(const NHomogeneousAlgebra<F>& a, std::vector<std::string> generators) {
  if (generators.size() != a.dim_e()) throw DimensionError("from_algebra: wrong number of generator names");
  const F& f = a.field();
  AlgebraDefinition def;
  def.field = f.name();
  def.generators = std::move(generators);
  def.degree = a.degree();
  const WordBasis basis(a.dim_e(), a.degree());
  const auto& m = a.relations().basis();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Term> rel;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (f.is_zero(m(i, j))) continue;
      Term t{to_rational(f, m(i, j)), {}};
      for (auto l : basis.word(j).letters) t.word.push_back(l);
      rel.push_back(std::move(t));
    }
    def.relations.push_back(std::move(rel));
  }
  return def;
}

/// Generator names of E (x) E': a_b for the letter (a, b).
inline std::vector<std::string> product_generator_names(const std::vector<std::string>& a,
                                                        const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + "_" + y);
  return out;
}

}  // namespace nkoszul
