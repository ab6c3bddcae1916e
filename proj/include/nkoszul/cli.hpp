#pragma once

// Command dispatch for the nkoszul tool. Every command returns a Report,
// an ordered JSON document, which is printed either as JSON or through
// render_text.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nkoszul/algebra.hpp"
#include "nkoszul/bar.hpp"
#include "nkoszul/io.hpp"
#include "nkoszul/koszul.hpp"
#include "nkoszul/reduction.hpp"

namespace nkoszul {

using Report = nlohmann::ordered_json;

struct Options {
  std::optional<long> nmax;
  long imax = 4;
  std::uint64_t seed = 0;
  std::optional<std::string> field;
  std::optional<long> degree;  // koszul-complex, homology: a single total degree
  std::optional<long> p;       // contracted
  std::optional<long> r;       // contracted, lemma3
  bool timing = false;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"hilbert", "dual",       "circ",     "bullet", "koszul-complex", "homology",
                                              "contracted", "koszulity", "tor", "lemma3", "reduce"};
  return names;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Lines of a text block, for reports.
inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

namespace detail {

struct Loaded {
  std::string path;
  AlgebraDefinition def;
};

inline std::string word_name(const std::vector<std::string>& gens, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + gens[w[i]];
  return s;
}

template <Field F>
Report run_with(const F& f, const std::string& command, const std::vector<Loaded>& in, const Options& opt) {
  const auto alg = [&](std::size_t i) { return to_algebra(in.at(i).def, f, in.at(i).path); };
  const auto& gens0 = in.at(0).def.generators;
  const std::size_t N = in.at(0).def.degree;
  const std::size_t nmax = static_cast<std::size_t>(opt.nmax.value_or(static_cast<long>(2 * N + 2)));
  const std::size_t imax = static_cast<std::size_t>(opt.imax);
  Report res = Report::object();

  if (command == "hilbert") {
    res["dims"] = hilbert_dims(alg(0), nmax);
  } else if (command == "dual") {
    const auto d = dual(alg(0));
    res["definition"] = split_lines(serialize(from_algebra(d, gens0)));
    res["dims"] = hilbert_dims(d, nmax);
  } else if (command == "circ" || command == "bullet") {
    const auto a = alg(0), b = alg(1);
    const auto c = command == "circ" ? circ(a, b) : bullet(a, b);
    res["definition"] = split_lines(serialize(from_algebra(c, product_generator_names(gens0, in[1].def.generators))));
    res["dims"] = hilbert_dims(c, nmax);
    if (command == "circ") res["dims_match_products"] = prop1_check(a, b, nmax);
  } else if (command == "koszul-complex" || command == "homology") {
    const auto a = alg(0);
    const std::size_t lo = opt.degree ? static_cast<std::size_t>(*opt.degree) : 0;
    const std::size_t hi = opt.degree ? lo : nmax;
    const auto kb = koszul_builder(a, hi);
    Report slices = Report::array();
    for (std::size_t n = lo; n <= hi; ++n) {
      const auto s = kb.K(n);
      check_nilpotent(s);
      Report item;
      item["n"] = n;
      if (command == "koszul-complex") {
        Report pos = Report::array();
        for (std::size_t k = 0; k < s.size(); ++k) pos.push_back(s.labels[k] + " : " + std::to_string(s.dims[k]));
        item["positions"] = pos;
        std::vector<std::size_t> ranks;
        for (const auto& m : s.maps) ranks.push_back(m.rank());
        item["map_ranks"] = ranks;
        item["d_N_zero"] = true;
      } else {
        const auto h = generalized_homology(s);
        item["acyclic"] = h.is_acyclic();
        Report nz = Report::array();
        for (const auto& [key, dim] : h.entries)
          if (dim) nz.push_back("p=" + std::to_string(key.first) + " m=" + std::to_string(key.second) + " : " +
                                std::to_string(dim));
        item["nonzero"] = nz;
      }
      slices.push_back(item);
    }
    res["slices"] = slices;
  } else if (command == "contracted") {
    const auto a = alg(0);
    const std::size_t p = static_cast<std::size_t>(opt.p.value_or(static_cast<long>(N - 1)));
    const std::size_t r = static_cast<std::size_t>(opt.r.value_or(0));
    const auto c = contracted(a, p, r, imax, nmax);
    res["p"] = p;
    res["r"] = r;
    res["k"] = c.k;
    res["homology"] = c.h;
    Report exact = Report::array();
    for (std::size_t i = 1; i <= imax; ++i) exact.push_back(c.exact_at(i));
    res["exact_at_positive_degrees"] = exact;
  } else if (command == "koszulity") {
    const auto v = koszulity_check(alg(0), nmax);
    res["verdict"] = v.to_string();
    res["window"] = {{"nmax", v.n_max}, {"imax", v.i_max}};
  } else if (command == "tor") {
    const auto t = tor_dims(alg(0), imax, nmax);
    res["tor"] = t;
    res["pure"] = tor_is_pure(t, N);
    res["window"] = {{"nmax", nmax}, {"imax", imax}};
  } else if (command == "lemma3") {
    const auto a = alg(0);
    const std::size_t r = static_cast<std::size_t>(opt.r.value_or(1));
    const auto l = lemma3_check(a.relations(), a.dim_e(), r);
    res["r"] = r;
    res["equal"] = l.equal;
    res["conclusion"] = to_string(l.conclusion);
  } else if (command == "reduce") {
    const auto a = alg(0);
    const auto op = reduction_operator(a.relations());
    const WordBasis basis(a.dim_e(), a.degree());
    Report rules = Report::array();
    for (auto lead : op.leading_words) {
      std::string rhs;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& c = op.S.matrix()(j, lead);
        if (f.is_zero(c)) continue;
        rhs += (rhs.empty() ? "" : " + ") + f.to_string(c) + "*" + word_name(gens0, basis.word(j));
      }
      rules.push_back(word_name(gens0, basis.word(lead)) + " -> " + (rhs.empty() ? "0" : rhs));
    }
    res["rewrites"] = rules;
    const auto props = check_reduction(op, a.relations());
    res["properties_hold"] = props.all();
  }
  return res;
}

}  // namespace detail

/// Runs one command on definition files. Throws ParseError, DimensionError
/// or std::invalid_argument for bad input and ContractViolation for
/// internal inconsistencies.
inline Report run(const std::string& command, const std::vector<std::string>& paths, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    throw std::invalid_argument("unknown command '" + command + "'");
  const std::size_t wanted = (command == "circ" || command == "bullet") ? 2 : 1;
  if (paths.size() != wanted)
    throw std::invalid_argument(command + " takes " + std::to_string(wanted) + " definition file" +
                                (wanted > 1 ? "s" : ""));
  if (opt.nmax && *opt.nmax <= 0) throw std::invalid_argument("--nmax must be positive");
  if (opt.imax <= 0) throw std::invalid_argument("--imax must be positive");
  if (opt.degree && *opt.degree < 0) throw std::invalid_argument("--degree must be non-negative");
  if (opt.p && *opt.p <= 0) throw std::invalid_argument("--p must be positive");
  if (opt.r && *opt.r < 0) throw std::invalid_argument("--r must be non-negative");

  std::vector<detail::Loaded> in;
  for (const auto& path : paths) {
    try {
      in.push_back({path, parse_definition(read_file(path))});
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), e.message() + " (in " + path + ")");
    }
  }
  for (std::size_t i = 1; i < in.size(); ++i)
    if (in[i].def.degree != in[0].def.degree)
      throw DimensionError("homogeneity degrees differ: " + std::to_string(in[0].def.degree) + " vs " +
                           std::to_string(in[i].def.degree));
  std::string field = opt.field ? normalize_field_spec(*opt.field) : in[0].def.field;
  if (!opt.field)
    for (const auto& l : in)
      if (l.def.field != field) throw std::invalid_argument("definitions use different fields; pass --field");
  const std::size_t N = in[0].def.degree;

  Report rep;
  rep["command"] = command;
  Report inputs = Report::array();
  for (const auto& l : in)
    inputs.push_back({{"path", l.path},
                      {"generators", l.def.generators},
                      {"degree", l.def.degree},
                      {"relations", l.def.relations.size()}});
  rep["inputs"] = inputs;
  rep["field"] = field;
  rep["parameters"] = {{"nmax", opt.nmax.value_or(static_cast<long>(2 * N + 2))}, {"imax", opt.imax}, {"seed", opt.seed}};
  if (opt.degree) rep["parameters"]["degree"] = *opt.degree;
  if (opt.p) rep["parameters"]["p"] = *opt.p;
  if (opt.r) rep["parameters"]["r"] = *opt.r;
  try {
    if (field == "rational")
      rep["results"] = detail::run_with(Rationals{}, command, in, opt);
    else
      rep["results"] = detail::run_with(PrimeField(std::stoull(field.substr(3))), command, in, opt);
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("coefficient not representable in ") + field + ": " + e.what());
  }
  if (opt.timing)
    rep["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace detail {

inline std::string scalar_text(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool is_scalar(const Report& v) { return !v.is_object() && !v.is_array(); }

inline void render(const Report& v, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  for (const auto& [key, val] : v.items()) {
    out << pad << key << ":";
    if (is_scalar(val)) {
      out << ' ' << scalar_text(val) << "\n";
    } else if (val.empty()) {
      out << (val.is_array() ? " []" : " {}") << "\n";
    } else if (val.is_array() && std::all_of(val.begin(), val.end(), [](const Report& x) { return x.is_number(); })) {
      out << ' ';
      for (std::size_t i = 0; i < val.size(); ++i) out << (i ? "," : "") << scalar_text(val[i]);
      out << "\n";
    } else if (val.is_array()) {
      out << "\n";
      for (const auto& item : val) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(item, indent + 4, out);
        } else if (item.is_array()) {
          out << pad << "  - ";
          for (std::size_t i = 0; i < item.size(); ++i) out << (i ? "," : "") << scalar_text(item[i]);
          out << "\n";
        } else {
          out << pad << "  - " << scalar_text(item) << "\n";
        }
      }
    } else {
      out << "\n";
      render(val, indent + 2, out);
    }
  }
}

}  // namespace detail

/// Indented key: value text; numeric lists are comma separated, tables
/// are one row per line.
inline std::string render_text(const Report& r) {
  std::ostringstream out;
  detail::render(r, 0, out);
  return out.str();
}

inline std::string render_json(const Report& r) { return r.dump(2) + "\n"; }

}  // namespace nkoszul
