// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nkoszul/cli.hpp"
#include "nkoszul/nkoszul.hpp"

using namespace nkoszul;

namespace {

const Rationals Q;
const PrimeField GFP(kDefaultPrime);

struct Outcome {
  bool pass = true;
  std::string detail;
};

template <Field F>
Morphism<F> random_iso(const F& f, std::size_t d, std::size_t N, Rng& rng) {
  const auto a = random_algebra(f, d, N, rng);
  const auto g = random_invertible(f, d, rng);
  return Morphism<F>(a, NHomogeneousAlgebra<F>(d, N, tensor_power_image(g, a.relations(), N)), g);
}

/// Non-isomorphisms: rank-deficient maps, or invertible maps into strictly
/// larger relation spaces.
template <Field F>
Morphism<F> random_non_iso(const F& f, std::size_t d, std::size_t N, bool deficient, Rng& rng) {
  const std::size_t n = ipow(d, N);
  for (;;) {
    const auto a = random_algebra(f, d, N, rng);
    const auto map = deficient ? random_map_of_rank(f, d, d, random_index(rng, 0, d - 1), rng) : random_invertible(f, d, rng);
    const auto forced = tensor_power_image(map, a.relations(), N);
    auto target = forced;
    if (deficient) {
      target = sum(forced, random_relations(f, n, rng));
    } else {
      if (forced.is_full()) continue;
      while (target.dim() == forced.dim()) target = sum(forced, random_subspace(f, n, random_index(rng, 1, n - forced.dim()), rng));
    }
    return Morphism<F>(a, NHomogeneousAlgebra<F>(d, N, target), map);
  }
}

// Each draw of the first criterion runs in a child process under a memory
// and time budget, so a draw too large for the machine is reported instead
// of taking the whole run down.
constexpr rlim_t kDrawMemory = rlim_t{3} << 30;
constexpr rlim_t kDrawSeconds = 120;

enum class DrawStatus { Nilpotent, Violation, OverBudget };

DrawStatus nilpotent_draw(const NHomogeneousAlgebra<PrimeField>& a) {
  std::cout.flush();
  const pid_t pid = fork();
  if (pid == 0) {
    const rlimit mem{kDrawMemory, kDrawMemory};
    const rlimit cpu{kDrawSeconds, kDrawSeconds};
    setrlimit(RLIMIT_AS, &mem);
    setrlimit(RLIMIT_CPU, &cpu);
    try {
      const std::size_t top = 2 * a.degree() + 2;
      const auto kb = koszul_builder(a, top);
      for (std::size_t n = 0; n <= top; ++n)
        if (!is_nilpotent(kb.K(n))) _exit(1);
      for (const auto& l : kb.L_all())
        if (!is_nilpotent(l)) _exit(1);
      _exit(0);
    } catch (const std::bad_alloc&) {
      _exit(3);
    }
  }
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return DrawStatus::Nilpotent;
  if (WIFEXITED(status) && WEXITSTATUS(status) == 1) return DrawStatus::Violation;
  return DrawStatus::OverBudget;
}

Outcome n_differential_law() {
  Rng rng(1001);
  std::size_t verified = 0;
  std::vector<std::string> over;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t N = random_index(rng, 2, 4), d = random_index(rng, 1, 3);
    const auto a = random_algebra(GFP, d, N, rng);
    switch (nilpotent_draw(a)) {
      case DrawStatus::Nilpotent:
        ++verified;
        break;
      case DrawStatus::Violation:
        return {false, "d^N != 0 for draw " + std::to_string(trial)};
      case DrawStatus::OverBudget:
        over.push_back("N=" + std::to_string(N) + ",dimE=" + std::to_string(d) +
                       ",dimR=" + std::to_string(a.relations().dim()));
        break;
    }
  }
  std::string detail = std::to_string(verified) + "/200 algebras verified over GF(p) up to degree 2N+2";
  if (over.empty()) return {true, detail};
  detail += "; over the " + std::to_string(kDrawSeconds) + "s CPU/" + std::to_string(kDrawMemory >> 30) +
            "GB per-algebra budget:";
  for (const auto& o : over) detail += " " + o;
  return {false, detail};
}

Outcome degree_zero_homology() {
  Rng rng(1002);
  std::size_t tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = random_index(rng, 2, 4), d = random_index(rng, 1, 3);
    const bool iso = trial % 2 == 0;
    const auto mor = iso ? random_iso(Q, d, N, rng) : random_non_iso(Q, d, N, trial % 4 == 1 || d == 1, rng);
    const auto h = generalized_homology(koszul_K(mor, 0));
    for (std::size_t p = 1; p < N; ++p, ++tested)
      if (h.at(p, 0) != 1) return {false, "p=" + std::to_string(p) + " trial " + std::to_string(trial)};
  }
  return {true, std::to_string(tested) + " (f, p) pairs"};
}

Outcome lemma2_both_directions() {
  Rng rng(1003);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t N = random_index(rng, 2, 3), d = random_index(rng, 1, 3);
    const auto r = lemma2_check(random_iso(Q, d, N, rng));
    if (!r.is_iso || !r.acyclic_n_minus_1 || !r.acyclic_n) return {false, "isomorphism trial " + std::to_string(trial)};
  }
  std::size_t deficient = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t N = random_index(rng, 2, 3), d = random_index(rng, 1, 3);
    const bool def = trial % 2 == 0 || d == 1;
    deficient += def;
    const auto r = lemma2_check(random_non_iso(Q, d, N, def, rng));
    if (r.is_iso || (r.acyclic_n_minus_1 && r.acyclic_n)) return {false, "non-isomorphism trial " + std::to_string(trial)};
  }
  return {true, "50 isomorphisms acyclic; 50 non-isomorphisms (" + std::to_string(deficient) +
                    " rank-deficient) not acyclic"};
}

Outcome proposition2_sweep() {
  Rng rng(1004);
  for (std::size_t r = 1; r <= 7; ++r)
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_algebra_with_dim(Q, 2, 3, r, rng);
      if (is_acyclic(koszul_builder(a, 4).K(4))) return {false, "dim R=" + std::to_string(r) + " acyclic"};
    }
  for (const auto& a : {tensor_algebra(Q, 2, 3), truncated_tensor_algebra(Q, 2, 3)}) {
    const auto kb = koszul_builder(a, 8);
    for (std::size_t n = 2; n <= 8; ++n)
      if (!is_acyclic(kb.K(n))) return {false, a.label() + " degree " + std::to_string(n)};
  }
  return {true, "140 proper R with K^4 not acyclic; R=0 and R=E^3 acyclic for 2<=n<=8"};
}

Outcome proposition4() {
  Rng rng(1005);
  std::size_t contracted_count = 0;
  for (std::size_t r = 0; r + 2 <= 3; ++r)
    for (std::size_t p = r + 1; p < 3; ++p) {
      if (p == 2 && r == 0) continue;
      for (int trial = 0; trial < 20; ++trial, ++contracted_count) {
        const auto a = random_algebra_with_dim(Q, 2, 3, random_index(rng, 1, 7), rng);
        if (contracted(a, p, r, 1, 8).exact_at(1))
          return {false, "(p,r)=(" + std::to_string(p) + "," + std::to_string(r) + ") exact at degree 1"};
      }
    }
  std::size_t h0_count = 0;
  for (std::size_t N = 2; N <= 4; ++N)
    for (std::size_t r = 0; r + 2 <= N; ++r)
      for (std::size_t p = r + 1; p < N; ++p)
        for (int trial = 0; trial < 5; ++trial, ++h0_count) {
          const std::size_t d = random_index(rng, 1, N == 4 ? 2 : 3);
          const auto a = random_algebra(GFP, d, N, rng);
          const std::size_t n_max = 2 * N;
          const auto c = contracted(a, p, r, 1, n_max);
          for (std::size_t n = 0; n <= n_max; ++n) {
            const bool inside = n >= r && n - r <= N - p - 1;
            if (c.h[0][n] != (inside ? ipow(d, n) : 0))
              return {false, "H_0 mismatch N=" + std::to_string(N) + " p=" + std::to_string(p) +
                                 " r=" + std::to_string(r) + " n=" + std::to_string(n)};
          }
        }
  return {true, std::to_string(contracted_count) + " inexact C_{p,r}; " + std::to_string(h0_count) +
                    " H_0 tables match, N<=4"};
}

Outcome duality_identities() {
  Rng rng(1006);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = random_index(rng, 2, 3);
    const std::size_t top = N == 2 ? 3 : 2;
    const auto a = random_algebra(Q, random_index(rng, 1, top), N, rng);
    const auto b = random_algebra(Q, random_index(rng, 1, top), N, rng);
    if (!(dual(dual(a)) == a)) return {false, "double dual, trial " + std::to_string(trial)};
    if (!(dual(circ(a, b)) == bullet(dual(a), dual(b)))) return {false, "circ/bullet duality, trial " + std::to_string(trial)};
    if (!prop1_check(a, b, N + 2)) return {false, "dimension law, trial " + std::to_string(trial)};
  }
  return {true, "100 random pairs, dimension law up to n=N+2"};
}

Outcome koszulity_cross_validation() {
  std::vector<NHomogeneousAlgebra<PrimeField>> fixtures{tensor_algebra(GFP, 2, 3), truncated_tensor_algebra(GFP, 2, 3),
                                                        commutative_polynomials(GFP, 2), nilpotent_unit(GFP, 3)};
  Rng rng(1007);
  for (int i = 0; i < 20; ++i) fixtures.push_back(random_algebra(GFP, 2, 3, rng));
  std::size_t koszul = 0;
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const auto& a = fixtures[k];
    const std::size_t N = a.degree(), n_max = 2 * N + 2, i_max = 4;
    const auto tor = tor_dims(a, i_max, n_max);
    for (std::size_t n = 0; n <= n_max; ++n)
      if (tor[2][n] != (n == N ? a.relations().dim() : 0))
        return {false, "Tor_2 of fixture " + std::to_string(k) + " at degree " + std::to_string(n)};
    const bool pure = tor_is_pure(tor, N);
    // exactness of the Koszul complex through degree i_max - 1 is what Tor up to i_max sees
    const auto matched = koszulity_check(a, n_max, i_max - 1);
    const auto full = koszulity_check(a, n_max);
    if (matched.koszul != pure)
      return {false, "fixture " + std::to_string(k) + ": " + matched.to_string() + " but Tor pure=" + std::to_string(pure)};
    if (full.koszul && !pure) return {false, "fixture " + std::to_string(k) + ": full window Koszul, Tor impure"};
    koszul += full.koszul;
  }
  return {true, std::to_string(fixtures.size()) + " fixtures consistent (" + std::to_string(koszul) +
                    " KoszulUpTo(2N+2)), Tor_2 = R in degree N"};
}

Outcome lemma3_and_reduction() {
  std::size_t instances = 0;
  auto check_instance = [&](const Subspace<Rationals>& rel, std::size_t r, bool expect_equal) -> bool {
    ++instances;
    const auto res = lemma3_check(rel, 2, r);
    if (res.equal != expect_equal) return false;
    const auto op = reduction_operator(rel);
    if (!check_reduction(op, rel).all()) return false;
    const std::size_t pad = ipow(2, r);
    const auto id = LinearMap<Rationals>::identity(Q, pad);
    return kron(op.S, id) == reduction_operator(pad_subspace(rel, 1, pad)).S &&
           kron(id, op.S) == reduction_operator(pad_subspace(rel, pad, 1)).S;
  };
  for (std::size_t N = 2; N <= 3; ++N) {
    const std::size_t n = ipow(2, N);
    for (std::size_t r = 1; r <= 2; ++r) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::set<std::size_t> words;
        for (std::size_t w = 0; w < n; ++w)
          if (mask >> w & 1) words.insert(w);
        if (!check_instance(monomial_subspace(Q, n, words), r, words.empty() || words.size() == n))
          return {false, "monomial N=" + std::to_string(N) + " r=" + std::to_string(r) + " mask=" + std::to_string(mask)};
      }
      Rng rng(1008 + 10 * N + r);
      for (int trial = 0; trial < 500; ++trial) {
        const auto rel = random_subspace(Q, n, random_index(rng, 1, n - 1), rng);
        if (!check_instance(rel, r, false))
          return {false, "random N=" + std::to_string(N) + " r=" + std::to_string(r) + " trial " + std::to_string(trial)};
      }
    }
  }
  return {true, std::to_string(instances) + " instances, equality only for R=0 and R=full"};
}

Outcome convolution_lemma() {
  Rng rng(1009);
  std::size_t literal = 0, nonzero = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t N = random_index(rng, 2, 3), d = 2;
    const auto mor = trial % 2 == 0 ? random_iso(Q, d, N, rng) : random_non_iso(Q, d, N, trial % 4 == 1, rng);
    const std::size_t top = N + 2;
    Convolution<Rationals> conv(mor.source(), mor.target(), top);
    const auto alpha = conv.from_morphism(mor.map());
    if (!conv.convolution_power(alpha, N).matrix.is_zero()) return {false, "alpha^{*N} != 0, trial " + std::to_string(trial)};
    const auto tr = conv.truncation(top, top);
    const std::size_t a1 = random_index(rng, 0, top / 2), b1 = random_index(rng, 0, top / 2);
    const std::size_t a2 = random_index(rng, 0, top / 2), b2 = random_index(rng, 0, top / 2);
    const auto x = conv.random_hom(a1, a2, rng), y = conv.random_hom(b1, b2, rng);
    const auto dx = conv.d(x, tr), dy = conv.d(y, tr), dxy = conv.d(conv.convolve(x, y), tr);
    if (!(dy * dx == dxy)) return {false, "d_beta d_alpha != d_{alpha*beta}, trial " + std::to_string(trial)};
    nonzero += !dxy.is_zero();
    literal += dx * dy == dxy;
  }
  return {true, "50 pairs (" + std::to_string(nonzero) +
                    " with d_{alpha*beta} != 0): d_beta o d_alpha = d_{alpha*beta}, d_alpha applied first; "
                    "the right-to-left reading d_alpha o d_beta held in " +
                    std::to_string(literal) + "/50; alpha^{*N} = 0 for every morphism"};
}

Outcome cli_determinism() {
  const std::string dir = NKOSZUL_ALGEBRA_DIR;
  struct Case {
    std::string command, file;
    long nmax;
  };
  const std::vector<Case> cases{{"hilbert", "lambda3.alg", 5}, {"dual", "kt3.alg", 8}, {"koszulity", "kxy.alg", 6}};
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t k = 0; k < cases.size(); ++k) {
      Options opt;
      opt.nmax = cases[k].nmax;
      const auto rep = run(cases[k].command, {dir + "/" + cases[k].file}, opt);
      const std::string out = render_text(rep) + render_json(rep);
      if (pass == 0) {
        first.push_back(out);
        continue;
      }
      if (out != first[k]) return {false, cases[k].command + " differs between runs"};
    }
  Options opt;
  opt.nmax = 5;
  if (run("hilbert", {dir + "/lambda3.alg"}, opt)["results"]["dims"] != Report({1, 1, 1, 0, 0, 0}))
    return {false, "hilbert of Lambda_3 wrong"};
  opt.nmax = 6;
  if (run("koszulity", {dir + "/kxy.alg"}, opt)["results"]["verdict"] != "KoszulUpTo(6)")
    return {false, "koszulity of K[x,y] wrong"};
  const auto dual_report = run("dual", {dir + "/kt3.alg"}, {});
  std::string text;
  for (const auto& line : dual_report["results"]["definition"]) text += line.get<std::string>() + "\n";
  if (!(to_algebra(parse_definition(text), Q) == nilpotent_unit(Q, 3))) return {false, "dual of K[t] wrong"};
  return {true, "3 reports byte-identical across runs, values as expected"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"d^N = 0 on K(id_A) and L(id_A)", n_differential_law},
      {"degree-0 homology is K", degree_zero_homology},
      {"acyclic in degrees N-1, N iff isomorphism", lemma2_both_directions},
      {"K(A)^{N+1} acyclic only for R = 0, E^N", proposition2_sweep},
      {"contracted complexes and H_0", proposition4},
      {"duality identities and dimension law", duality_identities},
      {"Koszulity vs Tor purity", koszulity_cross_validation},
      {"R (x) E^r = E^r (x) R and reduction operators", lemma3_and_reduction},
      {"convolution operators", convolution_lemma},
      {"CLI determinism", cli_determinism},
  };
  // optional arguments select criteria by number
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << " ["
              << t << "]" << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
