#pragma once

// Brute-force counts of monodromy tuples: classical elliptic Hurwitz numbers
// (tuples in S_d) and twisted elliptic Hurwitz numbers (tuples in S_2d).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twisted_hurwitz/perm_core.hpp"
#include "twisted_hurwitz/rational.hpp"

namespace twisted_hurwitz {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double projected, std::uint64_t budget)
      : std::runtime_error("budget exceeded: projected " + std::to_string(projected) +
                           " elementary steps > budget " + std::to_string(budget)),
        projected_(projected),
        budget_(budget) {}

  double projected() const { return projected_; }
  std::uint64_t budget() const { return budget_; }

 private:
  double projected_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000ULL;

struct SearchOptions {
  /// Cap on the product of loop cardinalities.
  std::uint64_t budget = kDefaultStepBudget;
  /// Worker threads for the outer sigma loop; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Reads TH_BUDGET when set; falls back to the default otherwise.
inline std::uint64_t budget_from_env() {
  const char* raw = std::getenv("TH_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultStepBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0)
    throw std::invalid_argument("TH_BUDGET must be a positive integer");
  return v;
}

struct HurwitzQuery {
  int d = 1;
  int g = 1;
  bool twisted = true;
  bool connected = true;
};

struct HurwitzResult {
  Rational value;
  Integer tuple_count;
  /// d! for classical queries, (2d)!! for twisted ones.
  Integer normalization;
};

struct TwistedTuple {
  Permutation sigma;
  std::vector<Permutation> etas;
  Permutation alpha;
};

namespace detail {

inline void check_budget(double projected, std::uint64_t budget) {
  if (projected > static_cast<double>(budget)) throw BudgetExceeded(projected, budget);
}

/// Number of involutions in S_n; upper bound for |C~(tau)| = |B~_d| candidates.
inline double involution_count(int n) {
  double a = 1, b = 1;  // I(0), I(1)
  for (int k = 2; k <= n; ++k) {
    const double c = b + (k - 1) * a;
    a = b;
    b = c;
  }
  return n == 0 ? 1 : b;
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

/// Runs work(i) for i in [0, n) on up to `threads` workers; results land at
/// index i, so the reduction order is fixed.
template <typename Work>
std::vector<std::uint64_t> parallel_counts(std::size_t n, unsigned threads, Work work) {
  std::vector<std::uint64_t> out(n, 0);
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

struct UnionFind {
  std::array<int, kMaxDegree> parent{};
  int components = 0;

  explicit UnionFind(int n) : components(n) { std::iota(parent.begin(), parent.begin() + n, 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void add(const Permutation& p) {
    for (int i = 0; i < p.degree(); ++i) {
      const int a = find(i), b = find(p.image0(i));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
};

/// alpha * sigma == target * alpha, i.e. alpha sigma alpha^-1 = target.
inline bool conjugates(const Permutation& alpha, const Permutation& sigma, const Permutation& target) {
  for (int i = 0; i < sigma.degree(); ++i)
    if (alpha.image0(sigma.image0(i)) != target.image0(alpha.image0(i))) return false;
  return true;
}

/// Shared search state for the twisted enumeration.
struct TwistedSearch {
  int d;
  int g;
  bool connected;
  Permutation tau;
  std::vector<Permutation> etas;          // admissible transpositions
  std::vector<Permutation> twisted_etas;  // tau * eta * tau, same indexing
  std::vector<Permutation> centralizer;   // B_d

  TwistedSearch(int d_, int g_, bool connected_)
      : d(d_), g(g_), connected(connected_), tau(make_tau(d_)), etas(transpositions_admissible(d_)),
        centralizer(hyperoctahedral_elements(d_)) {
    for (const auto& e : etas) twisted_etas.push_back(tau * e * tau);
  }

  /// Visits every counted (sigma, eta-index tuple, alpha) for a fixed sigma.
  template <typename Visit>
  void run_sigma(const Permutation& sigma, Visit&& visit) const {
    const int slots = g - 1;
    std::vector<int> choice(slots, 0);
    const auto sigma_type = sigma.cycle_type();
    auto rec = [&](auto&& self, int level, const Permutation& lhs) -> void {
      if (level == slots) {
        if (lhs.cycle_type() != sigma_type) return;
        UnionFind base(2 * d);
        if (connected) {
          base.add(sigma);
          for (int s = 0; s < slots; ++s) {
            base.add(etas[choice[s]]);
            base.add(twisted_etas[choice[s]]);
          }
        }
        for (const auto& alpha : centralizer) {
          if (!conjugates(alpha, sigma, lhs)) continue;
          if (connected && base.components > 1) {
            UnionFind uf = base;
            uf.add(alpha);
            if (uf.components > 1) continue;
          }
          visit(choice, alpha);
        }
        return;
      }
      for (std::size_t k = 0; k < etas.size(); ++k) {
        choice[level] = static_cast<int>(k);
        self(self, level + 1, etas[k] * lhs * twisted_etas[k]);
      }
    };
    rec(rec, 0, sigma);
  }
};

inline void validate_twisted(int d, int g) {
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  if (g < 1) throw std::invalid_argument("genus g must be at least 1");
  if (2 * d > kMaxDegree) throw std::invalid_argument("degree d too large for S_2d");
}

inline double projected_twisted_steps(int d, int g) {
  const double adm = 2.0 * d * (2 * d - 1) / 2 - d;
  double b = 1;
  for (int k = 1; k <= d; ++k) b *= 2.0 * k;
  double steps = involution_count(2 * d) * b;
  for (int s = 0; s < g - 1; ++s) steps *= adm;
  return steps;
}

}  // namespace detail

/// The conjugated product eta_{g-1} ... eta_1 sigma (tau eta_1 tau) ... (tau eta_{g-1} tau).
/// eta_1 acts innermost: each step is one cut-or-join of the twisted pair.
inline Permutation twisted_product(const Permutation& sigma, const std::vector<Permutation>& etas, int d) {
  const Permutation tau = make_tau(d);
  Permutation lhs = sigma;
  for (const auto& eta : etas) lhs = eta * lhs * (tau * eta * tau);
  return lhs;
}

/// All alpha in B_d with alpha sigma alpha^-1 = twisted_product(sigma, etas),
/// optionally restricted to those making the generated group transitive.
inline std::vector<Permutation> admissible_conjugators(const Permutation& sigma,
                                                       const std::vector<Permutation>& etas, int d,
                                                       bool connected = false) {
  const Permutation tau = make_tau(d);
  const Permutation lhs = twisted_product(sigma, etas, d);
  std::vector<Permutation> out;
  for (const auto& alpha : hyperoctahedral_elements(d)) {
    if (!detail::conjugates(alpha, sigma, lhs)) continue;
    if (connected) {
      std::vector<Permutation> gens{sigma, alpha};
      for (const auto& e : etas) {
        gens.push_back(e);
        gens.push_back(tau * e * tau);
      }
      if (!group_acts_transitively(gens, 2 * d)) continue;
    }
    out.push_back(alpha);
  }
  return out;
}

/// Streams every counted twisted tuple once, ordered by sigma, then the eta
/// tuple (lexicographic in admissible-transposition order), then alpha.
inline void for_each_twisted_tuple(int d, int g, bool connected,
                                   const std::function<void(const TwistedTuple&)>& visit,
                                   const SearchOptions& options = {}) {
  detail::validate_twisted(d, g);
  detail::check_budget(detail::projected_twisted_steps(d, g), options.budget);
  const detail::TwistedSearch search(d, g, connected);
  TwistedTuple t;
  for (const auto& sigma : twisted_base_elements(d)) {
    t.sigma = sigma;
    search.run_sigma(sigma, [&](const std::vector<int>& choice, const Permutation& alpha) {
      t.etas.clear();
      for (int k : choice) t.etas.push_back(search.etas[k]);
      t.alpha = alpha;
      visit(t);
    });
  }
}

inline std::vector<TwistedTuple> enumerate_twisted_tuples(int d, int g, bool connected = true,
                                                          const SearchOptions& options = {}) {
  std::vector<TwistedTuple> out;
  for_each_twisted_tuple(d, g, connected, [&](const TwistedTuple& t) { out.push_back(t); }, options);
  return out;
}

inline HurwitzResult count_twisted(int d, int g, bool connected, const SearchOptions& options = {}) {
  detail::validate_twisted(d, g);
  detail::check_budget(detail::projected_twisted_steps(d, g), options.budget);
  const detail::TwistedSearch search(d, g, connected);
  const auto sigmas = twisted_base_elements(d);
  const auto counts = detail::parallel_counts(sigmas.size(), options.threads, [&](std::size_t i) {
    std::uint64_t n = 0;
    search.run_sigma(sigmas[i], [&](const std::vector<int>&, const Permutation&) { ++n; });
    return n;
  });
  HurwitzResult r;
  r.tuple_count = 0;
  for (auto c : counts) r.tuple_count += c;
  r.normalization = double_factorial_even(d);
  r.value = Rational(r.tuple_count, r.normalization);
  return r;
}

/// Classical elliptic Hurwitz number: tuples (sigma, t_1..t_{2g-2}, alpha) in S_d
/// with t_{2g-2} ... t_1 sigma = alpha sigma alpha^-1.
inline HurwitzResult count_classical(int d, int g, bool connected, const SearchOptions& options = {}) {
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  if (g < 1) throw std::invalid_argument("genus g must be at least 1");
  if (d > kMaxDegree) throw std::invalid_argument("degree d too large");
  std::vector<Permutation> transpositions;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) transpositions.push_back(Permutation::transposition(d, i, j));
  const int slots = 2 * g - 2;
  if (slots > 0 && transpositions.empty()) {
    HurwitzResult r{Rational(0), Integer(0), factorial(d)};
    return r;
  }
  double projected = 1;
  for (int k = 2; k <= d; ++k) projected *= k * k;
  for (int s = 0; s < slots; ++s) projected *= static_cast<double>(transpositions.size());
  detail::check_budget(projected, options.budget);

  const auto group = all_permutations(d);
  const auto counts = detail::parallel_counts(group.size(), options.threads, [&](std::size_t i) {
    const Permutation& sigma = group[i];
    const auto sigma_type = sigma.cycle_type();
    std::uint64_t n = 0;
    std::vector<int> choice(slots, 0);
    auto rec = [&](auto&& self, int level, const Permutation& lhs) -> void {
      if (level == slots) {
        if (lhs.cycle_type() != sigma_type) return;
        detail::UnionFind base(d);
        if (connected) {
          base.add(sigma);
          for (int k : choice) base.add(transpositions[k]);
        }
        for (const auto& alpha : group) {
          if (!detail::conjugates(alpha, sigma, lhs)) continue;
          if (connected && base.components > 1) {
            detail::UnionFind uf = base;
            uf.add(alpha);
            if (uf.components > 1) continue;
          }
          ++n;
        }
        return;
      }
      for (std::size_t k = 0; k < transpositions.size(); ++k) {
        choice[level] = static_cast<int>(k);
        self(self, level + 1, transpositions[k] * lhs);
      }
    };
    rec(rec, 0, sigma);
    return n;
  });
  HurwitzResult r;
  r.tuple_count = 0;
  for (auto c : counts) r.tuple_count += c;
  r.normalization = factorial(d);
  r.value = Rational(r.tuple_count, r.normalization);
  return r;
}

}  // namespace twisted_hurwitz
