#pragma once

// Permutations of {1, ..., n}, the fixed-point-free involution
// tau = (1 d+1)(2 d+2)...(d 2d) and the subsets of S_2d built from it.
//
// Composition convention (global): (p * q)(x) = p(q(x)), i.e. q acts first.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twisted_hurwitz {

inline constexpr int kMaxDegree = 16;

struct CycleDecomposition;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    check_degree(n);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) p.images_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// One-line notation with 1-based points.
  static Permutation from_one_line(const std::vector<int>& images) {
    const int n = static_cast<int>(images.size());
    check_degree(n);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(n);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
      const int x = images[i];
      if (x < 1 || x > n || seen[x - 1])
        throw std::invalid_argument("one-line images are not a bijection of {1..n}");
      seen[x - 1] = true;
      p.images_[i] = static_cast<std::uint8_t>(x - 1);
    }
    return p;
  }

  /// Cycle notation with 1-based points; omitted points are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(n);
    std::array<bool, kMaxDegree> used{};
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int x = cycle[k];
        if (x < 1 || x > n || used[x - 1])
          throw std::invalid_argument("cycles are not disjoint subsets of {1..n}");
        used[x - 1] = true;
        p.images_[x - 1] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()] - 1);
      }
    }
    return p;
  }

  static Permutation transposition(int n, int i, int j) {
    if (i == j) throw std::invalid_argument("transposition needs two distinct points");
    return from_cycles(n, {{i, j}});
  }

  int degree() const { return degree_; }

  /// Image of the 1-based point x.
  int operator()(int x) const { return images_[x - 1] + 1; }

  /// 0-based access for inner loops.
  int image0(int i) const { return images_[i]; }

  std::vector<int> one_line() const {
    std::vector<int> out(degree_);
    for (int i = 0; i < degree_; ++i) out[i] = images_[i] + 1;
    return out;
  }

  Permutation inverse() const {
    Permutation r;
    r.degree_ = degree_;
    for (int i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < degree_; ++i)
      if (images_[i] != i) return false;
    return true;
  }

  CycleDecomposition cycles() const;

  /// Cycle lengths, sorted non-increasing (fixed points included).
  std::vector<int> cycle_type() const {
    std::vector<int> lengths;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < degree_; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return lengths;
  }

  std::string to_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree_ != q.degree_) throw std::invalid_argument("degree mismatch in composition");
    Permutation r;
    r.degree_ = p.degree_;
    for (int i = 0; i < p.degree_; ++i) r.images_[i] = p.images_[q.images_[i]];
    return r;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    if (a.degree_ != b.degree_) return false;
    return std::equal(a.images_.begin(), a.images_.begin() + a.degree_, b.images_.begin());
  }

  /// Lexicographic on one-line form (degree first).
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.begin() + a.degree_,
                                                  b.images_.begin(), b.images_.begin() + b.degree_);
  }

 private:
  static void check_degree(int n) {
    if (n < 1 || n > kMaxDegree)
      throw std::invalid_argument("permutation degree must lie in 1.." + std::to_string(kMaxDegree));
  }

  std::array<std::uint8_t, kMaxDegree> images_{};
  std::uint8_t degree_ = 0;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

struct CycleDecomposition {
  int degree = 0;
  /// Maximal orbits, 1-based, each starting at its smallest point; fixed points included.
  std::vector<std::vector<int>> cycles;

  Permutation to_permutation() const { return Permutation::from_cycles(degree, cycles); }
};

inline CycleDecomposition Permutation::cycles() const {
  CycleDecomposition out;
  out.degree = degree_;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cycle.push_back(j + 1);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

inline std::string Permutation::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& cycle : cycles().cycles) {
    if (cycle.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) os << (k ? " " : "") << cycle[k];
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

/// tau = (1 d+1)(2 d+2)...(d 2d) in S_2d.
inline Permutation make_tau(int d) {
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  if (2 * d > kMaxDegree) throw std::invalid_argument("degree d too large for S_2d");
  std::vector<int> images(2 * d);
  for (int i = 1; i <= d; ++i) {
    images[i - 1] = i + d;
    images[i + d - 1] = i;
  }
  return Permutation::from_one_line(images);
}

namespace detail {

inline void require_degree(const Permutation& p, int d) {
  if (d < 1 || p.degree() != 2 * d) throw std::invalid_argument("permutation degree must be 2d");
}

}  // namespace detail

/// Membership in B_d, the centralizer of tau.
inline bool is_in_B(const Permutation& p, int d) {
  detail::require_degree(p, d);
  const int n = 2 * d;
  // p tau = tau p, pointwise: p(tau(i)) = tau(p(i)).
  for (int i = 0; i < n; ++i) {
    const int ti = i < d ? i + d : i - d;
    const int pi = p.image0(i);
    if (p.image0(ti) != (pi < d ? pi + d : pi - d)) return false;
  }
  return true;
}

/// Membership in C~(tau) = { p : tau p tau = p^-1 }.
inline bool is_in_C_twist(const Permutation& p, int d) {
  detail::require_degree(p, d);
  const Permutation tau = make_tau(d);
  return tau * p * tau == p.inverse();
}

/// Membership in B~_d: p in C~(tau) with no self-symmetric cycle, a cycle
/// being self-symmetric when tau maps its support onto itself.
inline bool is_in_B_twist(const Permutation& p, int d) {
  if (!is_in_C_twist(p, d)) return false;
  const int n = 2 * d;
  std::array<int, kMaxDegree> cycle_of{};
  std::array<bool, kMaxDegree> seen{};
  int id = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    for (int j = i; !seen[j]; j = p.image0(j)) {
      seen[j] = true;
      cycle_of[j] = id;
    }
    ++id;
  }
  // tau maps cycles of p to cycles of p^-1 (same supports), so a support is
  // tau-invariant iff one of its points lands in the same cycle.
  for (int i = 0; i < n; ++i) {
    const int ti = i < d ? i + d : i - d;
    if (cycle_of[i] == cycle_of[ti]) return false;
  }
  return true;
}

/// All transpositions (i j) of S_2d with j != tau(i), ordered by (i, j).
inline std::vector<Permutation> transpositions_admissible(int d) {
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  const int n = 2 * d;
  std::vector<Permutation> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (j != i + d) out.push_back(Permutation::transposition(n, i, j));
  return out;
}

/// Orbit of 1 under <generators> equals {1..n}; union-find over the generator graph.
inline bool group_acts_transitively(const std::vector<Permutation>& generators, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::array<int, kMaxDegree> parent{};
  std::iota(parent.begin(), parent.begin() + n, 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& g : generators) {
    if (g.degree() != n) throw std::invalid_argument("generator degree mismatch");
    for (int i = 0; i < n; ++i) {
      const int a = find(i), b = find(g.image0(i));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

/// S_n in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_one_line(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

/// B_d built directly as signed permutations (2^d d! elements), sorted.
inline std::vector<Permutation> hyperoctahedral_elements(int d) {
  if (d < 1 || 2 * d > kMaxDegree) throw std::invalid_argument("degree d out of range");
  std::vector<int> base(d);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Permutation> out;
  do {
    for (unsigned signs = 0; signs < (1u << d); ++signs) {
      std::vector<int> images(2 * d);
      for (int i = 0; i < d; ++i) {
        const int target = base[i] + ((signs >> i) & 1u ? d : 0);
        images[i] = target + 1;
        images[i + d] = (target < d ? target + d : target - d) + 1;
      }
      out.push_back(Permutation::from_one_line(images));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Involutions of S_n (identity included).
inline std::vector<Permutation> involutions(int n) {
  std::vector<Permutation> out;
  std::vector<int> images(n, 0);
  // Pair off the smallest unassigned point with itself or a later free point.
  auto rec = [&](auto&& self, int i) -> void {
    while (i < n && images[i] != 0) ++i;
    if (i == n) {
      out.push_back(Permutation::from_one_line(images));
      return;
    }
    images[i] = i + 1;
    self(self, i + 1);
    for (int j = i + 1; j < n; ++j) {
      if (images[j] != 0) continue;
      images[i] = j + 1;
      images[j] = i + 1;
      self(self, i + 1);
      images[j] = 0;
    }
    images[i] = 0;
  };
  rec(rec, 0);
  return out;
}

/// B~_d, sorted. Uses C~(tau) = { tau * s : s an involution }.
inline std::vector<Permutation> twisted_base_elements(int d) {
  const Permutation tau = make_tau(d);
  std::vector<Permutation> out;
  for (const auto& s : involutions(2 * d)) {
    Permutation p = tau * s;
    if (is_in_B_twist(p, d)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace twisted_hurwitz
