// Degree 2, genus 3 in detail: the conjugators of one tuple, the twisted
// covers with their multiplicities, and M acting on b_(2).

#include <iostream>

#include "twisted_hurwitz.hpp"

using namespace twisted_hurwitz;

int main() {
  const auto sigma = Permutation::from_cycles(4, {{1, 4}, {2, 3}});
  const std::vector<Permutation> etas{Permutation::from_cycles(4, {{1, 4}}), Permutation::from_cycles(4, {{1, 2}})};
  std::cout << "sigma = " << sigma << ", etas = " << etas[0] << " " << etas[1] << "\n  alpha in";
  for (const auto& a : admissible_conjugators(sigma, etas, 2)) std::cout << " " << a;
  std::cout << "\n";

  const auto r = count_twisted(2, 3, true);
  std::cout << "tuples " << r.tuple_count << " / " << r.normalization << " = " << to_string(r.value) << "\n";

  for (const auto& tc : enumerate_twisted_covers(2, 3)) {
    std::cout << "cover over quotient " << tc.quotient_index << ":";
    for (const auto& e : tc.quotient.edges)
      std::cout << " x" << e.source + 1 << "->x" << e.target + 1 << "(w=" << e.weight << ",k=" << e.crossings << ")";
    std::cout << "  |Aut| = " << tc.lift.automorphism_count << "  mult = " << to_string(tc.multiplicity) << "\n";
  }

  std::cout << "M b(2) = " << apply_M(FockVector::basis(Partition{2}), 2).to_string() << "\n";
  std::cout << "<b(2)|M^2|b(2)> = " << matrix_element(Partition{2}, Partition{2}, 2).to_string() << "\n";
}
