// Computes h~_{d,g} four ways and prints them side by side.
//   sample_four_methods [d_max] [g_max]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "twisted_hurwitz.hpp"

using namespace twisted_hurwitz;

int main(int argc, char** argv) {
  const int d_max = argc > 1 ? std::atoi(argv[1]) : 3;
  const int g_max = argc > 2 ? std::atoi(argv[2]) : 4;
  std::printf("%2s %2s %10s %10s %10s | %10s %10s\n", "d", "g", "symgroup", "tropical", "feynman", "symgroup*",
              "fock");
  for (int d = 1; d <= d_max; ++d)
    for (int g = 1; g <= g_max; ++g) {
      const std::string sym = to_string(count_twisted(d, g, true).value);
      const std::string trop = g >= 2 ? to_string(count_tropical(d, g)) : "-";
      const std::string feyn = g > 2 ? to_string(generating_series_coefficient(d, g)) : "-";
      const std::string sym_dis = to_string(count_twisted(d, g, false).value);
      const std::string fock = to_string(elliptic_disconnected(d, g));
      std::printf("%2d %2d %10s %10s %10s | %10s %10s\n", d, g, sym.c_str(), trop.c_str(), feyn.c_str(),
                  sym_dis.c_str(), fock.c_str());
    }
}
