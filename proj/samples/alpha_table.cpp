// Prints the alpha sequence of a few configurations, with the certificate
// behind each bound.

#include <iostream>

#include "fatpoints/fatpoints.hpp"

using namespace fatpoints;

static void show(const char* name, const std::vector<ProjectivePoint>& points, int k_max) {
  AlphaOptions opts;
  opts.certify = RankStrategy::exact();
  const AlphaReport rep = alpha_sequence(points, k_max, opts);
  std::cout << name << "\n";
  for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
    const auto& d = rep.details[i];
    std::cout << "  alpha(" << i + 1 << "Z) = " << rep.alphas[i] << "   empty below: " << to_string(d.lower)
              << ", nonempty at: " << to_string(d.upper) << "\n";
  }
}

int main() {
  show("3 general points", general(3, 1), 6);
  show("6 points on a conic", on_conic(6), 5);
  show("type-9 configuration", type9().points, 5);

  const auto star4 = star(4, 1);
  if (auto w = detect_line_arrangement(star4.points)) {
    std::cout << "star of 4 lines: arrangement with " << w->lines.size() << " lines\n";
  }
  return 0;
}
