// Treat Pi(alpha, .) as a black box and recover alpha from evaluations only.

#include <iostream>

#include "slinf/slinf.hpp"

int main() {
  using namespace slinf;

  const Alpha truth = make_alpha({-1.0, 0.5, 2.0});
  const auto oracle = [&truth](double lam) { return pi_eval(truth, lam); };

  const Alpha recovered = recover_alpha(oracle);
  std::cout << "true:      " << alpha_to_json(truth).dump() << "\n";
  std::cout << "recovered: " << alpha_to_json(recovered).dump() << "\n";
  std::cout << "sup error: " << param_distance(truth, recovered) << "\n";
  return 0;
}
