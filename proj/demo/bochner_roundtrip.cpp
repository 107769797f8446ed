// Synthesize a positive-type function from a two-atom measure, then recover
// the measure from sampled values by nonnegative least squares.

#include <iostream>

#include "slinf/slinf.hpp"

int main() {
  using namespace slinf;

  const DiscreteParamMeasure truth({make_alpha({0.0}), make_alpha({1.0})}, {0.4, 0.6});
  std::cout << "true measure: 0.4 at (0), 0.6 at (1)\n";

  std::vector<std::pair<GroupElement, complexd>> samples;
  for (const CartanProfile& prof : lowdisc_profiles(60, 6))
    samples.emplace_back(GroupElement::from_profile(prof), synth_positive(truth, prof));

  const std::vector<Alpha> grid{Alpha{}, make_alpha({0.0}), make_alpha({1.0}),
                                make_alpha({2.0})};
  const FitResult fit = fit_measure(samples, grid);

  std::cout << "recovered (residual " << fit.residual << "):\n";
  for (std::size_t k = 0; k < fit.measure.size(); ++k) {
    std::cout << "  weight " << fit.measure.weights()[k] << " at "
              << alpha_to_json(fit.measure.atoms()[k]).dump() << "\n";
  }

  const GroupElement g0 = canonical_g0();
  std::cout << "phi(g0) synthesized: " << synth_positive(truth, g0)
            << "  refit: " << synth_positive(fit.measure, g0) << "\n";
  return 0;
}
