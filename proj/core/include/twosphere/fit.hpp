#pragma once

#include <vector>

namespace twosphere {

// Least-squares fit value ~ a / (eps |ln eps|) + b.
struct AsymptoticFit {
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
  std::vector<double> eps_list;
  std::vector<double> values;
  std::vector<double> compensated;  // value * eps |ln eps|
  double compensated_ratio = 0.0;   // max / min of the compensated sequence
};

// Throws DegenerateFit with fewer than 4 points or a span under one decade.
AsymptoticFit asymptotic_model(const std::vector<double>& eps_list, const std::vector<double>& values);

}  // namespace twosphere
