#include "twosphere/fit.hpp"

#include <algorithm>
#include <cmath>

#include "twosphere/error.hpp"

namespace twosphere {

AsymptoticFit asymptotic_model(const std::vector<double>& eps_list, const std::vector<double>& values) {
  const std::size_t n = eps_list.size();
  if (n != values.size()) throw Error(ErrorCode::InvalidValue, "eps_list and values differ in length");
  if (n < 4) throw Error(ErrorCode::DegenerateFit, "need at least 4 points");
  for (double e : eps_list)
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::DegenerateFit, "eps values must lie in (0, 1)");
  const auto [lo, hi] = std::minmax_element(eps_list.begin(), eps_list.end());
  if (*hi / *lo < 10.0) throw Error(ErrorCode::DegenerateFit, "eps values span less than one decade");

  AsymptoticFit f;
  f.eps_list = eps_list;
  f.values = values;
  std::vector<double> s(n);
  double ms = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = eps_list[i] * std::abs(std::log(eps_list[i]));
    s[i] = 1.0 / w;
    f.compensated.push_back(values[i] * w);
    ms += s[i];
    mv += values[i];
  }
  ms /= n;
  mv /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (s[i] - ms) * (s[i] - ms);
    sxy += (s[i] - ms) * (values[i] - mv);
    syy += (values[i] - mv) * (values[i] - mv);
  }
  f.a = sxy / sxx;
  f.b = mv - f.a * ms;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = values[i] - (f.a * s[i] + f.b);
    ss_res += e * e;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  const auto [cmin, cmax] = std::minmax_element(f.compensated.begin(), f.compensated.end());
  f.compensated_ratio = *cmax / *cmin;
  return f;
}

}  // namespace twosphere
