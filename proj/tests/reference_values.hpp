#pragma once

// Frozen output of tests/reference/bispherical_reference.py (40-digit mpmath).
// Two unit spheres, gap eps, midpoint O = (0, 0, 0).

namespace twosphere::reference {

struct MidpointValue {
  double eps;
  double axial_dudx;       // p = (1, 0, 0)
  double transverse_dudz;  // p = (0, 0, 1)
};

inline constexpr MidpointValue kMidpoint[] = {
    {0.2, 7.8034276264457188, 0.010679269767896853},
    {0.1, 13.484759134868655, 0.00031397987906489859},
    {0.05, 23.684474122981251, 1.3948374765473924e-6},
    {0.02, 50.91467810911107, 1.4992504754926914e-11},
    {0.01, 92.016130539059069, 2.2540537792436677e-17},
    {0.005, 167.81646595103092, 8.501794991446408e-26},
    {0.002, 375.70826110868232, 1.1098758935401344e-28},
    {0.001, 696.3368551645628, -3.2860677414826738e-28},
};

// eps = 0.1, p = (1, 0, 1)
inline constexpr double kGradAt_03_08_m05[3] = {1.4054768453358503, -0.92512919706645757, 0.91432057149440294};
inline constexpr double kGradAt_0_2_0[3] = {0.88016735867357682, 0.0, 0.84593257501735718};
inline constexpr double kAxialPotentialEps01 = 0.68551511329162708;

}  // namespace twosphere::reference
