#pragma once

// Dickey-Fuller distribution tables for a single series (one integrated
// variable). Values are the published MacKinnon response-surface coefficients:
//
//   Critical values: J. G. MacKinnon (2010), "Critical Values for
//   Cointegration Tests", Queen's Economics Department Working Paper 1227,
//   N = 1 rows. cv(T) = b_inf + b1/T + b2/T^2 + b3/T^3.
//
//   Asymptotic p-values: J. G. MacKinnon (1994), "Approximate Asymptotic
//   Distribution Functions for Unit-Root and Cointegration Tests", JBES 12,
//   small-p and large-p normal-quantile polynomials, N = 1 rows.

#include <array>
#include <limits>

namespace coint::adf_tables {

// Index order for every table: no deterministics, constant, constant + trend.
inline constexpr std::array<std::array<std::array<double, 4>, 3>, 3> kCriticalSurface{{
    // 1%                                    5%                                      10%
    {{{-2.56574, -2.2358, -3.627, 0.0}, {-1.94100, -0.2686, -3.365, 31.223}, {-1.61682, 0.2656, -2.714, 25.364}}},
    {{{-3.43035, -6.5393, -16.786, -79.433},
      {-2.86154, -2.8903, -4.234, -40.040},
      {-2.56677, -1.5384, -2.809, 0.0}}},
    {{{-3.95877, -9.0531, -28.428, -134.155},
      {-3.41049, -4.3904, -9.036, -45.374},
      {-3.12705, -2.5856, -3.925, -22.380}}},
}};

// p = Phi(poly(t)); the small-p polynomial applies for t <= tau_star.
inline constexpr std::array<double, 3> kTauMax{std::numeric_limits<double>::infinity(), 2.74, 0.70};
inline constexpr std::array<double, 3> kTauMin{-19.04, -18.83, -16.18};
inline constexpr std::array<double, 3> kTauStar{-1.04, -1.61, -2.89};

inline constexpr std::array<std::array<double, 3>, 3> kSmallP{{
    {0.6344, 1.2378, 3.2496e-2},
    {2.1659, 1.4412, 3.8269e-2},
    {3.2512, 1.6047, 4.9588e-2},
}};

inline constexpr std::array<std::array<double, 4>, 3> kLargeP{{
    {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2},
    {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2},
    {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2},
}};

}  // namespace coint::adf_tables
