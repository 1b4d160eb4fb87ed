#pragma once

#include <array>
#include <string_view>

#include "its/calendar.hpp"

namespace reference {

// Published effect grid for the five lending series: absolute gap and gap
// relative to the counterfactual, at every second month after the intervention.
inline constexpr std::array<its::YearMonth, 7> kHorizons = {{
    {2020, 4}, {2020, 6}, {2020, 8}, {2020, 10}, {2020, 12}, {2021, 2}, {2021, 4}}};

struct EffectRow {
  std::string_view label;
  std::array<double, 7> delta_abs;
  std::array<double, 7> delta_rel;
};

inline constexpr std::array<EffectRow, 5> kEffects = {{
    {"BJ",
     {-3168.79, -2671.65, -2174.50, -1677.36, -1180.22, -683.07, -185.93},
     {-48.31, -37.91, -28.86, -20.90, -13.87, -7.59, -1.96}},
    {"BLJ",
     {-568.91, -375.10, -181.28, 12.53, 206.35, 400.17, 593.98},
     {-52.13, -31.99, -14.46, 0.94, 14.57, 26.73, 37.64}},
    {"BT",
     {-3725.43, -3042.08, -2358.73, -1675.38, -992.03, -308.67, 374.68},
     {-48.72, -37.03, -26.86, -17.92, -10.00, -2.94, 3.39}},
    {"TKB90",
     {0.06, 0.43, 0.80, 1.16, 1.53, 1.90, 2.27},
     {0.06, 0.45, 0.84, 1.24, 1.64, 2.04, 2.44}},
    {"TWP90",
     {-0.06, -0.43, -0.79, -1.16, -1.52, -1.89, -2.25},
     {-1.22, -8.03, -13.92, -19.05, -23.56, -27.56, -31.13}},
}};

// Printed significance stars per series and coefficient (constant, time,
// level change, trend change).
struct StarRow {
  std::string_view label;
  std::array<std::string_view, 4> stars;
};

inline constexpr std::array<StarRow, 5> kStars = {{
    {"BJ", {"", "***", "***", "***"}},
    {"BLJ", {"", "***", "***", "***"}},
    {"BT", {"", "***", "***", "***"}},
    {"TKB90", {"***", "***", "", ""}},
    {"TWP90", {"", "***", "", ""}},
}};

}  // namespace reference
