#include "its/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace its {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    double f = objective(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  };

  if (dim == 0) {
    result.x = start;
    result.value = eval(start);
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s(dim + 1);
    std::vector<double> v(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
      s[i] = std::move(simplex[order[i]]);
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  auto converged = [&] {
    if (!(values[dim] - values[0] <= options.f_tolerance)) return false;
    double size = 0.0;
    for (std::size_t i = 1; i <= dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[0][j]));
    return size <= options.x_tolerance;
  };

  auto along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double coef) {
    std::vector<double> p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
    return p;
  };

  sort_simplex();
  while (result.iterations < options.max_iterations) {
    if (converged()) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);

    const std::vector<double>& worst = simplex[dim];
    std::vector<double> reflected = along(centroid, worst, -1.0);
    const double f_reflected = eval(reflected);

    if (f_reflected < values[0]) {
      std::vector<double> expanded = along(centroid, worst, -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[dim] = std::move(expanded);
        values[dim] = f_expanded;
      } else {
        simplex[dim] = std::move(reflected);
        values[dim] = f_reflected;
      }
    } else if (f_reflected < values[dim - 1]) {
      simplex[dim] = std::move(reflected);
      values[dim] = f_reflected;
    } else {
      const bool outside = f_reflected < values[dim];
      std::vector<double> contracted = along(centroid, worst, outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : values[dim])) {
        simplex[dim] = std::move(contracted);
        values[dim] = f_contracted;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
  }
  if (!result.converged && converged()) result.converged = true;

  result.x = simplex[0];
  result.value = values[0];
  return result;
}

}  // namespace its
