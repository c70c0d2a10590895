#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "corgi/error.hpp"

namespace corgi::bench {

enum class Model { Linear, Quadratic, Cubic, Exponential };

inline constexpr std::string_view to_string(Model m) {
  switch (m) {
    case Model::Linear: return "linear";
    case Model::Quadratic: return "quadratic";
    case Model::Cubic: return "cubic";
    case Model::Exponential: return "exponential";
  }
  return "?";
}

struct ModelFit {
  Model model;
  std::vector<double> params;  // polynomial: a, b, c, d ascending powers; exponential: a, b
  double rss;
  double aic;
};

struct FitReport {
  std::vector<ModelFit> fits;
  Model selected;

  const ModelFit& fit(Model m) const {
    return *std::find_if(fits.begin(), fits.end(), [&](const ModelFit& f) { return f.model == m; });
  }
};

/// Residuals below this fraction of the largest observation are treated as
/// zero when scoring, so exact synthetic data does not rank models on
/// floating-point noise.
inline constexpr double kRelativeResolution = 1e-9;

namespace detail {

// Least squares for y ≈ Σ c_k x^k, k < terms. x is scaled for conditioning and
// the coefficients are mapped back to the original units.
inline std::vector<double> polyfit(std::span<const double> x, std::span<const double> y,
                                   int terms) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  double scale = 0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0) scale = 1;
  Eigen::MatrixXd A(n, terms);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double xs = x[static_cast<std::size_t>(i)] / scale;
    double p = 1;
    for (int k = 0; k < terms; ++k, p *= xs) A(i, k) = p;
    b(i) = y[static_cast<std::size_t>(i)];
  }
  auto qr = A.colPivHouseholderQr();
  if (qr.rank() < terms) throw Error(Errc::DegenerateFit, "singular design matrix");
  Eigen::VectorXd c = qr.solve(b);
  std::vector<double> out(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) out[static_cast<std::size_t>(k)] = c(k) / std::pow(scale, k);
  return out;
}

inline double polyval(std::span<const double> c, double x) {
  double y = 0;
  for (std::size_t k = c.size(); k-- > 0;) y = y * x + c[k];
  return y;
}

}  // namespace detail

/// Fit linear, quadratic, cubic and exponential growth models to (N, t)
/// points by least squares and score each with AIC = n·ln(RSS/n) + 2k.
inline FitReport fit_models(std::span<const std::pair<double, double>> points) {
  if (points.size() < 5) throw Error(Errc::InvalidArgument, "need at least 5 points to fit");
  std::vector<double> x, y, logy;
  double ymax = 0;
  for (auto [n, t] : points) {
    if (!(t > 0)) throw Error(Errc::InvalidArgument, "times must be positive");
    x.push_back(n);
    y.push_back(t);
    logy.push_back(std::log(t));
    ymax = std::max(ymax, t);
  }
  const double count = static_cast<double>(points.size());
  const double floor = count * std::pow(kRelativeResolution * ymax, 2);
  auto score = [&](Model m, std::vector<double> params, auto&& predict) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) rss += std::pow(y[i] - predict(x[i]), 2);
    double k = static_cast<double>(params.size());
    double aic = count * std::log(std::max(rss, floor) / count) + 2 * k;
    return ModelFit{m, std::move(params), rss, aic};
  };

  FitReport report;
  const Model polys[] = {Model::Linear, Model::Quadratic, Model::Cubic};
  for (int i = 0; i < 3; ++i) {
    auto c = detail::polyfit(x, y, i + 2);
    report.fits.push_back(score(polys[i], c, [&](double v) { return detail::polyval(c, v); }));
  }
  auto e = detail::polyfit(x, logy, 2);
  double a = std::exp(e[0]), rate = e[1];
  report.fits.push_back(
      score(Model::Exponential, {a, rate}, [&](double v) { return a * std::exp(rate * v); }));

  report.selected = report.fits.front().model;
  double best = report.fits.front().aic;
  for (const auto& f : report.fits)
    if (f.aic < best) {
      best = f.aic;
      report.selected = f.model;
    }
  return report;
}

}  // namespace corgi::bench
