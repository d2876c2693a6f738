/*
 * Copyright 2026 The pimgold Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pimgold/gold_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "pimgold/errors.hpp"

namespace pimgold {

namespace {

// Least squares restricted to the passive columns; zero elsewhere.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  Eigen::VectorXd s = Eigen::VectorXd::Zero(a.cols());
  if (cols.empty()) return s;
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
  const Eigen::VectorXd z = sub.colPivHouseholderQr().solve(y);
  for (std::size_t c = 0; c < cols.size(); ++c) s(cols[c]) = z(static_cast<Eigen::Index>(c));
  return s;
}

constexpr double kRel = 1e-9;

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  const Eigen::Index n = a.cols();
  const auto un = static_cast<std::size_t>(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(un, false);
  std::vector<bool> blocked(un, false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(static_cast<double>(a.rows()), static_cast<double>(n)) *
                     std::max(1.0, a.cwiseAbs().colwise().sum().maxCoeff());
  const int max_outer = 3 * static_cast<int>(n) + 10;

  Eigen::VectorXd w = a.transpose() * (y - a * x);
  for (int outer = 0; outer < max_outer; ++outer) {
    Eigen::Index t = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (!passive[uj] && !blocked[uj] && w(j) > best) {
        best = w(j);
        t = j;
      }
    }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;

    Eigen::VectorXd s = passive_solve(a, y, passive);
    if (s(t) <= 0.0) {
      // Gradient and solve disagree numerically; park t until x moves.
      passive[static_cast<std::size_t>(t)] = false;
      blocked[static_cast<std::size_t>(t)] = true;
      continue;
    }
    for (int inner = 0; inner < max_outer; ++inner) {
      double min_s = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)]) min_s = std::min(min_s, s(j));
      }
      if (min_s > 0.0) break;
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
      s = passive_solve(a, y, passive);
    }
    x = s;
    std::fill(blocked.begin(), blocked.end(), false);
    w = a.transpose() * (y - a * x);
  }
  return x;
}

Eigen::MatrixXd gold_basis(std::span<const FitPoint> points, unsigned n) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = n * std::log2(points[i].p);
    a(r, 1) = points[i].p;
    a(r, 2) = 1.0;
  }
  return a;
}

GoldFit fit(std::span<const FitPoint> points, unsigned n) {
  if (points.size() < 4) {
    throw InsufficientData("need at least 4 (P, latency) points, got " +
                           std::to_string(points.size()));
  }
  if (n == 0) throw DegenerateDesign("N must be >= 1");
  std::set<double> seen;
  for (const auto& pt : points) {
    if (!(pt.p >= 2.0)) {
      throw DegenerateDesign("P=" + std::to_string(pt.p) + " < 2 makes log2(P) degenerate");
    }
    if (!seen.insert(pt.p).second) {
      throw DegenerateDesign("P=" + std::to_string(pt.p) + " appears more than once");
    }
    if (!std::isfinite(pt.latency)) throw DegenerateDesign("non-finite latency");
  }

  const Eigen::MatrixXd a = gold_basis(points, n);
  Eigen::VectorXd y(a.rows());
  for (std::size_t i = 0; i < points.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = points[i].latency;
  }

  // Unit-norm columns for conditioning; positive scaling keeps x >= 0 intact.
  const Eigen::VectorXd norms = a.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = a * norms.cwiseInverse().asDiagonal();
  if (scaled.colPivHouseholderQr().rank() < 3) {
    throw DegenerateDesign("basis {N log2 P, P, 1} is rank deficient for this P set");
  }
  const Eigen::VectorXd x = nnls(scaled, y).cwiseQuotient(norms);

  GoldFit f;
  f.n = n;
  f.a = x(0);
  f.b = x(1);
  f.c = x(2);
  const Eigen::VectorXd r = a * x - y;
  f.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
  return f;
}

Classification classify(const GoldFit& f, unsigned n) {
  Classification cls;
  const double inv_n = n == 0 ? 0.0 : 1.0 / n;
  const double inf = std::numeric_limits<double>::infinity();
  cls.a_range = {inv_n, 2.0};
  cls.b_range = {0.0, 1.0};
  cls.c_range = {0.0, inf};
  auto le = [](double v, double bound) { return v <= bound + kRel * std::max(1.0, std::abs(bound)); };
  auto ge = [](double v, double bound) { return v >= bound - kRel * std::max(1.0, std::abs(bound)); };
  auto status = [&](double v, const ParamRange& r) {
    return ge(v, r.lo) && le(v, r.hi) ? RangeStatus::Ideal : RangeStatus::OutOfRange;
  };
  cls.a_status = status(f.a, cls.a_range);
  cls.b_status = status(f.b, cls.b_range);
  cls.c_status = status(f.c, cls.c_range);

  if (le(f.a, inv_n)) cls.addition = Speed::Fast;
  else if (le(f.a, 2.0)) cls.addition = Speed::Standard;
  else cls.addition = Speed::VerySlow;

  if (le(f.b, 0.1)) cls.movement = Speed::Fast;
  else if (le(f.b, 1.0)) cls.movement = Speed::Standard;
  else cls.movement = Speed::VerySlow;
  return cls;
}

std::string_view to_string(Speed s) {
  switch (s) {
    case Speed::Fast: return "Fast";
    case Speed::Standard: return "Standard";
    case Speed::VerySlow: return "Very Slow";
  }
  return "?";
}

std::string_view to_string(RangeStatus s) {
  return s == RangeStatus::Ideal ? "Ideal" : "OutOfRange";
}

nlohmann::ordered_json fit_report(std::string_view design, const GoldFit& f, const Classification& cls) {
  nlohmann::ordered_json j;
  j["design"] = design;
  j["N"] = f.n;
  j["a"] = f.a;
  j["b"] = f.b;
  j["c"] = f.c;
  j["residual_rms"] = f.residual_rms;
  j["addition_label"] = to_string(cls.addition);
  j["movement_label"] = to_string(cls.movement);
  return j;
}

}  // namespace pimgold
