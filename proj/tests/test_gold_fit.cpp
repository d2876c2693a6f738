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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pimgold/errors.hpp"
#include "pimgold/gold_fit.hpp"

using namespace pimgold;

namespace {

const std::vector<double> kPs = {2, 4, 8, 16, 32, 64};

std::vector<FitPoint> series(double a, double b, double c, unsigned n,
                             const std::vector<double>& ps = kPs) {
  std::vector<FitPoint> pts;
  for (double p : ps) pts.push_back({p, a * n * std::log2(p) + b * p + c});
  return pts;
}

double rel(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double objective(std::span<const FitPoint> pts, unsigned n, double a, double b, double c) {
  double s = 0;
  for (const auto& pt : pts) {
    const double r = a * n * std::log2(pt.p) + b * pt.p + c - pt.latency;
    s += r * r;
  }
  return s;
}

}  // namespace

TEST_SUITE("gold_fit") {

TEST_CASE("exact binary-hopping data, N=32") {
  std::vector<FitPoint> pts;
  for (double p : kPs) pts.push_back({p, 36 * std::log2(p) + p + 143});
  const auto f = fit(pts, 32);
  CHECK(f.a == doctest::Approx(1.125).epsilon(1e-6));
  CHECK(f.b == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f.c == doctest::Approx(143.0).epsilon(1e-6));
  CHECK(f.residual_rms < 1e-6);
}

TEST_CASE("SPAR-2 binary data: the intercept clamps to zero") {
  // 2*32*log2 P + 32(P-1): the unconstrained intercept is -32.
  std::vector<FitPoint> pts;
  for (double p : kPs) pts.push_back({p, 64 * std::log2(p) + 32 * (p - 1)});
  const auto f = fit(pts, 32);
  CHECK(f.c == 0.0);
  CHECK(f.b == doctest::Approx(32).epsilon(0.05));
  const auto brute = oracle::nnls_bruteforce(gold_basis(pts, 32), [&] {
    Eigen::VectorXd y(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) y(static_cast<Eigen::Index>(i)) = pts[i].latency;
    return y;
  }());
  CHECK(f.a == doctest::Approx(brute(0)).epsilon(1e-9));
  CHECK(f.b == doctest::Approx(brute(1)).epsilon(1e-9));
  const auto cls = classify(f, 32);
  CHECK(cls.addition == Speed::Standard);
  CHECK(cls.movement == Speed::VerySlow);
}

TEST_CASE("constant data -> intercept only") {
  std::vector<FitPoint> pts;
  for (double p : kPs) pts.push_back({p, 202});
  const auto f = fit(pts, 32);
  CHECK(f.a == doctest::Approx(0).epsilon(1e-9));
  CHECK(f.b == doctest::Approx(0).epsilon(1e-9));
  CHECK(f.c == doctest::Approx(202).epsilon(1e-9));
}

TEST_CASE("input errors") {
  const auto three = series(1, 1, 1, 32, {2, 4, 8});
  CHECK_THROWS_AS(fit(three, 32), InsufficientData);
  CHECK_THROWS_AS(fit(series(1, 1, 1, 32, {2, 4, 4, 8}), 32), DegenerateDesign);
  CHECK_THROWS_AS(fit(series(1, 1, 1, 32, {1, 2, 4, 8}), 32), DegenerateDesign);
  CHECK_THROWS_AS(fit(series(1, 1, 1, 32, {2, 4, 8, 16}), 0), DegenerateDesign);
}

TEST_CASE("non-power-of-two P values are fine") {
  const auto f = fit(series(0.5, 2, 10, 16, {2, 3, 5, 7, 11, 13}), 16);
  CHECK(f.a == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(f.b == doctest::Approx(2).epsilon(1e-6));
  CHECK(f.c == doctest::Approx(10).epsilon(1e-6));
}

TEST_CASE("classification examples") {
  auto mk = [](double a, double b, double c) {
    GoldFit f;
    f.a = a;
    f.b = b;
    f.c = c;
    f.n = 32;
    return f;
  };
  auto c1 = classify(mk(0.03, 0.02, 203), 32);
  CHECK(c1.addition == Speed::Fast);
  CHECK(c1.movement == Speed::Fast);
  CHECK(c1.a_status == RangeStatus::OutOfRange);
  auto c2 = classify(mk(2, 32, 0), 32);
  CHECK(c2.addition == Speed::Standard);
  CHECK(c2.movement == Speed::VerySlow);
  CHECK(c2.b_status == RangeStatus::OutOfRange);
  auto c3 = classify(mk(1.125, 1.0, 143), 32);
  CHECK(c3.addition == Speed::Standard);
  CHECK(c3.movement == Speed::Standard);
  CHECK(c3.a_status == RangeStatus::Ideal);
  CHECK(c3.b_status == RangeStatus::Ideal);
  CHECK(c3.c_status == RangeStatus::Ideal);
  auto c4 = classify(mk(2.5, 0.1, 0), 32);
  CHECK(c4.addition == Speed::VerySlow);
  CHECK(c4.movement == Speed::Fast);
  CHECK(c4.a_range.lo == doctest::Approx(1.0 / 32));
  CHECK(std::isinf(c4.c_range.hi));
  CHECK(to_string(Speed::VerySlow) == "Very Slow");
}

TEST_CASE("JSON report keys") {
  const auto f = fit(series(1.125, 1, 143, 32), 32);
  const auto j = fit_report("imagine", f, classify(f, 32));
  const std::vector<std::string> keys = {"design", "N",           "a",
                                         "b",      "c",           "residual_rms",
                                         "addition_label", "movement_label"};
  REQUIRE(j.size() == keys.size());
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) CHECK(it.key() == keys[i]);
  CHECK(j["movement_label"] == "Standard");
}

TEST_CASE("property: noiseless recovery of random triples") {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> ua(0.0, 3.0), ub(0.0, 40.0), uc(0.0, 300.0);
  const std::vector<double> ps = {2, 4, 8, 16, 32, 64, 128};
  for (int t = 0; t < 100; ++t) {
    const double a = ua(g), b = ub(g), c = uc(g);
    const unsigned n = std::vector<unsigned>{4, 8, 16, 32}[g() % 4];
    const auto f = fit(series(a, b, c, n, ps), n);
    REQUIRE(rel(f.a, a) < 1e-6);
    REQUIRE(rel(f.b, b) < 1e-6);
    REQUIRE(rel(f.c, c) < 1e-6);
  }
}

TEST_CASE("property: scale covariance") {
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(0.0, 100.0), lam(0.01, 50.0);
  for (int t = 0; t < 30; ++t) {
    std::vector<FitPoint> pts;
    for (double p : kPs) pts.push_back({p, u(g)});
    const double l = lam(g);
    auto scaled = pts;
    for (auto& pt : scaled) pt.latency *= l;
    const auto f = fit(pts, 32);
    const auto fs = fit(scaled, 32);
    CHECK(fs.a == doctest::Approx(l * f.a).epsilon(1e-7));
    CHECK(fs.b == doctest::Approx(l * f.b).epsilon(1e-7));
    CHECK(fs.c == doctest::Approx(l * f.c).epsilon(1e-7));
  }
}

TEST_CASE("property: active set matches the exhaustive oracle on noisy data") {
  std::mt19937_64 g(77);
  std::normal_distribution<double> noise(0.0, 30.0);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    // Coefficients of either sign make the constraints bind.
    const double a = u(g), b = u(g) * 10, c = u(g) * 50;
    std::vector<FitPoint> pts;
    for (double p : kPs) pts.push_back({p, a * 32 * std::log2(p) + b * p + c + noise(g)});
    const auto f = fit(pts, 32);
    REQUIRE(f.a >= 0.0);
    REQUIRE(f.b >= 0.0);
    REQUIRE(f.c >= 0.0);
    Eigen::VectorXd y(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) y(static_cast<Eigen::Index>(i)) = pts[i].latency;
    const auto x = oracle::nnls_bruteforce(gold_basis(pts, 32), y);
    const double mine = objective(pts, 32, f.a, f.b, f.c);
    const double best = objective(pts, 32, x(0), x(1), x(2));
    REQUIRE(mine <= best * (1 + 1e-9) + 1e-9);
  }
}

TEST_CASE("nnls on general systems") {
  std::mt19937_64 g(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 5 + static_cast<Eigen::Index>(g() % 6);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(g() % 3);
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      y(i) = nd(g);
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = nd(g);
    }
    const Eigen::VectorXd x = nnls(a, y);
    const Eigen::VectorXd xb = oracle::nnls_bruteforce(a, y);
    REQUIRE((x.array() >= 0.0).all());
    REQUIRE((a * x - y).squaredNorm() <= (a * xb - y).squaredNorm() * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("determinism") {
  const auto pts = series(0.7, 3.3, 12, 8);
  const auto f1 = fit(pts, 8);
  const auto f2 = fit(pts, 8);
  CHECK(f1.a == f2.a);
  CHECK(f1.b == f2.b);
  CHECK(f1.c == f2.c);
}

}  // TEST_SUITE
