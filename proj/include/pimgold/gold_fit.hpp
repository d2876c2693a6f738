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

#pragma once

#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "json.hpp"

namespace pimgold {

struct FitPoint {
  double p = 0.0;        // blocks along the reduction path
  double latency = 0.0;  // cycles
};

/// latency ~ a*N*log2(P) + b*P + c with a, b, c >= 0.
struct GoldFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual_rms = 0.0;
  unsigned n = 0;
};

enum class Speed : std::uint8_t { Fast, Standard, VerySlow };
enum class RangeStatus : std::uint8_t { Ideal, OutOfRange };

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;  // +inf when unbounded
};

struct Classification {
  Speed addition = Speed::Standard;
  Speed movement = Speed::Standard;
  RangeStatus a_status = RangeStatus::Ideal;
  RangeStatus b_status = RangeStatus::Ideal;
  RangeStatus c_status = RangeStatus::Ideal;
  ParamRange a_range;
  ParamRange b_range;
  ParamRange c_range;
};

/// Lawson-Hanson active set: argmin ||A x - y|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

/// Columns {N*log2(P), P, 1}, one row per point.
Eigen::MatrixXd gold_basis(std::span<const FitPoint> points, unsigned n);

/// Throws InsufficientData for fewer than 4 points, DegenerateDesign for a
/// repeated P, P < 2, or a rank-deficient basis.
GoldFit fit(std::span<const FitPoint> points, unsigned n);

/// Ideal ranges 1/N <= a <= 2, 0 <= b <= 1, c >= 0 and the speed labels:
/// a <= 1/N Fast, a <= 2 Standard, else Very Slow; b <= 0.1 Fast, b <= 1
/// Standard, else Very Slow.
Classification classify(const GoldFit& f, unsigned n);

std::string_view to_string(Speed s);
std::string_view to_string(RangeStatus s);

/// {design, N, a, b, c, residual_rms, addition_label, movement_label}
nlohmann::ordered_json fit_report(std::string_view design, const GoldFit& f, const Classification& cls);

}  // namespace pimgold
