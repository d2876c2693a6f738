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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pimgold/arch_config.hpp"
#include "pimgold/gold_fit.hpp"
#include "pimgold/latency_models.hpp"

namespace pimgold {

enum class Command : std::uint8_t { Simulate, Model, Fit, Compare, Scale, Verify };
enum class OutputFormat : std::uint8_t { Csv, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;     // usage, config, mapping, unknown design
inline constexpr int kVerify = 3;    // oracle mismatch, lockstep divergence, bracket miss
inline constexpr int kOverflow = 4;  // accumulator overflow
}  // namespace exit_code

struct RunSpec {
  Command command = Command::Simulate;
  std::string config_path;  // empty: built-in defaults
  std::vector<unsigned> sweep_d;
  std::vector<unsigned> precision;
  std::vector<std::string> designs;
  std::uint64_t seed = 1;
  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  bool assert_brackets = false;

  // simulate
  bool identity = false;
  bool fit_fabric = false;
  bool full_range = false;
  // model / compare / fit
  InBlockMode inblock_mode = InBlockMode::TableFormula;
  std::vector<std::pair<std::string, double>> clock_overrides;
};

/// Problem seed of one sweep point, a pure function of the run seed.
std::uint64_t point_seed(std::uint64_t seed, unsigned d, unsigned n);

/// P = 2, 4, ..., 64.
std::vector<unsigned> default_fit_ps();

/// Reduction latency per P for a model-only design. SPAR-2 rows reduce one
/// PE column per node (k = 1); CCB/CoMeFa and the slice estimate use cfg.k().
std::vector<FitPoint> model_reduction_series(System s, std::span<const unsigned> ps, unsigned n,
                                             const ValidatedConfig& cfg, InBlockMode mode);

/// reduction_cycles of simulated GEMVs spanning P blocks per row, on the
/// smallest fabric (from `base`) that holds each point.
std::vector<FitPoint> simulated_reduction_series(const ArchConfig& base,
                                                 std::span<const unsigned> ps, unsigned n,
                                                 std::uint64_t seed, unsigned rows = 2);

struct FitBracket {
  double a_lo, a_hi, b_lo, b_hi, c_lo, c_hi;
  bool contains(const GoldFit& f) const {
    return f.a >= a_lo && f.a <= a_hi && f.b >= b_lo && f.b <= b_hi && f.c >= c_lo &&
           f.c <= c_hi;
  }
};

/// Simulator-derived IMAGine fit at N = 32.
inline constexpr FitBracket kImagineBracket{1.0, 1.3, 0.8, 1.1, 138.0, 148.0};

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pimgold
