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
#include <string>
#include <string_view>
#include <vector>

#include "pimgold/arch_config.hpp"

namespace pimgold {

/// Reduction-network families with closed-form latency.
enum class DesignId : std::uint8_t {
  Spar2Linear,
  Spar2Binary,
  CcbComefa,
  BinaryHopping,
  ImagineSlice,
};

/// CCB/CoMeFa in-block term: the table formula or the reported 202 cycles.
enum class InBlockMode : std::uint8_t { TableFormula, ReportedConstant };

inline constexpr Cycles kCcbReportedInBlock = 202;

struct DesignModel {
  DesignId id = DesignId::BinaryHopping;
  unsigned n = 32;  // bits per reduction step
  unsigned k = 16;  // partial sums per block
  unsigned p = 1;   // blocks along the reduction path
  unsigned pipe_overhead = 4;
  unsigned slice = 1;  // ImagineSlice: bits per step, 1/2/4
  unsigned radix = 2;  // ImagineSlice: Booth radix of the multiplier, 2/4
  InBlockMode mode = InBlockMode::TableFormula;
};

std::string_view to_string(DesignId id);

/// Throws DomainError for out-of-range parameters or a non-power-of-two k
/// in a log-based row.
void check_model(const DesignModel& m);

Cycles block_latency(const DesignModel& m);
Cycles array_latency(const DesignModel& m);
inline Cycles reduction_latency(const DesignModel& m) { return block_latency(m) + array_latency(m); }

/// ceil(log2 x), 0 for x <= 1.
unsigned ceil_log2(std::uint64_t x);

/// Complete GEMV engines compared end to end.
enum class System : std::uint8_t {
  Imagine,
  ImagineSlice4,
  CcbGemv,
  ComefaD,
  Spar2Binary,
  Spar2Linear,
  Bramac,
};

struct SystemInfo {
  System system;
  std::string_view key;   // CLI name
  std::string_view name;  // report label
  double clock_mhz;       // system clock of the published build
  bool estimate;          // no published build; model-only
};

const std::vector<SystemInfo>& gemv_systems();
const SystemInfo& system_info(System s);
/// Throws UnsupportedDesign naming the accepted keys.
System parse_system(std::string_view key);

struct PhaseBreakdown {
  System system = System::Imagine;
  unsigned d = 0;
  unsigned n = 0;
  unsigned k = 0;
  unsigned p = 0;
  Cycles load = 0;
  Cycles multiply = 0;
  Cycles inblock = 0;
  Cycles array = 0;
  Cycles shiftout = 0;
  Cycles controller = 0;
  InBlockMode mode = InBlockMode::TableFormula;
  bool estimate = false;

  /// Multiply plus reduction; the cross-design comparison basis.
  Cycles compute() const { return multiply + inblock + array; }
  Cycles total() const { return load + compute() + shiftout + controller; }
};

/// Multiply cycles of one N-bit MAC step for a design.
Cycles multiply_latency(System s, unsigned n, unsigned pipe_overhead);

/// Composite D x D GEMV latency with W = accum_width and P = ceil(D / k).
/// For IMAGine every phase of the simulated program is predicted, including
/// load, shift-out and controller cycles. Throws UnsupportedDesign for BRAMAC.
PhaseBreakdown gemv_latency(System s, unsigned d, unsigned n, const ValidatedConfig& cfg,
                            InBlockMode ccb_mode = InBlockMode::TableFormula);

/// IMAGine prediction for a rows x cols problem, matching run_gemv phase by phase.
PhaseBreakdown imagine_latency(unsigned rows, unsigned cols, unsigned n,
                               const ValidatedConfig& cfg);

/// cycles / clock_mhz. Throws DomainError for a nonpositive clock.
double execution_time_us(Cycles cycles, double clock_mhz);

/// Multiply plus amortized in-block reduction at width N.
Cycles cycles_per_mac(unsigned n, unsigned k = 16, unsigned pipe_overhead = 4);
/// Tera-MAC/s with one MAC counted as one operation.
double peak_tops(std::uint64_t pe_count, double clock_mhz, unsigned n, unsigned k = 16,
                 unsigned pipe_overhead = 4);

struct ScalingPoint {
  std::uint64_t bram36 = 0;
  std::uint64_t pes = 0;
  double tops = 0.0;
};

/// `samples` evenly spaced BRAM counts up to the device total.
std::vector<ScalingPoint> ideal_scaling(const DeviceEntry& device, unsigned k, double clock_mhz,
                                        unsigned n, unsigned samples = 8,
                                        unsigned pipe_overhead = 4);

struct ClockEntry {
  std::string_view system;
  double f_sys_mhz;
};

/// Published system clocks of PIM GEMV/GEMM engines.
const std::vector<ClockEntry>& system_clocks();

/// System key, tagged ":table"/":reported" for the CCB in-block mode and
/// ":estimate" for designs without a published build.
std::string design_label(const PhaseBreakdown& b);

/// design,D,N,k,P,load,multiply,inblock,array,total_cycles,clock_mhz,time_us
std::string csv_header();
std::string csv_row(const PhaseBreakdown& b, double clock_mhz);

}  // namespace pimgold
