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

#include "pimgold/latency_models.hpp"

#include <bit>
#include <cstdio>

#include "pimgold/errors.hpp"

namespace pimgold {

namespace {

unsigned log2_exact(unsigned k, const DesignModel& m) {
  if (!std::has_single_bit(k)) {
    throw DomainError(std::string(to_string(m.id)) + ": k=" + std::to_string(k) +
                      " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(k));
}

unsigned ceil_div(unsigned a, unsigned b) { return (a + b - 1) / b; }

}  // namespace

unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1));
}

std::string_view to_string(DesignId id) {
  switch (id) {
    case DesignId::Spar2Linear: return "Spar2Linear";
    case DesignId::Spar2Binary: return "Spar2Binary";
    case DesignId::CcbComefa: return "CcbComefa";
    case DesignId::BinaryHopping: return "BinaryHopping";
    case DesignId::ImagineSlice: return "ImagineSlice";
  }
  return "?";
}

void check_model(const DesignModel& m) {
  if (m.n == 0 || m.k == 0 || m.p == 0) {
    throw DomainError(std::string(to_string(m.id)) + ": N, k and P must be >= 1");
  }
  if (m.id == DesignId::ImagineSlice) {
    if (m.slice != 1 && m.slice != 2 && m.slice != 4) {
      throw DomainError("ImagineSlice: slice must be 1, 2 or 4");
    }
    if (m.radix != 2 && m.radix != 4) throw DomainError("ImagineSlice: radix must be 2 or 4");
  }
  if (m.id != DesignId::Spar2Linear) log2_exact(m.k, m);
}

Cycles block_latency(const DesignModel& m) {
  check_model(m);
  const Cycles n = m.n, k = m.k, o = m.pipe_overhead;
  switch (m.id) {
    case DesignId::Spar2Linear:
      return 3 * n * (k - 1);
    case DesignId::Spar2Binary: {
      const Cycles lk = log2_exact(m.k, m);
      return 2 * n * lk + n * (k - 1);
    }
    case DesignId::CcbComefa: {
      if (m.mode == InBlockMode::ReportedConstant) return kCcbReportedInBlock;
      const Cycles lk = log2_exact(m.k, m);
      return 2 * n * lk + lk * lk;
    }
    case DesignId::BinaryHopping:
      return (n + o) * log2_exact(m.k, m);
    case DesignId::ImagineSlice:
      return (ceil_div(m.n, m.slice) + o) * log2_exact(m.k, m);
  }
  return 0;
}

Cycles array_latency(const DesignModel& m) {
  check_model(m);
  const Cycles n = m.n, p = m.p, o = m.pipe_overhead;
  const Cycles lp = ceil_log2(m.p);
  switch (m.id) {
    case DesignId::Spar2Linear:
      return 3 * n * (p - 1);
    case DesignId::Spar2Binary:
      return 2 * n * lp + n * (p - 1);
    case DesignId::CcbComefa:
      return lp + 2;
    case DesignId::BinaryHopping:
      return (n + o) * lp + ((Cycles{1} << lp) - 1);
    case DesignId::ImagineSlice:
      return (ceil_div(m.n, m.slice) + o) * lp + ((Cycles{1} << lp) - 1);
  }
  return 0;
}

const std::vector<SystemInfo>& gemv_systems() {
  static const std::vector<SystemInfo> kSystems = {
      {System::Imagine, "imagine", "IMAGine", 737.0, false},
      {System::ImagineSlice4, "imagine-slice4", "IMAGine-slice4", 737.0, true},
      {System::CcbGemv, "ccb", "CCB GEMV", 231.0, false},
      {System::ComefaD, "comefa-d", "CoMeFa-D", 267.0, false},
      {System::Spar2Binary, "spar2-binary", "SPAR-2 Binary (US+)", 200.0, false},
      {System::Spar2Linear, "spar2-linear", "SPAR-2 Linear (US+)", 200.0, false},
      {System::Bramac, "bramac", "BRAMAC", 0.0, false},
  };
  return kSystems;
}

const SystemInfo& system_info(System s) {
  for (const auto& info : gemv_systems()) {
    if (info.system == s) return info;
  }
  throw UnsupportedDesign("unknown system");
}

System parse_system(std::string_view key) {
  std::string accepted;
  for (const auto& info : gemv_systems()) {
    if (info.key == key) return info.system;
    if (!accepted.empty()) accepted += ", ";
    accepted += info.key;
  }
  throw UnsupportedDesign("unknown design '" + std::string(key) + "' (accepted: " + accepted +
                          ")");
}

Cycles multiply_latency(System s, unsigned n, unsigned pipe_overhead) {
  const Cycles nn = n;
  switch (s) {
    case System::Imagine:
      return nn * (nn + pipe_overhead);
    case System::ImagineSlice4:
      return Cycles{ceil_div(n, 2)} * (ceil_div(n, 4) + pipe_overhead);
    case System::CcbGemv:
    case System::ComefaD:
      return nn * nn + 5 * nn - 2;
    case System::Spar2Binary:
    case System::Spar2Linear:
      return 2 * nn * nn;
    case System::Bramac:
      break;
  }
  throw UnsupportedDesign("BRAMAC has no cycle model here");
}

PhaseBreakdown imagine_latency(unsigned rows, unsigned cols, unsigned n,
                               const ValidatedConfig& cfg) {
  PhaseBreakdown b;
  b.system = System::Imagine;
  b.d = cols;
  b.n = n;
  b.k = cfg.k();
  b.p = ceil_div(cols, cfg.k());
  const unsigned levels = ceil_log2(b.p);
  DesignModel m{DesignId::BinaryHopping, cfg.accum_width(), b.k, b.p, cfg.pipe_overhead()};
  b.load = Cycles{b.p} * n;
  b.multiply = multiply_latency(System::Imagine, n, cfg.pipe_overhead());
  b.inblock = block_latency(m);
  b.array = array_latency(m);
  b.shiftout = rows;
  // fill + SETPTR, P x (SELECT, WRITEIN), SELECT, MULT, SETPTR, ACCUMBLK,
  // one ACCUMROW per level, READOUT, END
  b.controller = Cycles{cfg.arch().fanout_levels} + cfg.arch().stages.count() + 2 * Cycles{b.p} +
                 levels + 7;
  return b;
}

PhaseBreakdown gemv_latency(System s, unsigned d, unsigned n, const ValidatedConfig& cfg,
                            InBlockMode ccb_mode) {
  if (d == 0) throw DomainError("GEMV dimension must be >= 1");
  if (s == System::Bramac) throw UnsupportedDesign("BRAMAC has no published cycle formula");
  if (s == System::Imagine) return imagine_latency(d, d, n, cfg);

  PhaseBreakdown b;
  b.system = s;
  b.d = d;
  b.n = n;
  b.k = cfg.k();
  b.p = ceil_div(d, cfg.k());
  b.estimate = system_info(s).estimate;
  b.multiply = multiply_latency(s, n, cfg.pipe_overhead());
  DesignModel m{DesignId::BinaryHopping, cfg.accum_width(), b.k, b.p, cfg.pipe_overhead()};
  switch (s) {
    case System::ImagineSlice4: {
      const auto ref = imagine_latency(d, d, n, cfg);
      b.load = ref.load;
      b.shiftout = ref.shiftout;
      b.controller = ref.controller;
      m.id = DesignId::ImagineSlice;
      m.slice = 4;
      m.radix = 4;
      break;
    }
    case System::CcbGemv:
    case System::ComefaD:
      m.id = DesignId::CcbComefa;
      m.mode = ccb_mode;
      b.mode = ccb_mode;
      break;
    case System::Spar2Binary:
      m.id = DesignId::Spar2Binary;
      break;
    case System::Spar2Linear:
      m.id = DesignId::Spar2Linear;
      break;
    default:
      break;
  }
  b.inblock = block_latency(m);
  b.array = array_latency(m);
  return b;
}

double execution_time_us(Cycles cycles, double clock_mhz) {
  if (!(clock_mhz > 0.0)) throw DomainError("clock must be > 0 MHz");
  return static_cast<double>(cycles) / clock_mhz;
}

Cycles cycles_per_mac(unsigned n, unsigned k, unsigned pipe_overhead) {
  DesignModel m{DesignId::BinaryHopping, n, k, 1, pipe_overhead};
  return multiply_latency(System::Imagine, n, pipe_overhead) + block_latency(m);
}

double peak_tops(std::uint64_t pe_count, double clock_mhz, unsigned n, unsigned k,
                 unsigned pipe_overhead) {
  const double cpm = static_cast<double>(cycles_per_mac(n, k, pipe_overhead));
  return static_cast<double>(pe_count) * clock_mhz * 1e6 / cpm / 1e12;
}

std::vector<ScalingPoint> ideal_scaling(const DeviceEntry& device, unsigned k, double clock_mhz,
                                        unsigned n, unsigned samples, unsigned pipe_overhead) {
  std::vector<ScalingPoint> pts;
  if (samples == 0) return pts;
  for (unsigned i = 1; i <= samples; ++i) {
    ScalingPoint pt;
    pt.bram36 = std::uint64_t{device.bram36_count} * i / samples;
    pt.pes = max_pes(pt.bram36, k);
    pt.tops = peak_tops(pt.pes, clock_mhz, n, k, pipe_overhead);
    pts.push_back(pt);
  }
  return pts;
}

const std::vector<ClockEntry>& system_clocks() {
  static const std::vector<ClockEntry> kClocks = {
      {"RIMA-Fast", 455.0},     {"RIMA-Large", 278.0},  {"CCB GEMV", 231.0},
      {"CoMeFa-A GEMV", 242.0}, {"CoMeFa-D GEMM", 267.0}, {"SPAR-2 (US+)", 200.0},
      {"SPAR-2 (V7)", 130.0},   {"IMAGine", 737.0},     {"IMAGine-CB", 737.0},
  };
  return kClocks;
}

std::string csv_header() {
  return "design,D,N,k,P,load,multiply,inblock,array,total_cycles,clock_mhz,time_us";
}

std::string design_label(const PhaseBreakdown& b) {
  std::string label(system_info(b.system).key);
  if (b.system == System::CcbGemv || b.system == System::ComefaD) {
    label += b.mode == InBlockMode::TableFormula ? ":table" : ":reported";
  }
  if (b.estimate) label += ":estimate";
  return label;
}

std::string csv_row(const PhaseBreakdown& b, double clock_mhz) {
  char tail[96];
  std::snprintf(tail, sizeof tail, "%.1f,%.6f", clock_mhz,
                execution_time_us(b.compute(), clock_mhz));
  return design_label(b) + "," + std::to_string(b.d) + "," +
         std::to_string(b.n) + "," + std::to_string(b.k) + "," + std::to_string(b.p) + "," +
         std::to_string(b.load) + "," + std::to_string(b.multiply) + "," +
         std::to_string(b.inblock) + "," + std::to_string(b.array) + "," +
         std::to_string(b.compute()) + "," + tail;
}

}  // namespace pimgold
