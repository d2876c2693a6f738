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

// One PASS/FAIL line per acceptance criterion; exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pimgold/arch_config.hpp"
#include "pimgold/cli.hpp"
#include "pimgold/fabric.hpp"
#include "pimgold/gold_fit.hpp"
#include "pimgold/latency_models.hpp"

using namespace pimgold;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  if (!ok) ++failures;
}

std::string num(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string triple(const GoldFit& f) {
  return "(" + num(f.a) + ", " + num(f.b) + ", " + num(f.c) + ")";
}

void functional_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 g(20260101);
  const unsigned ns[] = {4, 8, 16, 32};
  int bad = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    const unsigned d = 8 + static_cast<unsigned>(g() % 121);
    const unsigned n = ns[g() % 4];
    const std::uint64_t seed = g();
    try {
      const ValidatedConfig cfg = validate(fabric_for(ArchConfig{}, d, d));
      const GemvProblem prob = random_problem(d, d, n, seed, cfg.accum_width());
      if (run_gemv(cfg, prob).y != reference_gemv(prob)) {
        ++bad;
        if (first.empty()) first = " first D=" + std::to_string(d) + " N=" + std::to_string(n);
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = std::string(" ") + e.what();
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("functional-exactness", bad == 0 && secs < 60.0,
         std::to_string(200 - bad) + "/200 bit-exact in " + num(secs, 2) + " s" + first);
}

void lockstep() {
  int checked = 0;
  std::string diverged;
  for (unsigned d : {16u, 32u, 64u, 128u, 256u}) {
    for (unsigned n : {8u, 16u, 32u}) {
      const ValidatedConfig cfg = validate(fabric_for(ArchConfig{}, d, d));
      const GemvProblem prob = random_problem(d, d, n, point_seed(1, d, n), cfg.accum_width());
      const CycleReport s = run_gemv(cfg, prob).report;
      const PhaseBreakdown m = imagine_latency(d, d, n, cfg);
      ++checked;
      if (s.load != m.load || s.multiply != m.multiply || s.inblock != m.inblock ||
          s.array != m.array || s.shiftout != m.shiftout || s.controller != m.controller) {
        diverged += " D=" + std::to_string(d) + "/N=" + std::to_string(n);
      }
    }
  }
  report("model-simulator-lockstep", diverged.empty(),
         std::to_string(checked) + " points" + (diverged.empty() ? ", all phases equal" : diverged));
}

void inblock_constant() {
  const ValidatedConfig cfg = validate(fabric_for(ArchConfig{}, 16, 16));
  const GemvProblem prob = random_problem(16, 16, 8, 5, cfg.accum_width());
  const Cycles got = run_gemv(cfg, prob).report.inblock;
  report("inblock-constant", got == 144, "W=32 k=16 in-block " + std::to_string(got) + " cycles");
}

void reduction_fits() {
  const ValidatedConfig cfg = validate(ArchConfig{});
  const auto ps = default_fit_ps();
  const unsigned n = 32;
  auto model_fit = [&](System s) {
    return fit(model_reduction_series(s, ps, n, cfg, InBlockMode::TableFormula), n);
  };
  const GoldFit lin = model_fit(System::Spar2Linear);
  const GoldFit bin = model_fit(System::Spar2Binary);
  const GoldFit ccb = model_fit(System::CcbGemv);
  const GoldFit img = fit(simulated_reduction_series(ArchConfig{}, ps, n, 1), n);

  const bool lin_ok = lin.a <= 0.3 && std::abs(lin.b - 96) <= 3 && lin.c <= 40;
  const bool bin_ok = std::abs(bin.a - 2) <= 0.2 && std::abs(bin.b - 32) <= 2 && bin.c <= 20;
  const bool ccb_ok = std::abs(ccb.a - 1.0 / 32) <= 0.02 && ccb.b <= 0.1;
  const bool img_ok = kImagineBracket.contains(img);
  auto tag = [](bool ok) { return ok ? "ok" : "MISS"; };
  report("reduction-fits", lin_ok && bin_ok && ccb_ok && img_ok,
         std::string("spar2-linear ") + triple(lin) + " " + tag(lin_ok) + "; spar2-binary " +
             triple(bin) + " " + tag(bin_ok) + "; ccb " + triple(ccb) + " " + tag(ccb_ok) +
             "; imagine(sim) " + triple(img) + " " + tag(img_ok) + " vs published (1.2, 0.9, 143)");
}

void peak_performance() {
  const double tops = peak_tops(64512, 737.0, 8);
  const bool peak_ok = std::abs(tops - 0.33) <= 0.33 * 0.05;
  bool linear = true;
  for (const auto& dev : builtin_devices()) {
    const auto pts = ideal_scaling(dev, 16, 737.0, 8, 8);
    for (std::size_t i = 0; 2 * i + 1 < pts.size(); ++i) {
      const auto& one = pts[i];
      const auto& two = pts[2 * i + 1];
      if (two.bram36 != 2 * one.bram36) continue;
      if (two.pes != 2 * one.pes || two.tops != 2 * one.tops) linear = false;
    }
    if (pts.back().pes != max_pes(dev, 16)) linear = false;
  }
  for (std::uint64_t b = 1; b <= 4096; b *= 2) {
    const std::uint64_t pes = max_pes(b, 16);
    if (max_pes(2 * b, 16) != 2 * pes) linear = false;
    if (peak_tops(2 * pes, 737.0, 8) != 2 * peak_tops(pes, 737.0, 8)) linear = false;
  }
  report("peak-performance", peak_ok && linear,
         "64512 PEs at 737 MHz N=8 -> " + num(tops, 4) + " TOPS; doubling " +
             (linear ? "exact" : "NOT exact"));
}

void device_table() {
  const std::vector<std::pair<std::string, std::string>> want = {
      {"U55", "64K"}, {"V7-a", "24K"}, {"V7-b", "32K"}, {"V7-c", "41K"}, {"V7-d", "60K"},
      {"US-a", "23K"}, {"US-b", "67K"}, {"US-c", "69K"}, {"US-d", "86K"}};
  int ok = 0;
  std::string miss;
  for (const auto& [id, k] : want) {
    const std::string got = format_kilo(max_pes(find_device(builtin_devices(), id), 16));
    if (got == k) ++ok;
    else miss += " " + id + "=" + got;
  }
  report("device-table", ok == 9, std::to_string(ok) + "/9 rows" + miss);
}

void execution_ordering() {
  const ValidatedConfig cfg = validate(ArchConfig{});
  bool ordered = true;
  std::string detail;
  for (unsigned d : {512u, 1024u, 2048u}) {
    auto t = [&](System s) {
      return execution_time_us(gemv_latency(s, d, 8, cfg).compute(), system_info(s).clock_mhz);
    };
    const double ti = t(System::Imagine), tc = t(System::CcbGemv), ts = t(System::Spar2Binary);
    if (!(ti < tc && tc < ts)) ordered = false;
    detail += " D=" + std::to_string(d) + ":" + num(ti, 2) + "<" + num(tc, 2) + "<" + num(ts, 2);
  }

  std::ostringstream out, err;
  const int code = run_cli({"compare", "--format", "json"}, out, err);
  bool r265 = false, r319 = false;
  if (code == exit_code::kOk) {
    const auto doc = nlohmann::json::parse(out.str());
    for (const auto& c : doc["clock_ratios"]) {
      const double r = c["imagine_ratio"].get<double>();
      r265 = r265 || std::abs(r - 2.65) <= 0.01;
      r319 = r319 || std::abs(r - 3.19) <= 0.01;
    }
  }
  report("execution-time-ordering", ordered && r265 && r319,
         std::string("us") + detail + "; ratios 2.65 " + (r265 ? "found" : "missing") +
             ", 3.19 " + (r319 ? "found" : "missing"));
}

void fit_recovery() {
  std::mt19937_64 g(424242);
  std::uniform_real_distribution<double> ua(0.0, 3.0), ub(0.0, 100.0), uc(0.0, 300.0);
  const unsigned n = 32;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const double a = ua(g), b = ub(g), c = uc(g);
    std::vector<FitPoint> pts;
    for (unsigned p : default_fit_ps()) {
      pts.push_back({double(p), a * n * std::log2(double(p)) + b * p + c});
    }
    const GoldFit f = fit(pts, n);
    auto rel = [](double got, double want) {
      return std::abs(got - want) / std::max(std::abs(want), 1e-12);
    };
    worst = std::max({worst, rel(f.a, a), rel(f.b, b), rel(f.c, c)});
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  report("fit-recovery", worst <= 1e-6, std::string("100 triples, worst relative error ") + buf);
}

}  // namespace

int main() {
  functional_exactness();
  lockstep();
  inblock_constant();
  reduction_fits();
  peak_performance();
  device_table();
  execution_ordering();
  fit_recovery();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << "\n";
  return failures == 0 ? 0 : 1;
}
