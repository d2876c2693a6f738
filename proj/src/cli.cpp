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

#include "pimgold/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pimgold/errors.hpp"
#include "pimgold/fabric.hpp"
#include "pimgold/parallel.hpp"

namespace pimgold {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

ConfigFile load_spec_config(const RunSpec& spec) {
  if (spec.config_path.empty()) {
    ConfigFile cf;
    cf.devices = builtin_devices();
    return cf;
  }
  return load_config(spec.config_path);
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

std::vector<System> parse_designs(const std::vector<std::string>& keys,
                                  std::vector<System> fallback) {
  if (keys.empty()) return fallback;
  std::vector<System> out;
  for (const auto& k : keys) out.push_back(parse_system(k));
  return out;
}

double clock_for(const RunSpec& spec, System s) {
  const auto& info = system_info(s);
  double mhz = info.clock_mhz;
  for (const auto& [key, value] : spec.clock_overrides) {
    if (key == info.key) mhz = value;
  }
  return mhz;
}

void check_clock_overrides(const RunSpec& spec) {
  for (const auto& [key, value] : spec.clock_overrides) {
    parse_system(key);
    if (!(value > 0.0)) throw ConfigError("--clock " + key + " must be > 0 MHz");
  }
}

void emit(const RunSpec& spec, const std::string& text, std::ostream& out) {
  if (spec.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(spec.out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + spec.out_path + "'");
  f << text;
}

std::string csv_cycles(const CycleReport& r) {
  return std::to_string(r.load) + "," + std::to_string(r.multiply) + "," +
         std::to_string(r.inblock) + "," + std::to_string(r.array) + "," +
         std::to_string(r.shiftout) + "," + std::to_string(r.controller) + "," +
         std::to_string(r.total());
}

ojson breakdown_json(const PhaseBreakdown& b, double clock_mhz) {
  ojson j;
  j["design"] = design_label(b);
  j["D"] = b.d;
  j["N"] = b.n;
  j["k"] = b.k;
  j["P"] = b.p;
  j["load"] = b.load;
  j["multiply"] = b.multiply;
  j["inblock"] = b.inblock;
  j["array"] = b.array;
  j["total_cycles"] = b.compute();
  j["clock_mhz"] = clock_mhz;
  j["time_us"] = execution_time_us(b.compute(), clock_mhz);
  j["estimate"] = b.estimate;
  return j;
}

struct Point {
  unsigned d;
  unsigned n;
};

std::vector<Point> grid(const std::vector<unsigned>& ds, const std::vector<unsigned>& ns) {
  std::vector<Point> pts;
  for (unsigned d : ds) {
    for (unsigned n : ns) pts.push_back({d, n});
  }
  return pts;
}

// ---- simulate ------------------------------------------------------------

int cmd_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const ConfigFile cf = load_spec_config(spec);
  const auto pts = grid(or_default(spec.sweep_d, {64}), or_default(spec.precision, {8}));

  struct Row {
    CycleReport report;
    std::uint64_t seed = 0;
    bool match = false;
  };
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
    const auto [d, n] = pts[i];
    const ArchConfig arch = spec.fit_fabric ? fabric_for(cf.arch, d, d) : cf.arch;
    const ValidatedConfig cfg = validate(arch);
    Row row;
    row.seed = point_seed(spec.seed, d, n);
    const unsigned headroom =
        spec.full_range ? 2 * n + ceil_log2(d) : cfg.accum_width();
    const GemvProblem prob = spec.identity ? identity_problem(d, n, row.seed, headroom)
                                           : random_problem(d, d, n, row.seed, headroom);
    const GemvResult res = run_gemv(cfg, prob);
    row.report = res.report;
    row.match = spec.identity ? res.y == prob.vector : res.y == reference_gemv(prob);
    return row;
  });

  std::string text;
  if (spec.format == OutputFormat::Json) {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ojson j;
      j["D"] = pts[i].d;
      j["N"] = pts[i].n;
      j["seed"] = rows[i].seed;
      j["cycles"] = cycle_report_json(rows[i].report);
      j["reduction_cycles"] = reduction_cycles(rows[i].report);
      j["match"] = rows[i].match;
      arr.push_back(j);
    }
    text = arr.dump(2) + "\n";
  } else {
    text = "D,N,seed,load,multiply,inblock,array,shiftout,controller,total,reduction_cycles,match\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      text += std::to_string(pts[i].d) + "," + std::to_string(pts[i].n) + "," +
              std::to_string(rows[i].seed) + "," + csv_cycles(rows[i].report) + "," +
              std::to_string(reduction_cycles(rows[i].report)) + "," +
              (rows[i].match ? "1" : "0") + "\n";
    }
  }
  emit(spec, text, out);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!rows[i].match) {
      err << "simulate: D=" << pts[i].d << " N=" << pts[i].n
          << ": result differs from the reference GEMV\n";
      return exit_code::kVerify;
    }
  }
  return exit_code::kOk;
}

// ---- model / compare -----------------------------------------------------

std::vector<PhaseBreakdown> model_rows(const RunSpec& spec, const ValidatedConfig& cfg,
                                       const std::vector<System>& systems,
                                       const std::vector<unsigned>& ds,
                                       const std::vector<unsigned>& ns) {
  std::vector<PhaseBreakdown> rows;
  for (unsigned d : ds) {
    for (unsigned n : ns) {
      for (System s : systems) rows.push_back(gemv_latency(s, d, n, cfg, spec.inblock_mode));
    }
  }
  return rows;
}

const std::vector<System> kModelDefault = {System::Imagine,     System::ImagineSlice4,
                                           System::CcbGemv,     System::ComefaD,
                                           System::Spar2Binary, System::Spar2Linear};

int cmd_model(const RunSpec& spec, std::ostream& out) {
  const ConfigFile cf = load_spec_config(spec);
  const ValidatedConfig cfg = validate(cf.arch);
  check_clock_overrides(spec);
  const auto systems = parse_designs(spec.designs, kModelDefault);
  const auto rows = model_rows(spec, cfg, systems,
                               or_default(spec.sweep_d, {64, 128, 256, 512, 1024, 2048}),
                               or_default(spec.precision, {8}));
  std::string text;
  if (spec.format == OutputFormat::Json) {
    ojson arr = ojson::array();
    for (const auto& b : rows) arr.push_back(breakdown_json(b, clock_for(spec, b.system)));
    text = arr.dump(2) + "\n";
  } else {
    text = csv_header() + "\n";
    for (const auto& b : rows) text += csv_row(b, clock_for(spec, b.system)) + "\n";
  }
  emit(spec, text, out);
  return exit_code::kOk;
}

int cmd_compare(const RunSpec& spec, std::ostream& out) {
  const ConfigFile cf = load_spec_config(spec);
  const ValidatedConfig cfg = validate(cf.arch);
  check_clock_overrides(spec);
  const auto systems = parse_designs(
      spec.designs, {System::Imagine, System::CcbGemv, System::ComefaD, System::Spar2Binary});
  const auto rows = model_rows(spec, cfg, systems, or_default(spec.sweep_d, {512, 1024, 2048}),
                               or_default(spec.precision, {8}));
  const double ref = clock_for(spec, System::Imagine);

  std::string text;
  if (spec.format == OutputFormat::Json) {
    ojson doc;
    doc["rows"] = ojson::array();
    for (const auto& b : rows) doc["rows"].push_back(breakdown_json(b, clock_for(spec, b.system)));
    doc["clock_ratios"] = ojson::array();
    for (const auto& c : system_clocks()) {
      ojson j;
      j["system"] = c.system;
      j["f_sys_mhz"] = c.f_sys_mhz;
      j["imagine_ratio"] = std::stod(fixed(ref / c.f_sys_mhz, 2));
      doc["clock_ratios"].push_back(j);
    }
    text = doc.dump(2) + "\n";
  } else {
    text = csv_header() + "\n";
    for (const auto& b : rows) text += csv_row(b, clock_for(spec, b.system)) + "\n";
    text += "\nsystem,f_sys_mhz,imagine_ratio\n";
    for (const auto& c : system_clocks()) {
      text += std::string(c.system) + "," + fixed(c.f_sys_mhz, 1) + "," +
              fixed(ref / c.f_sys_mhz, 2) + "\n";
    }
  }
  emit(spec, text, out);
  return exit_code::kOk;
}

// ---- fit -----------------------------------------------------------------

int cmd_fit(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const ConfigFile cf = load_spec_config(spec);
  const ValidatedConfig cfg = validate(cf.arch);
  const auto systems = parse_designs(
      spec.designs, {System::Spar2Linear, System::Spar2Binary, System::CcbGemv, System::Imagine});
  const auto ns = or_default(spec.precision, {32});
  const auto ps = or_default(spec.sweep_d, default_fit_ps());

  struct Job {
    System s;
    unsigned n;
  };
  std::vector<Job> jobs;
  for (unsigned n : ns) {
    for (System s : systems) jobs.push_back({s, n});
  }
  for (const auto& j : jobs) {
    if (j.s == System::Bramac) throw UnsupportedDesign("BRAMAC has no published cycle formula");
  }
  const auto fits = parallel_map<GoldFit>(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto series =
        job.s == System::Imagine
            ? simulated_reduction_series(cf.arch, ps, job.n, point_seed(spec.seed, 0, job.n))
            : model_reduction_series(job.s, ps, job.n, cfg, spec.inblock_mode);
    return fit(series, job.n);
  });

  std::string text;
  if (spec.format == OutputFormat::Json) {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      arr.push_back(fit_report(system_info(jobs[i].s).key, fits[i], classify(fits[i], jobs[i].n)));
    }
    text = arr.dump(2) + "\n";
  } else {
    text = "design,N,a,b,c,residual_rms,addition_label,movement_label\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& f = fits[i];
      const auto cls = classify(f, jobs[i].n);
      text += std::string(system_info(jobs[i].s).key) + "," + std::to_string(jobs[i].n) + "," +
              fixed(f.a, 6) + "," + fixed(f.b, 6) + "," + fixed(f.c, 6) + "," +
              fixed(f.residual_rms, 6) + "," + std::string(to_string(cls.addition)) + "," +
              std::string(to_string(cls.movement)) + "\n";
    }
  }
  emit(spec, text, out);

  if (spec.assert_brackets) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].s != System::Imagine || jobs[i].n != 32) continue;
      const auto& f = fits[i];
      if (!kImagineBracket.contains(f)) {
        err << "fit: imagine N=32 (a,b,c)=(" << f.a << "," << f.b << "," << f.c
            << ") outside a in [1.0,1.3], b in [0.8,1.1], c in [138,148]\n";
        return exit_code::kVerify;
      }
    }
  }
  return exit_code::kOk;
}

// ---- scale ---------------------------------------------------------------

int cmd_scale(const RunSpec& spec, std::ostream& out) {
  const ConfigFile cf = load_spec_config(spec);
  const ValidatedConfig cfg = validate(cf.arch);
  const unsigned n = or_default(spec.precision, {8}).front();
  const unsigned k = cfg.k();
  const unsigned o = cfg.pipe_overhead();

  std::string text;
  if (spec.format == OutputFormat::Json) {
    ojson doc;
    doc["devices"] = ojson::array();
    doc["ideal_scaling"] = ojson::object();
    for (const auto& d : cf.devices) {
      const auto pes = max_pes(d, k);
      ojson j;
      j["device"] = d.id;
      j["part"] = d.part;
      j["family"] = to_string(d.family);
      j["bram36"] = d.bram36_count;
      j["bram_fmax_mhz"] = d.bram_fmax_mhz;
      j["max_pes"] = pes;
      j["max_pes_k"] = format_kilo(pes);
      j["peak_tops"] = peak_tops(pes, d.bram_fmax_mhz, n, k, o);
      doc["devices"].push_back(j);
      ojson curve = ojson::array();
      for (const auto& pt : ideal_scaling(d, k, d.bram_fmax_mhz, n, 8, o)) {
        curve.push_back({{"bram36", pt.bram36}, {"pes", pt.pes}, {"tops", pt.tops}});
      }
      doc["ideal_scaling"][d.id] = curve;
    }
    text = doc.dump(2) + "\n";
  } else {
    text = "device,part,family,bram36,bram_fmax_mhz,max_pes,max_pes_k,peak_tops\n";
    for (const auto& d : cf.devices) {
      const auto pes = max_pes(d, k);
      text += d.id + "," + d.part + "," + std::string(to_string(d.family)) + "," +
              std::to_string(d.bram36_count) + "," + fixed(d.bram_fmax_mhz, 2) + "," +
              std::to_string(pes) + "," + format_kilo(pes) + "," +
              fixed(peak_tops(pes, d.bram_fmax_mhz, n, k, o), 4) + "\n";
    }
    text += "\ndevice,bram36,pes,tops\n";
    for (const auto& d : cf.devices) {
      for (const auto& pt : ideal_scaling(d, k, d.bram_fmax_mhz, n, 8, o)) {
        text += d.id + "," + std::to_string(pt.bram36) + "," + std::to_string(pt.pes) + "," +
                fixed(pt.tops, 6) + "\n";
      }
    }
  }
  emit(spec, text, out);
  return exit_code::kOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const ConfigFile cf = load_spec_config(spec);
  const auto pts =
      grid(or_default(spec.sweep_d, {16, 32, 64, 128, 256}), or_default(spec.precision, {8, 16, 32}));

  struct Row {
    CycleReport sim;
    PhaseBreakdown model;
    bool exact = false;
  };
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
    const auto [d, n] = pts[i];
    const ValidatedConfig cfg = validate(fabric_for(cf.arch, d, d));
    const GemvProblem prob = random_problem(d, d, n, point_seed(spec.seed, d, n), cfg.accum_width());
    const GemvResult res = run_gemv(cfg, prob);
    return Row{res.report, imagine_latency(d, d, n, cfg), res.y == reference_gemv(prob)};
  });

  auto diff = [](const Row& r) {
    std::string d;
    auto cmp = [&](const char* name, Cycles sim, Cycles model) {
      if (sim != model) {
        d += std::string(" ") + name + " simulated=" + std::to_string(sim) +
             " model=" + std::to_string(model);
      }
    };
    cmp("load", r.sim.load, r.model.load);
    cmp("multiply", r.sim.multiply, r.model.multiply);
    cmp("inblock", r.sim.inblock, r.model.inblock);
    cmp("array", r.sim.array, r.model.array);
    cmp("shiftout", r.sim.shiftout, r.model.shiftout);
    cmp("controller", r.sim.controller, r.model.controller);
    if (!r.exact) d += " result differs from the reference GEMV";
    return d;
  };

  std::string text;
  ojson arr = ojson::array();
  if (spec.format == OutputFormat::Csv) {
    text = "D,N,load,multiply,inblock,array,shiftout,controller,total,status\n";
  }
  int code = exit_code::kOk;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string d = diff(rows[i]);
    const char* status = d.empty() ? "match" : "diverged";
    if (spec.format == OutputFormat::Json) {
      ojson j;
      j["D"] = pts[i].d;
      j["N"] = pts[i].n;
      j["cycles"] = cycle_report_json(rows[i].sim);
      j["status"] = status;
      arr.push_back(j);
    } else {
      text += std::to_string(pts[i].d) + "," + std::to_string(pts[i].n) + "," +
              csv_cycles(rows[i].sim) + "," + status + "\n";
    }
    if (!d.empty()) {
      err << "verify: D=" << pts[i].d << " N=" << pts[i].n << ":" << d << "\n";
      code = exit_code::kVerify;
      break;
    }
  }
  if (spec.format == OutputFormat::Json) text = arr.dump(2) + "\n";
  emit(spec, text, out);
  return code;
}

}  // namespace

std::uint64_t point_seed(std::uint64_t seed, unsigned d, unsigned n) {
  // splitmix64 over the packed point key
  std::uint64_t z = seed ^ (std::uint64_t{d} << 32 | n) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<unsigned> default_fit_ps() { return {2, 4, 8, 16, 32, 64}; }

std::vector<FitPoint> model_reduction_series(System s, std::span<const unsigned> ps, unsigned n,
                                             const ValidatedConfig& cfg, InBlockMode mode) {
  DesignModel m;
  m.n = n;
  m.k = cfg.k();
  m.pipe_overhead = cfg.pipe_overhead();
  m.mode = mode;
  switch (s) {
    case System::Spar2Linear:
      m.id = DesignId::Spar2Linear;
      m.k = 1;
      break;
    case System::Spar2Binary:
      m.id = DesignId::Spar2Binary;
      m.k = 1;
      break;
    case System::CcbGemv:
    case System::ComefaD:
      m.id = DesignId::CcbComefa;
      break;
    case System::Imagine:
      m.id = DesignId::BinaryHopping;
      break;
    case System::ImagineSlice4:
      m.id = DesignId::ImagineSlice;
      m.slice = 4;
      m.radix = 4;
      break;
    case System::Bramac:
      throw UnsupportedDesign("BRAMAC has no published cycle formula");
  }
  std::vector<FitPoint> pts;
  for (unsigned p : ps) {
    m.p = p;
    pts.push_back({static_cast<double>(p), static_cast<double>(reduction_latency(m))});
  }
  return pts;
}

std::vector<FitPoint> simulated_reduction_series(const ArchConfig& base,
                                                 std::span<const unsigned> ps, unsigned n,
                                                 std::uint64_t seed, unsigned rows) {
  ArchConfig small = base;
  small.tile_grid = {1, 1};
  const auto pts = parallel_map<FitPoint>(ps.size(), [&](std::size_t i) {
    const unsigned cols = ps[i] * base.pe_per_block;
    const ValidatedConfig cfg = validate(fabric_for(small, rows, cols));
    const GemvProblem prob = random_problem(rows, cols, n, seed + i, cfg.accum_width());
    const GemvResult res = run_gemv(cfg, prob);
    if (res.y != reference_gemv(prob)) {
      throw OverflowError("simulated series point P=" + std::to_string(ps[i]) +
                          " differs from the reference GEMV");
    }
    return FitPoint{static_cast<double>(ps[i]), static_cast<double>(reduction_cycles(res.report))};
  });
  return pts;
}

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    switch (spec.command) {
      case Command::Simulate: return cmd_simulate(spec, out, err);
      case Command::Model: return cmd_model(spec, out);
      case Command::Fit: return cmd_fit(spec, out, err);
      case Command::Compare: return cmd_compare(spec, out);
      case Command::Scale: return cmd_scale(spec, out);
      case Command::Verify: return cmd_verify(spec, out, err);
    }
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kOverflow;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit-serial PIM GEMV fabric: simulator, latency models and reduction fits",
               "pimgold"};
  app.require_subcommand(1);
  RunSpec spec;
  std::string format = "csv";
  std::string inblock = "table";
  std::vector<std::string> clocks;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--config", spec.config_path, "INI file with [arch] and [device.<id>]");
    sc->add_option("--sweep-d", spec.sweep_d, "matrix dimensions (fit: P values)")->delimiter(',');
    sc->add_option("--precision", spec.precision, "operand precisions N")->delimiter(',');
    sc->add_option("--designs", spec.designs, "design keys")->delimiter(',');
    sc->add_option("--seed", spec.seed, "problem generator seed");
    sc->add_option("--out", spec.out_path, "output file (default stdout)");
    sc->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_flag("--assert", spec.assert_brackets, "exit 3 when the IMAGine fit misses its bracket");
  };
  auto add_model_opts = [&](CLI::App* sc) {
    sc->add_option("--clock", clocks, "clock override design=MHz")->delimiter(',');
    sc->add_option("--inblock-mode", inblock, "CCB/CoMeFa in-block term: table or reported")
        ->check(CLI::IsMember({"table", "reported"}));
  };

  auto* sim = app.add_subcommand("simulate", "run GEMVs on the cycle-accurate fabric");
  add_common(sim);
  sim->add_flag("--identity", spec.identity, "identity matrix; output must equal the vector");
  sim->add_flag("--fit-fabric", spec.fit_fabric, "grow the tile grid to hold every D");
  sim->add_flag("--full-range", spec.full_range, "draw operands over the full N-bit range");
  auto* model = app.add_subcommand("model", "analytical GEMV latency per design");
  add_common(model);
  add_model_opts(model);
  auto* fitc = app.add_subcommand("fit", "nonnegative least-squares reduction fits");
  add_common(fitc);
  add_model_opts(fitc);
  auto* cmp = app.add_subcommand("compare", "execution time across GEMV engines");
  add_common(cmp);
  add_model_opts(cmp);
  auto* scale = app.add_subcommand("scale", "device PE capacity and ideal TOPS scaling");
  add_common(scale);
  auto* ver = app.add_subcommand("verify", "simulator vs model cycle lockstep");
  add_common(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  if (sim->parsed()) spec.command = Command::Simulate;
  else if (model->parsed()) spec.command = Command::Model;
  else if (fitc->parsed()) spec.command = Command::Fit;
  else if (cmp->parsed()) spec.command = Command::Compare;
  else if (scale->parsed()) spec.command = Command::Scale;
  else spec.command = Command::Verify;

  spec.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  spec.inblock_mode =
      inblock == "reported" ? InBlockMode::ReportedConstant : InBlockMode::TableFormula;
  for (const auto& c : clocks) {
    const auto eq = c.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "error: --clock expects design=MHz, got '" << c << "'\n";
      return exit_code::kUsage;
    }
    try {
      spec.clock_overrides.emplace_back(c.substr(0, eq), std::stod(c.substr(eq + 1)));
    } catch (const std::exception&) {
      err << "error: --clock value '" << c.substr(eq + 1) << "' is not a number\n";
      return exit_code::kUsage;
    }
  }
  for (unsigned d : spec.sweep_d) {
    if (d == 0) {
      err << "error: --sweep-d values must be >= 1\n";
      return exit_code::kUsage;
    }
  }
  return run_command(spec, out, err);
}

}  // namespace pimgold
