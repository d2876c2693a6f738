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

#include "pimgold/arch_config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pimgold/errors.hpp"

namespace pimgold {

namespace {

std::string dim(const GridDim& g) {
  return std::to_string(g.rows) + "x" + std::to_string(g.cols);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

unsigned parse_unsigned(std::string_view key, std::string_view v) {
  unsigned out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("key '" + std::string(key) + "' expects an unsigned integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + std::string(key) + "' expects a number, got '" +
                      std::string(v) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + std::string(key) + "' expects a boolean, got '" + std::string(v) +
                    "'");
}

GridDim parse_dim(std::string_view key, std::string_view v) {
  const auto x = v.find_first_of("xX,");
  if (x == std::string_view::npos) {
    throw ConfigError("key '" + std::string(key) + "' expects ROWSxCOLS, got '" +
                      std::string(v) + "'");
  }
  return GridDim{parse_unsigned(key, trim(v.substr(0, x))),
                 parse_unsigned(key, trim(v.substr(x + 1)))};
}

void apply_arch_key(ArchConfig& a, const std::string& key, const std::string& v) {
  if (key == "pe_per_block") a.pe_per_block = parse_unsigned(key, v);
  else if (key == "regfile_bits") a.regfile_bits = parse_unsigned(key, v);
  else if (key == "block_grid_per_tile") a.block_grid_per_tile = parse_dim(key, v);
  else if (key == "tile_grid") a.tile_grid = parse_dim(key, v);
  else if (key == "pipe_overhead") a.pipe_overhead = parse_unsigned(key, v);
  else if (key == "accum_width") a.accum_width = parse_unsigned(key, v);
  else if (key == "max_precision") a.max_precision = parse_unsigned(key, v);
  else if (key == "clock_mhz") a.clock_mhz = parse_double(key, v);
  else if (key == "fanout_levels") a.fanout_levels = parse_unsigned(key, v);
  else if (key == "stage_a") a.stages.a = parse_bool(key, v);
  else if (key == "stage_b") a.stages.b = parse_bool(key, v);
  else if (key == "stage_c") a.stages.c = parse_bool(key, v);
  else throw ConfigError("unknown key '" + key + "' in [arch]");
}

void apply_device_key(DeviceEntry& d, const std::string& key, const std::string& v) {
  if (key == "part") d.part = v;
  else if (key == "bram36_count") d.bram36_count = parse_unsigned(key, v);
  else if (key == "lut_to_bram_ratio") d.lut_to_bram_ratio = parse_double(key, v);
  else if (key == "family") d.family = parse_family(v);
  else if (key == "bram_fmax_mhz") d.bram_fmax_mhz = parse_double(key, v);
  else throw ConfigError("unknown key '" + key + "' in [device." + d.id + "]");
}

}  // namespace

ValidatedConfig validate(const ArchConfig& cfg) {
  const unsigned k = cfg.pe_per_block;
  // The data-in port carries one bit per PE lane in a 64-bit word.
  if (k < 2 || k > 64 || !std::has_single_bit(k)) {
    throw InvalidGeometry("pe_per_block must be a power of two in [2, 64], got " +
                          std::to_string(k));
  }
  const auto& bg = cfg.block_grid_per_tile;
  const auto& tg = cfg.tile_grid;
  if (bg.rows == 0 || bg.cols == 0) {
    throw InvalidGeometry("block_grid_per_tile must be >= 1x1, got " + dim(bg));
  }
  if (tg.rows == 0 || tg.cols == 0) {
    throw InvalidGeometry("tile_grid must be >= 1x1, got " + dim(tg));
  }
  if (!(cfg.clock_mhz > 0.0)) {
    throw InvalidGeometry("clock_mhz must be > 0, got " + std::to_string(cfg.clock_mhz));
  }
  if (cfg.accum_width == 0 || cfg.accum_width > 63) {
    throw InvalidGeometry("accum_width must be in [1, 63], got " +
                          std::to_string(cfg.accum_width));
  }
  if (cfg.max_precision == 0 || cfg.max_precision > 32) {
    throw InvalidGeometry("max_precision must be in [1, 32], got " +
                          std::to_string(cfg.max_precision));
  }
  const unsigned needed = 2 * cfg.accum_width + 2 * cfg.max_precision;
  if (cfg.regfile_bits < needed) {
    throw InvalidGeometry("regfile_bits " + std::to_string(cfg.regfile_bits) +
                          " < 2*accum_width + 2*max_precision = " + std::to_string(needed));
  }
  // Cell addresses travel in 10-bit instruction fields.
  if (cfg.regfile_bits > 1024) {
    throw InvalidGeometry("regfile_bits must be <= 1024 (10-bit addresses), got " +
                          std::to_string(cfg.regfile_bits));
  }

  ValidatedConfig v;
  v.arch_ = cfg;
  v.log2_k_ = static_cast<unsigned>(std::countr_zero(k));
  v.block_rows_ = bg.rows * tg.rows;
  v.block_cols_ = bg.cols * tg.cols;
  v.total_blocks_ = std::uint64_t{v.block_rows_} * v.block_cols_;
  return v;
}

ArchConfig fabric_for(const ArchConfig& base, unsigned rows, unsigned pe_cols) {
  ArchConfig out = base;
  const auto& bg = base.block_grid_per_tile;
  const unsigned k = std::max(base.pe_per_block, 1u);
  const unsigned block_cols = (pe_cols + k - 1) / k;
  if (bg.rows > 0 && bg.cols > 0) {
    out.tile_grid.rows = std::max(base.tile_grid.rows, (rows + bg.rows - 1) / bg.rows);
    out.tile_grid.cols = std::max(base.tile_grid.cols, (block_cols + bg.cols - 1) / bg.cols);
  }
  return out;
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Virtex7: return "Virtex-7";
    case Family::UltraScalePlus: return "UltraScale+";
    case Family::Stratix10: return "Stratix-10";
    case Family::Arria10: return "Arria-10";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  if (s == "Virtex-7" || s == "V7") return Family::Virtex7;
  if (s == "UltraScale+" || s == "US+") return Family::UltraScalePlus;
  if (s == "Stratix-10" || s == "S10") return Family::Stratix10;
  if (s == "Arria-10" || s == "A10") return Family::Arria10;
  throw ConfigError("unknown device family '" + std::string(s) + "'");
}

std::uint64_t max_pes(std::uint64_t bram36_count, unsigned k) {
  if (k == 0) throw DomainError("max_pes requires k >= 1");
  return bram36_count * 2 * k;
}

std::uint64_t max_pes(const DeviceEntry& device, unsigned k) {
  return max_pes(device.bram36_count, k);
}

std::string format_kilo(std::uint64_t pes) { return std::to_string(pes / 1000) + "K"; }

const std::vector<DeviceEntry>& builtin_devices() {
  // BRAM Fmax: 1/1.356 ns on UltraScale+, 1/1.839 ns on Virtex-7.
  static const std::vector<DeviceEntry> table = {
      {"U55", "xcu55c-fsvh-2", 2016, 646, Family::UltraScalePlus, 737.0},
      {"V7-a", "xc7vx330tffg-2", 750, 272, Family::Virtex7, 543.77},
      {"V7-b", "xc7vx485tffg-2", 1030, 295, Family::Virtex7, 543.77},
      {"V7-c", "xc7v2000tfhg-2", 1292, 946, Family::Virtex7, 543.77},
      {"V7-d", "xc7vx1140tflg-2", 1880, 379, Family::Virtex7, 543.77},
      {"US-a", "xcvu3p-ffvc-3", 720, 547, Family::UltraScalePlus, 737.0},
      {"US-b", "xcvu23p-vsva-3", 2112, 488, Family::UltraScalePlus, 737.0},
      {"US-c", "xcvu19p-fsvb-2", 2160, 1892, Family::UltraScalePlus, 737.0},
      {"US-d", "xcvu29p-figd-3", 2688, 643, Family::UltraScalePlus, 737.0},
      // Intel parts count M20K blocks in the bram36_count column.
      {"S10-GX2800", "1SG280", 11721, 0, Family::Stratix10, 1000.0},
      {"A10-GX900", "10AX090", 2423, 0, Family::Arria10, 730.0},
  };
  return table;
}

const DeviceEntry& find_device(const std::vector<DeviceEntry>& devices, std::string_view id) {
  auto it = std::find_if(devices.begin(), devices.end(),
                         [&](const DeviceEntry& d) { return d.id == id; });
  if (it == devices.end()) throw ConfigError("unknown device '" + std::string(id) + "'");
  return *it;
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile out;
  out.devices = builtin_devices();

  enum class Section { None, Arch, Device };
  Section section = Section::None;
  DeviceEntry* device = nullptr;

  std::istringstream in{std::string(text)};
  std::string raw;
  unsigned line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name == "arch") {
        section = Section::Arch;
      } else if (name.rfind("device.", 0) == 0 && name.size() > 7) {
        section = Section::Device;
        const std::string id = name.substr(7);
        auto it = std::find_if(out.devices.begin(), out.devices.end(),
                               [&](const DeviceEntry& d) { return d.id == id; });
        if (it == out.devices.end()) {
          out.devices.push_back(DeviceEntry{id, id, 0, 0.0, Family::UltraScalePlus, 0.0});
          device = &out.devices.back();
        } else {
          device = &*it;
        }
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    switch (section) {
      case Section::None:
        throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                          "' outside of a section");
      case Section::Arch:
        apply_arch_key(out.arch, key, value);
        break;
      case Section::Device:
        apply_device_key(*device, key, value);
        break;
    }
  }

  for (const auto& d : out.devices) {
    if (d.bram36_count == 0) throw ConfigError("device '" + d.id + "' needs bram36_count > 0");
    if (!(d.bram_fmax_mhz > 0.0)) {
      throw ConfigError("device '" + d.id + "' needs bram_fmax_mhz > 0");
    }
  }
  return out;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pimgold
