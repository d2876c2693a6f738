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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pimgold {

using Cycles = std::uint64_t;

struct GridDim {
  unsigned rows = 1;
  unsigned cols = 1;

  friend bool operator==(const GridDim&, const GridDim&) = default;
};

/// Optional register stages inside the tile controller (dashed A/B/C cuts).
/// Each enabled stage adds one cycle of pipeline fill to a program.
struct ControllerStages {
  bool a = true;
  bool b = false;
  bool c = false;

  unsigned count() const { return unsigned{a} + unsigned{b} + unsigned{c}; }
  friend bool operator==(const ControllerStages&, const ControllerStages&) = default;
};

/// Geometry and timing of one fabric instance. Defaults describe the
/// full-device U55 build: 12x2 blocks per tile, 14x12 tiles, 16 PEs per block.
struct ArchConfig {
  unsigned pe_per_block = 16;
  unsigned regfile_bits = 1024;
  GridDim block_grid_per_tile{12, 2};
  GridDim tile_grid{14, 12};
  unsigned pipe_overhead = 4;
  unsigned accum_width = 32;
  unsigned max_precision = 32;
  double clock_mhz = 737.0;
  unsigned fanout_levels = 2;
  ControllerStages stages{};

  friend bool operator==(const ArchConfig&, const ArchConfig&) = default;
};

/// An ArchConfig that passed every invariant, plus the derived fabric shape.
class ValidatedConfig {
 public:
  const ArchConfig& arch() const { return arch_; }

  unsigned k() const { return arch_.pe_per_block; }
  unsigned log2_k() const { return log2_k_; }
  unsigned accum_width() const { return arch_.accum_width; }
  unsigned pipe_overhead() const { return arch_.pipe_overhead; }

  /// Block rows/cols across the whole fabric (tiles cascaded).
  unsigned block_rows() const { return block_rows_; }
  unsigned block_cols() const { return block_cols_; }
  /// Blocks in one fabric row: the largest reduction span P.
  unsigned max_blocks_per_row() const { return block_cols_; }
  unsigned pe_columns() const { return block_cols_ * arch_.pe_per_block; }

  std::uint64_t total_blocks() const { return total_blocks_; }
  std::uint64_t total_pes() const { return total_blocks_ * arch_.pe_per_block; }

  friend bool operator==(const ValidatedConfig&, const ValidatedConfig&) = default;

 private:
  friend ValidatedConfig validate(const ArchConfig& cfg);
  ValidatedConfig() = default;

  ArchConfig arch_;
  unsigned log2_k_ = 0;
  unsigned block_rows_ = 0;
  unsigned block_cols_ = 0;
  std::uint64_t total_blocks_ = 0;
};

/// Throws InvalidGeometry naming the first violated invariant.
ValidatedConfig validate(const ArchConfig& cfg);
inline ValidatedConfig validate(const ValidatedConfig& cfg) { return validate(cfg.arch()); }

/// Smallest tile grid (keeping every other parameter) whose fabric holds a
/// rows x pe_cols problem. Never shrinks the base grid.
ArchConfig fabric_for(const ArchConfig& base, unsigned rows, unsigned pe_cols);

enum class Family { Virtex7, UltraScalePlus, Stratix10, Arria10 };

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

struct DeviceEntry {
  std::string id;
  std::string part;
  unsigned bram36_count = 0;
  double lut_to_bram_ratio = 0.0;
  Family family = Family::UltraScalePlus;
  double bram_fmax_mhz = 0.0;
};

/// PEs when every BRAM36 is split into two RAMB18 blocks of k PEs each.
std::uint64_t max_pes(const DeviceEntry& device, unsigned k);
std::uint64_t max_pes(std::uint64_t bram36_count, unsigned k);

/// Thousands of PEs in the device-table style ("64K"): truncated, not rounded.
std::string format_kilo(std::uint64_t pes);

/// Table of representative devices shipped with the tool.
const std::vector<DeviceEntry>& builtin_devices();
const DeviceEntry& find_device(const std::vector<DeviceEntry>& devices, std::string_view id);

struct ConfigFile {
  ArchConfig arch;
  std::vector<DeviceEntry> devices;  // built-ins followed by file entries
};

/// INI-style loader: [arch] and [device.<id>] sections, `key = value` lines,
/// `#`/`;` comments. Unknown sections or keys raise ConfigError.
ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace pimgold
