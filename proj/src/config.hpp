// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "models.hpp"

namespace hs {

// Parsed run configuration. The file format is
//
//   # comment
//   [section]
//   key = value
//
// with keys addressed as "section.key" (case-insensitive). See README for
// the full key list.
struct RunConfig {
  ModelKind model = ModelKind::Rte2;
  std::size_t n = 16;
  std::size_t k = 1;
  PhononParams phonon;
  double alpha = 0.5;
  BoundarySpec boundary;
  std::string out_dir = "out";
  std::vector<double> x_grid;  // empty: automatic
  std::uint64_t seed = 1;
  std::vector<std::size_t> n_list{4, 8, 16, 32};
  std::string base_dir = ".";  // resolves relative table paths

  std::size_t transverse_count() const { return model == ModelKind::Bgk2d ? k : 1; }
  void validate() const;
};

RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

// Applies one "section.key" = value setting.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace hs
