// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "solver.hpp"

namespace hs {

// Everything assembled for one configuration; immutable once built.
struct Problem {
  RunConfig cfg;
  std::unique_ptr<Model> model;
  NullSpaceInfo nsi;
  Discretization disc;
  SpectralSystem sys;
  HalfRangeOperators ops;
  BoundarySystem bc;
};

std::unique_ptr<Model> build_model(const RunConfig& cfg);
std::unique_ptr<Problem> build_problem(const RunConfig& cfg);

struct Solution {
  Vector h;  // incoming data at positive nodes
  RecoveredSolution rec;
};

Solution solve(const Problem& p);
Solution solve(const Problem& p, const IncomingSpec& incoming);

// x = 0 followed by 60 geometrically spaced points ending at 10/|lambda_max|.
Vector default_x_grid(const SpectralSystem& sys);
Vector x_grid_for(const Problem& p);

// Max over nodes and x of |eta(x) - X| for data h = X - K(X|mu<0).
double reproduction_error(const Problem& p, const Vector& x_mode, const Vector& xs);

// Files produced by a command; written atomically together.
class OutputSet {
 public:
  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }
  void write(const std::string& dir) const;

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

struct ValidationRow {
  std::string invariant;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
};

OutputSet cmd_solve(const RunConfig& cfg);
OutputSet cmd_convergence(const RunConfig& cfg);
// Returns the report rows; the output set holds validation.csv.
OutputSet cmd_validate(const RunConfig& cfg, std::vector<ValidationRow>& rows);
OutputSet cmd_modes(const RunConfig& cfg, bool dump_basis);

std::string format_number(double x);

}  // namespace hs
