// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "drivers.hpp"
#include "errors.hpp"

using namespace hs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

RunConfig config(const std::string& name) {
  return load_config(std::string(HALFSPACE_CONFIG_DIR) + "/" + name);
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& text) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

// Error of the recovered solution against a target over every node and x.
// The bulk figure restricts to nodes carrying weight above 1e-10 of the
// largest; the weighted figure is the discrete L2 norm.
struct Deviation {
  double max_node = 0.0;
  double bulk = 0.0;
  double weighted = 0.0;
};

Deviation deviation(const Problem& p, const Solution& s, const Vector& target) {
  const VelocityGrid& g = p.model->grid();
  const double wmax = *std::max_element(g.weight.begin(), g.weight.end());
  Deviation d;
  for (double x : x_grid_for(p)) {
    const Vector eta = s.rec.eta_nodal(p.disc, p.sys, x);
    double l2 = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double e = std::abs(eta[n] - target[n]);
      d.max_node = std::max(d.max_node, e);
      if (g.weight[n] >= 1e-10 * wmax) d.bulk = std::max(d.bulk, e);
      l2 += g.weight[n] * e * e;
    }
    d.weighted = std::max(d.weighted, std::sqrt(l2));
  }
  return d;
}

IncomingSpec shifted(IncomingSpec::Kind family, std::size_t index) {
  IncomingSpec s;
  s.kind = IncomingSpec::Kind::Shifted;
  s.shifted_of = family;
  s.index = index;
  return s;
}

// Reproduces X0,1, X0,2 and X+ from boundary data X - K(X|mu<0).
Outcome reproduce_bgk(const std::string& cfg_name, double alpha_d, double alpha_s) {
  RunConfig cfg = config(cfg_name);
  cfg.boundary.alpha_d = alpha_d;
  cfg.boundary.alpha_s = alpha_s;
  Outcome out;
  const auto t0 = Clock::now();
  const auto p = build_problem(cfg);
  const double build = seconds_since(t0);
  struct Target {
    const char* label;
    IncomingSpec::Kind family;
    std::size_t index;
  };
  for (const Target t : {Target{"X0,1", IncomingSpec::Kind::Null, 0},
                         Target{"X0,2", IncomingSpec::Kind::Null, 1},
                         Target{"X+", IncomingSpec::Kind::Plus, 0}}) {
    const auto t1 = Clock::now();
    const Solution s = solve(*p, shifted(t.family, t.index));
    const double runtime = build + seconds_since(t1);
    const Vector& x = t.family == IncomingSpec::Kind::Null ? p->nsi.zero[t.index] : p->nsi.plus[t.index];
    const Deviation d = deviation(*p, s, x);
    out.require(d.max_node <= 1e-6 && runtime <= 30.0,
                std::string(t.label) + " max-node " + sci(d.max_node) + " (bulk " + sci(d.bulk) +
                    ", weighted " + sci(d.weighted) + ", " + sci(runtime) + " s)");
  }
  return out;
}

Outcome criterion_negative_mode() {
  RunConfig cfg = config("bgk2d_incoming.ini");
  cfg.boundary.alpha_d = cfg.boundary.alpha_s = 0.0;
  const auto p = build_problem(cfg);
  IncomingSpec minus;
  minus.kind = IncomingSpec::Kind::Minus;
  minus.index = 0;
  const Solution s = solve(*p, minus);
  const Deviation d = deviation(*p, s, p->nsi.minus[0]);
  Outcome out;
  out.require(d.max_node >= 1e-2, "X- max-node " + sci(d.max_node) + " (bulk " + sci(d.bulk) + ")");
  return out;
}

Outcome criterion_convergence() {
  RunConfig cfg = config("rte2_incoming.ini");
  cfg.n_list = {4, 8, 16, 32};
  const OutputSet set = cmd_convergence(cfg);
  std::string csv;
  for (const auto& [name, content] : set.files())
    if (name == "convergence.csv") csv = content;
  // Rows: N,species,l2_error,slope. The Q component is species 1; the
  // reference N is compared against itself and skipped.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<double> errors;
  double slope = NAN;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string n, species, err, sl;
    std::getline(ls, n, ',');
    std::getline(ls, species, ',');
    std::getline(ls, err, ',');
    std::getline(ls, sl, ',');
    if (species != "1" || n == std::to_string(cfg.n_list.back())) continue;
    errors.push_back(std::strtod(err.c_str(), nullptr));
    slope = std::strtod(sl.c_str(), nullptr);
  }
  bool decreasing = errors.size() == 3;
  for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
  Outcome out;
  std::string list;
  for (double e : errors) list += (list.empty() ? "" : " > ") + sci(e);
  out.require(decreasing, "Q errors " + list);
  out.require(slope > 0.5, "slope " + sci(slope));
  return out;
}

Outcome criterion_phonon() {
  Outcome out;
  for (const char* name : {"phonon_incoming.ini", "phonon_maxwell.ini"}) {
    const RunConfig cfg = config(name);
    const auto p = build_problem(cfg);
    const Solution s = solve(*p);
    const Deviation d = deviation(*p, s, p->nsi.zero[0]);
    out.require(d.max_node <= 1e-6, std::string(name) + " max-node " + sci(d.max_node));
  }
  return out;
}

Outcome criterion_counts() {
  struct Case {
    ModelKind kind;
    std::size_t n, k, per_sign, zero;
  };
  Outcome out;
  for (const Case c : {Case{ModelKind::Rte2, 4, 1, 8, 2}, Case{ModelKind::Rte2, 16, 1, 32, 2},
                       Case{ModelKind::Bgk2d, 8, 8, 64, 8}, Case{ModelKind::Phonon, 15, 1, 120, 8}}) {
    RunConfig cfg;
    cfg.model = c.kind;
    cfg.n = c.n;
    cfg.k = c.k;
    const auto p = build_problem(cfg);
    const SpectralSystem& s = p->sys;
    out.require(s.n_pos == c.per_sign && s.n_neg == c.per_sign && s.n_zero == c.zero,
                std::string(model_name(c.kind)) + " N=" + std::to_string(c.n) + " (" +
                    std::to_string(s.n_pos) + "," + std::to_string(s.n_neg) + "," +
                    std::to_string(s.n_zero) + ")");
  }
  return out;
}

Outcome criterion_reflection_bounds() {
  Outcome out;
  double worst_norm = -INFINITY, worst_beta = INFINITY;
  RunConfig cfgs[3];
  cfgs[0].model = ModelKind::Rte2;
  cfgs[1].model = ModelKind::Bgk2d;
  cfgs[1].n = 8;
  cfgs[1].k = 8;
  cfgs[2].model = ModelKind::Phonon;
  cfgs[2].n = 15;
  for (const RunConfig& cfg : cfgs) {
    const auto model = build_model(cfg);
    for (auto [ad, as] : {std::pair{0.0, 0.0}, {0.3, 0.4}, {0.5, 0.2}}) {
      BoundarySpec spec;
      spec.alpha_d = ad;
      spec.alpha_s = as;
      const HalfRangeOperators ops = build_half_range(*model, spec);
      worst_norm = std::max(worst_norm, weighted_norm(model->grid(), ops.bar_k) - spec.alpha_r());
      worst_beta = std::min(worst_beta, beta1_check(*model, ops, spec, 100, cfg.seed).worst_margin);
    }
  }
  out.require(worst_norm <= 1e-10, "max(norm - alpha_r) " + sci(worst_norm));
  out.require(worst_beta >= -1e-12, "min beta1 margin " + sci(worst_beta));
  return out;
}

Outcome criterion_structural() {
  const char* wanted[] = {"quadrature_exactness", "basis_gram", "collision_self_adjoint",
                          "collision_nonnegative", "cholesky_default_alpha", "flux_invariance",
                          "damping_independence"};
  Outcome out;
  for (const char* name : {"rte2_incoming.ini", "bgk2d_maxwell.ini", "phonon_maxwell.ini"}) {
    std::vector<ValidationRow> rows;
    cmd_validate(config(name), rows);
    std::string failed;
    std::size_t checked = 0;
    for (const ValidationRow& r : rows) {
      const bool relevant = std::any_of(std::begin(wanted), std::end(wanted), [&](const char* w) {
        return r.invariant.rfind(w, 0) == 0;
      });
      if (!relevant) continue;
      ++checked;
      if (!r.pass) failed += " " + r.invariant + "=" + sci(r.measured);
    }
    out.require(failed.empty() && checked >= 7,
                std::string(name) + (failed.empty() ? " all " + std::to_string(checked) + " ok" : ":" + failed));
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_determinism() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / "halfspace_acceptance";
  fs::remove_all(root);
  for (const char* name : {"rte2_incoming.ini", "phonon_maxwell.ini"}) {
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / (std::string(name) + std::to_string(run));
      const std::string cmd = std::string(HALFSPACE_CLI) + " solve --config " +
                              HALFSPACE_CONFIG_DIR + "/" + name + " --out " + dir.string() +
                              " >/dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        out.require(false, std::string(name) + " solve failed");
        continue;
      }
      dirs.push_back(dir);
    }
    if (dirs.size() != 2) continue;
    std::size_t compared = 0;
    bool same = true;
    for (const auto& e : fs::directory_iterator(dirs[0])) {
      if (e.path().extension() != ".csv") continue;
      ++compared;
      same = same && slurp(e.path()) == slurp(dirs[1] / e.path().filename());
    }
    out.require(same && compared >= 3,
                std::string(name) + " " + std::to_string(compared) + " csv files " +
                    (same ? "identical" : "differ"));
  }
  fs::remove_all(root);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"bgk2d incoming reproduction", [] { return reproduce_bgk("bgk2d_incoming.ini", 0.0, 0.0); }},
      {"bgk2d Maxwell reproduction", [] { return reproduce_bgk("bgk2d_maxwell.ini", 0.3, 0.4); }},
      {"negative mode is not reproduced", criterion_negative_mode},
      {"rte2 convergence", criterion_convergence},
      {"phonon reproduction", criterion_phonon},
      {"mode counts", criterion_counts},
      {"reflection operator bounds", criterion_reflection_bounds},
      {"structural suites", criterion_structural},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  int id = 0;
  for (const Criterion& c : criteria) {
    ++id;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const Error& e) {
      o.pass = false;
      o.detail = std::string(error_kind_name(e.kind())) + ": " + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, c.title, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria pass\n", id - failures, id);
  return failures == 0 ? 0 : 1;
}
