// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfspace/halfspace.h"

namespace {

std::vector<size_t> parse_list(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoul(item));
  return out;
}

int report(hs_status status, const char* command) {
  if (status == HS_OK) {
    std::printf("%s: ok\n", command);
    return 0;
  }
  std::fprintf(stderr, "%s: %s\n", command, hs_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-space kinetic equation solver"};
  app.set_version_flag("--version", hs_version());
  app.require_subcommand(1);

  std::string config, out, n_list;
  bool dump_basis = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides output.dir)");
  };
  CLI::App* solve = app.add_subcommand("solve", "Solve and write solution, boundary slice, end state");
  CLI::App* conv = app.add_subcommand("convergence", "Boundary-slice errors against the largest N");
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite");
  CLI::App* modes = app.add_subcommand("modes", "Write the pencil spectrum and null-space report");
  for (CLI::App* sub : {solve, conv, validate, modes}) add_common(sub);
  conv->add_option("--n-list", n_list, "Comma-separated ascending N values, e.g. 4,8,16,32");
  modes->add_flag("--dump-basis", dump_basis, "Also write recurrence and quadrature tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(HS_ERR_CONFIG);
  }

  const char* out_dir = out.empty() ? nullptr : out.c_str();
  if (*solve) return report(hs_cmd_solve(config.c_str(), out_dir), "solve");
  if (*conv) {
    std::vector<size_t> ns;
    try {
      if (!n_list.empty()) ns = parse_list(n_list);
    } catch (const std::exception&) {
      std::fprintf(stderr, "convergence: cannot parse --n-list '%s'\n", n_list.c_str());
      return static_cast<int>(HS_ERR_CONFIG);
    }
    return report(hs_cmd_convergence(config.c_str(), out_dir, ns.data(), ns.size()), "convergence");
  }
  if (*validate) return report(hs_cmd_validate(config.c_str(), out_dir), "validate");
  return report(hs_cmd_modes(config.c_str(), out_dir, dump_basis ? 1 : 0), "modes");
}
