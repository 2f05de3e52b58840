#pragma once

// Command-line front end. Exit codes: 0 success, 1 negative mathematical
// result, 2 usage error, 3 malformed input.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "decompose.hpp"
#include "enumerate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "quandle.hpp"

namespace quandle::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kMalformed = 3,
};

namespace detail {

inline std::string orbit_string(const std::vector<std::vector<int>>& classes) {
  std::string s;
  for (const auto& c : classes) {
    s += '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(c[i]);
    }
    s += '}';
  }
  return s;
}

inline int cmd_validate(const std::string& path, std::ostream& out) {
  auto raw = io::parse_quandle_text(io::read_file(path));
  auto report = validate(raw.order, raw.table);
  if (report.ok()) {
    out << "valid quandle of order " << raw.order << "\n";
    return kOk;
  }
  out << "invalid: " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations)
    out << "  " << v.describe() << "\n";
  return kNegative;
}

inline int cmd_info(const std::string& path, std::ostream& out) {
  Quandle q = io::read_quandle(path);
  auto classes = orbits(q);
  out << "order: " << q.order() << "\n"
      << "orbits: " << orbit_string(classes) << "\n"
      << "connected: " << (classes.size() == 1 ? "true" : "false") << "\n"
      << "|Inn|: " << inner_group(q).order() << "\n"
      << "|Aut|: " << automorphism_group(q).order() << "\n";
  return kOk;
}

inline int cmd_iso(const std::string& a, const std::string& b,
                   std::ostream& out) {
  Quandle qa = io::read_quandle(a);
  Quandle qb = io::read_quandle(b);
  if (auto rho = find_isomorphism(qa, qb)) {
    out << rho->to_string() << "\n";
    return kOk;
  }
  out << "non-isomorphic\n";
  return kNegative;
}

inline int cmd_decompose(const std::string& path, bool tree,
                         std::ostream& out) {
  Quandle q = io::read_quandle(path);
  if (tree)
    out << io::to_json(decomposition_tree(q)).dump() << "\n";
  else
    out << io::to_json(decompose(q)).dump() << "\n";
  return kOk;
}

inline int cmd_compose(const std::string& path, std::ostream& out) {
  io::json j;
  try {
    j = io::json::parse(io::read_file(path));
  } catch (const io::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  auto raw = io::raw_mesh_from_json(j);
  Mesh mesh = validate_mesh(raw.blocks, raw.homs);
  Quandle q;
  if (raw.layout) {
    io::check_layout(mesh, *raw.layout);
    q = semidisjoint_union(mesh, *raw.layout);
  } else {
    q = semidisjoint_union(mesh);
  }
  out << io::to_json(q).dump() << "\n";
  return kOk;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error("cannot write " + path.string());
  f << body;
}

struct EnumerateArgs {
  int order = 0;
  bool connected = false;
  std::string method = "structure";
  bool no_filters = false;
  std::string out_dir;
};

inline int cmd_enumerate(const EnumerateArgs& a, unsigned threads,
                         std::ostream& out, std::ostream& err) {
  std::filesystem::path file =
      std::filesystem::path(a.out_dir) / ("order-" + std::to_string(a.order) +
                                          ".json");
  std::string body;
  std::size_t count = 0;
  if (a.method == "structure") {
    if (!a.connected) {
      err << "enumerate: the structure method only produces connected "
             "quandles; pass --connected\n";
      return kUsage;
    }
    auto entries = enumerate_connected(
        a.order, {.pruning_filters = !a.no_filters, .threads = threads});
    count = entries.size();
    body = io::to_json(entries).dump(1);
  } else {
    auto census = enumerate_all(a.order, {.threads = threads});
    count = a.connected ? count_connected(census) : census.size();
    body = io::to_json(census, a.connected).dump(1);
  }
  write_file(file, body + "\n");
  out << "wrote " << count << " classes to " << file.string() << "\n";
  return kOk;
}

inline int cmd_census(int n, unsigned threads, std::ostream& out) {
  auto entries = enumerate_connected(n, {.threads = threads});
  auto census = enumerate_all(n, {.threads = threads});
  std::set<Quandle> structure, brute;
  for (const auto& e : entries)
    structure.insert(e.quandle);
  for (std::size_t i = 0; i < census.size(); ++i)
    if (census.connected[i])
      brute.insert(census.tables[i]);

  out << "order " << n << "\n"
      << "structure: " << structure.size() << " connected classes\n"
      << "brute: " << census.size() << " classes, " << brute.size()
      << " connected\n";
  for (const auto& e : entries)
    out << io::to_json(e.quandle).dump() << " |Inn|=" << e.inner_order
        << "\n";
  bool match = structure == brute;
  out << (match ? "match" : "mismatch") << "\n";
  return match ? kOk : kNegative;
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Finite quandle toolkit", "quandle"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("-j,--threads", threads,
                 "Worker threads (0 = hardware concurrency)");

  std::string file_a, file_b;
  bool tree = false;
  detail::EnumerateArgs en;
  int census_order = 0;
  bool census_check = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check quandle axioms");
  validate_cmd->add_option("file", file_a, "Quandle file")->required();

  auto* info_cmd = app.add_subcommand("info", "Orbits, connectedness, |Inn|, |Aut|");
  info_cmd->add_option("file", file_a, "Quandle file")->required();

  auto* iso_cmd = app.add_subcommand("iso", "Find an isomorphism");
  iso_cmd->add_option("a", file_a, "First quandle file")->required();
  iso_cmd->add_option("b", file_b, "Second quandle file")->required();

  auto* decompose_cmd =
      app.add_subcommand("decompose", "Orbit decomposition as a mesh");
  decompose_cmd->add_option("file", file_a, "Quandle file")->required();
  decompose_cmd->add_flag("--tree", tree, "Recursive decomposition tree");

  auto* tree_cmd =
      app.add_subcommand("tree", "Same as decompose --tree");
  tree_cmd->add_option("file", file_a, "Quandle file")->required();

  auto* compose_cmd =
      app.add_subcommand("compose", "Semidisjoint union of a mesh file");
  compose_cmd->add_option("mesh", file_a, "Mesh file")->required();

  auto* enumerate_cmd =
      app.add_subcommand("enumerate", "Write a census file for one order");
  enumerate_cmd->add_option("--order", en.order, "Order")->required();
  enumerate_cmd->add_flag("--connected", en.connected,
                          "Connected quandles only");
  enumerate_cmd->add_option("--method", en.method, "structure or brute")
      ->check(CLI::IsMember({"structure", "brute"}));
  enumerate_cmd->add_flag("--no-filters", en.no_filters,
                          "Disable group pruning filters");
  enumerate_cmd->add_option("--out", en.out_dir, "Output directory")
      ->required();

  auto* census_cmd = app.add_subcommand(
      "census", "Cross-check the structure census against brute force");
  census_cmd->add_option("--order", census_order, "Order")->required();
  census_cmd->add_flag("--check", census_check, "Compare both methods")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (validate_cmd->parsed())
      return detail::cmd_validate(file_a, out);
    if (info_cmd->parsed())
      return detail::cmd_info(file_a, out);
    if (iso_cmd->parsed())
      return detail::cmd_iso(file_a, file_b, out);
    if (decompose_cmd->parsed())
      return detail::cmd_decompose(file_a, tree, out);
    if (tree_cmd->parsed())
      return detail::cmd_decompose(file_a, true, out);
    if (compose_cmd->parsed())
      return detail::cmd_compose(file_a, out);
    if (enumerate_cmd->parsed())
      return detail::cmd_enumerate(en, threads, out, err);
    if (census_cmd->parsed())
      return detail::cmd_census(census_order, threads, out);
  } catch (const ParseError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const InvalidQuandle& e) {
    err << e.what() << "\n";
    for (const auto& v : e.violations)
      err << "  " << v.describe() << "\n";
    return kNegative;
  } catch (const InvalidMesh& e) {
    err << e.what() << "\n";
    for (const auto& v : e.violations)
      err << "  " << v.describe() << "\n";
    return kNegative;
  } catch (const BoundExceeded& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace quandle::cli
