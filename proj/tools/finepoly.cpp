// finepoly: Fine Q-codegree computations from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finepoly/fine.hpp"
#include "finepoly/io.hpp"
#include "finepoly/milp.hpp"
#include "finepoly/parallel.hpp"
#include "finepoly/spectrum.hpp"
#include "finepoly/verify.hpp"

namespace fs = std::filesystem;
using namespace finepoly;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

Rational positive_rational(const std::string& text, const std::string& what) {
  Rational r = Rational::parse(text);
  if (r.sign() <= 0) throw Error(Errc::InvalidArgument, what + " must be positive, got " + r.str());
  return r;
}

std::string point_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string path;
  bool json = false;
  bool csv = false;
  bool profiles = false;
  std::string out;
};

int cmd_compute(const ComputeArgs& a) {
  auto polys = io::load_polytopes(a.path);
  std::vector<FineProfile> profs(polys.size());
  std::vector<std::string> errors(polys.size());
  parallel_for(polys.size(), [&](std::size_t i) {
    try {
      profs[i] = fine_profile(polys[i].polytope);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  bool failed = false;
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (!errors[i].empty()) {
      std::cerr << "finepoly: " << polys[i].source << " " << polys[i].id << ": " << errors[i] << "\n";
      failed = true;
    }
  if (failed) return kUsage;

  std::vector<io::ResultRow> rows;
  for (std::size_t i = 0; i < polys.size(); ++i) rows.push_back(io::make_row(polys[i], profs[i]));
  if (a.json || a.profiles) {
    io::json doc = io::rows_to_json(rows);
    if (a.profiles)
      for (std::size_t i = 0; i < rows.size(); ++i) doc[i]["profile"] = io::profile_to_json(profs[i]);
    write_text(a.out, doc.dump(2) + "\n");
  } else {
    write_text(a.out, io::rows_to_csv(rows));
  }
  return kOk;
}

int cmd_adjoint(const std::string& path, const std::string& s_text) {
  const Rational s = positive_rational(s_text, "--s");
  auto polys = io::load_polytopes(path);
  for (const auto& np : polys) {
    if (polys.size() > 1) std::cout << "# " << np.id << "\n";
    auto adj = fine_adjoint(np.polytope, s);
    if (!adj) {
      std::cout << "EMPTY\n";
      continue;
    }
    for (const auto& v : adj->vertices()) std::cout << point_string(v) << "\n";
  }
  return kOk;
}

struct ScanArgs {
  std::string config;
  std::string eps;
  long box = 0;
  std::string out_dir;
  std::string delta;
  std::string lower;
};

int cmd_scan(const ScanArgs& a) {
  auto text = io::read_file(a.config);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Error(Errc::Parse, a.config + ": empty file");
  auto records = io::parse_configs(text, a.config);
  if (records.empty()) throw Error(Errc::Parse, a.config + ": no configuration");
  const Rational eps = positive_rational(a.eps, "--eps");
  if (a.box < 0) throw Error(Errc::InvalidArgument, "--box must be positive");
  ScanOptions opt;
  opt.box = a.box;
  if (!a.delta.empty()) opt.delta = positive_rational(a.delta, "--delta");
  if (!a.lower.empty()) opt.lower = positive_rational(a.lower, "--lower");
  if (!a.out_dir.empty()) fs::create_directories(a.out_dir);

  for (const auto& rec : records) {
    NormalConfiguration c = rec.validated();
    if (records.size() > 1) std::cout << "# " << rec.id << "\n";
    auto entries = spectrum_scan(c, eps, opt);
    if (entries.empty()) std::cerr << "finepoly: " << rec.id << ": first instance infeasible, no values found\n";
    std::size_t k = 0;
    for (const auto& e : entries) {
      std::cout << e.mu_f.str() << "\n";
      if (e.witness.at_box_boundary)
        std::cerr << "finepoly: warning: witness for mu^F = " << e.mu_f.str()
                  << " touches the box; raise --box to rule out box artifacts\n";
      if (!a.out_dir.empty()) {
        fs::path file = fs::path(a.out_dir) / (rec.id + "_witness_" + std::to_string(++k) + ".json");
        write_text(file.string(), io::witness_to_json(e.witness, rec.id + "/" + e.mu_f.str()).dump(2) + "\n");
      }
    }
  }
  return kOk;
}

int cmd_numerators(const std::string& configs_path, std::optional<int> dim, bool no_filter) {
  std::set<Integer> all;
  if (!configs_path.empty()) {
    auto records = io::load_configs(configs_path);
    for (const auto& rec : records) {
      if (dim && rec.dim != static_cast<std::size_t>(*dim)) {
        std::cerr << "finepoly: warning: " << rec.id << " has dimension " << rec.dim << ", skipped\n";
        continue;
      }
      auto subsets = positively_spanning_subsets(rec.normals, rec.dim);
      if (subsets.empty()) std::cerr << "finepoly: warning: " << rec.id << " has no positively spanning subset\n";
      for (const auto& idx : subsets) {
        std::vector<QVector> rows;
        std::string label;
        for (auto i : idx) {
          rows.push_back(rec.normals[i]);
          label += (label.empty() ? "" : " ") + std::to_string(i);
        }
        Integer e = eta(QMatrix(rows, rec.dim));
        all.insert(e);
        std::cout << rec.id << " [" << label << "] eta " << e.get_str() << "\n";
      }
    }
  } else {
    if (!dim) throw Error(Errc::InvalidArgument, "give --configs or --dim");
    std::vector<NormalConfiguration> cs;
    if (*dim == 1) cs = enumerate_configs_1d();
    else if (*dim == 2) cs = enumerate_configs_2d();
    else throw Error(Errc::Unsupported, "unsupported; ingest external classification");
    if (!no_filter && *dim == 2) {
      cs = filter_opposing(cs);
      all = numerator_candidates(enumerate_configs_1d());  // configurations with opposing pairs contribute I_1
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (const auto& x : numerator_candidates({cs[i]})) {
        all.insert(x);
        std::cout << "config#" << i << " eta " << x.get_str() << "\n";
      }
  }
  std::cout << "candidates {";
  bool first = true;
  for (const auto& x : all) {
    std::cout << (first ? "" : ", ") << x.get_str();
    first = false;
  }
  std::cout << "}\n";
  return kOk;
}

int cmd_verify(const std::string& suite, const std::string& data_dir) {
  std::vector<std::string> names;
  if (suite == "all") names = verify::suite_names();
  else names = {suite};
  for (const auto& n : names) {
    bool known = false;
    for (const auto& k : verify::suite_names()) known |= k == n;
    if (!known) throw Error(Errc::InvalidArgument, "unknown suite '" + n + "'");
  }
  bool ok = true;
  for (const auto& n : names) {
    verify::Report r = verify::run_suite(n, data_dir.empty() ? verify::default_data_dir() : fs::path(data_dir));
    for (const auto& c : r.checks)
      std::cout << (c.passed ? "PASS" : "FAIL") << " [" << r.suite << "] " << c.name
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    ok = ok && r.passed();
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_enumerate(int dim, const std::string& out) {
  std::vector<NormalConfiguration> cs;
  if (dim == 1) cs = enumerate_configs_1d();
  else if (dim == 2) cs = enumerate_configs_2d();
  else throw Error(Errc::Unsupported, "unsupported; ingest external classification");
  io::json doc = io::json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) doc.push_back(io::config_to_json(cs[i], "d" + std::to_string(dim) + "-" + std::to_string(i + 1)));
  write_text(out, doc.dump(2) + "\n");
  (out.empty() ? std::cerr : std::cout) << "count " << cs.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fine Q-codegree of rational polytopes"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Fine number, mu^F and core data for each polytope");
  c->add_option("path", compute.path, "polytope JSON file or directory")->required();
  auto* json_flag = c->add_flag("--json", compute.json, "emit JSON rows");
  c->add_flag("--csv", compute.csv, "emit CSV rows (default)")->excludes(json_flag);
  c->add_flag("--profiles", compute.profiles, "JSON rows with full profiles");
  c->add_option("--out", compute.out, "output file (default stdout)");

  std::string adj_path, adj_s;
  auto* adj = app.add_subcommand("adjoint", "Vertices of the Fine adjoint polytope P^F(s)");
  adj->add_option("path", adj_path, "polytope JSON file")->required();
  adj->add_option("--s", adj_s, "parameter s > 0 as p/q")->required();

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "Scan the mu^F values realizable by a normal configuration");
  sc->add_option("--config", scan.config, "configuration JSON file")->required();
  sc->add_option("--eps", scan.eps, "report mu^F >= eps (p/q)")->required();
  sc->add_option("--box", scan.box, "bound R on witness coordinates (default 12 (d + 1))");
  sc->add_option("--out-dir", scan.out_dir, "directory for witness polytopes");
  sc->add_option("--delta", scan.delta, "step between successive upper bounds");
  sc->add_option("--lower", scan.lower, "lower bound L on n^F");

  std::string num_configs;
  std::optional<int> num_dim;
  bool num_no_filter = false;
  auto* nu = app.add_subcommand("numerators", "eta over positively spanning subsets");
  nu->add_option("--configs", num_configs, "configuration JSON file");
  nu->add_option("--dim", num_dim, "dimension; without --configs, enumerate (d <= 2)");
  nu->add_flag("--no-filter", num_no_filter, "keep configurations with opposing pairs");

  std::string suite, data_dir;
  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("suite", suite, "dim1|dim2|dim3|numerators|pyramid|general-d|invariants|milp|all")->required();
  ve->add_option("--data-dir", data_dir, "directory with the bundled data files");

  int en_dim = 2;
  std::string en_out;
  auto* en = app.add_subcommand("enumerate-configs", "Enumerate normal configurations");
  en->add_option("--dim", en_dim, "dimension")->required();
  en->add_option("--out", en_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*adj) return cmd_adjoint(adj_path, adj_s);
    if (*sc) return cmd_scan(scan);
    if (*nu) return cmd_numerators(num_configs, num_dim, num_no_filter);
    if (*ve) return cmd_verify(suite, data_dir);
    if (*en) return cmd_enumerate(en_dim, en_out);
  } catch (const Error& e) {
    std::cerr << "finepoly: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "finepoly: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
