#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "finepoly/corpus.hpp"
#include "finepoly/error.hpp"
#include "finepoly/fine.hpp"
#include "finepoly/io.hpp"
#include "finepoly/milp.hpp"
#include "finepoly/parallel.hpp"
#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"
#include "finepoly/spectrum.hpp"

namespace finepoly::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("FINEPOLY_DATA_DIR")) return env;
#ifdef FINEPOLY_DATA_DIR
  return FINEPOLY_DATA_DIR;
#else
  return "data";
#endif
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string suite) : start_(std::chrono::steady_clock::now()) { report_.suite = std::move(suite); }

  void add(std::string name, bool ok, std::string detail = {}) {
    report_.checks.push_back({std::move(name), ok, std::move(detail)});
  }

  /// Runs fn, which reports (ok, detail); an escaping exception is a failure.
  void run(const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    try {
      bool ok = fn(detail);
      add(name, ok, detail);
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }

  Report finish() {
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  Report report_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string got_want(const Rational& got, const Rational& want) {
  return "got " + got.str() + ", expected " + want.str();
}

template <class T>
std::string join(const T& xs) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& x : xs) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << '}';
  return os.str();
}

/// mu^F of every polytope, in parallel, in input order.
inline std::vector<Rational> mus_of(const std::vector<Polytope>& ps) {
  std::vector<Rational> out(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) { out[i] = fine_profile(ps[i]).mu_f; });
  return out;
}

inline bool in_two_dim_spectrum(const Rational& mu) {
  return (Rational(2) / mu).is_integer() || (Rational(3) / mu).is_integer();
}

/// mu strictly inside (d-1, d-1/2), (d-1/2, d) or (d, d+1).
inline bool in_forbidden_gap(const Rational& mu, long d) {
  const Rational lo(d - 1), mid = Rational(d) - Rational::parse("1/2"), hi(d), top(d + 1);
  return (mu > lo && mu < mid) || (mu > mid && mu < hi) || (mu > hi && mu < top);
}

inline Check mu_check(const std::string& name, const Polytope& p, const Rational& want) {
  try {
    Rational got = fine_profile(p).mu_f;
    return {name, got == want, got_want(got, want)};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

inline NormalConfiguration make_config(std::size_t d, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<QVector> ns;
  for (auto row : rows) {
    QVector v;
    for (long x : row) v.emplace_back(x);
    ns.push_back(std::move(v));
  }
  return NormalConfiguration::make(d, std::move(ns));
}

/// Same n^F as fine_profile and every configured normal is a core normal.
inline bool witness_verifies(const NormalConfiguration& c, const MilpResult& r, std::string& why) {
  Polytope w = Polytope::from_points(r.witness_vertices);
  if (!w.is_full_dimensional()) {
    why = "witness is not full-dimensional";
    return false;
  }
  FineProfile prof = fine_profile(w);
  if (prof.fine_number != r.fine_number) {
    why = "fine_profile gives " + prof.fine_number.str() + ", MILP gave " + r.fine_number.str();
    return false;
  }
  for (const auto& a : c.normals)
    if (!is_core_normal(w, prof, a)) {
      why = to_string(a) + " is not a core normal of the witness";
      return false;
    }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites

inline Report dim1() {
  detail::Recorder rec("dim1");
  for (long k = 1; k <= 8; ++k) {
    auto c = detail::mu_check("mu([0," + std::to_string(k) + "]) = 2/" + std::to_string(k), segment(0, k),
                              Rational(Integer(2), Integer(k)));
    rec.add(c.name, c.passed, c.detail);
  }
  return rec.finish();
}

inline Report dim2() {
  detail::Recorder rec("dim2");
  for (long k = 1; k <= 6; ++k) {
    const std::string ks = std::to_string(k);
    auto a = detail::mu_check("mu(" + ks + " Delta_2) = 3/" + ks, dilated_simplex(2, k), Rational(Integer(3), Integer(k)));
    rec.add(a.name, a.passed, a.detail);
    auto b = detail::mu_check("mu([0," + ks + "]^2) = 2/" + ks, cube(2, k), Rational(Integer(2), Integer(k)));
    rec.add(b.name, b.passed, b.detail);
  }
  rec.run("polygons in [0,3]^2 have mu in {2/k} u {3/k}", [](std::string& detail) {
    auto ps = corpus::polygons_in_box(3);
    auto mus = detail::mus_of(ps);
    std::set<Rational> values(mus.begin(), mus.end()), bad;
    for (const auto& m : values)
      if (!detail::in_two_dim_spectrum(m)) bad.insert(m);
    detail = std::to_string(ps.size()) + " classes, values " + detail::join(values);
    if (!bad.empty()) detail += ", outside: " + detail::join(bad);
    return bad.empty();
  });
  return rec.finish();
}

inline Report dim3() {
  detail::Recorder rec("dim3");
  auto d3 = detail::mu_check("mu(Delta_3) = 4", standard_simplex(3), Rational(4));
  rec.add(d3.name, d3.passed, d3.detail);
  for (const auto& c : corpus::named_polytopes_3d()) {
    auto ch = detail::mu_check("mu(" + c.id + ") = " + c.expected_mu.str(), c.polytope, c.expected_mu);
    rec.add(ch.name, ch.passed, ch.detail);
  }
  return rec.finish();
}

inline Report numerators(const std::filesystem::path& data_dir = default_data_dir()) {
  detail::Recorder rec("numerators");
  std::vector<io::ConfigRecord> configs;
  rec.run("load configs_3d.json", [&](std::string& detail) {
    configs = io::load_configs(data_dir / "configs_3d.json");
    detail = std::to_string(configs.size()) + " configurations";
    return configs.size() == 8;
  });
  std::set<Integer> found;
  for (const auto& c : configs) {
    rec.run("eta(" + c.id + ")" + (c.stated_eta ? " = " + c.stated_eta->get_str() : ""), [&](std::string& detail) {
      Integer e = eta(QMatrix(c.normals, c.dim));
      found.insert(e);
      detail = "got " + e.get_str();
      return !c.stated_eta || e == *c.stated_eta;
    });
  }
  const std::set<Integer> want3{4, 5, 7, 11, 13, 17, 19, 20};
  rec.add("3D numerator set = {4, 5, 7, 11, 13, 17, 19, 20}", found == want3, "got " + detail::join(found));

  rec.run("enumerate_configs_2d gives 16 configurations", [&](std::string& detail) {
    auto cs = enumerate_configs_2d();
    detail = "got " + std::to_string(cs.size());
    return cs.size() == 16;
  });
  rec.run("I_2 = {2, 3}", [&](std::string& detail) {
    auto cs = enumerate_configs_2d();
    auto survivors = filter_opposing(cs);
    auto nums = numerator_candidates(survivors);
    for (const auto& x : numerator_candidates(enumerate_configs_1d())) nums.insert(x);
    detail = std::to_string(survivors.size()) + " configuration(s) without opposing pairs; numerators with I_1: " +
             detail::join(nums) + "; unfiltered eta values: " + detail::join(numerator_candidates(cs));
    return survivors.size() == 1 && nums == std::set<Integer>{2, 3};
  });
  return rec.finish();
}

inline Report pyramid(const std::filesystem::path& data_dir = default_data_dir()) {
  detail::Recorder rec("pyramid");
  std::vector<io::NamedPolytope> ps;
  rec.run("load pyramid_corpus.json", [&](std::string& detail) {
    ps = io::load_polytopes(data_dir / "pyramid_corpus.json");
    detail = std::to_string(ps.size()) + " polygons";
    return ps.size() == 20;
  });
  std::vector<Check> checks(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    const auto& p = ps[i].polytope;
    checks[i].name = "mu(Pyr(" + ps[i].id + ")) = max{2, mu + 1}";
    try {
      Rational mu = fine_profile(p).mu_f;
      Rational want = max(Rational(2), mu + Rational(1));
      Rational got = fine_profile(finepoly::pyramid(p)).mu_f;
      checks[i].passed = got == want;
      checks[i].detail = "mu = " + mu.str() + ", " + detail::got_want(got, want);
    } catch (const std::exception& e) {
      checks[i].detail = std::string("exception: ") + e.what();
    }
  });
  for (auto& c : checks) rec.add(c.name, c.passed, c.detail);
  auto s1 = detail::mu_check("mu(Pyr([-1/5, 2/5])) = 10/3", finepoly::pyramid(segment(Rational::parse("-1/5"), Rational::parse("2/5"))),
                             Rational::parse("10/3"));
  rec.add(s1.name, s1.passed, s1.detail);
  auto s2 = detail::mu_check("mu(Pyr([1/5, 4/5])) = 3", finepoly::pyramid(segment(Rational::parse("1/5"), Rational::parse("4/5"))),
                             Rational(3));
  rec.add(s2.name, s2.passed, s2.detail);
  return rec.finish();
}

inline Report general_d() {
  detail::Recorder rec("general-d");
  for (std::size_t d = 2; d <= 5; ++d) {
    const std::string ds = std::to_string(d);
    const long dl = static_cast<long>(d);
    auto a = detail::mu_check("mu(Delta_" + ds + ") = " + std::to_string(d + 1), standard_simplex(d), Rational(dl + 1));
    rec.add(a.name, a.passed, a.detail);
    const Rational half = Rational(dl) - Rational::parse("1/2");
    auto b = detail::mu_check("mu(exceptional_simplex(" + ds + ")) = " + half.str(), exceptional_simplex(d), half);
    rec.add(b.name, b.passed, b.detail);
    std::vector<long> ones(d, 1), two(d, 0);
    two[0] = 2;
    auto c = detail::mu_check("mu(lawrence_prism(1,...,1)) = " + ds + " in dim " + ds, lawrence_prism(ones), Rational(dl));
    rec.add(c.name, c.passed, c.detail);
    auto e = detail::mu_check("mu(lawrence_prism(2,0,...,0)) = " + ds + " in dim " + ds, lawrence_prism(two), Rational(dl));
    rec.add(e.name, e.passed, e.detail);
  }
  auto gap = [&](const std::string& name, const std::vector<Polytope>& ps, long d) {
    rec.run(name, [&](std::string& detail) {
      auto mus = detail::mus_of(ps);
      std::set<Rational> values(mus.begin(), mus.end()), bad;
      for (const auto& m : values)
        if (detail::in_forbidden_gap(m, d)) bad.insert(m);
      detail = std::to_string(ps.size()) + " polytopes, values " + detail::join(values);
      if (!bad.empty()) detail += ", inside a gap: " + detail::join(bad);
      return bad.empty();
    });
  };
  gap("no mu in the gaps above 1 (polygons in [0,3]^2)", corpus::polygons_in_box(3), 2);
  gap("no mu in the gaps above 2 (small 3-polytopes)", corpus::small_polytopes_3d(), 3);
  return rec.finish();
}

/// Property suites over fixed-seed random instances (at least 50 each).
inline Report invariants() {
  detail::Recorder rec("invariants");
  using corpus::random_lattice_polytopes;
  auto mixed = [](unsigned seed, std::size_t n2, std::size_t n3) {
    auto ps = random_lattice_polytopes(seed, n2, 2, 0, 4, 5);
    auto p3 = random_lattice_polytopes(seed + 1, n3, 3, 0, 2, 5);
    ps.insert(ps.end(), p3.begin(), p3.end());
    return ps;
  };
  // Runs pred on every instance in parallel; reports the count and the first failure.
  auto property = [&](const std::string& name, const std::vector<Polytope>& ps,
                      const std::function<bool(std::size_t, const Polytope&, std::string&)>& pred) {
    rec.run(name, [&](std::string& detail) {
      std::vector<char> ok(ps.size(), 0);
      std::vector<std::string> why(ps.size());
      parallel_for(ps.size(), [&](std::size_t i) { ok[i] = pred(i, ps[i], why[i]) ? 1 : 0; });
      std::size_t failed = 0;
      std::string first;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (!ok[i]) {
          if (failed++ == 0) first = "instance " + std::to_string(i) + ": " + why[i];
        }
      detail = std::to_string(ps.size()) + " instances";
      if (failed) detail += ", " + std::to_string(failed) + " failed; " + first;
      return failed == 0 && ps.size() >= 50;
    });
  };

  property("homogeneity n^F(kP) = k n^F(P)", mixed(301, 45, 10), [](std::size_t i, const Polytope& p, std::string& why) {
    const long k = std::array<long, 4>{1, 2, 3, 5}[i % 4];
    Rational lhs = fine_profile(dilate(p, Rational(k))).fine_number, rhs = Rational(k) * fine_profile(p).fine_number;
    why = "k = " + std::to_string(k) + ": " + lhs.str() + " vs " + rhs.str();
    return lhs == rhs;
  });

  {
    // P = conv of a random part of Q's vertices plus one lattice point of Q.
    std::mt19937 rng(303);
    std::vector<Polytope> qs, ps;
    for (const auto& q : random_lattice_polytopes(304, 120, 2, -2, 3, 6)) {
      std::vector<QVector> sub;
      for (const auto& v : q.vertices())
        if (rng() % 3) sub.push_back(v);
      auto inner = lattice_points(q);
      sub.push_back(inner[rng() % inner.size()]);
      Polytope p = Polytope::from_points(sub);
      if (!p.is_full_dimensional()) continue;
      qs.push_back(q);
      ps.push_back(std::move(p));
      if (ps.size() == 60) break;
    }
    property("monotonicity P in Q => n^F(P) <= n^F(Q)", ps, [&](std::size_t i, const Polytope& p, std::string& why) {
      Rational a = fine_profile(p).fine_number, b = fine_profile(qs[i]).fine_number;
      why = a.str() + " > " + b.str();
      return a <= b;
    });
  }

  property("mu^F <= codegree", mixed(305, 45, 15), [](std::size_t, const Polytope& p, std::string& why) {
    Rational mu = fine_profile(p).mu_f;
    int cd = codegree(p);
    why = "mu " + mu.str() + ", codegree " + std::to_string(cd);
    return mu <= Rational(cd);
  });

  property("coordinate projection never raises mu^F", random_lattice_polytopes(307, 50, 3, 0, 3, 5),
           [](std::size_t i, const Polytope& p, std::string& why) {
             const std::size_t drop = i % 3;
             QMatrix erase(2, 3);
             for (std::size_t r = 0, c = 0; c < 3; ++c)
               if (c != drop) erase(r++, c) = 1;
             Rational a = fine_profile(linear_image(p, erase)).mu_f, b = fine_profile(p).mu_f;
             why = a.str() + " > " + b.str();
             return a <= b;
           });

  {
    auto ps = mixed(309, 25, 10);
    // Prisms over polygons have positive-dimensional cores.
    for (const auto& q : random_lattice_polytopes(311, 20, 2, 0, 2, 4)) ps.push_back(prism(q, Rational(6)));
    property("natural projection keeps mu^F and leaves a point core", ps,
             [](std::size_t, const Polytope& p, std::string& why) {
               FineProfile prof = fine_profile(p);
               Projection pr = natural_projection(p, prof);
               FineProfile img = fine_profile(pr.image);
               why = "core dim " + std::to_string(prof.core_dim) + ": mu " + prof.mu_f.str() + " -> " + img.mu_f.str() +
                     ", image core dim " + std::to_string(img.core_dim);
               return img.mu_f == prof.mu_f && img.core_dim == 0 &&
                      pr.image.ambient_dim() == p.ambient_dim() - static_cast<std::size_t>(prof.core_dim);
             });
  }

  {
    auto ps = random_lattice_polytopes(313, 50, 2, 0, 3, 4);
    for (const auto& p : random_lattice_polytopes(314, 5, 1, 0, 6, 2)) ps.push_back(p);
    property("prism stability at h = 2 ceil(n^F) + 1", ps, [](std::size_t, const Polytope& p, std::string& why) {
      FineProfile prof = fine_profile(p);
      const Integer h = 2 * prof.fine_number.ceil() + 1;
      Rational got = fine_profile(prism(p, Rational(h))).mu_f;
      why = detail::got_want(got, prof.mu_f);
      return got == prof.mu_f;
    });
  }

  property("core-normal closure", mixed(315, 45, 10), [](std::size_t, const Polytope& p, std::string& why) {
    FineProfile prof = fine_profile(p);
    std::vector<QVector> pts = prof.core_normals;
    pts.push_back(zero_vector(p.ambient_dim()));
    for (const auto& v : lattice_points(Polytope::from_points(pts))) {
      if (is_zero(v)) continue;
      if (!is_core_normal(p, prof, v)) {
        why = to_string(v) + " is not a core normal";
        return false;
      }
    }
    return true;
  });

  property("dropping irrelevant candidates keeps n^F and the core", mixed(317, 45, 10),
           [](std::size_t, const Polytope& p, std::string& why) {
             FineSystem sys = relevant_candidates(p);
             std::vector<bool> keep(sys.candidates.size());
             for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = is_relevant(sys, i);
             FineProfile full = fine_profile(sys), slim = fine_profile(restrict_candidates(sys, keep));
             why = full.fine_number.str() + " vs " + slim.fine_number.str();
             return full.fine_number == slim.fine_number && full.core_vertices == slim.core_vertices;
           });
  return rec.finish();
}

inline Report milp() {
  detail::Recorder rec("milp");
  const auto line = detail::make_config(1, {{1}, {-1}});
  const auto fan = detail::make_config(2, {{1, 0}, {0, 1}, {-1, -1}});
  auto example = [&](const std::string& name, const NormalConfiguration& c, MilpInstance inst, const Rational& want) {
    rec.run(name, [&, inst](std::string& detail) {
      MilpResult r = milp_solve(inst);
      if (r.status != MilpStatus::Optimal) {
        detail = "infeasible";
        return false;
      }
      detail = detail::got_want(r.fine_number, want);
      std::string why;
      bool ok = r.fine_number == want && detail::witness_verifies(c, r, why);
      if (!why.empty()) detail += "; " + why;
      return ok;
    });
  };
  example("d=1 maximize U=3/4 R=5 gives 1/2", line, {line, scan_delta(line), Rational::parse("3/4"), MilpSense::Maximize, 5},
          Rational::parse("1/2"));
  example("d=1 minimize L=1/3 R=5 gives 1/2", line, {line, Rational::parse("1/3"), Rational(5), MilpSense::Minimize, 5},
          Rational::parse("1/2"));
  example("d=2 simplex fan maximize U=1 R=6 gives 1", fan, {fan, scan_delta(fan), Rational(1), MilpSense::Maximize, 6},
          Rational(1));

  auto scan_witnesses = [&](const std::string& name, const NormalConfiguration& c, const Rational& eps, long box) {
    rec.run(name, [&](std::string& detail) {
      auto es = spectrum_scan(c, eps, {box});
      std::string why;
      for (const auto& e : es)
        if (!detail::witness_verifies(c, e.witness, why)) {
          detail = "n^F " + e.fine_number.str() + ": " + why;
          return false;
        }
      detail = std::to_string(es.size()) + " witnesses";
      return !es.empty();
    });
  };
  scan_witnesses("every d=1 scan witness re-verifies", line, Rational::parse("1/3"), 10);
  scan_witnesses("every d=2 scan witness re-verifies", fan, Rational::parse("3/4"), 6);
  scan_witnesses("every square-fan scan witness re-verifies", detail::make_config(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
                 Rational::parse("1/2"), 3);
  return rec.finish();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dim1",    "dim2",      "dim3",       "numerators",
                                              "pyramid", "general-d", "invariants", "milp"};
  return names;
}

inline Report run_suite(const std::string& name, const std::filesystem::path& data_dir = default_data_dir()) {
  if (name == "dim1") return dim1();
  if (name == "dim2") return dim2();
  if (name == "dim3") return dim3();
  if (name == "numerators") return numerators(data_dir);
  if (name == "pyramid") return pyramid(data_dir);
  if (name == "general-d") return general_d();
  if (name == "invariants") return invariants();
  if (name == "milp") return milp();
  throw Error(Errc::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace finepoly::verify
