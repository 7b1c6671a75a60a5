// Acceptance run: one PASS/FAIL line per criterion.
//
//   skt_acceptance [--expect-fail N]...
//
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty by default).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../support/fixtures.hpp"
#include "../support/random_triples.hpp"
#include "skt/algebra_file.hpp"
#include "skt/bismut.hpp"
#include "skt/catalog.hpp"
#include "skt/compose.hpp"
#include "skt/decomp.hpp"
#include "skt/errors.hpp"
#include "skt/falsification.hpp"
#include "skt/search.hpp"

namespace fs = std::filesystem;
using skt::HermitianTriple;
using skt::Rational;

namespace {

// Pinned limits.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 30.0;
constexpr double kLimit3 = 1.0;
constexpr double kLimit4 = 5.0;
constexpr double kLimit5 = 10.0;
constexpr double kLimit6 = 1.0;
constexpr double kLimit7 = 60.0;
constexpr double kLimit8 = 120.0;
constexpr int kRandomTriples = 200;
constexpr double kSearchTol = 1e-10;
constexpr int kSearchStarts = 20;
constexpr int kMinConverged = 18;
constexpr int kGradientPoints = 100;
constexpr double kGradientRelTol = 1e-4;
constexpr double kFdStep = 1e-6;
constexpr double kNegativeFloor = 1e-4;

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct DTerm {
  int i, j;
  Rational c;
};

// de^k = sum c e^{ij}  <=>  [e_i, e_j] contains -c e_k  (1-based).
skt::LieAlgebra from_d(int dim, std::initializer_list<std::pair<int, std::vector<DTerm>>> d) {
  skt::LieAlgebra l(dim);
  for (const auto& [k, terms] : d)
    for (const auto& t : terms) l.add_term(t.i - 1, t.j - 1, k - 1, -t.c);
  return l;
}

skt::AlternatingForm printed(int dim, std::initializer_list<std::pair<std::vector<int>, Rational>> terms) {
  return fx::form(dim, 3, terms);
}

struct PrintedExample {
  const char* name;
  skt::LieAlgebra algebra;
  skt::AlternatingForm c;
};

std::vector<PrintedExample> printed_examples() {
  return {
      {"n4_abelian", from_d(4, {{3, {{1, 2, -1}}}}), printed(4, {{{1, 2, 3}, -1}})},
      {"n6_abelian", from_d(6, {{5, {{1, 2, -1}, {1, 4, 1}, {2, 3, -1}, {3, 4, -1}}}}),
       printed(6, {{{1, 2, 5}, -1}, {{1, 4, 5}, 1}, {{2, 3, 5}, -1}, {{3, 4, 5}, -1}})},
      {"n8_nonabelian",
       from_d(8, {{5, {{1, 2, -2}, {1, 4, 1}, {3, 4, -1}}}, {6, {{1, 3, -1}}}, {7, {{1, 2, -1}, {3, 4, 1}}}}),
       printed(8, {{{1, 2, 5}, -2}, {{1, 2, 7}, -1}, {{2, 3, 5}, -1}, {{2, 4, 6}, -1}, {{3, 4, 5}, -1}, {{3, 4, 7}, 1}})},
      {"n6_nonabelian", from_d(6, {{5, {{1, 2, -1}, {1, 4, -1}, {3, 4, -1}}}, {6, {{1, 3, 1}}}}),
       printed(6, {{{1, 2, 5}, -1}, {{2, 3, 5}, 1}, {{2, 4, 6}, 1}, {{3, 4, 5}, -1}})},
      {"n10_nonabelian",
       from_d(10, {{7, {{1, 2, -1}, {2, 4, 1}, {3, 4, -1}, {3, 6, -2}}},
                   {8, {{1, 4, -1}, {3, 4, Rational(-5, 2)}, {3, 5, 2}, {5, 6, -2}}},
                   {9, {{1, 2, -1}, {1, 6, 1}, {2, 5, -1}, {3, 6, 1}, {4, 5, -1}, {5, 6, -1}}}}),
       printed(10, {{{1, 2, 7}, -1},
                    {{1, 2, 9}, -1},
                    {{1, 3, 7}, 1},
                    {{1, 6, 9}, 1},
                    {{2, 3, 8}, 1},
                    {{2, 5, 9}, -1},
                    {{3, 4, 7}, -1},
                    {{3, 4, 8}, Rational(-5, 2)},
                    {{3, 6, 9}, 1},
                    {{4, 5, 7}, 2},
                    {{4, 5, 9}, -1},
                    {{4, 6, 9}, 2},
                    {{5, 6, 8}, -2},
                    {{5, 6, 9}, -1}})},
      {"n12_nonabelian",
       from_d(12, {{7, {{1, 2, -1}, {2, 4, 1}}},
                   {8, {{1, 4, -1}, {1, 6, 2}, {2, 5, -2}}},
                   {9, {{1, 2, -1}, {3, 4, -1}, {5, 6, -1}}},
                   {10, {{3, 4, -1}}},
                   {11, {{1, 2, -1}, {3, 6, 1}, {4, 5, -1}, {5, 6, -3}}}}),
       printed(12, {{{1, 2, 7}, -1},
                    {{1, 2, 9}, -1},
                    {{1, 2, 11}, -1},
                    {{1, 3, 7}, 1},
                    {{1, 6, 8}, 2},
                    {{2, 3, 8}, 1},
                    {{2, 5, 8}, -2},
                    {{3, 4, 9}, -1},
                    {{3, 4, 10}, -1},
                    {{3, 6, 11}, 1},
                    {{4, 5, 11}, -1},
                    {{5, 6, 9}, -1},
                    {{5, 6, 11}, -3}})},
  };
}

bool two_routes_agree(const HermitianTriple& t) {
  const auto c = skt::torsion_three_form(t);
  return skt::dc_direct(t) == skt::ce_differential(t.algebra, c);
}

skt::CompositionSpec spec_of(const char* a, const char* b) {
  skt::CompositionSpec s;
  s.left = skt::catalog::get(a).triple;
  s.right = skt::catalog::get(b).triple;
  return s;
}

// State shared between criteria.
struct Run {
  std::vector<HermitianTriple> skt_pool;   // every SKT-verified triple
  std::vector<HermitianTriple> generated;  // every generated file
  HermitianTriple composed12, composed14;
};

Outcome criterion1(Run& run) {
  Outcome o;
  o.pass = true;
  std::ostringstream why;
  for (const auto& ex : printed_examples()) {
    const auto& t = skt::catalog::get(ex.name).triple;
    if (!(t.algebra == ex.algebra)) {
      o.pass = false;
      why << ex.name << ": bracket differs from transcription; ";
      continue;
    }
    const auto v = skt::is_skt(t);
    const bool dc_zero = skt::dc_direct(t).is_zero() && skt::ce_differential(t.algebra, v.c).is_zero();
    if (!dc_zero) {
      o.pass = false;
      why << ex.name << ": dc != 0; ";
    }
    if (!(v.c == ex.c)) {
      o.pass = false;
      auto diff = v.c;
      diff -= ex.c;
      why << ex.name << ": computed c - printed c = " << diff.str() << "; ";
    }
    if (v.is_skt) run.skt_pool.push_back(t);
  }
  o.detail = o.pass ? "6 entries match printed c, dc = 0 by both routes" : why.str();
  return o;
}

Outcome criterion2(Run& run) {
  int checked = 0, bad = 0;
  auto check = [&](const HermitianTriple& t) {
    ++checked;
    if (!two_routes_agree(t)) ++bad;
  };
  for (const auto& e : skt::catalog::entries()) check(e.triple);
  check(run.composed12);
  check(run.composed14);
  fx::RandomTriples gen(20240601);
  int skt_random = 0;
  for (int k = 0; k < kRandomTriples; ++k) {
    fx::RandomTripleOptions opt;
    opt.v_pairs = 1 + k % 3;
    opt.z_pairs = 1 + (k / 3) % 2;
    opt.block_metric = k % 4 == 1;
    opt.identity_metric = k % 4 == 3;
    const auto t = gen.next(opt);
    if (!t.valid()) {
      ++bad;
      continue;
    }
    check(t);
    run.generated.push_back(t);
    if (skt::is_skt(t).is_skt) {
      ++skt_random;
      run.skt_pool.push_back(t);
    }
  }
  Outcome o;
  o.pass = bad == 0 && checked == 6 + 2 + kRandomTriples;
  o.detail = std::to_string(checked) + " triples, " + std::to_string(bad) + " disagreements (" +
             std::to_string(skt_random) + " random triples SKT)";
  return o;
}

Outcome criterion3(Run& run) {
  std::ostringstream why;
  bool ok = true;
  // first application: 4 + 6 + 2, basis e1..e4, f1..f6, w1, w2
  const auto expected12 = from_d(12, {{3, {{1, 2, -1}}},
                                      {9, {{5, 6, -1}, {5, 8, 1}, {6, 7, -1}, {7, 8, -1}}},
                                      {4, {{11, 12, -1}}},
                                      {10, {{11, 12, -1}}}});
  const auto spec12 = spec_of("n4_abelian", "n6_abelian");
  run.composed12 = skt::compose(spec12);
  if (!(run.composed12.algebra == expected12)) {
    ok = false;
    why << "4+6 brackets differ; ";
  }
  if (!(run.composed12.J == fx::consecutive_J(12))) {
    ok = false;
    why << "4+6 J differs; ";
  }
  // second application: 4 + 8 + 2, basis e1..e4, v1..v8, w1, w2
  const auto expected14 = from_d(14, {{3, {{1, 2, -1}}},
                                      {9, {{5, 6, -2}, {5, 8, 1}, {7, 8, -1}}},
                                      {10, {{5, 7, -1}}},
                                      {11, {{5, 6, -1}, {7, 8, 1}}},
                                      {4, {{13, 14, -1}}},
                                      {12, {{13, 14, -1}}}});
  const auto printed14 = printed(14, {{{1, 2, 3}, -1},
                                      {{5, 6, 9}, -2},
                                      {{5, 6, 11}, -1},
                                      {{6, 7, 9}, -1},
                                      {{6, 8, 10}, -1},
                                      {{7, 8, 9}, -1},
                                      {{7, 8, 11}, 1},
                                      {{4, 13, 14}, -1},
                                      {{12, 13, 14}, -1}});
  const auto spec14 = spec_of("n4_abelian", "n8_nonabelian");
  run.composed14 = skt::compose(spec14);
  if (!(run.composed14.algebra == expected14)) {
    ok = false;
    why << "4+8 brackets differ; ";
  }
  const auto v14 = skt::is_skt(run.composed14);
  if (!(v14.c == printed14)) {
    ok = false;
    auto diff = v14.c;
    diff -= printed14;
    why << "4+8 computed c - printed c = " << diff.str() << "; ";
  }
  for (const auto& [t, spec] : {std::pair{run.composed12, spec12}, std::pair{run.composed14, spec14}}) {
    const bool skt_ok = skt::is_skt(t).is_skt;
    const bool step_ok = skt::nilpotency_step(t.algebra) == 2;
    const auto cert = skt::certify_irreducible(t, spec, {true, true});
    if (!skt_ok || !step_ok || cert.status != skt::CertificateStatus::certified) {
      ok = false;
      why << t.name << ": skt=" << skt_ok << " step2=" << step_ok << " cert=" << skt::to_string(cert.status) << "; ";
    }
    run.skt_pool.push_back(t);
    run.generated.push_back(t);
  }
  Outcome o;
  o.pass = ok;
  o.detail = ok ? "both applications reproduced; SKT, 2-step, irreducibility certified" : why.str();
  return o;
}

Outcome criterion4(Run& run) {
  const std::vector<Rational> values{1, -1, 2, -2, Rational(1, 2), Rational(5, 2)};
  int family = 0, family_bad = 0;
  for (const auto& r : values)
    for (const auto& s : values) {
      auto spec = spec_of("n4_abelian", "n6_abelian");
      spec.r = r;
      spec.s = s;
      const auto t = skt::compose(spec);
      ++family;
      if (!skt::is_skt(t).is_skt || skt::nilpotency_step(t.algebra) != 2) ++family_bad;
      run.skt_pool.push_back(t);
      run.generated.push_back(t);
    }
  std::ostringstream why;
  bool iter_ok = true;
  const std::vector<HermitianTriple> seed4{skt::catalog::get("n4_abelian").triple};
  const std::vector<HermitianTriple> seed48{skt::catalog::get("n4_abelian").triple,
                                            skt::catalog::get("n8_nonabelian").triple};
  for (const auto& [seeds, dim] : {std::pair{seed4, 10}, std::pair{seed4, 16}, std::pair{seed4, 22}, std::pair{seed48, 14}}) {
    const auto t = skt::iterate_compose(seeds, dim);
    const bool ok = t.dim() == dim && skt::is_skt(t).is_skt && skt::nilpotency_step(t.algebra) == 2;
    if (!ok) {
      iter_ok = false;
      why << "dim " << dim << " failed; ";
    }
    run.skt_pool.push_back(t);
    run.generated.push_back(t);
  }
  Outcome o;
  o.pass = family_bad == 0 && iter_ok;
  o.detail = std::to_string(family) + " (r,s) compositions SKT, iterations to 10/16/22 and 14 " +
             (iter_ok ? "ok" : why.str());
  return o;
}

Outcome criterion5(Run& run) {
  int total = 0, failures = 0;
  for (const auto& t : run.skt_pool) {
    const auto rep = skt::theorem_invariants(t);
    total += static_cast<int>(rep.checks.size());
    failures += rep.failures();
  }
  Outcome o;
  const int events = skt::falsification::count();
  o.pass = failures == 0 && events == 0 && !run.skt_pool.empty();
  o.detail = std::to_string(run.skt_pool.size()) + " SKT triples, " + std::to_string(total) + " checks, " +
             std::to_string(failures) + " failed, " + std::to_string(events) + " falsification events";
  return o;
}

Outcome criterion6(Run&) {
  std::string seen;
  int rejected = 0;
  for (const auto& spec : {spec_of("n6_nonabelian", "n4_abelian"), spec_of("n4_abelian", "n6_nonabelian")}) {
    try {
      skt::compose(spec);
    } catch (const skt::PreconditionError& e) {
      if (e.precondition() == "dim center > dim derived") ++rejected;
      seen = e.what();
    }
  }
  Outcome o;
  o.pass = rejected == 2;
  o.detail = o.pass ? "rejected in both positions: " + seen : "not rejected with the named precondition: " + seen;
  return o;
}

double gradient_error(const skt::MetricParameterization& p, const std::vector<double>& x) {
  const auto g = p.gradient(x);
  double num = 0.0, den = 0.0, gn = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto a = x, b = x;
    a[i] += kFdStep;
    b[i] -= kFdStep;
    const double fd = (p.residual(a) - p.residual(b)) / (2 * kFdStep);
    num += (g[i] - fd) * (g[i] - fd);
    den += fd * fd;
    gn += g[i] * g[i];
  }
  const double scale = std::sqrt(std::max(den, gn));
  return scale == 0.0 ? 0.0 : std::sqrt(num) / scale;
}

Outcome criterion7(Run& run) {
  std::ostringstream detail;
  bool ok = true;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 0.3);
  for (const auto& t : {skt::catalog::get("n4_abelian").triple, run.composed12}) {
    skt::SearchConfig cfg;
    cfg.starts = kSearchStarts;
    cfg.tol = kSearchTol;
    const auto r = skt::search_metric(t, cfg);
    int good = 0;
    for (const auto& s : r.per_start) good += s.residual < kSearchTol ? 1 : 0;
    const skt::MetricParameterization p(t.algebra, t.J, t.g);
    double worst = 0.0;
    for (int k = 0; k < kGradientPoints; ++k) {
      auto x = p.identity_params();
      for (auto& v : x) v += gauss(rng);
      worst = std::max(worst, gradient_error(p, x));
    }
    const bool this_ok = r.converged && good >= kMinConverged && worst < kGradientRelTol;
    ok = ok && this_ok;
    detail << t.name << ": " << good << "/" << kSearchStarts << " starts < " << kSearchTol
           << ", worst gradient rel err " << worst << "; ";
  }
  Outcome o;
  o.pass = ok;
  o.detail = detail.str();
  return o;
}

Outcome criterion8(Run&) {
  const auto t = fx::three_step6();
  Outcome o;
  if (!t.valid() || skt::nilpotency_step(t.algebra) != 3) {
    o.detail = "control algebra is not a valid 3-step Hermitian triple";
    return o;
  }
  skt::SearchConfig cfg;
  cfg.starts = kSearchStarts;
  const auto r = skt::search_metric(t, cfg);
  double lowest = r.per_start.front().residual;
  bool all_above = r.per_start.size() == static_cast<std::size_t>(kSearchStarts);
  for (const auto& s : r.per_start) {
    all_above = all_above && s.residual > kNegativeFloor;
    lowest = std::min(lowest, s.residual);
  }
  o.pass = all_above && !r.converged;
  std::ostringstream d;
  d << "3-step control, " << r.per_start.size() << " starts, lowest residual " << lowest << " (cond(S) <= "
    << cfg.max_condition << "); evidence only";
  o.detail = d.str();
  return o;
}

int run_cli(const std::string& args) {
#ifdef SKT_CLI_PATH
  const std::string cmd = std::string("\"") + SKT_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
  return -1;
#endif
}

Outcome criterion9(Run& run) {
  int files = 0, bad = 0;
  std::vector<HermitianTriple> all = run.generated;
  for (const auto& e : skt::catalog::entries()) all.push_back(e.triple);
  for (const auto& t : all) {
    ++files;
    const std::string once = skt::serialize_algebra(t);
    const auto back = skt::parse_algebra(once);
    if (!(back == t) || back.provenance != t.provenance || skt::serialize_algebra(back) != once) ++bad;
  }

  std::ostringstream detail;
  detail << files << " files round-trip, " << bad << " mismatches";
  bool cli_ok = false;
#ifdef SKT_CLI_PATH
  const fs::path dir = fs::temp_directory_path() / ("skt_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  skt::write_algebra_file(dir / "control.json", fx::three_step6());
  auto path = [&](const char* name) { return (dir / name).string(); };
  auto same = [](const std::string& a, const std::string& b) {
    return fs::exists(a) && fs::exists(b) && skt::read_text_file(a) == skt::read_text_file(b) &&
           !skt::read_text_file(a).empty();
  };
  const std::vector<std::pair<std::string, std::string>> runs{
      {"search " + path("control.json") + " --starts 4 --seed 11 --report ", "search"},
      {"--format structured search n4_abelian --starts 3 --seed 5 --report ", "search_n4"},
      {"--format structured verify n10_nonabelian --report ", "verify"},
      {"compose n4_abelian n8_nonabelian --factors-irreducible --report /dev/null -o ", "compose"},
  };
  int identical = 0;
  for (const auto& [args, tag] : runs) {
    const std::string a = path((tag + "_a").c_str()), b = path((tag + "_b").c_str());
    const int ca = run_cli(args + a);
    const int cb = run_cli(args + b);
    if (ca == cb && ca >= 0 && ca <= 1 && same(a, b)) ++identical;
  }
  cli_ok = identical == static_cast<int>(runs.size());
  detail << "; " << identical << "/" << runs.size() << " CLI invocations byte-identical";
  fs::remove_all(dir);
#else
  detail << "; CLI not built";
#endif
  Outcome o;
  o.pass = bad == 0 && cli_ok;
  o.detail = detail.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: skt_acceptance [--expect-fail N]...\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* title;
    double limit;  // seconds; 0 = none
    std::function<Outcome(Run&)> fn;
  };
  // criterion 3 runs before 2 (2 reuses the composed algebras); 5 runs last
  // so it sees every SKT triple and every falsification event.
  const std::vector<Criterion> order{
      {1, "catalog exactness", kLimit1, criterion1},
      {3, "composition reproduction", kLimit3, criterion3},
      {2, "two-route identity", kLimit2, criterion2},
      {4, "family and iteration", kLimit4, criterion4},
      {6, "compose precondition gate", kLimit6, criterion6},
      {7, "search positive control", kLimit7, criterion7},
      {8, "search negative evidence", kLimit8, criterion8},
      {9, "round-trip and determinism", 0.0, criterion9},
      {5, "theorem-as-invariant suite", kLimit5, criterion5},
  };

  Run run;
  std::vector<std::pair<int, std::string>> lines;
  std::set<int> failed;
  for (const auto& c : order) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.fn(run);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0.0 && o.seconds > c.limit) {
      o.pass = false;
      o.detail += " [over time limit]";
    }
    std::ostringstream line;
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << std::fixed << o.seconds << " s";
    if (c.limit > 0.0) line << " / limit " << std::defaultfloat << c.limit << " s";
    line << "): " << o.detail;
    lines.emplace_back(c.id, line.str());
    if (!o.pass) failed.insert(c.id);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, text] : lines) std::cout << text << '\n';

  if (failed == expected_failures) return 0;
  std::cout << "unexpected outcome: failing {";
  for (int id : failed) std::cout << ' ' << id;
  std::cout << " }, expected {";
  for (int id : expected_failures) std::cout << ' ' << id;
  std::cout << " }\n";
  return 1;
}
