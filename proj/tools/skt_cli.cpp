// skt: verify, compose, split and search Hermitian nilpotent Lie algebras.
//
// Exit codes: 0 success, 1 negative verdict, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skt/algebra_file.hpp"
#include "skt/catalog.hpp"
#include "skt/compose.hpp"
#include "skt/decomp.hpp"
#include "skt/errors.hpp"
#include "skt/report.hpp"
#include "skt/search.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

// A path to an algebra file, or the name of a catalog entry.
skt::HermitianTriple load(const std::string& source, const skt::ParseOptions& options = {}) {
  if (fs::exists(source)) return skt::read_algebra_file(source, options);
  for (const auto& name : skt::catalog::names())
    if (name == source) return skt::catalog::get(name).triple;
  throw skt::InputError("no such file or catalog entry: " + source);
}

void emit(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw skt::InputError("cannot write " + path);
  out << body;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw skt::InputError("--complement expects i,j; got \"" + text + "\"");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw skt::InputError("--complement expects two integers i,j; got \"" + text + "\"");
  }
}

skt::Vector basis_choice(const skt::HermitianTriple& t, int k, const char* flag) {
  if (k < 1 || k > t.dim())
    throw skt::InputError(std::string(flag) + " " + std::to_string(k) + " out of range 1.." + std::to_string(t.dim()));
  return skt::unit_vector(t.dim(), k - 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact SKT verification and construction for nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name = "text";
  app.add_option("--format", format_name, "Report format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Validate a triple and decide the SKT condition");
  std::string verify_file, verify_report_path;
  verify->add_option("file", verify_file, "Algebra file or catalog name")->required();
  verify->add_option("--report", verify_report_path, "Write the report here instead of stdout");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Browse the built-in examples");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List catalog entries");
  auto* catalog_show = catalog->add_subcommand("show", "Print or export one entry");
  std::string show_name, show_out;
  catalog_show->add_option("name", show_name, "Entry name")->required();
  catalog_show->add_option("-o,--output", show_out, "Write the algebra file here");

  // compose
  auto* compose = app.add_subcommand("compose", "Two-factor composition n1 + n2 + span{Z, W}");
  std::string left_file, right_file, compose_out, compose_report_path;
  int x_index = 0, y_index = 0;
  std::string r_text = "1", s_text = "1";
  bool factors_irreducible = false;
  compose->add_option("left", left_file, "Left factor (file or catalog name)")->required();
  compose->add_option("right", right_file, "Right factor (file or catalog name)")->required();
  compose->add_option("--x-index", x_index, "Use e_K of the left factor as x (1-based)");
  compose->add_option("--y-index", y_index, "Use e_K of the right factor as y (1-based)");
  compose->add_option("--r", r_text, "Coefficient r (rational)");
  compose->add_option("--s", s_text, "Coefficient s (rational)");
  compose->add_flag("--factors-irreducible", factors_irreducible,
                    "Assert both factors are irreducible (enables a certified verdict)");
  compose->add_option("-o,--output", compose_out, "Write the composed algebra here")->required();
  compose->add_option("--report", compose_report_path, "Write the report here instead of stdout");

  // iterate
  auto* iterate = app.add_subcommand("iterate", "Compose seeds repeatedly up to a target dimension");
  std::vector<std::string> seed_files;
  int target_dim = 0;
  std::string iterate_out, iterate_report_path;
  iterate->add_option("--seeds", seed_files, "Seed algebras (files or catalog names)")->required();
  iterate->add_option("--target-dim", target_dim, "Target dimension")->required();
  iterate->add_option("-o,--output", iterate_out, "Write the result here")->required();
  iterate->add_option("--report", iterate_report_path, "Write the report here instead of stdout");

  // split
  auto* split = app.add_subcommand("split", "Split off a J-invariant codimension-2 ideal");
  std::string split_file, complement_text, split_report_path;
  split->add_option("file", split_file, "Algebra file or catalog name")->required();
  split->add_option("--complement", complement_text, "Complement pair i,j (1-based, J e_i = +-e_j)")->required();
  split->add_option("--report", split_report_path, "Write the report here instead of stdout");

  // search
  auto* search = app.add_subcommand("search", "Numerical search for an SKT metric");
  std::string search_file, search_report_path;
  skt::SearchConfig cfg;
  search->add_option("file", search_file, "Algebra file or catalog name")->required();
  search->add_option("--starts", cfg.starts, "Number of starts")->capture_default_str();
  search->add_option("--tol", cfg.tol, "Convergence threshold on the residual")->capture_default_str();
  search->add_option("--max-iters", cfg.max_iters, "Iteration cap per start")->capture_default_str();
  search->add_option("--seed", cfg.rng_seed, "Seed of the first start")->capture_default_str();
  search->add_option("--max-condition", cfg.max_condition, "Bound on cond(S)")->capture_default_str();
  search->add_option("--report", search_report_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const skt::ReportFormat format = skt::parse_report_format(format_name);

    if (*verify) {
      skt::ParseOptions lenient;
      lenient.require_valid = false;
      const auto t = load(verify_file, lenient);
      const auto r = skt::verify_report(t, format);
      emit(r.body, verify_report_path);
      return r.positive ? kOk : kNegative;
    }

    if (*catalog_list) {
      emit(skt::catalog_list_report(skt::catalog::list(), format).body, "");
      return kOk;
    }
    if (*catalog_show) {
      const auto& entry = skt::catalog::get(show_name);
      if (show_out.empty())
        std::cout << skt::serialize_algebra(entry.triple);
      else
        skt::write_algebra_file(show_out, entry.triple);
      return kOk;
    }

    if (*compose) {
      skt::CompositionSpec spec;
      spec.left = load(left_file);
      spec.right = load(right_file);
      if (spec.left.name.empty()) spec.left.name = fs::path(left_file).stem().string();
      if (spec.right.name.empty()) spec.right.name = fs::path(right_file).stem().string();
      if (x_index != 0) spec.x_choice = basis_choice(spec.left, x_index, "--x-index");
      if (y_index != 0) spec.y_choice = basis_choice(spec.right, y_index, "--y-index");
      spec.r = skt::Rational::parse(r_text);
      spec.s = skt::Rational::parse(s_text);
      const auto composed = skt::compose(spec);
      const auto cert = skt::certify_irreducible(composed, spec, {factors_irreducible, factors_irreducible});
      skt::write_algebra_file(compose_out, composed);
      const auto r = skt::compose_report(composed, spec, cert, format);
      emit(r.body, compose_report_path);
      return r.positive ? kOk : kNegative;
    }

    if (*iterate) {
      std::vector<skt::HermitianTriple> seeds;
      for (const auto& f : seed_files) {
        seeds.push_back(load(f));
        if (seeds.back().name.empty()) seeds.back().name = fs::path(f).stem().string();
      }
      const auto result = skt::iterate_compose(seeds, target_dim);
      skt::write_algebra_file(iterate_out, result);
      const auto r = skt::iterate_report(result, target_dim, format);
      emit(r.body, iterate_report_path);
      return r.positive ? kOk : kNegative;
    }

    if (*split) {
      const auto t = load(split_file);
      const auto [i, j] = parse_pair(complement_text);
      if (i < 1 || i > t.dim() || j < 1 || j > t.dim())
        throw skt::InputError("--complement index out of range 1.." + std::to_string(t.dim()));
      const auto data = skt::split_codim2(t, {i - 1, j - 1});
      const auto inv = skt::proof_invariants(data, t);
      const auto r = skt::split_report(t, data, inv, format);
      emit(r.body, split_report_path);
      return r.positive ? kOk : kNegative;
    }

    if (*search) {
      auto t = load(search_file);
      if (t.name.empty()) t.name = fs::path(search_file).stem().string();
      const auto result = skt::search_metric(t, cfg);
      const auto r = skt::search_report(t, result, format);
      emit(r.body, search_report_path);
      return r.positive ? kOk : kNegative;
    }
  } catch (const skt::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const skt::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const skt::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kInputError;
  } catch (const skt::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
