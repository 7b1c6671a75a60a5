#include "skt/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "skt/bismut.hpp"
#include "skt/errors.hpp"

namespace skt {

namespace {

using json = nlohmann::ordered_json;

json basis_list(const Subspace& s) {
  json out = json::array();
  for (const auto& v : s.basis_vectors()) out.push_back(format_vector(v));
  return out;
}

json matrix_rows(const RatMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(row);
  }
  return out;
}

json float_rows(const FloatMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.n; ++r) {
    json row = json::array();
    for (int c = 0; c < m.n; ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json provenance(const HermitianTriple& t) {
  json out = json::object();
  for (const auto& [k, v] : t.provenance) out[k] = v;
  return out;
}

json checks(const InvariantReport& r) {
  json out = json::array();
  for (const auto& c : r.checks) out.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_float()) return sci(v.get<double>());
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

bool flat_table(const json& arr) {
  if (!arr.is_array() || arr.empty()) return false;
  const json& first = arr.front();
  if (!first.is_object()) return false;
  for (const auto& row : arr) {
    if (!row.is_object() || row.size() != first.size()) return false;
    auto a = row.begin();
    for (auto b = first.begin(); b != first.end(); ++a, ++b)
      if (a.key() != b.key() || !is_scalar(a.value())) return false;
  }
  return true;
}

void render(std::ostringstream& os, const json& v, int depth);

void render_table(std::ostringstream& os, const json& arr, int depth) {
  std::vector<std::string> keys;
  for (auto it = arr.front().begin(); it != arr.front().end(); ++it) keys.push_back(it.key());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& row : arr) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      line.push_back(scalar_text(row[keys[i]]));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(keys);
  for (const auto& line : cells) emit(line);
}

void render(std::ostringstream& os, const json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& val = it.value();
    if (is_scalar(val)) {
      os << pad << it.key() << ": " << scalar_text(val) << '\n';
    } else if (val.empty()) {
      os << pad << it.key() << ": " << (val.is_array() ? "none" : "-") << '\n';
    } else if (val.is_object()) {
      os << pad << it.key() << ":\n";
      render(os, val, depth + 1);
    } else if (flat_table(val)) {
      os << pad << it.key() << ":\n";
      render_table(os, val, depth + 1);
    } else {
      os << pad << it.key() << ":\n";
      for (const auto& item : val) {
        if (is_scalar(item)) {
          os << pad << "  " << scalar_text(item) << '\n';
        } else if (item.is_array()) {
          std::string line;
          for (const auto& x : item) line += (line.empty() ? "" : "  ") + scalar_text(x);
          os << pad << "  " << line << '\n';
        } else {
          os << pad << "  -\n";
          render(os, item, depth + 2);
        }
      }
    }
  }
}

Report finish(const json& doc, ReportFormat format, bool positive) {
  Report r;
  r.positive = positive;
  if (format == ReportFormat::structured) {
    r.body = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    render(os, doc, 0);
    r.body = os.str();
  }
  return r;
}

std::vector<std::vector<int>> one_based(const std::vector<std::vector<int>>& tuples) {
  auto out = tuples;
  for (auto& t : out)
    for (auto& i : t) ++i;
  return out;
}

json tuples_json(const std::vector<std::vector<int>>& tuples) {
  json out = json::array();
  for (const auto& t : one_based(tuples)) out.push_back(t);
  return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "structured") return ReportFormat::structured;
  throw InputError("unknown report format \"" + std::string(name) + "\" (expected text or structured)");
}

Report verify_report(const HermitianTriple& t, ReportFormat format) {
  json doc;
  doc["report"] = "verify";
  doc["name"] = t.name;
  doc["dim"] = t.dim();
  json validity;
  validity["jacobi"] = t.flags.jacobi;
  validity["J_squared_minus_id"] = t.flags.j_square;
  validity["integrable"] = t.flags.integrable;
  validity["compatible"] = t.flags.compatible;
  if (!t.valid()) {
    try {
      require_valid(t);
    } catch (const ValidationError& e) {
      validity["failed_axiom"] = e.axiom();
      validity["witness"] = e.witness();
    }
    doc["validity"] = validity;
    doc["verdict"] = "invalid Hermitian triple";
    return finish(doc, format, false);
  }
  doc["validity"] = validity;

  const auto step = nilpotency_step(t.algebra);
  doc["nilpotency_step"] = step ? json(*step) : json("not nilpotent");
  const Subspace z = center(t.algebra);
  doc["center"] = basis_list(z);
  doc["derived"] = basis_list(derived(t.algebra));
  const VZSplit split = vz_split(t);
  doc["split"] = {{"v", basis_list(split.v)}, {"z", basis_list(split.z)}};
  doc["abelian_J"] = is_abelian_J(t.algebra, t.J).abelian;

  const SktVerdict v = is_skt(t);
  doc["torsion_c"] = v.c.str();
  doc["dc"] = v.dc.str();
  doc["dc_norm_squared"] = v.dc_norm_squared.str();
  doc["failing_tuples"] = tuples_json(v.failing_tuples);
  doc["verdict"] = v.is_skt ? "SKT" : "not SKT";

  if (v.is_skt) {
    doc["structure_checks"] = checks(theorem_invariants(t));
  } else {
    InvariantReport partial;
    partial.checks.push_back({"center J-invariant", is_J_invariant(t.J, z), ""});
    doc["structure_checks"] = checks(partial);
    doc["note"] = "checks that assume the SKT condition were skipped";
  }
  if (!t.provenance.empty()) doc["provenance"] = provenance(t);
  return finish(doc, format, v.is_skt);
}

Report compose_report(const HermitianTriple& composed, const CompositionSpec& spec,
                      const IrreducibilityCertificate& certificate, ReportFormat format) {
  json doc;
  doc["report"] = "compose";
  doc["name"] = composed.name;
  doc["dim"] = composed.dim();
  doc["provenance"] = provenance(composed);
  const SktVerdict v = is_skt(composed);
  doc["verdict"] = v.is_skt ? "SKT" : "not SKT";
  const auto step = nilpotency_step(composed.algebra);
  doc["nilpotency_step"] = step ? json(*step) : json("not nilpotent");
  doc["torsion_c"] = v.c.str();
  doc["abelian_J"] = is_abelian_J(composed.algebra, composed.J).abelian;
  doc["abelian_J_predicted"] = abelian_J_propagation(spec);
  doc["irreducibility"] = {{"status", to_string(certificate.status)},
                           {"left_projection", format_vector(certificate.left_projection)},
                           {"right_projection", format_vector(certificate.right_projection)},
                           {"left_factor_irreducible", certificate.factor_flags.first},
                           {"right_factor_irreducible", certificate.factor_flags.second}};
  return finish(doc, format, v.is_skt);
}

Report iterate_report(const HermitianTriple& result, int target_dim, ReportFormat format) {
  json doc;
  doc["report"] = "iterate";
  doc["target_dim"] = target_dim;
  doc["name"] = result.name;
  doc["dim"] = result.dim();
  doc["provenance"] = provenance(result);
  const SktVerdict v = is_skt(result);
  doc["verdict"] = v.is_skt ? "SKT" : "not SKT";
  const auto step = nilpotency_step(result.algebra);
  doc["nilpotency_step"] = step ? json(*step) : json("not nilpotent");
  return finish(doc, format, v.is_skt);
}

Report split_report(const HermitianTriple& triple, const Codim2Data& data, const InvariantReport& invariants,
                    ReportFormat format) {
  json doc;
  doc["report"] = "split";
  doc["name"] = triple.name;
  doc["dim"] = triple.dim();
  doc["complement"] = {data.first + 1, data.second + 1};
  doc["ideal_basis"] = basis_list(data.n_space);
  const HermitianTriple n = HermitianTriple::make(data.n, data.J_n, data.g_n);
  doc["ideal_dim"] = data.n_dim();
  doc["ideal_valid"] = n.valid();
  if (n.valid()) doc["ideal_verdict"] = is_skt(n).is_skt ? "SKT" : "not SKT";
  doc["A"] = matrix_rows(data.A);
  doc["B"] = matrix_rows(data.B);
  doc["X"] = format_vector(data.X);
  doc["invariants"] = checks(invariants);
  doc["all_ok"] = invariants.all_ok();
  return finish(doc, format, invariants.all_ok());
}

Report search_report(const HermitianTriple& triple, const SearchResult& result, ReportFormat format) {
  json doc;
  doc["report"] = "search";
  doc["name"] = triple.name;
  doc["dim"] = triple.dim();
  doc["nilpotency_step"] = result.nilpotency_step ? json(*result.nilpotency_step) : json("not nilpotent");
  const SearchConfig& c = result.config;
  doc["config"] = {{"starts", c.starts},         {"max_iters", c.max_iters},
                   {"tol", c.tol},               {"max_condition", c.max_condition},
                   {"initial_damping", c.initial_damping}, {"perturbation", c.perturbation},
                   {"seed", c.rng_seed}};
  doc["converged"] = result.converged;
  doc["best_residual"] = result.best_residual;
  doc["best_metric"] = float_rows(result.best_metric);
  if (result.exact_recheck_skt) doc["exact_recheck_skt"] = *result.exact_recheck_skt;

  json starts = json::array();
  for (const auto& s : result.per_start)
    starts.push_back({{"seed", s.seed},
                      {"residual", s.residual},
                      {"objective", s.objective},
                      {"iterations", s.iterations},
                      {"cond_S", s.condition}});
  doc["per_start"] = starts;

  // residual histogram by decade
  std::map<int, int> bins;
  for (const auto& s : result.per_start) {
    const int e = s.residual > 0.0 ? static_cast<int>(std::floor(std::log10(s.residual))) : -400;
    ++bins[std::max(e, -40)];
  }
  json hist = json::array();
  for (const auto& [e, n] : bins)
    hist.push_back({{"decade", e <= -40 ? std::string("<1e-39") : "1e" + std::to_string(e)}, {"starts", n}});
  doc["histogram"] = hist;
  doc["note"] = result.converged
                    ? "converged: residual below tol in the fixed basis"
                    : "not converged: local minimization within the admissible region found no SKT metric; "
                      "this is evidence, not a proof of nonexistence";
  return finish(doc, format, result.converged);
}

Report catalog_list_report(const std::vector<CatalogRow>& rows, ReportFormat format) {
  json doc;
  doc["report"] = "catalog";
  json entries = json::array();
  for (const auto& r : rows)
    entries.push_back({{"name", r.name}, {"dim", r.dim}, {"step", r.step}, {"abelian_J", r.abelian_J},
                       {"skt", r.is_skt}});
  doc["entries"] = entries;
  return finish(doc, format, true);
}

}  // namespace skt
