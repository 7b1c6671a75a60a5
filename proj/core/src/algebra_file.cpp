#include "skt/algebra_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skt/errors.hpp"

namespace skt {

namespace {

using json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

int get_index(const json& v, int dim, const std::string& path) {
  const int i = get_int(v, path);
  if (i < 1 || i > dim) fail(path, "index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
  return i - 1;
}

Rational get_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(path, "expected a rational string such as \"-5/2\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(path, "unknown key \"" + it.key() + "\"");
  }
}

RatMatrix get_matrix(const json& v, int dim, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    fail(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  RatMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(rp, "expected a row of " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = get_rational(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

LieAlgebra parse_brackets(const json& v, int dim) {
  if (!v.is_array()) fail("brackets", "expected a list");
  LieAlgebra algebra(dim);
  std::set<std::pair<int, int>> seen;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const std::string p = "brackets[" + std::to_string(n) + "]";
    const json& rec = v[n];
    if (!rec.is_object()) fail(p, "expected an object {i, j, targets}");
    check_keys(rec, {"i", "j", "targets"}, p);
    const int i = get_index(member(rec, "i", p), dim, p + ".i");
    const int j = get_index(member(rec, "j", p), dim, p + ".j");
    if (i >= j) fail(p, "requires i < j, got i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1));
    if (!seen.insert({i, j}).second)
      fail(p, "duplicate bracket pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    const json& targets = member(rec, "targets", p);
    if (!targets.is_array()) fail(p + ".targets", "expected a list");
    std::set<int> ks;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const std::string tp = p + ".targets[" + std::to_string(t) + "]";
      const json& term = targets[t];
      if (!term.is_object()) fail(tp, "expected an object {k, coeff}");
      check_keys(term, {"k", "coeff"}, tp);
      const int k = get_index(member(term, "k", tp), dim, tp + ".k");
      if (!ks.insert(k).second) fail(tp, "duplicate target k=" + std::to_string(k + 1));
      const Rational c = get_rational(member(term, "coeff", tp), tp + ".coeff");
      if (!c.is_zero()) algebra.add_term(i, j, k, c);
    }
  }
  return algebra;
}

ComplexStructure parse_J(const json& v, int dim) {
  if (!v.is_object()) fail("J", "expected {\"pairs\": ...} or {\"matrix\": ...}");
  check_keys(v, {"pairs", "matrix"}, "J");
  if (v.contains("pairs") == v.contains("matrix")) fail("J", "give exactly one of \"pairs\" and \"matrix\"");
  if (v.contains("matrix")) return ComplexStructure(get_matrix(v["matrix"], dim, "J.matrix"));
  const json& pairs = v["pairs"];
  if (!pairs.is_array()) fail("J.pairs", "expected a list of [a, b] pairs");
  std::vector<std::pair<int, int>> out;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const std::string p = "J.pairs[" + std::to_string(n) + "]";
    if (!pairs[n].is_array() || pairs[n].size() != 2) fail(p, "expected [a, b]");
    out.emplace_back(get_index(pairs[n][0], dim, p), get_index(pairs[n][1], dim, p));
  }
  return ComplexStructure::from_pairs(dim, out);
}

Metric parse_metric(const json& v, int dim) {
  if (v.is_string()) {
    if (v.get<std::string>() != "identity") fail("metric", "expected \"identity\" or a matrix");
    return Metric::identity(dim);
  }
  return Metric(get_matrix(v, dim, "metric"));
}

AlternatingForm parse_form(const json& v, int dim, int degree, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of {tuple, coeff}");
  AlternatingForm f(dim, degree);
  for (std::size_t n = 0; n < v.size(); ++n) {
    const std::string p = path + "[" + std::to_string(n) + "]";
    const json& term = v[n];
    if (!term.is_object()) fail(p, "expected an object {tuple, coeff}");
    check_keys(term, {"tuple", "coeff"}, p);
    const json& tuple = member(term, "tuple", p);
    if (!tuple.is_array() || static_cast<int>(tuple.size()) != degree)
      fail(p + ".tuple", "expected " + std::to_string(degree) + " indices");
    std::vector<int> idx;
    for (const auto& i : tuple) idx.push_back(get_index(i, dim, p + ".tuple"));
    try {
      f.add(idx, get_rational(member(term, "coeff", p), p + ".coeff"));
    } catch (const std::invalid_argument&) {
      fail(p + ".tuple", "repeated index");
    }
  }
  return f;
}

std::string compact(const json& v) { return v.dump(); }

}  // namespace

AlgebraDocument parse_document(std::string_view text, const ParseOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string msg = e.what();
    // drop the library's "[json.exception.parse_error.101] " prefix
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw InputError("syntax error: " + msg, line, column);
  }
  if (!doc.is_object()) throw InputError("document must be a JSON object", 1, 1);
  check_keys(doc, {"format_version", "name", "dim", "brackets", "J", "metric", "provenance", "expected_c"}, "document");

  const int version = get_int(member(doc, "format_version", "document"), "format_version");
  if (version != kFormatVersion)
    fail("format_version", "unsupported version " + std::to_string(version) + " (expected 1)");
  const int dim = get_int(member(doc, "dim", "document"), "dim");
  if (dim < 1) fail("dim", "must be positive");

  LieAlgebra algebra = parse_brackets(member(doc, "brackets", "document"), dim);
  ComplexStructure J = parse_J(member(doc, "J", "document"), dim);
  Metric g = doc.contains("metric") ? parse_metric(doc["metric"], dim) : Metric::identity(dim);

  AlgebraDocument out;
  out.triple = HermitianTriple::make(std::move(algebra), std::move(J), std::move(g));
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    out.triple.name = doc["name"].get<std::string>();
  }
  if (doc.contains("provenance")) {
    const json& prov = doc["provenance"];
    if (!prov.is_object()) fail("provenance", "expected an object of strings");
    for (auto it = prov.begin(); it != prov.end(); ++it) {
      if (!it.value().is_string()) fail("provenance." + it.key(), "expected a string");
      out.triple.provenance.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
  if (doc.contains("expected_c")) out.expected_c = parse_form(doc["expected_c"], dim, 3, "expected_c");
  if (options.require_valid) require_valid(out.triple);
  return out;
}

HermitianTriple parse_algebra(std::string_view text, const ParseOptions& options) {
  return parse_document(text, options).triple;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HermitianTriple read_algebra_file(const std::filesystem::path& path, const ParseOptions& options) {
  const std::string text = read_text_file(path);
  try {
    return parse_algebra(text, options);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string serialize_algebra(const HermitianTriple& t) {
  const int n = t.dim();
  std::ostringstream os;
  os << "{\n  \"format_version\": " << kFormatVersion << ",\n";
  if (!t.name.empty()) os << "  \"name\": " << compact(t.name) << ",\n";
  os << "  \"dim\": " << n << ",\n";

  const auto& br = t.algebra.brackets();
  if (br.empty()) {
    os << "  \"brackets\": [],\n";
  } else {
    os << "  \"brackets\": [\n";
    std::size_t count = 0;
    for (const auto& [ij, terms] : br) {
      std::vector<BracketTerm> sorted = terms;
      std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
      json rec;
      rec["i"] = ij.first + 1;
      rec["j"] = ij.second + 1;
      rec["targets"] = json::array();
      for (const auto& term : sorted) rec["targets"].push_back({{"k", term.k + 1}, {"coeff", term.coeff.str()}});
      os << "    " << compact(rec) << (++count < br.size() ? ",\n" : "\n");
    }
    os << "  ],\n";
  }

  if (auto pairs = t.J.as_pairs()) {
    json p = json::array();
    for (auto [a, b] : *pairs) p.push_back({a + 1, b + 1});
    os << "  \"J\": {\"pairs\":" << compact(p) << "},\n";
  } else {
    os << "  \"J\": {\"matrix\":[\n";
    for (int r = 0; r < n; ++r) {
      json row = json::array();
      for (int c = 0; c < n; ++c) row.push_back(t.J.matrix()(r, c).str());
      os << "    " << compact(row) << (r + 1 < n ? ",\n" : "\n");
    }
    os << "  ]},\n";
  }

  const bool has_prov = !t.provenance.empty();
  if (t.g.is_identity()) {
    os << "  \"metric\": \"identity\"" << (has_prov ? ",\n" : "\n");
  } else {
    os << "  \"metric\": [\n";
    for (int r = 0; r < n; ++r) {
      json row = json::array();
      for (int c = 0; c < n; ++c) row.push_back(t.g.matrix()(r, c).str());
      os << "    " << compact(row) << (r + 1 < n ? ",\n" : "\n");
    }
    os << "  ]" << (has_prov ? ",\n" : "\n");
  }
  if (has_prov) {
    json prov = json::object();
    for (const auto& [k, v] : t.provenance) prov[k] = v;
    os << "  \"provenance\": " << compact(prov) << "\n";
  }
  os << "}\n";
  return os.str();
}

void write_algebra_file(const std::filesystem::path& path, const HermitianTriple& triple) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_algebra(triple);
}

}  // namespace skt
