#include "kw1/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "kw1/errors.hpp"

namespace kw1 {

using nlohmann::ordered_json;

namespace {

std::string label_list_error(const LieAlgebraPresentation& pres, const std::vector<JacobiViolation<RationalField>>& v) {
  std::ostringstream os;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (t) os << ", ";
    os << '(' << pres.labels[v[t].i] << ", " << pres.labels[v[t].j] << ", " << pres.labels[v[t].l] << ')';
  }
  return os.str();
}

std::size_t require_label(const LieAlgebraPresentation& pres, const ordered_json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a basis label string");
  const auto idx = pres.index_of(j.get<std::string>());
  if (!idx) throw ParseError(where, "undeclared basis label '" + j.get<std::string>() + "'");
  return *idx;
}

mpq_class rational_value(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "rationals must be written as strings");
  return parse_rational(j.get<std::string>(), where);
}

std::string default_label(std::size_t i, std::size_t n) {
  static const char* kNames[] = {"x", "y", "z", "w"};
  return n <= 4 ? kNames[i] : "x" + std::to_string(i + 1);
}

unsigned parse_positive(const std::string& text, const std::string& name) {
  static const std::regex kDigits("[1-9][0-9]{0,5}");
  if (!std::regex_match(text, kDigits)) throw ParseError(name, "expected a positive integer, got '" + text + "'");
  return static_cast<unsigned>(std::stoul(text));
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const ordered_json& j, const std::string& prefix, ordered_json& out) {
  if (j.is_object()) {
    if (j.empty()) out[prefix] = "";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) joined += "; ";
      joined += scalar_text(j[i]);
    }
    out[prefix] = joined;
  } else {
    out[prefix] = scalar_text(j);
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

std::string memo_path(const ModularEnvelope& env, const LieAlgebraPresentation& pres, const std::string& dir) {
  const std::string key = render_input(pres) + "|" + std::to_string(env.p()) + "|" + env.field().modulus_string();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) h = (h ^ c) * 0x100000001b3ULL;
  char name[64];
  std::snprintf(name, sizeof(name), "kw1-memo-%016llx.json", static_cast<unsigned long long>(h));
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

mpq_class parse_rational(const std::string& text, const std::string& location) {
  static const std::regex kRational("-?[0-9]+(/[0-9]+)?");
  if (!std::regex_match(text, kRational)) throw ParseError(location, "malformed rational '" + text + "'");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string den = text.substr(slash + 1);
    if (den.find_first_not_of('0') == std::string::npos) throw ParseError(location, "zero denominator in '" + text + "'");
  }
  mpq_class q(text, 10);
  q.canonicalize();
  return q;
}

LieAlgebraPresentation parse_input_text(const std::string& text, const std::string& source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ", byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (!doc.is_object()) throw ParseError(source, "top level must be an object");
  for (const auto& [k, v] : doc.items())
    if (k != "name" && k != "basis" && k != "brackets" && k != "pmapOverride")
      throw ParseError(source + "." + k, "unknown key");

  LieAlgebraPresentation pres;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError(source + ".name", "expected a string");
    pres.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("basis") || !doc["basis"].is_array()) throw ParseError(source + ".basis", "expected a list of labels");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc["basis"].size(); ++i) {
    const auto& l = doc["basis"][i];
    const std::string where = source + ".basis[" + std::to_string(i) + "]";
    if (!l.is_string() || l.get<std::string>().empty()) throw ParseError(where, "expected a nonempty label");
    const std::string label = l.get<std::string>();
    static const std::regex kLabel("[A-Za-z_][A-Za-z0-9_]*");
    if (!std::regex_match(label, kLabel)) throw ParseError(where, "labels must be identifiers");
    if (!seen.insert(label).second) throw DuplicateLabel(label);
    pres.labels.push_back(label);
  }
  if (pres.labels.empty()) throw ParseError(source + ".basis", "basis must not be empty");

  if (doc.contains("brackets")) {
    const auto& br = doc["brackets"];
    if (!br.is_array()) throw ParseError(source + ".brackets", "expected a list");
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t t = 0; t < br.size(); ++t) {
      const std::string where = source + ".brackets[" + std::to_string(t) + "]";
      const auto& b = br[t];
      if (!b.is_object()) throw ParseError(where, "expected an object");
      for (const auto& [k, v] : b.items())
        if (k != "left" && k != "right" && k != "result") throw ParseError(where + "." + k, "unknown key");
      if (!b.contains("left") || !b.contains("right") || !b.contains("result"))
        throw ParseError(where, "needs left, right and result");
      const std::size_t i = require_label(pres, b["left"], where + ".left");
      const std::size_t j = require_label(pres, b["right"], where + ".right");
      if (i == j) throw ParseError(where, "[x, x] is zero by definition");
      if (!pairs.insert({std::min(i, j), std::max(i, j)}).second) throw ParseError(where, "bracket given twice");
      if (!b["result"].is_object()) throw ParseError(where + ".result", "expected a map label -> rational");
      for (const auto& [k, v] : b["result"].items()) {
        const std::string w = where + ".result." + k;
        const auto idx = pres.index_of(k);
        if (!idx) throw ParseError(w, "undeclared basis label '" + k + "'");
        const mpq_class c = rational_value(v, w);
        if (c != 0) pres.add_bracket(i, j, *idx, c);
      }
    }
  }

  if (doc.contains("pmapOverride")) {
    const auto& po = doc["pmapOverride"];
    if (!po.is_object()) throw ParseError(source + ".pmapOverride", "expected an object");
    for (const auto& [k, row] : po.items()) {
      const std::string where = source + ".pmapOverride." + k;
      const auto i = pres.index_of(k);
      if (!i) throw ParseError(where, "undeclared basis label '" + k + "'");
      if (!row.is_object()) throw ParseError(where, "expected a map label -> rational");
      auto& dst = pres.pmap_override[*i];
      for (const auto& [l, v] : row.items()) {
        const auto j = pres.index_of(l);
        if (!j) throw ParseError(where + "." + l, "undeclared basis label '" + l + "'");
        const mpq_class c = rational_value(v, where + "." + l);
        if (c != 0) dst[*j] = c;
      }
    }
  }

  const auto violations = validate_presentation(pres);
  if (!violations.empty()) {
    std::vector<JacobiTriple> triples;
    for (const auto& v : violations) triples.push_back({v.i, v.j, v.l});
    throw JacobiError(std::move(triples), "violated at " + label_list_error(pres, violations));
  }
  return pres;
}

LieAlgebraPresentation parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input_text(ss.str(), path);
}

std::string render_input(const LieAlgebraPresentation& pres) {
  ordered_json doc;
  doc["name"] = pres.name;
  doc["basis"] = pres.labels;
  ordered_json brackets = ordered_json::array();
  std::map<std::pair<std::size_t, std::size_t>, ordered_json> grouped;
  for (const auto& [key, c] : pres.constants) {
    auto& result = grouped[{key[0], key[1]}];
    if (result.is_null()) result = ordered_json::object();
    result[pres.labels[key[2]]] = c.get_str();
  }
  for (const auto& [ij, result] : grouped) {
    ordered_json b;
    b["left"] = pres.labels[ij.first];
    b["right"] = pres.labels[ij.second];
    b["result"] = result;
    brackets.push_back(std::move(b));
  }
  doc["brackets"] = std::move(brackets);
  if (!pres.pmap_override.empty()) {
    ordered_json po = ordered_json::object();
    for (const auto& [i, row] : pres.pmap_override) {
      ordered_json r = ordered_json::object();
      for (const auto& [j, c] : row) r[pres.labels[j]] = c.get_str();
      po[pres.labels[i]] = std::move(r);
    }
    doc["pmapOverride"] = std::move(po);
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> builtin_names() {
  return {"abelian:N", "nonabelian2", "heisenberg", "sl2", "gl2", "borel2", "remark:N:M"};
}

LieAlgebraPresentation builtin_example(const std::string& name) {
  LieAlgebraPresentation pres;
  pres.name = name;
  if (name.rfind("abelian:", 0) == 0) {
    const unsigned n = parse_positive(name.substr(8), "abelian:N");
    if (n > kMaxDim) throw ParseError("abelian:N", "dimension above " + std::to_string(kMaxDim));
    for (std::size_t i = 0; i < n; ++i) pres.labels.push_back(default_label(i, n));
  } else if (name == "nonabelian2") {
    pres.labels = {"h", "x"};
    pres.add_bracket(0, 1, 1, 1);
  } else if (name == "heisenberg") {
    pres.labels = {"x", "y", "z"};
    pres.add_bracket(0, 1, 2, 1);
  } else if (name == "sl2") {
    pres.labels = {"h", "e", "f"};
    pres.add_bracket(0, 1, 1, 2);
    pres.add_bracket(0, 2, 2, -2);
    pres.add_bracket(1, 2, 0, 1);
  } else if (name == "gl2") {
    pres.labels = {"e11", "e12", "e21", "e22"};
    pres.add_bracket(0, 1, 1, 1);
    pres.add_bracket(0, 2, 2, -1);
    pres.add_bracket(1, 2, 0, 1);
    pres.add_bracket(1, 2, 3, -1);
    pres.add_bracket(1, 3, 1, 1);
    pres.add_bracket(2, 3, 2, -1);
  } else if (name == "borel2") {
    pres.labels = {"e11", "e12", "e22"};
    pres.add_bracket(0, 1, 1, 1);
    pres.add_bracket(1, 2, 1, 1);
  } else if (name.rfind("remark:", 0) == 0) {
    const std::string rest = name.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError(name, "expected remark:N:M");
    const unsigned n = parse_positive(rest.substr(0, colon), "remark:N:M");
    const unsigned m = parse_positive(rest.substr(colon + 1), "remark:N:M");
    if (std::gcd(n, m) != 1) throw ParseError(name, "N and M must be coprime");
    pres.labels = {"h", "x", "y"};
    pres.add_bracket(0, 1, 1, n);
    pres.add_bracket(0, 2, 2, m);
  } else {
    throw ParseError("--example", "unknown builtin '" + name + "'");
  }
  return pres;
}

void validate_builtins() {
  for (const std::string name : {"abelian:1", "abelian:4", "nonabelian2", "heisenberg", "sl2", "gl2", "borel2",
                                 "remark:1:1", "remark:1:2", "remark:2:3"}) {
    const auto pres = builtin_example(name);
    if (!validate_presentation(pres).empty()) throw std::logic_error("builtin " + name + " fails the Jacobi identity");
  }
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "md") return Format::Markdown;
  if (text == "csv") return Format::Csv;
  throw ParseError("--format", "expected json, md or csv, got '" + text + "'");
}

ordered_json report_json(const KW1Report& r) {
  ordered_json j;
  j["algebraName"] = r.algebra;
  j["p"] = r.p;
  j["e"] = r.e;
  j["definingPolynomial"] = r.defining_polynomial;
  j["dim"] = r.dim;
  j["ind"] = r.ind;
  j["degreeBound"] = r.degree_bound;
  j["stabilized"] = r.stabilized;
  j["rankZoverZp"] = r.rank;
  j["rankBelowBound"] = r.rank_below_bound;
  j["pToDim"] = r.p_to_dim;
  if (r.m_upper)
    j["mUpper"] = *r.m_upper;
  else
    j["mUpper"] = r.m_upper_text;
  j["mLower"] = r.m_lower;
  if (r.oracle) {
    ordered_json o;
    o["estimate"] = r.oracle->estimate;
    o["witness"] = r.oracle->witness;
    o["witnessField"] = r.oracle->witness_field;
    o["samples"] = r.oracle->samples;
    o["seed"] = r.oracle->seed;
    o["escalated"] = r.oracle->escalated;
    o["degraded"] = r.oracle->degraded;
    j["oracleEstimate"] = std::move(o);
  } else {
    j["oracleEstimate"] = nullptr;
  }
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  j["indexTrials"] = r.index_trials;
  j["notes"] = r.notes;
  return j;
}

std::string render_table(const std::vector<ordered_json>& rows, Format format) {
  std::vector<ordered_json> flat;
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    ordered_json f = ordered_json::object();
    flatten(row, "", f);
    for (const auto& [k, v] : f.items())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    flat.push_back(std::move(f));
  }
  std::ostringstream os;
  auto cell = [&](const ordered_json& f, const std::string& c) {
    return f.contains(c) ? f[c].get<std::string>() : std::string();
  };
  if (format == Format::Csv) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_cell(columns[c]);
    os << '\n';
    for (const auto& f : flat) {
      for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_cell(cell(f, columns[c]));
      os << '\n';
    }
  } else {
    os << '|';
    for (const auto& c : columns) os << ' ' << md_cell(c) << " |";
    os << "\n|";
    for (std::size_t c = 0; c < columns.size(); ++c) os << " --- |";
    os << '\n';
    for (const auto& f : flat) {
      os << '|';
      for (const auto& c : columns) os << ' ' << md_cell(cell(f, c)) << " |";
      os << '\n';
    }
  }
  return os.str();
}

std::string render_reports(const std::vector<KW1Report>& reports, Format format) {
  std::vector<ordered_json> rows;
  for (const auto& r : reports) rows.push_back(report_json(r));
  if (format == Format::Json) {
    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["reports"] = rows;
    return doc.dump(2) + "\n";
  }
  if (format == Format::Markdown)
    return std::string("# ") + kToolName + " " + kToolVersion + " reports\n\n" + render_table(rows, format);
  return render_table(rows, format);
}

std::vector<std::uint32_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    static const std::regex kDigits(" *([0-9]{1,9}) *");
    std::smatch match;
    if (!std::regex_match(item, match, kDigits))
      throw ParseError("--primes", "expected a comma-separated list, got '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(match[1].str())));
  }
  return out;
}

void validate_config(const RunConfig& config) {
  if (config.primes.empty()) throw InputError("at least one prime is required");
  for (auto p : config.primes)
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (config.degree_bound && *config.degree_bound < 1) throw InputError("degree bound must be at least 1");
  if (config.extension_degree && *config.extension_degree < 1) throw InputError("extension degree must be at least 1");
  if (config.samples < 1) throw InputError("samples must be at least 1");
}

int exit_code_for(const std::exception& e, const LieAlgebraPresentation* pres) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const NotRestrictable*>(&e) ||
      dynamic_cast<const DegreeBoundTooLargeForMemory*>(&e) || dynamic_cast<const DimensionCap*>(&e))
    return 1;
  if (dynamic_cast<const CentralityFailure*>(&e) && pres && !pres->pmap_override.empty()) return 1;
  return 3;
}

RunOutcome run(const RunConfig& config, const LieAlgebraPresentation& pres) {
  RunOutcome out;
  try {
    validate_config(config);
    bool all_verified = true;
    for (auto p : config.primes) {
      const ModularEnvelope env(restricted_reduction(pres, p));
      if (!config.cache_dir.empty()) load_memo(env, pres, config.cache_dir);
      VerdictOptions vo;
      vo.degree_bound = config.degree_bound;
      vo.extension_degree = config.extension_degree;
      vo.seed = config.seed;
      vo.with_oracle = config.with_oracle;
      vo.oracle_samples = config.samples;
      out.reports.push_back(kw1_verdict(env, vo));
      if (!config.cache_dir.empty()) save_memo(env, pres, config.cache_dir);
      all_verified = all_verified && out.reports.back().verdict == Verdict::Verified;
    }
    out.exit_code = all_verified ? 0 : 2;
  } catch (const std::exception& e) {
    out.exit_code = exit_code_for(e, &pres);
    out.error = e.what();
  }
  return out;
}

void load_memo(const ModularEnvelope& env, const LieAlgebraPresentation& pres, const std::string& dir) {
  std::ifstream in(memo_path(env, pres, dir));
  if (!in) return;
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return;
  }
  const std::size_t n = env.dim();
  auto monomial = [n](const ordered_json& a) {
    if (!a.is_array() || a.size() != n) throw std::invalid_argument("memo monomial");
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m.set(i, a[i].get<unsigned>());
    return m;
  };
  std::vector<EnvelopingAlgebra<GaloisField>::MemoEntry> entries;
  try {
    for (const auto& e : doc.at("entries")) {
      const std::size_t g = e.at("g").get<std::size_t>();
      if (g >= n) throw std::invalid_argument("memo generator");
      std::vector<ModularElement::Term> terms;
      for (const auto& t : e.at("terms")) {
        const auto c = t.at(1).get<std::uint32_t>();
        if (c == 0 || c >= env.field().order()) throw std::invalid_argument("memo coefficient");
        terms.emplace_back(monomial(t.at(0)), c);
      }
      std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return deglex_less(a.first, b.first); });
      entries.push_back({g, monomial(e.at("m")), ModularElement(n, env.U().tag(), std::move(terms))});
    }
  } catch (const std::exception&) {
    return;
  }
  env.U().memo_preload(entries);
}

void save_memo(const ModularEnvelope& env, const LieAlgebraPresentation& pres, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::size_t n = env.dim();
  auto monomial = [n](const Monomial& m) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) a.push_back(m[i]);
    return a;
  };
  auto snapshot = env.U().memo_snapshot();
  std::sort(snapshot.begin(), snapshot.end(), [](const auto& a, const auto& b) {
    if (a.generator != b.generator) return a.generator < b.generator;
    return deglex_less(a.monomial, b.monomial);
  });
  ordered_json entries = ordered_json::array();
  for (const auto& e : snapshot) {
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : e.product.terms()) terms.push_back(ordered_json::array({monomial(m), c}));
    entries.push_back({{"g", e.generator}, {"m", monomial(e.monomial)}, {"terms", std::move(terms)}});
  }
  ordered_json doc;
  doc["entries"] = std::move(entries);
  const std::string path = memo_path(env, pres, dir);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace kw1
