#include "kw1/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "kw1/errors.hpp"
#include "kw1/io.hpp"

namespace kw1 {

using nlohmann::ordered_json;

namespace {

struct Options {
  std::string example;
  std::string input;
  std::string primes = "3,5";
  std::uint32_t prime = 0;
  unsigned ext = 0;
  unsigned degree_bound = 0;
  unsigned samples = 10;
  unsigned trials = 3;
  std::uint64_t seed = 0;
  bool oracle = false;
  std::string format = "json";
  std::string out;
  std::string phi, psi;
  unsigned power_bound = 0;
  unsigned vars = 2;
  unsigned bound = 0;
  std::vector<std::string> generators;
};

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--example", o.example, "builtin algebra, e.g. sl2 or remark:1:2");
  cmd->add_option("--input", o.input, "input document (JSON)");
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "json, md or csv");
  cmd->add_option("--out", o.out, "write output to this path");
}

void add_prime(CLI::App* cmd, Options& o, bool required) {
  auto* opt = cmd->add_option("--prime", o.prime, "characteristic");
  if (required) opt->required();
}

LieAlgebraPresentation load_source(const Options& o) {
  if (o.example.empty() == o.input.empty()) throw InputError("give exactly one of --example and --input");
  return o.example.empty() ? parse_input_file(o.input) : builtin_example(o.example);
}

std::uint32_t require_prime(const Options& o) {
  if (!is_prime(o.prime)) throw InputError("--prime " + std::to_string(o.prime) + " is not prime");
  return o.prime;
}

ordered_json header(const std::string& command) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

std::string render_single(const ordered_json& j, Format format) {
  if (format == Format::Json) return j.dump(2) + "\n";
  return render_table({j}, format);
}

std::optional<unsigned> opt_unsigned(unsigned v) { return v ? std::optional<unsigned>(v) : std::nullopt; }

std::string cmd_index(const Options& o, Format format) {
  const auto pres = load_source(o);
  ordered_json j = header("index");
  j["algebraName"] = pres.name;
  IndexResult r;
  if (o.prime) {
    const auto alg = base_change_mod_p(pres, require_prime(o));
    r = o.ext ? index_generic(alg.lie, GaloisField(o.prime, o.ext), o.trials, o.seed)
              : index_generic(alg.lie, o.trials, o.seed);
    j["field"] = alg.field().describe();
  } else {
    r = index_generic(rational_algebra(pres), o.trials, o.seed);
    j["field"] = "Q";
  }
  j["dim"] = pres.dim();
  j["index"] = r.index;
  j["genericRank"] = r.generic_rank;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["samplingField"] = r.sampling_field;
  return render_single(j, format);
}

std::string cmd_pmap(const Options& o, Format format) {
  const auto pres = load_source(o);
  const ModularEnvelope env(restricted_reduction(pres, require_prime(o)));
  ordered_json j = header("pmap");
  j["algebraName"] = pres.name;
  j["p"] = env.p();
  ordered_json table = ordered_json::object();
  for (std::size_t i = 0; i < env.dim(); ++i)
    table[pres.labels[i]] = env.U().render(env.U().from_vector(env.pmap().pmap[i]));
  j["pmap"] = std::move(table);
  ordered_json xi = ordered_json::array();
  for (const auto& x : p_center_generators(env).xi) xi.push_back(env.U().render(x));
  j["xi"] = std::move(xi);
  return render_single(j, format);
}

std::string cmd_center(const Options& o, Format format) {
  const auto pres = load_source(o);
  const ModularEnvelope env(restricted_reduction(pres, require_prime(o)));
  const unsigned d = o.degree_bound ? o.degree_bound : default_degree_bound(env.dim(), env.p());
  CenterOptions co;
  co.seed = o.seed;
  co.sampling = verdict_sampling_field(env.p(), env.dim(), d, opt_unsigned(o.ext));
  const CenterBasis cb = center_basis_bounded(env, d, co);
  ordered_json j = header("center");
  j["algebraName"] = pres.name;
  j["p"] = env.p();
  j["degreeBound"] = d;
  ordered_json elems = ordered_json::array();
  for (const auto& z : cb.elements) elems.push_back(env.U().render(z));
  j["dimension"] = cb.elements.size();
  j["elements"] = std::move(elems);
  j["stabilized"] = cb.stabilized;
  j["rankZoverZp"] = cb.rank_at_bound;
  j["rankBelowBound"] = cb.rank_below_bound;
  j["samplingField"] = cb.sampling_field;
  j["seed"] = o.seed;
  return render_single(j, format);
}

std::string cmd_rank(const Options& o, Format format) {
  const auto pres = load_source(o);
  const ModularEnvelope env(restricted_reduction(pres, require_prime(o)));
  const unsigned d = o.degree_bound ? o.degree_bound : default_degree_bound(env.dim(), env.p());
  const GaloisField sampling = verdict_sampling_field(env.p(), env.dim(), d, opt_unsigned(o.ext));
  CenterOptions co;
  co.seed = o.seed;
  co.skip_stabilization = true;
  const CenterBasis cb = center_basis_bounded(env, d, co);
  const RankResult r = rank_over_p_center(env, cb, o.seed, sampling);
  ordered_json j = header("rank");
  j["algebraName"] = pres.name;
  j["p"] = env.p();
  j["degreeBound"] = d;
  j["rankZoverZp"] = r.rank;
  j["rounds"] = r.rounds;
  j["closureStabilized"] = r.stabilized;
  j["samplingField"] = r.sampling_field;
  j["seed"] = o.seed;
  if (!o.phi.empty() || !o.psi.empty()) {
    if (o.phi.empty() || o.psi.empty()) throw InputError("--phi and --psi go together");
    const auto phi = env.U().parse(o.phi);
    const auto psi = env.U().parse(o.psi);
    const unsigned bound = o.power_bound ? o.power_bound : env.p();
    const auto fd = fraction_field_degree(env, phi, psi, bound, o.seed);
    ordered_json f;
    f["phi"] = env.U().render(phi);
    f["psi"] = env.U().render(psi);
    f["degree"] = fd.degree;
    f["powerBound"] = fd.power_bound;
    f["exponent"] = fd.exponent;
    f["conclusive"] = fd.conclusive;
    f["samplingField"] = fd.sampling_field;
    j["fractionFieldDegree"] = std::move(f);
  }
  return render_single(j, format);
}

std::string cmd_oracle(const Options& o, Format format) {
  const auto pres = load_source(o);
  const ModularEnvelope env(restricted_reduction(pres, require_prime(o)));
  if (o.samples < 1) throw InputError("samples must be at least 1");
  OracleOptions oo;
  oo.samples = o.samples;
  oo.seed = o.seed;
  const OracleResult r = max_irreducible_dim(env, oo);
  ordered_json j = header("oracle");
  j["algebraName"] = pres.name;
  j["p"] = env.p();
  j["estimate"] = r.estimate;
  j["witness"] = r.witness;
  j["witnessField"] = r.witness_field;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["escalated"] = r.escalated;
  j["degraded"] = r.degraded;
  if (format == Format::Json) {
    ordered_json runs = ordered_json::array();
    for (const auto& s : r.runs)
      runs.push_back({{"chi", s.chi}, {"field", s.field}, {"maxDimension", s.max_dimension}, {"degraded", s.degraded}});
    j["runs"] = std::move(runs);
  }
  return render_single(j, format);
}

std::string cmd_lemma1(const Options& o, Format format) {
  const std::uint32_t p = require_prime(o);
  if (o.vars < 1 || o.vars > kMaxDim) throw InputError("--vars must be between 1 and " + std::to_string(kMaxDim));
  const ModularEnvelope ring = polynomial_ring(o.vars, p);
  std::vector<XiPolynomial> gens;
  ordered_json rendered = ordered_json::array();
  for (const auto& g : o.generators) {
    gens.push_back(ring.U().parse_symmetric(g));
    rendered.push_back(ring.U().render(gens.back()));
  }
  const unsigned bound = o.bound ? o.bound : o.vars * (p - 1) + 2;
  const std::uint64_t r = rank_over_frobenius_subring(o.vars, gens, p, bound, o.seed);
  ordered_json j = header("lemma1");
  j["p"] = p;
  j["vars"] = o.vars;
  j["variables"] = ring.algebra().lie.labels();
  j["generators"] = std::move(rendered);
  j["stabilizationBound"] = bound;
  j["rank"] = r;
  j["seed"] = o.seed;
  return render_single(j, format);
}

std::string cmd_examples(Format format) {
  std::vector<ordered_json> rows;
  for (const auto& name : builtin_names()) {
    ordered_json row;
    row["name"] = name;
    const bool parametric = name.find(':') != std::string::npos;
    const auto pres = builtin_example(parametric ? (name == "abelian:N" ? "abelian:2" : "remark:1:1") : name);
    row["example"] = pres.name;
    row["dim"] = pres.dim();
    row["index"] = index_generic(rational_algebra(pres), 3, 0).index;
    row["basis"] = pres.labels;
    rows.push_back(std::move(row));
  }
  if (format == Format::Json) {
    ordered_json j = header("examples");
    j["examples"] = rows;
    return j.dump(2) + "\n";
  }
  return render_table(rows, format);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kac-Weisfeiler workbench for Lie algebras reduced mod p", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto* check = app.add_subcommand("check", "full pipeline: index, center, rank, bounds and verdict per prime");
  add_source(check, o);
  check->add_option("--primes", o.primes, "comma-separated primes");
  check->add_option("--ext", o.ext, "extension degree of the sampling field");
  check->add_option("--degree-bound", o.degree_bound, "degree bound D for the center");
  check->add_option("--samples", o.samples, "oracle characters sampled at random");
  check->add_option("--seed", o.seed);
  check->add_flag("--oracle", o.oracle, "attach the irreducible-dimension oracle");
  add_output(check, o);

  auto* index = app.add_subcommand("index", "generic index; over Q unless --prime is given");
  add_source(index, o);
  add_prime(index, o, false);
  index->add_option("--ext", o.ext);
  index->add_option("--trials", o.trials, "random functionals");
  index->add_option("--seed", o.seed);
  add_output(index, o);

  auto* pmap = app.add_subcommand("pmap", "restricted p-map and p-center generators");
  add_source(pmap, o);
  add_prime(pmap, o, true);
  add_output(pmap, o);

  auto* center = app.add_subcommand("center", "basis of the center in degree <= D");
  add_source(center, o);
  add_prime(center, o, true);
  center->add_option("--degree-bound", o.degree_bound);
  center->add_option("--ext", o.ext);
  center->add_option("--seed", o.seed);
  add_output(center, o);

  auto* rank = app.add_subcommand("rank", "rank of the center over the p-center, optionally a fraction-field degree");
  add_source(rank, o);
  add_prime(rank, o, true);
  rank->add_option("--degree-bound", o.degree_bound);
  rank->add_option("--ext", o.ext);
  rank->add_option("--seed", o.seed);
  rank->add_option("--phi", o.phi, "numerator semi-invariant");
  rank->add_option("--psi", o.psi, "denominator semi-invariant");
  rank->add_option("--power-bound", o.power_bound, "largest power of phi/psi tried (default p)");
  add_output(rank, o);

  auto* oracle = app.add_subcommand("oracle", "largest composition-factor dimension over sampled characters");
  add_source(oracle, o);
  add_prime(oracle, o, true);
  oracle->add_option("--samples", o.samples);
  oracle->add_option("--seed", o.seed);
  add_output(oracle, o);

  auto* lemma1 = app.add_subcommand("lemma1", "rank of F_p[x_1..x_n] over B A^p");
  add_prime(lemma1, o, true);
  lemma1->add_option("--vars", o.vars, "number of variables");
  lemma1->add_option("-g,--generator", o.generators, "generator of B, e.g. x*y^2");
  lemma1->add_option("--bound", o.bound, "closure rounds before giving up");
  lemma1->add_option("--seed", o.seed);
  add_output(lemma1, o);

  auto* examples = app.add_subcommand("examples", "list builtin algebras");
  add_output(examples, o);

  std::vector<std::string> argv_store{kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text;
  int code = 0;
  std::optional<LieAlgebraPresentation> pres;
  try {
    const Format format = parse_format(o.format);
    if (check->parsed()) {
      pres = load_source(o);
      RunConfig cfg;
      cfg.primes = parse_prime_list(o.primes);
      cfg.extension_degree = opt_unsigned(o.ext);
      cfg.degree_bound = opt_unsigned(o.degree_bound);
      if (check->count("--degree-bound") && o.degree_bound == 0) throw InputError("degree bound must be at least 1");
      cfg.samples = o.samples;
      cfg.seed = o.seed;
      cfg.with_oracle = o.oracle;
      cfg.format = format;
      if (const char* dir = std::getenv("KW1_CACHE_DIR")) cfg.cache_dir = dir;
      const RunOutcome r = run(cfg, *pres);
      if (!r.error.empty()) {
        err << "error: " << r.error << "\n";
        return r.exit_code;
      }
      text = render_reports(r.reports, format);
      code = r.exit_code;
    } else if (index->parsed()) {
      text = cmd_index(o, format);
    } else if (pmap->parsed()) {
      text = cmd_pmap(o, format);
    } else if (center->parsed()) {
      text = cmd_center(o, format);
    } else if (rank->parsed()) {
      text = cmd_rank(o, format);
    } else if (oracle->parsed()) {
      text = cmd_oracle(o, format);
    } else if (lemma1->parsed()) {
      text = cmd_lemma1(o, format);
    } else if (examples->parsed()) {
      text = cmd_examples(format);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e, pres ? &*pres : nullptr);
  }

  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 1;
    }
    f << text;
  }
  return code;
}

}  // namespace kw1
