#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kw1/cli.hpp"
#include "kw1/errors.hpp"
#include "kw1/io.hpp"
#include "kw1/redenv.hpp"
#include "kw1/verdict.hpp"

namespace py = pybind11;

namespace {

// A builtin name such as "sl2" or a JSON input document.
kw1::LieAlgebraPresentation load(const std::string& algebra) {
  const auto first = algebra.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && algebra[first] == '{') return kw1::parse_input_text(algebra);
  return kw1::builtin_example(algebra);
}

kw1::ModularEnvelope envelope(const std::string& algebra, std::uint32_t p) {
  if (!kw1::is_prime(p)) throw kw1::InputError(std::to_string(p) + " is not prime");
  return kw1::ModularEnvelope(kw1::restricted_reduction(load(algebra), p));
}

std::vector<std::string> render_all(const kw1::ModularEnvelope& env, const std::vector<kw1::ModularElement>& v) {
  std::vector<std::string> out;
  for (const auto& a : v) out.push_back(env.U().render(a));
  return out;
}

unsigned bound_or_default(const kw1::ModularEnvelope& env, std::optional<unsigned> d) {
  return d ? *d : kw1::default_degree_bound(env.dim(), env.p());
}

}  // namespace

PYBIND11_MODULE(_kw1, m) {
  m.doc() = "Kac-Weisfeiler workbench: restricted Lie algebras, PBW arithmetic and centers in characteristic p";
  m.attr("__version__") = kw1::kToolVersion;

  auto base = py::register_exception<kw1::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<kw1::InputError>(m, "InputError", base.ptr());
  py::register_exception<kw1::NotRestrictable>(m, "NotRestrictable", base.ptr());
  py::register_exception<kw1::WeightMismatch>(m, "WeightMismatch", base.ptr());
  py::register_exception<kw1::DimensionCap>(m, "DimensionCap", base.ptr());

  m.def("builtin_names", &kw1::builtin_names);
  m.def("algebra_document", [](const std::string& algebra) { return kw1::render_input(load(algebra)); },
        py::arg("algebra"), "Canonical JSON input document for a builtin or a document.");

  m.def(
      "index",
      [](const std::string& algebra, std::optional<std::uint32_t> p, unsigned trials, std::uint64_t seed) {
        const auto pres = load(algebra);
        if (!p) return kw1::index_generic(kw1::rational_algebra(pres), trials, seed).index;
        return kw1::index_generic(kw1::base_change_mod_p(pres, *p).lie, trials, seed).index;
      },
      py::arg("algebra"), py::arg("p") = py::none(), py::arg("trials") = 3, py::arg("seed") = 0);

  m.def(
      "p_map",
      [](const std::string& algebra, std::uint32_t p) {
        const auto env = envelope(algebra, p);
        std::map<std::string, std::string> out;
        for (std::size_t i = 0; i < env.dim(); ++i)
          out[env.algebra().lie.labels()[i]] = env.U().render(env.U().from_vector(env.pmap().pmap[i]));
        return out;
      },
      py::arg("algebra"), py::arg("p"));

  m.def(
      "p_center_generators",
      [](const std::string& algebra, std::uint32_t p) {
        const auto env = envelope(algebra, p);
        return render_all(env, kw1::p_center_generators(env).xi);
      },
      py::arg("algebra"), py::arg("p"));

  m.def(
      "center_basis",
      [](const std::string& algebra, std::uint32_t p, std::optional<unsigned> degree_bound, std::uint64_t seed) {
        const auto env = envelope(algebra, p);
        kw1::CenterOptions co;
        co.seed = seed;
        co.skip_stabilization = true;
        return render_all(env, kw1::center_basis_bounded(env, bound_or_default(env, degree_bound), co).elements);
      },
      py::arg("algebra"), py::arg("p"), py::arg("degree_bound") = py::none(), py::arg("seed") = 0);

  m.def(
      "rank_over_p_center",
      [](const std::string& algebra, std::uint32_t p, std::optional<unsigned> degree_bound, std::uint64_t seed) {
        const auto env = envelope(algebra, p);
        const unsigned d = bound_or_default(env, degree_bound);
        kw1::CenterOptions co;
        co.seed = seed;
        co.skip_stabilization = true;
        return kw1::rank_over_p_center(env, kw1::center_basis_bounded(env, d, co), seed,
                                       kw1::default_sampling_field(p, env.dim(), d))
            .rank;
      },
      py::arg("algebra"), py::arg("p"), py::arg("degree_bound") = py::none(), py::arg("seed") = 0);

  m.def(
      "fraction_field_degree",
      [](const std::string& algebra, std::uint32_t p, const std::string& phi, const std::string& psi,
         std::optional<unsigned> power_bound, std::uint64_t seed) {
        const auto env = envelope(algebra, p);
        return kw1::fraction_field_degree(env, env.U().parse(phi), env.U().parse(psi), power_bound.value_or(p), seed)
            .degree;
      },
      py::arg("algebra"), py::arg("p"), py::arg("phi"), py::arg("psi"), py::arg("power_bound") = py::none(),
      py::arg("seed") = 0);

  m.def(
      "in_p_center_subalgebra",
      [](const std::string& algebra, std::uint32_t p, const std::string& element) {
        const auto env = envelope(algebra, p);
        return kw1::in_p_center_subalgebra(env, env.U().parse(element));
      },
      py::arg("algebra"), py::arg("p"), py::arg("element"));

  m.def(
      "max_irreducible_dim",
      [](const std::string& algebra, std::uint32_t p, unsigned samples, std::uint64_t seed) {
        kw1::OracleOptions oo;
        oo.samples = samples;
        oo.seed = seed;
        py::gil_scoped_release release;
        return kw1::max_irreducible_dim(envelope(algebra, p), oo).estimate;
      },
      py::arg("algebra"), py::arg("p"), py::arg("samples") = 10, py::arg("seed") = 0);

  m.def(
      "rank_over_frobenius_subring",
      [](std::size_t num_vars, const std::vector<std::string>& generators, std::uint32_t p,
         std::optional<unsigned> bound, std::uint64_t seed) {
        if (!kw1::is_prime(p)) throw kw1::InputError(std::to_string(p) + " is not prime");
        const auto ring = kw1::polynomial_ring(num_vars, p);
        std::vector<kw1::XiPolynomial> gens;
        for (const auto& g : generators) gens.push_back(ring.U().parse_symmetric(g));
        const unsigned b = bound ? *bound : static_cast<unsigned>(num_vars) * (p - 1) + 2;
        return kw1::rank_over_frobenius_subring(num_vars, gens, p, b, seed);
      },
      py::arg("num_vars"), py::arg("generators"), py::arg("p"), py::arg("bound") = py::none(), py::arg("seed") = 0);

  m.def(
      "check_json",
      [](const std::string& algebra, std::vector<std::uint32_t> primes, std::optional<unsigned> degree_bound,
         std::optional<unsigned> ext, unsigned samples, std::uint64_t seed, bool oracle) {
        kw1::RunConfig cfg;
        cfg.primes = std::move(primes);
        cfg.degree_bound = degree_bound;
        cfg.extension_degree = ext;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.with_oracle = oracle;
        kw1::validate_config(cfg);
        const auto pres = load(algebra);
        kw1::RunOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = kw1::run(cfg, pres);
        }
        if (outcome.exit_code == 1) throw kw1::InputError(outcome.error);
        if (!outcome.error.empty()) throw kw1::Error(outcome.error);
        return py::make_tuple(kw1::render_reports(outcome.reports, kw1::Format::Json), outcome.exit_code);
      },
      py::arg("algebra"), py::arg("primes"), py::arg("degree_bound") = py::none(), py::arg("ext") = py::none(),
      py::arg("samples") = 10, py::arg("seed") = 0, py::arg("oracle") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = kw1::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
