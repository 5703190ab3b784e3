#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kw1/lie_algebra.hpp"
#include "kw1/verdict.hpp"

namespace kw1 {

inline constexpr const char* kToolName = "kw1";
inline constexpr const char* kToolVersion = "1.0.0";

/// "a" or "a/b" with b > 0.  Throws ParseError.
mpq_class parse_rational(const std::string& text, const std::string& location);

/// Reads an input document and validates it.  Throws ParseError, DuplicateLabel, JacobiError.
LieAlgebraPresentation parse_input_text(const std::string& text, const std::string& source = "<input>");
LieAlgebraPresentation parse_input_file(const std::string& path);
/// Canonical document for a presentation; parse_input_text inverts it.
std::string render_input(const LieAlgebraPresentation& pres);

/// Registry patterns: abelian:N, nonabelian2, heisenberg, sl2, gl2, borel2, remark:N:M.
std::vector<std::string> builtin_names();
/// Throws ParseError for unknown names or bad parameters.
LieAlgebraPresentation builtin_example(const std::string& name);
/// Checks every fixed registry entry; throws std::logic_error on a broken entry.
void validate_builtins();

enum class Format { Json, Markdown, Csv };
Format parse_format(const std::string& text);

nlohmann::ordered_json report_json(const KW1Report& report);
/// {tool, version, reports: [...]} rendered in the requested format.
std::string render_reports(const std::vector<KW1Report>& reports, Format format);
/// Markdown table or CSV whose columns are the flattened keys of the rows.
std::string render_table(const std::vector<nlohmann::ordered_json>& rows, Format format);

struct RunConfig {
  std::vector<std::uint32_t> primes;
  std::optional<unsigned> extension_degree;
  std::optional<unsigned> degree_bound;
  unsigned samples = 10;
  std::uint64_t seed = 0;
  bool with_oracle = false;
  Format format = Format::Json;
  /// Directory for the straightening memo spill; empty disables it.
  std::string cache_dir;
};

/// Throws InputError when a field is out of range.
void validate_config(const RunConfig& config);
std::vector<std::uint32_t> parse_prime_list(const std::string& text);

struct RunOutcome {
  std::vector<KW1Report> reports;
  int exit_code = 0;
  std::string error;
};

/// One report per prime, in config order.  Exit code 0 when all are verified,
/// 2 when any is inconclusive, 1 on input errors, 3 on internal errors.
RunOutcome run(const RunConfig& config, const LieAlgebraPresentation& pres);

/// Exit code for an exception escaping a pipeline on `pres`.
int exit_code_for(const std::exception& e, const LieAlgebraPresentation* pres = nullptr);

/// Loads / stores the straightening memo of env under dir; missing files are ignored.
void load_memo(const ModularEnvelope& env, const LieAlgebraPresentation& pres, const std::string& dir);
void save_memo(const ModularEnvelope& env, const LieAlgebraPresentation& pres, const std::string& dir);

}  // namespace kw1
