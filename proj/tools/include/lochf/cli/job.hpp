#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "lochf/error.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/homalg/resolution.hpp"
#include "lochf/locring/presentation.hpp"

namespace lochf::cli {

using Json = nlohmann::ordered_json;

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Byte offsets of every value in a JSON document, keyed by JSON pointer.
class SourceMap {
 public:
  SourceMap() = default;
  /// `text` must already be valid JSON.
  explicit SourceMap(std::string_view text);

  /// Location of the value at `pointer`, or of its nearest recorded parent.
  std::optional<SourceLocation> find(std::string pointer) const;

 private:
  std::size_t value(std::size_t pos, const std::string& pointer);
  std::size_t skip_ws(std::size_t pos) const;
  std::size_t skip_string(std::size_t pos) const;

  std::string text_;
  std::unordered_map<std::string, std::size_t> offsets_;
};

/// A malformed job. The message starts with "line L, column C:" when the
/// job came from text, otherwise with the JSON pointer of the bad value.
class JobError : public Error {
 public:
  JobError(Errc code, std::optional<SourceLocation> where, const std::string& pointer,
           const std::string& message);

  const std::optional<SourceLocation>& where() const noexcept { return where_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::optional<SourceLocation> where_;
  std::string pointer_;
};

/// Typed access to parts of a job document; every failure is a JobError
/// located at the offending value.
class Reader {
 public:
  explicit Reader(const SourceMap* source = nullptr) : source_(source) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;

  void expect_object(const Json& v, const std::string& p) const;
  /// Fails on keys outside `known`.
  void expect_keys(const Json& obj, const std::string& p,
                   const std::vector<std::string>& known) const;
  const Json& member(const Json& obj, const std::string& key, const std::string& p) const;
  std::uint64_t unsigned_at(const Json& v, const std::string& p) const;
  bool bool_at(const Json& v, const std::string& p) const;
  std::string string_at(const Json& v, const std::string& p) const;
  std::vector<std::string> strings_at(const Json& v, const std::string& p) const;
  locring::Polynomial polynomial_at(const locring::RingSpec& r, const Json& v,
                                    const std::string& p) const;
  locring::PolyMatrix matrix_at(const locring::RingSpec& r, const Json& v,
                                const std::string& p) const;
  /// Generators of a numerical semigroup, checked for gcd 1.
  std::vector<std::uint32_t> generators_at(const Json& v, const std::string& p) const;

 private:
  const SourceMap* source_;
};

std::string pointer_child(const std::string& pointer, const std::string& key);
std::string pointer_child(const std::string& pointer, std::size_t index);

struct NamedModule {
  std::string name;
  locring::ModulePresentation module;
  /// Set for modules given as a matrix factorization; `module` is then
  /// coker(phi) over Q/(f).
  std::optional<homalg::MatrixFactorization> factorization;
};

struct NamedGraded {
  std::string name;
  grmod::GradedQuotient ring;
};

struct NamedSemigroup {
  std::string name;
  std::vector<std::uint32_t> generators;
};

struct Command {
  std::size_t index = 0;
  std::string name;
  Json params;
};

/// Command-line settings that take precedence over the job file.
struct Overrides {
  std::optional<exactla::FieldSpec> field;
  std::optional<std::uint32_t> truncation;
  std::optional<std::size_t> window;
  std::optional<std::uint64_t> seed;
};

struct Job {
  exactla::FieldSpec field;
  /// Null when the job declares no ring.
  std::shared_ptr<const locring::QuotientPresentation> base;
  std::vector<NamedModule> modules;
  std::vector<NamedGraded> graded;
  std::vector<NamedSemigroup> semigroups;
  std::vector<Command> commands;
  std::size_t window = 6;
  std::uint64_t seed = 20240607;

  const NamedModule* module(std::string_view name) const;
  const NamedGraded* graded_ring(std::string_view name) const;
  const NamedSemigroup* semigroup(std::string_view name) const;
};

/// Validated job together with what is needed to locate diagnostics.
struct LoadedJob {
  Job job;
  Json document;
  SourceMap source;
  bool has_source = false;
};

/// Parses and validates the whole job file. Throws JobError (parse_error for
/// malformed JSON, invalid_input otherwise); nothing is executed.
LoadedJob load_job(std::string_view text, const Overrides& overrides = {});

/// Same checks for a document built in memory; diagnostics carry pointers.
LoadedJob load_document(Json document, const Overrides& overrides = {});

}  // namespace lochf::cli
