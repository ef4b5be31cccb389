#include "lochf/cli/job.hpp"

#include <algorithm>

#include "lochf/numsgp/semigroup.hpp"

namespace lochf::cli {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& pointer, const std::string& key) {
  return pointer + "/" + escape_token(key);
}

std::string child(const std::string& pointer, std::size_t i) {
  return pointer + "/" + std::to_string(i);
}

std::string location_prefix(const std::optional<SourceLocation>& where,
                            const std::string& pointer) {
  std::string p = pointer.empty() ? "/" : pointer;
  if (!where) return p + ": ";
  std::string out = "line " + std::to_string(where->line) + ", column " + std::to_string(where->column);
  return pointer.empty() ? out + ": " : out + " (" + p + "): ";
}

}  // namespace

SourceMap::SourceMap(std::string_view text) : text_(text) { value(0, ""); }

std::size_t SourceMap::skip_ws(std::size_t pos) const {
  while (pos < text_.size() &&
         (text_[pos] == ' ' || text_[pos] == '\t' || text_[pos] == '\n' || text_[pos] == '\r'))
    ++pos;
  return pos;
}

std::size_t SourceMap::skip_string(std::size_t pos) const {
  ++pos;
  while (pos < text_.size() && text_[pos] != '"') pos += text_[pos] == '\\' ? 2 : 1;
  return pos + 1;
}

std::size_t SourceMap::value(std::size_t pos, const std::string& pointer) {
  pos = skip_ws(pos);
  if (pos >= text_.size()) return pos;
  offsets_.emplace(pointer, pos);
  const char c = text_[pos];
  if (c == '{') {
    pos = skip_ws(pos + 1);
    while (pos < text_.size() && text_[pos] != '}') {
      const std::size_t end = skip_string(pos);
      const auto key = Json::parse(text_.substr(pos, end - pos)).get<std::string>();
      pos = skip_ws(end) + 1;  // ':'
      pos = skip_ws(value(pos, child(pointer, key)));
      if (pos < text_.size() && text_[pos] == ',') pos = skip_ws(pos + 1);
    }
    return pos + 1;
  }
  if (c == '[') {
    pos = skip_ws(pos + 1);
    for (std::size_t i = 0; pos < text_.size() && text_[pos] != ']'; ++i) {
      pos = skip_ws(value(pos, child(pointer, i)));
      if (pos < text_.size() && text_[pos] == ',') pos = skip_ws(pos + 1);
    }
    return pos + 1;
  }
  if (c == '"') return skip_string(pos);
  while (pos < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos]) == std::string_view::npos)
    ++pos;
  return pos;
}

std::optional<SourceLocation> SourceMap::find(std::string pointer) const {
  for (;;) {
    if (const auto it = offsets_.find(pointer); it != offsets_.end()) {
      SourceLocation loc{1, 1};
      for (std::size_t i = 0; i < it->second; ++i) {
        if (text_[i] == '\n') {
          ++loc.line;
          loc.column = 1;
        } else {
          ++loc.column;
        }
      }
      return loc;
    }
    if (pointer.empty()) return std::nullopt;
    pointer.erase(pointer.rfind('/'));
  }
}

JobError::JobError(Errc code, std::optional<SourceLocation> where, const std::string& pointer,
                   const std::string& message)
    : Error(code, location_prefix(where, pointer) + message),
      where_(where),
      pointer_(pointer) {}

const NamedModule* Job::module(std::string_view name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

const NamedGraded* Job::graded_ring(std::string_view name) const {
  for (const auto& g : graded)
    if (g.name == name) return &g;
  return nullptr;
}

const NamedSemigroup* Job::semigroup(std::string_view name) const {
  for (const auto& s : semigroups)
    if (s.name == name) return &s;
  return nullptr;
}

using exactla::FieldSpec;
using locring::PolyMatrix;
using locring::Polynomial;
using locring::RingSpec;

std::string pointer_child(const std::string& pointer, const std::string& key) {
  return child(pointer, key);
}

std::string pointer_child(const std::string& pointer, std::size_t index) {
  return child(pointer, index);
}

void Reader::fail(const std::string& pointer, const std::string& message) const {
  std::optional<SourceLocation> where;
  if (source_) where = source_->find(pointer);
  throw JobError(Errc::invalid_input, where, pointer, message);
}

void Reader::expect_object(const Json& v, const std::string& p) const {
  if (!v.is_object()) fail(p, "expected an object");
}

void Reader::expect_keys(const Json& obj, const std::string& p,
                         const std::vector<std::string>& known) const {
  for (const auto& [key, v] : obj.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(child(p, key), "unknown key \"" + key + "\"");
}

const Json& Reader::member(const Json& obj, const std::string& key, const std::string& p) const {
  if (!obj.contains(key)) fail(p, "missing key \"" + key + "\"");
  return obj[key];
}

std::uint64_t Reader::unsigned_at(const Json& v, const std::string& p) const {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(p, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool Reader::bool_at(const Json& v, const std::string& p) const {
  if (!v.is_boolean()) fail(p, "expected true or false");
  return v.get<bool>();
}

std::string Reader::string_at(const Json& v, const std::string& p) const {
  if (!v.is_string()) fail(p, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> Reader::strings_at(const Json& v, const std::string& p) const {
  if (!v.is_array()) fail(p, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_at(v[i], child(p, i)));
  return out;
}

Polynomial Reader::polynomial_at(const RingSpec& r, const Json& v, const std::string& p) const {
  const auto text = string_at(v, p);
  try {
    return r.parse(text);
  } catch (const Error& e) {
    fail(p, "cannot parse \"" + text + "\": " + e.what());
  }
}

PolyMatrix Reader::matrix_at(const RingSpec& r, const Json& v, const std::string& p) const {
  if (!v.is_array() || v.empty()) fail(p, "expected a nonempty array of rows");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) fail(child(p, i), "expected a row (array of strings)");
    if (i == 0) cols = v[i].size();
    else if (v[i].size() != cols) fail(child(p, i), "row length differs from the first row");
  }
  PolyMatrix m(r.field, r.nvars(), v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = polynomial_at(r, v[i][j], child(child(p, i), j));
  return m;
}

std::vector<std::uint32_t> Reader::generators_at(const Json& v, const std::string& p) const {
  if (!v.is_array() || v.empty()) fail(p, "expected a nonempty array of positive integers");
  std::vector<std::uint32_t> gens;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto g = unsigned_at(v[i], child(p, i));
    if (g == 0 || g > 100000) fail(child(p, i), "generator out of range 1..100000");
    gens.push_back(static_cast<std::uint32_t>(g));
  }
  try {
    numsgp::semigroup_closure(gens);
  } catch (const Error& e) {
    fail(p, e.what());
  }
  return gens;
}

namespace {

class Loader : Reader {
 public:
  Loader(const Json& doc, const SourceMap* source, const Overrides& overrides)
      : Reader(source), doc_(doc), overrides_(overrides) {}

  Job run() {
    expect_object(doc_, "");
    expect_keys(doc_, "", {"schema", "field", "ring", "relations", "strict", "modules", "graded",
                           "semigroups", "commands", "window", "seed"});
    if (doc_.contains("schema")) {
      const auto& s = doc_["schema"];
      if (!s.is_number_integer() || s.get<long long>() != 1)
        fail("/schema", "unsupported schema, expected 1");
    }
    Job job;
    job.field = field();
    job.window = overrides_.window.value_or(
        doc_.contains("window") ? unsigned_at(doc_["window"], "/window") : 6);
    job.seed = overrides_.seed.value_or(
        doc_.contains("seed") ? unsigned_at(doc_["seed"], "/seed") : 20240607);
    ring(job);
    modules(job);
    graded(job);
    semigroups(job);
    commands(job);
    return job;
  }

 private:
  FieldSpec field() const {
    if (overrides_.field) return *overrides_.field;
    if (!doc_.contains("field")) return FieldSpec::rationals();
    const auto text = string_at(doc_["field"], "/field");
    try {
      return FieldSpec::parse(text);
    } catch (const Error& e) {
      fail("/field", e.what());
    }
  }

  void ring(Job& job) {
    if (!doc_.contains("ring")) {
      if (doc_.contains("relations")) fail("/relations", "relations need a \"ring\"");
      if (doc_.contains("strict")) fail("/strict", "\"strict\" needs a \"ring\"");
      return;
    }
    const auto& r = doc_["ring"];
    expect_object(r, "/ring");
    expect_keys(r, "/ring", {"variables", "truncation"});
    RingSpec spec;
    spec.variables = strings_at(member(r, "variables", "/ring"), "/ring/variables");
    spec.truncation = r.contains("truncation")
                          ? static_cast<std::uint32_t>(unsigned_at(r["truncation"], "/ring/truncation"))
                          : 12;
    if (overrides_.truncation) spec.truncation = *overrides_.truncation;
    spec.field = job.field;
    try {
      spec.validate();
    } catch (const Error& e) {
      fail("/ring", e.what());
    }
    ring_ = spec;
    std::vector<Polynomial> rels;
    if (doc_.contains("relations")) {
      const auto& v = doc_["relations"];
      if (!v.is_array()) fail("/relations", "expected an array of strings");
      for (std::size_t i = 0; i < v.size(); ++i)
        rels.push_back(polynomial_at(spec, v[i], child("/relations", i)));
    }
    const bool strict = doc_.contains("strict") && bool_at(doc_["strict"], "/strict");
    try {
      job.base = std::make_shared<const locring::QuotientPresentation>(spec, rels, strict);
    } catch (const Error& e) {
      fail("/relations", e.what());
    }
  }

  void modules(Job& job) {
    if (!doc_.contains("modules")) return;
    const auto& mods = doc_["modules"];
    expect_object(mods, "/modules");
    for (const auto& [name, spec] : mods.items()) {
      const auto p = child("/modules", name);
      expect_object(spec, p);
      if (!job.base) fail(p, "modules need a \"ring\"");
      if (spec.size() != 1)
        fail(p, "give exactly one of \"matrix\", \"factorization\", \"residue_field\", \"free\"");
      const auto first = spec.begin();
      const std::string kind = first.key();
      const Json& v = first.value();
      const auto vp = child(p, kind);
      if (kind == "matrix") {
        job.modules.push_back({name, locring::ModulePresentation(job.base, matrix_at(*ring_, v, vp)), {}});
      } else if (kind == "residue_field") {
        if (!bool_at(v, vp)) fail(vp, "expected true");
        job.modules.push_back({name, locring::ModulePresentation::residue_field(job.base), {}});
      } else if (kind == "free") {
        const auto rank = unsigned_at(v, vp);
        if (rank == 0 || rank > 64) fail(vp, "rank out of range 1..64");
        job.modules.push_back({name, locring::ModulePresentation::free(job.base, rank), {}});
      } else if (kind == "factorization") {
        expect_object(v, vp);
        expect_keys(v, vp, {"f", "phi", "psi"});
        homalg::MatrixFactorization mf{*ring_, polynomial_at(*ring_, member(v, "f", vp), child(vp, "f")),
                                       matrix_at(*ring_, member(v, "phi", vp), child(vp, "phi")),
                                       matrix_at(*ring_, member(v, "psi", vp), child(vp, "psi"))};
        if (mf.f.is_zero()) fail(child(vp, "f"), "f must be nonzero");
        auto over = std::make_shared<const locring::QuotientPresentation>(
            *ring_, std::vector<Polynomial>{mf.f});
        job.modules.push_back({name, locring::ModulePresentation(over, mf.phi), mf});
      } else {
        fail(vp, "unknown module kind \"" + kind + "\"");
      }
    }
  }

  void graded(Job& job) {
    if (!doc_.contains("graded")) return;
    const auto& all = doc_["graded"];
    expect_object(all, "/graded");
    for (const auto& [name, spec] : all.items()) {
      const auto p = child("/graded", name);
      expect_object(spec, p);
      expect_keys(spec, p, {"variables", "generators", "degree_bound"});
      RingSpec r{strings_at(member(spec, "variables", p), child(p, "variables")), 2, job.field};
      try {
        r.validate();
      } catch (const Error& e) {
        fail(child(p, "variables"), e.what());
      }
      const auto& gens = member(spec, "generators", p);
      if (!gens.is_array()) fail(child(p, "generators"), "expected an array of strings");
      std::vector<Polynomial> polys;
      for (std::size_t i = 0; i < gens.size(); ++i)
        polys.push_back(polynomial_at(r, gens[i], child(child(p, "generators"), i)));
      const auto bound = spec.contains("degree_bound")
                             ? static_cast<std::uint32_t>(
                                   unsigned_at(spec["degree_bound"], child(p, "degree_bound")))
                             : 16u;
      try {
        job.graded.push_back({name, grmod::GradedQuotient(r.variables, job.field, polys, bound)});
      } catch (const Error& e) {
        fail(child(p, "generators"), e.what());
      }
    }
  }

  void semigroups(Job& job) {
    if (!doc_.contains("semigroups")) return;
    const auto& all = doc_["semigroups"];
    expect_object(all, "/semigroups");
    for (const auto& [name, v] : all.items())
      job.semigroups.push_back({name, generators_at(v, child("/semigroups", name))});
  }

  void commands(Job& job) {
    if (!doc_.contains("commands")) return;
    const auto& cmds = doc_["commands"];
    if (!cmds.is_array()) fail("/commands", "expected an array of command objects");
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      const auto p = child("/commands", i);
      expect_object(cmds[i], p);
      Command c;
      c.index = i;
      c.name = string_at(member(cmds[i], "command", p), child(p, "command"));
      c.params = cmds[i];
      c.params.erase("command");
      job.commands.push_back(std::move(c));
    }
  }

  const Json& doc_;
  Overrides overrides_;
  std::optional<RingSpec> ring_;
};

}  // namespace

LoadedJob load_job(std::string_view text, const Overrides& overrides) {
  LoadedJob out;
  try {
    out.document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    SourceLocation where{1, 1};
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++where.line;
        where.column = 1;
      } else {
        ++where.column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find(": syntax error"); pos != std::string::npos) what = what.substr(pos + 2);
    throw JobError(Errc::parse_error, where, "", what);
  }
  out.source = SourceMap(text);
  out.has_source = true;
  out.job = Loader(out.document, &out.source, overrides).run();
  return out;
}

LoadedJob load_document(Json document, const Overrides& overrides) {
  LoadedJob out;
  out.document = std::move(document);
  out.job = Loader(out.document, nullptr, overrides).run();
  return out;
}

}  // namespace lochf::cli
