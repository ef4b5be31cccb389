#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lochf/cli/commands.hpp"
#include "lochf/cli/job.hpp"
#include "lochf/cli/report.hpp"

namespace {

using lochf::cli::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lochf::Error(lochf::Errc::invalid_input, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "x, y; y^2, x" -> [["x", "y"], ["y^2", "x"]]
Json matrix_text(const std::string& text) {
  Json rows = Json::array();
  for (const auto& row : split(text, ';')) {
    Json r = Json::array();
    for (auto entry : split(row, ',')) {
      entry.erase(0, entry.find_first_not_of(' '));
      entry.erase(entry.find_last_not_of(' ') + 1);
      r.push_back(entry);
    }
    rows.push_back(r);
  }
  return rows;
}

// Values that parse as JSON are taken as JSON, anything else as a string.
Json param_value(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    return text;
  }
}

struct Settings {
  std::string format = "table";
  unsigned jobs = 1;
  std::string field;
  std::uint32_t trunc = 0;
  std::size_t window = 0;
  std::uint64_t seed = 0;
  CLI::Option* field_opt = nullptr;
  CLI::Option* trunc_opt = nullptr;
  CLI::Option* window_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  lochf::cli::Overrides overrides() const {
    lochf::cli::Overrides o;
    if (*field_opt) o.field = lochf::exactla::FieldSpec::parse(field);
    if (*trunc_opt) o.truncation = trunc;
    if (*window_opt) o.window = window;
    if (*seed_opt) o.seed = seed;
    return o;
  }
};

struct OneShot {
  std::string job_file;
  std::vector<std::string> ring;
  std::vector<std::string> relations;
  std::string matrix;
  bool residue_field = false;
  std::vector<std::string> graded;
  std::vector<std::uint32_t> generators;
  std::vector<std::string> params;
  std::uint32_t max_embdim = 0;
  std::uint32_t max_multiplicity = 0;
  std::uint32_t max_frobenius = 0;
};

Json one_shot_document(const std::string& command, const OneShot& o, CLI::App& sub) {
  Json doc = o.job_file.empty() ? Json::object() : Json::parse(read_file(o.job_file));
  if (!doc.is_object()) throw lochf::Error(lochf::Errc::invalid_input, o.job_file + ": expected a JSON object");
  doc.erase("commands");
  if (!o.ring.empty()) doc["ring"]["variables"] = o.ring;
  if (!o.relations.empty()) doc["relations"] = o.relations;
  if (!o.matrix.empty()) doc["modules"] = Json{{"M", Json{{"matrix", matrix_text(o.matrix)}}}};
  if (o.residue_field) doc["modules"] = Json{{"k", Json{{"residue_field", true}}}};
  if (!o.graded.empty()) {
    if (!doc.contains("ring") || !doc["ring"].contains("variables"))
      throw lochf::Error(lochf::Errc::invalid_input, "--graded needs ring variables");
    doc["graded"] = Json{{"G", Json{{"variables", doc["ring"]["variables"]}, {"generators", o.graded}}}};
  }
  Json cmd{{"command", command}};
  if (!o.generators.empty()) cmd["generators"] = o.generators;
  if (const auto* opt = sub.get_option_no_throw("--max-embdim"); opt && *opt) cmd["max_embdim"] = o.max_embdim;
  if (const auto* opt = sub.get_option_no_throw("--max-multiplicity"); opt && *opt) cmd["max_multiplicity"] = o.max_multiplicity;
  if (const auto* opt = sub.get_option_no_throw("--max-frobenius"); opt && *opt) cmd["max_frobenius"] = o.max_frobenius;
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw lochf::Error(lochf::Errc::invalid_input, "-p expects key=value, got \"" + p + "\"");
    cmd[p.substr(0, eq)] = param_value(p.substr(eq + 1));
  }
  doc["commands"] = Json::array({cmd});
  return doc;
}

int emit(const lochf::cli::LoadedJob& loaded, const Settings& s) {
  const auto report = lochf::cli::run(loaded, s.jobs);
  std::cout << lochf::cli::render(report, *lochf::cli::parse_format(s.format));
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert functions, resolutions and Eisenbud operators over local rings"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--format", s.format, "table, csv or json-lines")
      ->check(CLI::IsMember({"table", "csv", "json-lines", "jsonl"}));
  app.add_option("--jobs", s.jobs, "commands run in parallel")->check(CLI::Range(1u, 256u));
  s.field_opt = app.add_option("--field", s.field, "q or fp:<p>");
  s.trunc_opt = app.add_option("--trunc", s.trunc, "truncation order D")->check(CLI::Range(2u, 64u));
  s.window_opt = app.add_option("--window", s.window, "default resolution length and window");
  s.seed_opt = app.add_option("--seed", s.seed, "seed for random coefficient matrices");

  std::string job_file;
  auto* run = app.add_subcommand("run", "run every command of a job file");
  run->add_option("job", job_file, "job file (JSON)")->required();

  auto* list = app.add_subcommand("commands", "list the commands and their parameters");

  OneShot one;
  std::vector<std::pair<std::string, CLI::App*>> singles;
  for (const auto& name : lochf::cli::command_names()) {
    std::string help = "single command; parameters:";
    for (const auto& p : lochf::cli::command_parameters(name)) help += " " + p;
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("job", one.job_file, "job file supplying rings, modules and semigroups");
    sub->add_option("--ring", one.ring, "ring variables")->delimiter(',');
    sub->add_option("--rel", one.relations, "relation (repeatable)");
    sub->add_option("--matrix", one.matrix, "module presentation, rows split by ';'");
    sub->add_flag("--residue-field", one.residue_field, "the residue field as module");
    sub->add_option("--graded", one.graded, "generator of a graded candidate (repeatable)");
    sub->add_option("--generators", one.generators, "semigroup generators")->delimiter(',');
    sub->add_option("-p,--param", one.params, "command parameter key=value (repeatable)");
    if (name == "scan-semigroups") {
      sub->add_option("--max-embdim", one.max_embdim);
      sub->add_option("--max-multiplicity", one.max_multiplicity);
      sub->add_option("--max-frobenius", one.max_frobenius);
    }
    singles.emplace_back(name, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*list) {
      for (const auto& name : lochf::cli::command_names()) {
        std::cout << name;
        for (const auto& p : lochf::cli::command_parameters(name)) std::cout << ' ' << p;
        std::cout << '\n';
      }
      return 0;
    }
    const auto overrides = s.overrides();
    if (*run) return emit(lochf::cli::load_job(read_file(job_file), overrides), s);
    for (const auto& [name, sub] : singles) {
      if (*sub) return emit(lochf::cli::load_document(one_shot_document(name, one, *sub), overrides), s);
    }
  } catch (const lochf::Error& e) {
    std::cerr << "lochf: " << e.what() << '\n';
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "lochf: " << e.what() << '\n';
    return 3;
  }
  return 3;
}
