#include "lochf/cli/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace lochf::cli {

namespace {

constexpr std::array<std::string_view, 5> kStatusNames = {"ok", "verified", "refuted",
                                                          "inconclusive", "input_error"};

// Vectors printed as one row per index in the table format.
const std::vector<std::pair<std::string, std::string>> kRowVectors = {
    {"H", "n  H(n)"},
    {"beta", "i  beta_i"},
    {"dims", "i  dim Ext^i"},
    {"new_generators", "i  new"},
};

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

bool all_scalars(const Json& v) {
  return std::all_of(v.begin(), v.end(), [](const Json& x) { return is_scalar(x); });
}

bool is_grid(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& r) { return r.is_array() && all_scalars(r); });
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::string last_key(const std::string& path) {
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void table_value(std::ostringstream& out, const std::string& path, const Json& v) {
  const std::string indent = "    ";
  if (is_scalar(v)) {
    out << indent << path << ": " << scalar_text(v) << '\n';
    return;
  }
  if (v.is_object()) {
    for (const auto& [key, x] : v.items()) table_value(out, path.empty() ? key : path + "." + key, x);
    return;
  }
  if (v.empty()) {
    out << indent << path << ": []\n";
    return;
  }
  if (all_scalars(v)) {
    const auto key = last_key(path);
    const auto it = std::find_if(kRowVectors.begin(), kRowVectors.end(),
                                 [&](const auto& p) { return p.first == key; });
    if (it == kRowVectors.end()) {
      out << indent << path << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << "]\n";
      return;
    }
    out << indent << path << '\n' << indent << "  " << it->second << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
      out << indent << "  " << i << "  " << scalar_text(v[i]) << '\n';
    return;
  }
  if (is_grid(v)) {
    std::size_t width = 1;
    for (const auto& row : v)
      for (const auto& x : row) width = std::max(width, scalar_text(x).size());
    out << indent << path << " (" << v.size() << " x " << v[0].size() << ")\n";
    for (const auto& row : v) {
      out << indent << "  [";
      for (std::size_t j = 0; j < row.size(); ++j)
        out << (j ? "  " : "") << pad(scalar_text(row[j]), width);
      out << "]\n";
    }
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    table_value(out, path + "[" + std::to_string(i) + "]", v[i]);
}

std::string render_table(const Report& report) {
  std::ostringstream out;
  out << "index  " << pad("command", 21) << pad("status", 14) << "message\n";
  for (const auto& r : report.results) {
    out << pad(std::to_string(r.index), 7) << pad(r.command, 21)
        << pad(std::string(to_string(r.status)), 14) << r.message << '\n';
    table_value(out, "", r.data);
  }
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_value(std::ostringstream& out, const std::string& lead, const std::string& path,
               const Json& v) {
  const auto row = [&](const std::string& position, const std::string& value) {
    out << lead << csv_field(path) << ',' << position << ',' << csv_field(value) << '\n';
  };
  if (is_scalar(v)) {
    row("", scalar_text(v));
  } else if (v.is_object()) {
    for (const auto& [key, x] : v.items()) csv_value(out, lead, path.empty() ? key : path + "." + key, x);
  } else if (v.empty()) {
    row("", "[]");
  } else if (all_scalars(v)) {
    for (std::size_t i = 0; i < v.size(); ++i) row(std::to_string(i), scalar_text(v[i]));
  } else if (is_grid(v)) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v[i].size(); ++j)
        row(std::to_string(i) + ":" + std::to_string(j), scalar_text(v[i][j]));
  } else {
    for (std::size_t i = 0; i < v.size(); ++i)
      csv_value(out, lead, path + "[" + std::to_string(i) + "]", v[i]);
  }
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "index,command,status,path,position,value\n";
  for (const auto& r : report.results) {
    const auto lead = std::to_string(r.index) + ',' + csv_field(r.command) + ',' +
                      std::string(to_string(r.status)) + ',';
    out << lead << "message,," << csv_field(r.message) << '\n';
    csv_value(out, lead, "", r.data);
  }
  return out.str();
}

Json header_line(std::size_t count) {
  return Json{{"schema", Report::schema}, {"report", "lochf"}, {"results", count}};
}

std::string render_json_lines(const Report& report) {
  std::string out = header_line(report.results.size()).dump() + '\n';
  for (const auto& r : report.results) {
    const Json line{{"index", r.index},
                    {"command", r.command},
                    {"status", to_string(r.status)},
                    {"message", r.message},
                    {"data", r.data}};
    out += line.dump() + '\n';
  }
  return out;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw Error(Errc::parse_error, "report line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view to_string(Status s) noexcept { return kStatusNames[static_cast<std::size_t>(s)]; }

std::optional<Status> parse_status(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i)
    if (kStatusNames[i] == text) return static_cast<Status>(i);
  return std::nullopt;
}

Status status_for(Errc code) noexcept {
  switch (code) {
    case Errc::precision_exceeded:
    case Errc::precision_unstable:
    case Errc::window_too_short:
    case Errc::search_exhausted:
      return Status::inconclusive;
    case Errc::not_a_factorization:
    case Errc::not_in_ideal:
    case Errc::not_invertible:
    case Errc::not_minimal:
    case Errc::not_strict:
    case Errc::not_dimension_one:
      return Status::refuted;
    case Errc::invalid_input:
    case Errc::parse_error:
    case Errc::field_mismatch:
    case Errc::zero_element:
    case Errc::gcd_not_one:
      return Status::input_error;
  }
  return Status::input_error;
}

int Report::exit_code() const noexcept {
  const auto any = [&](Status s) {
    return std::any_of(results.begin(), results.end(), [&](const Result& r) { return r.status == s; });
  };
  if (any(Status::input_error)) return 3;
  if (any(Status::refuted)) return 1;
  if (any(Status::inconclusive)) return 2;
  return 0;
}

std::optional<Format> parse_format(std::string_view text) noexcept {
  if (text == "table") return Format::table;
  if (text == "csv") return Format::csv;
  if (text == "json-lines" || text == "jsonl") return Format::json_lines;
  return std::nullopt;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::table:
      return render_table(report);
    case Format::csv:
      return render_csv(report);
    case Format::json_lines:
      return render_json_lines(report);
  }
  return {};
}

Report parse_json_lines(std::string_view text) {
  Report report;
  std::size_t line_no = 0;
  std::optional<std::size_t> expected;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      bad_line(line_no, e.what());
    }
    if (!j.is_object()) bad_line(line_no, "expected an object");
    if (!expected) {
      if (!j.contains("schema") || j["schema"] != Report::schema || !j.contains("results") ||
          !j["results"].is_number_unsigned())
        bad_line(line_no, "missing schema 1 header");
      expected = j["results"].get<std::size_t>();
      continue;
    }
    Result r;
    try {
      r.index = j.at("index").get<std::size_t>();
      r.command = j.at("command").get<std::string>();
      const auto status = parse_status(j.at("status").get<std::string>());
      if (!status) bad_line(line_no, "unknown status");
      r.status = *status;
      r.message = j.at("message").get<std::string>();
      r.data = j.at("data");
    } catch (const Json::exception& e) {
      bad_line(line_no, e.what());
    }
    report.results.push_back(std::move(r));
  }
  if (!expected) bad_line(line_no, "empty report");
  if (report.results.size() != *expected) bad_line(line_no, "result count differs from the header");
  return report;
}

}  // namespace lochf::cli
