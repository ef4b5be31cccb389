#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lochf/error.hpp"

namespace lochf::cli {

using Json = nlohmann::ordered_json;

enum class Status { ok, verified, refuted, inconclusive, input_error };

std::string_view to_string(Status s) noexcept;
std::optional<Status> parse_status(std::string_view text) noexcept;

/// refuted for failed verifications, inconclusive for precision and window
/// limits, input_error otherwise.
Status status_for(Errc code) noexcept;

struct Result {
  std::size_t index = 0;
  std::string command;
  Status status = Status::ok;
  std::string message;
  /// Vectors carry "valid_to" or "certified_to"; values without a
  /// certificate come with an "evidence" note.
  Json data = Json::object();

  friend bool operator==(const Result&, const Result&) = default;
};

struct Report {
  static constexpr int schema = 1;
  std::vector<Result> results;

  /// 3 on any input error, else 1 on any refutation, else 2 on any
  /// inconclusive result, else 0.
  int exit_code() const noexcept;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class Format { table, csv, json_lines };

std::optional<Format> parse_format(std::string_view text) noexcept;

std::string render(const Report& report, Format format);

/// Inverse of render(report, Format::json_lines). Throws parse_error.
Report parse_json_lines(std::string_view text);

}  // namespace lochf::cli
