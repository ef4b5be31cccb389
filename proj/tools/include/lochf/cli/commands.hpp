#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lochf/cli/job.hpp"
#include "lochf/cli/report.hpp"

namespace lochf::cli {

/// Every command name, in the order of the documentation.
const std::vector<std::string>& command_names();

/// Parameters a command accepts besides "command".
const std::vector<std::string>& command_parameters(const std::string& name);

struct Outcome {
  Status status = Status::ok;
  std::string message;
  Json data = Json::object();
};

struct PreparedCommand {
  Command command;
  std::function<Outcome()> task;
};

/// Checks every command against the job and binds its inputs. Throws
/// JobError before anything runs.
std::vector<PreparedCommand> prepare(const LoadedJob& loaded);

/// Runs the commands with up to `jobs` threads; results are assembled in
/// declaration order, so the report does not depend on scheduling.
Report execute(const std::vector<PreparedCommand>& commands, unsigned jobs = 1);

Report run(const LoadedJob& loaded, unsigned jobs = 1);

}  // namespace lochf::cli
