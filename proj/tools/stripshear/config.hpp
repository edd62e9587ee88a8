#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stripshear::cli {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads a flat key=value file into "--key value" argument pairs. Blank lines
/// and lines starting with '#' are skipped.
std::vector<std::string> read_config_file(const std::string& path);

/// argv with any "--config path" removed and the file's pairs inserted right
/// after the command name, so explicit flags later on the line win.
std::vector<std::string> expand_arguments(int argc, const char* const* argv);

/// Worker count for parallel sweeps: STRIPSHEAR_THREADS if set, otherwise the
/// hardware concurrency.
unsigned sweep_threads();

}  // namespace stripshear::cli
