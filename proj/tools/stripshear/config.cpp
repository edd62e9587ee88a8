#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace stripshear::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

}  // namespace

std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string where = path + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (key == "config") throw ConfigError(where + ": nested config files are not supported");
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' has no value");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

std::vector<std::string> expand_arguments(int argc, const char* const* argv) {
  std::vector<std::string> rest;
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) throw ConfigError("--config needs a path");
      config_path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    } else {
      rest.push_back(a);
    }
  }
  std::vector<std::string> out{argc > 0 ? argv[0] : "stripshear"};
  if (config_path.empty()) {
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  const std::vector<std::string> injected = read_config_file(config_path);
  const auto command = std::find_if(rest.begin(), rest.end(),
                                    [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (command == rest.end()) {
    out.insert(out.end(), rest.begin(), rest.end());
    out.insert(out.end(), injected.begin(), injected.end());
    return out;
  }
  out.insert(out.end(), rest.begin(), command + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), command + 1, rest.end());
  return out;
}

unsigned sweep_threads() {
  const char* env = std::getenv("STRIPSHEAR_THREADS");
  if (env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024)
      throw ConfigError("STRIPSHEAR_THREADS must be an integer in [1, 1024], got '" +
                        std::string(env) + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace stripshear::cli
