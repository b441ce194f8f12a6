#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace testing {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Runs the contour binary through the shell; `env` is prefixed verbatim
/// (e.g. "CONTOUR_BUDGET=100").
inline CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto err_path = std::filesystem::temp_directory_path() /
                        ("contour_cli_err_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd = (env.empty() ? "" : env + " ") + CONTOUR_CLI_PATH + std::string(" ") + args +
                          " 2>" + err_path.string();
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_path);
  std::filesystem::remove(err_path);
  return r;
}

inline std::string data(const std::string& name) { return std::string(CONTOUR_TEST_DATA) + "/" + name; }

}  // namespace testing
