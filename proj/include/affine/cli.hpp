#pragma once

#include <string>
#include <vector>

namespace affine::cli {

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 negative verdict, 2 usage or input error
  std::string out;
  std::string err;
};

// Full command-line front end, side-effect free: parses args (no program
// name), runs one verb, and returns the streams instead of printing.
// stdin_text backs `--algebra -`. With --json, out is exactly one JSON
// report {"status": ok|fail|error, "verb": ..., "payload": ...}.
RunResult run(const std::vector<std::string>& args, const std::string* stdin_text = nullptr);

}  // namespace affine::cli
