#include <cstdio>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "affine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_text;
  bool have_stdin = false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--algebra" && args[i + 1] == "-") {
      stdin_text.assign(std::istreambuf_iterator<char>(std::cin),
                        std::istreambuf_iterator<char>());
      have_stdin = true;
      break;
    }
  }
  affine::cli::RunResult r = affine::cli::run(args, have_stdin ? &stdin_text : nullptr);
  std::fputs(r.out.c_str(), stdout);
  std::fputs(r.err.c_str(), stderr);
  return r.exit_code;
}
