// Rewrites fixtures/golden from the current CLI. Run from any directory.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "golden.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: regen_golden <fixtures-dir>\n";
    return 2;
  }
  namespace fs = std::filesystem;
  fs::current_path(argv[1]);
  fs::create_directories("golden");
  for (const auto& gc : golden_cases()) {
    std::vector<std::string> args = gc.args;
    std::ostringstream out, err;
    if (!gc.record) {
      args.insert(args.begin(), {"--out", "golden/" + gc.file});
    }
    int code = cavoid::cli::run_cli(args, out, err);
    if (code >= 2) {
      std::cerr << gc.file << ": exit " << code << " " << err.str();
      return 1;
    }
    if (gc.record) std::ofstream("golden/" + gc.file, std::ios::binary) << out.str();
    std::cout << "wrote golden/" << gc.file << "\n";
  }
  return 0;
}
