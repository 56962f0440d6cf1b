#pragma once

#include <string>
#include <vector>

// Golden artifacts under fixtures/golden, each produced by one CLI call run
// from the fixtures directory. Records (stdout) are golden when `record` is
// set; otherwise the artifact written with --out is.
struct GoldenCase {
  std::string file;
  std::vector<std::string> args;
  bool record = false;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"fig1_coloring.txt", {"color", "--poly", "fig1.cg"}},
      {"fig6_gadget.cg", {"reduce", "hyp", "fig6.hyp"}},
      {"fig6_rooted_gadget.cg", {"reduce", "hyp-rooted", "fig6.hyp"}},
      {"fig8_gadget.cg", {"reduce", "nae-strong", "fig8.nae"}},
      {"fig9_orientation.txt", {"reduce", "nae-strong", "fig8.nae", "--assignment", "TFTTF"}},
      {"fig10_gadget.cg", {"reduce", "nae-rooted", "fig10.nae"}},
      {"fig10_orientation.txt", {"reduce", "nae-rooted", "fig10.nae", "--assignment", "TFT"}},
      {"fig11_gadget.cg", {"reduce", "e2v", "fig11.cg"}},
      {"gen_random_n6_m10_s7.cg", {"gen", "--random", "-n", "6", "-m", "10", "--seed", "7"}},
      {"fig2_g2_verify.json", {"verify", "--part", "edge", "--mode", "edge", "-k", "1", "-l", "1", "fig2_g2.cg"}, true},
      {"fig4_mid_verify.json", {"verify", "--part", "internal-vertex", "-k", "1", "-l", "1", "fig4_mid.cg"}, true},
      {"fig7_parallel_orient.json", {"orient", "--ca-strong", "-k", "1", "-l", "1", "fig7_parallel.cg"}, true},
  };
  return cases;
}
