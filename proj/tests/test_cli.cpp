#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::vector<std::string> lines() const {
    std::vector<std::string> ls;
    std::string cur;
    for (char c : out) {
      if (c == '\n') {
        ls.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) ls.push_back(cur);
    return ls;
  }
};

// Runs a shell command built around the binary under test, capturing stdout.
CliRun shell(const std::string& command) {
  CliRun r;
  FILE* p = popen((command + " 2>/dev/null").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kCli = RESPACE_CLI_PATH;

}  // namespace

TEST_CASE("cli emits the frozen cauchy prefix for 1/3") {
  CliRun r = shell(kCli + " gen-name --point 1/3 --kind cauchy --prefix 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\n18\n645\n49833\n");
}

TEST_CASE("cli translates cauchy names to shrinking ball codes") {
  CliRun r = shell(kCli + " gen-name --point 1/3 --kind cauchy --prefix 4 | " + kCli +
                   " translate --src cauchy --dst min --prefix 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "9\n332\n220134\n1244281607\n");
}

TEST_CASE("cli round-trips strong-basis names through cauchy names") {
  CliRun r = shell(kCli + " gen-name --point 1/3 --kind si --prefix 8 | " + kCli +
                   " translate --src si --dst cauchy --prefix 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "645\n49833\n7982265\n");
}

TEST_CASE("cli monitors membership with sound accept and honest refusal") {
  CliRun hit = shell(kCli + " gen-name --point 1/3 --kind si --prefix 8 | " + kCli +
                     " member --target 'B(0,1)' --fuel 5000");
  CHECK(hit.exit_code == 0);
  CHECK(hit.out.rfind("ACCEPT", 0) == 0);

  CliRun miss = shell(kCli + " gen-name --point 1/3 --kind si --prefix 8 | " + kCli +
                      " member --target 'B(2,1/4)' --fuel 5000");
  CHECK(miss.exit_code == 3);
  CHECK(miss.out.rfind("NOT-YET", 0) == 0);
}

TEST_CASE("cli probe distinguishes consistent and violating prefixes") {
  CliRun bad = shell("printf '0\\n3\\n' | " + kCli + " probe --family cauchy --prefix 2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out == "VIOLATION\n");

  CliRun good = shell(kCli + " gen-name --point 1/3 --kind cauchy --prefix 6 | " + kCli +
                      " probe --family cauchy --prefix 6");
  CHECK(good.exit_code == 0);
  CHECK(good.out == "CONSISTENT-SO-FAR\n");
}

TEST_CASE("cli maps usage problems and refused capabilities to exit 2") {
  CHECK(shell(kCli).exit_code == 2);
  CHECK(shell(kCli + " translate --src cauchy").exit_code == 2);
  CHECK(shell(kCli + " gen-name --point 1/3 --kind cauchy --world Q-nowhere").exit_code == 2);
  CHECK(shell("printf '9\\n' | " + kCli + " translate --src min --dst max --prefix 1").exit_code == 2);
  CHECK(shell(kCli + " gen-name --world singleton --point 1 --kind cauchy").exit_code == 2);
  CHECK(shell(kCli + " gen-name --world R-registry --point pi --kind max").exit_code == 2);
  CHECK(shell("printf '4\\n' | " + kCli + " member --world singleton --target 4").exit_code == 2);
  CHECK(shell(kCli + " check-axioms --world N-discrete --relation strict").exit_code == 2);
  CHECK(shell(kCli + " --help").exit_code == 0);
}

TEST_CASE("cli flushes partial output before reporting exhaustion") {
  // The constant quarter-radius name never reaches the radius the third
  // output cell needs, so the translation stalls after two lines.
  CliRun r = shell(kCli + " gen-name --world K-space --point 7 --kind min --prefix 64 | " +
                   kCli + " translate --src max --dst cauchy --world K-space --fuel 2000 --prefix 8");
  CHECK(r.exit_code == 3);
  std::vector<std::string> lines = r.lines();
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "630");
  CHECK(lines[1] == "630");
}

TEST_CASE("cli runs the sampled relation checks") {
  CliRun strict = shell(kCli +
                        " check-axioms --relation strict --codes 15 --points 10 --pairs 60"
                        " --triples 60 --extended 20");
  CHECK(strict.exit_code == 0);
  CHECK(strict.out.find("PASS") != std::string::npos);

  CliRun eq = shell(kCli + " check-axioms --world N-discrete --relation equality --codes 20");
  CHECK(eq.exit_code == 0);

  CliRun nonstrict = shell(kCli +
                           " check-axioms --relation nonstrict --codes 12 --pairs 40"
                           " --triples 40");
  CHECK(nonstrict.exit_code == 0);
}

TEST_CASE("cli runs the adapter checks against the registry world") {
  CliRun r = shell(kCli + " check-adapter --world R-registry --sample 6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  CHECK(shell(kCli + " check-adapter --world R-rational --sample 4").exit_code == 2);
}
