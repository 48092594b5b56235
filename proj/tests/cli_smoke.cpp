// Drives the installed CLI end to end: every subcommand, both output modes,
// and the documented exit codes. The CLI path comes from argv[1].

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

std::string g_cli;
int g_failures = 0;

std::string run(const std::string& args, int* exit_code) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void expect(bool condition, const std::string& what) {
  if (!condition) {
    ++g_failures;
    std::cerr << "[cli-smoke FAIL] " << what << "\n";
  }
}

void write_file(const std::filesystem::path& path, const char* body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_smoke <gjet-binary>\n";
    return 1;
  }
  g_cli = argv[1];
  namespace fs = std::filesystem;
  const fs::path dir = "cli_smoke_tmp";
  fs::create_directories(dir);
  write_file(dir / "ctx.json",
             R"({"coords":[{"name":"x","degree":0},{"name":"th","degree":1},{"name":"p","degree":2}]})");
  write_file(dir / "line.json", R"({"fiber":[{"name":"e","degree":0}]})");
  write_file(dir / "dx.json",
             R"({"order":1,"degree":0,"coeffs":[{"index":[1,0,0],"mu":"e","lambda":"e","poly":{"terms":[{"exp":[0,0,0],"coeff":"1"}]}}]})");
  write_file(dir / "dxdx.json",
             R"({"order":2,"degree":0,"coeffs":[{"index":[2,0,0],"mu":"e","lambda":"e","poly":{"terms":[{"exp":[0,0,0],"coeff":"2"}]}}]})");
  write_file(dir / "lamx.json",
             R"({"order":0,"degree":0,"coeffs":[{"index":[0,0,0],"mu":"e","lambda":"e","poly":{"terms":[{"exp":[1,0,0],"coeff":"1"}]}}]})");
  write_file(dir / "xx.json",
             R"({"components":[{"terms":[{"exp":[2,0,0],"coeff":"1"}]}]})");
  write_file(dir / "bad.json", R"({"oops":true})");

  const std::string base = " --context " + (dir / "ctx.json").string() +
                           " --bundle " + (dir / "line.json").string();
  int code = 0;

  std::string out = run("apply" + base + " --op " + (dir / "dx.json").string() +
                            " --section " + (dir / "xx.json").string(),
                        &code);
  expect(code == 0 && out == "(2*x)*e\n", "apply d_x x^2 -> 2x e, got: " + out);

  out = run("bracket" + base + " --op " + (dir / "dx.json").string() +
                " --op2 " + (dir / "lamx.json").string(),
            &code);
  expect(code == 0 && out == "(1)/1 P(0,0,0)^e_e\n",
         "[d_x, lambda_x] = identity, got: " + out);

  out = run("symbol" + base + " --op " + (dir / "dx.json").string(), &code);
  expect(code == 0 && out == "(1) E[1,0,0]^e_e\n",
         "symbol of d_x has the identity at dx, got: " + out);

  out = run("prolong" + base + " --section " + (dir / "xx.json").string() +
                " --order 1",
            &code);
  expect(code == 0 &&
             out == "(x^2) delta[0,0,0]_e + (-2*x) delta[1,0,0]_e\n",
         "prolong x^2 coefficients (x^2, -2x), got: " + out);

  out = run("decompose" + base + " --op " + (dir / "dxdx.json").string() +
                " --order 2",
            &code);
  expect(code == 0 && out == "(2)/2 P(2,0,0)^e_e\n",
         "decompose at the true order, got: " + out);

  run("decompose" + base + " --op " + (dir / "dxdx.json").string() +
          " --order 1",
      &code);
  expect(code == 3, "under-declared order exits 3");

  run("rank --context " + (dir / "bad.json").string() + " --bundle " +
          (dir / "line.json").string() + " --kind jet --order 1",
      &code);
  expect(code == 2, "malformed context exits 2");

  // JSON mode round trip: the emitted jet re-parses to the same value.
  const std::string j1 = run("--json prolong" + base + " --section " +
                                 (dir / "xx.json").string() + " --order 2",
                             &code);
  expect(code == 0 && !j1.empty(), "json prolong succeeds");
  write_file(dir / "echo.json", "");
  {
    std::ofstream echo(dir / "echo.json");
    echo << j1;
  }
  const std::string j2 = run("--json prolong" + base + " --section " +
                                 (dir / "xx.json").string() + " --order 2",
                             &code);
  expect(j1 == j2, "json output is deterministic");

  if (g_failures == 0) std::cout << "cli smoke: all checks passed\n";
  return g_failures == 0 ? 0 : 1;
}
