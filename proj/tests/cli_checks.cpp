// End-to-end checks of the oimlab binary: exit codes, output formats, and
// the JSON round-trip contract. argv[1] is the path to the binary.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oim/fixed_points.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;
int g_failures = 0;

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CmdResult run(const std::string& args) {
  const fs::path out_path = g_dir / "stdout.txt";
  const fs::path err_path = g_dir / "stderr.txt";
  const std::string cmd = g_cli + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

void expect(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAILED") << ": " << what << '\n';
  if (!ok) ++g_failures;
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_checks <path-to-oimlab>\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() /
          ("oimlab_cli_checks_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);

  const fs::path two = g_dir / "two.txt";            // E=+1, so W_01 = -1
  const fs::path two_ferro = g_dir / "two_ferro.txt";  // E=-1, so W_01 = +1
  const fs::path bad = g_dir / "bad.txt";
  const fs::path big = g_dir / "big.txt";
  write_file(two, "2 1\n1 2 1.0\n");
  write_file(two_ferro, "2 1\n1 2 -1\n");
  write_file(bad, "2 1\n1 1 1.0\n");
  {
    std::ostringstream chain;
    chain << "25 24\n";
    for (int i = 1; i < 25; ++i) chain << i << ' ' << i + 1 << " 1\n";
    write_file(big, chain.str());
  }

  // info
  {
    const CmdResult r = run("info " + two.string());
    expect(r.code == 0 && r.out.find("n=2 m=1") != std::string::npos,
           "info prints the instance summary");
  }
  {
    const CmdResult r = run("info " + bad.string());
    expect(r.code == 2 && r.err.find("line 2") != std::string::npos,
           "info exits 2 and names the offending line");
  }

  // analyze
  const fs::path catalog = g_dir / "catalog.json";
  {
    const CmdResult r =
        run("analyze " + two.string() + " --output " + catalog.string());
    expect(r.code == 0, "analyze exits 0 when both tests agree");

    const nlohmann::json doc = nlohmann::json::parse(slurp(catalog));
    const auto& records = doc.at("records");
    expect(records.size() == 4, "analyze catalog holds 2^N records");
    bool all_agree = true;
    for (const auto& rec : records)
      all_agree = all_agree && rec.at("agree").get<bool>();
    expect(all_agree, "every analyze record agrees across both tests");
    expect(doc.at("ground_energy").get<double>() == -1.0,
           "analyze reports the brute-force ground energy");
    expect(doc.at("metadata").at("rng") == "splitmix64",
           "analyze embeds reproducibility metadata");

    // Round-trip: records parsed back and re-serialized are identical.
    const auto parsed = oim::catalog_records_from_json(records);
    oim::FixedPointCatalog copy;
    copy.records = parsed;
    expect(oim::catalog_records_to_json(copy) == records,
           "catalog JSON round-trips bit-exactly");
  }
  {
    const CmdResult r = run("analyze " + two.string() + " --format csv");
    expect(r.code == 0 && data_rows(r.out) == 4,
           "analyze CSV summary has one row per fixed point");
  }
  {
    const CmdResult r = run("analyze " + big.string());
    expect(r.code == 2 && r.err.find("solve") != std::string::npos,
           "analyze beyond the guard exits 2 and suggests solve");
  }

  // sweep
  {
    const CmdResult r = run("sweep " + two_ferro.string() +
                            " --ratios 0.5,1,2 --format csv");
    expect(r.code == 0 && data_rows(r.out) == 12,
           "sweep emits 3 ratios x 4 points = 12 rows");
    expect(r.out.find("2,2,+-,1,4,AttractiveMinimum,0") != std::string::npos,
           "suboptimal point turns attractive at ratio 2");
    expect(r.out.find("0.5,2,+-,1,-2,Saddle,0") != std::string::npos,
           "suboptimal point is a saddle at ratio 0.5");
  }
  {
    const CmdResult r = run("sweep " + two_ferro.string());
    expect(r.code == 2, "sweep without --ratios is a usage error");
  }

  // solve
  {
    const CmdResult r = run("solve " + two.string() +
                            " --ks 0.5 --seed 7 --starts 50 --format json");
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    expect(r.code == 0 && doc.at("ising_energy").get<double>() == -1.0,
           "solve finds the two-node ground energy");
    expect(doc.at("cut_value").get<double>() == 1.0,
           "solve reports the matching cut value");
  }
  {
    const CmdResult r = run("solve " + two.string() + " --starts 0");
    expect(r.code == 2, "solve with --starts 0 is a usage error");
  }
  {
    const std::string args =
        "solve " + two.string() + " --ks 0.5 --seed 11 --starts 20";
    const CmdResult first = run(args);
    const CmdResult second = run(args);
    expect(first.code == 0 && first.out == second.out,
           "solve output is byte-identical for a fixed seed");
  }

  // verify
  {
    const CmdResult r = run("verify " + two.string() + " --seed 3");
    expect(r.code == 0 && r.out.find("FAIL") == std::string::npos,
           "verify passes all properties on an honest instance");
    expect(r.out.find("PASS gradient-identity") != std::string::npos &&
               r.out.find("PASS spin-energy-identity") != std::string::npos,
           "verify prints one line per property");
  }
  {
    const CmdResult r =
        run("verify " + two.string() + " --debug-asymmetrize 0.1");
    expect(r.code == 1 && r.out.find("FAIL eq5-matrix-identity") !=
                              std::string::npos,
           "asymmetrized couplings break the matrix identity check");
  }
  {
    const CmdResult r = run("verify " + two.string() + " --alpha 0.25");
    expect(r.code == 0, "verify holds for alpha = 0.25");
  }

  // simulate-trajectory
  {
    const CmdResult r = run("simulate-trajectory " + two_ferro.string() +
                            " --init 0.3,-0.2");
    expect(r.code == 0 &&
               r.out.find("t,theta_0,theta_1,energy") != std::string::npos,
           "trajectory CSV has the documented header");
    // Final recorded energy sits at the global minimum, -4.
    std::istringstream in(r.out);
    std::string line, last;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#' && line[0] != 't') last = line;
    const double final_energy =
        std::strtod(last.substr(last.rfind(',') + 1).c_str(), nullptr);
    expect(std::abs(final_energy + 4.0) <= 1e-6,
           "trajectory relaxes to the minimum energy");
  }
  {
    const CmdResult r =
        run("simulate-trajectory " + two_ferro.string() + " --init 0.3");
    expect(r.code == 2, "--init with the wrong arity is a usage error");
  }

  std::error_code ec;
  fs::remove_all(g_dir, ec);
  if (g_failures) {
    std::cout << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
