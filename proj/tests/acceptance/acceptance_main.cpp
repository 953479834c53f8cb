// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Criteria 1-9 run in process through the shared suites; determinism
// and the command-line contract go through the CLI binary named by --cli.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "fissile/layouts.hpp"
#include "fissile/suites.hpp"

using namespace fissile;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

int failures = 0;

void criterion(const std::string& label, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (out.pass ? "PASS" : "FAIL") << "  " << label << "  (" << seconds << " s)";
  if (!out.note.empty()) std::cout << "  " << out.note;
  std::cout << std::endl;
  failures += !out.pass;
}

void require_all_pass(Outcome& out, const std::vector<CaseReport>& reports, double limit_seconds = 0) {
  double total = 0;
  long checks = 0;
  for (const auto& r : reports) {
    total += r.seconds;
    checks += r.checks;
    if (r.verdict != Verdict::pass) {
      out.fail(r.suite + " " + r.params.dump() + ": " + verdict_name(r.verdict) + " " + r.detail);
    }
  }
  if (reports.empty()) out.fail("no cases ran");
  if (limit_seconds > 0 && total > limit_seconds) out.fail("took " + std::to_string(total) + " s");
  if (out.pass) out.note = std::to_string(reports.size()) + " cases, " + std::to_string(checks) + " checks";
}

/// The cases whose params satisfy `keep`.
std::vector<CaseReport> select(const std::vector<CaseReport>& all, const std::function<bool(const nlohmann::json&)>& keep) {
  std::vector<CaseReport> out;
  for (const auto& r : all) {
    if (keep(r.params)) out.push_back(r);
  }
  return out;
}

void require_each_e(Outcome& out, const std::vector<CaseReport>& reports, int max_e) {
  std::set<int> seen;
  for (const auto& r : reports) seen.insert(r.params.at("e").get<int>());
  for (int e = 1; e <= max_e; ++e) {
    if (!seen.count(e)) out.fail("no case for |E| = " + std::to_string(e));
  }
}

struct Run {
  int status = -1;
  std::string output;
};

Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.output.append(buffer, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string quote(const std::string& s) { return "'" + std::regex_replace(s, std::regex("'"), "'\\''") + "'"; }

std::string without_timing(const std::string& lines) {
  static const std::regex timing(R"("timing":\{"seconds":[^}]*\},?)");
  return std::regex_replace(lines, timing, "");
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  if (cli.empty()) {
    std::cerr << "usage: fissile_acceptance --cli <path to fissile>\n";
    return 2;
  }
  const SuiteBounds bounds;  // |A|, |I|, |E| ≤ 3, dimension bound 4
  const auto scratch = std::filesystem::temp_directory_path() / "fissile_acceptance";
  std::filesystem::remove_all(scratch);

  criterion("[1] identities for |A| <= 3, |I| <= 3 within 10 s", [&](Outcome& o) {
    require_all_pass(o, run_suite("identities", bounds), 10);
  });

  criterion("[2] nabla inverse and extender diagram, |E| <= 3, 100 sections each, within 30 s", [&](Outcome& o) {
    const auto reports = run_suite("nabla", bounds);
    require_all_pass(o, reports, 30);
    require_each_e(o, reports, 3);
  });

  criterion("[3] lift_limit restricts back on 100 compatible families per |E| <= 3", [&](Outcome& o) {
    const auto reports = run_suite("lift", bounds);
    require_all_pass(o, reports);
    require_each_e(o, reports, 3);
  });

  std::vector<CaseReport> fissilizer;
  const auto is_congruence = [](const nlohmann::json& p) { return p.contains("check") && p["check"] == "congruence"; };
  criterion("[4] fissilizer: fissile results, fixed fissile inputs, augmentation 1, 200 ensembles per |E| <= 3",
            [&](Outcome& o) {
              fissilizer = run_suite("fissilizer", bounds);
              const auto reports = select(fissilizer, [&](const nlohmann::json& p) { return !is_congruence(p); });
              require_all_pass(o, reports);
              require_each_e(o, reports, 3);
            });
  criterion("[5] congruence certificate on 50 admissible families per |E| <= 2", [&](Outcome& o) {
    const auto reports = select(fissilizer, is_congruence);
    require_all_pass(o, reports);
    require_each_e(o, reports, 2);
  });

  criterion("[6] simplicial engine and retraction squares, |E| <= 3, |A| <= 3, bound 4", [&](Outcome& o) {
    auto reports = run_suite("simplicial", bounds);
    const auto more = run_suite("retractions", bounds);
    reports.insert(reports.end(), more.begin(), more.end());
    require_all_pass(o, reports);
    std::set<std::string> checks;
    for (const auto& r : reports) checks.insert(r.params.at("check").get<std::string>());
    for (const char* needed : {"identities", "cone universal property", "reduced cone of plus", "contraction square",
                               "retraction square", "layout retraction naturality"}) {
      if (!checks.count(needed)) o.fail(std::string("missing check ") + needed);
    }
  });

  criterion("[7] chained monoid: annihilation, membership round trips, witness transforms", [&](Outcome& o) {
    require_all_pass(o, run_suite("witnesses", bounds));
  });

  criterion("[8] construction of p and q re-verified from files for (|I|,|E|) in {(1,1),(1,2),(2,1),(2,2)}",
            [&](Outcome& o) {
              std::ostringstream summary;
              for (const auto& [i, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
                const auto dir = scratch / ("q_" + std::to_string(i) + "_" + std::to_string(e));
                const CaseReport built = run_construct_q(i, e, dir);
                const CaseReport checked = run_check(dir);
                const std::string at = "(" + std::to_string(i) + "," + std::to_string(e) + ")";
                if (built.verdict != Verdict::pass) o.fail("construct " + at + ": " + built.detail);
                if (checked.verdict != Verdict::pass) o.fail("check " + at + ": " + checked.detail);
                if (built.seconds + checked.seconds > 300) o.fail(at + " exceeded 5 minutes");
                // The checker must have covered every condition of every pair,
                // every layout and the boundary.
                std::map<std::string, int> kinds;
                for (const auto& item : checked.result.at("items")) {
                  const std::string c = item.at("condition");
                  for (const char* k : {"layout factorization", "boundary value", "alternating filtration", "almost fissility at",
                                        "boundary condition"}) {
                    if (c.rfind(k, 0) == 0) ++kinds[k];
                  }
                }
                const int pairs = ((1 << e) - 1) * ((1 << i) - 1);
                const int layouts = static_cast<int>(LayoutLattice(full_set(e)).layouts().size());
                if (kinds["layout factorization"] != pairs || kinds["boundary value"] != pairs || kinds["alternating filtration"] != pairs) {
                  o.fail(at + ": checker did not cover every pair");
                }
                if (kinds["almost fissility at"] != layouts) o.fail(at + ": checker did not cover every layout");
                if (kinds["boundary condition"] != 1) o.fail(at + ": checker skipped the boundary condition");
                summary << at << " " << checked.checks << " items " << built.seconds + checked.seconds << " s; ";
              }
              if (o.pass) o.note = summary.str();
            });

  criterion("[9] Brunnian words: deletion oracle, nested commutators, left comb degree, lcs bound", [&](Outcome& o) {
    require_all_pass(o, run_suite("brunnian", bounds));
  });

  criterion("[10] determinism: identical JSON lines apart from timing on repeated CLI runs", [&](Outcome& o) {
    std::vector<std::string> commands;
    for (const auto& s : suite_names()) commands.push_back("verify " + s);
    commands.push_back("construct-q --i 2 --e 1");
    commands.push_back("construct-pj --i 1 --e 2 --out " + quote((scratch / "det").string()));
    commands.push_back("check-pj --in " + quote((scratch / "det").string()));
    commands.push_back("magnus --word 'x1 x2 x1^-1 x2^-1' --degree 3");
    for (const auto& c : commands) {
      const Run first = run(quote(cli) + " " + c + " 2>/dev/null");
      const Run second = run(quote(cli) + " " + c + " 2>/dev/null");
      if (first.output.empty()) o.fail(c + ": no output");
      if (first.status != second.status || without_timing(first.output) != without_timing(second.output)) {
        o.fail(c + ": outputs differ");
      }
    }
    if (o.pass) o.note = std::to_string(commands.size()) + " commands compared";
  });

  // The command-line contract.
  const auto cli_case = [&](const std::string& label, const std::string& args, int status,
                            const std::function<void(Outcome&, const Run&)>& more = {}) {
    criterion("[cli] " + label, [&](Outcome& o) {
      const Run r = run(quote(cli) + " " + args + " 2>/dev/null");
      if (r.status != status) o.fail("exit status " + std::to_string(r.status));
      if (more) more(o, r);
    });
  };
  const auto verdicts_are = [](const std::string& v) {
    return [v](Outcome& o, const Run& r) {
      const auto lines = json_lines(r.output);
      if (lines.empty()) o.fail("no reports");
      for (const auto& j : lines) {
        if (j.at("verdict") != v) o.fail("verdict " + j.at("verdict").get<std::string>());
        for (const char* field : {"suite", "params", "verdict", "timing", "artifacts"}) {
          if (!j.contains(field)) o.fail(std::string("missing field ") + field);
        }
      }
    };
  };
  cli_case("verify identities --max-a 3 --max-i 3", "verify identities --max-a 3 --max-i 3", 0, verdicts_are("pass"));
  cli_case("verify fissilizer --max-e 3", "verify fissilizer --max-e 3", 0, verdicts_are("pass"));
  criterion("[cli] unknown suite gives usage and a nonzero exit", [&](Outcome& o) {
    const Run r = run(quote(cli) + " verify no-such-suite 2>&1 1>/dev/null");
    if (r.status == 0) o.fail("exit status 0");
    if (r.output.find("Usage") == std::string::npos) o.fail("no usage message");
  });
  const std::string pj = quote((scratch / "pj_2_2").string());
  cli_case("construct-pj --i 2 --e 2", "construct-pj --i 2 --e 2 --out " + pj, 0, verdicts_are("pass"));
  cli_case("check-pj on the written files", "check-pj --in " + pj, 0, verdicts_are("pass"));
  cli_case("construct-q --i 2 --e 1", "construct-q --i 2 --e 1", 0, verdicts_are("pass"));
  cli_case("construct-pj --i 5 --e 5 is skipped by the guard",
           "construct-pj --i 5 --e 5 --out " + quote((scratch / "pj_5_5").string()), 0, verdicts_are("skipped-guard"));
  cli_case("check-brunnian on a commutator", "check-brunnian --word 'x1 x2 x1^-1 x2^-1' --alphabet 2", 0,
           [](Outcome& o, const Run& r) {
             const auto lines = json_lines(r.output);
             if (lines.size() != 1 || lines[0].at("result").at("brunnian") != true) o.fail("not reported Brunnian");
           });
  cli_case("lcs of x1 is 1", "lcs --word x1 --max-degree 4", 0, [](Outcome& o, const Run& r) {
    const auto lines = json_lines(r.output);
    if (lines.size() != 1 || lines[0].at("result").at("degree") != 1) o.fail("degree differs from 1");
  });
  cli_case("malformed token reports its position", "lcs --word 'x1 x2^3' --max-degree 3", 2, [](Outcome& o, const Run& r) {
    const auto lines = json_lines(r.output);
    if (lines.size() != 1 || lines[0].at("result").at("parse_error").at("position") != 3) o.fail("position missing");
  });
  criterion("[cli] guard override through the environment", [&](Outcome& o) {
    const auto verdict = [](const Run& r) {
      const auto lines = json_lines(r.output);
      return lines.size() == 1 ? lines[0].at("verdict").get<std::string>() : std::string("no report");
    };
    const std::string args = " construct-q --i 1 --e 3 2>/dev/null";
    if (verdict(run("env -u FISSILE_MAX_CONSTRUCT_E " + quote(cli) + args)) != "skipped-guard") o.fail("default guard not applied");
    if (verdict(run("FISSILE_MAX_CONSTRUCT_E=3 " + quote(cli) + args)) != "pass") o.fail("raised guard not honoured");
  });

  std::filesystem::remove_all(scratch);
  std::cout << (failures ? "ACCEPTANCE FAILED: " + std::to_string(failures) + " criterion(s)" : "ACCEPTANCE PASSED")
            << std::endl;
  return failures ? 1 : 0;
}
